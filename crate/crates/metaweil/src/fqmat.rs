//! Dense matrices over F_q with exact row reduction.
//!
//! Row-major storage; all entries are reduced residues. Elimination uses the
//! first nonzero pivot in column order, so every result here is deterministic.

use alloc::vec;
use alloc::vec::Vec;

use crate::fq::Fq;
use crate::Error;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FqMat {
    field: Fq,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FqMat {
    pub fn zero(field: Fq, rows: usize, cols: usize) -> FqMat {
        FqMat { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Fq, n: usize) -> FqMat {
        let mut m = FqMat::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: Fq, rows: &[Vec<u32>]) -> Result<FqMat, Error> {
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch);
        }
        let data = rows.iter().flatten().map(|&x| field.norm(x)).collect();
        Ok(FqMat { field, rows: rows.len(), cols: ncols, data })
    }

    pub fn from_i64_rows(field: Fq, rows: &[Vec<i64>]) -> Result<FqMat, Error> {
        let rows: Vec<Vec<u32>> =
            rows.iter().map(|r| r.iter().map(|&x| field.norm_i64(x)).collect()).collect();
        FqMat::from_rows(field, &rows)
    }

    pub fn field(&self) -> Fq {
        self.field
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = self.field.norm(v);
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }

    pub fn transpose(&self) -> FqMat {
        let mut out = FqMat::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j));
            }
        }
        out
    }

    pub fn add(&self, rhs: &FqMat) -> Result<FqMat, Error> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch);
        }
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a = self.field.add(*a, b);
        }
        Ok(out)
    }

    pub fn neg(&self) -> FqMat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = self.field.neg(*a);
        }
        out
    }

    pub fn scale(&self, c: u32) -> FqMat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = self.field.mul(*a, c);
        }
        out
    }

    pub fn mul(&self, rhs: &FqMat) -> Result<FqMat, Error> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch);
        }
        let f = self.field;
        let mut out = FqMat::zero(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = f.add(out.at(i, j), f.mul(a, rhs.at(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>, Error> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch);
        }
        let f = self.field;
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = 0;
                for j in 0..self.cols {
                    acc = f.add(acc, f.mul(self.at(i, j), v[j]));
                }
                acc
            })
            .collect())
    }

    pub fn vstack(&self, other: &FqMat) -> Result<FqMat, Error> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch);
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FqMat { field: self.field, rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn hstack(&self, other: &FqMat) -> Result<FqMat, Error> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch);
        }
        let mut out = FqMat::zero(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.at(i, j));
            }
        }
        Ok(out)
    }

    pub fn block(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> FqMat {
        let mut out = FqMat::zero(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.at(row0 + i, col0 + j));
            }
        }
        out
    }

    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (FqMat, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(sel) = (r..m.rows).find(|&i| m.at(i, c) != 0) else {
                continue;
            };
            for j in 0..m.cols {
                let (a, b) = (m.at(r, j), m.at(sel, j));
                m.set(r, j, b);
                m.set(sel, j, a);
            }
            let pinv = f.inv(m.at(r, c)).expect("pivot is nonzero");
            for j in 0..m.cols {
                m.set(r, j, f.mul(m.at(r, j), pinv));
            }
            for i in 0..m.rows {
                if i != r && m.at(i, c) != 0 {
                    let factor = m.at(i, c);
                    for j in 0..m.cols {
                        let v = f.sub(m.at(i, j), f.mul(factor, m.at(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space {x : self·x = 0}, rows are basis vectors.
    pub fn nullspace(&self) -> FqMat {
        let f = self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = FqMat::zero(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, 1);
            for (pi, &pc) in pivots.iter().enumerate() {
                out.set(k, pc, f.neg(r.at(pi, fc)));
            }
        }
        out
    }

    /// A solution x of self·x = b, if one exists (unique when rank = cols).
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        if b.len() != self.rows {
            return None;
        }
        let f = self.field;
        let mut aug = FqMat::zero(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![0u32; self.cols];
        for (pi, &pc) in pivots.iter().enumerate() {
            x[pc] = r.at(pi, self.cols);
        }
        Some(x)
    }

    pub fn inverse(&self) -> Result<FqMat, Error> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch);
        }
        let n = self.rows;
        let aug = self.hstack(&FqMat::identity(self.field, n))?;
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::SingularMatrix);
        }
        Ok(r.block(0, n, n, n))
    }
}

/// All vectors of F_q^len in little-endian order: index = sum coords[k]·q^k.
pub fn vector_by_index(q: u32, len: usize, idx: usize) -> Vec<u32> {
    let mut v = vec![0u32; len];
    let mut t = idx;
    for slot in v.iter_mut() {
        *slot = (t % q as usize) as u32;
        t /= q as usize;
    }
    v
}

pub fn index_of_vector(q: u32, v: &[u32]) -> usize {
    let mut idx = 0usize;
    for &c in v.iter().rev() {
        idx = idx * q as usize + c as usize;
    }
    idx
}

/// Smallest generator of the multiplicative group of F_q.
pub fn primitive_root(f: Fq) -> u32 {
    let q = f.q();
    let mut r = 2u32;
    loop {
        let mut ord = 1u64;
        let mut acc = r;
        while acc != 1 {
            acc = f.mul(acc, r);
            ord += 1;
        }
        if ord == (q - 1) as u64 {
            return r;
        }
        r += 1;
    }
}

/// Generators of GL_d(F_q): the primitive-root scaling at slot 0, and for
/// d >= 2 the (0 1) transposition and the elementary transvection I + E_01.
pub fn gl_generators(f: Fq, d: usize) -> Vec<FqMat> {
    let mut out = Vec::new();
    let mut scale = FqMat::identity(f, d);
    scale.set(0, 0, primitive_root(f));
    out.push(scale);
    if d >= 2 {
        let mut perm = FqMat::zero(f, d, d);
        perm.set(0, 1, 1);
        perm.set(1, 0, 1);
        for k in 2..d {
            perm.set(k, k, 1);
        }
        out.push(perm);
        let mut elem = FqMat::identity(f, d);
        elem.set(0, 1, 1);
        out.push(elem);
    }
    out
}
