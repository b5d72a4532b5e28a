//! Dense matrices over the cyclotomic field: the operator algebra used by
//! model intertwiners and metaplectic lifts. All arithmetic is exact.

use alloc::vec::Vec;

use crate::cyclo::CycloNum;
use crate::Error;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycloMat {
    n: u32,
    rows: usize,
    cols: usize,
    data: Vec<CycloNum>,
}

impl CycloMat {
    pub fn zero(n: u32, rows: usize, cols: usize) -> CycloMat {
        let data = (0..rows * cols).map(|_| CycloNum::zero(n)).collect();
        CycloMat { n, rows, cols, data }
    }

    pub fn identity(n: u32, k: usize) -> CycloMat {
        let mut m = CycloMat::zero(n, k, k);
        for i in 0..k {
            *m.at_mut(i, i) = CycloNum::one(n);
        }
        m
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &CycloNum {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut CycloNum {
        &mut self.data[i * self.cols + j]
    }

    pub fn data(&self) -> &[CycloNum] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, rhs: &CycloMat) -> Result<CycloMat, Error> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch);
        }
        if self.n != rhs.n {
            return Err(Error::MismatchedConductor(self.n, rhs.n));
        }
        let mut out = CycloMat::zero(self.n, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    *out.at_mut(i, j) += &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &CycloMat) -> Result<CycloMat, Error> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch);
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a += b;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CycloNum) -> CycloMat {
        let data = self.data.iter().map(|a| a * c).collect();
        CycloMat { n: self.n, rows: self.rows, cols: self.cols, data }
    }

    /// Matrix applied to a coordinate vector.
    pub fn apply(&self, v: &[CycloNum]) -> Result<Vec<CycloNum>, Error> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch);
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = CycloNum::zero(self.n);
            for j in 0..self.cols {
                let a = self.at(i, j);
                if a.is_zero() || v[j].is_zero() {
                    continue;
                }
                acc += &(a * &v[j]);
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// The scalar c with self = c·identity; errors if the matrix is not such
    /// a multiple. A failure here always signals an upstream convention bug.
    pub fn scalar_of(&self) -> Result<CycloNum, Error> {
        if self.rows != self.cols || self.rows == 0 {
            return Err(Error::NotScalar);
        }
        let c = self.at(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let expect_zero = i != j;
                if expect_zero {
                    if !self.at(i, j).is_zero() {
                        return Err(Error::NotScalar);
                    }
                } else if *self.at(i, j) != c {
                    return Err(Error::NotScalar);
                }
            }
        }
        Ok(c)
    }

    /// The scalar c with self = c·base, for a nonzero base.
    pub fn proportionality_scalar(&self, base: &CycloMat) -> Result<CycloNum, Error> {
        if self.rows != base.rows || self.cols != base.cols {
            return Err(Error::DimensionMismatch);
        }
        let Some(pos) = base.data.iter().position(|x| !x.is_zero()) else {
            return Err(Error::NotProportional);
        };
        let c = &self.data[pos] * &base.data[pos].inv()?;
        for (a, b) in self.data.iter().zip(base.data.iter()) {
            if *a != &c * b {
                return Err(Error::NotProportional);
            }
        }
        Ok(c)
    }

    /// Rank over the cyclotomic field, by exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        rank_of_rows(self.n, self.rows, self.cols, |i, j| self.at(i, j).clone())
    }
}

/// Rank over Q(zeta_N) of a rows x cols array given by an entry generator.
/// This must run over the field itself: rank over Q of the coefficient
/// vectors would overcount.
pub fn rank_of_rows<F>(n: u32, rows: usize, cols: usize, entry: F) -> usize
where
    F: Fn(usize, usize) -> CycloNum,
{
    let mut m: Vec<Vec<CycloNum>> =
        (0..rows).map(|i| (0..cols).map(|j| entry(i, j)).collect()).collect();
    let _ = n;
    let mut rank = 0usize;
    for c in 0..cols {
        let Some(sel) = (rank..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, sel);
        let pinv = m[rank][c].inv().expect("pivot is nonzero");
        for x in m[rank].iter_mut() {
            *x = &*x * &pinv;
        }
        for i in 0..rows {
            if i != rank && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &m[rank][j];
                    m[i][j] -= &delta;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::from_int_coeffs;

    #[test]
    fn scalar_extraction() {
        let n = 12;
        let id = CycloMat::identity(n, 3);
        assert!(id.scalar_of().unwrap().is_one());
        let c = from_int_coeffs(n, &[0, 2, 0, -1]);
        assert_eq!(id.scale(&c).scalar_of().unwrap(), c);
        let mut bad = id.clone();
        *bad.at_mut(0, 1) = CycloNum::one(n);
        assert_eq!(bad.scalar_of(), Err(Error::NotScalar));
    }

    #[test]
    fn proportionality() {
        let n = 12;
        let mut base = CycloMat::zero(n, 2, 2);
        *base.at_mut(0, 1) = from_int_coeffs(n, &[1, 1, 0, 0]);
        *base.at_mut(1, 0) = from_int_coeffs(n, &[0, 0, 2, 0]);
        let c = from_int_coeffs(n, &[-1, 0, 3, 0]);
        let scaled = base.scale(&c);
        assert_eq!(scaled.proportionality_scalar(&base).unwrap(), c);
        let mut off = scaled.clone();
        *off.at_mut(1, 1) = CycloNum::one(n);
        assert_eq!(off.proportionality_scalar(&base), Err(Error::NotProportional));
    }

    #[test]
    fn rank_is_over_the_field_not_over_q() {
        let n = 12;
        // two rows proportional by zeta_12: rank 1 over the field
        let z = CycloNum::zeta_pow(n, 1);
        let a = from_int_coeffs(n, &[1, 0, 2, 0]);
        let b = &a * &z;
        let mut m = CycloMat::zero(n, 2, 2);
        *m.at_mut(0, 0) = a.clone();
        *m.at_mut(0, 1) = from_int_coeffs(n, &[0, 1, 0, 0]);
        *m.at_mut(1, 0) = b;
        *m.at_mut(1, 1) = &from_int_coeffs(n, &[0, 1, 0, 0]) * &z;
        assert_eq!(m.rank(), 1);
        *m.at_mut(1, 1) = CycloNum::one(n);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn mul_matches_identity_laws() {
        let n = 12;
        let mut m = CycloMat::zero(n, 2, 3);
        for i in 0..2 {
            for j in 0..3 {
                *m.at_mut(i, j) = CycloNum::from_i64(n, (3 * i + j) as i64);
            }
        }
        let id2 = CycloMat::identity(n, 2);
        let id3 = CycloMat::identity(n, 3);
        assert_eq!(id2.mul(&m).unwrap(), m);
        assert_eq!(m.mul(&id3).unwrap(), m);
    }
}
