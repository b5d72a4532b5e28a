//! Symmetric bilinear forms on F_q^d, their rank strata, and the character
//! sums living on them: the quadratic sum s_psi, its closed Gauss-sum form
//! via congruence diagonalization, the cone functions l0/l1 splitting the
//! point-count N(t) = #{v : v v^T = t}, and the normalized Fourier transform
//! on the space of forms with its parity-support behavior.
//!
//! Forms are enumerated by their upper triangle, slots (0,0), (0,1), ...,
//! (d-1,d-1) read as big-endian base-q digits, which is ascending row-major
//! lexicographic order on the full matrices.

use alloc::vec;
use alloc::vec::Vec;

use crate::cyclo::CycloNum;
use crate::fq::Fq;
use crate::fqmat::{gl_generators, vector_by_index, FqMat};
use crate::scalars::Scalars;

pub fn sym_dim(d: usize) -> usize {
    d * (d + 1) / 2
}

pub fn sym_count(q: u32, d: usize) -> u64 {
    (q as u64).pow(sym_dim(d) as u32)
}

fn sym_slots(d: usize) -> Vec<(usize, usize)> {
    (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).collect()
}

pub fn sym_by_index(f: Fq, d: usize, idx: u64) -> FqMat {
    let q = f.q() as u64;
    let slots = sym_slots(d);
    let mut m = FqMat::zero(f, d, d);
    let mut t = idx;
    for &(i, j) in slots.iter().rev() {
        let v = (t % q) as u32;
        t /= q;
        m.set(i, j, v);
        m.set(j, i, v);
    }
    debug_assert_eq!(t, 0, "index out of range");
    m
}

pub fn index_of_sym(b: &FqMat) -> u64 {
    debug_assert!(b.is_symmetric());
    let q = b.field().q() as u64;
    let mut idx = 0u64;
    for (i, j) in sym_slots(b.n_rows()) {
        idx = idx * q + b.at(i, j) as u64;
    }
    idx
}

pub fn corank(b: &FqMat) -> usize {
    b.n_rows() - b.rank()
}

/// v^T b v in F_q.
pub fn quad_value(b: &FqMat, v: &[u32]) -> u32 {
    let f = b.field();
    let mut acc = 0u32;
    for i in 0..b.n_rows() {
        if v[i] == 0 {
            continue;
        }
        for j in 0..b.n_cols() {
            acc = f.add(acc, f.mul(v[i], f.mul(b.at(i, j), v[j])));
        }
    }
    acc
}

/// s_psi(b) = sum over v in F_q^d of psi(v^T b v). No half twist here.
pub fn s_psi(sc: &Scalars, b: &FqMat) -> CycloNum {
    s_psi_twist(sc, b, 1)
}

/// Same sum against the twisted character psi_a(x) = psi(a x).
pub fn s_psi_twist(sc: &Scalars, b: &FqMat, a: u32) -> CycloNum {
    let d = b.n_rows();
    let q = sc.q();
    let f = b.field();
    let mut sum = sc.zero();
    for idx in 0..(q as u64).pow(d as u32) as usize {
        let v = vector_by_index(q, d, idx);
        sum += sc.psi(f.mul(f.norm(a), quad_value(b, &v)));
    }
    sum
}

/// A congruence diagonalization P^T b P = diag, with deterministic pivot
/// choices: the first nonzero diagonal entry, else the first nonzero
/// off-diagonal pair folded onto the diagonal (2 b_ij != 0 in odd
/// characteristic).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CongruenceDiag {
    pub diag: Vec<u32>,
    pub p: FqMat,
}

pub fn diagonalize_congruent(b: &FqMat) -> CongruenceDiag {
    assert!(b.is_symmetric());
    let f = b.field();
    let d = b.n_rows();
    let mut m = b.clone();
    let mut p = FqMat::identity(f, d);
    // col_op: col_dst += c * col_src on m (both sides) and on p (cols only)
    for k in 0..d {
        // choose a pivot for position k
        let diag_pivot = (k..d).find(|&t| m.at(t, t) != 0);
        let t = match diag_pivot {
            Some(t) => t,
            None => {
                let Some((i, j)) = (k..d)
                    .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
                    .find(|&(i, j)| m.at(i, j) != 0)
                else {
                    break; // remaining block is zero
                };
                // fold: col/row i += col/row j makes m[i][i] = 2 b_ij != 0
                add_col_row(&mut m, &mut p, i, j, 1);
                i
            }
        };
        if t != k {
            swap_col_row(&mut m, &mut p, k, t);
        }
        let inv = f.inv(m.at(k, k)).expect("pivot nonzero");
        for r in k + 1..d {
            if m.at(r, k) != 0 {
                let c = f.neg(f.mul(m.at(r, k), inv));
                add_col_row(&mut m, &mut p, r, k, c);
            }
        }
    }
    let diag: Vec<u32> = (0..d).map(|i| m.at(i, i)).collect();
    // exactness check: P^T b P is diagonal with these entries
    let check = p.transpose().mul(b).and_then(|t| t.mul(&p)).expect("sizes match");
    for i in 0..d {
        for j in 0..d {
            let want = if i == j { diag[i] } else { 0 };
            assert_eq!(check.at(i, j), want, "diagonalization must be exact");
        }
    }
    CongruenceDiag { diag, p }
}

fn add_col_row(m: &mut FqMat, p: &mut FqMat, dst: usize, src: usize, c: u32) {
    let f = m.field();
    let d = m.n_rows();
    for r in 0..d {
        let v = f.add(m.at(r, dst), f.mul(c, m.at(r, src)));
        m.set(r, dst, v);
    }
    for cix in 0..d {
        let v = f.add(m.at(dst, cix), f.mul(c, m.at(src, cix)));
        m.set(dst, cix, v);
    }
    for r in 0..d {
        let v = f.add(p.at(r, dst), f.mul(c, p.at(r, src)));
        p.set(r, dst, v);
    }
}

fn swap_col_row(m: &mut FqMat, p: &mut FqMat, a: usize, b: usize) {
    let d = m.n_rows();
    for r in 0..d {
        let (x, y) = (m.at(r, a), m.at(r, b));
        m.set(r, a, y);
        m.set(r, b, x);
    }
    for c in 0..d {
        let (x, y) = (m.at(a, c), m.at(b, c));
        m.set(a, c, y);
        m.set(b, c, x);
    }
    for r in 0..d {
        let (x, y) = (p.at(r, a), p.at(r, b));
        p.set(r, a, y);
        p.set(r, b, x);
    }
}

/// Closed form q^i · g^{d-i} · legendre(prod of nonzero diagonal entries),
/// i = corank; equals s_psi exactly.
pub fn s_psi_closed(sc: &Scalars, b: &FqMat) -> CycloNum {
    let f = b.field();
    let cd = diagonalize_congruent(b);
    let i = cd.diag.iter().filter(|&&x| x == 0).count();
    assert_eq!(i, corank(b), "diagonal zero count must equal corank");
    let d = b.n_rows();
    let mut disc = 1u32;
    for &x in cd.diag.iter().filter(|&&x| x != 0) {
        disc = f.mul(disc, x);
    }
    let mut value = sc.q_pow(i as i64);
    if d > i {
        value = &value
            * &sc
                .gauss_sum()
                .pow_i64((d - i) as i64)
                .expect("positive power");
    }
    if f.legendre(disc) == -1 {
        value = -&value;
    }
    value
}

/// A function on the space of symmetric forms, stored by form index.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymFn {
    pub d: usize,
    pub values: Vec<CycloNum>,
}

impl SymFn {
    pub fn at_index(&self, idx: u64) -> &CycloNum {
        &self.values[idx as usize]
    }

    pub fn at(&self, b: &FqMat) -> &CycloNum {
        self.at_index(index_of_sym(b))
    }
}

/// N(t) = #{v in F_q^d : v v^T = t}; supported on the rank <= 1 cone.
pub fn n_fn(sc: &Scalars, d: usize) -> SymFn {
    let f = Fq::new(sc.q()).expect("valid q");
    let q = sc.q();
    let mut values = vec![sc.zero(); sym_count(q, d) as usize];
    for idx in 0..(q as u64).pow(d as u32) as usize {
        let v = vector_by_index(q, d, idx);
        let mut t = FqMat::zero(f, d, d);
        for i in 0..d {
            for j in 0..d {
                t.set(i, j, f.mul(v[i], v[j]));
            }
        }
        values[index_of_sym(&t) as usize] += &sc.one();
    }
    SymFn { d, values }
}

/// l0 = indicator of the rank <= 1 cone (including 0).
pub fn l0_fn(sc: &Scalars, d: usize) -> SymFn {
    let f = Fq::new(sc.q()).expect("valid q");
    let mut values = vec![sc.zero(); sym_count(sc.q(), d) as usize];
    for (idx, val) in values.iter_mut().enumerate() {
        let t = sym_by_index(f, d, idx as u64);
        if t.rank() <= 1 {
            *val = sc.one();
        }
    }
    SymFn { d, values }
}

/// l1(lambda u u^T) = legendre(lambda) on the punctured cone, 0 elsewhere.
/// The square class of lambda is read off the first nonzero diagonal entry
/// (a rank-one symmetric matrix always has one in odd characteristic).
pub fn l1_fn(sc: &Scalars, d: usize) -> SymFn {
    let f = Fq::new(sc.q()).expect("valid q");
    let mut values = vec![sc.zero(); sym_count(sc.q(), d) as usize];
    for (idx, val) in values.iter_mut().enumerate() {
        let t = sym_by_index(f, d, idx as u64);
        if t.rank() != 1 {
            continue;
        }
        let lambda = (0..d).map(|i| t.at(i, i)).find(|&x| x != 0)
            .expect("rank-one symmetric form has a nonzero diagonal entry");
        *val = match f.legendre(lambda) {
            1 => sc.one(),
            _ => -&sc.one(),
        };
    }
    SymFn { d, values }
}

/// <t, b> = sum over all matrix entries t_ij b_ij.
pub fn form_pairing(t: &FqMat, b: &FqMat) -> u32 {
    let f = t.field();
    let d = t.n_rows();
    let mut acc = 0u32;
    for i in 0..d {
        for j in 0..d {
            acc = f.add(acc, f.mul(t.at(i, j), b.at(i, j)));
        }
    }
    acc
}

/// Normalized Fourier transform against psi_a: (F f)(b) =
/// sqrt(q)^{-D} sum_t psi(a <t, b>) f(t), D = d(d+1)/2. The normalization
/// always uses the library's single square root, whatever the twist, so
/// four_psi(four_psi(f, 1), q-1) = f and applying twist 1 twice pulls back
/// along t -> -t.
pub fn four_psi(sc: &Scalars, f: &SymFn, twist: u32) -> SymFn {
    let d = f.d;
    let fq = Fq::new(sc.q()).expect("valid q");
    let count = sym_count(sc.q(), d) as usize;
    debug_assert_eq!(f.values.len(), count);
    let scale = sc.sqrt_q_pow(-(sym_dim(d) as i64));
    let support: Vec<(FqMat, &CycloNum)> = (0..count)
        .filter(|&t| !f.values[t].is_zero())
        .map(|t| (sym_by_index(fq, d, t as u64), &f.values[t]))
        .collect();
    let a = fq.norm(twist);
    let mut values = Vec::with_capacity(count);
    for bidx in 0..count {
        let b = sym_by_index(fq, d, bidx as u64);
        let mut sum = sc.zero();
        for (t, ft) in &support {
            sum += &(sc.psi(fq.mul(a, form_pairing(t, &b))) * *ft);
        }
        values.push(&scale * &sum);
    }
    SymFn { d, values }
}

/// Pullback along t -> -t.
pub fn negate_arg(f: &SymFn, q: u32) -> SymFn {
    let fq = Fq::new(q).expect("valid q");
    let count = f.values.len();
    let mut values = vec![CycloNum::zero(4 * q); count];
    for idx in 0..count {
        let t = sym_by_index(fq, f.d, idx as u64);
        let neg = t.scale(fq.neg(1));
        values[idx] = f.values[index_of_sym(&neg) as usize].clone();
    }
    SymFn { d: f.d, values }
}

/// Number of lines through the origin inside Ker(b), by direct enumeration;
/// equals (q^i - 1)/(q - 1) for a corank-i form.
pub fn kernel_line_count(b: &FqMat) -> u64 {
    let q = b.field().q() as u64;
    let d = b.n_rows();
    let mut nonzero = 0u64;
    for idx in 1..q.pow(d as u32) as usize {
        let v = vector_by_index(b.field().q(), d, idx);
        if b.mul_vec(&v).expect("sizes match").iter().all(|&x| x == 0) {
            nonzero += 1;
        }
    }
    assert_eq!(nonzero % (q - 1), 0);
    nonzero / (q - 1)
}

/// Block-diagonal join of two forms.
pub fn direct_sum(b1: &FqMat, b2: &FqMat) -> FqMat {
    let f = b1.field();
    let (d1, d2) = (b1.n_rows(), b2.n_rows());
    let mut m = FqMat::zero(f, d1 + d2, d1 + d2);
    for i in 0..d1 {
        for j in 0..d1 {
            m.set(i, j, b1.at(i, j));
        }
    }
    for i in 0..d2 {
        for j in 0..d2 {
            m.set(d1 + i, d1 + j, b2.at(i, j));
        }
    }
    m
}

/// Congruence classes (orbits of b -> a^T b a over GL_d) counted per corank,
/// by breadth-first closure under generators. Every corank < d stratum
/// splits into exactly two classes (discriminant square class); the zero
/// form is its own class.
pub fn congruence_class_counts(f: Fq, d: usize) -> Vec<(usize, u64)> {
    let count = sym_count(f.q(), d) as usize;
    let gens: Vec<FqMat> = gl_generators(f, d);
    let mut seen = vec![false; count];
    let mut classes = vec![0u64; d + 1];
    for start in 0..count {
        if seen[start] {
            continue;
        }
        let b0 = sym_by_index(f, d, start as u64);
        let cr = corank(&b0);
        classes[cr] += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(cur) = stack.pop() {
            let b = sym_by_index(f, d, cur as u64);
            assert_eq!(corank(&b), cr, "corank is a congruence invariant");
            for a in &gens {
                let image = a.transpose().mul(&b).and_then(|t| t.mul(a)).expect("sizes");
                let next = index_of_sym(&image) as usize;
                if !seen[next] {
                    seen[next] = true;
                    stack.push(next);
                }
            }
        }
    }
    (0..=d).map(|k| (k, classes[k])).collect()
}
