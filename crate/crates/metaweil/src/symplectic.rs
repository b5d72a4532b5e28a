//! The standard symplectic space F_q^{2d}, its group, and its Lagrangians.
//!
//! Conventions, fixed repo-wide: vectors are columns, group elements act on
//! the left, and the form is <u, v> = u^T J v with J = [[0, I_d], [-I_d, 0]].
//! Subspaces are stored as reduced-row-echelon bases (rows are vectors), so
//! each subspace has exactly one representation and equality is cheap.

use alloc::vec;
use alloc::vec::Vec;

use crate::fq::Fq;
use crate::fqmat::FqMat;
use crate::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SympSpace {
    d: usize,
    fq: Fq,
}

impl SympSpace {
    pub fn new(d: usize, q: u32) -> Result<SympSpace, Error> {
        if d == 0 {
            return Err(Error::DimensionMismatch);
        }
        Ok(SympSpace { d, fq: Fq::new(q)? })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn q(&self) -> u32 {
        self.fq.q()
    }

    pub fn fq(&self) -> Fq {
        self.fq
    }

    pub fn dim(&self) -> usize {
        2 * self.d
    }

    /// <u, v> = sum_k u_k v_{k+d} - u_{k+d} v_k.
    pub fn form(&self, u: &[u32], v: &[u32]) -> u32 {
        debug_assert_eq!(u.len(), self.dim());
        debug_assert_eq!(v.len(), self.dim());
        let f = self.fq;
        let mut acc = 0u32;
        for k in 0..self.d {
            acc = f.add(acc, f.mul(u[k], v[k + self.d]));
            acc = f.sub(acc, f.mul(u[k + self.d], v[k]));
        }
        acc
    }

    pub fn j_matrix(&self) -> FqMat {
        let mut j = FqMat::zero(self.fq, self.dim(), self.dim());
        for k in 0..self.d {
            j.set(k, k + self.d, 1);
            j.set(k + self.d, k, self.fq.neg(1));
        }
        j
    }

    pub fn is_symplectic(&self, m: &FqMat) -> bool {
        if m.n_rows() != self.dim() || m.n_cols() != self.dim() {
            return false;
        }
        let j = self.j_matrix();
        m.transpose().mul(&j).and_then(|t| t.mul(m)).map(|r| r == j).unwrap_or(false)
    }

    pub fn vector_add(&self, u: &[u32], v: &[u32]) -> Vec<u32> {
        u.iter().zip(v).map(|(&a, &b)| self.fq.add(a, b)).collect()
    }
}

/// An element of Sp(2d, F_q); the symplectic condition is checked once here.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpElem {
    mat: FqMat,
}

impl SpElem {
    pub fn new(space: &SympSpace, mat: FqMat) -> Result<SpElem, Error> {
        if !space.is_symplectic(&mat) {
            return Err(Error::NotSymplectic);
        }
        Ok(SpElem { mat })
    }

    pub fn identity(space: &SympSpace) -> SpElem {
        SpElem { mat: FqMat::identity(space.fq(), space.dim()) }
    }

    pub fn mat(&self) -> &FqMat {
        &self.mat
    }

    pub fn mul(&self, rhs: &SpElem) -> SpElem {
        SpElem { mat: self.mat.mul(&rhs.mat).expect("matching sizes") }
    }

    pub fn inverse(&self) -> SpElem {
        SpElem { mat: self.mat.inverse().expect("symplectic matrices are invertible") }
    }

    pub fn apply_vec(&self, v: &[u32]) -> Vec<u32> {
        self.mat.mul_vec(v).expect("matching sizes")
    }
}

/// A Lagrangian subspace, held as its unique d x 2d reduced-row-echelon basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lagrangian {
    basis: FqMat,
    pivots: Vec<usize>,
    free: Vec<usize>,
}

impl Lagrangian {
    pub fn from_rows(space: &SympSpace, rows: &FqMat) -> Result<Lagrangian, Error> {
        if rows.n_cols() != space.dim() {
            return Err(Error::DimensionMismatch);
        }
        let (basis, pivots) = rows.rref();
        if pivots.len() != space.d() {
            return Err(Error::NotLagrangian);
        }
        let basis = basis.block(0, 0, space.d(), space.dim());
        for i in 0..space.d() {
            for j in i + 1..space.d() {
                if space.form(basis.row(i), basis.row(j)) != 0 {
                    return Err(Error::NotLagrangian);
                }
            }
        }
        let free = (0..space.dim()).filter(|c| !pivots.contains(c)).collect();
        Ok(Lagrangian { basis, pivots, free })
    }

    pub fn from_int_rows(space: &SympSpace, rows: &[Vec<i64>]) -> Result<Lagrangian, Error> {
        Lagrangian::from_rows(space, &FqMat::from_i64_rows(space.fq(), rows)?)
    }

    pub fn basis(&self) -> &FqMat {
        &self.basis
    }

    pub fn d(&self) -> usize {
        self.basis.n_rows()
    }

    /// Pivot columns of the echelon basis.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Non-pivot columns: the standard basis vectors spanning the canonical
    /// complement used as coset representatives.
    pub fn free_cols(&self) -> &[usize] {
        &self.free
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let m = FqMat::from_rows(self.basis.field(), &[v.to_vec()]).expect("one row");
        self.basis.vstack(&m).expect("same width").rank() == self.d()
    }

    /// The unique splitting m = l + r with l in this Lagrangian and r
    /// supported on the non-pivot coordinates.
    pub fn decompose(&self, m: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let f = self.basis.field();
        let dim = self.basis.n_cols();
        let mut l = vec![0u32; dim];
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = m[pc];
            if c == 0 {
                continue;
            }
            for j in 0..dim {
                l[j] = f.add(l[j], f.mul(c, self.basis.at(i, j)));
            }
        }
        let r: Vec<u32> = m.iter().zip(&l).map(|(&a, &b)| f.sub(a, b)).collect();
        (l, r)
    }

    /// The image g·L, re-echelonized.
    pub fn apply(&self, space: &SympSpace, g: &SpElem) -> Lagrangian {
        let mapped = self.basis.mul(&g.mat().transpose()).expect("matching sizes");
        Lagrangian::from_rows(space, &mapped).expect("Sp preserves Lagrangians")
    }
}

/// dim(L1 ∩ L2) = d + d - rank(stacked bases).
pub fn intersection_dim(l1: &Lagrangian, l2: &Lagrangian) -> usize {
    let stacked = l1.basis().vstack(l2.basis()).expect("same width");
    l1.d() + l2.d() - stacked.rank()
}

pub fn is_transverse(l1: &Lagrangian, l2: &Lagrangian) -> bool {
    intersection_dim(l1, l2) == 0
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // advance to the next lexicographic k-combination of 0..n
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All Lagrangians, each exactly once, sorted lexicographically by their
/// echelon bases. The count is prod_{i=1..d} (q^i + 1).
pub fn enumerate_lagrangians(space: &SympSpace, limit: u64) -> Result<Vec<Lagrangian>, Error> {
    let d = space.d();
    let dim = space.dim();
    let q = space.q() as u64;
    let combos = combinations(dim, d);
    let mut candidates = 0u64;
    let mut plans = Vec::new();
    for pivots in combos {
        // free slots: (row, col) with col non-pivot and col right of the pivot
        let mut slots = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            for c in 0..dim {
                if c > p && !pivots.contains(&c) {
                    slots.push((i, c));
                }
            }
        }
        let count = q
            .checked_pow(slots.len() as u32)
            .ok_or(Error::LimitExceeded { needed: u64::MAX, limit })?;
        candidates = candidates.saturating_add(count);
        plans.push((pivots, slots, count));
    }
    if candidates > limit {
        return Err(Error::LimitExceeded { needed: candidates, limit });
    }
    let mut found = Vec::new();
    for (pivots, slots, count) in plans {
        for idx in 0..count {
            let mut m = FqMat::zero(space.fq(), d, dim);
            for (i, &p) in pivots.iter().enumerate() {
                m.set(i, p, 1);
            }
            let mut t = idx;
            for &(i, c) in &slots {
                m.set(i, c, (t % q) as u32);
                t /= q;
            }
            if let Ok(l) = Lagrangian::from_rows(space, &m) {
                debug_assert_eq!(l.basis(), &m, "constructed matrix must already be RREF");
                found.push(l);
            }
        }
    }
    found.sort_by(|a, b| a.basis().data().cmp(b.basis().data()));
    let expected: u64 = (1..=d as u32).map(|i| q.pow(i) + 1).product();
    assert_eq!(found.len() as u64, expected, "Lagrangian count must match the product formula");
    Ok(found)
}

/// The graph coordinates of L1 over L2 along V, as a symmetric matrix.
///
/// Preconditions: V ∩ L1 = V ∩ L2 = 0. With v_1..v_d the echelon basis of V,
/// the dual basis u_1..u_d of L2 satisfies <v_j, u_i> = delta_ij; b(u) is the
/// unique element of V with u + b(u) in L1, and the returned matrix is
/// B_ij = <b(u_i), u_j>, which is symmetric exactly because L1 is Lagrangian.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BCoord {
    pub b: FqMat,
    /// Rows are the dual basis u_1..u_d of L2.
    pub u_basis: FqMat,
    /// Rows are b(u_1)..b(u_d) in ambient coordinates.
    pub b_images: FqMat,
}

pub fn b_coordinates(
    space: &SympSpace,
    l1: &Lagrangian,
    l2: &Lagrangian,
    v: &Lagrangian,
) -> Result<BCoord, Error> {
    if intersection_dim(v, l1) != 0 || intersection_dim(v, l2) != 0 {
        return Err(Error::TransversalityViolated);
    }
    let d = space.d();
    let f = space.fq();
    // Gram matrix G_jk = <v_j, w_k>; invertible because V ∩ L2 = 0
    let mut gram = FqMat::zero(f, d, d);
    for j in 0..d {
        for k in 0..d {
            gram.set(j, k, space.form(v.basis().row(j), l2.basis().row(k)));
        }
    }
    let ginv = gram.inverse().map_err(|_| Error::TransversalityViolated)?;
    // u_i = sum_k Ginv_ki w_k
    let u_basis = ginv.transpose().mul(l2.basis())?;
    // solve u_i = (L1 basis | V basis) coefficients; b(u_i) = -(V part)
    let cols = l1.basis().vstack(v.basis())?.transpose();
    let mut b_images = FqMat::zero(f, d, space.dim());
    for i in 0..d {
        let x = cols.solve(u_basis.row(i)).ok_or(Error::TransversalityViolated)?;
        for j in 0..space.dim() {
            let mut acc = 0u32;
            for k in 0..d {
                acc = f.add(acc, f.mul(x[d + k], v.basis().at(k, j)));
            }
            b_images.set(i, j, f.neg(acc));
        }
    }
    let mut b = FqMat::zero(f, d, d);
    for i in 0..d {
        for j in 0..d {
            b.set(i, j, space.form(b_images.row(i), u_basis.row(j)));
        }
    }
    assert!(b.is_symmetric(), "graph form must be symmetric; convention bug otherwise");
    // reconstruction: the graph {b(u_i) + u_i} spans L1
    let mut graph = FqMat::zero(f, d, space.dim());
    for i in 0..d {
        for j in 0..space.dim() {
            graph.set(i, j, f.add(b_images.at(i, j), u_basis.at(i, j)));
        }
    }
    let graph_l = Lagrangian::from_rows(space, &graph)?;
    assert_eq!(graph_l.basis(), l1.basis(), "graph reconstruction must recover L1");
    Ok(BCoord { b, u_basis, b_images })
}

/// All of Sp(2, F_q) = SL(2, F_q), in lexicographic order of (a, b, c, d).
pub fn sp2_elements(space: &SympSpace) -> Result<Vec<SpElem>, Error> {
    if space.d() != 1 {
        return Err(Error::DimensionMismatch);
    }
    let q = space.q();
    let f = space.fq();
    let mut out = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for dd in 0..q {
                    if f.sub(f.mul(a, dd), f.mul(b, c)) == 1 {
                        let m = FqMat::from_rows(f, &[vec![a, b], vec![c, dd]])?;
                        out.push(SpElem::new(space, m)?);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn gl_matrices_lex(f: Fq, d: usize) -> Vec<FqMat> {
    let q = f.q() as u64;
    let total = q.pow((d * d) as u32);
    let mut out = Vec::new();
    for idx in 0..total {
        let mut m = FqMat::zero(f, d, d);
        let mut t = idx;
        // big-endian digits so the listing is ascending in row-major lex order
        for pos in (0..d * d).rev() {
            m.set(pos / d, pos % d, (t % q) as u32);
            t /= q;
        }
        if m.inverse().is_ok() {
            out.push(m);
        }
    }
    out
}

fn sym_matrices_lex(f: Fq, d: usize) -> Vec<FqMat> {
    let q = f.q() as u64;
    let slots: Vec<(usize, usize)> =
        (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).collect();
    let total = q.pow(slots.len() as u32);
    let mut out = Vec::new();
    for idx in 0..total {
        let mut m = FqMat::zero(f, d, d);
        let mut t = idx;
        for &(i, j) in slots.iter().rev() {
            let v = (t % q) as u32;
            t /= q;
            m.set(i, j, v);
            m.set(j, i, v);
        }
        out.push(m);
    }
    out
}

/// Assemble the block matrix [[A, B], [C, D]].
pub fn block_2x2(a: &FqMat, b: &FqMat, c: &FqMat, d: &FqMat) -> FqMat {
    let top = a.hstack(b).expect("matching rows");
    let bottom = c.hstack(d).expect("matching rows");
    top.vstack(&bottom).expect("matching cols")
}

/// The stabilizer of X = span(e_1..e_d): all [[A, S·A^{-T}], [0, A^{-T}]]
/// with A invertible and S symmetric, enumerated (A lex, then S lex).
/// Order: |GL_d(F_q)| · q^{d(d+1)/2}.
pub fn siegel_parabolic_elements(space: &SympSpace, limit: u64) -> Result<Vec<SpElem>, Error> {
    let d = space.d();
    let f = space.fq();
    let q = space.q() as u64;
    let bound = q.pow((d * d) as u32) * q.pow((d * (d + 1) / 2) as u32);
    if bound > limit {
        return Err(Error::LimitExceeded { needed: bound, limit });
    }
    let zero = FqMat::zero(f, d, d);
    let mut out = Vec::new();
    for a in gl_matrices_lex(f, d) {
        let a_inv_t = a.inverse()?.transpose();
        for s in sym_matrices_lex(f, d) {
            let b = s.mul(&a_inv_t)?;
            let g = block_2x2(&a, &b, &zero, &a_inv_t);
            out.push(SpElem::new(space, g)?);
        }
    }
    Ok(out)
}

/// A finite generating set of Sp(2d, F_q): the Siegel parabolic's generators
/// (GL block plus upper unipotents over a basis of symmetric matrices)
/// together with J. The parabolic is a maximal subgroup and J lies outside
/// it, so these generate the whole group.
pub fn sp_generators(space: &SympSpace) -> Vec<SpElem> {
    let d = space.d();
    let f = space.fq();
    let id = FqMat::identity(f, d);
    let zero = FqMat::zero(f, d, d);
    let mut gens = Vec::new();
    gens.push(SpElem::new(space, space.j_matrix()).expect("J is symplectic"));
    // upper unipotents over a basis of symmetric d x d matrices
    for i in 0..d {
        for j in i..d {
            let mut s = FqMat::zero(f, d, d);
            s.set(i, j, 1);
            s.set(j, i, 1);
            let g = block_2x2(&id, &s, &zero, &id);
            gens.push(SpElem::new(space, g).expect("upper unipotent is symplectic"));
        }
    }
    // GL block: a primitive root scaling, and for d >= 2 a transposition and
    // an elementary transvection
    for a in crate::fqmat::gl_generators(f, d) {
        let a_inv_t = a.inverse().expect("invertible").transpose();
        let g = block_2x2(&a, &zero, &zero, &a_inv_t);
        gens.push(SpElem::new(space, g).expect("GL block is symplectic"));
    }
    gens
}

/// Partition of ordered Lagrangian pairs by intersection dimension, plus a
/// check that each part is a single orbit of the Sp-action (by closure under
/// a generating set).
#[derive(Clone, Debug)]
pub struct OrbitPartition {
    /// (intersection dimension, number of ordered pairs) for i = 0..=d.
    pub classes: Vec<(usize, u64)>,
    /// true iff every class is one orbit.
    pub each_class_single_orbit: bool,
}

pub fn orbit_invariant_pairs(space: &SympSpace, limit: u64) -> Result<OrbitPartition, Error> {
    let lags = enumerate_lagrangians(space, limit)?;
    let npairs = (lags.len() as u64) * (lags.len() as u64);
    if npairs > limit {
        return Err(Error::LimitExceeded { needed: npairs, limit });
    }
    let index_of = |l: &Lagrangian| -> usize {
        lags.binary_search_by(|probe| probe.basis().data().cmp(l.basis().data()))
            .expect("image of a Lagrangian is a Lagrangian in the list")
    };
    let n = lags.len();
    let mut class_of = vec![0usize; n * n];
    let d = space.d();
    let mut counts = vec![0u64; d + 1];
    for (i, a) in lags.iter().enumerate() {
        for (j, b) in lags.iter().enumerate() {
            let k = intersection_dim(a, b);
            class_of[i * n + j] = k;
            counts[k] += 1;
        }
    }
    let gens = sp_generators(space);
    // precompute the index action of each generator on Lagrangians
    let actions: Vec<Vec<usize>> = gens
        .iter()
        .map(|g| lags.iter().map(|l| index_of(&l.apply(space, g))).collect())
        .collect();
    let mut single = true;
    for k in 0..=d {
        if counts[k] == 0 {
            single = false;
            continue;
        }
        let start = class_of.iter().position(|&c| c == k).expect("nonempty class");
        let mut seen = vec![false; n * n];
        let mut stack = vec![start];
        seen[start] = true;
        let mut reached = 0u64;
        while let Some(p) = stack.pop() {
            reached += 1;
            let (i, j) = (p / n, p % n);
            for act in &actions {
                let p2 = act[i] * n + act[j];
                if !seen[p2] {
                    seen[p2] = true;
                    stack.push(p2);
                }
            }
        }
        if reached != counts[k] {
            single = false;
        }
    }
    Ok(OrbitPartition {
        classes: (0..=d).map(|k| (k, counts[k])).collect(),
        each_class_single_orbit: single,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space13() -> SympSpace {
        SympSpace::new(1, 3).unwrap()
    }

    #[test]
    fn symplectic_membership_examples() {
        let s = SympSpace::new(1, 5).unwrap();
        let f = s.fq();
        assert!(s.is_symplectic(&FqMat::identity(f, 2)));
        let torus = FqMat::from_rows(f, &[vec![2, 0], vec![0, 3]]).unwrap(); // 3 = 2^{-1} mod 5
        assert!(s.is_symplectic(&torus));
        let bad = FqMat::from_rows(f, &[vec![2, 0], vec![0, 2]]).unwrap();
        assert!(!s.is_symplectic(&bad));
    }

    #[test]
    fn lagrangian_counts_and_frozen_order() {
        let l13 = enumerate_lagrangians(&space13(), 1 << 20).unwrap();
        assert_eq!(l13.len(), 4);
        let rows: Vec<&[u32]> = l13.iter().map(|l| l.basis().row(0)).collect();
        assert_eq!(rows, vec![&[0, 1][..], &[1, 0], &[1, 1], &[1, 2]]);

        let s23 = SympSpace::new(2, 3).unwrap();
        assert_eq!(enumerate_lagrangians(&s23, 1 << 20).unwrap().len(), 40);
        let s15 = SympSpace::new(1, 5).unwrap();
        assert_eq!(enumerate_lagrangians(&s15, 1 << 20).unwrap().len(), 6);
    }

    #[test]
    fn enumeration_guard_trips() {
        let s23 = SympSpace::new(2, 3).unwrap();
        assert!(matches!(
            enumerate_lagrangians(&s23, 10),
            Err(Error::LimitExceeded { .. })
        ));
    }

    #[test]
    fn intersection_dims() {
        let s = space13();
        let e = Lagrangian::from_int_rows(&s, &[vec![1, 0]]).unwrap();
        let f = Lagrangian::from_int_rows(&s, &[vec![0, 1]]).unwrap();
        assert_eq!(intersection_dim(&e, &e), 1);
        assert_eq!(intersection_dim(&e, &f), 0);

        let s2 = SympSpace::new(2, 3).unwrap();
        let l1 = Lagrangian::from_int_rows(&s2, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap();
        let l2 = Lagrangian::from_int_rows(&s2, &[vec![1, 0, 0, 0], vec![0, 0, 0, 1]]).unwrap();
        assert_eq!(intersection_dim(&l1, &l2), 1);
    }

    #[test]
    fn sp_action_preserves_lagrangians_and_transversals_exist() {
        for (d, q) in [(1usize, 3u32), (2, 3)] {
            let s = SympSpace::new(d, q).unwrap();
            let lags = enumerate_lagrangians(&s, 1 << 20).unwrap();
            if d == 1 {
                for g in sp2_elements(&s).unwrap() {
                    for l in &lags {
                        let _ = l.apply(&s, &g); // panics if not Lagrangian
                    }
                }
            }
            // common transversal exists for every pair
            for a in &lags {
                for b in &lags {
                    assert!(
                        lags.iter().any(|v| is_transverse(v, a) && is_transverse(v, b)),
                        "pair without common transversal at d={d} q={q}"
                    );
                }
            }
        }
    }

    #[test]
    fn decompose_splits_along_pivots() {
        let s = SympSpace::new(2, 3).unwrap();
        let l = Lagrangian::from_int_rows(&s, &[vec![1, 0, 0, 1], vec![0, 1, 1, 0]]).unwrap();
        for idx in 0..81usize {
            let m = crate::fqmat::vector_by_index(3, 4, idx);
            let (lpart, rpart) = l.decompose(&m);
            assert!(l.contains(&lpart));
            for (&a, (&b, &c)) in m.iter().zip(lpart.iter().zip(rpart.iter())) {
                assert_eq!(a, s.fq().add(b, c));
            }
            for &p in l.pivots() {
                assert_eq!(rpart[p], 0, "r must vanish on pivot coordinates");
            }
        }
    }

    #[test]
    fn b_coordinates_frozen_example() {
        let s = space13();
        let l1 = Lagrangian::from_int_rows(&s, &[vec![1, 0]]).unwrap();
        let l2 = Lagrangian::from_int_rows(&s, &[vec![0, 1]]).unwrap();
        let v = Lagrangian::from_int_rows(&s, &[vec![1, 1]]).unwrap();
        let bc = b_coordinates(&s, &l1, &l2, &v).unwrap();
        assert_eq!(bc.b.at(0, 0), 2);
        // zero graph when L1 = L2
        let bc0 = b_coordinates(&s, &l2, &l2, &v).unwrap();
        assert!(bc0.b.is_zero());
        // transversality violations error out
        assert_eq!(
            b_coordinates(&s, &l1, &l2, &l2).unwrap_err(),
            Error::TransversalityViolated
        );
    }

    #[test]
    fn b_rank_matches_intersection_and_congruence_under_sp() {
        let s = space13();
        let lags = enumerate_lagrangians(&s, 1 << 20).unwrap();
        let group = sp2_elements(&s).unwrap();
        for l1 in &lags {
            for l2 in &lags {
                for v in &lags {
                    let Ok(bc) = b_coordinates(&s, l1, l2, v) else { continue };
                    assert_eq!(
                        bc.b.rank(),
                        1 - intersection_dim(l1, l2),
                        "rank(b) = d - dim(L1∩L2)"
                    );
                    for g in &group {
                        let bc2 = b_coordinates(
                            &s,
                            &l1.apply(&s, g),
                            &l2.apply(&s, g),
                            &v.apply(&s, g),
                        )
                        .unwrap();
                        assert_eq!(bc2.b.rank(), bc.b.rank(), "congruence preserves rank");
                    }
                }
            }
        }
    }

    #[test]
    fn sp2_enumeration_has_group_order() {
        let s = space13();
        let group = sp2_elements(&s).unwrap();
        assert_eq!(group.len(), 24);
        let s5 = SympSpace::new(1, 5).unwrap();
        assert_eq!(sp2_elements(&s5).unwrap().len(), 120);
    }

    #[test]
    fn siegel_parabolic_orders_and_membership() {
        let s1 = space13();
        let p1 = siegel_parabolic_elements(&s1, 1 << 30).unwrap();
        assert_eq!(p1.len(), 6);
        let s2 = SympSpace::new(2, 3).unwrap();
        let p2 = siegel_parabolic_elements(&s2, 1 << 30).unwrap();
        assert_eq!(p2.len(), 48 * 27);
        // every element stabilizes X = span(e_1..e_d)
        let x = Lagrangian::from_int_rows(&s2, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap();
        for g in p2.iter().take(100).chain(p2.iter().rev().take(100)) {
            assert_eq!(x.apply(&s2, g), x);
        }
    }

    #[test]
    fn orbit_partition_class_counts() {
        let s1 = space13();
        let part1 = orbit_invariant_pairs(&s1, 1 << 20).unwrap();
        assert_eq!(part1.classes.len(), 2);
        assert!(part1.classes.iter().all(|&(_, c)| c > 0));
        assert!(part1.each_class_single_orbit);
        assert_eq!(part1.classes[1], (1, 4)); // the diagonal pairs

        let s2 = SympSpace::new(2, 3).unwrap();
        let part2 = orbit_invariant_pairs(&s2, 1 << 21).unwrap();
        assert_eq!(part2.classes.len(), 3);
        assert!(part2.classes.iter().all(|&(_, c)| c > 0));
        assert!(part2.each_class_single_orbit);
    }
}
