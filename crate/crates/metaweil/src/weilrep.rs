//! Lifts of Sp(2d, F_q) to operators on a fixed model, the 2-cocycle they
//! generate, closed Schrödinger-type formulas on the standard model, the
//! splitting of the cocycle over mu_4, and the associated theta function.
//!
//! The lift is M[g] = F̂_{gL,L} ∘ A_g where A_g is the substitution
//! (A_g f)(h) = f(g^{-1} h) and F̂ the normalized intertwiner; M[g] is
//! defined up to scalar, and c(g1, g2) = M[g1] M[g2] / M[g1 g2] recovers
//! the triple invariant gamma(L, g1 L, g1 g2 L) exactly.

use alloc::vec;
use alloc::vec::Vec;

use crate::cmat::CycloMat;
use crate::cyclo::CycloNum;
use crate::fqmat::{index_of_vector, vector_by_index, FqMat};
use crate::heisenberg::{normalized_intertwiner, Model, ModelOp};
use crate::scalars::Scalars;
use crate::symplectic::{SpElem, SympSpace};
use crate::Error;

/// The substitution operator S_L -> S_{gL}, (A_g f)(h) = f(g^{-1} h):
/// row i has a single entry psi(-½<l, r>) at r, where g^{-1}·(target point i)
/// splits as l + r along L.
pub fn translate_op(sc: &Scalars, from: &Model, g: &SpElem) -> Result<ModelOp, Error> {
    let space = from.space();
    let fq = space.fq();
    let target_l = from.lagrangian().apply(space, g);
    let target = Model::new(space, &target_l)?;
    let ginv = g.inverse();
    let n = from.dim();
    let mut entries = CycloMat::zero(sc.conductor(), n, n);
    for i in 0..n {
        let pre = ginv.apply_vec(target.point(i));
        let (lpart, rpart) = from.lagrangian().decompose(&pre);
        let j = from.index_of_point(&rpart);
        let e = fq.neg(fq.mul(fq.half(), space.form(&lpart, &rpart)));
        *entries.at_mut(i, j) = sc.psi(e).clone();
    }
    Ok(ModelOp { source: from.lagrangian().clone(), target: target_l, entries })
}

/// The lift M[g] = F̂_{gL,L} ∘ A_g : S_L -> S_L.
pub fn weil_operator(sc: &Scalars, model: &Model, g: &SpElem) -> Result<ModelOp, Error> {
    let a = translate_op(sc, model, g)?;
    let gl_model = Model::new(model.space(), &a.target)?;
    let f = normalized_intertwiner(sc, &gl_model, model);
    f.compose(&a)
}

/// The scalar c with M[g1] ∘ M[g2] = c · M[g1 g2].
pub fn operator_cocycle(
    sc: &Scalars,
    model: &Model,
    g1: &SpElem,
    g2: &SpElem,
) -> Result<CycloNum, Error> {
    let m1 = weil_operator(sc, model, g1)?;
    let m2 = weil_operator(sc, model, g2)?;
    let m12 = weil_operator(sc, model, &g1.mul(g2))?;
    m1.compose(&m2)?.entries.proportionality_scalar(&m12.entries)
}

/// theta_L(g): the value of M[g]·delta_0 at the zero point, i.e. the (0,0)
/// operator entry. Composing with the parabolic's closed-formula operators
/// on either side leaves it unchanged (their row 0 and column 0 are delta_0).
pub fn theta_fn(sc: &Scalars, model: &Model, g: &SpElem) -> Result<CycloNum, Error> {
    Ok(weil_operator(sc, model, g)?.entries.at(0, 0).clone())
}

fn blocks(space: &SympSpace, g: &SpElem) -> (FqMat, FqMat, FqMat, FqMat) {
    let d = space.d();
    let m = g.mat();
    (
        m.block(0, 0, d, d),
        m.block(0, d, d, d),
        m.block(d, 0, d, d),
        m.block(d, d, d, d),
    )
}

fn require_standard_model(model: &Model) -> Result<(), Error> {
    let d = model.space().d();
    let std_x = FqMat::identity(model.space().fq(), d)
        .hstack(&FqMat::zero(model.space().fq(), d, d))
        .expect("same rows");
    if model.lagrangian().basis() != &std_x {
        return Err(Error::ShapeViolated);
    }
    Ok(())
}

/// A monomial operator on the standard model: one nonzero psi-power per row.
/// Row i carries psi(psi_exps[i]) at column perm[i]; points of the model are
/// identified with F_q^d little-endian. Equality of these encodings is
/// exactly equality of the operators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialOp {
    pub perm: Vec<usize>,
    pub psi_exps: Vec<u32>,
}

impl MonomialOp {
    /// self ∘ inner (inner applied first). Substitutions compose through
    /// the permutation contravariantly.
    pub fn compose_after(&self, inner: &MonomialOp) -> MonomialOp {
        debug_assert_eq!(self.perm.len(), inner.perm.len());
        let mut perm = Vec::with_capacity(self.perm.len());
        let mut exps = Vec::with_capacity(self.perm.len());
        for i in 0..self.perm.len() {
            perm.push(inner.perm[self.perm[i]]);
            exps.push(self.psi_exps[i] + inner.psi_exps[self.perm[i]]);
        }
        MonomialOp { perm, psi_exps: exps }
    }

    pub fn reduce(&mut self, q: u32) {
        for e in &mut self.psi_exps {
            *e %= q;
        }
    }

    pub fn to_model_op(&self, sc: &Scalars, model: &Model) -> ModelOp {
        let n = model.dim();
        let mut entries = CycloMat::zero(sc.conductor(), n, n);
        for i in 0..n {
            *entries.at_mut(i, self.perm[i]) = sc.psi(self.psi_exps[i] % sc.q()).clone();
        }
        ModelOp {
            source: model.lagrangian().clone(),
            target: model.lagrangian().clone(),
            entries,
        }
    }
}

/// Closed formula on the standard model for block-upper-triangular g:
/// (M f)(w) = psi(½ w^T B A^T w) f(A^T w). Requires the lower-left block to
/// vanish and B A^T to be symmetric; the resulting map of parabolic elements
/// to operators is an exact group homomorphism.
pub fn schrodinger_upper_monomial(space: &SympSpace, g: &SpElem) -> Result<MonomialOp, Error> {
    let (a, b, c, _) = blocks(space, g);
    if !c.is_zero() {
        return Err(Error::ShapeViolated);
    }
    let fq = space.fq();
    let d = space.d();
    let q = space.q();
    let bat = b.mul(&a.transpose())?;
    if !bat.is_symmetric() {
        return Err(Error::ShapeViolated);
    }
    let at = a.transpose();
    let n = (q as u64).pow(d as u32) as usize;
    let mut perm = Vec::with_capacity(n);
    let mut exps = Vec::with_capacity(n);
    for i in 0..n {
        let w = vector_by_index(q, d, i);
        let img = at.mul_vec(&w)?;
        perm.push(index_of_vector(q, &img));
        let mut quad = 0u32;
        for r in 0..d {
            for s in 0..d {
                quad = fq.add(quad, fq.mul(w[r], fq.mul(bat.at(r, s), w[s])));
            }
        }
        exps.push(fq.mul(fq.half(), quad));
    }
    Ok(MonomialOp { perm, psi_exps: exps })
}

pub fn schrodinger_upper(sc: &Scalars, model: &Model, g: &SpElem) -> Result<ModelOp, Error> {
    require_standard_model(model)?;
    Ok(schrodinger_upper_monomial(model.space(), g)?.to_model_op(sc, model))
}

/// Closed formula on the standard model for antidiagonal g = [[0, B], [-B^{-T}, 0]]:
/// entries[i][j] = sqrt(q)^{-d} psi(w_i^T B w_j) — the B-twisted Fourier
/// transform with unitary normalization.
pub fn schrodinger_weyl(sc: &Scalars, model: &Model, g: &SpElem) -> Result<ModelOp, Error> {
    require_standard_model(model)?;
    let space = model.space();
    let (a, b, _, dblock) = blocks(space, g);
    if !a.is_zero() || !dblock.is_zero() {
        return Err(Error::ShapeViolated);
    }
    let fq = space.fq();
    let d = space.d();
    let n = model.dim();
    let scale = sc.sqrt_q_pow(-(d as i64));
    let mut entries = CycloMat::zero(sc.conductor(), n, n);
    for i in 0..n {
        let wi = vector_by_index(space.q(), d, i);
        for j in 0..n {
            let wj = vector_by_index(space.q(), d, j);
            let mut pair = 0u32;
            for r in 0..d {
                for s in 0..d {
                    pair = fq.add(pair, fq.mul(wi[r], fq.mul(b.at(r, s), wj[s])));
                }
            }
            *entries.at_mut(i, j) = &scale * sc.psi(pair);
        }
    }
    Ok(ModelOp {
        source: model.lagrangian().clone(),
        target: model.lagrangian().clone(),
        entries,
    })
}

/// A solution of n(g1) + n(g2) - n(g1 g2) = k(g1, g2) mod 4, exponent form
/// of a splitting c(g1,g2) = s(g1) s(g2) s(g1 g2)^{-1} with s = zeta_4^n.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SplittingSolution {
    pub exponents: Vec<u8>,
    /// true iff the full mod-4 system pins every exponent (trivial kernel).
    pub unique: bool,
}

fn solve_gf2(rows: &[(u128, bool)], m: usize) -> Option<(Vec<bool>, usize)> {
    let mut work: Vec<(u128, bool)> = rows.to_vec();
    let mut pivot_cols: Vec<usize> = Vec::new();
    for col in 0..m {
        let used = pivot_cols.len();
        let Some(pos) = (used..work.len()).find(|&r| work[r].0 >> col & 1 == 1) else {
            continue;
        };
        work.swap(used, pos);
        let (pmask, prhs) = work[used];
        for r in 0..work.len() {
            if r != used && work[r].0 >> col & 1 == 1 {
                work[r].0 ^= pmask;
                work[r].1 ^= prhs;
            }
        }
        pivot_cols.push(col);
    }
    if work[pivot_cols.len()..].iter().any(|&(mask, rhs)| mask == 0 && rhs) {
        return None;
    }
    // fully reduced: row i constrains exactly pivot column i (free vars 0),
    // so read the solved rhs from the final state, not the pivot-time one
    let mut x = vec![false; m];
    for (i, &col) in pivot_cols.iter().enumerate() {
        x[col] = work[i].1;
    }
    Some((x, pivot_cols.len()))
}

/// Solve the exponent system given the cocycle's zeta_4 exponents k[i][j]
/// and the multiplication table prod[i][j] (indices into the group list).
/// Two GF(2) stages: solve mod 2, divide the (necessarily even) residual by
/// two, solve mod 2 again.
pub fn split_exponent_table(
    k: &[Vec<u8>],
    prod: &[Vec<usize>],
) -> Result<SplittingSolution, Error> {
    let m = k.len();
    if m > 128 {
        return Err(Error::LimitExceeded { needed: m as u64, limit: 128 });
    }
    let mut masks: Vec<u128> = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            // coefficient vector of n_i + n_j - n_{ij} mod 2
            let mut mask = 0u128;
            mask ^= 1 << i;
            mask ^= 1 << j;
            mask ^= 1 << prod[i][j];
            masks.push(mask);
        }
    }
    let rows1: Vec<(u128, bool)> = masks
        .iter()
        .enumerate()
        .map(|(t, &mask)| (mask, k[t / m][t % m] % 2 == 1))
        .collect();
    let (n0, pivots) = solve_gf2(&rows1, m).ok_or(Error::InconsistentSystem)?;
    let unique = pivots == m;
    // residual must be divisible by 2
    let mut rows2: Vec<(u128, bool)> = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let partial =
                n0[i] as i64 + n0[j] as i64 - n0[prod[i][j]] as i64;
            let r = (k[i][j] as i64 - partial).rem_euclid(4);
            if r % 2 != 0 {
                return Err(Error::InconsistentSystem);
            }
            rows2.push((masks[i * m + j], r / 2 == 1));
        }
    }
    let (n1, _) = solve_gf2(&rows2, m).ok_or(Error::InconsistentSystem)?;
    let exponents: Vec<u8> = (0..m)
        .map(|i| ((n0[i] as u8) + 2 * (n1[i] as u8)) % 4)
        .collect();
    for i in 0..m {
        for j in 0..m {
            let lhs = (exponents[i] as i64 + exponents[j] as i64
                - exponents[prod[i][j]] as i64)
                .rem_euclid(4);
            if lhs != k[i][j] as i64 % 4 {
                return Err(Error::InconsistentSystem);
            }
        }
    }
    Ok(SplittingSolution { exponents, unique })
}
