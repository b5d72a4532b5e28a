//! The Heisenberg group H = F_q^{2d} × F_q and one concrete irreducible
//! model per Lagrangian, realized on functions of the canonical complement.
//!
//! Multiplication: (m, a)(m', a') = (m + m', a + a' + ½<m, m'>), with
//! ½ = (q+1)/2. For a Lagrangian L the model space S_L consists of
//! cyclotomic-valued functions on R = span of the standard basis vectors at
//! L's non-pivot columns; points of R are listed little-endian in the free
//! coordinates, so index 0 is always the zero vector.
//!
//! Operators act by (T f)(r_i) = sum_j T[i][j] f(r_j), i.e. columns index
//! the source; composition is matrix multiplication.

use alloc::vec;
use alloc::vec::Vec;

use crate::cmat::CycloMat;
use crate::cyclo::CycloNum;
use crate::scalars::Scalars;
use crate::symplectic::{intersection_dim, Lagrangian, SympSpace};
use crate::Error;

/// Largest model dimension q^d we are willing to materialize.
pub const MAX_MODEL_DIM: u64 = 125;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HElem {
    pub m: Vec<u32>,
    pub a: u32,
}

impl HElem {
    pub fn new(space: &SympSpace, m: Vec<u32>, a: u32) -> HElem {
        debug_assert_eq!(m.len(), space.dim());
        HElem { m: m.iter().map(|&x| space.fq().norm(x)).collect(), a: space.fq().norm(a) }
    }

    pub fn identity(space: &SympSpace) -> HElem {
        HElem { m: vec![0; space.dim()], a: 0 }
    }
}

pub fn h_mul(space: &SympSpace, x: &HElem, y: &HElem) -> HElem {
    let f = space.fq();
    let m = space.vector_add(&x.m, &y.m);
    let a = f.add(f.add(x.a, y.a), f.mul(f.half(), space.form(&x.m, &y.m)));
    HElem { m, a }
}

pub fn h_inv(space: &SympSpace, x: &HElem) -> HElem {
    let f = space.fq();
    HElem { m: x.m.iter().map(|&c| f.neg(c)).collect(), a: f.neg(x.a) }
}

/// All q^{2d+1} elements: m little-endian over the 2d coordinates, then a.
pub fn enumerate_elements(space: &SympSpace) -> Vec<HElem> {
    let q = space.q();
    let mut out = Vec::new();
    for idx in 0..(q as u64).pow(space.dim() as u32) {
        let m = crate::fqmat::vector_by_index(q, space.dim(), idx as usize);
        for a in 0..q {
            out.push(HElem { m: m.clone(), a });
        }
    }
    out
}

/// The model attached to a Lagrangian: functions on the canonical
/// complement R, with its point list frozen at construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Model {
    space: SympSpace,
    l: Lagrangian,
    points: Vec<Vec<u32>>,
}

impl Model {
    pub fn new(space: &SympSpace, l: &Lagrangian) -> Result<Model, Error> {
        let q = space.q() as u64;
        let dim = q.pow(space.d() as u32);
        if dim > MAX_MODEL_DIM {
            return Err(Error::ModelTooLarge { dim });
        }
        let free = l.free_cols().to_vec();
        let mut points = Vec::with_capacity(dim as usize);
        for idx in 0..dim as usize {
            let coords = crate::fqmat::vector_by_index(space.q(), free.len(), idx);
            let mut v = vec![0u32; space.dim()];
            for (k, &c) in free.iter().enumerate() {
                v[c] = coords[k];
            }
            points.push(v);
        }
        Ok(Model { space: *space, l: l.clone(), points })
    }

    pub fn space(&self) -> &SympSpace {
        &self.space
    }

    pub fn lagrangian(&self) -> &Lagrangian {
        &self.l
    }

    pub fn dim(&self) -> usize {
        self.points.len()
    }

    pub fn point(&self, i: usize) -> &[u32] {
        &self.points[i]
    }

    /// Index of a vector supported on the free coordinates.
    pub fn index_of_point(&self, r: &[u32]) -> usize {
        let q = self.space.q() as usize;
        let mut idx = 0usize;
        let mut w = 1usize;
        for &c in self.l.free_cols() {
            idx += r[c] as usize * w;
            w *= q;
        }
        debug_assert_eq!(&self.points[idx], r, "vector not supported on free coordinates");
        idx
    }

    /// Evaluate a model vector at an arbitrary group element, via the unique
    /// splitting m = l + r: f(m, a) = psi(a - ½<l, r>) f(r).
    pub fn eval(&self, sc: &Scalars, f: &[CycloNum], h: &HElem) -> CycloNum {
        debug_assert_eq!(sc.q(), self.space.q());
        let fq = self.space.fq();
        let (lpart, rpart) = self.l.decompose(&h.m);
        let e = fq.sub(h.a, fq.mul(fq.half(), self.space.form(&lpart, &rpart)));
        sc.psi(e) * &f[self.index_of_point(&rpart)]
    }
}

/// The basis vector delta_{r_k} of a model.
pub fn delta_vec(sc: &Scalars, model: &Model, k: usize) -> Vec<CycloNum> {
    let mut v = vec![sc.zero(); model.dim()];
    v[k] = sc.one();
    v
}

/// A linear map between model spaces, with its source and target recorded.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModelOp {
    pub source: Lagrangian,
    pub target: Lagrangian,
    pub entries: CycloMat,
}

impl ModelOp {
    pub fn identity(sc: &Scalars, model: &Model) -> ModelOp {
        ModelOp {
            source: model.lagrangian().clone(),
            target: model.lagrangian().clone(),
            entries: CycloMat::identity(sc.conductor(), model.dim()),
        }
    }

    /// self ∘ rhs (rhs applied first); requires rhs.target == self.source.
    pub fn compose(&self, rhs: &ModelOp) -> Result<ModelOp, Error> {
        if rhs.target != self.source {
            return Err(Error::DimensionMismatch);
        }
        Ok(ModelOp {
            source: rhs.source.clone(),
            target: self.target.clone(),
            entries: self.entries.mul(&rhs.entries)?,
        })
    }

    pub fn apply(&self, f: &[CycloNum]) -> Result<Vec<CycloNum>, Error> {
        self.entries.apply(f)
    }

    pub fn scale(&self, c: &CycloNum) -> ModelOp {
        ModelOp {
            source: self.source.clone(),
            target: self.target.clone(),
            entries: self.entries.scale(c),
        }
    }

    /// The scalar c with self = c·id; requires source == target.
    pub fn scalar_of(&self) -> Result<CycloNum, Error> {
        if self.source != self.target {
            return Err(Error::NotScalar);
        }
        self.entries.scalar_of()
    }
}

/// Right translation by h0 in the model of L: one nonzero entry per row.
/// (rho(h0) f)(r_i) = f((r_i, 0)·h0).
pub fn rho(sc: &Scalars, model: &Model, h0: &HElem) -> ModelOp {
    debug_assert_eq!(sc.q(), model.space().q());
    let space = model.space();
    let fq = space.fq();
    let n = model.dim();
    let mut entries = CycloMat::zero(sc.conductor(), n, n);
    for i in 0..n {
        let ri = model.point(i);
        let msum = space.vector_add(ri, &h0.m);
        let (lpart, rpart) = model.lagrangian().decompose(&msum);
        let j = model.index_of_point(&rpart);
        let e = fq.sub(
            fq.add(h0.a, fq.mul(fq.half(), space.form(ri, &h0.m))),
            fq.mul(fq.half(), space.form(&lpart, &rpart)),
        );
        *entries.at_mut(i, j) = sc.psi(e).clone();
    }
    ModelOp {
        source: model.lagrangian().clone(),
        target: model.lagrangian().clone(),
        entries,
    }
}

/// The canonical map S_{L1} -> S_{L2}, summing over the target Lagrangian:
/// entry[i2][j1] collects psi(½<z, r_i2> - ½<l', r_j1>) over z in L2 whose
/// L1-splitting of z + r_i2 lands at r_j1.
pub fn intertwiner(sc: &Scalars, from: &Model, to: &Model) -> ModelOp {
    debug_assert_eq!(sc.q(), from.space().q());
    debug_assert_eq!(from.space(), to.space());
    let space = from.space();
    let fq = space.fq();
    let d = space.d();
    let n = from.dim();
    let l2 = to.lagrangian();
    let mut entries = CycloMat::zero(sc.conductor(), n, n);
    let q = space.q() as u64;
    for i2 in 0..n {
        let r_i2 = to.point(i2);
        for zidx in 0..q.pow(d as u32) as usize {
            let coeffs = crate::fqmat::vector_by_index(space.q(), d, zidx);
            let mut z = vec![0u32; space.dim()];
            for (k, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    for t in 0..space.dim() {
                        z[t] = fq.add(z[t], fq.mul(c, l2.basis().at(k, t)));
                    }
                }
            }
            let msum = space.vector_add(&z, r_i2);
            let (lpart, rpart) = from.lagrangian().decompose(&msum);
            let j1 = from.index_of_point(&rpart);
            let e = fq.sub(
                fq.mul(fq.half(), space.form(&z, r_i2)),
                fq.mul(fq.half(), space.form(&lpart, &rpart)),
            );
            *entries.at_mut(i2, j1) += sc.psi(e);
        }
    }
    ModelOp {
        source: from.lagrangian().clone(),
        target: to.lagrangian().clone(),
        entries,
    }
}

/// The unitary normalization s^{-(d+i)} F_{L1,L2}, i = dim(L1 ∩ L2); equals
/// the identity when L1 = L2, and composes to the identity in reverse.
pub fn normalized_intertwiner(sc: &Scalars, from: &Model, to: &Model) -> ModelOp {
    let i = intersection_dim(from.lagrangian(), to.lagrangian());
    let scale = sc.sqrt_q_pow(-((from.space().d() + i) as i64));
    intertwiner(sc, from, to).scale(&scale)
}
