//! A worked slice of bundle data on the projective line, in the two-chart
//! Cech model: split bundles L = ⊕ O(a_i) with all a_i <= -2, extension
//! classes in H^1 of Sym^2 L twisted back to O(-2), the symmetric "period
//! form" the class induces on V = ⊕ H^0(O(-2 - a_i)) through residue
//! pairings, the theta-type sum f_p over V, and the section count h^0 of
//! the rank-2n middle bundle, computed by bounded-degree linear algebra.
//!
//! Conventions: H^0(O(m)) = polynomials in x of degree <= m, coefficients
//! ascending; H^1(O(m)) = span of x^j for m+1 <= j <= -1, coefficients
//! stored ascending from exponent m+1. The residue pairing reads off the
//! coefficient of x^{-1} of a product.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::cyclo::CycloNum;
use crate::fq::Fq;
use crate::fqmat::{vector_by_index, FqMat};
use crate::scalars::Scalars;
use crate::strata::{corank, s_psi_closed};
use crate::Error;

pub fn h0_dim(m: i64) -> usize {
    if m >= 0 {
        (m + 1) as usize
    } else {
        0
    }
}

pub fn h1_dim(m: i64) -> usize {
    if m <= -2 {
        (-m - 1) as usize
    } else {
        0
    }
}

/// Residue pairing H^1(O(m)) x H^0(O(-2-m)) -> F_q: the coefficient of
/// x^{-1} in alpha·s. alpha is indexed from exponent m+1, s from exponent 0;
/// both spaces have dimension -m-1.
pub fn serre_pair(f: Fq, m: i64, alpha: &[u32], s: &[u32]) -> Result<u32, Error> {
    let dim = h1_dim(m);
    if alpha.len() != dim || s.len() != h0_dim(-2 - m) {
        return Err(Error::DimensionMismatch);
    }
    // exponent of alpha[k] is m+1+k; pairs with s[-m-2-k]
    let mut acc = 0u32;
    for (k, &a) in alpha.iter().enumerate() {
        let l = (-m - 2) as usize - k;
        acc = f.add(acc, f.mul(a, s[l]));
    }
    Ok(acc)
}

/// A direct sum of line bundles O(a_1) ⊕ ... ⊕ O(a_n), all a_i <= -2 so
/// that Sym^2 has no global sections and V = ⊕ H^0(O(-2-a_i)) carries the
/// whole period pairing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SplitBundle {
    degrees: Vec<i64>,
}

impl SplitBundle {
    pub fn new(degrees: Vec<i64>) -> Result<SplitBundle, Error> {
        if degrees.is_empty() {
            return Err(Error::DimensionMismatch);
        }
        for &a in &degrees {
            if a > -2 {
                return Err(Error::DegreeOutOfRange(a));
            }
        }
        Ok(SplitBundle { degrees })
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// Basis of V: pairs (component i, monomial exponent k), k <= -2-a_i.
    pub fn v_basis(&self) -> Vec<(usize, usize)> {
        self.degrees
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| (0..h0_dim(-2 - a)).map(move |k| (i, k)))
            .collect()
    }

    pub fn v_dim(&self) -> usize {
        self.degrees.iter().map(|&a| h0_dim(-2 - a)).sum()
    }

    /// Window dimension of the component e_ij, i <= j.
    pub fn ext_component_dim(&self, i: usize, j: usize) -> usize {
        h1_dim(self.degrees[i] + self.degrees[j] + 2)
    }

    pub fn ext_total_dim(&self) -> usize {
        (0..self.n())
            .flat_map(|i| (i..self.n()).map(move |j| (i, j)))
            .map(|(i, j)| self.ext_component_dim(i, j))
            .sum()
    }
}

/// An extension class: one H^1(O(a_i + a_j + 2)) component per unordered
/// pair i <= j, each stored in its coefficient window.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtClassP1 {
    components: BTreeMap<(usize, usize), Vec<u32>>,
}

impl ExtClassP1 {
    pub fn zero(bundle: &SplitBundle) -> ExtClassP1 {
        let mut components = BTreeMap::new();
        for i in 0..bundle.n() {
            for j in i..bundle.n() {
                components.insert((i, j), vec![0u32; bundle.ext_component_dim(i, j)]);
            }
        }
        ExtClassP1 { components }
    }

    pub fn from_components(
        bundle: &SplitBundle,
        f: Fq,
        given: &BTreeMap<(usize, usize), Vec<u32>>,
    ) -> Result<ExtClassP1, Error> {
        let mut out = ExtClassP1::zero(bundle);
        for (&(i, j), coeffs) in given {
            if i > j || j >= bundle.n() {
                return Err(Error::DimensionMismatch);
            }
            if coeffs.len() != bundle.ext_component_dim(i, j) {
                return Err(Error::DimensionMismatch);
            }
            out.components
                .insert((i, j), coeffs.iter().map(|&c| f.norm(c)).collect());
        }
        Ok(out)
    }

    /// The idx-th class: base-q digits little-endian over the concatenated
    /// windows in (i, j) lexicographic order, coefficients ascending.
    pub fn by_index(bundle: &SplitBundle, q: u32, idx: u64) -> ExtClassP1 {
        let mut out = ExtClassP1::zero(bundle);
        let mut t = idx;
        for i in 0..bundle.n() {
            for j in i..bundle.n() {
                let slot = out.components.get_mut(&(i, j)).expect("initialized");
                for c in slot.iter_mut() {
                    *c = (t % q as u64) as u32;
                    t /= q as u64;
                }
            }
        }
        debug_assert_eq!(t, 0, "class index out of range");
        out
    }

    pub fn component(&self, i: usize, j: usize) -> &[u32] {
        let key = if i <= j { (i, j) } else { (j, i) };
        &self.components[&key]
    }

    pub fn components(&self) -> &BTreeMap<(usize, usize), Vec<u32>> {
        &self.components
    }
}

fn poly_mul(f: Fq, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

/// The value the class assigns to s ∈ V: sum of residue pairings
/// <e_ii, s_i^2> plus <e_ij, 2 s_i s_j> over i < j. Computed directly
/// through the pairings — never through the matrix below.
pub fn class_value(
    f: Fq,
    bundle: &SplitBundle,
    e: &ExtClassP1,
    s: &[Vec<u32>],
) -> Result<u32, Error> {
    let mut acc = 0u32;
    for i in 0..bundle.n() {
        for j in i..bundle.n() {
            let m = bundle.degrees()[i] + bundle.degrees()[j] + 2;
            if h1_dim(m) == 0 {
                continue;
            }
            let mut prod = poly_mul(f, &s[i], &s[j]);
            if i < j {
                for c in prod.iter_mut() {
                    *c = f.add(*c, *c);
                }
            }
            acc = f.add(acc, serre_pair(f, m, e.component(i, j), &prod)?);
        }
    }
    Ok(acc)
}

/// The symmetric matrix of the polarized pairing on V in the monomial
/// basis: B[(i,k)][(j,l)] = <e_{ij}, x^{k+l}>.
pub fn period_form(f: Fq, bundle: &SplitBundle, e: &ExtClassP1) -> Result<FqMat, Error> {
    let basis = bundle.v_basis();
    let r = basis.len();
    let mut b = FqMat::zero(f, r, r);
    for (row, &(i, k)) in basis.iter().enumerate() {
        for (col, &(j, l)) in basis.iter().enumerate() {
            let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
            let m = bundle.degrees()[lo] + bundle.degrees()[hi] + 2;
            if h1_dim(m) == 0 {
                continue;
            }
            let mut mono = vec![0u32; h0_dim(-2 - m)];
            mono[k + l] = 1;
            b.set(row, col, serre_pair(f, m, e.component(lo, hi), &mono)?);
        }
    }
    assert!(b.is_symmetric(), "period form must be symmetric");
    Ok(b)
}

/// f_p = sum over s in V of psi(class value at s), by direct enumeration
/// through the residue pairings.
pub fn f_p(
    sc: &Scalars,
    bundle: &SplitBundle,
    e: &ExtClassP1,
    limit: u64,
) -> Result<CycloNum, Error> {
    let f = Fq::new(sc.q())?;
    let r = bundle.v_dim();
    let total = (sc.q() as u64)
        .checked_pow(r as u32)
        .ok_or(Error::LimitExceeded { needed: u64::MAX, limit })?;
    if total > limit {
        return Err(Error::LimitExceeded { needed: total, limit });
    }
    let dims: Vec<usize> = bundle.degrees().iter().map(|&a| h0_dim(-2 - a)).collect();
    let mut sum = sc.zero();
    for idx in 0..total as usize {
        let coords = vector_by_index(sc.q(), r, idx);
        let mut s: Vec<Vec<u32>> = Vec::with_capacity(bundle.n());
        let mut pos = 0usize;
        for &dim in &dims {
            s.push(coords[pos..pos + dim].to_vec());
            pos += dim;
        }
        sum += sc.psi(class_value(f, bundle, e, &s)?);
    }
    Ok(sum)
}

/// dim H^0 of the middle bundle M of the extension: sections are tuples
/// r_j of degree <= -a_j - 2 killed by the obstruction rows; for each i the
/// coefficients of x^t, a_i < t < 0, of sum_j e_ij(x)·r_j(x) must vanish.
/// The count equals corank(period_form) — the two matrices are built from
/// the same pairings along different groupings.
pub fn h0_of_m(f: Fq, bundle: &SplitBundle, e: &ExtClassP1) -> Result<usize, Error> {
    let n = bundle.n();
    let basis = bundle.v_basis(); // columns: (j, l)
    let r = basis.len();
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(r);
    for i in 0..n {
        let ai = bundle.degrees()[i];
        for t in (ai + 1)..0 {
            let mut row = vec![0u32; r];
            for (col, &(j, l)) in basis.iter().enumerate() {
                let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
                let m = bundle.degrees()[lo] + bundle.degrees()[hi] + 2;
                let window = e.component(lo, hi);
                // coefficient of exponent t - l in e_ij, window starts at m+1
                let exp = t - l as i64;
                let offset = exp - (m + 1);
                if offset >= 0 && (offset as usize) < window.len() {
                    row[col] = window[offset as usize];
                }
            }
            rows.push(row);
        }
    }
    debug_assert_eq!(rows.len(), r);
    let mat = FqMat::from_rows(f, &rows)?;
    Ok(r - mat.rank())
}

/// One fully-computed point of the slice.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct P1Record {
    pub degrees: Vec<i64>,
    pub ext_index: u64,
    pub r: usize,
    pub corank: usize,
    pub h0: usize,
    pub f_p: CycloNum,
    pub closed: CycloNum,
}

pub fn slice_point(
    sc: &Scalars,
    bundle: &SplitBundle,
    ext_index: u64,
    limit: u64,
) -> Result<P1Record, Error> {
    let f = Fq::new(sc.q())?;
    let e = ExtClassP1::by_index(bundle, sc.q(), ext_index);
    let b = period_form(f, bundle, &e)?;
    Ok(P1Record {
        degrees: bundle.degrees().to_vec(),
        ext_index,
        r: bundle.v_dim(),
        corank: corank(&b),
        h0: h0_of_m(f, bundle, &e)?,
        f_p: f_p(sc, bundle, &e, limit)?,
        closed: s_psi_closed(sc, &b),
    })
}

/// Nonincreasing degree tuples with entries in {min_deg, ..., -2}, listed
/// with the first coordinate decreasing from -2.
pub fn enumerate_degree_tuples(n: usize, min_deg: i64) -> Result<Vec<Vec<i64>>, Error> {
    if n == 0 || min_deg > -2 {
        return Err(Error::DegreeOutOfRange(min_deg));
    }
    fn extend(out: &mut Vec<Vec<i64>>, cur: &mut Vec<i64>, n: usize, min_deg: i64, hi: i64) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let mut a = hi;
        while a >= min_deg {
            cur.push(a);
            extend(out, cur, n, min_deg, a);
            cur.pop();
            a -= 1;
        }
    }
    let mut out = Vec::new();
    extend(&mut out, &mut Vec::new(), n, min_deg, -2);
    Ok(out)
}

/// The full slice: every nonincreasing degree tuple crossed with its whole
/// extension-class space, each point carried to a P1Record.
pub fn enumerate_bunp_slice(
    sc: &Scalars,
    n: usize,
    min_deg: i64,
    limit: u64,
) -> Result<Vec<P1Record>, Error> {
    let q = sc.q() as u64;
    let tuples = enumerate_degree_tuples(n, min_deg)?;
    let mut total = 0u64;
    let mut bundles = Vec::new();
    for degrees in tuples {
        let bundle = SplitBundle::new(degrees)?;
        let classes = q
            .checked_pow(bundle.ext_total_dim() as u32)
            .ok_or(Error::LimitExceeded { needed: u64::MAX, limit })?;
        let work = classes.saturating_mul(q.pow(bundle.v_dim() as u32));
        total = total.saturating_add(work);
        bundles.push((bundle, classes));
    }
    if total > limit {
        return Err(Error::LimitExceeded { needed: total, limit });
    }
    let mut out = Vec::new();
    for (bundle, classes) in bundles {
        for idx in 0..classes {
            out.push(slice_point(sc, &bundle, idx, limit)?);
        }
    }
    Ok(out)
}
