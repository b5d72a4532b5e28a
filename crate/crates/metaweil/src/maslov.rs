//! Scalar invariants of Lagrangian triples.
//!
//! theta(L1, L2, V) is the scalar of the loop S_{L1} -> S_V -> S_{L2} -> S_{L1}
//! built from raw intertwiners (defined when V is transverse to L1 and L2);
//! gamma(L1, L2, L3) is the scalar of the same loop built from normalized
//! intertwiners, total in all three arguments and valued in the fourth roots
//! of unity. Both are checked at construction: theta^2 equals
//! legendre(-1)^{d-i} q^{3d+i} and gamma^4 = 1, where i = dim(L1 ∩ L2).

use crate::cyclo::CycloNum;
use crate::heisenberg::{intertwiner, normalized_intertwiner, Model};
use crate::scalars::Scalars;
use crate::symplectic::{b_coordinates, intersection_dim, Lagrangian, SpElem, SympSpace};
use crate::Error;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ThetaValue {
    value: CycloNum,
    intersection: usize,
}

impl ThetaValue {
    pub fn value(&self) -> &CycloNum {
        &self.value
    }

    /// dim(L1 ∩ L2) of the defining triple.
    pub fn intersection_dim(&self) -> usize {
        self.intersection
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GammaValue {
    value: CycloNum,
    zeta4_exp: u8,
    intersection: usize,
}

impl GammaValue {
    pub fn value(&self) -> &CycloNum {
        &self.value
    }

    /// Exponent k with value = zeta_4^k.
    pub fn zeta4_exp(&self) -> u8 {
        self.zeta4_exp
    }

    pub fn intersection_dim(&self) -> usize {
        self.intersection
    }
}

pub fn theta_triple(
    sc: &Scalars,
    space: &SympSpace,
    l1: &Lagrangian,
    l2: &Lagrangian,
    v: &Lagrangian,
) -> Result<ThetaValue, Error> {
    if intersection_dim(v, l1) != 0 || intersection_dim(v, l2) != 0 {
        return Err(Error::TransversalityViolated);
    }
    let m1 = Model::new(space, l1)?;
    let m2 = Model::new(space, l2)?;
    let mv = Model::new(space, v)?;
    let loop_op = intertwiner(sc, &m2, &m1)
        .compose(&intertwiner(sc, &mv, &m2))?
        .compose(&intertwiner(sc, &m1, &mv))?;
    let value = loop_op.scalar_of()?;
    let i = intersection_dim(l1, l2);
    let d = space.d();
    let sign = if (d - i) % 2 == 1 && sc.legendre_minus1() == -1 { -1 } else { 1 };
    let mut expected = sc.q_pow((3 * d + i) as i64);
    if sign < 0 {
        expected = -&expected;
    }
    assert_eq!(&value * &value, expected, "theta^2 = legendre(-1)^(d-i) q^(3d+i)");
    Ok(ThetaValue { value, intersection: i })
}

/// The same scalar as a Gauss sum over the graph form: with B the graph
/// coordinates of L1 over L2 along V, theta = q^d sum_w psi(½ w^T B w).
pub fn theta_gauss(
    sc: &Scalars,
    space: &SympSpace,
    l1: &Lagrangian,
    l2: &Lagrangian,
    v: &Lagrangian,
) -> Result<CycloNum, Error> {
    let bc = b_coordinates(space, l1, l2, v)?;
    let fq = space.fq();
    let d = space.d();
    let q = space.q();
    let mut sum = sc.zero();
    for idx in 0..(q as u64).pow(d as u32) as usize {
        let w = crate::fqmat::vector_by_index(q, d, idx);
        let mut quad = 0u32;
        for i in 0..d {
            for j in 0..d {
                quad = fq.add(quad, fq.mul(w[i], fq.mul(bc.b.at(i, j), w[j])));
            }
        }
        sum += sc.psi(fq.mul(fq.half(), quad));
    }
    Ok(sum.scale_i64(q.pow(d as u32) as i64))
}

pub fn gamma(
    sc: &Scalars,
    space: &SympSpace,
    l1: &Lagrangian,
    l2: &Lagrangian,
    l3: &Lagrangian,
) -> Result<GammaValue, Error> {
    let m1 = Model::new(space, l1)?;
    let m2 = Model::new(space, l2)?;
    let m3 = Model::new(space, l3)?;
    let loop_op = normalized_intertwiner(sc, &m2, &m1)
        .compose(&normalized_intertwiner(sc, &m3, &m2))?
        .compose(&normalized_intertwiner(sc, &m1, &m3))?;
    let value = loop_op.scalar_of()?;
    let zeta4_exp = sc
        .zeta4_exponent(&value)
        .expect("gamma must be a fourth root of unity");
    Ok(GammaValue { value, zeta4_exp, intersection: intersection_dim(l1, l2) })
}

/// The group 2-cocycle at base point L0: c(g1, g2) = gamma(L0, g1 L0, g1 g2 L0).
pub fn cocycle(
    sc: &Scalars,
    space: &SympSpace,
    l0: &Lagrangian,
    g1: &SpElem,
    g2: &SpElem,
) -> Result<GammaValue, Error> {
    let l1 = l0.apply(space, g1);
    let l12 = l0.apply(space, &g1.mul(g2));
    gamma(sc, space, l0, &l1, &l12)
}

/// theta = sqrt(q)^{3d+i} gamma on triples where theta is defined.
pub fn theta_gamma_relation_holds(
    sc: &Scalars,
    space: &SympSpace,
    l1: &Lagrangian,
    l2: &Lagrangian,
    v: &Lagrangian,
) -> Result<bool, Error> {
    let th = theta_triple(sc, space, l1, l2, v)?;
    let ga = gamma(sc, space, l1, l2, v)?;
    let factor = sc.sqrt_q_pow((3 * space.d() + th.intersection) as i64);
    Ok(th.value() == &(&factor * ga.value()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{enumerate_lagrangians, sp2_elements};
    use alloc::collections::BTreeMap;
    use alloc::vec;

    fn gamma_table(
        sc: &Scalars,
        space: &SympSpace,
        lags: &[Lagrangian],
    ) -> Vec<Vec<Vec<GammaValue>>> {
        lags.iter()
            .map(|a| {
                lags.iter()
                    .map(|b| {
                        lags.iter()
                            .map(|c| gamma(sc, space, a, b, c).unwrap())
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    fn index_map(lags: &[Lagrangian]) -> impl Fn(&Lagrangian) -> usize + '_ {
        move |l: &Lagrangian| {
            lags.binary_search_by(|p| p.basis().data().cmp(l.basis().data())).unwrap()
        }
    }

    #[test]
    fn frozen_values_q3() {
        let space = SympSpace::new(1, 3).unwrap();
        let sc = Scalars::new(3).unwrap();
        let e = Lagrangian::from_int_rows(&space, &[vec![1, 0]]).unwrap();
        let f = Lagrangian::from_int_rows(&space, &[vec![0, 1]]).unwrap();
        let ef = Lagrangian::from_int_rows(&space, &[vec![1, 1]]).unwrap();
        let th = theta_triple(&sc, &space, &e, &f, &ef).unwrap();
        assert_eq!(th.value(), &crate::cyclo::from_int_coeffs(12, &[-3, 0, 6, 0]));
        assert_eq!(th.value(), &sc.gauss_sum().scale_i64(3));
        assert_eq!(th.intersection_dim(), 0);
        let ga = gamma(&sc, &space, &e, &f, &ef).unwrap();
        assert_eq!(ga.value(), sc.zeta4());
        assert_eq!(ga.zeta4_exp(), 1);
        // theta is undefined when V meets L1 or L2
        assert_eq!(
            theta_triple(&sc, &space, &e, &f, &e).unwrap_err(),
            Error::TransversalityViolated
        );
        // but gamma is total
        let g_degenerate = gamma(&sc, &space, &e, &f, &e).unwrap();
        assert_eq!(sc.zeta4_pow(g_degenerate.zeta4_exp()), *g_degenerate.value());
    }

    #[test]
    fn gamma_histogram_and_identities_q3() {
        let space = SympSpace::new(1, 3).unwrap();
        let sc = Scalars::new(3).unwrap();
        let lags = enumerate_lagrangians(&space, 1 << 20).unwrap();
        let table = gamma_table(&sc, &space, &lags);
        let mut hist: BTreeMap<u8, usize> = BTreeMap::new();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    *hist.entry(table[a][b][c].zeta4_exp()).or_insert(0) += 1;
                }
            }
        }
        // 40 of 1, 12 each of ±zeta_4, none of -1
        assert_eq!(hist.get(&0), Some(&40));
        assert_eq!(hist.get(&1), Some(&12));
        assert_eq!(hist.get(&3), Some(&12));
        assert_eq!(hist.get(&2), None);

        // antisymmetry in swaps of the last two / first two arguments
        let one = sc.one();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    assert_eq!(table[a][b][c].value() * table[a][c][b].value(), one);
                    assert_eq!(table[a][b][c].value() * table[b][a][c].value(), one);
                }
            }
        }

        // four-term relation gamma(a,b,c) gamma(a,d,b) = gamma(c,d,b) gamma(a,d,c)
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let lhs = table[a][b][c].value() * table[a][d][b].value();
                        let rhs = table[c][d][b].value() * table[a][d][c].value();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }

        // Sp-invariance via the induced permutation of Lagrangians
        let idx = index_map(&lags);
        for g in sp2_elements(&space).unwrap() {
            let perm: Vec<usize> = lags.iter().map(|l| idx(&l.apply(&space, &g))).collect();
            for a in 0..4 {
                for b in 0..4 {
                    for c in 0..4 {
                        assert_eq!(
                            table[perm[a]][perm[b]][perm[c]].value(),
                            table[a][b][c].value()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn theta_matches_gauss_sum_and_gamma_relation() {
        for q in [3u32, 5] {
            let space = SympSpace::new(1, q).unwrap();
            let sc = Scalars::new(q).unwrap();
            let lags = enumerate_lagrangians(&space, 1 << 20).unwrap();
            let mut valid = 0usize;
            for l1 in &lags {
                for l2 in &lags {
                    for v in &lags {
                        match theta_triple(&sc, &space, l1, l2, v) {
                            Err(Error::TransversalityViolated) => continue,
                            Err(e) => panic!("unexpected error {e:?}"),
                            Ok(th) => {
                                valid += 1;
                                let gs = theta_gauss(&sc, &space, l1, l2, v).unwrap();
                                assert_eq!(th.value(), &gs, "operator loop = Gauss sum");
                                assert!(theta_gamma_relation_holds(&sc, &space, l1, l2, v)
                                    .unwrap());
                            }
                        }
                    }
                }
            }
            let expected = if q == 3 { 36 } else { 150 };
            assert_eq!(valid, expected, "count of transverse triples at q={q}");
        }
    }

    #[test]
    fn theta_descent_two_values_up_to_sign() {
        let space = SympSpace::new(1, 3).unwrap();
        let sc = Scalars::new(3).unwrap();
        let lags = enumerate_lagrangians(&space, 1 << 20).unwrap();
        for l1 in &lags {
            for l2 in &lags {
                let mut values: Vec<CycloNum> = Vec::new();
                for v in &lags {
                    if let Ok(th) = theta_triple(&sc, &space, l1, l2, v) {
                        if !values.contains(th.value()) {
                            values.push(th.value().clone());
                        }
                    }
                }
                assert!(!values.is_empty(), "some transverse V exists");
                assert!(values.len() <= 2, "at most two theta values per pair");
                if values.len() == 2 {
                    assert_eq!(values[0], -&values[1], "the two values differ by sign");
                }
            }
        }
    }

    #[test]
    fn cocycle_histogram_and_identity() {
        let space = SympSpace::new(1, 3).unwrap();
        let sc = Scalars::new(3).unwrap();
        let lags = enumerate_lagrangians(&space, 1 << 20).unwrap();
        let l0 = &lags[1]; // span(e_1) = [[1, 0]]
        assert_eq!(l0.basis().row(0), &[1, 0]);
        let group = sp2_elements(&space).unwrap();
        let idx = index_map(&lags);
        let table = gamma_table(&sc, &space, &lags);
        let base = idx(l0);
        // c(g1, g2) via the cached gamma table
        let orbit: Vec<usize> = group.iter().map(|g| idx(&l0.apply(&space, g))).collect();
        let c = |i: usize, j: usize, group: &[SpElem]| -> &GammaValue {
            let l12 = idx(&l0.apply(&space, &group[i].mul(&group[j])));
            &table[base][orbit[i]][l12]
        };
        let mut hist: BTreeMap<u8, usize> = BTreeMap::new();
        for i in 0..24 {
            for j in 0..24 {
                let v = c(i, j, &group);
                // agreement with the direct definition
                assert_eq!(v, &cocycle(&sc, &space, l0, &group[i], &group[j]).unwrap());
                *hist.entry(v.zeta4_exp()).or_insert(0) += 1;
            }
        }
        assert_eq!(hist.get(&0), Some(&360));
        assert_eq!(hist.get(&1), Some(&108));
        assert_eq!(hist.get(&3), Some(&108));
        assert_eq!(hist.get(&2), None);

        // 2-cocycle identity c(g1,g2) c(g1g2,g3) = c(g1, g2g3) c(g2,g3)
        let elem_idx = |g: &SpElem| group.iter().position(|h| h == g).unwrap();
        for i in 0..24 {
            for j in 0..24 {
                let gij = group[i].mul(&group[j]);
                let ij = elem_idx(&gij);
                for k in 0..24 {
                    let gjk = group[j].mul(&group[k]);
                    let jk = elem_idx(&gjk);
                    let lhs = c(i, j, &group).value() * c(ij, k, &group).value();
                    let rhs = c(i, jk, &group).value() * c(j, k, &group).value();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
