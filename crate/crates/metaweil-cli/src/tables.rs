//! Table dumps: canonical-order JSON over Lagrangian triples, group pairs,
//! and symmetric forms. Ordering is the library's enumeration order
//! (lexicographic echelon bases, lexicographic matrices, ascending form
//! index), so a table is a pure function of its parameters.

use metaweil::maslov::{cocycle, gamma, theta_triple};
use metaweil::scalars::Scalars;
use metaweil::strata::{four_psi, l0_fn, l1_fn, n_fn, s_psi, sym_by_index, sym_count, SymFn};
use metaweil::symplectic::{enumerate_lagrangians, sp2_elements, SympSpace};
use metaweil::weilrep::split_exponent_table;
use metaweil::Error;

use crate::formats::{cyclo_value, lag_rows, mat_rows, TableDoc};

pub fn gamma_table(d: usize, q: u32, limit: u64) -> Result<TableDoc, Error> {
    let space = SympSpace::new(d, q)?;
    let sc = Scalars::new(q)?;
    let lags = enumerate_lagrangians(&space, limit)?;
    let n = lags.len() as u64;
    if n.saturating_mul(n).saturating_mul(n) > limit {
        return Err(Error::LimitExceeded { needed: n * n * n, limit });
    }
    let mut doc = TableDoc::new("gamma");
    doc.param("d", d);
    doc.param("q", q);
    for l1 in &lags {
        for l2 in &lags {
            for l3 in &lags {
                let ga = gamma(&sc, &space, l1, l2, l3)?;
                doc.entries.push(serde_json::json!({
                    "l1": lag_rows(l1),
                    "l2": lag_rows(l2),
                    "l3": lag_rows(l3),
                    "zeta4_exp": ga.zeta4_exp(),
                    "value": cyclo_value(ga.value()),
                }));
            }
        }
    }
    Ok(doc)
}

pub fn theta_table(d: usize, q: u32, limit: u64) -> Result<TableDoc, Error> {
    let space = SympSpace::new(d, q)?;
    let sc = Scalars::new(q)?;
    let lags = enumerate_lagrangians(&space, limit)?;
    let n = lags.len() as u64;
    if n.saturating_mul(n).saturating_mul(n) > limit {
        return Err(Error::LimitExceeded { needed: n * n * n, limit });
    }
    let mut doc = TableDoc::new("theta");
    doc.param("d", d);
    doc.param("q", q);
    for l1 in &lags {
        for l2 in &lags {
            for v in &lags {
                // theta is defined only when V is transverse to both legs
                let Ok(th) = theta_triple(&sc, &space, l1, l2, v) else {
                    continue;
                };
                doc.entries.push(serde_json::json!({
                    "l1": lag_rows(l1),
                    "l2": lag_rows(l2),
                    "v": lag_rows(v),
                    "intersection": th.intersection_dim(),
                    "value": cyclo_value(th.value()),
                }));
            }
        }
    }
    Ok(doc)
}

pub fn cocycle_table(q: u32, limit: u64) -> Result<TableDoc, Error> {
    let space = SympSpace::new(1, q)?;
    let sc = Scalars::new(q)?;
    let lags = enumerate_lagrangians(&space, limit)?;
    let l0 = lags
        .iter()
        .find(|l| l.pivots() == [0])
        .expect("the standard Lagrangian is enumerated")
        .clone();
    let group = sp2_elements(&space)?;
    let n = group.len() as u64;
    if n.saturating_mul(n) > limit {
        return Err(Error::LimitExceeded { needed: n * n, limit });
    }
    let mut doc = TableDoc::new("cocycle");
    doc.param("q", q);
    doc.param("base", lag_rows(&l0));
    for g1 in &group {
        for g2 in &group {
            let c = cocycle(&sc, &space, &l0, g1, g2)?;
            doc.entries.push(serde_json::json!({
                "g1": mat_rows(g1.mat()),
                "g2": mat_rows(g2.mat()),
                "zeta4_exp": c.zeta4_exp(),
                "value": cyclo_value(c.value()),
            }));
        }
    }
    Ok(doc)
}

pub fn splitting_table(q: u32, limit: u64) -> Result<TableDoc, Error> {
    let space = SympSpace::new(1, q)?;
    let sc = Scalars::new(q)?;
    let lags = enumerate_lagrangians(&space, limit)?;
    let l0 = lags
        .iter()
        .find(|l| l.pivots() == [0])
        .expect("the standard Lagrangian is enumerated")
        .clone();
    let group = sp2_elements(&space)?;
    let m = group.len();
    if (m as u64).saturating_mul(m as u64) > limit {
        return Err(Error::LimitExceeded { needed: (m * m) as u64, limit });
    }
    let index_of = |mat: &metaweil::fqmat::FqMat| -> usize {
        group.iter().position(|h| h.mat() == mat).expect("closed under product")
    };
    let mut k = vec![vec![0u8; m]; m];
    let mut prod = vec![vec![0usize; m]; m];
    for (i, g1) in group.iter().enumerate() {
        for (j, g2) in group.iter().enumerate() {
            prod[i][j] = index_of(g1.mul(g2).mat());
            k[i][j] = cocycle(&sc, &space, &l0, g1, g2)?.zeta4_exp();
        }
    }
    let sol = split_exponent_table(&k, &prod)?;
    let mut doc = TableDoc::new("splitting");
    doc.param("q", q);
    doc.param("unique", sol.unique);
    for (i, g) in group.iter().enumerate() {
        doc.entries.push(serde_json::json!({
            "g": mat_rows(g.mat()),
            "zeta4_exp": sol.exponents[i],
        }));
    }
    Ok(doc)
}

pub fn strata_fn_table(d: usize, q: u32, fn_name: &str, limit: u64) -> Result<TableDoc, Error> {
    let sc = Scalars::new(q)?;
    let f = sc.fq();
    let total = sym_count(q, d);
    if total > limit {
        return Err(Error::LimitExceeded { needed: total, limit });
    }
    let table: SymFn = match fn_name {
        "N" => n_fn(&sc, d),
        "l0" => l0_fn(&sc, d),
        "l1" => l1_fn(&sc, d),
        "s" => SymFn {
            d,
            values: (0..total).map(|i| s_psi(&sc, &sym_by_index(f, d, i))).collect(),
        },
        "four-l0" => four_psi(&sc, &l0_fn(&sc, d), 1),
        "four-l1" => four_psi(&sc, &l1_fn(&sc, d), 1),
        _ => return Err(Error::ShapeViolated),
    };
    let mut doc = TableDoc::new("strata-fn");
    doc.param("d", d);
    doc.param("q", q);
    doc.param("fn", fn_name);
    for idx in 0..total {
        doc.entries.push(serde_json::json!({
            "index": idx,
            "form": mat_rows(&sym_by_index(f, d, idx)),
            "value": cyclo_value(table.at_index(idx)),
        }));
    }
    Ok(doc)
}
