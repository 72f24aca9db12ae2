//! Named verification suites shared by the CLI `verify` subcommand and the
//! test suites.
//!
//! Each check compares a closed-form or structural routine against the
//! independent oracles of [`crate::oracle`] over an explicit scope, returning
//! a one-line summary on success and [`crate::Error::CheckFailed`] with the
//! first discrepancy (in input order) otherwise. Scopes are clamped to the
//! sizes the oracles can afford, so the suite always terminates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::{self, PyramidPolytope};
use crate::expansion::{build_mcf, certify_expansion, AUDIT_CAP};
use crate::facets::{facet_count, full_description, minimal_description};
use crate::graph::{average_degree, build_graph, edge_count_formula};
use crate::oracle::{self, FacetVerdict};
use crate::polytope::RevlexPolytope;
use crate::{Error, Result};

/// Seed for the deterministic random objectives of the optimization check.
pub const OPT_SEED: u64 = 0x5eed_0101;

fn fail(msg: String) -> Error {
    Error::CheckFailed(msg)
}

fn first_error(results: Vec<Result<()>>) -> Result<()> {
    for r in results {
        r?;
    }
    Ok(())
}

/// Vertex counts of the full-dimensional polytopes with ambient dimension `d`.
fn full_dimensional_range(d: usize) -> std::ops::RangeInclusive<u64> {
    (1u64 << (d - 1)) + 1..=(1u64 << d) - 1
}

fn rational(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Facet machinery against the rank and vertex-enumeration oracles: for
/// every full-dimensional polytope with `3 <= d <= min(max_d, 6)`, the rows
/// of the full description classify exactly as the minimal description
/// claims, the facet-row count equals `facet_count`, and vertex enumeration
/// of the full description returns exactly the vertex list.
pub fn check_facet_oracle(max_d: usize) -> Result<String> {
    let hi = max_d.min(oracle::H_ENUM_DIM_CAP);
    let mut targets = Vec::new();
    for d in 3..=hi {
        targets.extend(full_dimensional_range(d));
    }
    let results: Vec<Result<()>> = targets
        .par_iter()
        .map(|&n| {
            let p = RevlexPolytope::from_vertex_count(n)?;
            let rows = full_description(&p);
            let minimal = minimal_description(&p)?;
            let count = facet_count(&p)?;
            let mut facet_rows = 0u64;
            for row in &rows {
                let in_minimal = minimal.contains(row);
                match oracle::is_facet_by_rank(&p, row)? {
                    FacetVerdict::Facet => {
                        facet_rows += 1;
                        if !in_minimal {
                            return Err(fail(format!(
                                "n={}: facet row \"{}\" missing from the minimal description",
                                n, row
                            )));
                        }
                    }
                    FacetVerdict::ValidNotFacet => {
                        if in_minimal {
                            return Err(fail(format!(
                                "n={}: redundant row \"{}\" kept in the minimal description",
                                n, row
                            )));
                        }
                    }
                    FacetVerdict::NotValid => {
                        return Err(fail(format!(
                            "n={}: row \"{}\" is violated by a vertex",
                            n, row
                        )));
                    }
                }
            }
            if facet_rows != count {
                return Err(fail(format!(
                    "n={}: {} facet-defining rows but facet_count says {}",
                    n, facet_rows, count
                )));
            }
            let mut expected: Vec<Vec<BigRational>> = p
                .vertices()
                .map(|v| {
                    v.iter()
                        .map(|b| BigRational::from_integer(BigInt::from(u8::from(b))))
                        .collect()
                })
                .collect();
            expected.sort();
            if oracle::h_vertex_enumeration(&rows)? != expected {
                return Err(fail(format!(
                    "n={}: vertex enumeration of the full description differs from the vertex list",
                    n
                )));
            }
            Ok(())
        })
        .collect();
    first_error(results)?;
    Ok(format!(
        "{} full-dimensional polytopes with 3 <= d <= {} against rank and enumeration oracles",
        targets.len(),
        hi
    ))
}

/// The facet-count bounds `2d-1 <= f <= 3d-2` with their exact extremal
/// characterizations, exhaustively for `3 <= d <= min(max_d, 10)`.
pub fn check_facet_bounds(max_d: usize) -> Result<String> {
    let hi = max_d.min(10);
    let mut checked = 0u64;
    for d in 3..=hi {
        let maximizer = (1u64 << (d - 1)) + (1u64 << (d - 2)) + 1;
        for n in full_dimensional_range(d) {
            let p = RevlexPolytope::from_vertex_count(n)?;
            let f = facet_count(&p)?;
            let lo = 2 * d as u64 - 1;
            let top = 3 * d as u64 - 2;
            if f < lo || f > top {
                return Err(fail(format!("n={}: facet count {} outside [{}, {}]", n, f, lo, top)));
            }
            if (f == lo) != (p.signature().weight() == 2) {
                return Err(fail(format!(
                    "n={}: minimum facet count must occur exactly at weight two (f={})",
                    n, f
                )));
            }
            if (f == top) != (n == maximizer) {
                return Err(fail(format!(
                    "n={}: maximum facet count must occur exactly at n={} (f={})",
                    n, maximizer, f
                )));
            }
            checked += 1;
        }
    }
    Ok(format!("{} facet counts with 3 <= d <= {} within bounds, extremal cases exact", checked, hi))
}

/// Graphs: the closed-form edge count equals the built graph and the average
/// degree stays below `dim + 4` for `n <= min(max_n, 8192)`; the built graph
/// equals the smallest-face oracle graph edge-for-edge for `n <= 128`.
pub fn check_graphs(max_n: u64) -> Result<String> {
    let formula_hi = max_n.min(1 << 13).max(1);
    let oracle_hi = formula_hi.min(128);
    let ns: Vec<u64> = (1..=formula_hi).collect();
    let results: Vec<Result<()>> = ns
        .par_iter()
        .map(|&n| {
            let p = RevlexPolytope::from_vertex_count(n)?;
            let g = build_graph(&p)?;
            if edge_count_formula(&p) != g.edge_count() {
                return Err(fail(format!(
                    "n={}: edge formula {} but the graph has {} edges",
                    n,
                    edge_count_formula(&p),
                    g.edge_count()
                )));
            }
            if average_degree(&p) > rational(p.dim() as u64 + 4) {
                return Err(fail(format!("n={}: average degree exceeds dim + 4", n)));
            }
            if n <= oracle_hi && oracle::adjacency_oracle_graph(&p)? != g {
                return Err(fail(format!("n={}: graph differs from the smallest-face oracle", n)));
            }
            Ok(())
        })
        .collect();
    first_error(results)?;
    Ok(format!(
        "n 1..={}: edge formula and degree bound; n 1..={}: smallest-face oracle equality",
        formula_hi, oracle_hi
    ))
}

/// Optimization: `maximize` equals brute force on `trials` seeded random
/// rational objectives per vertex count, and its argmax is a vertex
/// attaining the value, for `n <= min(max_n, 1024)`.
pub fn check_optimization(max_n: u64, trials: u32, seed: u64) -> Result<String> {
    let hi = max_n.min(1024).max(1);
    let ns: Vec<u64> = (1..=hi).collect();
    let results: Vec<Result<()>> = ns
        .par_iter()
        .map(|&n| {
            let p = RevlexPolytope::from_vertex_count(n)?;
            let d = p.d();
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(n));
            for trial in 0..trials {
                let c: Vec<BigRational> = (0..d)
                    .map(|_| {
                        let numer: i64 = rng.random_range(-999..=999);
                        let denom: i64 = rng.random_range(1..=16);
                        BigRational::new(BigInt::from(numer), BigInt::from(denom))
                    })
                    .collect();
                let (value, arg) = p.maximize(&c)?;
                let (brute, _) = oracle::brute_max(&p, &c)?;
                if value != brute {
                    return Err(fail(format!(
                        "n={} trial {}: maximize found {} but brute force found {}",
                        n, trial, value, brute
                    )));
                }
                if !p.contains(arg) {
                    return Err(fail(format!("n={} trial {}: argmax is not a vertex", n, trial)));
                }
                let at_arg: BigRational =
                    arg.iter().zip(&c).filter(|(b, _)| *b).map(|(_, ci)| ci).sum();
                if at_arg != value {
                    return Err(fail(format!(
                        "n={} trial {}: argmax value {} differs from reported {}",
                        n, trial, at_arg, value
                    )));
                }
            }
            Ok(())
        })
        .collect();
    first_error(results)?;
    Ok(format!("n 1..={}: {} random rational objectives per n against brute force", hi, trials))
}

/// Expansion: flow support lies in the graph, `phi_max <= n/2`, and the
/// certified bound is at least 1 for `2 <= n <= min(max_n, 512)`; per-pair
/// audits pass up to the audit cap; exhaustive expansion dominates the
/// certificate up to `n = 18`; cube expansion is exactly 1 for `d <= 4`.
pub fn check_expansion(max_n: u64) -> Result<String> {
    let hi = max_n.min(512).max(2);
    let audit_hi = hi.min(AUDIT_CAP);
    let brute_hi = hi.min(18);
    let ns: Vec<u64> = (2..=hi).collect();
    let results: Vec<Result<()>> = ns
        .par_iter()
        .map(|&n| {
            let flow = build_mcf(n)?;
            if flow.phi_max() * BigRational::from_integer(BigInt::from(2u8)) > rational(n) {
                return Err(fail(format!("n={}: phi_max {} exceeds n/2", n, flow.phi_max())));
            }
            let bound = flow.lower_bound();
            if bound < BigRational::one() {
                return Err(fail(format!("n={}: certified bound {} is below 1", n, bound)));
            }
            let p = RevlexPolytope::from_vertex_count(n)?;
            let g = build_graph(&p)?;
            flow.check_support(&g)?;
            if n <= audit_hi {
                certify_expansion(n, true)?;
            }
            if n <= brute_hi {
                let (h, _) = oracle::brute_expansion(&g)?;
                if h < BigRational::one() {
                    return Err(fail(format!("n={}: exact expansion {} is below 1", n, h)));
                }
                if bound > h {
                    return Err(fail(format!(
                        "n={}: certificate {} exceeds the exact expansion {}",
                        n, bound, h
                    )));
                }
            }
            Ok(())
        })
        .collect();
    first_error(results)?;
    let mut cubes = 0;
    for d in 1..=4u32 {
        let n = 1u64 << d;
        if n > hi {
            break;
        }
        let p = RevlexPolytope::from_vertex_count(n)?;
        let (h, _) = oracle::brute_expansion(&build_graph(&p)?)?;
        if h != BigRational::one() {
            return Err(fail(format!("cube d={}: exact expansion {} instead of 1", d, h)));
        }
        cubes += 1;
    }
    Ok(format!(
        "n 2..={}: support, phi_max <= n/2, bound >= 1; audits to n={}; brute force to n={}; {} cubes exactly 1",
        hi, audit_hi, brute_hi, cubes
    ))
}

/// Pyramids at dimension `d`: base parameters satisfy their defining
/// inequalities, facet counts stay within `3d` and `d + 2 log2(n) + 2`,
/// edge counts stay within `(d + 4) n` (so the average degree is below
/// `2(d + 4)`; apex vertices push it past `d + 4` for some `n`, e.g.
/// `d=13, n=24` averages `205/12`), and expansion certificates are at
/// least 1 for `n <= cert_max_n`.
pub fn check_pyramids(d: usize, cert_max_n: u64) -> Result<String> {
    if d < 1 || d > 16 {
        return Err(Error::CapExceeded {
            what: "pyramid check dimension",
            cap: 16,
            requested: d as u64,
        });
    }
    let ns: Vec<u64> = (d as u64 + 1..=1u64 << d).collect();
    let cert_hi = cert_max_n.min(1u64 << d);
    let degree_bound = rational(d as u64 + 4);
    let edge_slope = (d + 4) as u128;
    let results: Vec<Result<()>> = ns
        .par_iter()
        .map(|&n| {
            let (bd, bn) = bounds::pyramid_params(d, n)?;
            if bd == 1 {
                return Err(fail(format!("d={}, n={}: base dimension 1 is impossible", d, n)));
            }
            if bd >= 1 && !(bn > 1u64 << (bd - 1) && bn <= 1u64 << bd) {
                return Err(fail(format!(
                    "d={}, n={}: base count {} outside (2^{}, 2^{}]",
                    d,
                    n,
                    bn,
                    bd - 1,
                    bd
                )));
            }
            if 1u64 << bd > 2 * n {
                return Err(fail(format!(
                    "d={}, n={}: base dimension {} exceeds 1 + log2(n)",
                    d, n, bd
                )));
            }
            let p = PyramidPolytope::new(d, n)?;
            let f = p.facet_count();
            if f > 3 * d as u64 || !bounds::facet_bound_holds(d, n, f) {
                return Err(fail(format!("d={}, n={}: facet count {} breaks a bound", d, n, f)));
            }
            if p.edge_count() > edge_slope * n as u128 {
                return Err(fail(format!("d={}, n={}: edge count exceeds (d + 4) n", d, n)));
            }
            if p.apex_count() == 0 && p.average_degree() > degree_bound {
                return Err(fail(format!("d={}, n={}: average degree exceeds d + 4", d, n)));
            }
            if n <= cert_hi {
                let cert = p.expansion_certificate()?;
                if cert.lower_bound < BigRational::one() {
                    return Err(fail(format!(
                        "d={}, n={}: certified expansion {} is below 1",
                        d, n, cert.lower_bound
                    )));
                }
            }
            Ok(())
        })
        .collect();
    first_error(results)?;
    Ok(format!(
        "d={}: {} admissible n with facet and edge bounds; certificates to n={}",
        d,
        ns.len(),
        cert_hi
    ))
}

/// The full suite at CLI scopes. Pyramid checks run at `min(max_d, 13)`;
/// per-check clamps keep every entry within its oracle's reach.
pub fn run_suite(max_d: usize, max_n: u64) -> Vec<(&'static str, Result<String>)> {
    vec![
        ("facet-oracle", check_facet_oracle(max_d)),
        ("facet-bounds", check_facet_bounds(max_d)),
        ("graphs", check_graphs(max_n)),
        ("optimization", check_optimization(max_n, 100, OPT_SEED)),
        ("expansion", check_expansion(max_n)),
        ("pyramids", check_pyramids(max_d.min(13), max_n.min(512))),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn facet_checks_pass_at_small_scope() {
        check_facet_oracle(4).unwrap();
        check_facet_bounds(6).unwrap();
    }

    #[test]
    fn graph_check_passes_at_small_scope() {
        check_graphs(48).unwrap();
    }

    #[test]
    fn optimization_check_passes_at_small_scope() {
        check_optimization(24, 20, OPT_SEED).unwrap();
    }

    #[test]
    fn expansion_check_passes_at_small_scope() {
        check_expansion(32).unwrap();
    }

    #[test]
    fn pyramid_check_passes_at_small_scope() {
        check_pyramids(6, 64).unwrap();
        assert!(check_pyramids(17, 4).is_err());
    }
}
