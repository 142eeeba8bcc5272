//! Invariant suite over the bundled fixtures. Deterministic and free of side
//! effects; each check contributes one `check.<name> = pass|FAIL` line.

use crate::acyl_bounds::{classify_edges, counting_certificate, heegaard_bound, prop1_bound};
use crate::branched::{figure14_family, figure14_spec, weight_cone};
use crate::cli::Report;
use crate::constructions::gamma_family;
use crate::knot_tangles::{
    braid_closure, crossing_bound, parse_pd, rational_reduce, tangle_fraction, Tangle, TwistVector,
};
use crate::normal_surface::{
    build_surface, enumerate_admissible, euler_characteristic, vertex_links,
};
use crate::triangulation::parse_triangulation;

pub const TRIANGULATIONS: [(&str, &str); 3] = [
    (
        "t1_onevertex",
        include_str!("../../../fixtures/t1_onevertex.tri"),
    ),
    ("t2_closed", include_str!("../../../fixtures/t2_closed.tri")),
    ("s3_double", include_str!("../../../fixtures/s3_double.tri")),
];
pub const TREFOIL_PD: &str = include_str!("../../../fixtures/trefoil.pd");
pub const FIGURE_EIGHT_PD: &str = include_str!("../../../fixtures/figure8.pd");

/// Coordinate cap for the enumerated surfaces; small enough for debug builds.
const SELFTEST_MAX_COORD: u32 = 2;

type Check = (&'static str, fn() -> Result<usize, String>);

const CHECKS: [Check; 9] = [
    ("census", census),
    ("normal_euler", normal_euler),
    ("edge_classes", edge_classes),
    ("prop1", prop1),
    ("heegaard_identity", heegaard_identity),
    ("diagrams", diagrams),
    ("tangle_round_trip", tangle_round_trip),
    ("fig14_family", fig14),
    ("gamma_betti", gamma),
];

/// Runs every check and returns whether all passed.
pub fn run(r: &mut Report) -> bool {
    let mut ok = true;
    for (name, check) in CHECKS {
        match check() {
            Ok(cases) => {
                r.kv(format_args!("check.{name}"), "pass");
                r.kv(format_args!("check.{name}.cases"), cases);
            }
            Err(why) => {
                ok = false;
                r.kv(format_args!("check.{name}"), "FAIL");
                r.warning(format_args!("{name}: {why}"));
            }
        }
    }
    r.kv("all_passed", ok);
    ok
}

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn census() -> Result<usize, String> {
    for (name, text) in TRIANGULATIONS {
        let t = parse_triangulation(text).map_err(|e| format!("{name}: {e}"))?;
        let c = t.skeleton_census();
        ensure(c.euler() == 0 && c.faces == 2 * c.tetrahedra, || {
            format!("{name}: census {c}")
        })?;
        let again = parse_triangulation(&t.to_text()).map_err(|e| e.to_string())?;
        ensure(again == t, || format!("{name}: text round trip"))?;
    }
    Ok(TRIANGULATIONS.len())
}

fn normal_euler() -> Result<usize, String> {
    let mut cases = 0;
    for (name, text) in TRIANGULATIONS {
        let t = parse_triangulation(text).map_err(|e| e.to_string())?;
        for link in vertex_links(&t) {
            let chi = euler_characteristic(&t, &link).map_err(|e| e.to_string())?;
            ensure(chi == 2, || format!("{name}: vertex link has euler {chi}"))?;
            cases += 1;
        }
        for v in enumerate_admissible(&t, SELFTEST_MAX_COORD).map_err(|e| e.to_string())? {
            let linear = euler_characteristic(&t, &v).map_err(|e| e.to_string())?;
            let cells = build_surface(&t, &v, false)
                .map_err(|e| e.to_string())?
                .euler();
            ensure(linear == cells, || {
                format!("{name}: {v} linear {linear} cells {cells}")
            })?;
            let doubled = build_surface(&t, &v, true).map_err(|e| e.to_string())?;
            ensure(doubled.euler() == 2 * cells, || {
                format!("{name}: {v} doubled euler")
            })?;
            cases += 1;
        }
    }
    Ok(cases)
}

fn edge_classes() -> Result<usize, String> {
    let mut cases = 0;
    for (name, text) in TRIANGULATIONS {
        let t = parse_triangulation(text).map_err(|e| e.to_string())?;
        let bound = prop1_bound(t.tet_count() as i64).map_err(|e| e.to_string())?;
        for v in enumerate_admissible(&t, SELFTEST_MAX_COORD).map_err(|e| e.to_string())? {
            let Ok(cls) = classify_edges(&t, &v) else {
                continue;
            };
            ensure(cls.good_fair_disjoint(), || {
                format!("{name}: {v} good and fair edges meet")
            })?;
            ensure(cls.max_face_nongood() <= 6, || {
                format!("{name}: {v} face with >6 non-good")
            })?;
            let cert = counting_certificate(&t, &v).map_err(|e| e.to_string())?;
            ensure(cert.tet_inequality_holds, || {
                format!("{name}: {v} tetrahedron excess")
            })?;
            ensure(cert.bound_value == bound, || {
                format!("{name}: {v} bound value")
            })?;
            cases += 1;
        }
    }
    Ok(cases)
}

fn prop1() -> Result<usize, String> {
    for t in 1..=100i64 {
        let b = prop1_bound(t).map_err(|e| e.to_string())?;
        ensure(b == (t + 1) / 2, || format!("t = {t} gives {b}"))?;
    }
    Ok(100)
}

fn heegaard_identity() -> Result<usize, String> {
    let mut cases = 0;
    for g in 1..=3usize {
        let mut ni = vec![2u64; g];
        let len = ni.len();
        loop {
            let h = heegaard_bound(g, &ni).map_err(|e| e.to_string())?;
            let n: i64 = ni.iter().map(|&x| x as i64).sum();
            ensure(h.bad_edge_cap == 4 * n - 6 * g as i64, || {
                format!("g = {g}, {ni:?}")
            })?;
            cases += 1;
            // Odometer over entries in [2, 4].
            let mut i = 0;
            while i < len && ni[i] == 4 {
                ni[i] = 2;
                i += 1;
            }
            if i == len {
                break;
            }
            ni[i] += 1;
        }
    }
    let h = heegaard_bound(2, &[3, 3]).map_err(|e| e.to_string())?;
    ensure(h.genus_bound == 3, || "g = 2, (3,3)".into())?;
    Ok(cases)
}

fn diagrams() -> Result<usize, String> {
    let trefoil = parse_pd(TREFOIL_PD).map_err(|e| e.to_string())?;
    let eight = parse_pd(FIGURE_EIGHT_PD).map_err(|e| e.to_string())?;
    ensure(crossing_bound(&trefoil).bound == 1, || {
        "trefoil bound".into()
    })?;
    ensure(crossing_bound(&eight).bound == 3, || {
        "figure-eight bound".into()
    })?;
    let mut cases = 2;
    // All three-strand braid words of length up to 6 using both generators.
    for len in 2..=6u32 {
        for code in 0..4u32.pow(len) {
            let word: Vec<i32> = (0..len)
                .map(|k| [1, -1, 2, -2][(code / 4u32.pow(k) % 4) as usize])
                .collect();
            if !word.iter().any(|x| x.abs() == 1) || !word.iter().any(|x| x.abs() == 2) {
                continue;
            }
            let d = braid_closure(3, &word).map_err(|e| format!("{word:?}: {e}"))?;
            let n = d.crossing_count();
            ensure(d.faces().len() == n + 2, || format!("{word:?}: face count"))?;
            let sum: i64 = d.face_sizes().iter().map(|&i| 3 * i as i64 - 6).sum();
            ensure(sum == 6 * n as i64 - 12, || {
                format!("{word:?}: face budget")
            })?;
            cases += 1;
        }
    }
    Ok(cases)
}

fn tangle_round_trip() -> Result<usize, String> {
    let mut cases = 0;
    for len in 1..=4u32 {
        for code in 0..5u32.pow(len) {
            let v = TwistVector(
                (0..len)
                    .map(|k| (code / 5u32.pow(k) % 5) as i64 - 2)
                    .collect(),
            );
            let t = Tangle::from_twist_vector(&v);
            let back = rational_reduce(&t).map_err(|e| format!("{v}: {e}"))?;
            let back = back.ok_or_else(|| format!("{v}: not recognized"))?;
            ensure(tangle_fraction(&back) == tangle_fraction(&v), || {
                format!("{v}: fraction")
            })?;
            cases += 1;
        }
    }
    Ok(cases)
}

fn fig14() -> Result<usize, String> {
    for n in 3..=50i64 {
        let (w, s) = figure14_family(n).map_err(|e| e.to_string())?;
        let expect = [1, 2 * n - 1, 2 * n, 2 * n - 2, n, n - 2];
        ensure(w.iter().map(|&x| x as i64).eq(expect), || {
            format!("n = {n}: weights")
        })?;
        ensure(s.is_connected() && s.genus() == Some(3 * n), || {
            format!("n = {n}: surface")
        })?;
    }
    let cone = weight_cone(&figure14_spec()).map_err(|e| e.to_string())?;
    ensure(cone.dimension == 2, || "cone dimension".into())?;
    Ok(48)
}

fn gamma() -> Result<usize, String> {
    for n in 2..=30i64 {
        let f = gamma_family(n).map_err(|e| e.to_string())?;
        ensure(f.betti == n as usize && f.graph.is_connected(), || {
            format!("n = {n}")
        })?;
    }
    Ok(29)
}
