#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;

use acylbounds::knot_tangles::KnotDiagram;
use acylbounds::triangulation::{parse_triangulation, Triangulation};

/// Golden name and command line, run from the workspace root.
pub const CLI_COMMANDS: [(&str, &str); 22] = [
    ("census_t1", "tri census fixtures/t1_onevertex.tri"),
    ("census_t2", "tri census fixtures/t2_closed.tri"),
    ("census_s3", "tri census fixtures/s3_double.tri"),
    ("enumerate_t1", "tri enumerate fixtures/t1_onevertex.tri"),
    (
        "enumerate_t2",
        "tri enumerate fixtures/t2_closed.tri --max-coord 3",
    ),
    ("enumerate_s3", "tri enumerate fixtures/s3_double.tri"),
    ("classify_t2", "tri classify fixtures/t2_closed.tri"),
    ("certify_t1", "tri certify fixtures/t1_onevertex.tri"),
    (
        "certify_s3",
        "tri certify fixtures/s3_double.tri fixtures/golden/s3_double.vertex.nsv",
    ),
    ("heegaard", "heegaard --g 2 --ni 3,3"),
    ("knot_trefoil", "knot bounds fixtures/trefoil.pd"),
    ("knot_figure8", "knot bounds fixtures/figure8.pd"),
    (
        "tangles_chain4",
        "knot tangles fixtures/chain4.pd --dec fixtures/chain4.dec",
    ),
    (
        "tangles_pair2",
        "knot tangles fixtures/pair2.pd --dec fixtures/pair2.dec --prime",
    ),
    ("geodesic", "knot geodesic --t 4 --g 2 --ni 3,3 --c 5 --r 3"),
    ("cone", "branched cone fixtures/fig14.bsf"),
    (
        "carry",
        "branched carry fixtures/fig14.bsf --weights 1,7,8,6,4,2",
    ),
    ("fig14_3", "branched fig14 --n 3"),
    ("fig14_10", "branched fig14 --n 10"),
    ("gamma", "construct gamma --n 4"),
    ("tunnel", "construct tunnel --b 2 --g 1"),
    ("selftest", "selftest"),
];

pub const TRIANGULATIONS: [&str; 3] = ["t1_onevertex", "t2_closed", "s3_double"];

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

pub fn load_tri(name: &str) -> Triangulation {
    parse_triangulation(&read_fixture(&format!("{name}.tri"))).unwrap()
}

/// Alternation read off the PD code alone: a strand leaving a crossing at an
/// even (under) slot must arrive at the next one on an odd (over) slot and
/// vice versa, so every edge label sits once in each parity class.
pub fn pd_alternates(d: &KnotDiagram) -> bool {
    let mut parity: std::collections::HashMap<u32, Vec<usize>> = Default::default();
    for x in d.crossings() {
        for (slot, &label) in x.iter().enumerate() {
            parity.entry(label).or_default().push(slot % 2);
        }
    }
    parity.values().all(|p| p.len() == 2 && p[0] != p[1])
}

/// A braid word on `strands` strands, from a list of raw picks, in which every
/// generator occurs so the closure is connected.
pub fn connected_word(strands: usize, picks: &[(usize, bool)]) -> Vec<i32> {
    let gens = strands - 1;
    let mut word: Vec<i32> = picks
        .iter()
        .map(|&(g, positive)| {
            let g = (g % gens) as i32 + 1;
            if positive {
                g
            } else {
                -g
            }
        })
        .collect();
    for g in 1..=gens as i32 {
        if !word.iter().any(|x| x.abs() == g) {
            word.push(g);
        }
    }
    word
}
