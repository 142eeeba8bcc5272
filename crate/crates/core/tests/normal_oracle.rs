//! Enumeration against the exhaustive oracle and the frozen vertex-surface
//! goldens.

mod common;

use std::path::PathBuf;

use acylbounds::normal_surface::{
    build_surface, enumerate_admissible, enumerate_vertex_surfaces, euler_characteristic,
    parse_vector_list, vertex_links, NormalVector,
};
use common::oracle::{oracle_admissible, oracle_minimal};
use common::{fixture, load_tri as load, TRIANGULATIONS as FIXTURES};

const MAX_COORD: u32 = 4;

fn golden_path(name: &str) -> PathBuf {
    fixture(&format!("golden/{name}.vertex.nsv"))
}

fn golden(name: &str) -> Vec<Vec<u32>> {
    let text = std::fs::read_to_string(golden_path(name)).unwrap();
    parse_vector_list(&text)
        .unwrap()
        .iter()
        .map(|v| v.coords().to_vec())
        .collect()
}

#[test]
#[ignore = "rewrites the frozen golden files from the oracle"]
fn regenerate_goldens() {
    for name in FIXTURES {
        let tri = load(name);
        let minimal = oracle_minimal(&oracle_admissible(&tri, MAX_COORD));
        let text: String = minimal
            .into_iter()
            .map(|v| NormalVector::new(v).to_text() + "\n")
            .collect();
        std::fs::write(golden_path(name), text).unwrap();
    }
}

#[test]
fn oracle_agrees_with_goldens() {
    for name in FIXTURES {
        let tri = load(name);
        assert_eq!(
            oracle_minimal(&oracle_admissible(&tri, MAX_COORD)),
            golden(name),
            "{name}"
        );
    }
}

#[test]
fn enumeration_matches_oracle() {
    for name in FIXTURES {
        let tri = load(name);
        let oracle = oracle_admissible(&tri, MAX_COORD);
        let found: Vec<Vec<u32>> = enumerate_admissible(&tri, MAX_COORD)
            .unwrap()
            .iter()
            .map(|v| v.coords().to_vec())
            .collect();
        let mut sorted = found.clone();
        sorted.sort();
        assert_eq!(sorted, oracle, "{name}: admissible set");
        let vertex: Vec<Vec<u32>> = enumerate_vertex_surfaces(&tri, MAX_COORD)
            .unwrap()
            .iter()
            .map(|v| v.coords().to_vec())
            .collect();
        assert_eq!(vertex, golden(name), "{name}: vertex surfaces");
    }
}

#[test]
fn euler_characteristics_agree() {
    for name in FIXTURES {
        let tri = load(name);
        for v in enumerate_admissible(&tri, MAX_COORD).unwrap() {
            let linear = euler_characteristic(&tri, &v).unwrap();
            let model = build_surface(&tri, &v, false).unwrap();
            assert_eq!(linear, model.euler(), "{name}: {v}");
            let per_component: i64 = model.components.iter().map(|c| c.euler).sum();
            assert_eq!(per_component, linear, "{name}: {v}");
        }
        for link in vertex_links(&tri) {
            assert_eq!(
                euler_characteristic(&tri, &link).unwrap(),
                2,
                "{name}: {link}"
            );
            let model = build_surface(&tri, &link, false).unwrap();
            assert_eq!(model.components.len(), 1);
            assert_eq!(model.components[0].genus, Some(0));
        }
    }
}

#[test]
fn admissible_counts_are_frozen() {
    let counts: Vec<usize> = FIXTURES
        .iter()
        .map(|name| oracle_admissible(&load(name), MAX_COORD).len())
        .collect();
    assert_eq!(counts, [14, 48, 8124]);
}
