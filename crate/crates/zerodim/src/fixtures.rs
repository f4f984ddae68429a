//! The worked example diagrams and subshifts, embedded at compile time.

use crate::bratteli::{parse_diagram, Edge, OrderedBratteliDiagram};
use crate::symbolic::{parse_subshift, SubshiftSpec};

pub const ODOMETER: &str = include_str!("../fixtures/odometer.bd");
pub const EXAMPLE1: &str = include_str!("../fixtures/example1.bd");
pub const EXAMPLE2: &str = include_str!("../fixtures/example2.bd");
pub const EXAMPLE3: &str = include_str!("../fixtures/example3.bd");
pub const SKEW: &str = include_str!("../fixtures/skew.bd");
pub const FIGURE_U1: &str = include_str!("../fixtures/figure_u1.bd");
pub const GOLDEN: &str = include_str!("../fixtures/golden.sub");
pub const FULL2: &str = include_str!("../fixtures/full2.sub");
pub const SUNNY: &str = include_str!("../fixtures/sunny.sub");

fn load(text: &str) -> OrderedBratteliDiagram {
    parse_diagram(text).expect("embedded fixture parses")
}

pub fn odometer(depth: usize) -> OrderedBratteliDiagram {
    load(ODOMETER).extended(depth)
}

pub fn example1() -> OrderedBratteliDiagram {
    load(EXAMPLE1)
}

pub fn example2() -> OrderedBratteliDiagram {
    load(EXAMPLE2)
}

pub fn example3() -> OrderedBratteliDiagram {
    load(EXAMPLE3)
}

pub fn skew(depth: usize) -> OrderedBratteliDiagram {
    load(SKEW).extended(depth)
}

pub fn two_symbol_figure() -> OrderedBratteliDiagram {
    load(FIGURE_U1)
}

/// Every path through `u` is minimal and every path through `w` maximal:
/// each vertex below `u` (resp. `w`) has its order-0 (resp. order-1) edge
/// to its parent and its other edge to the `v` column, which carries two
/// parallel edges per level. Level sizes are `2^k + 1`.
pub fn medynets(depth: usize) -> OrderedBratteliDiagram {
    let mut names = vec![vec!["v0".to_string()], vec!["u".into(), "v".into(), "w".into()]];
    let mut edges = vec![Vec::new(), (0..3).map(|s| Edge { source: s, target: 0, order: 0 }).collect()];
    let mut half = 1;
    for k in 2..=depth {
        let v_prev = half;
        let mut level = Vec::new();
        let mut es = Vec::new();
        for i in 0..2 * half {
            es.push(Edge { source: i, target: i / 2, order: 0 });
            es.push(Edge { source: i, target: v_prev, order: 1 });
            level.push(format!("u{k}.{i}"));
        }
        let v = level.len();
        es.push(Edge { source: v, target: v_prev, order: 0 });
        es.push(Edge { source: v, target: v_prev, order: 1 });
        level.push(format!("v{k}"));
        for i in 0..2 * half {
            let s = v + 1 + i;
            es.push(Edge { source: s, target: v_prev, order: 0 });
            es.push(Edge { source: s, target: v_prev + 1 + i / 2, order: 1 });
            level.push(format!("w{k}.{i}"));
        }
        names.push(level);
        edges.push(es);
        half *= 2;
    }
    names.truncate(depth + 1);
    edges.truncate(depth + 1);
    OrderedBratteliDiagram::new(names, edges, None).expect("generated diagram is consistent")
}

/// All fixture diagrams, the stationary ones extended to `depth`.
pub fn all_diagrams(depth: usize) -> Vec<OrderedBratteliDiagram> {
    vec![
        odometer(depth),
        example1().extended(depth),
        example2().extended(depth),
        example3().extended(depth),
        skew(depth),
        medynets(depth),
        two_symbol_figure(),
    ]
}

/// Names matching [`all_diagrams`].
pub const DIAGRAM_NAMES: [&str; 7] = ["odometer", "example1", "example2", "example3", "skew", "medynets", "figure_u1"];

pub fn golden() -> SubshiftSpec {
    parse_subshift(GOLDEN).expect("embedded fixture parses")
}

pub fn full2() -> SubshiftSpec {
    parse_subshift(FULL2).expect("embedded fixture parses")
}

pub fn sunny() -> SubshiftSpec {
    parse_subshift(SUNNY).expect("embedded fixture parses")
}
