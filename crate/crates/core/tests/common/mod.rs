#![allow(dead_code)]

use artin_core::{CoxeterGraph, Label};
use rand::rngs::StdRng;
use rand::Rng;

/// Random connected graph on `1..=max_vertices` generators with labels in {2, 3}.
pub fn random_simply_laced_connected(rng: &mut StdRng, max_vertices: usize) -> CoxeterGraph {
    loop {
        let n = rng.gen_range(1..=max_vertices);
        let p: f64 = rng.gen_range(0.2..0.8);
        let mut g = CoxeterGraph::with_rank(n);
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(p) {
                    g.set_label(i, j, Label::Finite(3)).unwrap();
                }
            }
        }
        if g.is_connected() {
            return g;
        }
    }
}

/// Random graph on `1..=max_vertices` generators with labels drawn from `labels`
/// (a label of 2 leaves the pair unconnected).
pub fn random_labeled(rng: &mut StdRng, max_vertices: usize, labels: &[Label]) -> CoxeterGraph {
    let n = rng.gen_range(1..=max_vertices);
    let mut g = CoxeterGraph::with_rank(n);
    for i in 0..n {
        for j in i + 1..n {
            let l = labels[rng.gen_range(0..labels.len())];
            g.set_label(i, j, l).unwrap();
        }
    }
    g
}

pub const MIXED_LABELS: [Label; 7] = [
    Label::Finite(2),
    Label::Finite(2),
    Label::Finite(2),
    Label::Finite(3),
    Label::Finite(4),
    Label::Finite(5),
    Label::Infinity,
];
