//! Seeded instance generators.
//!
//! All randomized suites draw from ChaCha8 seeded with the user's 64-bit
//! seed, one independent stream per instance index, so instance `i` is the
//! same no matter how many instances run or in what order.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Tree};

/// Identifier embedded in reports next to the seed.
pub const PRNG_ID: &str = "chacha8-seed_from_u64-stream";

/// Generator for instance `index` under `seed`.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A uniformly random labeled tree on `n` vertices (via a random Prufer
/// sequence).
pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Tree {
    match n {
        0 => panic!("trees have at least one vertex"),
        1 | 2 => Tree::from_edges(n, (n == 2).then_some((0, 1))).unwrap(),
        _ => {
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
            crate::enumeration::prufer_decode(&seq)
        }
    }
}

/// A random tree with its labels shuffled.
pub fn shuffled<R: Rng>(rng: &mut R, t: &Tree) -> Tree {
    let mut perm: Vec<usize> = (0..t.order()).collect();
    perm.shuffle(rng);
    t.relabel(&perm)
}

/// Shape of a random connected graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphKind {
    Tree,
    Unicyclic,
    Dense,
}

impl GraphKind {
    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Tree => "tree",
            GraphKind::Unicyclic => "unicyclic",
            GraphKind::Dense => "random-connected",
        }
    }
}

/// A random connected graph on `n` vertices: a random spanning tree plus
/// zero, one, or several extra edges depending on `kind`.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, kind: GraphKind) -> Graph {
    let mut g = random_tree(rng, n).into_graph();
    let missing: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !g.has_edge(u, v))
        .collect();
    let extra = match kind {
        GraphKind::Tree => 0,
        GraphKind::Unicyclic => 1.min(missing.len()),
        GraphKind::Dense => rng.random_range(0..=missing.len()),
    };
    for &(u, v) in missing.choose_multiple(rng, extra) {
        g.add_edge(u, v).expect("missing edges are new");
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let a: u64 = instance_rng(42, 3).random();
        let b: u64 = instance_rng(42, 3).random();
        let c: u64 = instance_rng(42, 4).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn generated_graphs_have_the_requested_shape() {
        let mut rng = instance_rng(1, 0);
        for n in 1..9 {
            let t = random_tree(&mut rng, n);
            assert_eq!(t.order(), n);
            let u = random_connected(&mut rng, n, GraphKind::Unicyclic);
            assert!(u.is_connected());
            if n >= 3 {
                assert_eq!(u.size(), n);
            }
            let d = random_connected(&mut rng, n, GraphKind::Dense);
            assert!(d.is_connected());
        }
    }
}
