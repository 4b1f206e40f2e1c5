//! Deterministic instance families.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{MapInstance, VertexId};

/// Two heavy triangles `a1a2a3`, `b1b2b3` joined by the light perfect
/// matching `a_i b_i`: the cut LP pays 3 with every heavy edge at 1/2, while
/// any integral solution needs 4 heavy edges.
///
/// Vertex `a_i` of copy `j` is `6j + i − 1` and `b_i` is `6j + i + 2`. Edge
/// order per copy: `a1a2, a1a3, a2a3, b1b2, b1b3, b2b3, a1b1, a2b2, a3b3`.
/// For `k ≥ 2` the copies are closed into a ring by heavy edges from `a2` of
/// each copy to `b3` of the next.
pub fn gen_gap_instance(k: usize) -> Result<MapInstance> {
    if k == 0 {
        return Err(Error::NonPositiveParameter { name: "k" });
    }
    let mut triples = Vec::with_capacity(9 * k + k);
    for j in 0..k {
        let a = |i: usize| 6 * j + i - 1;
        let b = |i: usize| 6 * j + i + 2;
        triples.extend([
            (a(1), a(2), 1),
            (a(1), a(3), 1),
            (a(2), a(3), 1),
            (b(1), b(2), 1),
            (b(1), b(3), 1),
            (b(2), b(3), 1),
            (a(1), b(1), 0),
            (a(2), b(2), 0),
            (a(3), b(3), 0),
        ]);
    }
    if k >= 2 {
        for j in 0..k {
            let next = (j + 1) % k;
            triples.push((6 * j + 1, 6 * next + 5, 1));
        }
    }
    MapInstance::from_triples(6 * k, &triples)
}

/// A comb whose lexicographic DFS from vertex 0 is a heavy spine
/// `r = 0, s_1 = 1, …, s_d = d` with a light leaf `l_i = d + i` hanging from
/// each `s_i`. Every leaf needs its own uplink (`r l_1`, `s_i l_{i+1}`), so
/// that tree costs `2d`, while the tour
/// `r, l_1, s_1, l_2, s_2, …, l_d, s_d, r` through all light edges costs
/// `d + 1`.
pub fn gen_bad_dfs_instance(depth: usize) -> Result<MapInstance> {
    if depth < 2 {
        return Err(Error::Parse(format!("bad-DFS depth must be at least 2, got {depth}")));
    }
    let d = depth;
    let spine = |i: usize| i;
    let leaf = |i: usize| d + i;
    let mut triples = Vec::new();
    for i in 0..d {
        triples.push((spine(i), spine(i + 1), 1));
    }
    for i in 1..=d {
        triples.push((spine(i), leaf(i), 0));
    }
    triples.push((spine(0), leaf(1), 1));
    for i in 1..d {
        triples.push((spine(i), leaf(i + 1), 1));
    }
    triples.push((spine(d), spine(0), 1));
    MapInstance::from_triples(2 * d + 1, &triples)
}

/// Random valid instance: a heavy Hamiltonian cycle on a random vertex order,
/// `extra_heavy` random heavy chords (parallel edges allowed), then up to
/// `⌊matching_fraction · n / 2⌋` vertex-disjoint edges relabelled light.
pub fn gen_random_instance(n: usize, extra_heavy: usize, matching_fraction: f64, seed: u64) -> Result<MapInstance> {
    if n < 3 {
        return Err(Error::SizeLimit { what: "random instance size (minimum)", limit: 3, actual: n });
    }
    if !(0.0..=1.0).contains(&matching_fraction) {
        return Err(Error::Parse(format!("matching fraction {matching_fraction} is outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<VertexId> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut triples: Vec<(VertexId, VertexId, u32)> =
        (0..n).map(|i| (perm[i], perm[(i + 1) % n], 1)).collect();
    for _ in 0..extra_heavy {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        triples.push((u, v, 1));
    }
    let target = (matching_fraction * n as f64 / 2.0).floor() as usize;
    let mut candidates: Vec<usize> = (0..triples.len()).collect();
    candidates.shuffle(&mut rng);
    let mut matched = vec![false; n];
    let mut lights = 0;
    for id in candidates {
        if lights == target {
            break;
        }
        let (u, v, _) = triples[id];
        if !matched[u] && !matched[v] {
            matched[u] = true;
            matched[v] = true;
            triples[id].2 = 0;
            lights += 1;
        }
    }
    MapInstance::from_triples(n, &triples)
}
