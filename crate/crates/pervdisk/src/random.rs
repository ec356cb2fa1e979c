//! Seeded generation of random test objects. Everything here is a pure
//! function of the seed, so a reported failure can be replayed exactly.

use std::collections::BTreeMap;

use rand::RngExt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::braid::BraidWord;
use crate::cube::DoubleCube;
use crate::exactlin::{Matrix, Rat};
use crate::quiver::PervQuiver;
use crate::sympair::SymDiagram;

/// Mixes a master seed with a stream label so that independent consumers
/// (suites, trials) get decorrelated streams. SplitMix64 finalizer.
pub fn seed_for(master: u64, stream: u64) -> u64 {
    let mut z = master
        .wrapping_add(stream.wrapping_mul(0x9e37_79b9_7f4a_7c15))
        .wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn rng_for(master: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed_for(master, stream))
}

/// Integer-entried matrix with entries drawn uniformly from `[lo, hi]`.
pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, lo: i64, hi: i64) -> Matrix<Rat> {
    Matrix::from_fn(rows, cols, |_, _| Rat::from(rng.random_range(lo..=hi)))
}

/// Rejection-samples an invertible square matrix. Small bounds like
/// `[-3, 3]` give singular draws rarely enough that this terminates fast.
pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> Matrix<Rat> {
    loop {
        let m = random_matrix(rng, n, n, lo, hi);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Valid presentation with `n` vertices, dimensions in `[1, max_dim]` and
/// entries in `[lo, hi]`; resamples the offending map until every twist
/// is invertible.
pub fn random_quiver(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_dim: usize,
    lo: i64,
    hi: i64,
) -> PervQuiver {
    random_quiver_dims(rng, n, 1, max_dim, lo, hi)
}

/// Like [`random_quiver`] but with a lower dimension bound, so zero
/// dimensional vertices (skyscraper-free directions and empty nearby
/// cycles) can be exercised.
pub fn random_quiver_dims(
    rng: &mut ChaCha8Rng,
    n: usize,
    min_dim: usize,
    max_dim: usize,
    lo: i64,
    hi: i64,
) -> PervQuiver {
    let psi = rng.random_range(min_dim..=max_dim);
    let phis: Vec<usize> = (0..n).map(|_| rng.random_range(min_dim..=max_dim)).collect();
    loop {
        let u: Vec<Matrix<Rat>> =
            phis.iter().map(|&p| random_matrix(rng, p, psi, lo, hi)).collect();
        let v: Vec<Matrix<Rat>> =
            phis.iter().map(|&p| random_matrix(rng, psi, p, lo, hi)).collect();
        let q = PervQuiver::new(psi, phis.clone(), u, v);
        if q.is_valid() {
            return q;
        }
    }
}

/// Braid word of the given length on `n` strands, letters uniform among
/// the `2(n - 1)` generators and inverses.
pub fn random_word(rng: &mut ChaCha8Rng, n: usize, len: usize) -> BraidWord {
    assert!(n >= 2, "braid words need at least two strands");
    let letters: Vec<i32> = (0..len)
        .map(|_| {
            let k = rng.random_range(1..=(n as i32 - 1));
            if rng.random_range(0..2) == 0 {
                k
            } else {
                -k
            }
        })
        .collect();
    BraidWord::new(n, letters).expect("letters are drawn in range")
}

/// Valid spherical pair built from a random valid presentation, then
/// conjugated by random invertible maps so the result is not of the
/// special block form the construction produces.
pub fn random_pair(rng: &mut ChaCha8Rng, max_dim: usize, lo: i64, hi: i64) -> SymDiagram {
    let q = random_quiver(rng, 1, max_dim, lo, hi);
    let d = crate::sympair::quiver_to_pair(&q).expect("one marked point");
    let (em, ez, ep) = d.dims();
    let gm = random_invertible(rng, em, lo, hi);
    let gz = random_invertible(rng, ez, lo, hi);
    let gp = random_invertible(rng, ep, lo, hi);
    d.base_change(&gz, &gm, &gp).expect("base change by invertible maps")
}

/// Valid double cube: an external product of `r` random pairs of maps,
/// base-changed at every subset by a random invertible map. Both steps
/// preserve commutation of the faces. Factor maps are resampled to full
/// rank, which keeps the cube nontrivial: every edge is then pinned by
/// its neighbors through the face relations as tightly as the shapes
/// allow.
pub fn random_cube(rng: &mut ChaCha8Rng, r: usize, max_dim: usize, lo: i64, hi: i64) -> DoubleCube {
    let mut pairs: Vec<(Matrix<Rat>, Matrix<Rat>)> = Vec::with_capacity(r);
    for _ in 0..r {
        let rows = rng.random_range(1..=max_dim);
        let cols = rng.random_range(1..=max_dim);
        let up = full_rank_matrix(rng, rows, cols, lo, hi);
        let down = full_rank_matrix(rng, cols, rows, lo, hi);
        pairs.push((up, down));
    }
    let cube = DoubleCube::product_of_pairs(&pairs).expect("shapes match by construction");
    let size = 1u32 << r;
    let changes: BTreeMap<u32, Matrix<Rat>> = (0..size)
        .map(|mask| {
            let subset = elems(mask);
            let d = cube.dim(&subset).expect("subset in range");
            (mask, random_invertible(rng, d, lo, hi))
        })
        .collect();
    let mut out = cube.clone();
    for mask in 0..size {
        let subset = elems(mask);
        for a in 1..=r {
            if mask & (1 << (a - 1)) != 0 {
                continue;
            }
            let upper = mask | (1 << (a - 1));
            let (up, down) = cube.edge_pair(&subset, a).expect("edge exists");
            let new_up = changes[&upper]
                .matmul(&up)
                .and_then(|m| m.matmul(&changes[&mask].inverse().expect("invertible")))
                .expect("shapes agree");
            let new_down = changes[&mask]
                .matmul(&down)
                .and_then(|m| m.matmul(&changes[&upper].inverse().expect("invertible")))
                .expect("shapes agree");
            out = out
                .replace_edge(crate::cube::Family::Gamma, &subset, a, new_up)
                .and_then(|c| c.replace_edge(crate::cube::Family::Delta, &subset, a, new_down))
                .expect("edge keys valid");
        }
    }
    debug_assert!(out.is_valid());
    out
}

fn full_rank_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, lo: i64, hi: i64) -> Matrix<Rat> {
    loop {
        let m = random_matrix(rng, rows, cols, lo, hi);
        if m.rank() == rows.min(cols) {
            return m;
        }
    }
}

fn elems(mask: u32) -> Vec<usize> {
    (0..32).filter(|a| mask & (1 << a) != 0).map(|a| a + 1).collect()
}
