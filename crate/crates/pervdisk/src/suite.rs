//! Randomized property suites, one per module-level invariant family.
//! Every suite is a pure function of `(master seed, trial count)`: each
//! trial reseeds its own generator from the master seed, a fixed per-suite
//! stream tag and the trial index, so runs are reproducible, reported
//! failures can be replayed in isolation, and trial order does not matter.

use num_traits::Zero;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::braid::{act, hurwitz_act, local_monodromies, total_monodromy, BraidWord};
use crate::cube::{DoubleCube, Family};
use crate::exactlin::{Matrix, Rat};
use crate::json::to_canonical_string;
use crate::plcalc::{pl_check, pl_triangle_k0};
use crate::quiver::{hom_space, is_isomorphic, IsoVerdict, PervQuiver, QuiverMorphism};
use crate::random::{
    random_cube, random_invertible, random_matrix, random_pair, random_quiver,
    random_quiver_dims, random_word, seed_for,
};
use crate::sympair::{pair_to_quiver, quiver_to_pair, twist_identities_check};

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub trials: usize,
    pub passes: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.passes == self.trials
    }
}

type Trial = fn(&mut ChaCha8Rng) -> Result<(), String>;

/// Stable list of `(name, stream tag, trial)`. Stream tags are fixed
/// forever so reordering or inserting suites never changes existing
/// trial streams.
const SUITES: &[(&str, u64, Trial)] = &[
    ("exactlin-algebra", 0, trial_exactlin),
    ("braid-relations", 1, trial_braid_relations),
    ("action-laws", 2, trial_action_laws),
    ("hurwitz-covariance", 3, trial_hurwitz),
    ("pl-identity", 4, trial_pl_identity),
    ("inverse-exchange", 5, trial_inverse_exchange),
    ("pair-roundtrip", 6, trial_pair_roundtrip),
    ("quiver-duality", 7, trial_quiver_duality),
    ("cube-duality", 8, trial_cube_duality),
    ("cube-mutation", 9, trial_cube_mutation),
    ("hom-and-iso", 10, trial_hom_and_iso),
    ("json-roundtrip", 11, trial_json_roundtrip),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(name, _, _)| *name).collect()
}

/// Runs one suite by name.
pub fn run_suite(name: &str, master_seed: u64, trials: usize) -> Option<SuiteReport> {
    let &(name, stream, trial) = SUITES.iter().find(|(n, _, _)| *n == name)?;
    let mut failures = Vec::new();
    let mut passes = 0usize;
    for t in 0..trials {
        let trial_seed = seed_for(seed_for(master_seed, stream), t as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
        match trial(&mut rng) {
            Ok(()) => passes += 1,
            Err(msg) => failures.push(format!("trial {t} (seed {trial_seed:#018x}): {msg}")),
        }
    }
    Some(SuiteReport { name, trials, passes, failures })
}

/// Runs every suite with the same trial count.
pub fn run_all(master_seed: u64, trials: usize) -> Vec<SuiteReport> {
    SUITES
        .iter()
        .map(|(name, _, _)| run_suite(name, master_seed, trials).expect("known name"))
        .collect()
}

fn check(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn trial_exactlin(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = rng.random_range(0..=4);
    let a = random_matrix(rng, n, n, -3, 3);
    let b = random_matrix(rng, n, n, -3, 3);
    let ab = a.matmul(&b).map_err(|e| e.to_string())?;
    let (det_a, det_b) = (a.det().unwrap(), b.det().unwrap());
    check(ab.det().unwrap() == det_a.clone() * det_b, "det is not multiplicative")?;
    check(a.is_invertible() == !det_a.is_zero(), "invertibility disagrees with det")?;
    if a.is_invertible() {
        let inv = a.inverse().map_err(|e| e.to_string())?;
        check(a.matmul(&inv).unwrap().is_identity(), "A * inv(A) is not the identity")?;
    }
    let (r1, piv) = a.rref();
    check(r1.rref().0 == r1, "rref is not idempotent")?;
    let ker = a.kernel_basis();
    check(piv.len() + ker.cols() == n, "rank plus nullity misses the column count")?;
    check(
        a.matmul(&ker).unwrap().is_zero(),
        "kernel basis columns are not annihilated",
    )?;
    if n > 0 {
        let g = random_invertible(rng, n, -3, 3);
        let ga = g.matmul(&a).unwrap();
        check(
            ga.kernel_basis() == ker,
            "kernel basis is not canonical under row operations",
        )?;
    }
    Ok(())
}

fn trial_braid_relations(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = rng.random_range(3..=5);
    let q = random_quiver(rng, n, 4, -3, 3);
    let word = |letters: Vec<i32>| BraidWord::new(n, letters).unwrap();
    for i in 1..=(n as i32 - 2) {
        let lhs = act(&q, &word(vec![i, i + 1, i])).map_err(|e| e.to_string())?;
        let rhs = act(&q, &word(vec![i + 1, i, i + 1])).map_err(|e| e.to_string())?;
        check(lhs == rhs, &format!("braid relation fails at i={i}"))?;
    }
    for i in 1..=(n as i32 - 1) {
        for j in (i + 2)..=(n as i32 - 1) {
            let lhs = act(&q, &word(vec![i, j])).map_err(|e| e.to_string())?;
            let rhs = act(&q, &word(vec![j, i])).map_err(|e| e.to_string())?;
            check(lhs == rhs, &format!("distant generators {i}, {j} do not commute"))?;
        }
    }
    Ok(())
}

fn trial_action_laws(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = rng.random_range(2..=4);
    let q = random_quiver(rng, n, 3, -3, 3);
    let len1 = rng.random_range(0..=8);
    let len2 = rng.random_range(0..=8);
    let w1 = random_word(rng, n, len1);
    let w2 = random_word(rng, n, len2);
    let composed = act(&q, &w1.concat(&w2).unwrap()).map_err(|e| e.to_string())?;
    let staged = act(&act(&q, &w1).unwrap(), &w2).map_err(|e| e.to_string())?;
    check(composed == staged, "action does not respect concatenation")?;
    let cancel = act(&q, &w1.concat(&w1.inverse()).unwrap()).map_err(|e| e.to_string())?;
    check(cancel == q, "word times its inverse does not act trivially")?;
    check(
        act(&q, &BraidWord::empty(n)).unwrap() == q,
        "empty word does not act trivially",
    )
}

fn trial_hurwitz(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = rng.random_range(2..=4);
    let q = random_quiver(rng, n, 3, -3, 3);
    let len = rng.random_range(0..=6);
    let w = random_word(rng, n, len);
    let moved = act(&q, &w).map_err(|e| e.to_string())?;
    let direct = local_monodromies(&moved).map_err(|e| e.to_string())?;
    let shadows = hurwitz_act(&local_monodromies(&q).unwrap(), &w).map_err(|e| e.to_string())?;
    check(direct == shadows, "local monodromies do not follow the shadow action")?;
    check(
        total_monodromy(&moved).unwrap() == total_monodromy(&q).unwrap(),
        "total monodromy is not conserved",
    )?;
    check(moved.psi_dim() == q.psi_dim(), "nearby-cycles dimension changed")?;
    let mut before: Vec<usize> = q.phi_dims().to_vec();
    let mut after: Vec<usize> = moved.phi_dims().to_vec();
    before.sort_unstable();
    after.sort_unstable();
    check(before == after, "vanishing-cycles dimension multiset changed")
}

/// Rebuilds `q` with the vanishing-cycles space at `pos` (1-based)
/// squashed to zero. The twist there becomes the identity, so validity
/// is preserved.
fn squash_phi(q: &PervQuiver, pos: usize) -> PervQuiver {
    let psi = q.psi_dim();
    let mut dims = q.phi_dims().to_vec();
    let mut u: Vec<Matrix<Rat>> = (1..=q.n()).map(|i| q.u(i).unwrap().clone()).collect();
    let mut v: Vec<Matrix<Rat>> = (1..=q.n()).map(|i| q.v(i).unwrap().clone()).collect();
    dims[pos - 1] = 0;
    u[pos - 1] = Matrix::zeros(0, psi);
    v[pos - 1] = Matrix::zeros(psi, 0);
    PervQuiver::new(psi, dims, u, v)
}

fn trial_pl_identity(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = rng.random_range(3..=4);
    let mut q = random_quiver_dims(rng, n, 0, 3, -3, 3);
    let i = rng.random_range(1..=n);
    let j = loop {
        let j = rng.random_range(1..=n);
        if j != i {
            break j;
        }
    };
    let k = loop {
        let k = rng.random_range(1..=n);
        if k != i && k != j {
            break k;
        }
    };
    // A quarter of the trials squash one of the three special roles to
    // dimension zero, so every endpoint and detour degeneracy is covered.
    match rng.random_range(0..4) {
        1 => q = squash_phi(&q, i),
        2 => q = squash_phi(&q, j),
        3 => q = squash_phi(&q, k),
        _ => {}
    }
    let len = rng.random_range(0..=4);
    let coords = random_word(rng, n, len);
    let holds = pl_check(&q, i, j, k, &coords).map_err(|e| e.to_string())?;
    check(holds, &format!("wall-crossing identity fails at i={i} j={j} k={k}"))?;
    let tri = pl_triangle_k0(&q, i, j, k, &coords).map_err(|e| e.to_string())?;
    check(tri.additivity_holds(), "triangle additivity disagrees with the direct check")
}

fn trial_inverse_exchange(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let p = rng.random_range(0..=4);
    let q = rng.random_range(0..=4);
    let u = random_matrix(rng, p, q, -3, 3);
    let v = random_matrix(rng, q, p, -3, 3);
    let i_uv = Matrix::identity(p).checked_sub(&u.matmul(&v).unwrap()).unwrap();
    let i_vu = Matrix::identity(q).checked_sub(&v.matmul(&u).unwrap()).unwrap();
    check(
        i_uv.is_invertible() == i_vu.is_invertible(),
        "I - uv and I - vu disagree about invertibility",
    )?;
    if i_vu.is_invertible() {
        let middle = u.matmul(&i_vu.inverse().unwrap()).unwrap().matmul(&v).unwrap();
        let candidate = Matrix::identity(p).checked_add(&middle).unwrap();
        check(
            i_uv.matmul(&candidate).unwrap().is_identity(),
            "exchange formula does not invert I - uv",
        )?;
    }
    Ok(())
}

fn trial_pair_roundtrip(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let q = random_quiver(rng, 1, 3, -3, 3);
    let d = quiver_to_pair(&q).map_err(|e| e.to_string())?;
    check(d.validate().is_empty(), "constructed diagram fails validation")?;
    let back = pair_to_quiver(&d).map_err(|e| e.to_string())?;
    check(back == q, "diagram round trip is not the exact identity")?;
    let (em, ez, ep) = d.dims();
    let moved = d
        .base_change(
            &random_invertible(rng, ez, -2, 2),
            &random_invertible(rng, em, -2, 2),
            &random_invertible(rng, ep, -2, 2),
        )
        .map_err(|e| e.to_string())?;
    check(moved.validate().is_empty(), "base change broke validity")?;
    check(
        twist_identities_check(&moved).map_err(|e| e.to_string())?,
        "twist identities fail after base change",
    )
}

fn trial_quiver_duality(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = rng.random_range(1..=4);
    let q = random_quiver_dims(rng, n, 0, 4, -3, 3);
    let d = q.verdier_dual();
    check(d.is_valid(), "dual of a valid presentation is invalid")?;
    check(d.verdier_dual() == q, "duality is not an involution")?;
    for i in 1..=n {
        check(
            d.twist_psi(i).unwrap() == q.twist_psi(i).unwrap().transpose(),
            &format!("nearby twist at {i} is not transposed by duality"),
        )?;
        check(
            d.twist_phi(i).unwrap() == q.twist_phi(i).unwrap().transpose(),
            &format!("vanishing twist at {i} is not transposed by duality"),
        )?;
    }
    Ok(())
}

fn trial_cube_duality(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let r = rng.random_range(1..=3);
    let c = random_cube(rng, r, 2, -2, 2);
    check(c.is_valid(), "random product cube is invalid")?;
    let d = c.dual_cube();
    check(d.is_valid(), "dual cube lost face commutation")?;
    check(d.dual_cube() == c, "cube duality is not an involution")
}

fn elems(mask: u32) -> Vec<usize> {
    (0..32).filter(|a| mask & (1 << a) != 0).map(|a| a + 1).collect()
}

/// Checks one square face of one family by explicit path composition,
/// independently of the validator.
fn face_commutes(c: &DoubleCube, family: Family, base: u32, x: usize, y: usize) -> bool {
    let edge = |mask: u32, a: usize| {
        let (up, down) = c.edge_pair(&elems(mask), a).expect("edge exists");
        match family {
            Family::Gamma => up,
            Family::Delta => down,
        }
    };
    let with_x = base | (1 << (x - 1));
    let with_y = base | (1 << (y - 1));
    match family {
        Family::Gamma => {
            edge(with_x, y).matmul(&edge(base, x)).unwrap()
                == edge(with_y, x).matmul(&edge(base, y)).unwrap()
        }
        Family::Delta => {
            edge(base, x).matmul(&edge(with_x, y)).unwrap()
                == edge(base, y).matmul(&edge(with_y, x)).unwrap()
        }
    }
}

/// All faces of `family` containing the edge `(mask, a)`, as
/// `(base, x, y)` triples. There are exactly `r - 1` of them.
fn adjacent_faces(r: usize, mask: u32, a: usize) -> Vec<(u32, usize, usize)> {
    let mut out = Vec::new();
    for b in 1..=r {
        if b == a {
            continue;
        }
        let base = if mask & (1 << (b - 1)) != 0 { mask & !(1 << (b - 1)) } else { mask };
        out.push((base, a.min(b), a.max(b)));
    }
    out
}

fn trial_cube_mutation(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let r = rng.random_range(2..=3);
    let c = random_cube(rng, r, 2, -2, 2);
    check(c.validate().is_empty(), "valid product cube reports violations")?;

    let keys: Vec<(u32, usize)> = (0..(1u32 << r))
        .flat_map(|mask| {
            (1..=r).filter(move |a| mask & (1 << (a - 1)) == 0).map(move |a| (mask, a))
        })
        .collect();
    let (mask, a) = keys[rng.random_range(0..keys.len())];
    let family = if rng.random_range(0..2) == 0 { Family::Gamma } else { Family::Delta };
    let (up, down) = c.edge_pair(&elems(mask), a).unwrap();
    let old = match family {
        Family::Gamma => up,
        Family::Delta => down,
    };
    let replacement = loop {
        let m = random_matrix(rng, old.rows(), old.cols(), -2, 2);
        if m != old {
            break m;
        }
    };
    let mutated = c.replace_edge(family, &elems(mask), a, replacement).unwrap();

    let detected = !mutated.validate().is_empty();
    let really_broken = adjacent_faces(r, mask, a)
        .into_iter()
        .any(|(base, x, y)| !face_commutes(&mutated, family, base, x, y));
    check(
        detected == really_broken,
        "validator disagrees with the direct face recomputation",
    )
}

fn trial_hom_and_iso(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = rng.random_range(1..=2);
    let q = random_quiver(rng, n, 2, -2, 2);
    let g_psi = random_invertible(rng, q.psi_dim(), -2, 2);
    let g_phis: Vec<Matrix<Rat>> =
        q.phi_dims().iter().map(|&d| random_invertible(rng, d, -2, 2)).collect();
    let q2 = q.conjugate(&g_psi, &g_phis).map_err(|e| e.to_string())?;

    for f in hom_space(&q, &q2).map_err(|e| e.to_string())? {
        check(f.commutes(), "hom-space basis morphism does not commute")?;
    }
    check(
        QuiverMorphism::identity(&q).is_isomorphism(),
        "identity morphism is not an isomorphism",
    )?;
    check(!hom_space(&q, &q).unwrap().is_empty(), "endomorphisms are missing the identity")?;

    let verdict = is_isomorphic(&q, &q2, 8, rng.random_range(0..u64::MAX))
        .map_err(|e| e.to_string())?;
    match verdict {
        IsoVerdict::Yes(f) => check(f.is_isomorphism(), "yes-certificate is not an isomorphism"),
        IsoVerdict::Unknown => Ok(()),
        IsoVerdict::No(reason) => {
            Err(format!("conjugate presentations reported non-isomorphic: {reason}"))
        }
    }
}

fn trial_json_roundtrip(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = rng.random_range(1..=3);
    let q = random_quiver(rng, n, 3, -3, 3);
    let js = to_canonical_string(&q).map_err(|e| e.to_string())?;
    let back: PervQuiver = serde_json::from_str(&js).map_err(|e| e.to_string())?;
    check(back == q, "presentation does not survive the JSON round trip")?;
    check(
        to_canonical_string(&back).unwrap() == js,
        "re-serialized presentation differs byte-wise",
    )?;

    let d = random_pair(rng, 2, -2, 2);
    let js = to_canonical_string(&d).map_err(|e| e.to_string())?;
    let back: crate::sympair::SymDiagram = serde_json::from_str(&js).map_err(|e| e.to_string())?;
    check(back == d, "diagram does not survive the JSON round trip")?;

    let r = rng.random_range(1..=2);
    let c = random_cube(rng, r, 2, -2, 2);
    let js = to_canonical_string(&c).map_err(|e| e.to_string())?;
    let back: DoubleCube = serde_json::from_str(&js).map_err(|e| e.to_string())?;
    check(back == c, "cube does not survive the JSON round trip")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_a_smoke_run() {
        for report in run_all(2024, 8) {
            assert!(report.passed(), "{}: {:?}", report.name, report.failures);
            assert_eq!(report.trials, 8);
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_all(7, 5);
        let b = run_all(7, 5);
        let to_js = |r: &Vec<SuiteReport>| serde_json::to_string(r).unwrap();
        assert_eq!(to_js(&a), to_js(&b));
    }

    #[test]
    fn unknown_suite_is_none() {
        assert!(run_suite("no-such-suite", 0, 1).is_none());
        assert_eq!(suite_names().len(), SUITES.len());
    }

    #[test]
    fn passed_requires_a_clean_run() {
        let report = SuiteReport { name: "demo", trials: 3, passes: 2, failures: vec!["x".into()] };
        assert!(!report.passed());
    }
}
