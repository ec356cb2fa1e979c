//! End-to-end checks of the documented guarantees, one test per
//! guarantee. Every test prints a single `criterion N ...: pass` line
//! (visible with `--nocapture`); a failure panics with the offending
//! trials. All trial counts and seeds are pinned, so a failure is
//! replayable bit for bit.

use std::time::{Duration, Instant};

use rand::RngExt;

use pervdisk::braid::BraidWord;
use pervdisk::cube::{DoubleCube, Family};
use pervdisk::plcalc::{pl_check, pl_triangle_k0};
use pervdisk::quiver::PervQuiver;
use pervdisk::random::{random_cube, random_matrix, rng_for, seed_for};
use pervdisk::suite::{run_suite, SuiteReport};
use pervdisk::RatMatrix;

const MASTER_SEED: u64 = 20240901;

fn run(name: &str, trials: usize) -> SuiteReport {
    run_suite(name, MASTER_SEED, trials).expect("suite name is known")
}

fn conclude(criterion: &str, report: &SuiteReport) {
    assert!(
        report.passed(),
        "criterion {criterion}: fail\n{}",
        report.failures.join("\n")
    );
    println!(
        "criterion {criterion}: pass ({} trials, {} failures)",
        report.trials,
        report.failures.len()
    );
}

#[test]
fn criterion_1_braid_relations() {
    let t0 = Instant::now();
    let report = run("braid-relations", 200);
    let elapsed = t0.elapsed();
    assert!(
        elapsed < Duration::from_secs(10),
        "braid relation sweep took {elapsed:?}, budget is 10 s"
    );
    conclude("1 (braid and commutation relations)", &report);
}

#[test]
fn criterion_2_group_action_laws() {
    conclude("2 (action respects composition and inverses)", &run("action-laws", 200));
}

#[test]
fn criterion_3_hurwitz_covariance_and_conservation() {
    conclude("3 (shadow covariance, conserved monodromy)", &run("hurwitz-covariance", 200));
}

#[test]
fn criterion_4_wall_crossing_identity() {
    // The worked scalar instance on three points: transitions 5, -10, 15.
    let q = PervQuiver::from_maps(
        1,
        vec![
            RatMatrix::from_int_rows(&[&[2]]),
            RatMatrix::from_int_rows(&[&[3]]),
            RatMatrix::from_int_rows(&[&[5]]),
        ],
        vec![
            RatMatrix::from_int_rows(&[&[1]]),
            RatMatrix::from_int_rows(&[&[1]]),
            RatMatrix::from_int_rows(&[&[1]]),
        ],
    );
    let tri = pl_triangle_k0(&q, 1, 2, 3, &BraidWord::empty(3)).unwrap();
    assert_eq!(tri.gamma_prime, RatMatrix::from_int_rows(&[&[5]]));
    assert_eq!(tri.gamma, RatMatrix::from_int_rows(&[&[-10]]));
    assert_eq!(tri.composite, RatMatrix::from_int_rows(&[&[15]]));
    assert!(tri.additivity_holds());
    assert!(pl_check(&q, 1, 2, 3, &BraidWord::empty(3)).unwrap());

    conclude("4 (wall-crossing identity, with 5 = -10 + 15)", &run("pl-identity", 500));
}

#[test]
fn criterion_5_inverse_exchange_formula() {
    conclude("5 (I - uv vs I - vu invertibility exchange)", &run("inverse-exchange", 500));
}

#[test]
fn criterion_6_spherical_pair_layer() {
    conclude("6 (pair round trip and twist identities)", &run("pair-roundtrip", 200));
}

#[test]
fn criterion_7_duality() {
    conclude("7a (presentation duality)", &run("quiver-duality", 200));
    conclude("7b (cube duality)", &run("cube-duality", 100));
}

fn elems(mask: u32) -> Vec<usize> {
    (0..32).filter(|a| mask & (1 << a) != 0).map(|a| a + 1).collect()
}

fn family_edge(c: &DoubleCube, family: Family, mask: u32, a: usize) -> RatMatrix {
    let (up, down) = c.edge_pair(&elems(mask), a).expect("edge exists");
    match family {
        Family::Gamma => up,
        Family::Delta => down,
    }
}

/// One square face of one family, recomputed by explicit path
/// composition without going through the validator.
fn face_commutes(c: &DoubleCube, family: Family, base: u32, x: usize, y: usize) -> bool {
    let with_x = base | (1 << (x - 1));
    let with_y = base | (1 << (y - 1));
    let e = |mask, idx| family_edge(c, family, mask, idx);
    match family {
        Family::Gamma => {
            e(with_x, y).matmul(&e(base, x)).unwrap() == e(with_y, x).matmul(&e(base, y)).unwrap()
        }
        Family::Delta => {
            e(base, x).matmul(&e(with_x, y)).unwrap() == e(base, y).matmul(&e(with_y, x)).unwrap()
        }
    }
}

#[test]
fn criterion_8_cube_mutation_detection() {
    let trials = 200usize;
    let mut detected = 0usize;
    let mut benign = 0usize;
    for t in 0..trials {
        let mut rng = rng_for(seed_for(MASTER_SEED, 0xc0be), t as u64);
        let r = rng.random_range(2..=3);
        let c = random_cube(&mut rng, r, 2, -2, 2);
        assert!(c.validate().is_empty(), "trial {t}: valid product cube reports violations");

        let keys: Vec<(u32, usize)> = (0..(1u32 << r))
            .flat_map(|mask| {
                (1..=r).filter(move |a| mask & (1 << (a - 1)) == 0).map(move |a| (mask, a))
            })
            .collect();
        let (mask, a) = keys[rng.random_range(0..keys.len())];
        let family = if rng.random_range(0..2) == 0 { Family::Gamma } else { Family::Delta };
        let old = family_edge(&c, family, mask, a);
        let replacement = loop {
            let m = random_matrix(&mut rng, old.rows(), old.cols(), -5, 5);
            if m != old {
                break m;
            }
        };
        let mutated = c.replace_edge(family, &elems(mask), a, replacement).unwrap();

        if !mutated.validate().is_empty() {
            detected += 1;
            continue;
        }
        // Undetected mutation: it must genuinely preserve every adjacent
        // face, otherwise the validator has a hole.
        benign += 1;
        for b in 1..=r {
            if b == a {
                continue;
            }
            let base = if mask & (1 << (b - 1)) != 0 { mask & !(1 << (b - 1)) } else { mask };
            assert!(
                face_commutes(&mutated, family, base, a.min(b), a.max(b)),
                "trial {t}: validator missed a broken face over {base:#b} with {{{a},{b}}}"
            );
        }
    }
    assert_eq!(detected + benign, trials);
    assert!(
        detected * 100 >= trials * 95,
        "criterion 8: fail (only {detected}/{trials} mutations detected)"
    );
    println!(
        "criterion 8 (cube mutation detection): pass ({detected}/{trials} detected, {benign} verified benign)"
    );
}
