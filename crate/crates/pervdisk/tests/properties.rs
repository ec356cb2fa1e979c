//! Structural properties under proptest-generated inputs, complementing
//! the seeded suites: these shrink on failure.

use proptest::collection::vec;
use proptest::prelude::*;

use pervdisk::braid::{act, BraidWord};
use pervdisk::quiver::PervQuiver;
use pervdisk::{Rat, RatMatrix};

fn rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=12).prop_map(|(p, q)| Rat::new(p, q))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RatMatrix> {
    vec(rat(), rows * cols)
        .prop_map(move |entries| RatMatrix::new(rows, cols, entries).unwrap())
}

fn shaped_pair() -> impl Strategy<Value = (RatMatrix, RatMatrix, RatMatrix)> {
    (0usize..=3, 0usize..=3, 0usize..=3).prop_flat_map(|(m, n, k)| {
        (matrix(m, n), matrix(n, k), matrix(n, k))
    })
}

proptest! {
    #[test]
    fn rat_field_laws(a in rat(), b in rat(), c in rat()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!(
            a.clone() * (b.clone() + c.clone()),
            a.clone() * b.clone() + a.clone() * c.clone()
        );
        prop_assert_eq!(a.clone() - a.clone(), Rat::from(0));
        if b != Rat::from(0) {
            prop_assert_eq!(b.clone() / b.clone(), Rat::from(1));
        }
    }

    #[test]
    fn rat_display_parse_round_trip(a in rat()) {
        prop_assert_eq!(a.to_string().parse::<Rat>().unwrap(), a);
    }

    #[test]
    fn product_transposes_contravariantly((a, b, c) in shaped_pair()) {
        let ab = a.matmul(&b).unwrap();
        prop_assert_eq!(ab.transpose(), b.transpose().matmul(&a.transpose()).unwrap());
        // Distributivity threaded through the same shapes.
        let sum = b.checked_add(&c).unwrap();
        prop_assert_eq!(
            a.matmul(&sum).unwrap(),
            a.matmul(&b).unwrap().checked_add(&a.matmul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn kernel_and_rank_are_consistent(m in (0usize..=3, 0usize..=4).prop_flat_map(|(r, c)| matrix(r, c))) {
        let ker = m.kernel_basis();
        prop_assert!(m.matmul(&ker).unwrap().is_zero());
        prop_assert_eq!(m.rank() + ker.cols(), m.cols());
        // The canonical kernel only depends on the row space.
        prop_assert_eq!(m.rref().0.kernel_basis(), ker);
    }

    #[test]
    fn word_reduction_preserves_the_action(letters in vec(-2i32..=2, 0..8)) {
        let letters: Vec<i32> = letters.into_iter().filter(|&k| k != 0).collect();
        let w = BraidWord::new(3, letters).unwrap();
        let q = PervQuiver::from_maps(
            1,
            vec![RatMatrix::from_int_rows(&[&[2]]), RatMatrix::from_int_rows(&[&[3]]),
                 RatMatrix::from_int_rows(&[&[5]])],
            vec![RatMatrix::from_int_rows(&[&[1]]), RatMatrix::from_int_rows(&[&[1]]),
                 RatMatrix::from_int_rows(&[&[1]])],
        );
        let reduced = w.reduce();
        prop_assert!(reduced.len() <= w.len());
        prop_assert_eq!(act(&q, &reduced).unwrap(), act(&q, &w).unwrap());
    }
}
