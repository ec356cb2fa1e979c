//! Braid-group action on quiver presentations.
//!
//! The generator at position `i` (1-based, `1 <= i <= n-1`) exchanges the
//! marked points `i` and `i+1` by sliding point `i` around `i+1`:
//!
//! * the data at `i` becomes the old data at `i+1` unchanged,
//! * the old `u_i` picks up the twist of point `i+1` on the right,
//! * the old `v_i` picks up its inverse on the left.
//!
//! Local monodromies transform by the corresponding move on tuples of
//! invertible matrices ([`hurwitz_act`]), and the ordered product of all of
//! them is preserved.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Scalar};
use crate::quiver::PervQuiver;

/// A word in the braid group on `n` strands. Letters are nonzero integers
/// `k` with `|k| <= n-1`; positive for a generator, negative for its
/// inverse. Only free reduction is performed; braid relations are never
/// rewritten.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    n: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<i32>) -> Result<Self> {
        for &k in &letters {
            if k == 0 || k.unsigned_abs() as usize > n.saturating_sub(1) {
                return Err(Error::InvalidInput(format!(
                    "letter {k} is not a generator on {n} strands"
                )));
            }
        }
        Ok(BraidWord { n, letters })
    }

    pub fn empty(n: usize) -> Self {
        BraidWord { n, letters: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Reversed word with every letter negated.
    pub fn inverse(&self) -> Self {
        BraidWord { n: self.n, letters: self.letters.iter().rev().map(|k| -k).collect() }
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ArityMismatch(format!(
                "concatenating words on {} and {} strands",
                self.n, other.n
            )));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { n: self.n, letters })
    }

    /// Free reduction: cancels adjacent `k, -k` pairs until none remain.
    pub fn reduce(&self) -> Self {
        let mut stack: Vec<i32> = Vec::new();
        for &k in &self.letters {
            if stack.last() == Some(&-k) {
                stack.pop();
            } else {
                stack.push(k);
            }
        }
        BraidWord { n: self.n, letters: stack }
    }
}

impl Serialize for BraidWord {
    fn serialize<T: Serializer>(&self, serializer: T) -> std::result::Result<T::Ok, T::Error> {
        self.letters.serialize(serializer)
    }
}

fn check_gen_index<S: Scalar>(q: &PervQuiver<S>, i: usize) -> Result<()> {
    let max = q.n().saturating_sub(1);
    if i == 0 || i > max {
        return Err(Error::IndexOutOfRange { index: i, max });
    }
    Ok(())
}

/// Generator move without validity or range checks; `i` is 1-based and the
/// input quiver must be valid.
fn act_gen_unchecked<S: Scalar>(q: &PervQuiver<S>, i: usize) -> PervQuiver<S> {
    let i0 = i - 1;
    let t = q.twist_psi(i + 1).expect("twist of a valid quiver");
    let t_inv = t.inverse().expect("twist of a valid quiver is invertible");
    let mut u = q.u.clone();
    let mut v = q.v.clone();
    let mut phi_dims = q.phi_dims.clone();
    u[i0] = q.u[i0 + 1].clone();
    v[i0] = q.v[i0 + 1].clone();
    u[i0 + 1] = q.u[i0].matmul(&t).expect("shapes of a valid quiver");
    v[i0 + 1] = t_inv.matmul(&q.v[i0]).expect("shapes of a valid quiver");
    phi_dims.swap(i0, i0 + 1);
    PervQuiver::new(q.psi_dim(), phi_dims, u, v)
}

/// Inverse generator move; solved from the forward move using that the new
/// twist at position `i` equals the old twist at `i+1`.
fn act_gen_inv_unchecked<S: Scalar>(q: &PervQuiver<S>, i: usize) -> PervQuiver<S> {
    let i0 = i - 1;
    let t = q.twist_psi(i).expect("twist of a valid quiver");
    let t_inv = t.inverse().expect("twist of a valid quiver is invertible");
    let mut u = q.u.clone();
    let mut v = q.v.clone();
    let mut phi_dims = q.phi_dims.clone();
    u[i0 + 1] = q.u[i0].clone();
    v[i0 + 1] = q.v[i0].clone();
    u[i0] = q.u[i0 + 1].matmul(&t_inv).expect("shapes of a valid quiver");
    v[i0] = t.matmul(&q.v[i0 + 1]).expect("shapes of a valid quiver");
    phi_dims.swap(i0, i0 + 1);
    PervQuiver::new(q.psi_dim(), phi_dims, u, v)
}

/// Action of the `i`-th braid generator (1-based, `1 <= i <= n-1`).
pub fn act_gen<S: Scalar>(q: &PervQuiver<S>, i: usize) -> Result<PervQuiver<S>> {
    check_gen_index(q, i)?;
    q.require_valid()?;
    Ok(act_gen_unchecked(q, i))
}

/// Action of the inverse of the `i`-th braid generator.
pub fn act_gen_inv<S: Scalar>(q: &PervQuiver<S>, i: usize) -> Result<PervQuiver<S>> {
    check_gen_index(q, i)?;
    q.require_valid()?;
    Ok(act_gen_inv_unchecked(q, i))
}

/// Action of a whole word, letters applied left to right. Validates the
/// input once; every intermediate quiver stays valid by construction (and
/// is re-checked in debug builds).
pub fn act<S: Scalar>(q: &PervQuiver<S>, w: &BraidWord) -> Result<PervQuiver<S>> {
    if w.n() != q.n() {
        return Err(Error::ArityMismatch(format!(
            "word on {} strands applied to a quiver with {} marked points",
            w.n(),
            q.n()
        )));
    }
    q.require_valid()?;
    let mut cur = q.clone();
    for &k in w.letters() {
        let i = k.unsigned_abs() as usize;
        cur = if k > 0 { act_gen_unchecked(&cur, i) } else { act_gen_inv_unchecked(&cur, i) };
        debug_assert!(cur.is_valid(), "generator move broke validity");
    }
    Ok(cur)
}

/// The `v`-components after the `i`-th generator, computed directly from
/// the monodromy data: position `i` takes the old `v_{i+1}`, position `i+1`
/// takes the old `v_i` twisted by the inverse monodromy of point `i+1`.
/// Always equals the `v` list of [`act_gen`].
pub fn shadow_act_gen<S: Scalar>(q: &PervQuiver<S>, i: usize) -> Result<Vec<Matrix<S>>> {
    check_gen_index(q, i)?;
    q.require_valid()?;
    let i0 = i - 1;
    let t_inv = q.twist_psi(i + 1)?.inverse()?;
    let mut s = q.v.clone();
    s[i0] = q.v[i0 + 1].clone();
    s[i0 + 1] = t_inv.matmul(&q.v[i0])?;
    Ok(s)
}

/// The local twists `I - v_i u_i` in marked-point order.
pub fn local_monodromies<S: Scalar>(q: &PervQuiver<S>) -> Result<Vec<Matrix<S>>> {
    (1..=q.n()).map(|i| q.twist_psi(i)).collect()
}

/// Ordered product `T_1 T_2 ... T_n` of the local twists; the identity on
/// the nearby-cycles space when `n = 0`. Invariant under the braid action.
pub fn total_monodromy<S: Scalar>(q: &PervQuiver<S>) -> Result<Matrix<S>> {
    let mut acc = Matrix::identity(q.psi_dim());
    for i in 1..=q.n() {
        acc = acc.matmul(&q.twist_psi(i)?)?;
    }
    Ok(acc)
}

/// Braid action on tuples of invertible matrices: the generator `i` sends
/// `(.., T_i, T_{i+1}, ..)` to `(.., T_{i+1}, T_{i+1}^{-1} T_i T_{i+1}, ..)`
/// and its inverse sends it to `(.., T_i T_{i+1} T_i^{-1}, T_i, ..)`. The
/// ordered product of the tuple never changes.
pub fn hurwitz_act<S: Scalar>(ts: &[Matrix<S>], w: &BraidWord) -> Result<Vec<Matrix<S>>> {
    if w.n() != ts.len() {
        return Err(Error::ArityMismatch(format!(
            "word on {} strands applied to a tuple of {} matrices",
            w.n(),
            ts.len()
        )));
    }
    for t in ts {
        if !t.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "tuple entries must be square, found {}x{}",
                t.rows(),
                t.cols()
            )));
        }
        if !t.is_invertible() {
            return Err(Error::Singular);
        }
    }
    let mut ts = ts.to_vec();
    for &k in w.letters() {
        let i0 = k.unsigned_abs() as usize - 1;
        if k > 0 {
            let a = ts[i0].clone();
            let b = ts[i0 + 1].clone();
            ts[i0] = b.clone();
            ts[i0 + 1] = b.inverse()?.matmul(&a)?.matmul(&b)?;
        } else {
            let a = ts[i0].clone();
            let b = ts[i0 + 1].clone();
            ts[i0] = a.matmul(&b)?.matmul(&a.inverse()?)?;
            ts[i0 + 1] = a;
        }
    }
    Ok(ts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{PervQuiver, RatMatrix};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_int_rows(rows)
    }

    fn two_point_example() -> PervQuiver {
        PervQuiver::from_maps(1, vec![m(&[&[1]]), m(&[&[3]])], vec![m(&[&[2]]), m(&[&[1]])])
    }

    #[test]
    fn generator_on_the_two_point_example() {
        // Worked by hand: T_2 = [-2], so the old u_1 = [1] becomes
        // [1]*[-2] = [-2] at position 2 and v_1 = [2] becomes
        // [-1/2]*[2] = [-1].
        let q = two_point_example();
        let moved = act_gen(&q, 1).unwrap();
        assert_eq!(moved.u(1).unwrap(), &m(&[&[3]]));
        assert_eq!(moved.v(1).unwrap(), &m(&[&[1]]));
        assert_eq!(moved.u(2).unwrap(), &m(&[&[-2]]));
        assert_eq!(moved.v(2).unwrap(), &m(&[&[-1]]));
        assert!(moved.is_valid());
        // Twists move by the tuple rule: (T_1, T_2) -> (T_2, T_2^-1 T_1 T_2).
        assert_eq!(moved.twist_psi(1).unwrap(), m(&[&[-2]]));
        assert_eq!(moved.twist_psi(2).unwrap(), m(&[&[-1]]));
    }

    #[test]
    fn generator_round_trips() {
        let q = two_point_example();
        assert_eq!(act_gen_inv(&act_gen(&q, 1).unwrap(), 1).unwrap(), q);
        assert_eq!(act_gen(&act_gen_inv(&q, 1).unwrap(), 1).unwrap(), q);
    }

    #[test]
    fn generator_index_range() {
        let q = two_point_example();
        assert!(matches!(act_gen(&q, 0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(act_gen(&q, 2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn act_requires_matching_strand_count() {
        let q = two_point_example();
        let w = BraidWord::new(3, vec![2]).unwrap();
        assert!(matches!(act(&q, &w), Err(Error::ArityMismatch(_))));
    }

    #[test]
    fn act_rejects_invalid_quiver() {
        let q = PervQuiver::from_maps(
            1,
            vec![m(&[&[1]]), m(&[&[1]])],
            vec![m(&[&[1]]), m(&[&[2]])],
        );
        assert!(matches!(act_gen(&q, 1), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn braid_relation_on_a_three_point_quiver() {
        let q = PervQuiver::from_maps(
            2,
            vec![m(&[&[1, 0]]), m(&[&[0, 1], &[1, 1]]), m(&[&[2, -1]])],
            vec![m(&[&[-1], &[1]]), m(&[&[1, 0], &[0, -1]]), m(&[&[1], &[3]])],
        );
        assert!(q.is_valid());
        let left = act(&q, &BraidWord::new(3, vec![1, 2, 1]).unwrap()).unwrap();
        let right = act(&q, &BraidWord::new(3, vec![2, 1, 2]).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn word_reduction_and_inverse() {
        let w = BraidWord::new(3, vec![1, 2, -2, -1, 1]).unwrap();
        assert_eq!(w.reduce().letters(), &[1]);
        assert_eq!(w.inverse().letters(), &[-1, 1, 2, -2, -1]);
        let id = w.concat(&w.inverse()).unwrap().reduce();
        assert!(id.is_empty());
        assert!(BraidWord::new(2, vec![0]).is_err());
        assert!(BraidWord::new(2, vec![2]).is_err());
        assert!(BraidWord::new(1, vec![1]).is_err());
        assert!(BraidWord::new(0, vec![]).is_ok());
    }

    #[test]
    fn shadow_matches_full_action() {
        let q = two_point_example();
        let shadow = shadow_act_gen(&q, 1).unwrap();
        let full = act_gen(&q, 1).unwrap();
        assert_eq!(shadow, vec![full.v(1).unwrap().clone(), full.v(2).unwrap().clone()]);
    }

    #[test]
    fn monodromy_bookkeeping() {
        let q = two_point_example();
        assert_eq!(local_monodromies(&q).unwrap(), vec![m(&[&[-1]]), m(&[&[-2]])]);
        assert_eq!(total_monodromy(&q).unwrap(), m(&[&[2]]));

        let empty = PervQuiver::from_maps(3, vec![], vec![]);
        assert_eq!(total_monodromy(&empty).unwrap(), RatMatrix::identity(3));
    }

    #[test]
    fn hurwitz_moves_and_conservation() {
        let ts = vec![m(&[&[-1]]), m(&[&[-2]])];
        let w = BraidWord::new(2, vec![1]).unwrap();
        let moved = hurwitz_act(&ts, &w).unwrap();
        assert_eq!(moved, vec![m(&[&[-2]]), m(&[&[-1]])]);
        // Round trip through the inverse letter.
        assert_eq!(hurwitz_act(&moved, &w.inverse()).unwrap(), ts);

        // Non-commuting 2x2 example: the product is conserved exactly.
        let ts = vec![m(&[&[1, 1], &[0, 1]]), m(&[&[1, 0], &[2, 1]])];
        let moved = hurwitz_act(&ts, &w).unwrap();
        assert_eq!(
            ts[0].matmul(&ts[1]).unwrap(),
            moved[0].matmul(&moved[1]).unwrap()
        );

        let singular = vec![m(&[&[0]]), m(&[&[1]])];
        assert_eq!(hurwitz_act(&singular, &w), Err(Error::Singular));
    }

    #[test]
    fn hurwitz_covariance_with_the_quiver_action() {
        let q = two_point_example();
        let w = BraidWord::new(2, vec![1, 1, -1, 1]).unwrap();
        let lhs = local_monodromies(&act(&q, &w).unwrap()).unwrap();
        let rhs = hurwitz_act(&local_monodromies(&q).unwrap(), &w).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(
            total_monodromy(&act(&q, &w).unwrap()).unwrap(),
            total_monodromy(&q).unwrap()
        );
    }
}
