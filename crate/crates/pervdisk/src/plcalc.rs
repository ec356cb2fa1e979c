//! Transition matrices between vanishing-cycles spaces and the wall-crossing
//! identity they satisfy.
//!
//! An arc from marked point `i` to marked point `k` is carried by the
//! quiver to the matrix `u_k v_i`; routing the arc around an intermediate
//! point `j` inserts the local twist of `j` in the middle, `u_k T_j v_i`.
//! The two routes differ by the composite transition through `j`, which is
//! the whole content of [`pl_check`].

use serde::Serialize;

use crate::braid::{act, BraidWord};
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Rat, Scalar};
use crate::quiver::PervQuiver;

/// An arc between two marked points, described by a coordinate change (a
/// braid word moving the picture into standard position), the 1-based
/// endpoints `i` and `k`, and optionally an intermediate point the arc
/// detours around.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcSpec {
    pub coords: BraidWord,
    pub i: usize,
    pub k: usize,
    pub detour: Option<usize>,
}

impl ArcSpec {
    pub fn direct(coords: BraidWord, i: usize, k: usize) -> Self {
        ArcSpec { coords, i, k, detour: None }
    }

    pub fn around(coords: BraidWord, i: usize, j: usize, k: usize) -> Self {
        ArcSpec { coords, i, k, detour: Some(j) }
    }

    /// Endpoint and detour indices must be in `1..=n` and pairwise distinct.
    pub fn validate_for(&self, n: usize) -> Result<()> {
        for idx in [Some(self.i), Some(self.k), self.detour].into_iter().flatten() {
            if idx == 0 || idx > n {
                return Err(Error::IndexOutOfRange { index: idx, max: n });
            }
        }
        if self.i == self.k || self.detour == Some(self.i) || self.detour == Some(self.k) {
            return Err(Error::InvalidInput(format!(
                "arc indices must be pairwise distinct, got i={}, k={}, detour={:?}",
                self.i, self.k, self.detour
            )));
        }
        Ok(())
    }
}

/// Transition matrix of an arc: move the quiver by `arc.coords`, then take
/// `u_k v_i`, inserting the twist of the detour point when present.
pub fn transition<S: Scalar>(q: &PervQuiver<S>, arc: &ArcSpec) -> Result<Matrix<S>> {
    arc.validate_for(q.n())?;
    let moved = act(q, &arc.coords)?;
    match arc.detour {
        None => moved.u(arc.k)?.matmul(moved.v(arc.i)?),
        Some(j) => moved.u(arc.k)?.matmul(&moved.twist_psi(j)?)?.matmul(moved.v(arc.i)?),
    }
}

/// The decategorified wall-crossing triangle for a crossing at point `j`:
/// the direct transition `i -> k`, the transition routed around `j`, and
/// the composite through `j`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlTriangle<S = Rat> {
    /// Transition along the arc that detours around `j`.
    pub gamma: Matrix<S>,
    /// Transition along the direct arc.
    pub gamma_prime: Matrix<S>,
    /// `(u_k v_j)(u_j v_i)`, the two-step transition through `j`.
    pub composite: Matrix<S>,
}

impl<S: Scalar> PlTriangle<S> {
    /// The class of the direct arc equals the sum of the other two.
    pub fn additivity_holds(&self) -> bool {
        match self.gamma.checked_add(&self.composite) {
            Ok(sum) => sum == self.gamma_prime,
            Err(_) => false,
        }
    }
}

fn check_distinct_triple(n: usize, i: usize, j: usize, k: usize) -> Result<()> {
    for idx in [i, j, k] {
        if idx == 0 || idx > n {
            return Err(Error::IndexOutOfRange { index: idx, max: n });
        }
    }
    if i == j || j == k || i == k {
        return Err(Error::InvalidInput(format!(
            "wall-crossing indices must be pairwise distinct, got i={i}, j={j}, k={k}"
        )));
    }
    Ok(())
}

/// The three matrices of the wall-crossing triangle after moving the quiver
/// by `coords`.
pub fn pl_triangle_k0<S: Scalar>(
    q: &PervQuiver<S>,
    i: usize,
    j: usize,
    k: usize,
    coords: &BraidWord,
) -> Result<PlTriangle<S>> {
    check_distinct_triple(q.n(), i, j, k)?;
    let moved = act(q, coords)?;
    let gamma_prime = moved.u(k)?.matmul(moved.v(i)?)?;
    let gamma = moved.u(k)?.matmul(&moved.twist_psi(j)?)?.matmul(moved.v(i)?)?;
    let composite = moved
        .u(k)?
        .matmul(moved.v(j)?)?
        .matmul(&moved.u(j)?.matmul(moved.v(i)?)?)?;
    Ok(PlTriangle { gamma, gamma_prime, composite })
}

/// Checks the wall-crossing identity `u_k v_i = u_k T_j v_i + (u_k v_j)(u_j v_i)`
/// on the quiver moved by `coords`. Computed from scratch rather than via
/// [`pl_triangle_k0`]; the two must always agree.
pub fn pl_check<S: Scalar>(
    q: &PervQuiver<S>,
    i: usize,
    j: usize,
    k: usize,
    coords: &BraidWord,
) -> Result<bool> {
    check_distinct_triple(q.n(), i, j, k)?;
    let moved = act(q, coords)?;
    let lhs = moved.u(k)?.matmul(moved.v(i)?)?;
    let around = moved.u(k)?.matmul(&moved.twist_psi(j)?)?.matmul(moved.v(i)?)?;
    let through = moved
        .u(k)?
        .matmul(moved.v(j)?)?
        .matmul(&moved.u(j)?.matmul(moved.v(i)?)?)?;
    Ok(lhs == around.checked_add(&through)?)
}

/// Total dimension of the vanishing-cycles spaces, the rank of the
/// decategorified object. Invariant under the braid action.
pub fn vanishing_total<S: Scalar>(q: &PervQuiver<S>) -> usize {
    q.phi_dims().iter().sum()
}
