//! Three-space diagrams equivalent to one-marked-point quivers.
//!
//! A diagram consists of spaces `E_-`, `E_0`, `E_+` with maps
//! `gamma_-: E_0 -> E_-`, `delta_-: E_- -> E_0` (and the `+` versions),
//! subject to two conditions: each `gamma delta` of the same sign is the
//! identity, and the mixed products `gamma_- delta_+`, `gamma_+ delta_-`
//! are invertible. [`quiver_to_pair`] and [`pair_to_quiver`] translate to
//! and from the quiver presentation and are mutually inverse on the nose
//! (not just up to isomorphism), because [`pair_to_quiver`] picks the
//! canonical kernel basis.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{solve_in_basis, Matrix, Rat, Scalar};
use crate::quiver::PervQuiver;

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymDiagram<S = Rat> {
    pub(crate) e_minus: usize,
    pub(crate) e_zero: usize,
    pub(crate) e_plus: usize,
    /// `e_minus x e_zero`.
    pub(crate) gamma_minus: Matrix<S>,
    /// `e_zero x e_minus`.
    pub(crate) delta_minus: Matrix<S>,
    /// `e_plus x e_zero`.
    pub(crate) gamma_plus: Matrix<S>,
    /// `e_zero x e_plus`.
    pub(crate) delta_plus: Matrix<S>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairViolation {
    Shape { map: &'static str, expected: (usize, usize), found: (usize, usize) },
    /// `gamma delta` of one sign is not the identity.
    NotRetraction { side: char },
    /// A mixed product `gamma_a delta_b`, `a != b`, is not invertible.
    CrossSingular { from: char },
}

impl fmt::Display for PairViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairViolation::Shape { map, expected, found } => write!(
                f,
                "{map} has shape {}x{}, expected {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            PairViolation::NotRetraction { side } => {
                write!(f, "gamma_{side} delta_{side} is not the identity")
            }
            PairViolation::CrossSingular { from } => {
                let to = if *from == '+' { '-' } else { '+' };
                write!(f, "gamma_{to} delta_{from} is not invertible")
            }
        }
    }
}

impl<S: Scalar> SymDiagram<S> {
    pub fn new(
        e_minus: usize,
        e_zero: usize,
        e_plus: usize,
        gamma_minus: Matrix<S>,
        delta_minus: Matrix<S>,
        gamma_plus: Matrix<S>,
        delta_plus: Matrix<S>,
    ) -> Self {
        SymDiagram { e_minus, e_zero, e_plus, gamma_minus, delta_minus, gamma_plus, delta_plus }
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.e_minus, self.e_zero, self.e_plus)
    }

    pub fn gamma_minus(&self) -> &Matrix<S> {
        &self.gamma_minus
    }

    pub fn delta_minus(&self) -> &Matrix<S> {
        &self.delta_minus
    }

    pub fn gamma_plus(&self) -> &Matrix<S> {
        &self.gamma_plus
    }

    pub fn delta_plus(&self) -> &Matrix<S> {
        &self.delta_plus
    }

    /// All defining conditions as data; empty means valid.
    pub fn validate(&self) -> Vec<PairViolation> {
        let mut out = Vec::new();
        let expectations: [(&'static str, &Matrix<S>, (usize, usize)); 4] = [
            ("gamma_minus", &self.gamma_minus, (self.e_minus, self.e_zero)),
            ("delta_minus", &self.delta_minus, (self.e_zero, self.e_minus)),
            ("gamma_plus", &self.gamma_plus, (self.e_plus, self.e_zero)),
            ("delta_plus", &self.delta_plus, (self.e_zero, self.e_plus)),
        ];
        let mut shapes_ok = true;
        for (map, matrix, expected) in expectations {
            if matrix.shape() != expected {
                out.push(PairViolation::Shape { map, expected, found: matrix.shape() });
                shapes_ok = false;
            }
        }
        if !shapes_ok {
            return out;
        }
        let gm_dm = self.gamma_minus.matmul(&self.delta_minus).expect("shapes checked");
        if !gm_dm.is_identity() {
            out.push(PairViolation::NotRetraction { side: '-' });
        }
        let gp_dp = self.gamma_plus.matmul(&self.delta_plus).expect("shapes checked");
        if !gp_dp.is_identity() {
            out.push(PairViolation::NotRetraction { side: '+' });
        }
        let gm_dp = self.gamma_minus.matmul(&self.delta_plus).expect("shapes checked");
        if !gm_dp.is_invertible() {
            out.push(PairViolation::CrossSingular { from: '+' });
        }
        let gp_dm = self.gamma_plus.matmul(&self.delta_minus).expect("shapes checked");
        if !gp_dm.is_invertible() {
            out.push(PairViolation::CrossSingular { from: '-' });
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        let violations = self.validate();
        if violations.is_empty() {
            return Ok(());
        }
        let msgs: Vec<String> = violations.iter().map(ToString::to_string).collect();
        Err(Error::InvalidInput(msgs.join("; ")))
    }

    /// The idempotents `(delta_- gamma_-, delta_+ gamma_+)` on `E_0`.
    pub fn projectors(&self) -> Result<(Matrix<S>, Matrix<S>)> {
        let p_minus = self.delta_minus.matmul(&self.gamma_minus)?;
        let p_plus = self.delta_plus.matmul(&self.gamma_plus)?;
        Ok((p_minus, p_plus))
    }

    /// Conjugates all maps by invertible changes of basis of `E_0`, `E_-`
    /// and `E_+`. Preserves validity and every derived invariant up to the
    /// corresponding conjugation.
    pub fn base_change(
        &self,
        g_zero: &Matrix<S>,
        g_minus: &Matrix<S>,
        g_plus: &Matrix<S>,
    ) -> Result<Self> {
        for (name, g, dim) in [
            ("E_0", g_zero, self.e_zero),
            ("E_-", g_minus, self.e_minus),
            ("E_+", g_plus, self.e_plus),
        ] {
            if g.shape() != (dim, dim) {
                return Err(Error::DimensionMismatch(format!(
                    "basis change on {name} has shape {}x{}, expected {dim}x{dim}",
                    g.rows(),
                    g.cols()
                )));
            }
            if !g.is_invertible() {
                return Err(Error::InvalidInput(format!(
                    "basis change on {name} is not invertible"
                )));
            }
        }
        let g_zero_inv = g_zero.inverse()?;
        Ok(SymDiagram {
            e_minus: self.e_minus,
            e_zero: self.e_zero,
            e_plus: self.e_plus,
            gamma_minus: g_minus.matmul(&self.gamma_minus)?.matmul(&g_zero_inv)?,
            delta_minus: g_zero.matmul(&self.delta_minus)?.matmul(&g_minus.inverse()?)?,
            gamma_plus: g_plus.matmul(&self.gamma_plus)?.matmul(&g_zero_inv)?,
            delta_plus: g_zero.matmul(&self.delta_plus)?.matmul(&g_plus.inverse()?)?,
        })
    }
}

impl<S: fmt::Debug> fmt::Debug for SymDiagram<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SymDiagram {{ dims: ({}, {}, {}), gamma_-: {:?}, delta_-: {:?}, gamma_+: {:?}, delta_+: {:?} }}",
            self.e_minus,
            self.e_zero,
            self.e_plus,
            self.gamma_minus,
            self.delta_minus,
            self.gamma_plus,
            self.delta_plus
        )
    }
}

/// Presents a one-marked-point quiver as a diagram: `E_- = E_+ = Psi` and
/// `E_0 = Phi (+) Psi` with coordinates `(phi, psi)`. The maps are
///
/// * `delta_-(psi) = (0, psi)` and `gamma_-(phi, psi) = psi + v phi`,
/// * `delta_+(psi) = (-u psi, psi)` and `gamma_+(phi, psi) = psi`,
///
/// so that `gamma_+ delta_- = Id` and `gamma_- delta_+ = I - v u`, the
/// local twist.
pub fn quiver_to_pair<S: Scalar>(q: &PervQuiver<S>) -> Result<SymDiagram<S>> {
    if q.n() != 1 {
        return Err(Error::ArityMismatch(format!(
            "diagram presentation needs exactly one marked point, got {}",
            q.n()
        )));
    }
    q.require_valid()?;
    let psi = q.psi_dim();
    let u = q.u(1)?;
    let v = q.v(1)?;
    let phi = u.rows();
    let id_psi = Matrix::identity(psi);
    let d = SymDiagram {
        e_minus: psi,
        e_zero: phi + psi,
        e_plus: psi,
        gamma_minus: v.hstack(&id_psi)?,
        delta_minus: Matrix::zeros(phi, psi).vstack(&id_psi)?,
        gamma_plus: Matrix::zeros(psi, phi).hstack(&id_psi)?,
        delta_plus: (-u).vstack(&id_psi)?,
    };
    debug_assert!(d.is_valid());
    Ok(d)
}

/// Inverse presentation: `Psi := E_-` and `Phi := ker gamma_+` in its
/// canonical basis `B`. Then `u` solves `B u = (I - P_+) delta_-` inside
/// the kernel and `v = gamma_- B`. The local twist identity
/// `I - v u = gamma_- delta_+ gamma_+ delta_-` holds by construction.
pub fn pair_to_quiver<S: Scalar>(d: &SymDiagram<S>) -> Result<PervQuiver<S>> {
    d.require_valid()?;
    let basis = d.gamma_plus.kernel_basis();
    let (_, p_plus) = d.projectors()?;
    let complement = Matrix::identity(d.e_zero).checked_sub(&p_plus)?;
    let u = solve_in_basis(&basis, &complement.matmul(&d.delta_minus)?)?;
    let v = d.gamma_minus.matmul(&basis)?;
    let q = PervQuiver::from_maps(d.e_minus, vec![u], vec![v]);
    debug_assert!(q.is_valid());
    Ok(q)
}

/// The reduced data of a diagram: the restriction `s` of `(I - P_+) delta_-`
/// to the kernel of `gamma_+`, its partner `r = gamma_- B`, and the two
/// twists `t1 = I - s r`, `t0 = I - r s`. Matches the quiver of
/// [`pair_to_quiver`]: `s = u`, `r = v`, `t0` the nearby twist, `t1` the
/// vanishing twist.
#[derive(Clone, Debug, PartialEq)]
pub struct SphericalQuadruple<S = Rat> {
    pub s: Matrix<S>,
    pub r: Matrix<S>,
    pub t1: Matrix<S>,
    pub t0: Matrix<S>,
}

pub fn spherical_quadruple<S: Scalar>(d: &SymDiagram<S>) -> Result<SphericalQuadruple<S>> {
    let q = pair_to_quiver(d)?;
    let s = q.u(1)?.clone();
    let r = q.v(1)?.clone();
    let t1 = Matrix::identity(s.rows()).checked_sub(&s.matmul(&r)?)?;
    let t0 = Matrix::identity(r.rows()).checked_sub(&r.matmul(&s)?)?;
    Ok(SphericalQuadruple { s, r, t1, t0 })
}

/// The two closed-form expressions for the twists of a diagram:
///
/// * `t0 = gamma_- delta_+ gamma_+ delta_-` on `E_-`,
/// * `t1 = B \ ((I - P_+)(I - P_-) B)` on the kernel of `gamma_+`.
///
/// Returns whether both hold exactly.
pub fn twist_identities_check<S: Scalar>(d: &SymDiagram<S>) -> Result<bool> {
    let quad = spherical_quadruple(d)?;
    let around = d
        .gamma_minus
        .matmul(&d.delta_plus)?
        .matmul(&d.gamma_plus)?
        .matmul(&d.delta_minus)?;
    if quad.t0 != around {
        return Ok(false);
    }
    let basis = d.gamma_plus.kernel_basis();
    let (p_minus, p_plus) = d.projectors()?;
    let id = Matrix::identity(d.e_zero);
    let product = id
        .checked_sub(&p_plus)?
        .matmul(&id.checked_sub(&p_minus)?)?
        .matmul(&basis)?;
    let restricted = solve_in_basis(&basis, &product)?;
    Ok(quad.t1 == restricted)
}
