//! Quiver presentation: one nearby-cycles space, one vanishing-cycles space
//! per marked point, and a pair of maps `u_i`, `v_i` between them. The
//! defining condition is that every local twist `I - v_i u_i` is invertible.
//!
//! Marked-point indices are 1-based in the public interface; storage is
//! 0-based.

use std::fmt;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Rat, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct PervQuiver<S = Rat> {
    pub(crate) psi_dim: usize,
    /// Declared vanishing-cycle dimensions; `validate` checks these against
    /// the actual matrix shapes.
    pub(crate) phi_dims: Vec<usize>,
    /// `u[i]`: psi -> phi_i, a `phi_dims[i] x psi_dim` matrix.
    pub(crate) u: Vec<Matrix<S>>,
    /// `v[i]`: phi_i -> psi, a `psi_dim x phi_dims[i]` matrix.
    pub(crate) v: Vec<Matrix<S>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuiverViolation {
    Arity { phi: usize, u: usize, v: usize },
    UShape { index: usize, expected: (usize, usize), found: (usize, usize) },
    VShape { index: usize, expected: (usize, usize), found: (usize, usize) },
    TwistSingular { index: usize },
}

impl fmt::Display for QuiverViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuiverViolation::Arity { phi, u, v } => write!(
                f,
                "component counts disagree: {phi} phi dimensions, {u} u maps, {v} v maps"
            ),
            QuiverViolation::UShape { index, expected, found } => write!(
                f,
                "u_{index} has shape {}x{}, expected {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            QuiverViolation::VShape { index, expected, found } => write!(
                f,
                "v_{index} has shape {}x{}, expected {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            QuiverViolation::TwistSingular { index } => {
                write!(f, "twist at marked point {index} is singular (I - v_{index} u_{index} not invertible)")
            }
        }
    }
}

impl<S: Scalar> PervQuiver<S> {
    /// Builds from declared dimensions and raw maps. No validity check is
    /// performed; run [`PervQuiver::validate`].
    pub fn new(psi_dim: usize, phi_dims: Vec<usize>, u: Vec<Matrix<S>>, v: Vec<Matrix<S>>) -> Self {
        PervQuiver { psi_dim, phi_dims, u, v }
    }

    /// Builds from the maps alone, reading the vanishing-cycle dimensions
    /// off the row counts of the `u` maps.
    pub fn from_maps(psi_dim: usize, u: Vec<Matrix<S>>, v: Vec<Matrix<S>>) -> Self {
        let phi_dims = u.iter().map(Matrix::rows).collect();
        PervQuiver { psi_dim, phi_dims, u, v }
    }

    /// Number of marked points.
    pub fn n(&self) -> usize {
        self.phi_dims.len()
    }

    pub fn psi_dim(&self) -> usize {
        self.psi_dim
    }

    pub fn phi_dims(&self) -> &[usize] {
        &self.phi_dims
    }

    /// `u_i` for a 1-based marked point index.
    pub fn u(&self, i: usize) -> Result<&Matrix<S>> {
        self.check_index(i)?;
        Ok(&self.u[i - 1])
    }

    /// `v_i` for a 1-based marked point index.
    pub fn v(&self, i: usize) -> Result<&Matrix<S>> {
        self.check_index(i)?;
        Ok(&self.v[i - 1])
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n() {
            return Err(Error::IndexOutOfRange { index: i, max: self.n() });
        }
        Ok(())
    }

    /// All defining conditions, reported as data. Empty list means valid.
    pub fn validate(&self) -> Vec<QuiverViolation> {
        let mut out = Vec::new();
        if self.u.len() != self.phi_dims.len() || self.v.len() != self.phi_dims.len() {
            out.push(QuiverViolation::Arity {
                phi: self.phi_dims.len(),
                u: self.u.len(),
                v: self.v.len(),
            });
        }
        let n = self.phi_dims.len().min(self.u.len()).min(self.v.len());
        for i0 in 0..n {
            let expected_u = (self.phi_dims[i0], self.psi_dim);
            let expected_v = (self.psi_dim, self.phi_dims[i0]);
            let mut shapes_ok = true;
            if self.u[i0].shape() != expected_u {
                out.push(QuiverViolation::UShape {
                    index: i0 + 1,
                    expected: expected_u,
                    found: self.u[i0].shape(),
                });
                shapes_ok = false;
            }
            if self.v[i0].shape() != expected_v {
                out.push(QuiverViolation::VShape {
                    index: i0 + 1,
                    expected: expected_v,
                    found: self.v[i0].shape(),
                });
                shapes_ok = false;
            }
            if shapes_ok {
                let t = Matrix::identity(self.psi_dim)
                    .checked_sub(&self.v[i0].matmul(&self.u[i0]).expect("shapes checked"))
                    .expect("shapes checked");
                if !t.is_invertible() {
                    out.push(QuiverViolation::TwistSingular { index: i0 + 1 });
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// `Ok` on a valid presentation, otherwise the violation list as an error.
    pub fn require_valid(&self) -> Result<()> {
        let violations = self.validate();
        if violations.is_empty() {
            return Ok(());
        }
        let msgs: Vec<String> = violations.iter().map(ToString::to_string).collect();
        Err(Error::InvalidInput(msgs.join("; ")))
    }

    /// Local twist on the nearby-cycles space, `I - v_i u_i` (1-based `i`).
    pub fn twist_psi(&self, i: usize) -> Result<Matrix<S>> {
        self.check_index(i)?;
        let vu = self.v[i - 1].matmul(&self.u[i - 1])?;
        Matrix::identity(self.psi_dim).checked_sub(&vu)
    }

    /// Local twist on a vanishing-cycles space, `I - u_i v_i` (1-based `i`).
    pub fn twist_phi(&self, i: usize) -> Result<Matrix<S>> {
        self.check_index(i)?;
        let uv = self.u[i - 1].matmul(&self.v[i - 1])?;
        Matrix::identity(self.u[i - 1].rows()).checked_sub(&uv)
    }

    /// Duality: swap each `u_i` and `v_i` with the transpose of the other.
    /// An involution that transposes both kinds of twists.
    pub fn verdier_dual(&self) -> Self {
        PervQuiver {
            psi_dim: self.psi_dim,
            phi_dims: self.phi_dims.clone(),
            u: self.v.iter().map(Matrix::transpose).collect(),
            v: self.u.iter().map(Matrix::transpose).collect(),
        }
    }

    /// Componentwise direct sum; both quivers must have the same number of
    /// marked points.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::ArityMismatch(format!(
                "direct sum of quivers with {} and {} marked points",
                self.n(),
                other.n()
            )));
        }
        let u = self
            .u
            .iter()
            .zip(&other.u)
            .map(|(a, b)| Matrix::block_diag(&[a, b]))
            .collect();
        let v = self
            .v
            .iter()
            .zip(&other.v)
            .map(|(a, b)| Matrix::block_diag(&[a, b]))
            .collect();
        let phi_dims = self.phi_dims.iter().zip(&other.phi_dims).map(|(a, b)| a + b).collect();
        Ok(PervQuiver { psi_dim: self.psi_dim + other.psi_dim, phi_dims, u, v })
    }

    /// Transports the quiver along invertible changes of basis of the
    /// nearby- and vanishing-cycles spaces. The result is isomorphic to
    /// `self`, with `g_psi` and the `g_phis` as the certificate.
    pub fn conjugate(&self, g_psi: &Matrix<S>, g_phis: &[Matrix<S>]) -> Result<Self> {
        if g_phis.len() != self.n() {
            return Err(Error::ArityMismatch(format!(
                "{} basis changes for {} marked points",
                g_phis.len(),
                self.n()
            )));
        }
        if !g_psi.is_invertible() {
            return Err(Error::InvalidInput("basis change on psi is not invertible".into()));
        }
        let g_psi_inv = g_psi.inverse()?;
        let mut u = Vec::with_capacity(self.n());
        let mut v = Vec::with_capacity(self.n());
        for (i0, g) in g_phis.iter().enumerate() {
            if !g.is_invertible() {
                return Err(Error::InvalidInput(format!(
                    "basis change on phi_{} is not invertible",
                    i0 + 1
                )));
            }
            u.push(g.matmul(&self.u[i0])?.matmul(&g_psi_inv)?);
            v.push(g_psi.matmul(&self.v[i0])?.matmul(&g.inverse()?)?);
        }
        Ok(PervQuiver { psi_dim: self.psi_dim, phi_dims: self.phi_dims.clone(), u, v })
    }
}

/// A map of quivers: one matrix per space, commuting with every `u_i` and
/// `v_i`.
#[derive(Clone, PartialEq)]
pub struct QuiverMorphism<S = Rat> {
    pub source: PervQuiver<S>,
    pub target: PervQuiver<S>,
    /// `target.psi_dim x source.psi_dim`.
    pub psi_map: Matrix<S>,
    /// One `target.phi_dims[i] x source.phi_dims[i]` matrix per marked point.
    pub phi_maps: Vec<Matrix<S>>,
}

impl<S: Scalar> QuiverMorphism<S> {
    pub fn identity(q: &PervQuiver<S>) -> Self {
        QuiverMorphism {
            source: q.clone(),
            target: q.clone(),
            psi_map: Matrix::identity(q.psi_dim),
            phi_maps: q.u.iter().map(|u| Matrix::identity(u.rows())).collect(),
        }
    }

    /// Both squares at every marked point commute exactly.
    pub fn commutes(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        if self.phi_maps.len() != s.n() || s.n() != t.n() {
            return false;
        }
        if self.psi_map.shape() != (t.psi_dim, s.psi_dim) {
            return false;
        }
        for i0 in 0..s.n() {
            let lhs_u = t.u[i0].matmul(&self.psi_map);
            let rhs_u = self.phi_maps[i0].matmul(&s.u[i0]);
            let lhs_v = t.v[i0].matmul(&self.phi_maps[i0]);
            let rhs_v = self.psi_map.matmul(&s.v[i0]);
            match (lhs_u, rhs_u, lhs_v, rhs_v) {
                (Ok(a), Ok(b), Ok(c), Ok(d)) => {
                    if a != b || c != d {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        true
    }

    /// Commuting with all components invertible.
    pub fn is_isomorphism(&self) -> bool {
        self.commutes()
            && self.psi_map.is_invertible()
            && self.phi_maps.iter().all(Matrix::is_invertible)
    }
}

impl<S: fmt::Debug> fmt::Debug for QuiverMorphism<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuiverMorphism {{ psi_map: {:?}, phi_maps: {:?} }}", self.psi_map, self.phi_maps)
    }
}

/// A basis of the vector space of morphisms `q1 -> q2`, found by solving
/// the commutation equations exactly. Deterministic: the basis comes from
/// the canonical kernel of the constraint matrix.
pub fn hom_space<S: Scalar>(
    q1: &PervQuiver<S>,
    q2: &PervQuiver<S>,
) -> Result<Vec<QuiverMorphism<S>>> {
    if q1.n() != q2.n() {
        return Err(Error::ArityMismatch(format!(
            "hom between quivers with {} and {} marked points",
            q1.n(),
            q2.n()
        )));
    }
    q1.require_valid()?;
    q2.require_valid()?;
    let n = q1.n();
    let (psi1, psi2) = (q1.psi_dim, q2.psi_dim);

    // Unknown vector: X_psi entries row-major, then each X_phi_i row-major.
    let psi_block = psi2 * psi1;
    let mut phi_offsets = Vec::with_capacity(n);
    let mut total = psi_block;
    for i0 in 0..n {
        phi_offsets.push(total);
        total += q2.phi_dims[i0] * q1.phi_dims[i0];
    }
    let eq_rows: usize =
        (0..n).map(|i0| q2.phi_dims[i0] * psi1 + psi2 * q1.phi_dims[i0]).sum();

    let mut c = Matrix::<S>::zeros(eq_rows, total);
    let mut row0 = 0;
    for (i0, &phi_offset) in phi_offsets.iter().enumerate() {
        let (phi1, phi2) = (q1.phi_dims[i0], q2.phi_dims[i0]);
        // u2 X_psi = X_phi u1, entry (r, c) of a phi2 x psi1 matrix.
        for r in 0..phi2 {
            for col in 0..psi1 {
                let row = row0 + r * psi1 + col;
                for s in 0..psi2 {
                    c.set(row, s * psi1 + col, q2.u[i0][(r, s)].clone());
                }
                for s in 0..phi1 {
                    c.set(row, phi_offset + r * phi1 + s, -q1.u[i0][(s, col)].clone());
                }
            }
        }
        row0 += phi2 * psi1;
        // v2 X_phi = X_psi v1, entry (r, c) of a psi2 x phi1 matrix.
        for r in 0..psi2 {
            for col in 0..phi1 {
                let row = row0 + r * phi1 + col;
                for s in 0..phi2 {
                    c.set(row, phi_offset + s * phi1 + col, q2.v[i0][(r, s)].clone());
                }
                for s in 0..psi1 {
                    c.set(row, r * psi1 + s, -q1.v[i0][(s, col)].clone());
                }
            }
        }
        row0 += psi2 * phi1;
    }

    let kernel = c.kernel_basis();
    let mut basis = Vec::with_capacity(kernel.cols());
    for k in 0..kernel.cols() {
        let psi_map = Matrix::from_fn(psi2, psi1, |r, col| kernel[(r * psi1 + col, k)].clone());
        let mut phi_maps = Vec::with_capacity(n);
        for i0 in 0..n {
            let (phi1, phi2) = (q1.phi_dims[i0], q2.phi_dims[i0]);
            phi_maps.push(Matrix::from_fn(phi2, phi1, |r, col| {
                kernel[(phi_offsets[i0] + r * phi1 + col, k)].clone()
            }));
        }
        basis.push(QuiverMorphism { source: q1.clone(), target: q2.clone(), psi_map, phi_maps });
    }
    Ok(basis)
}

/// Outcome of the randomized isomorphism test.
#[derive(Clone, Debug)]
pub enum IsoVerdict<S = Rat> {
    /// Isomorphic, with an explicit invertible morphism as certificate.
    Yes(Box<QuiverMorphism<S>>),
    /// Provably not isomorphic.
    No(String),
    /// No certificate found within the trial budget; not a proof either way.
    Unknown,
}

impl<S> IsoVerdict<S> {
    pub fn label(&self) -> &'static str {
        match self {
            IsoVerdict::Yes(_) => "yes",
            IsoVerdict::No(_) => "no",
            IsoVerdict::Unknown => "unknown",
        }
    }
}

fn small_scalar<S: Scalar>(n: i64) -> S {
    let mut acc = S::zero();
    for _ in 0..n.unsigned_abs() {
        acc = acc + S::one();
    }
    if n < 0 { -acc } else { acc }
}

/// Randomized isomorphism test: `No` on structural obstructions (unequal
/// dimensions, asymmetric hom spaces), `Yes` with a certificate when some
/// random combination of the hom basis is invertible, `Unknown` otherwise.
/// Deterministic for a fixed `seed`.
pub fn is_isomorphic<S: Scalar>(
    q1: &PervQuiver<S>,
    q2: &PervQuiver<S>,
    trials: usize,
    seed: u64,
) -> Result<IsoVerdict<S>> {
    if q1.n() != q2.n() {
        return Err(Error::ArityMismatch(format!(
            "isomorphism between quivers with {} and {} marked points",
            q1.n(),
            q2.n()
        )));
    }
    if q1.psi_dim != q2.psi_dim || q1.phi_dims != q2.phi_dims {
        return Ok(IsoVerdict::No("dimension vectors differ".into()));
    }
    let forward = hom_space(q1, q2)?;
    let backward = hom_space(q2, q1)?;
    if forward.len() != backward.len() {
        return Ok(IsoVerdict::No(format!(
            "hom spaces are asymmetric: dim hom(a,b) = {}, dim hom(b,a) = {}",
            forward.len(),
            backward.len()
        )));
    }
    let h11 = hom_space(q1, q1)?.len();
    let h22 = hom_space(q2, q2)?.len();
    if h11 != h22 {
        return Ok(IsoVerdict::No(format!(
            "endomorphism spaces differ: {h11} versus {h22}"
        )));
    }
    let total_dim = q1.psi_dim + q1.phi_dims.iter().sum::<usize>();
    if forward.is_empty() {
        return if total_dim == 0 {
            // Both quivers are entirely zero; the empty morphism is an iso.
            Ok(IsoVerdict::Yes(Box::new(QuiverMorphism::identity(q1))))
        } else {
            Ok(IsoVerdict::No("hom space is zero but the quivers are not".into()))
        };
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let mut psi_map = Matrix::zeros(q2.psi_dim, q1.psi_dim);
        let mut phi_maps: Vec<Matrix<S>> =
            q1.phi_dims.iter().zip(&q2.phi_dims).map(|(&a, &b)| Matrix::zeros(b, a)).collect();
        for b in &forward {
            let coeff: S = small_scalar(rng.random_range(-3..=3i64));
            if coeff.is_zero() {
                continue;
            }
            psi_map = &psi_map + &b.psi_map.scale(&coeff);
            for (acc, part) in phi_maps.iter_mut().zip(&b.phi_maps) {
                *acc = &*acc + &part.scale(&coeff);
            }
        }
        let candidate =
            QuiverMorphism { source: q1.clone(), target: q2.clone(), psi_map, phi_maps };
        if candidate.psi_map.is_invertible() && candidate.phi_maps.iter().all(Matrix::is_invertible)
        {
            debug_assert!(candidate.commutes());
            return Ok(IsoVerdict::Yes(Box::new(candidate)));
        }
    }
    Ok(IsoVerdict::Unknown)
}

impl<S: fmt::Debug> fmt::Debug for PervQuiver<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PervQuiver {{ psi_dim: {}, phi_dims: {:?}, u: {:?}, v: {:?} }}",
            self.psi_dim, self.phi_dims, self.u, self.v
        )
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverRepr<S> {
    n: usize,
    psi_dim: usize,
    phi_dims: Vec<usize>,
    u: Vec<Matrix<S>>,
    v: Vec<Matrix<S>>,
}

impl<S: Serialize> Serialize for PervQuiver<S> {
    fn serialize<T: Serializer>(&self, serializer: T) -> std::result::Result<T::Ok, T::Error> {
        #[derive(Serialize)]
        struct Ref<'a, S> {
            n: usize,
            psi_dim: usize,
            phi_dims: &'a [usize],
            u: &'a [Matrix<S>],
            v: &'a [Matrix<S>],
        }
        Ref {
            n: self.phi_dims.len(),
            psi_dim: self.psi_dim,
            phi_dims: &self.phi_dims,
            u: &self.u,
            v: &self.v,
        }
        .serialize(serializer)
    }
}

impl<'de, S: Deserialize<'de>> Deserialize<'de> for PervQuiver<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = QuiverRepr::<S>::deserialize(deserializer)?;
        for (what, len) in
            [("phi_dims", repr.phi_dims.len()), ("u", repr.u.len()), ("v", repr.v.len())]
        {
            if len != repr.n {
                return Err(serde::de::Error::custom(format!(
                    "quiver declares n = {} but {what} has {len} entries",
                    repr.n
                )));
            }
        }
        Ok(PervQuiver { psi_dim: repr.psi_dim, phi_dims: repr.phi_dims, u: repr.u, v: repr.v })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RatMatrix;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_int_rows(rows)
    }

    /// The two-point example on a one-dimensional nearby-cycles space:
    /// u = ([1], [3]), v = ([2], [1]).
    pub(crate) fn two_point_example() -> PervQuiver {
        PervQuiver::from_maps(1, vec![m(&[&[1]]), m(&[&[3]])], vec![m(&[&[2]]), m(&[&[1]])])
    }

    #[test]
    fn two_point_example_twists() {
        let q = two_point_example();
        assert!(q.is_valid());
        // By hand: 1 - 2*1 = -1 and 1 - 1*3 = -2.
        assert_eq!(q.twist_psi(1).unwrap(), m(&[&[-1]]));
        assert_eq!(q.twist_psi(2).unwrap(), m(&[&[-2]]));
        assert!(matches!(q.twist_psi(0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(q.twist_psi(3), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn unipotent_pair_is_rejected() {
        // u = v = [1] gives twist 1 - 1 = 0.
        let q = PervQuiver::from_maps(1, vec![m(&[&[1]])], vec![m(&[&[1]])]);
        let violations = q.validate();
        assert_eq!(violations, vec![QuiverViolation::TwistSingular { index: 1 }]);
        assert!(violations[0].to_string().contains('1'));
    }

    #[test]
    fn shape_violations_are_reported_per_index() {
        let q = PervQuiver::new(
            1,
            vec![2],
            vec![m(&[&[1]])],          // should be 2x1
            vec![m(&[&[1, 0]])],       // correct 1x2
        );
        let violations = q.validate();
        assert_eq!(
            violations,
            vec![QuiverViolation::UShape { index: 1, expected: (2, 1), found: (1, 1) }]
        );
    }

    #[test]
    fn twist_on_partial_support() {
        // Rank-one pair inside a two-dimensional nearby space.
        let q = PervQuiver::from_maps(2, vec![m(&[&[1, 0]])], vec![m(&[&[1], &[0]])]);
        assert_eq!(q.twist_psi(1).unwrap(), m(&[&[0, 0], &[0, 1]]));
        assert!(!q.is_valid());
        assert_eq!(q.validate(), vec![QuiverViolation::TwistSingular { index: 1 }]);
    }

    #[test]
    fn twist_phi_matches_twist_psi_invertibility() {
        let q = two_point_example();
        for i in 1..=2 {
            assert_eq!(
                q.twist_psi(i).unwrap().is_invertible(),
                q.twist_phi(i).unwrap().is_invertible()
            );
        }
    }

    #[test]
    fn dual_is_an_involution_and_transposes_twists() {
        let q = PervQuiver::from_maps(
            2,
            vec![m(&[&[1, 2], &[0, 1]]), m(&[&[1, -1]])],
            vec![m(&[&[1, 0], &[3, 1]]), m(&[&[2], &[0]])],
        );
        let d = q.verdier_dual();
        assert_eq!(d.verdier_dual(), q);
        for i in 1..=2 {
            assert_eq!(d.twist_psi(i).unwrap(), q.twist_psi(i).unwrap().transpose());
            assert_eq!(d.twist_phi(i).unwrap(), q.twist_phi(i).unwrap().transpose());
        }
        assert_eq!(q.is_valid(), d.is_valid());
    }

    #[test]
    fn direct_sum_dims_and_validity() {
        let q = two_point_example();
        let s = q.direct_sum(&q).unwrap();
        assert_eq!(s.psi_dim(), 2);
        assert_eq!(s.phi_dims(), &[2, 2]);
        assert!(s.is_valid());
        assert_eq!(
            s.twist_psi(1).unwrap(),
            RatMatrix::block_diag(&[&q.twist_psi(1).unwrap(), &q.twist_psi(1).unwrap()])
        );

        let single = PervQuiver::from_maps(1, vec![m(&[&[2]])], vec![m(&[&[1]])]);
        assert!(matches!(q.direct_sum(&single), Err(Error::ArityMismatch(_))));
    }

    #[test]
    fn hom_between_extension_free_objects_vanishes() {
        // Full support on psi only, versus full support on phi only.
        let constant = PervQuiver::from_maps(1, vec![RatMatrix::zeros(0, 1)], vec![RatMatrix::zeros(1, 0)]);
        let skyscraper = PervQuiver::from_maps(0, vec![RatMatrix::zeros(1, 0)], vec![RatMatrix::zeros(0, 1)]);
        assert!(constant.is_valid() && skyscraper.is_valid());
        assert!(hom_space(&constant, &skyscraper).unwrap().is_empty());
    }

    #[test]
    fn endomorphisms_of_a_simple_object() {
        let q = PervQuiver::from_maps(1, vec![m(&[&[2]])], vec![m(&[&[1]])]);
        let basis = hom_space(&q, &q).unwrap();
        assert_eq!(basis.len(), 1);
        assert!(basis[0].commutes());
        assert!(QuiverMorphism::identity(&q).commutes());
    }

    #[test]
    fn hom_basis_morphisms_commute() {
        let q = two_point_example();
        let s = q.direct_sum(&q).unwrap();
        let basis = hom_space(&q, &s).unwrap();
        assert!(!basis.is_empty());
        for b in &basis {
            assert!(b.commutes());
        }
    }

    #[test]
    fn conjugation_yields_isomorphic_quiver() {
        let q = two_point_example();
        let g_psi = m(&[&[3]]);
        let g_phis = vec![m(&[&[2]]), m(&[&[-1]])];
        let q2 = q.conjugate(&g_psi, &g_phis).unwrap();
        assert!(q2.is_valid());
        match is_isomorphic(&q, &q2, 16, 7).unwrap() {
            IsoVerdict::Yes(cert) => {
                assert!(cert.is_isomorphism());
                assert_eq!(cert.source, q);
                assert_eq!(cert.target, q2);
            }
            other => panic!("expected certificate, got {}", other.label()),
        }
    }

    #[test]
    fn different_dimensions_are_never_isomorphic() {
        let q = two_point_example();
        let bigger = q.direct_sum(&q).unwrap();
        assert!(matches!(is_isomorphic(&q, &bigger, 4, 0).unwrap(), IsoVerdict::No(_)));
    }

    #[test]
    fn zero_quiver_is_isomorphic_to_itself() {
        let z = PervQuiver::<Rat>::from_maps(
            0,
            vec![RatMatrix::zeros(0, 0)],
            vec![RatMatrix::zeros(0, 0)],
        );
        assert!(z.is_valid());
        assert!(matches!(is_isomorphic(&z, &z, 1, 0).unwrap(), IsoVerdict::Yes(_)));
    }

    #[test]
    fn serde_round_trip_and_arity_schema() {
        let q = two_point_example();
        let js = serde_json::to_string(&q).unwrap();
        let back: PervQuiver = serde_json::from_str(&js).unwrap();
        assert_eq!(back, q);

        let bad = r#"{"n": 2, "psi_dim": 1, "phi_dims": [1],
                      "u": [{"rows":1,"cols":1,"entries":[["1"]]}],
                      "v": [{"rows":1,"cols":1,"entries":[["2"]]}]}"#;
        assert!(serde_json::from_str::<PervQuiver>(bad).is_err());
    }
}
