//! Double cubical diagrams: one vector space per subset of `{1, .., r}`,
//! a family of `gamma` edges going up (adding one element) and a family of
//! `delta` edges going down, with every square face of each family
//! commuting separately. No relation between the two families is imposed.
//!
//! Subsets travel through the public interface as sorted slices of 1-based
//! elements and serialize as labels like `"[1,3]"`; internally they are
//! bitmasks.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Rat, Scalar};

pub type Mask = u32;

/// Which of the two edge families an operation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Edges `E_I -> E_{I + {a}}`.
    Gamma,
    /// Edges `E_{I + {a}} -> E_I`.
    Delta,
}

#[derive(Clone, PartialEq, Eq)]
pub struct DoubleCube<S = Rat> {
    r: usize,
    /// Indexed by subset bitmask; length `2^r`.
    dims: Vec<usize>,
    /// Key `(I, a)` with `a` a 1-based element not in `I`.
    gamma: BTreeMap<(Mask, usize), Matrix<S>>,
    delta: BTreeMap<(Mask, usize), Matrix<S>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CubeViolation {
    EdgeShape {
        family: &'static str,
        from: String,
        to: String,
        expected: (usize, usize),
        found: (usize, usize),
    },
    FaceBroken { family: &'static str, base: String, a: usize, b: usize },
}

impl fmt::Display for CubeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CubeViolation::EdgeShape { family, from, to, expected, found } => write!(
                f,
                "{family} edge {from}->{to} has shape {}x{}, expected {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            CubeViolation::FaceBroken { family, base, a, b } => write!(
                f,
                "{family} face over {base} adding {{{a},{b}}} does not commute"
            ),
        }
    }
}

pub(crate) fn subset_label(mask: Mask) -> String {
    let elems: Vec<String> =
        (0..32).filter(|a| mask & (1 << a) != 0).map(|a| (a + 1).to_string()).collect();
    format!("[{}]", elems.join(","))
}

pub(crate) fn parse_subset(s: &str) -> std::result::Result<Mask, String> {
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| format!("subset {s:?} is not of the form [a,b,..]"))?;
    let mut mask: Mask = 0;
    if inner.trim().is_empty() {
        return Ok(mask);
    }
    let mut last = 0usize;
    for part in inner.split(',') {
        let n: usize = part
            .trim()
            .parse()
            .map_err(|_| format!("subset {s:?} has a malformed element {part:?}"))?;
        if n == 0 || n > 32 {
            return Err(format!("subset element {n} out of range 1..=32"));
        }
        if n <= last {
            return Err(format!("subset {s:?} is not strictly increasing"));
        }
        last = n;
        mask |= 1 << (n - 1);
    }
    Ok(mask)
}

fn mask_from_elems(r: usize, elems: &[usize]) -> Result<Mask> {
    let mut mask: Mask = 0;
    for &a in elems {
        if a == 0 || a > r {
            return Err(Error::IndexOutOfRange { index: a, max: r });
        }
        mask |= 1 << (a - 1);
    }
    Ok(mask)
}

impl<S: Scalar> DoubleCube<S> {
    /// Builds a cube from complete edge families. Structural requirements
    /// (every subset has a dimension, every edge of both families present,
    /// no stray keys) are enforced here; shapes and face commutation are
    /// the business of [`DoubleCube::validate`].
    pub fn new(
        r: usize,
        dims: Vec<usize>,
        gamma: BTreeMap<(Mask, usize), Matrix<S>>,
        delta: BTreeMap<(Mask, usize), Matrix<S>>,
    ) -> Result<Self> {
        if r > 16 {
            return Err(Error::InvalidInput(format!("cube rank {r} exceeds the supported 16")));
        }
        if dims.len() != 1 << r {
            return Err(Error::InvalidInput(format!(
                "cube of rank {r} needs {} dimensions, got {}",
                1 << r,
                dims.len()
            )));
        }
        for (family, edges) in [("gamma", &gamma), ("delta", &delta)] {
            for &(mask, a) in edges.keys() {
                if a == 0 || a > r || mask >= (1 << r) || mask & (1 << (a - 1)) != 0 {
                    return Err(Error::InvalidInput(format!(
                        "{family} edge key ({}, {a}) is not a subset with a missing element",
                        subset_label(mask)
                    )));
                }
            }
            let expected = (1 << r.saturating_sub(1)) * r;
            if edges.len() != expected {
                return Err(Error::InvalidInput(format!(
                    "{family} family has {} edges, expected {expected}",
                    edges.len()
                )));
            }
        }
        Ok(DoubleCube { r, dims, gamma, delta })
    }

    /// External product of `r` independent pairs `(gamma_a, delta_a)`,
    /// `gamma_a: V0_a -> V1_a` and `delta_a` backwards. `E_I` is the tensor
    /// product choosing `V1` at the coordinates in `I`, and every edge acts
    /// on a single tensor factor, so both families commute automatically.
    pub fn product_of_pairs(pairs: &[(Matrix<S>, Matrix<S>)]) -> Result<Self> {
        let r = pairs.len();
        if r > 16 {
            return Err(Error::InvalidInput(format!("cube rank {r} exceeds the supported 16")));
        }
        for (a0, (g, d)) in pairs.iter().enumerate() {
            if g.shape() != (d.cols(), d.rows()) {
                return Err(Error::DimensionMismatch(format!(
                    "pair {} has gamma {}x{} but delta {}x{}",
                    a0 + 1,
                    g.rows(),
                    g.cols(),
                    d.rows(),
                    d.cols()
                )));
            }
        }
        let dim_at = |mask: Mask, a0: usize| {
            let (g, _) = &pairs[a0];
            if mask & (1 << a0) != 0 { g.rows() } else { g.cols() }
        };
        let mut dims = Vec::with_capacity(1 << r);
        for mask in 0..(1u32 << r) {
            dims.push((0..r).map(|a0| dim_at(mask, a0)).product());
        }
        let mut gamma = BTreeMap::new();
        let mut delta = BTreeMap::new();
        for mask in 0..(1u32 << r) {
            for a0 in 0..r {
                if mask & (1 << a0) != 0 {
                    continue;
                }
                let mut up = Matrix::identity(1);
                let mut down = Matrix::identity(1);
                for (b0, pair) in pairs.iter().enumerate() {
                    if b0 == a0 {
                        up = up.kron(&pair.0);
                        down = down.kron(&pair.1);
                    } else {
                        let id = Matrix::identity(dim_at(mask, b0));
                        up = up.kron(&id);
                        down = down.kron(&id);
                    }
                }
                gamma.insert((mask, a0 + 1), up);
                delta.insert((mask, a0 + 1), down);
            }
        }
        DoubleCube::new(r, dims, gamma, delta)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Dimension of the space at a subset, given as sorted 1-based elements.
    pub fn dim(&self, subset: &[usize]) -> Result<usize> {
        Ok(self.dims[mask_from_elems(self.r, subset)? as usize])
    }

    /// The pair of edge maps over `(I, a)`: the `gamma` edge going up and
    /// the `delta` edge coming back down.
    pub fn edge_pair(&self, subset: &[usize], a: usize) -> Result<(Matrix<S>, Matrix<S>)> {
        let mask = mask_from_elems(self.r, subset)?;
        if a == 0 || a > self.r || mask & (1 << (a - 1)) != 0 {
            return Err(Error::IndexOutOfRange { index: a, max: self.r });
        }
        Ok((self.gamma[&(mask, a)].clone(), self.delta[&(mask, a)].clone()))
    }

    /// Replaces one edge map, leaving everything else alone. The result is
    /// a candidate cube; run [`DoubleCube::validate`].
    pub fn replace_edge(
        &self,
        family: Family,
        subset: &[usize],
        a: usize,
        map: Matrix<S>,
    ) -> Result<Self> {
        let mask = mask_from_elems(self.r, subset)?;
        if a == 0 || a > self.r || mask & (1 << (a - 1)) != 0 {
            return Err(Error::IndexOutOfRange { index: a, max: self.r });
        }
        let mut out = self.clone();
        match family {
            Family::Gamma => out.gamma.insert((mask, a), map),
            Family::Delta => out.delta.insert((mask, a), map),
        };
        Ok(out)
    }

    fn edge(&self, family: Family, mask: Mask, a: usize) -> &Matrix<S> {
        match family {
            Family::Gamma => &self.gamma[&(mask, a)],
            Family::Delta => &self.delta[&(mask, a)],
        }
    }

    /// Shape constraints for every edge and commutation of every square
    /// face of both families, reported as data.
    pub fn validate(&self) -> Vec<CubeViolation> {
        let mut out = Vec::new();
        let mut shape_ok: BTreeMap<(&'static str, Mask, usize), bool> = BTreeMap::new();
        for (family, edges) in [("gamma", &self.gamma), ("delta", &self.delta)] {
            for (&(mask, a), m) in edges {
                let lower = self.dims[mask as usize];
                let upper = self.dims[(mask | (1 << (a - 1))) as usize];
                let expected = if family == "gamma" { (upper, lower) } else { (lower, upper) };
                let ok = m.shape() == expected;
                shape_ok.insert((family, mask, a), ok);
                if !ok {
                    let (from, to) = if family == "gamma" {
                        (subset_label(mask), subset_label(mask | (1 << (a - 1))))
                    } else {
                        (subset_label(mask | (1 << (a - 1))), subset_label(mask))
                    };
                    out.push(CubeViolation::EdgeShape {
                        family,
                        from,
                        to,
                        expected,
                        found: m.shape(),
                    });
                }
            }
        }
        for mask in 0..(1u32 << self.r) {
            for a in 1..=self.r {
                if mask & (1 << (a - 1)) != 0 {
                    continue;
                }
                for b in a + 1..=self.r {
                    if mask & (1 << (b - 1)) != 0 {
                        continue;
                    }
                    let with_a = mask | (1 << (a - 1));
                    let with_b = mask | (1 << (b - 1));
                    for family in ["gamma", "delta"] {
                        let fam = if family == "gamma" { Family::Gamma } else { Family::Delta };
                        let keys =
                            [(mask, a), (mask, b), (with_a, b), (with_b, a)];
                        if keys.iter().any(|&(m, x)| !shape_ok.get(&(family, m, x)).copied().unwrap_or(false)) {
                            continue;
                        }
                        let commutes = match fam {
                            Family::Gamma => {
                                self.edge(fam, with_a, b).matmul(self.edge(fam, mask, a))
                                    == self.edge(fam, with_b, a).matmul(self.edge(fam, mask, b))
                            }
                            Family::Delta => {
                                self.edge(fam, mask, a).matmul(self.edge(fam, with_a, b))
                                    == self.edge(fam, mask, b).matmul(self.edge(fam, with_b, a))
                            }
                        };
                        if !commutes {
                            out.push(CubeViolation::FaceBroken {
                                family,
                                base: subset_label(mask),
                                a,
                                b,
                            });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    fn require_valid(&self) -> Result<()> {
        let violations = self.validate();
        if violations.is_empty() {
            return Ok(());
        }
        let msgs: Vec<String> = violations.iter().map(ToString::to_string).collect();
        Err(Error::InvalidInput(msgs.join("; ")))
    }

    /// Composite edge map between nested subsets `from` and `to` (inclusion
    /// required in the direction matching the family: `gamma` goes up from
    /// `from` to `to`, `delta` comes down from `to` to `from`... for both
    /// families `from` must be contained in `to`). Well defined on a valid
    /// cube because all paths agree; this one adds or removes elements in
    /// increasing order.
    pub fn composite(&self, family: Family, from: &[usize], to: &[usize]) -> Result<Matrix<S>> {
        let lo = mask_from_elems(self.r, from)?;
        let hi = mask_from_elems(self.r, to)?;
        if lo & !hi != 0 {
            return Err(Error::InvalidInput(format!(
                "{} is not a subset of {}",
                subset_label(lo),
                subset_label(hi)
            )));
        }
        self.require_valid()?;
        let added: Vec<usize> =
            (1..=self.r).filter(|a| hi & (1 << (a - 1)) != 0 && lo & (1 << (a - 1)) == 0).collect();
        match family {
            Family::Gamma => {
                let mut acc = Matrix::identity(self.dims[lo as usize]);
                let mut cur = lo;
                for &a in &added {
                    acc = self.edge(Family::Gamma, cur, a).matmul(&acc)?;
                    cur |= 1 << (a - 1);
                }
                Ok(acc)
            }
            Family::Delta => {
                let mut acc = Matrix::identity(self.dims[hi as usize]);
                let mut cur = hi;
                for &a in added.iter().rev() {
                    cur &= !(1 << (a - 1));
                    acc = self.edge(Family::Delta, cur, a).matmul(&acc)?;
                }
                Ok(acc)
            }
        }
    }

    /// Swaps the two families, transposing every edge. An involution that
    /// preserves validity: transposition reverses products, which turns
    /// each commuting square of one family into one of the other.
    pub fn dual_cube(&self) -> Self {
        DoubleCube {
            r: self.r,
            dims: self.dims.clone(),
            gamma: self.delta.iter().map(|(&k, m)| (k, m.transpose())).collect(),
            delta: self.gamma.iter().map(|(&k, m)| (k, m.transpose())).collect(),
        }
    }
}

impl<S: fmt::Debug> fmt::Debug for DoubleCube<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoubleCube {{ r: {}, dims: {:?} }}", self.r, self.dims)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CubeRepr<S> {
    r: usize,
    dims: BTreeMap<String, usize>,
    gamma: BTreeMap<String, Matrix<S>>,
    delta: BTreeMap<String, Matrix<S>>,
}

impl<S: Scalar + Serialize> Serialize for DoubleCube<S> {
    fn serialize<T: Serializer>(&self, serializer: T) -> std::result::Result<T::Ok, T::Error> {
        let edge_key = |&(mask, a): &(Mask, usize)| {
            format!("{}->{}", subset_label(mask), subset_label(mask | (1 << (a - 1))))
        };
        let repr = CubeRepr {
            r: self.r,
            dims: (0..(1u32 << self.r))
                .map(|mask| (subset_label(mask), self.dims[mask as usize]))
                .collect(),
            gamma: self.gamma.iter().map(|(k, m)| (edge_key(k), m.clone())).collect(),
            delta: self.delta.iter().map(|(k, m)| (edge_key(k), m.clone())).collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de, S: Scalar + Deserialize<'de>> Deserialize<'de> for DoubleCube<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let repr = CubeRepr::<S>::deserialize(deserializer)?;
        if repr.r > 16 {
            return Err(D::Error::custom(format!("cube rank {} exceeds the supported 16", repr.r)));
        }
        let size = 1usize << repr.r;
        let mut dims = vec![None; size];
        for (label, d) in &repr.dims {
            let mask = parse_subset(label).map_err(D::Error::custom)?;
            if mask as usize >= size {
                return Err(D::Error::custom(format!(
                    "subset {label} does not fit in a rank-{} cube",
                    repr.r
                )));
            }
            dims[mask as usize] = Some(*d);
        }
        let dims: Vec<usize> = dims
            .into_iter()
            .enumerate()
            .map(|(mask, d)| {
                d.ok_or_else(|| {
                    D::Error::custom(format!("missing dimension for {}", subset_label(mask as Mask)))
                })
            })
            .collect::<std::result::Result<_, _>>()?;

        let parse_edges = |edges: BTreeMap<String, Matrix<S>>| {
            let mut out = BTreeMap::new();
            for (key, m) in edges {
                let (from, to) = key
                    .split_once("->")
                    .ok_or_else(|| format!("edge key {key:?} is not of the form I->J"))?;
                let lo = parse_subset(from)?;
                let hi = parse_subset(to)?;
                let diff = hi & !lo;
                if lo & !hi != 0 || diff.count_ones() != 1 || hi as usize >= size {
                    return Err(format!("edge key {key:?} must add exactly one element"));
                }
                let a = diff.trailing_zeros() as usize + 1;
                out.insert((lo, a), m);
            }
            Ok::<_, String>(out)
        };
        let gamma = parse_edges(repr.gamma).map_err(D::Error::custom)?;
        let delta = parse_edges(repr.delta).map_err(D::Error::custom)?;
        DoubleCube::new(repr.r, dims, gamma, delta).map_err(|e| D::Error::custom(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RatMatrix;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_int_rows(rows)
    }

    /// Rank-2 cube with every space a line and every map the identity.
    fn unit_square() -> DoubleCube {
        DoubleCube::product_of_pairs(&[
            (m(&[&[1]]), m(&[&[1]])),
            (m(&[&[1]]), m(&[&[1]])),
        ])
        .unwrap()
    }

    #[test]
    fn unit_square_is_valid() {
        let c = unit_square();
        assert!(c.is_valid());
        assert_eq!(c.dim(&[]).unwrap(), 1);
        assert_eq!(c.dim(&[1, 2]).unwrap(), 1);
        let (up, down) = c.edge_pair(&[], 1).unwrap();
        assert_eq!(up, m(&[&[1]]));
        assert_eq!(down, m(&[&[1]]));
    }

    #[test]
    fn single_mutated_edge_breaks_exactly_one_face_in_rank_two() {
        // A rank-2 edge lies in exactly one square of its family; verified
        // by enumerating faces directly: (I, {a,b}) contains the edge
        // (J, a) iff J = I or J = I + {b}, giving r - 1 = 1 face.
        let c = unit_square().replace_edge(Family::Gamma, &[], 1, m(&[&[2]])).unwrap();
        let violations = c.validate();
        assert_eq!(
            violations,
            vec![CubeViolation::FaceBroken { family: "gamma", base: "[]".into(), a: 1, b: 2 }]
        );
        assert!(violations[0].to_string().contains("gamma"));
    }

    #[test]
    fn single_mutated_edge_breaks_two_faces_in_rank_three() {
        // Same enumeration for r = 3: the edge ([], 1) lies in the faces
        // over [] adding {1,2} and {1,3}.
        let ones = DoubleCube::product_of_pairs(&[
            (m(&[&[1]]), m(&[&[1]])),
            (m(&[&[1]]), m(&[&[1]])),
            (m(&[&[1]]), m(&[&[1]])),
        ])
        .unwrap();
        let c = ones.replace_edge(Family::Gamma, &[], 1, m(&[&[2]])).unwrap();
        assert_eq!(
            c.validate(),
            vec![
                CubeViolation::FaceBroken { family: "gamma", base: "[]".into(), a: 1, b: 2 },
                CubeViolation::FaceBroken { family: "gamma", base: "[]".into(), a: 1, b: 3 },
            ]
        );
    }

    #[test]
    fn composites_multiply_the_factors() {
        let c = DoubleCube::product_of_pairs(&[
            (m(&[&[2]]), m(&[&[1]])),
            (m(&[&[3]]), m(&[&[-1]])),
        ])
        .unwrap();
        assert_eq!(c.composite(Family::Gamma, &[], &[1, 2]).unwrap(), m(&[&[6]]));
        assert_eq!(c.composite(Family::Delta, &[], &[1, 2]).unwrap(), m(&[&[-1]]));
        assert!(c.composite(Family::Gamma, &[], &[]).unwrap().is_identity());
        assert!(matches!(
            c.composite(Family::Gamma, &[1], &[2]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn composite_refuses_invalid_cubes() {
        let c = unit_square().replace_edge(Family::Gamma, &[], 1, m(&[&[2]])).unwrap();
        assert!(matches!(
            c.composite(Family::Gamma, &[], &[1, 2]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn rectangular_product_cube_and_duality() {
        // Factor 1 is a genuine projection pair on a plane, factor 2 a line.
        let c = DoubleCube::product_of_pairs(&[
            (m(&[&[1, 0]]), m(&[&[1], &[0]])),
            (m(&[&[2]]), m(&[&[1]])),
        ])
        .unwrap();
        assert!(c.is_valid());
        assert_eq!(c.dim(&[]).unwrap(), 2);
        assert_eq!(c.dim(&[1]).unwrap(), 1);
        assert_eq!(c.dim(&[1, 2]).unwrap(), 1);

        let d = c.dual_cube();
        assert!(d.is_valid());
        assert_eq!(d.dual_cube(), c);
        let (up, down) = c.edge_pair(&[2], 1).unwrap();
        let (dual_up, dual_down) = d.edge_pair(&[2], 1).unwrap();
        assert_eq!(dual_up, down.transpose());
        assert_eq!(dual_down, up.transpose());
    }

    #[test]
    fn subset_labels_round_trip() {
        for mask in [0u32, 0b1, 0b110, 0b1011] {
            assert_eq!(parse_subset(&subset_label(mask)).unwrap(), mask);
        }
        assert_eq!(subset_label(0b101), "[1,3]");
        assert!(parse_subset("[2,1]").is_err());
        assert!(parse_subset("1,2").is_err());
        assert!(parse_subset("[0]").is_err());
    }

    #[test]
    fn serde_round_trip_and_structural_checks() {
        let c = DoubleCube::product_of_pairs(&[
            (m(&[&[1], &[1]]), m(&[&[1, 0]])),
            (m(&[&[2]]), m(&[&[3]])),
        ])
        .unwrap();
        let js = serde_json::to_string(&c).unwrap();
        let back: DoubleCube = serde_json::from_str(&js).unwrap();
        assert_eq!(back, c);

        // Dropping an edge is a structural (parse-level) failure.
        let mut value: serde_json::Value = serde_json::from_str(&js).unwrap();
        let edges = value["gamma"].as_object_mut().unwrap();
        let key = edges.keys().next().unwrap().clone();
        edges.remove(&key);
        assert!(serde_json::from_value::<DoubleCube>(value).is_err());
    }

    #[test]
    fn zero_rank_cube() {
        let c = DoubleCube::<Rat>::product_of_pairs(&[]).unwrap();
        assert!(c.is_valid());
        assert_eq!(c.r(), 0);
        assert_eq!(c.dim(&[]).unwrap(), 1);
        assert!(c.composite(Family::Gamma, &[], &[]).unwrap().is_identity());
    }
}
