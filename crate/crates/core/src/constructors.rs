//! Constructors for sequences of structuring elements that satisfy
//! whole-space shift inclusion by construction.
//!
//! The common engine is the decomposition theorem: `B1` is shift-included in
//! `B2` on the whole lattice exactly when `B2 = B1 ∪ (B1+v1) ∪ … ∪ (B1+vk)`
//! for some translate vectors. Every constructor here produces consecutive
//! pairs of that shape, so [`crate::inclusion::check_whole_space`] accepts
//! them without search; the guarantee does *not* automatically transfer to a
//! proper subset `P` of the lattice.

use serde::{Deserialize, Serialize};

use crate::diagram::parse_structuring_element;
use crate::error::{MorphError, Result};
use crate::geometry::{l1_ball, PixelSet, Point, StructuringElement};

/// `B1 ∪ (B1+v1) ∪ … ∪ (B1+vk)`: the canonical shift-included extension.
pub fn decompose_build(b1: &StructuringElement, vs: &[Point]) -> Result<StructuringElement> {
    let mut points = b1.points().clone();
    for v in vs {
        if v.dim() != b1.dim() {
            return Err(MorphError::DimensionMismatch {
                expected: b1.dim(),
                got: v.dim(),
            });
        }
        points = points.union(&b1.points().translate(v)?)?;
    }
    StructuringElement::new(points)
}

fn rect_se(lo: &[i64], hi: &[i64]) -> Result<StructuringElement> {
    let points = PixelSet::rectangle(&Point::new(lo.to_vec()), &Point::new(hi.to_vec()))?;
    StructuringElement::new(points.points().clone())
}

/// Chain of rectangles from `[lo1, hi1]` to `[lo2, hi2]`, growing by one
/// layer at a time: axis by axis, the positive side first, then the negative
/// side. Both rectangles must contain the origin and the first must sit
/// inside the second. Adding one layer along a unit vector `e` turns `R` into
/// `R ∪ (R+e)`, so every consecutive pair decomposes.
pub fn rectangle_chain(
    lo1: &Point,
    hi1: &Point,
    lo2: &Point,
    hi2: &Point,
) -> Result<Vec<StructuringElement>> {
    let dim = lo1.dim();
    for p in [hi1, lo2, hi2] {
        if p.dim() != dim {
            return Err(MorphError::DimensionMismatch {
                expected: dim,
                got: p.dim(),
            });
        }
    }
    for axis in 0..dim {
        let (l1, h1) = (lo1.coords()[axis], hi1.coords()[axis]);
        let (l2, h2) = (lo2.coords()[axis], hi2.coords()[axis]);
        if l1 > h1 {
            return Err(MorphError::InvalidRectangle {
                lo: l1,
                hi: h1,
                axis,
            });
        }
        if l2 > h2 {
            return Err(MorphError::InvalidRectangle {
                lo: l2,
                hi: h2,
                axis,
            });
        }
        if l1 > 0 || h1 < 0 {
            return Err(MorphError::NotRectangle(format!(
                "inner rectangle misses the origin in coordinate {axis}"
            )));
        }
        if l2 > l1 || h2 < h1 {
            return Err(MorphError::NotRectangle(format!(
                "inner rectangle exceeds the outer one in coordinate {axis}"
            )));
        }
    }
    let mut lo = lo1.coords().to_vec();
    let mut hi = hi1.coords().to_vec();
    let mut chain = vec![rect_se(&lo, &hi)?];
    for axis in 0..dim {
        while hi[axis] < hi2.coords()[axis] {
            hi[axis] += 1;
            chain.push(rect_se(&lo, &hi)?);
        }
        while lo[axis] > lo2.coords()[axis] {
            lo[axis] -= 1;
            chain.push(rect_se(&lo, &hi)?);
        }
    }
    Ok(chain)
}

/// Growing squares `C_0 ⊆ C_1 ⊆ … ⊆ C_n` starting from the singleton. Odd
/// steps absorb the translates by `e1`, `e2`, and `e1+e2`; even steps their
/// negatives. `C_k` is the square of side `k+1` whose anchoring alternates,
/// e.g. `C_1 = [0,1]^2` and `C_2 = [-1,1]^2`.
pub fn square_iteration(n: usize) -> Result<Vec<StructuringElement>> {
    let mut chain = vec![StructuringElement::singleton(2)];
    for k in 1..=n {
        let s = if k % 2 == 1 { 1 } else { -1 };
        let vs = [
            Point::new(vec![s, 0]),
            Point::new(vec![0, s]),
            Point::new(vec![s, s]),
        ];
        let next = decompose_build(chain.last().expect("non-empty"), &vs)?;
        chain.push(next);
    }
    Ok(chain)
}

/// L1 balls `{0} = Q_0 ⊆ Q_1 ⊆ … ⊆ Q_omega_max` in dimension `dim`.
/// `Q_{w+1} = ⋃_{v ∈ Q_1} (Q_w + v)`, a decomposition with `B1 = Q_w`.
pub fn l1_chain(omega_max: u32, dim: usize) -> Result<Vec<StructuringElement>> {
    if dim == 0 {
        return Err(MorphError::DimensionMismatch {
            expected: 1,
            got: 0,
        });
    }
    Ok((0..=omega_max).map(|w| l1_ball(w, dim)).collect())
}

/// Declarative recipe for building a verified sequence, e.g. from a JSON
/// file handed to the CLI.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SequenceRecipe {
    /// Start from `base` (a dot diagram with an `o` marker); each entry of
    /// `steps` lists the translate vectors absorbed at that step.
    TranslateUnion {
        base: String,
        steps: Vec<Vec<Point>>,
    },
    RectangleChain {
        lo1: Point,
        hi1: Point,
        lo2: Point,
        hi2: Point,
    },
    SquareIteration {
        n: usize,
    },
    L1Chain {
        omega_max: u32,
        dim: usize,
    },
    /// Verbatim list of dot diagrams; carries no construction guarantee.
    Explicit {
        elements: Vec<String>,
    },
}

impl SequenceRecipe {
    pub fn build(&self) -> Result<Vec<StructuringElement>> {
        match self {
            SequenceRecipe::TranslateUnion { base, steps } => {
                let mut chain = vec![parse_structuring_element(base)?];
                for vs in steps {
                    let next = decompose_build(chain.last().expect("non-empty"), vs)?;
                    chain.push(next);
                }
                Ok(chain)
            }
            SequenceRecipe::RectangleChain { lo1, hi1, lo2, hi2 } => {
                rectangle_chain(lo1, hi1, lo2, hi2)
            }
            SequenceRecipe::SquareIteration { n } => square_iteration(*n),
            SequenceRecipe::L1Chain { omega_max, dim } => l1_chain(*omega_max, *dim),
            SequenceRecipe::Explicit { elements } => elements
                .iter()
                .map(|d| parse_structuring_element(d))
                .collect(),
        }
    }

    /// Whether consecutive pairs are shift-included on the whole lattice by
    /// construction.
    pub fn guaranteed(&self) -> bool {
        !matches!(self, SequenceRecipe::Explicit { .. })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::pt2;
    use crate::inclusion::{check_whole_space, verify_sequence, Relation, SequenceScope};

    fn assert_chain_verifies(chain: &[StructuringElement]) {
        let reports = verify_sequence(chain, &SequenceScope::WholeSpace, Relation::Strict).unwrap();
        assert!(reports.iter().all(|r| r.verdict));
    }

    #[test]
    fn decompose_build_passes_whole_space() {
        let b1 = StructuringElement::from_points([pt2(0, 0), pt2(0, -1)]).unwrap();
        let b2 = decompose_build(&b1, &[pt2(0, 3)]).unwrap();
        assert_eq!(b2.len(), 4);
        assert!(b2.contains(&pt2(0, 2)));
        assert!(check_whole_space(&b1, &b2).unwrap().verdict);
    }

    #[test]
    fn rectangle_chain_steps_and_endpoints() {
        let chain = rectangle_chain(&pt2(0, 0), &pt2(0, 0), &pt2(-1, -1), &pt2(1, 1)).unwrap();
        // one step per added layer: 2 per axis on each side here
        assert_eq!(chain.len(), 5);
        assert_eq!(chain[0].len(), 1);
        assert_eq!(
            chain.last().unwrap().as_rectangle(),
            Some((pt2(-1, -1), pt2(1, 1)))
        );
        assert_chain_verifies(&chain);
    }

    #[test]
    fn rectangle_chain_rejects_bad_input() {
        // inner rectangle missing the origin
        assert!(rectangle_chain(&pt2(1, 1), &pt2(2, 2), &pt2(0, 0), &pt2(3, 3)).is_err());
        // inner exceeds outer
        assert!(rectangle_chain(&pt2(-2, 0), &pt2(0, 0), &pt2(-1, -1), &pt2(1, 1)).is_err());
        // inverted bounds
        assert!(rectangle_chain(&pt2(0, 0), &pt2(-1, 0), &pt2(0, 0), &pt2(0, 0)).is_err());
    }

    #[test]
    fn square_iteration_alternates_anchor() {
        let chain = square_iteration(3).unwrap();
        assert_eq!(chain.len(), 4);
        assert_eq!(chain[1].as_rectangle(), Some((pt2(0, 0), pt2(1, 1))));
        assert_eq!(chain[2].as_rectangle(), Some((pt2(-1, -1), pt2(1, 1))));
        assert_eq!(chain[3].as_rectangle(), Some((pt2(-1, -1), pt2(2, 2))));
        assert_chain_verifies(&chain);
    }

    #[test]
    fn l1_chain_verifies() {
        let chain = l1_chain(3, 2).unwrap();
        assert_eq!(chain.len(), 4);
        assert_eq!(chain[2].len(), 13);
        assert_eq!(chain[3].len(), 25);
        assert_chain_verifies(&chain);

        assert_chain_verifies(&l1_chain(2, 3).unwrap());
    }

    #[test]
    fn recipes_roundtrip_and_build() {
        let recipes = [
            r#"{"kind":"translate-union","base":"o#","steps":[[[0,1]],[[2,0]]]}"#,
            r#"{"kind":"rectangle-chain","lo1":[0,0],"hi1":[0,0],"lo2":[-1,0],"hi2":[1,1]}"#,
            r#"{"kind":"square-iteration","n":2}"#,
            r#"{"kind":"l1-chain","omega_max":2,"dim":2}"#,
        ];
        for text in recipes {
            let recipe: SequenceRecipe = serde_json::from_str(text).unwrap();
            let chain = recipe.build().unwrap();
            assert!(chain.len() >= 2);
            assert_chain_verifies(&chain);
            let back = serde_json::to_string(&recipe).unwrap();
            let reparsed: SequenceRecipe = serde_json::from_str(&back).unwrap();
            assert_eq!(
                format!("{reparsed:?}"),
                format!("{recipe:?}")
            );
        }
    }
}
