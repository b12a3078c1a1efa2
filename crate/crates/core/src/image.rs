//! Images over arbitrary finite pixel sets and the four flat operators.
//!
//! Every operator only ever selects existing pixel values (min/max), so all
//! comparisons in this crate are exact float equality on purpose.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{MorphError, Result};
use crate::geometry::{minkowski_diff, minkowski_sum, PixelSet, Point, PointSet, StructuringElement};

/// A total non-negative function on a finite pixel set.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Image {
    domain: PixelSet,
    values: BTreeMap<Point, f64>,
}

impl Image {
    pub fn new(domain: PixelSet, values: BTreeMap<Point, f64>) -> Result<Self> {
        for p in domain.iter() {
            match values.get(p) {
                None => {
                    return Err(MorphError::MissingValue {
                        point: p.to_string(),
                    })
                }
                Some(&v) if v < 0.0 || !v.is_finite() => {
                    return Err(MorphError::NegativeValue {
                        point: p.to_string(),
                        value: v,
                    })
                }
                _ => {}
            }
        }
        let values = values
            .into_iter()
            .filter(|(p, _)| domain.contains(p))
            .collect();
        Ok(Image { domain, values })
    }

    pub fn from_fn(domain: PixelSet, f: impl Fn(&Point) -> f64) -> Result<Self> {
        let values = domain.iter().map(|p| (p.clone(), f(p))).collect();
        Image::new(domain, values)
    }

    pub fn constant(domain: PixelSet, value: f64) -> Result<Self> {
        Image::from_fn(domain, |_| value)
    }

    /// Builds an image over the full rectangle spanned by `rows`, with `lo`
    /// the coordinate of the bottom-left cell and rows running top to bottom.
    pub fn from_grid(lo: &Point, rows: &[&[f64]]) -> Result<Self> {
        assert_eq!(lo.dim(), 2, "grids are 2-d");
        let height = rows.len() as i64;
        let width = rows.first().map_or(0, |r| r.len()) as i64;
        let hi = Point::new(vec![lo.coords()[0] + width - 1, lo.coords()[1] + height - 1]);
        let domain = PixelSet::rectangle(lo, &hi)?;
        let mut values = BTreeMap::new();
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                let p = Point::new(vec![
                    lo.coords()[0] + c as i64,
                    lo.coords()[1] + height - 1 - r as i64,
                ]);
                values.insert(p, v);
            }
        }
        Image::new(domain, values)
    }

    pub fn domain(&self) -> &PixelSet {
        &self.domain
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn value(&self, p: &Point) -> Option<f64> {
        self.values.get(p).copied()
    }

    pub fn values(&self) -> impl Iterator<Item = (&Point, f64)> {
        self.values.iter().map(|(p, &v)| (p, v))
    }

    pub fn is_binary(&self) -> bool {
        self.values.values().all(|&v| v == 0.0 || v == 1.0)
    }

    fn check_se(&self, b: &StructuringElement) -> Result<()> {
        if b.dim() != self.dim() {
            return Err(MorphError::DimensionMismatch {
                expected: self.dim(),
                got: b.dim(),
            });
        }
        Ok(())
    }

    /// `min g((x + B) ∩ P)`; never empty because the origin is in `B`.
    pub fn erosion(&self, b: &StructuringElement) -> Result<Image> {
        self.check_se(b)?;
        let values = self
            .domain
            .iter()
            .map(|x| {
                let m = b
                    .iter()
                    .filter_map(|off| self.values.get(&x.add(off)))
                    .fold(f64::INFINITY, |acc, &v| acc.min(v));
                debug_assert!(m.is_finite());
                (x.clone(), m)
            })
            .collect();
        Ok(Image {
            domain: self.domain.clone(),
            values,
        })
    }

    /// `max g((x - B) ∩ P)`.
    pub fn dilation(&self, b: &StructuringElement) -> Result<Image> {
        self.check_se(b)?;
        let values = self
            .domain
            .iter()
            .map(|x| {
                let m = b
                    .iter()
                    .filter_map(|off| self.values.get(&x.sub(off)))
                    .fold(f64::NEG_INFINITY, |acc, &v| acc.max(v));
                debug_assert!(m.is_finite());
                (x.clone(), m)
            })
            .collect();
        Ok(Image {
            domain: self.domain.clone(),
            values,
        })
    }

    /// Opening: dilation after erosion.
    pub fn opening(&self, b: &StructuringElement) -> Result<Image> {
        self.erosion(b)?.dilation(b)
    }

    /// Closing: erosion after dilation.
    pub fn closing(&self, b: &StructuringElement) -> Result<Image> {
        self.dilation(b)?.erosion(b)
    }

    /// Binary image that is 0 where `g(x) <= t` and 1 elsewhere.
    pub fn threshold(&self, t: f64) -> Image {
        let values = self
            .values
            .iter()
            .map(|(p, &v)| (p.clone(), if v <= t { 0.0 } else { 1.0 }))
            .collect();
        Image {
            domain: self.domain.clone(),
            values,
        }
    }

    /// `{ x in P : g(x) = 0 }`.
    pub fn zero_set(&self) -> PointSet {
        let mut out = PointSet::empty(self.dim());
        for (p, &v) in &self.values {
            if v == 0.0 {
                out.insert(p.clone()).expect("domain points share dimension");
            }
        }
        out
    }

    /// Pointwise order; errors when the domains differ.
    pub fn leq(&self, other: &Image) -> Result<bool> {
        if self.domain != other.domain {
            return Err(MorphError::DomainMismatch);
        }
        Ok(self
            .values
            .iter()
            .all(|(p, &v)| v <= other.values[p]))
    }

    /// Zero-pads onto the extended domain `(P + Bn) ∪ (P - Bn)`.
    pub fn extend(&self, bn: &StructuringElement) -> Result<Image> {
        self.check_se(bn)?;
        let grown = minkowski_sum(self.domain.points(), bn.points())?
            .union(&minkowski_diff(self.domain.points(), bn.points())?)?;
        let domain = PixelSet::from_set(grown)?;
        let values = domain
            .iter()
            .map(|p| (p.clone(), self.values.get(p).copied().unwrap_or(0.0)))
            .collect();
        Ok(Image { domain, values })
    }

    /// Finite set of values taken by the image, sorted ascending.
    pub fn value_levels(&self) -> Vec<f64> {
        let mut levels: Vec<f64> = self.values.values().copied().collect();
        levels.sort_by(|a, b| a.partial_cmp(b).unwrap());
        levels.dedup();
        levels
    }
}

/// Opening- or closing-based filtration.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FilterMode {
    Opening,
    Closing,
}

/// Per-step zero-set cardinalities of the filtration `O_{B_i}(g)` (or
/// `C_{B_i}(g)`). Unless `force` is set, consecutive pairs are verified for
/// the weak property in the sign that governs the chosen operator, against
/// the image's own domain.
pub fn granulometric_curve(
    g: &Image,
    sequence: &[StructuringElement],
    mode: FilterMode,
    force: bool,
) -> Result<Vec<(usize, usize)>> {
    if !force {
        verify_for_mode(g.domain(), sequence, mode)?;
    }
    let mut curve = Vec::with_capacity(sequence.len());
    for (i, b) in sequence.iter().enumerate() {
        let filtered = match mode {
            FilterMode::Opening => g.opening(b)?,
            FilterMode::Closing => g.closing(b)?,
        };
        curve.push((i, filtered.zero_set().len()));
    }
    Ok(curve)
}

fn verify_for_mode(p: &PixelSet, sequence: &[StructuringElement], mode: FilterMode) -> Result<()> {
    use crate::inclusion::{check_weak_negative, check_weak_positive};
    for (i, pair) in sequence.windows(2).enumerate() {
        let report = match mode {
            FilterMode::Opening => check_weak_negative(&pair[0], &pair[1], p)?,
            FilterMode::Closing => check_weak_positive(&pair[0], &pair[1], p)?,
        };
        if !report.verdict {
            return Err(MorphError::UnverifiedSequence { step: i });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{l1_ball, pt2};

    fn square3() -> StructuringElement {
        let points = PixelSet::rectangle(&pt2(-1, -1), &pt2(1, 1)).unwrap();
        StructuringElement::new(points.points().clone()).unwrap()
    }

    fn counterexample_image() -> Image {
        Image::from_grid(
            &pt2(0, 0),
            &[
                &[0., 0., 0., 0., 0., 0.],
                &[0., 0., 1., 1., 1., 0.],
                &[0., 0., 1., 1., 1., 0.],
                &[0., 1., 1., 1., 1., 0.],
                &[0., 0., 1., 0., 0., 0.],
                &[0., 0., 0., 0., 0., 0.],
            ],
        )
        .unwrap()
    }

    #[test]
    fn erosion_by_cross_matches_hand_computation() {
        let g = counterexample_image();
        let expected = Image::from_grid(
            &pt2(0, 0),
            &[
                &[0., 0., 0., 0., 0., 0.],
                &[0., 0., 0., 0., 0., 0.],
                &[0., 0., 0., 1., 0., 0.],
                &[0., 0., 1., 0., 0., 0.],
                &[0., 0., 0., 0., 0., 0.],
                &[0., 0., 0., 0., 0., 0.],
            ],
        )
        .unwrap();
        assert_eq!(g.erosion(&l1_ball(1, 2)).unwrap(), expected);
    }

    #[test]
    fn opening_by_cross_matches_hand_computation() {
        let g = counterexample_image();
        let expected = Image::from_grid(
            &pt2(0, 0),
            &[
                &[0., 0., 0., 0., 0., 0.],
                &[0., 0., 0., 1., 0., 0.],
                &[0., 0., 1., 1., 1., 0.],
                &[0., 1., 1., 1., 0., 0.],
                &[0., 0., 1., 0., 0., 0.],
                &[0., 0., 0., 0., 0., 0.],
            ],
        )
        .unwrap();
        assert_eq!(g.opening(&l1_ball(1, 2)).unwrap(), expected);
    }

    #[test]
    fn opening_by_square_matches_hand_computation() {
        let g = counterexample_image();
        let ero = Image::from_grid(
            &pt2(0, 0),
            &[
                &[0., 0., 0., 0., 0., 0.],
                &[0., 0., 0., 0., 0., 0.],
                &[0., 0., 0., 1., 0., 0.],
                &[0., 0., 0., 0., 0., 0.],
                &[0., 0., 0., 0., 0., 0.],
                &[0., 0., 0., 0., 0., 0.],
            ],
        )
        .unwrap();
        let open = Image::from_grid(
            &pt2(0, 0),
            &[
                &[0., 0., 0., 0., 0., 0.],
                &[0., 0., 1., 1., 1., 0.],
                &[0., 0., 1., 1., 1., 0.],
                &[0., 0., 1., 1., 1., 0.],
                &[0., 0., 0., 0., 0., 0.],
                &[0., 0., 0., 0., 0., 0.],
            ],
        )
        .unwrap();
        assert_eq!(g.erosion(&square3()).unwrap(), ero);
        assert_eq!(g.opening(&square3()).unwrap(), open);
    }

    #[test]
    fn zero_sets_of_the_two_openings_are_not_nested() {
        let g = counterexample_image();
        let z1 = g.opening(&l1_ball(1, 2)).unwrap().zero_set();
        let z2 = g.opening(&square3()).unwrap().zero_set();
        assert!(!z1.is_subset(&z2));
        // the witness pixel
        assert!(z1.contains(&pt2(4, 4)));
        assert!(!z2.contains(&pt2(4, 4)));
    }

    #[test]
    fn singleton_element_is_identity() {
        let g = counterexample_image();
        let id = StructuringElement::singleton(2);
        assert_eq!(g.erosion(&id).unwrap(), g);
        assert_eq!(g.dilation(&id).unwrap(), g);
        assert_eq!(g.opening(&id).unwrap(), g);
        assert_eq!(g.closing(&id).unwrap(), g);
    }

    #[test]
    fn constant_image_is_fixed_by_erosion_and_dilation() {
        let p = PixelSet::rectangle(&pt2(0, 0), &pt2(3, 2)).unwrap();
        let g = Image::constant(p, 7.5).unwrap();
        assert_eq!(g.erosion(&square3()).unwrap(), g);
        assert_eq!(g.dilation(&l1_ball(1, 2)).unwrap(), g);
    }

    #[test]
    fn dilation_of_symmetric_element_uses_plus_window() {
        let g = counterexample_image();
        let b = l1_ball(1, 2);
        let dil = g.dilation(&b).unwrap();
        let via_plus = Image::from_fn(g.domain().clone(), |x| {
            b.iter()
                .filter_map(|off| g.value(&x.add(off)))
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .unwrap();
        assert_eq!(dil, via_plus);
    }

    #[test]
    fn threshold_edges() {
        let g = counterexample_image();
        assert_eq!(g.threshold(0.0), g);
        let all_zero = g.threshold(1.0);
        assert_eq!(all_zero.zero_set().len(), g.domain().len());
        assert_eq!(g.threshold(0.0).zero_set(), g.zero_set());
    }

    #[test]
    fn ordering_and_sandwich() {
        let g = counterexample_image();
        for b in [l1_ball(1, 2), square3()] {
            assert!(g.erosion(&b).unwrap().leq(&g).unwrap());
            assert!(g.leq(&g.dilation(&b).unwrap()).unwrap());
            assert!(g.opening(&b).unwrap().leq(&g).unwrap());
            assert!(g.leq(&g.closing(&b).unwrap()).unwrap());
        }
    }

    #[test]
    fn domain_mismatch_rejected() {
        let g = counterexample_image();
        let other = Image::constant(PixelSet::rectangle(&pt2(0, 0), &pt2(1, 1)).unwrap(), 0.0)
            .unwrap();
        assert!(g.leq(&other).is_err());
    }

    #[test]
    fn extend_grows_both_directions() {
        let p = PixelSet::rectangle(&pt2(0, 0), &pt2(1, 1)).unwrap();
        let g = Image::constant(p, 2.0).unwrap();
        let bn = square3();
        let extended = g.extend(&bn).unwrap();
        assert_eq!(
            extended.domain().as_rectangle(),
            Some(&(pt2(-1, -1), pt2(2, 2)))
        );
        // zero outside the original support
        for p in extended.domain().iter() {
            let expected = if g.domain().contains(p) { 2.0 } else { 0.0 };
            assert_eq!(extended.value(p), Some(expected));
        }
        let id = StructuringElement::singleton(2);
        assert_eq!(g.extend(&id).unwrap(), g);
    }

    #[test]
    fn granulometry_identity_sequence() {
        let g = counterexample_image();
        let curve =
            granulometric_curve(&g, &[StructuringElement::singleton(2)], FilterMode::Opening, false)
                .unwrap();
        assert_eq!(curve, vec![(0, g.zero_set().len())]);
    }

    #[test]
    fn granulometry_refuses_unverified_pair() {
        let g = counterexample_image();
        let seq = [l1_ball(1, 2), square3()];
        let err = granulometric_curve(&g, &seq, FilterMode::Opening, false);
        assert!(matches!(err, Err(MorphError::UnverifiedSequence { step: 0 })));
        // forced run exists and exhibits the non-monotone hazard
        let curve = granulometric_curve(&g, &seq, FilterMode::Opening, true).unwrap();
        assert!(curve[0].1 > curve[1].1);
    }
}
