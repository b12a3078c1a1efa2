//! Exhaustive verification of the zero-set nesting properties on all binary
//! images over a small pixel set.
//!
//! Threshold decomposition makes the binary sweep conclusive for grayscale
//! images as well: every flat operator commutes with thresholding, and the
//! zero set of a result equals the zero set of the same operator applied to
//! the 0-threshold of the input. An image is a `u64` with bit `n-1-i` holding
//! the value at the `i`-th pixel in lexicographic order, so numeric order on
//! masks is lexicographic order on images and `min` picks the canonical
//! counterexample deterministically, also under parallel reduction.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{MorphError, Result};
use crate::geometry::{negate, PixelSet, Point, PointSet, StructuringElement};
use crate::image::Image;
use crate::inclusion::{check_weak_negative, check_weak_positive, check_whole_space, Counterexample};

/// Number of pixels above which the sweep is farmed out to rayon.
const PARALLEL_THRESHOLD: usize = 16;

/// Hard ceiling imposed by the `u64` representation.
pub const MAX_PIXELS: usize = 63;

/// Flat erosion/dilation/opening/closing on binary images packed into `u64`
/// words, for one structuring element over one pixel set.
pub struct BinaryOperator {
    points: Vec<Point>,
    ero_masks: Vec<u64>,
    dil_masks: Vec<u64>,
}

impl BinaryOperator {
    pub fn new(b: &StructuringElement, p: &PixelSet) -> Result<Self> {
        if b.dim() != p.dim() {
            return Err(MorphError::DimensionMismatch {
                expected: p.dim(),
                got: b.dim(),
            });
        }
        if p.len() > MAX_PIXELS {
            return Err(MorphError::CapExceeded {
                size: p.len(),
                cap: MAX_PIXELS,
            });
        }
        let points: Vec<Point> = p.iter().cloned().collect();
        let n = points.len();
        let bit_of = |q: &Point| -> Option<u64> {
            points
                .binary_search(q)
                .ok()
                .map(|i| 1u64 << (n - 1 - i))
        };
        let mut ero_masks = Vec::with_capacity(n);
        let mut dil_masks = Vec::with_capacity(n);
        for x in &points {
            let mut ero = 0;
            let mut dil = 0;
            for bv in b.iter() {
                if let Some(bit) = bit_of(&x.add(bv)) {
                    ero |= bit;
                }
                if let Some(bit) = bit_of(&x.sub(bv)) {
                    dil |= bit;
                }
            }
            ero_masks.push(ero);
            dil_masks.push(dil);
        }
        Ok(BinaryOperator {
            points,
            ero_masks,
            dil_masks,
        })
    }

    pub fn pixel_count(&self) -> usize {
        self.points.len()
    }

    /// All pixels set.
    pub fn full(&self) -> u64 {
        if self.points.is_empty() {
            0
        } else {
            (1u64 << self.points.len()) - 1
        }
    }

    pub fn erosion(&self, g: u64) -> u64 {
        let n = self.points.len();
        let mut out = 0;
        for (i, &mask) in self.ero_masks.iter().enumerate() {
            if g & mask == mask {
                out |= 1 << (n - 1 - i);
            }
        }
        out
    }

    pub fn dilation(&self, g: u64) -> u64 {
        let n = self.points.len();
        let mut out = 0;
        for (i, &mask) in self.dil_masks.iter().enumerate() {
            if g & mask != 0 {
                out |= 1 << (n - 1 - i);
            }
        }
        out
    }

    pub fn opening(&self, g: u64) -> u64 {
        self.dilation(self.erosion(g))
    }

    pub fn closing(&self, g: u64) -> u64 {
        self.erosion(self.dilation(g))
    }

    /// Lexicographically least pixel whose bit is set.
    pub fn first_pixel(&self, bits: u64) -> Option<&Point> {
        if bits == 0 {
            return None;
        }
        let high = 63 - bits.leading_zeros() as usize;
        Some(&self.points[self.points.len() - 1 - high])
    }

    pub fn image_from_bits(&self, bits: u64, p: &PixelSet) -> Result<Image> {
        let n = self.points.len();
        Image::from_fn(p.clone(), |q| {
            match self.points.binary_search(q) {
                Ok(i) if bits & (1 << (n - 1 - i)) != 0 => 1.0,
                _ => 0.0,
            }
        })
    }

    pub fn bits_from_image(&self, g: &Image) -> Result<u64> {
        let n = self.points.len();
        let mut bits = 0;
        for (i, q) in self.points.iter().enumerate() {
            let v = g.value(q).ok_or(MorphError::DomainMismatch)?;
            if v > 0.0 {
                bits |= 1 << (n - 1 - i);
            }
        }
        Ok(bits)
    }
}

/// The bit masks of all `2^|P|` binary images in lexicographic order.
pub fn enumerate_binary_images(p: &PixelSet, cap: usize) -> Result<impl Iterator<Item = u64>> {
    let n = p.len();
    if n > cap.min(MAX_PIXELS) {
        return Err(MorphError::CapExceeded {
            size: n,
            cap: cap.min(MAX_PIXELS),
        });
    }
    Ok(0..1u64 << n)
}

/// A binary image and pixel violating one of the nesting properties.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OracleCounterexample {
    /// Bit mask of the image; bit `n-1-i` is the `i`-th lex pixel.
    pub image_bits: u64,
    pub pixel: Point,
}

/// Outcome of the exhaustive sweep: whether every binary image satisfies
/// `z(O_{B1} g) ⊆ z(O_{B2} g)` and `z(C_{B2} g) ⊆ z(C_{B1} g)`, with the
/// least counterexample (least image, then least pixel) for each failure.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PropertyVerdict {
    pub holds_opening: bool,
    pub holds_closing: bool,
    pub opening_counterexample: Option<OracleCounterexample>,
    pub closing_counterexample: Option<OracleCounterexample>,
    pub images_checked: u64,
}

/// Sweeps all binary images over `P` and checks both zero-set nesting
/// properties for the pair `(B1, B2)`.
pub fn property_holds(
    b1: &StructuringElement,
    b2: &StructuringElement,
    p: &PixelSet,
    cap: usize,
) -> Result<PropertyVerdict> {
    let op1 = BinaryOperator::new(b1, p)?;
    let op2 = BinaryOperator::new(b2, p)?;
    let total = {
        let mut it = enumerate_binary_images(p, cap)?;
        // range iterator: recover the bound rather than counting
        let _ = &mut it;
        1u64 << p.len()
    };

    // violation masks per image; zero means the property holds there
    let violations = |g: u64| -> (u64, u64) {
        let open = !op1.opening(g) & op2.opening(g);
        let close = !op2.closing(g) & op1.closing(g);
        (open & op1.full(), close & op1.full())
    };

    let (open_cex, close_cex) = if p.len() >= PARALLEL_THRESHOLD {
        (0..total)
            .into_par_iter()
            .fold(
                || (None, None),
                |(mut open, mut close): (Option<u64>, Option<u64>), g| {
                    let (ov, cv) = violations(g);
                    if open.is_none() && ov != 0 {
                        open = Some(g);
                    }
                    if close.is_none() && cv != 0 {
                        close = Some(g);
                    }
                    (open, close)
                },
            )
            .reduce(
                || (None, None),
                |(a_o, a_c), (b_o, b_c)| {
                    let min = |x: Option<u64>, y: Option<u64>| match (x, y) {
                        (Some(a), Some(b)) => Some(a.min(b)),
                        (a, b) => a.or(b),
                    };
                    (min(a_o, b_o), min(a_c, b_c))
                },
            )
    } else {
        let mut open = None;
        let mut close = None;
        for g in 0..total {
            let (ov, cv) = violations(g);
            if open.is_none() && ov != 0 {
                open = Some(g);
            }
            if close.is_none() && cv != 0 {
                close = Some(g);
            }
            if open.is_some() && close.is_some() {
                break;
            }
        }
        (open, close)
    };

    let materialize = |g: Option<u64>, pick_open: bool| {
        g.map(|g| {
            let (ov, cv) = violations(g);
            let bits = if pick_open { ov } else { cv };
            OracleCounterexample {
                image_bits: g,
                pixel: op1
                    .first_pixel(bits)
                    .expect("violation mask is non-zero")
                    .clone(),
            }
        })
    };

    Ok(PropertyVerdict {
        holds_opening: open_cex.is_none(),
        holds_closing: close_cex.is_none(),
        opening_counterexample: materialize(open_cex, true),
        closing_counterexample: materialize(close_cex, false),
        images_checked: total,
    })
}

/// Side-by-side comparison of the exhaustive sweep with the weak decision
/// procedures: the opening property must coincide with the weak negative
/// check and the closing property with the weak positive check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EquivalenceAudit {
    pub verdict: PropertyVerdict,
    pub weak_negative: bool,
    pub weak_positive: bool,
}

impl EquivalenceAudit {
    pub fn consistent(&self) -> bool {
        self.verdict.holds_opening == self.weak_negative
            && self.verdict.holds_closing == self.weak_positive
    }
}

/// Runs both routes on one instance. `B1 ⊆ B2` is deliberately not required:
/// the sign properties and the nesting of zero sets are meaningful without it.
pub fn equivalence_audit(
    b1: &StructuringElement,
    b2: &StructuringElement,
    p: &PixelSet,
    cap: usize,
) -> Result<EquivalenceAudit> {
    Ok(EquivalenceAudit {
        verdict: property_holds(b1, b2, p, cap)?,
        weak_negative: check_weak_negative(b1, b2, p)?.verdict,
        weak_positive: check_weak_positive(b1, b2, p)?.verdict,
    })
}

/// A concrete image violating a nesting property at `pixel`.
#[derive(Clone, Debug)]
pub struct PropertyWitness {
    pub image: Image,
    pub pixel: Point,
}

fn translate_failure(
    b1: &StructuringElement,
    b2: &StructuringElement,
) -> Result<Option<Point>> {
    let report = check_whole_space(b1, b2)?;
    match report.counterexample {
        Some(Counterexample::Translate { b2: v, .. }) => Ok(Some(v)),
        // a bare subset failure keeps B2 a union of B1-translates, which is
        // enough for the nesting of zero sets; no image witness exists
        _ => Ok(None),
    }
}

fn difference_cloud(b1: &StructuringElement, anchor: &Point) -> Result<PointSet> {
    let mut points = Vec::new();
    for a in b1.iter() {
        for b in b1.iter() {
            points.push(anchor.sub(a).add(b));
        }
    }
    PointSet::from_points(points)
}

/// When whole-space shift inclusion fails through a translate counterexample
/// `b2`, builds a binary image whose openings break the zero-set nesting at
/// pixel `b2`: the indicator of `B2` on the domain `B2 ∪ (b2 - B1 + B1)`.
pub fn whole_space_opening_witness(
    b1: &StructuringElement,
    b2: &StructuringElement,
) -> Result<Option<PropertyWitness>> {
    let Some(bad) = translate_failure(b1, b2)? else {
        return Ok(None);
    };
    let domain = PixelSet::from_set(b2.points().union(&difference_cloud(b1, &bad)?)?)?;
    let image = Image::from_fn(domain, |q| if b2.contains(q) { 1.0 } else { 0.0 })?;
    Ok(Some(PropertyWitness { image, pixel: bad }))
}

/// Dual construction for closings: the complement of the indicator of `-B2`
/// on `(-B2) ∪ (-b2 + B1 - B1)`, breaking the nesting at pixel `-b2`.
pub fn whole_space_closing_witness(
    b1: &StructuringElement,
    b2: &StructuringElement,
) -> Result<Option<PropertyWitness>> {
    let Some(bad) = translate_failure(b1, b2)? else {
        return Ok(None);
    };
    let neg_b2 = negate(b2.points());
    let cloud = {
        let mut points = Vec::new();
        for a in b1.iter() {
            for b in b1.iter() {
                points.push(bad.neg().add(a).sub(b));
            }
        }
        PointSet::from_points(points)?
    };
    let domain = PixelSet::from_set(neg_b2.union(&cloud)?)?;
    let image = Image::from_fn(domain, |q| if neg_b2.contains(q) { 0.0 } else { 1.0 })?;
    Ok(Some(PropertyWitness {
        image,
        pixel: bad.neg(),
    }))
}
