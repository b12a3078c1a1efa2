//! Points in the integer lattice, finite point sets, pixel sets, and
//! structuring elements, together with Minkowski arithmetic and the
//! restriction sets that drive every boundary-aware operator.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{MorphError, Result};

/// A lattice point in `Z^m`. The dimension `m` is carried at runtime and all
/// points taking part in one computation must agree on it.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point {
    coords: Vec<i64>,
}

impl Point {
    pub fn new(coords: Vec<i64>) -> Self {
        assert!(!coords.is_empty(), "points must have dimension >= 1");
        Point { coords }
    }

    pub fn origin(dim: usize) -> Self {
        Point::new(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Point) -> Point {
        Point::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> Point {
        Point::new(self.coords.iter().map(|c| -c).collect())
    }

    pub fn l1_norm(&self) -> i64 {
        self.coords.iter().map(|c| c.abs()).sum()
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Convenience constructor for 2-d points, used heavily in tests and fixtures.
pub fn pt2(x: i64, y: i64) -> Point {
    Point::new(vec![x, y])
}

/// A finite set of points sharing one dimension, kept in lexicographic order
/// so every iteration, witness search, and counterexample report is
/// deterministic.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct PointSet {
    dim: usize,
    points: BTreeSet<Point>,
}

impl PointSet {
    pub fn empty(dim: usize) -> Self {
        PointSet {
            dim,
            points: BTreeSet::new(),
        }
    }

    pub fn from_points<I>(points: I) -> Result<Self>
    where
        I: IntoIterator<Item = Point>,
    {
        let mut iter = points.into_iter();
        let first = iter.next().ok_or(MorphError::EmptySet)?;
        let dim = first.dim();
        let mut set = BTreeSet::new();
        set.insert(first);
        for p in iter {
            if p.dim() != dim {
                return Err(MorphError::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
            set.insert(p);
        }
        Ok(PointSet { dim, points: set })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.contains(p)
    }

    pub fn insert(&mut self, p: Point) -> Result<()> {
        if p.dim() != self.dim {
            return Err(MorphError::DimensionMismatch {
                expected: self.dim,
                got: p.dim(),
            });
        }
        self.points.insert(p);
        Ok(())
    }

    /// Iterates in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = &Point> + Clone {
        self.points.iter()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.points.is_subset(&other.points)
    }

    pub fn union(&self, other: &PointSet) -> Result<PointSet> {
        self.check_dim(other)?;
        let mut points = self.points.clone();
        points.extend(other.points.iter().cloned());
        Ok(PointSet {
            dim: self.dim,
            points,
        })
    }

    pub fn translate(&self, v: &Point) -> Result<PointSet> {
        if v.dim() != self.dim {
            return Err(MorphError::DimensionMismatch {
                expected: self.dim,
                got: v.dim(),
            });
        }
        Ok(PointSet {
            dim: self.dim,
            points: self.points.iter().map(|p| p.add(v)).collect(),
        })
    }

    fn check_dim(&self, other: &PointSet) -> Result<()> {
        if self.dim != other.dim {
            return Err(MorphError::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.points.iter()).finish()
    }
}

impl TryFrom<Vec<Point>> for PointSet {
    type Error = MorphError;
    fn try_from(v: Vec<Point>) -> Result<Self> {
        PointSet::from_points(v)
    }
}

impl From<PointSet> for Vec<Point> {
    fn from(s: PointSet) -> Vec<Point> {
        s.points.into_iter().collect()
    }
}

/// Minkowski sum `{a + b | a in A, b in B}`.
pub fn minkowski_sum(a: &PointSet, b: &PointSet) -> Result<PointSet> {
    a.check_dim(b)?;
    let mut points = BTreeSet::new();
    for x in a.iter() {
        for y in b.iter() {
            points.insert(x.add(y));
        }
    }
    Ok(PointSet {
        dim: a.dim,
        points,
    })
}

/// Minkowski difference `{a - b | a in A, b in B}`.
pub fn minkowski_diff(a: &PointSet, b: &PointSet) -> Result<PointSet> {
    a.check_dim(b)?;
    let mut points = BTreeSet::new();
    for x in a.iter() {
        for y in b.iter() {
            points.insert(x.sub(y));
        }
    }
    Ok(PointSet {
        dim: a.dim,
        points,
    })
}

/// Pointwise negation `-B`.
pub fn negate(b: &PointSet) -> PointSet {
    PointSet {
        dim: b.dim,
        points: b.iter().map(Point::neg).collect(),
    }
}

/// `B` is symmetric iff `B = -B`.
pub fn is_symmetric(b: &PointSet) -> bool {
    b.iter().all(|p| b.contains(&p.neg()))
}

/// A finite structuring element: a point set containing the origin.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "PointSet", into = "PointSet")]
pub struct StructuringElement {
    points: PointSet,
}

impl StructuringElement {
    pub fn new(points: PointSet) -> Result<Self> {
        if !points.contains(&Point::origin(points.dim())) {
            return Err(MorphError::MissingOrigin);
        }
        Ok(StructuringElement { points })
    }

    pub fn from_points<I>(points: I) -> Result<Self>
    where
        I: IntoIterator<Item = Point>,
    {
        StructuringElement::new(PointSet::from_points(points)?)
    }

    pub fn singleton(dim: usize) -> Self {
        StructuringElement {
            points: PointSet::from_points([Point::origin(dim)]).unwrap(),
        }
    }

    pub fn dim(&self) -> usize {
        self.points.dim()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.contains(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Point> + Clone {
        self.points.iter()
    }

    pub fn is_symmetric(&self) -> bool {
        is_symmetric(&self.points)
    }

    pub fn is_subset(&self, other: &StructuringElement) -> bool {
        self.points.is_subset(&other.points)
    }

    /// `B(x; P, +) = { b in B : x + b in P }`. Always contains the origin
    /// when `x` lies in `P`.
    pub fn restrict_plus(&self, x: &Point, p: &PixelSet) -> Result<PointSet> {
        self.restrict(x, p, true)
    }

    /// `B(x; P, -) = { b in B : x - b in P }`.
    pub fn restrict_minus(&self, x: &Point, p: &PixelSet) -> Result<PointSet> {
        self.restrict(x, p, false)
    }

    fn restrict(&self, x: &Point, p: &PixelSet, plus: bool) -> Result<PointSet> {
        if !p.contains(x) {
            return Err(MorphError::PointNotInDomain {
                point: x.to_string(),
            });
        }
        let mut out = PointSet::empty(self.dim());
        for b in self.iter() {
            let y = if plus { x.add(b) } else { x.sub(b) };
            if p.contains(&y) {
                out.points.insert(b.clone());
            }
        }
        debug_assert!(out.contains(&Point::origin(self.dim())));
        Ok(out)
    }

    /// Bounding box `(lo, hi)`.
    pub fn bounds(&self) -> (Point, Point) {
        bounds(&self.points).expect("structuring element is non-empty")
    }

    /// Some iff the element exactly fills its bounding box.
    pub fn as_rectangle(&self) -> Option<(Point, Point)> {
        let (lo, hi) = self.bounds();
        let cells: i64 = lo
            .coords()
            .iter()
            .zip(hi.coords())
            .map(|(l, h)| h - l + 1)
            .product();
        (cells == self.len() as i64).then_some((lo, hi))
    }
}

impl TryFrom<PointSet> for StructuringElement {
    type Error = MorphError;
    fn try_from(points: PointSet) -> Result<Self> {
        StructuringElement::new(points)
    }
}

impl From<StructuringElement> for PointSet {
    fn from(se: StructuringElement) -> PointSet {
        se.points
    }
}

fn bounds(set: &PointSet) -> Option<(Point, Point)> {
    let mut iter = set.iter();
    let first = iter.next()?;
    let mut lo = first.coords().to_vec();
    let mut hi = lo.clone();
    for p in iter {
        for (i, &c) in p.coords().iter().enumerate() {
            lo[i] = lo[i].min(c);
            hi[i] = hi[i].max(c);
        }
    }
    Some((Point::new(lo), Point::new(hi)))
}

/// A finite image domain. Rectangular domains carry their bounds so that
/// membership tests are O(m) instead of a set lookup.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "PointSet", into = "PointSet")]
pub struct PixelSet {
    points: PointSet,
    rect: Option<(Point, Point)>,
}

impl PixelSet {
    pub fn from_points<I>(points: I) -> Result<Self>
    where
        I: IntoIterator<Item = Point>,
    {
        PixelSet::from_set(PointSet::from_points(points)?)
    }

    pub fn from_set(points: PointSet) -> Result<Self> {
        if points.is_empty() {
            return Err(MorphError::EmptySet);
        }
        let rect = detect_rectangle(&points);
        Ok(PixelSet { points, rect })
    }

    /// The lattice rectangle `prod [lo_i, hi_i]`.
    pub fn rectangle(lo: &Point, hi: &Point) -> Result<Self> {
        if lo.dim() != hi.dim() {
            return Err(MorphError::DimensionMismatch {
                expected: lo.dim(),
                got: hi.dim(),
            });
        }
        for (axis, (&l, &h)) in lo.coords().iter().zip(hi.coords()).enumerate() {
            if l > h {
                return Err(MorphError::InvalidRectangle { lo: l, hi: h, axis });
            }
        }
        let points = PointSet::from_points(enumerate_box(lo, hi))?;
        Ok(PixelSet {
            points,
            rect: Some((lo.clone(), hi.clone())),
        })
    }

    pub fn dim(&self) -> usize {
        self.points.dim()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn contains(&self, p: &Point) -> bool {
        if p.dim() != self.dim() {
            return false;
        }
        match &self.rect {
            Some((lo, hi)) => p
                .coords()
                .iter()
                .zip(lo.coords().iter().zip(hi.coords()))
                .all(|(&c, (&l, &h))| l <= c && c <= h),
            None => self.points.contains(p),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &Point> + Clone {
        self.points.iter()
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn as_rectangle(&self) -> Option<&(Point, Point)> {
        self.rect.as_ref()
    }

    pub fn bounds(&self) -> (Point, Point) {
        bounds(&self.points).expect("pixel set is non-empty")
    }
}

impl TryFrom<PointSet> for PixelSet {
    type Error = MorphError;
    fn try_from(points: PointSet) -> Result<Self> {
        PixelSet::from_set(points)
    }
}

impl From<PixelSet> for PointSet {
    fn from(p: PixelSet) -> PointSet {
        p.points
    }
}

fn detect_rectangle(points: &PointSet) -> Option<(Point, Point)> {
    let (lo, hi) = bounds(points)?;
    let cells: i64 = lo
        .coords()
        .iter()
        .zip(hi.coords())
        .map(|(l, h)| h - l + 1)
        .product();
    (cells == points.len() as i64).then_some((lo, hi))
}

fn enumerate_box(lo: &Point, hi: &Point) -> Vec<Point> {
    let dim = lo.dim();
    let mut out = Vec::new();
    let mut cur = lo.coords().to_vec();
    loop {
        out.push(Point::new(cur.clone()));
        let mut axis = dim;
        loop {
            if axis == 0 {
                return out;
            }
            axis -= 1;
            if cur[axis] < hi.coords()[axis] {
                cur[axis] += 1;
                break;
            }
            cur[axis] = lo.coords()[axis];
        }
    }
}

/// The L1 ball `Q_w = { x in Z^m : |x|_1 <= w }`, itself a structuring
/// element (it contains the origin and is symmetric).
pub fn l1_ball(omega: u32, dim: usize) -> StructuringElement {
    assert!(dim >= 1);
    let w = omega as i64;
    let lo = Point::new(vec![-w; dim]);
    let hi = Point::new(vec![w; dim]);
    let points = enumerate_box(&lo, &hi)
        .into_iter()
        .filter(|p| p.l1_norm() <= w);
    StructuringElement::from_points(points).expect("contains the origin")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(points: &[(i64, i64)]) -> PointSet {
        PointSet::from_points(points.iter().map(|&(x, y)| pt2(x, y))).unwrap()
    }

    pub(crate) fn cross() -> StructuringElement {
        StructuringElement::from_points([
            pt2(0, 0),
            pt2(1, 0),
            pt2(-1, 0),
            pt2(0, 1),
            pt2(0, -1),
        ])
        .unwrap()
    }

    #[test]
    fn minkowski_sum_singleton_translates() {
        let a = set(&[(0, 0)]);
        let b = set(&[(1, 1)]);
        assert_eq!(minkowski_sum(&a, &b).unwrap(), set(&[(1, 1)]));
    }

    #[test]
    fn minkowski_sum_origin_is_identity() {
        let cross = cross();
        let id = set(&[(0, 0)]);
        assert_eq!(minkowski_sum(cross.points(), &id).unwrap(), *cross.points());
    }

    #[test]
    fn minkowski_sum_enumerates_all_pairs() {
        // {(0,0),(0,1)} + {(0,0),(1,0)}, all four sums listed by hand
        let a = set(&[(0, 0), (0, 1)]);
        let b = set(&[(0, 0), (1, 0)]);
        assert_eq!(
            minkowski_sum(&a, &b).unwrap(),
            set(&[(0, 0), (0, 1), (1, 0), (1, 1)])
        );
    }

    #[test]
    fn minkowski_diff_examples() {
        let a = set(&[(0, 0)]);
        let b = set(&[(0, 0), (1, 0)]);
        assert_eq!(minkowski_diff(&a, &b).unwrap(), set(&[(0, 0), (-1, 0)]));
        let c = cross();
        assert_eq!(
            minkowski_diff(c.points(), &set(&[(0, 0)])).unwrap(),
            *c.points()
        );
    }

    #[test]
    fn minkowski_dimension_mismatch() {
        let a = set(&[(0, 0)]);
        let b = PointSet::from_points([Point::new(vec![0])]).unwrap();
        assert!(matches!(
            minkowski_sum(&a, &b),
            Err(MorphError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn symmetry_checks() {
        assert!(cross().is_symmetric());
        let asym = StructuringElement::from_points([pt2(0, 0), pt2(1, 0), pt2(1, 1)]).unwrap();
        assert!(!asym.is_symmetric());
        assert!(StructuringElement::singleton(2).is_symmetric());
        let b = set(&[(0, 0), (1, 0), (1, 1)]);
        assert!(!is_symmetric(&b));
        assert_eq!(negate(&b), set(&[(0, 0), (-1, 0), (-1, -1)]));
    }

    #[test]
    fn symmetric_iff_negation_fixed() {
        let b = cross();
        assert_eq!(negate(b.points()), *b.points());
    }

    #[test]
    fn restriction_worked_example() {
        // P the 3x3 square centred at the origin, B the 2x2 square with
        // origin in the lower-left corner.
        let p = PixelSet::rectangle(&pt2(-1, -1), &pt2(1, 1)).unwrap();
        let b =
            StructuringElement::from_points([pt2(0, 0), pt2(1, 0), pt2(0, 1), pt2(1, 1)]).unwrap();

        assert_eq!(
            b.restrict_plus(&pt2(1, 1), &p).unwrap(),
            set(&[(0, 0)])
        );
        assert_eq!(b.restrict_minus(&pt2(1, 1), &p).unwrap(), *b.points());
        assert_eq!(
            b.restrict_plus(&pt2(0, 1), &p).unwrap(),
            set(&[(0, 0), (1, 0)])
        );
    }

    #[test]
    fn restriction_full_when_domain_covers() {
        let b = cross();
        let p = PixelSet::rectangle(&pt2(-3, -3), &pt2(3, 3)).unwrap();
        assert_eq!(b.restrict_plus(&pt2(0, 0), &p).unwrap(), *b.points());
        assert_eq!(b.restrict_minus(&pt2(0, 0), &p).unwrap(), *b.points());
    }

    #[test]
    fn restriction_rejects_outside_point() {
        let b = cross();
        let p = PixelSet::rectangle(&pt2(0, 0), &pt2(1, 1)).unwrap();
        assert!(b.restrict_plus(&pt2(5, 5), &p).is_err());
    }

    #[test]
    fn rectangle_enumeration_and_errors() {
        let p = PixelSet::rectangle(&pt2(0, 0), &pt2(2, 1)).unwrap();
        assert_eq!(p.len(), 6);
        assert!(p.contains(&pt2(2, 1)));
        assert!(!p.contains(&pt2(3, 0)));
        assert!(PixelSet::rectangle(&pt2(1, 0), &pt2(0, 0)).is_err());
    }

    #[test]
    fn rectangle_descriptor_detected_from_points() {
        let p = PixelSet::from_points([pt2(0, 0), pt2(0, 1), pt2(1, 0), pt2(1, 1)]).unwrap();
        assert_eq!(p.as_rectangle(), Some(&(pt2(0, 0), pt2(1, 1))));
        let q = PixelSet::from_points([pt2(0, 0), pt2(1, 1)]).unwrap();
        assert!(q.as_rectangle().is_none());
    }

    #[test]
    fn l1_balls() {
        assert_eq!(l1_ball(0, 2), StructuringElement::singleton(2));
        assert_eq!(l1_ball(1, 2), cross());
        assert_eq!(l1_ball(2, 2).len(), 13);
        assert_eq!(l1_ball(3, 2).len(), 25);
        assert!(l1_ball(2, 3).is_symmetric());
    }

    #[test]
    fn structuring_element_requires_origin() {
        assert!(StructuringElement::from_points([pt2(1, 0)]).is_err());
    }
}
