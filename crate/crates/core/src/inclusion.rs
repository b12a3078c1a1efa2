//! Decision procedures for shift inclusion and weak shift inclusion of
//! structuring elements, both relative to a finite pixel set and on the whole
//! lattice, plus sequence verification and the implication-matrix audit.
//!
//! All quantifier loops run in lexicographic order and short-circuit, so the
//! reported counterexample is always the lexicographically least failing
//! tuple and the reported witness the first success.

use serde::{Deserialize, Serialize};

use crate::error::{MorphError, Result};
use crate::geometry::{PixelSet, Point, StructuringElement};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// Shift inclusion: a translate of `B1` through `b2 - b1` stays inside `B2`.
    Strict,
    /// Weak shift inclusion: only in-domain offsets of the translate matter.
    Weak,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    Restricted,
    WholeSpace,
}

/// What was checked; serialized into every report.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CheckMode {
    pub relation: Relation,
    pub sign: Sign,
    pub scope: Scope,
}

/// Evaluation counters for performance assertions.
#[derive(Clone, Copy, Default, Debug, Serialize, Deserialize)]
pub struct CheckStats {
    /// Candidate tuples `(x, b2, b1)` (or `(b2, b1)` on the whole space)
    /// examined before the verdict settled.
    pub tuples_evaluated: u64,
}

/// Why a check failed.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Counterexample {
    /// `B1` is not a subset of `B2`; `member` is the least offending point.
    NotSubset { member: Point },
    /// Every candidate `b1` fails for this `(x, b2)`; `x` is absent on the
    /// whole space.
    Translate { x: Option<Point>, b2: Point },
}

/// One `b2 -> b1` assignment realizing `B1 + (b2 - b1) ⊆ B2`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TranslateWitness {
    pub b2: Point,
    pub b1: Point,
}

impl TranslateWitness {
    /// The translate vector `b2 - b1`.
    pub fn vector(&self) -> Point {
        self.b2.sub(&self.b1)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InclusionReport {
    pub verdict: bool,
    pub mode: CheckMode,
    /// Populated for true whole-space verdicts: the covering map from `B2`
    /// into `B1`.
    pub witness: Option<Vec<TranslateWitness>>,
    /// Populated exactly when the verdict is false.
    pub counterexample: Option<Counterexample>,
    pub stats: CheckStats,
}

impl InclusionReport {
    fn passed(mode: CheckMode, stats: CheckStats) -> Self {
        InclusionReport {
            verdict: true,
            mode,
            witness: None,
            counterexample: None,
            stats,
        }
    }

    fn failed(mode: CheckMode, counterexample: Counterexample, stats: CheckStats) -> Self {
        InclusionReport {
            verdict: false,
            mode,
            witness: None,
            counterexample: Some(counterexample),
            stats,
        }
    }
}

fn check_dims(b1: &StructuringElement, b2: &StructuringElement, p: Option<&PixelSet>) -> Result<()> {
    if b1.dim() != b2.dim() {
        return Err(MorphError::DimensionMismatch {
            expected: b1.dim(),
            got: b2.dim(),
        });
    }
    if let Some(p) = p {
        if p.dim() != b1.dim() {
            return Err(MorphError::DimensionMismatch {
                expected: b1.dim(),
                got: p.dim(),
            });
        }
    }
    Ok(())
}

fn subset_counterexample(
    b1: &StructuringElement,
    b2: &StructuringElement,
) -> Option<Counterexample> {
    b1.iter()
        .find(|p| !b2.contains(p))
        .map(|p| Counterexample::NotSubset { member: p.clone() })
}

/// For each `b2` the lex-sorted candidates `b1` with `B1 + (b2 - b1) ⊆ B2`.
/// The inner subset test does not depend on `x`, so it is computed once.
fn translate_candidates(
    b1: &StructuringElement,
    b2: &StructuringElement,
    stats: &mut CheckStats,
) -> Vec<(Point, Vec<Point>)> {
    b2.iter()
        .map(|b2v| {
            let ok: Vec<Point> = b1
                .iter()
                .filter(|b1v| {
                    stats.tuples_evaluated += 1;
                    let shift = b2v.sub(b1v);
                    b1.iter().all(|q| b2.contains(&q.add(&shift)))
                })
                .cloned()
                .collect();
            (b2v.clone(), ok)
        })
        .collect()
}

fn strict_sign_check(
    b1: &StructuringElement,
    b2: &StructuringElement,
    p: &PixelSet,
    sign: Sign,
) -> Result<InclusionReport> {
    assert!(sign != Sign::Both);
    check_dims(b1, b2, Some(p))?;
    let mode = CheckMode {
        relation: Relation::Strict,
        sign,
        scope: Scope::Restricted,
    };
    let plus = sign == Sign::Positive;
    let mut stats = CheckStats::default();
    let candidates = translate_candidates(b1, b2, &mut stats);
    for x in p.iter() {
        for (b2v, cands) in &candidates {
            let in_restriction = if plus {
                p.contains(&x.add(b2v))
            } else {
                p.contains(&x.sub(b2v))
            };
            if !in_restriction {
                continue;
            }
            let found = cands.iter().any(|b1v| {
                stats.tuples_evaluated += 1;
                if plus {
                    p.contains(&x.add(b1v))
                } else {
                    p.contains(&x.sub(b1v))
                }
            });
            if !found {
                return Ok(InclusionReport::failed(
                    mode,
                    Counterexample::Translate {
                        x: Some(x.clone()),
                        b2: b2v.clone(),
                    },
                    stats,
                ));
            }
        }
    }
    Ok(InclusionReport::passed(mode, stats))
}

/// Positive property: for all `x ∈ P`, `b2 ∈ B2(x;P,+)` there is
/// `b1 ∈ B1(x;P,+)` with `B1 + (b2 - b1) ⊆ B2`.
pub fn check_positive(
    b1: &StructuringElement,
    b2: &StructuringElement,
    p: &PixelSet,
) -> Result<InclusionReport> {
    strict_sign_check(b1, b2, p, Sign::Positive)
}

/// Negative property: both restriction signs flipped to `-`.
pub fn check_negative(
    b1: &StructuringElement,
    b2: &StructuringElement,
    p: &PixelSet,
) -> Result<InclusionReport> {
    strict_sign_check(b1, b2, p, Sign::Negative)
}

/// Full shift inclusion relative to `P`: subset plus both sign properties.
pub fn check_shift_inclusion(
    b1: &StructuringElement,
    b2: &StructuringElement,
    p: &PixelSet,
) -> Result<InclusionReport> {
    check_dims(b1, b2, Some(p))?;
    let mode = CheckMode {
        relation: Relation::Strict,
        sign: Sign::Both,
        scope: Scope::Restricted,
    };
    let mut stats = CheckStats::default();
    if let Some(cex) = subset_counterexample(b1, b2) {
        return Ok(InclusionReport::failed(mode, cex, stats));
    }
    for sign in [Sign::Positive, Sign::Negative] {
        let report = strict_sign_check(b1, b2, p, sign)?;
        stats.tuples_evaluated += report.stats.tuples_evaluated;
        if !report.verdict {
            return Ok(InclusionReport::failed(
                mode,
                report.counterexample.expect("failed check carries one"),
                stats,
            ));
        }
    }
    Ok(InclusionReport::passed(mode, stats))
}

/// Shift inclusion on the whole lattice. Finite because `B(x;M,±) = B` for
/// every `x`: only `b2 ∈ B2` needs quantifying. A true verdict carries the
/// covering map realizing `B2` as a union of translates of `B1`.
pub fn check_whole_space(
    b1: &StructuringElement,
    b2: &StructuringElement,
) -> Result<InclusionReport> {
    check_dims(b1, b2, None)?;
    let mode = CheckMode {
        relation: Relation::Strict,
        sign: Sign::Both,
        scope: Scope::WholeSpace,
    };
    let mut stats = CheckStats::default();
    if let Some(cex) = subset_counterexample(b1, b2) {
        return Ok(InclusionReport::failed(mode, cex, stats));
    }
    let candidates = translate_candidates(b1, b2, &mut stats);
    let mut witness = Vec::with_capacity(b2.len());
    for (b2v, cands) in candidates {
        match cands.into_iter().next() {
            Some(b1v) => witness.push(TranslateWitness { b2: b2v, b1: b1v }),
            None => {
                return Ok(InclusionReport::failed(
                    mode,
                    Counterexample::Translate { x: None, b2: b2v },
                    stats,
                ))
            }
        }
    }
    Ok(InclusionReport {
        verdict: true,
        mode,
        witness: Some(witness),
        counterexample: None,
        stats,
    })
}

fn weak_sign_check(
    b1: &StructuringElement,
    b2: &StructuringElement,
    p: &PixelSet,
    sign: Sign,
) -> Result<InclusionReport> {
    assert!(sign != Sign::Both);
    check_dims(b1, b2, Some(p))?;
    let mode = CheckMode {
        relation: Relation::Weak,
        sign,
        scope: Scope::Restricted,
    };
    let plus = sign == Sign::Positive;
    let mut stats = CheckStats::default();
    // step(x, b, +) = x + b on the positive side, x - b on the negative
    let step = |x: &Point, b: &Point| if plus { x.add(b) } else { x.sub(b) };
    for x in p.iter() {
        for b2v in b2.iter() {
            if !p.contains(&step(x, b2v)) {
                continue;
            }
            let found = b1.iter().any(|b1v| {
                stats.tuples_evaluated += 1;
                let y = step(x, b1v);
                if !p.contains(&y) {
                    return false;
                }
                // all offsets of B1 reachable from y inside P must map back
                // into B2 under the shift b2 - b1
                b1.iter().all(|b1p| {
                    let back = if plus { y.sub(b1p) } else { y.add(b1p) };
                    !p.contains(&back) || b2.contains(&b1p.add(&b2v.sub(b1v)))
                })
            });
            if !found {
                return Ok(InclusionReport::failed(
                    mode,
                    Counterexample::Translate {
                        x: Some(x.clone()),
                        b2: b2v.clone(),
                    },
                    stats,
                ));
            }
        }
    }
    Ok(InclusionReport::passed(mode, stats))
}

/// Weak positive property: the translate condition is only required at
/// offsets `b1'` that keep `x + b1 - b1'` inside the domain.
pub fn check_weak_positive(
    b1: &StructuringElement,
    b2: &StructuringElement,
    p: &PixelSet,
) -> Result<InclusionReport> {
    weak_sign_check(b1, b2, p, Sign::Positive)
}

/// Weak negative property: all signs flipped.
pub fn check_weak_negative(
    b1: &StructuringElement,
    b2: &StructuringElement,
    p: &PixelSet,
) -> Result<InclusionReport> {
    weak_sign_check(b1, b2, p, Sign::Negative)
}

/// Full weak shift inclusion relative to `P`.
pub fn check_weak_shift_inclusion(
    b1: &StructuringElement,
    b2: &StructuringElement,
    p: &PixelSet,
) -> Result<InclusionReport> {
    check_dims(b1, b2, Some(p))?;
    let mode = CheckMode {
        relation: Relation::Weak,
        sign: Sign::Both,
        scope: Scope::Restricted,
    };
    let mut stats = CheckStats::default();
    if let Some(cex) = subset_counterexample(b1, b2) {
        return Ok(InclusionReport::failed(mode, cex, stats));
    }
    for sign in [Sign::Positive, Sign::Negative] {
        let report = weak_sign_check(b1, b2, p, sign)?;
        stats.tuples_evaluated += report.stats.tuples_evaluated;
        if !report.verdict {
            return Ok(InclusionReport::failed(
                mode,
                report.counterexample.expect("failed check carries one"),
                stats,
            ));
        }
    }
    Ok(InclusionReport::passed(mode, stats))
}

/// Weak shift inclusion on the whole lattice. With full restriction sets the
/// weak condition collapses to the strict one; evaluated here through the
/// weak formula so the equivalence is exercised rather than assumed.
pub fn check_weak_whole_space(
    b1: &StructuringElement,
    b2: &StructuringElement,
) -> Result<InclusionReport> {
    check_dims(b1, b2, None)?;
    let mode = CheckMode {
        relation: Relation::Weak,
        sign: Sign::Both,
        scope: Scope::WholeSpace,
    };
    let mut stats = CheckStats::default();
    if let Some(cex) = subset_counterexample(b1, b2) {
        return Ok(InclusionReport::failed(mode, cex, stats));
    }
    for b2v in b2.iter() {
        let found = b1.iter().any(|b1v| {
            stats.tuples_evaluated += 1;
            b1.iter().all(|b1p| b2.contains(&b1p.add(&b2v.sub(b1v))))
        });
        if !found {
            return Ok(InclusionReport::failed(
                mode,
                Counterexample::Translate {
                    x: None,
                    b2: b2v.clone(),
                },
                stats,
            ));
        }
    }
    Ok(InclusionReport::passed(mode, stats))
}

/// Scope of a sequence check: a concrete pixel set or the whole lattice.
#[derive(Clone, Debug)]
pub enum SequenceScope {
    Restricted(PixelSet),
    WholeSpace,
}

/// Checks consecutive pairs of a sequence. Transitivity of the relation makes
/// non-consecutive pairs redundant.
pub fn verify_sequence(
    sequence: &[StructuringElement],
    scope: &SequenceScope,
    relation: Relation,
) -> Result<Vec<InclusionReport>> {
    if sequence.len() < 2 {
        return Err(MorphError::SequenceTooShort { min: 2 });
    }
    sequence
        .windows(2)
        .map(|pair| match (scope, relation) {
            (SequenceScope::Restricted(p), Relation::Strict) => {
                check_shift_inclusion(&pair[0], &pair[1], p)
            }
            (SequenceScope::Restricted(p), Relation::Weak) => {
                check_weak_shift_inclusion(&pair[0], &pair[1], p)
            }
            (SequenceScope::WholeSpace, Relation::Strict) => check_whole_space(&pair[0], &pair[1]),
            (SequenceScope::WholeSpace, Relation::Weak) => {
                check_weak_whole_space(&pair[0], &pair[1])
            }
        })
        .collect()
}

/// The four relations evaluated on one `(B1, B2, P)` instance.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct RelationProfile {
    pub s_p: bool,
    pub s_m: bool,
    pub ws_p: bool,
    pub ws_m: bool,
}

impl RelationProfile {
    pub fn evaluate(
        b1: &StructuringElement,
        b2: &StructuringElement,
        p: &PixelSet,
    ) -> Result<Self> {
        Ok(RelationProfile {
            s_p: check_shift_inclusion(b1, b2, p)?.verdict,
            s_m: check_whole_space(b1, b2)?.verdict,
            ws_p: check_weak_shift_inclusion(b1, b2, p)?.verdict,
            ws_m: check_weak_whole_space(b1, b2)?.verdict,
        })
    }

    fn get(&self, rel: RelationKind) -> bool {
        match rel {
            RelationKind::SP => self.s_p,
            RelationKind::SM => self.s_m,
            RelationKind::WSP => self.ws_p,
            RelationKind::WSM => self.ws_m,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationKind {
    SM,
    SP,
    WSM,
    WSP,
}

/// One directed implication claim with its audit outcome.
#[derive(Clone, Debug, Serialize)]
pub struct ClaimOutcome {
    pub label: &'static str,
    pub from: RelationKind,
    pub to: RelationKind,
    /// Whether the implication is expected to hold on every instance.
    pub expect_universal: bool,
    pub holds_on_corpus: bool,
    /// Index of the first corpus instance with `from` true and `to` false.
    pub falsifier: Option<usize>,
}

/// Audit of the eight directed implication claims among the four relations.
#[derive(Clone, Debug, Serialize)]
pub struct ImplicationMatrix {
    pub profiles: Vec<RelationProfile>,
    pub outcomes: Vec<ClaimOutcome>,
}

impl ImplicationMatrix {
    /// Universal claims must hold on the corpus; each non-universal claim
    /// must come with a falsifying instance.
    pub fn matches_expected(&self) -> bool {
        self.outcomes.iter().all(|c| {
            if c.expect_universal {
                c.holds_on_corpus
            } else {
                c.falsifier.is_some()
            }
        })
    }
}

const CLAIMS: &[(&str, RelationKind, RelationKind, bool)] = &[
    ("a1", RelationKind::SM, RelationKind::WSM, true),
    ("a2", RelationKind::WSM, RelationKind::SM, true),
    ("b", RelationKind::SP, RelationKind::SM, false),
    ("c", RelationKind::SM, RelationKind::SP, false),
    ("d", RelationKind::WSP, RelationKind::WSM, false),
    ("e", RelationKind::WSM, RelationKind::WSP, false),
    ("f", RelationKind::SP, RelationKind::WSP, true),
    ("g", RelationKind::WSP, RelationKind::SP, false),
];

/// Evaluates every instance in the corpus against the eight directed claims.
pub fn audit_implication_matrix(
    corpus: &[(StructuringElement, StructuringElement, PixelSet)],
) -> Result<ImplicationMatrix> {
    let profiles: Vec<RelationProfile> = corpus
        .iter()
        .map(|(b1, b2, p)| RelationProfile::evaluate(b1, b2, p))
        .collect::<Result<_>>()?;
    let outcomes = CLAIMS
        .iter()
        .map(|&(label, from, to, expect_universal)| {
            let falsifier = profiles
                .iter()
                .position(|pr| pr.get(from) && !pr.get(to));
            ClaimOutcome {
                label,
                from,
                to,
                expect_universal,
                holds_on_corpus: falsifier.is_none(),
                falsifier,
            }
        })
        .collect();
    Ok(ImplicationMatrix { profiles, outcomes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{l1_ball, pt2, PixelSet};

    fn se(points: &[(i64, i64)]) -> StructuringElement {
        StructuringElement::from_points(points.iter().map(|&(x, y)| pt2(x, y))).unwrap()
    }

    fn pixels(points: &[(i64, i64)]) -> PixelSet {
        PixelSet::from_points(points.iter().map(|&(x, y)| pt2(x, y))).unwrap()
    }

    // column with a gap: positive holds, negative fails
    fn column_gap() -> (StructuringElement, StructuringElement, PixelSet) {
        let b1 = se(&[(0, 0), (0, -1)]);
        let b2 = se(&[(0, 0), (0, -1), (0, 3), (0, 2)]);
        let p = pixels(&[(0, 0), (0, 1), (0, 3)]);
        (b1, b2, p)
    }

    #[test]
    fn positive_but_not_negative() {
        let (b1, b2, p) = column_gap();
        assert!(check_positive(&b1, &b2, &p).unwrap().verdict);
        let neg = check_negative(&b1, &b2, &p).unwrap();
        assert!(!neg.verdict);
        assert_eq!(
            neg.counterexample,
            Some(Counterexample::Translate {
                x: Some(pt2(0, 3)),
                b2: pt2(0, 2),
            })
        );
        assert!(!check_shift_inclusion(&b1, &b2, &p).unwrap().verdict);
    }

    #[test]
    fn equal_elements_are_shift_included() {
        let b = l1_ball(1, 2);
        let p = pixels(&[(0, 0), (1, 0), (0, 1)]);
        assert!(check_positive(&b, &b, &p).unwrap().verdict);
        assert!(check_negative(&b, &b, &p).unwrap().verdict);
        assert!(check_shift_inclusion(&b, &b, &p).unwrap().verdict);
    }

    #[test]
    fn subset_failure_is_reported_separately() {
        // B1 is not a subset of B2, yet the weak sign properties hold: the
        // subset requirement carries information of its own
        let b1 = se(&[(0, 0), (0, 1)]);
        let b2 = se(&[(0, 0), (1, 0), (1, 1)]);
        let p = pixels(&[(0, 0), (1, 0)]);
        assert!(check_weak_positive(&b1, &b2, &p).unwrap().verdict);
        assert!(check_weak_negative(&b1, &b2, &p).unwrap().verdict);
        // the strict translate condition quantifies over all of B1, so the
        // out-of-domain offset (0,1) sinks it
        assert!(!check_positive(&b1, &b2, &p).unwrap().verdict);
        let full = check_shift_inclusion(&b1, &b2, &p).unwrap();
        assert!(!full.verdict);
        assert_eq!(
            full.counterexample,
            Some(Counterexample::NotSubset { member: pt2(0, 1) })
        );
        let weak_full = check_weak_shift_inclusion(&b1, &b2, &p).unwrap();
        assert!(!weak_full.verdict);
        assert_eq!(
            weak_full.counterexample,
            Some(Counterexample::NotSubset { member: pt2(0, 1) })
        );
    }

    #[test]
    fn corner_domain_fails_strict_but_not_weak() {
        let b1 = se(&[(0, 0), (0, -1)]);
        let b2 = se(&[(0, 0), (1, 0), (0, -1)]);
        let p = pixels(&[(0, 0), (1, 0), (0, -1)]);
        let strict = check_shift_inclusion(&b1, &b2, &p).unwrap();
        assert!(!strict.verdict);
        assert_eq!(
            strict.counterexample,
            Some(Counterexample::Translate {
                x: Some(pt2(0, 0)),
                b2: pt2(1, 0),
            })
        );
        assert!(check_weak_positive(&b1, &b2, &p).unwrap().verdict);
        assert!(check_weak_negative(&b1, &b2, &p).unwrap().verdict);
        assert!(check_weak_shift_inclusion(&b1, &b2, &p).unwrap().verdict);
    }

    #[test]
    fn rectangles_in_rectangle_domain() {
        let r1 = se(&[(0, 0), (1, 0)]);
        let points = PixelSet::rectangle(&pt2(-1, -1), &pt2(2, 1)).unwrap();
        let r2 = StructuringElement::new(points.points().clone()).unwrap();
        let p = PixelSet::rectangle(&pt2(0, 0), &pt2(4, 4)).unwrap();
        assert!(check_shift_inclusion(&r1, &r2, &p).unwrap().verdict);
    }

    #[test]
    fn whole_space_union_of_translates_passes() {
        let b1 = se(&[(0, 0), (0, -1)]);
        let b2 = se(&[(0, 0), (0, -1), (0, 3), (0, 2)]);
        let report = check_whole_space(&b1, &b2).unwrap();
        assert!(report.verdict);
        // rebuilding from the witness reproduces B2 exactly
        let witness = report.witness.unwrap();
        let mut rebuilt = std::collections::BTreeSet::new();
        for w in &witness {
            let v = w.vector();
            for q in b1.iter() {
                rebuilt.insert(q.add(&v));
            }
        }
        let b2_points: std::collections::BTreeSet<_> = b2.iter().cloned().collect();
        assert_eq!(rebuilt, b2_points);
    }

    #[test]
    fn whole_space_counterexamples() {
        // cross vs full 3x3 square: every corner fails, least corner reported
        let b1 = l1_ball(1, 2);
        let points = PixelSet::rectangle(&pt2(-1, -1), &pt2(1, 1)).unwrap();
        let b2 = StructuringElement::new(points.points().clone()).unwrap();
        let report = check_whole_space(&b1, &b2).unwrap();
        assert!(!report.verdict);
        assert_eq!(
            report.counterexample,
            Some(Counterexample::Translate {
                x: None,
                b2: pt2(-1, -1),
            })
        );
        // brute-force confirmation that the corner (1,1) fails as well
        let shift_ok = |b1v: &Point| {
            let shift = pt2(1, 1).sub(b1v);
            b1.iter().all(|q| b2.contains(&q.add(&shift)))
        };
        assert!(!b1.iter().any(|b1v| shift_ok(b1v)));

        let b1 = se(&[(0, 0), (0, 1)]);
        let b2 = se(&[(0, 0), (0, 1), (1, 0)]);
        let report = check_whole_space(&b1, &b2).unwrap();
        assert!(!report.verdict);
        assert_eq!(
            report.counterexample,
            Some(Counterexample::Translate {
                x: None,
                b2: pt2(1, 0),
            })
        );
    }

    #[test]
    fn row_domain_passes_restricted_but_not_whole_space() {
        let b1 = se(&[(0, 0), (0, 1)]);
        let b2 = se(&[(0, 0), (0, 1), (1, 1)]);
        let p = PixelSet::rectangle(&pt2(0, 0), &pt2(5, 0)).unwrap();
        assert!(check_shift_inclusion(&b1, &b2, &p).unwrap().verdict);
        let ws = check_whole_space(&b1, &b2).unwrap();
        assert!(!ws.verdict);
        assert_eq!(
            ws.counterexample,
            Some(Counterexample::Translate {
                x: None,
                b2: pt2(1, 1),
            })
        );
    }

    #[test]
    fn strict_implies_weak_on_samples() {
        let instances = [
            column_gap(),
            (
                se(&[(0, 0)]),
                l1_ball(1, 2),
                pixels(&[(0, 0), (1, 0), (0, 1)]),
            ),
            (
                se(&[(0, 0), (1, 0)]),
                se(&[(0, 0), (1, 0), (2, 0)]),
                PixelSet::rectangle(&pt2(0, 0), &pt2(3, 1)).unwrap(),
            ),
        ];
        for (b1, b2, p) in &instances {
            for (strict, weak) in [
                (
                    check_positive(b1, b2, p).unwrap(),
                    check_weak_positive(b1, b2, p).unwrap(),
                ),
                (
                    check_negative(b1, b2, p).unwrap(),
                    check_weak_negative(b1, b2, p).unwrap(),
                ),
            ] {
                if strict.verdict {
                    assert!(weak.verdict);
                }
            }
        }
    }

    #[test]
    fn sequence_verification() {
        let seq = vec![
            StructuringElement::singleton(2),
            l1_ball(1, 2),
            l1_ball(2, 2),
        ];
        let reports = verify_sequence(&seq, &SequenceScope::WholeSpace, Relation::Strict).unwrap();
        assert_eq!(reports.len(), 2);
        assert!(reports.iter().all(|r| r.verdict));

        let mut reversed = seq;
        reversed.reverse();
        let reports =
            verify_sequence(&reversed, &SequenceScope::WholeSpace, Relation::Strict).unwrap();
        assert!(!reports[0].verdict);
        assert!(matches!(
            reports[0].counterexample,
            Some(Counterexample::NotSubset { .. })
        ));

        assert!(matches!(
            verify_sequence(&[l1_ball(1, 2)], &SequenceScope::WholeSpace, Relation::Strict),
            Err(MorphError::SequenceTooShort { .. })
        ));
    }

    #[test]
    fn weak_whole_space_agrees_with_strict() {
        let cases = [
            (se(&[(0, 0), (0, -1)]), se(&[(0, 0), (0, -1), (0, 3), (0, 2)])),
            (se(&[(0, 0), (0, 1)]), se(&[(0, 0), (0, 1), (1, 0)])),
            (se(&[(0, 0)]), l1_ball(2, 2)),
        ];
        for (b1, b2) in &cases {
            assert_eq!(
                check_whole_space(b1, b2).unwrap().verdict,
                check_weak_whole_space(b1, b2).unwrap().verdict
            );
        }
    }
}
