//! A built-in corpus of instances separating the four inclusion relations,
//! plus ready-made verified sequences. The corpus doubles as the audit set
//! for the implication matrix: every non-universal implication among the
//! relations has a falsifier here, and the universal ones hold throughout.

use crate::error::Result;
use crate::geometry::{l1_ball, pt2, PixelSet, StructuringElement};
use crate::inclusion::{
    audit_implication_matrix, verify_sequence, Relation, RelationProfile, SequenceScope,
};
use crate::oracle::property_holds;

/// One named instance `(B1, B2, P)` with its expected relation profile and,
/// where the domain is small enough to sweep, the expected oracle outcome.
pub struct CatalogCase {
    pub name: &'static str,
    pub summary: &'static str,
    pub b1: StructuringElement,
    pub b2: StructuringElement,
    pub p: PixelSet,
    pub expected: RelationProfile,
    pub oracle_opening: Option<bool>,
    pub oracle_closing: Option<bool>,
}

/// A sequence whose consecutive pairs satisfy whole-space shift inclusion.
pub struct CatalogSequence {
    pub name: &'static str,
    pub summary: &'static str,
    pub elements: Vec<StructuringElement>,
}

fn se(points: &[(i64, i64)]) -> StructuringElement {
    StructuringElement::from_points(points.iter().map(|&(x, y)| pt2(x, y)))
        .expect("catalog element is valid")
}

fn pix(points: &[(i64, i64)]) -> PixelSet {
    PixelSet::from_points(points.iter().map(|&(x, y)| pt2(x, y))).expect("catalog domain is valid")
}

fn rect(lo: (i64, i64), hi: (i64, i64)) -> PixelSet {
    PixelSet::rectangle(&pt2(lo.0, lo.1), &pt2(hi.0, hi.1)).expect("catalog rectangle is valid")
}

fn rect_se(lo: (i64, i64), hi: (i64, i64)) -> StructuringElement {
    StructuringElement::new(rect(lo, hi).points().clone()).expect("catalog rectangle has origin")
}

fn profile(s_p: bool, s_m: bool, ws_p: bool, ws_m: bool) -> RelationProfile {
    RelationProfile { s_p, s_m, ws_p, ws_m }
}

/// The seven separating instances.
pub fn counterexample_cases() -> Vec<CatalogCase> {
    vec![
        CatalogCase {
            name: "cross-vs-square",
            summary: "subset pairs need not nest: the cross sits inside the \
                      3x3 square, yet on a 6x6 domain neither relation holds",
            b1: l1_ball(1, 2),
            b2: rect_se((-1, -1), (1, 1)),
            p: rect((0, 0), (5, 5)),
            expected: profile(false, false, false, false),
            oracle_opening: None,
            oracle_closing: None,
        },
        CatalogCase {
            name: "nonsubset-pair",
            summary: "both sign properties hold although B1 is not even a \
                      subset of B2",
            b1: se(&[(0, 0), (0, 1)]),
            b2: se(&[(0, 0), (1, 0), (1, 1)]),
            p: pix(&[(0, 0), (1, 0)]),
            expected: profile(false, false, false, false),
            oracle_opening: None,
            oracle_closing: None,
        },
        CatalogCase {
            name: "column-gap",
            summary: "a union of translates passes on the whole lattice and \
                      weakly on the gapped column, but the strict negative \
                      property fails there",
            b1: se(&[(0, 0), (0, -1)]),
            b2: se(&[(0, 0), (0, -1), (0, 2), (0, 3)]),
            p: pix(&[(0, 0), (0, 1), (0, 3)]),
            expected: profile(false, true, true, true),
            oracle_opening: Some(true),
            oracle_closing: Some(true),
        },
        CatalogCase {
            name: "row-plus-corner",
            summary: "whole-space inclusion does not restrict: a detached \
                      corner pixel breaks even the weak relation",
            b1: se(&[(0, 0), (1, 0)]),
            b2: rect_se((0, 0), (1, 1)),
            p: pix(&[(0, 0), (1, 1), (2, 1), (3, 1), (4, 1), (5, 1)]),
            expected: profile(false, true, false, true),
            oracle_opening: Some(false),
            oracle_closing: None,
        },
        CatalogCase {
            name: "single-row-vs-step",
            summary: "relative inclusion does not globalize: on a single row \
                      the step element behaves like the domino",
            b1: se(&[(0, 0), (0, 1)]),
            b2: se(&[(0, 0), (0, 1), (1, 1)]),
            p: rect((0, 0), (5, 0)),
            expected: profile(true, false, true, false),
            oracle_opening: Some(true),
            oracle_closing: Some(true),
        },
        CatalogCase {
            name: "sparse-diagonal",
            summary: "a sparse element whose whole-space decomposition exists \
                      still breaks opening nesting on a 5x3 domain",
            b1: se(&[(0, 0), (2, 2)]),
            b2: se(&[(0, 0), (2, 2), (0, -2), (2, 0)]),
            p: rect((0, 0), (4, 2)),
            expected: profile(false, true, false, true),
            oracle_opening: Some(false),
            oracle_closing: None,
        },
        CatalogCase {
            name: "corner-domain",
            summary: "the weak relation is strictly weaker: on an L-shaped \
                      3-pixel domain it holds while the strict one fails",
            b1: se(&[(0, 0), (0, -1)]),
            b2: se(&[(0, 0), (1, 0), (0, -1)]),
            p: pix(&[(0, 0), (1, 0), (0, -1)]),
            expected: profile(false, false, true, false),
            oracle_opening: Some(true),
            oracle_closing: Some(true),
        },
    ]
}

/// The seven bundled sequences; consecutive pairs verify on the whole space.
pub fn sequences() -> Vec<CatalogSequence> {
    vec![
        CatalogSequence {
            name: "centered-squares",
            summary: "singleton, 3x3, 5x5 centered squares",
            elements: vec![
                StructuringElement::singleton(2),
                rect_se((-1, -1), (1, 1)),
                rect_se((-2, -2), (2, 2)),
            ],
        },
        CatalogSequence {
            name: "l1-balls",
            summary: "singleton, cross, radius-2 diamond",
            elements: vec![l1_ball(0, 2), l1_ball(1, 2), l1_ball(2, 2)],
        },
        CatalogSequence {
            name: "widening-rectangle",
            summary: "singleton, 3x3, then widened to 5x3",
            elements: vec![
                StructuringElement::singleton(2),
                rect_se((-1, -1), (1, 1)),
                rect_se((-2, -1), (2, 1)),
            ],
        },
        CatalogSequence {
            name: "alternating-squares",
            summary: "squares of side 1..4 grown on alternating corners",
            elements: crate::constructors::square_iteration(3)
                .expect("iteration count is valid"),
        },
        CatalogSequence {
            name: "cross-with-spur",
            summary: "a cross with an extra arm pixel, then its diagonal \
                      translate absorbed",
            elements: {
                let b1 = se(&[(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1), (2, 0)]);
                let b2 = crate::constructors::decompose_build(&b1, &[pt2(1, 1)])
                    .expect("translate dims match");
                vec![StructuringElement::singleton(2), b1, b2]
            },
        },
        CatalogSequence {
            name: "staircase",
            summary: "singleton, L-triomino, then the side-3 staircase",
            elements: vec![
                StructuringElement::singleton(2),
                se(&[(0, 0), (1, 0), (0, 1)]),
                se(&[(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (0, 2)]),
            ],
        },
        CatalogSequence {
            name: "square-to-offset-rectangle",
            summary: "singleton, 3x3, then the asymmetric 4x3 rectangle",
            elements: vec![
                StructuringElement::singleton(2),
                rect_se((-1, -1), (1, 1)),
                rect_se((-1, -1), (2, 1)),
            ],
        },
    ]
}

/// The audit corpus: the `(B1, B2, P)` triples of all counterexample cases.
pub fn implication_corpus() -> Vec<(StructuringElement, StructuringElement, PixelSet)> {
    counterexample_cases()
        .into_iter()
        .map(|c| (c.b1, c.b2, c.p))
        .collect()
}

/// Cap for the oracle sweeps run during catalog verification.
const VERIFY_CAP: usize = 20;

/// Re-derives every stored verdict and reports mismatches; an empty result
/// means the whole catalog checks out.
pub fn verify() -> Result<Vec<String>> {
    let mut diffs = Vec::new();
    for case in counterexample_cases() {
        let got = RelationProfile::evaluate(&case.b1, &case.b2, &case.p)?;
        let exp = &case.expected;
        for (what, e, g) in [
            ("strict relative", exp.s_p, got.s_p),
            ("strict whole-space", exp.s_m, got.s_m),
            ("weak relative", exp.ws_p, got.ws_p),
            ("weak whole-space", exp.ws_m, got.ws_m),
        ] {
            if e != g {
                diffs.push(format!("{}: {} expected {}, got {}", case.name, what, e, g));
            }
        }
        if case.oracle_opening.is_some() || case.oracle_closing.is_some() {
            let verdict = property_holds(&case.b1, &case.b2, &case.p, VERIFY_CAP)?;
            if let Some(e) = case.oracle_opening {
                if verdict.holds_opening != e {
                    diffs.push(format!(
                        "{}: oracle opening expected {}, got {}",
                        case.name, e, verdict.holds_opening
                    ));
                }
            }
            if let Some(e) = case.oracle_closing {
                if verdict.holds_closing != e {
                    diffs.push(format!(
                        "{}: oracle closing expected {}, got {}",
                        case.name, e, verdict.holds_closing
                    ));
                }
            }
        }
    }
    for seq in sequences() {
        for relation in [Relation::Strict, Relation::Weak] {
            let reports = verify_sequence(&seq.elements, &SequenceScope::WholeSpace, relation)?;
            for (i, r) in reports.iter().enumerate() {
                if !r.verdict {
                    diffs.push(format!(
                        "sequence {}: step {} -> {} failed ({:?})",
                        seq.name,
                        i,
                        i + 1,
                        relation
                    ));
                }
            }
        }
    }
    let matrix = audit_implication_matrix(&implication_corpus())?;
    if !matrix.matches_expected() {
        for c in &matrix.outcomes {
            let ok = if c.expect_universal {
                c.holds_on_corpus
            } else {
                c.falsifier.is_some()
            };
            if !ok {
                diffs.push(format!(
                    "implication {}: expected {}, corpus disagrees",
                    c.label,
                    if c.expect_universal {
                        "universal"
                    } else {
                        "a falsifier"
                    }
                ));
            }
        }
    }
    Ok(diffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_self_consistent() {
        let diffs = verify().unwrap();
        assert!(diffs.is_empty(), "catalog mismatches: {diffs:#?}");
    }

    #[test]
    fn corpus_and_pack_sizes() {
        assert_eq!(counterexample_cases().len(), 7);
        assert_eq!(sequences().len(), 7);
        assert!(sequences().iter().all(|s| s.elements.len() >= 2));
    }

    #[test]
    fn matrix_audit_separates_all_relations() {
        let matrix = audit_implication_matrix(&implication_corpus()).unwrap();
        assert!(matrix.matches_expected());
        // the two equivalences and the one strict implication are universal
        let universal: Vec<_> = matrix
            .outcomes
            .iter()
            .filter(|c| c.expect_universal)
            .map(|c| c.label)
            .collect();
        assert_eq!(universal, ["a1", "a2", "f"]);
    }
}
