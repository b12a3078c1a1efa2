//! Command-line surface for the morphkit library: inclusion checks, sequence
//! construction and verification, the exhaustive oracle, and granulometry.
//!
//! Exit codes are a stable contract: 0 = property holds / run succeeded,
//! 1 = property is false, 2 = usage or parse error, 3 = refused to run an
//! unverified sequence (pass --force to override).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use morphkit::catalog;
use morphkit::constructors::SequenceRecipe;
use morphkit::diagram::{parse_pixel_set, parse_structuring_element, render, render_structuring_element};
use morphkit::geometry::{PixelSet, Point, StructuringElement};
use morphkit::image::{granulometric_curve, FilterMode, Image};
use morphkit::inclusion::{
    audit_implication_matrix, check_negative, check_positive, check_shift_inclusion,
    check_weak_negative, check_weak_positive, check_weak_shift_inclusion, check_weak_whole_space,
    check_whole_space, verify_sequence, InclusionReport, Relation, SequenceScope,
};
use morphkit::io::{granulometry_csv, read_masked_grid, read_pgm, write_masked_grid, write_pgm};
use morphkit::oracle::{equivalence_audit, property_holds};
use morphkit::{MorphError, Result};

#[derive(Parser)]
#[command(name = "morphkit", version, about = "Morphology on arbitrary finite pixel sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads for the oracle sweep (default: rayon's choice).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write the main report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SignArg {
    Pos,
    Neg,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Opening,
    Closing,
}

#[derive(Args)]
struct PairArgs {
    /// Dot-diagram file for the smaller structuring element.
    #[arg(long)]
    se1: PathBuf,
    /// Dot-diagram file for the larger structuring element.
    #[arg(long)]
    se2: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Decide shift inclusion of two structuring elements relative to a
    /// pixel set.
    Check {
        #[command(flatten)]
        pair: PairArgs,
        /// Dot-diagram file for the pixel set.
        #[arg(long)]
        pixels: PathBuf,
        /// Which sign property to check; `both` adds the subset requirement.
        #[arg(long, value_enum, default_value = "both")]
        sign: SignArg,
    },
    /// Decide weak shift inclusion relative to a pixel set.
    WeakCheck {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        pixels: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        sign: SignArg,
    },
    /// Decide shift inclusion on the whole lattice (finite via the
    /// decomposition theorem).
    CheckWholeSpace {
        #[command(flatten)]
        pair: PairArgs,
        /// Evaluate through the weak formula instead of the strict one.
        #[arg(long)]
        weak: bool,
    },
    /// Build a sequence from a JSON recipe and print its dot diagrams.
    Build {
        /// JSON recipe file.
        #[arg(long)]
        recipe: PathBuf,
    },
    /// Verify a sequence pairwise, on the whole lattice or relative to a
    /// pixel set.
    VerifySeq {
        #[arg(long)]
        recipe: PathBuf,
        /// Restrict the check to this pixel set instead of the whole lattice.
        #[arg(long)]
        pixels: Option<PathBuf>,
        /// Check weak shift inclusion instead of the strict relation.
        #[arg(long)]
        weak: bool,
    },
    /// Sweep all binary images over a small pixel set and test the zero-set
    /// nesting of openings and closings.
    Oracle {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        pixels: PathBuf,
        /// Largest pixel-set size the sweep will accept.
        #[arg(long, default_value_t = 20)]
        cap: usize,
    },
    /// Cross-check the oracle against the weak decision procedures on the
    /// built-in corpus and audit the implication matrix.
    Audit {
        #[arg(long, default_value_t = 20)]
        cap: usize,
    },
    /// Run an opening/closing filtration over an image and emit per-step
    /// images, zero-set masks, and the granulometric curve.
    Granulometry {
        /// Image file: plain PGM (P2) or masked-grid.
        #[arg(long)]
        image: PathBuf,
        #[arg(long)]
        recipe: PathBuf,
        #[arg(long, value_enum, default_value = "opening")]
        mode: ModeArg,
        /// Run even if the sequence fails verification against the image
        /// domain.
        #[arg(long)]
        force: bool,
    },
    /// Replay the built-in example pack and report any mismatch.
    Examples,
}

fn read_se(path: &Path) -> Result<StructuringElement> {
    parse_structuring_element(&fs::read_to_string(path)?)
}

fn read_pixels(path: &Path) -> Result<PixelSet> {
    parse_pixel_set(&fs::read_to_string(path)?)
}

fn read_image(path: &Path) -> Result<Image> {
    let text = fs::read_to_string(path)?;
    if text.trim_start().starts_with("P2") {
        Ok(read_pgm(&text)?.0)
    } else {
        read_masked_grid(&text)
    }
}

fn read_recipe(path: &Path) -> Result<SequenceRecipe> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

fn emit_json<T: serde::Serialize>(value: &T, out: Option<&Path>) -> Result<()> {
    emit(&serde_json::to_string_pretty(value)?, out)
}

fn verdict_code(ok: bool) -> u8 {
    if ok {
        0
    } else {
        1
    }
}

fn run_check(
    pair: &PairArgs,
    pixels: &Path,
    sign: SignArg,
    relation: Relation,
    out: Option<&Path>,
) -> Result<u8> {
    let b1 = read_se(&pair.se1)?;
    let b2 = read_se(&pair.se2)?;
    let p = read_pixels(pixels)?;
    let report = match (relation, sign) {
        (Relation::Strict, SignArg::Pos) => check_positive(&b1, &b2, &p)?,
        (Relation::Strict, SignArg::Neg) => check_negative(&b1, &b2, &p)?,
        (Relation::Strict, SignArg::Both) => check_shift_inclusion(&b1, &b2, &p)?,
        (Relation::Weak, SignArg::Pos) => check_weak_positive(&b1, &b2, &p)?,
        (Relation::Weak, SignArg::Neg) => check_weak_negative(&b1, &b2, &p)?,
        (Relation::Weak, SignArg::Both) => check_weak_shift_inclusion(&b1, &b2, &p)?,
    };
    emit_json(&report, out)?;
    Ok(verdict_code(report.verdict))
}

fn run_whole_space(pair: &PairArgs, weak: bool, out: Option<&Path>) -> Result<u8> {
    let b1 = read_se(&pair.se1)?;
    let b2 = read_se(&pair.se2)?;
    let report = if weak {
        check_weak_whole_space(&b1, &b2)?
    } else {
        check_whole_space(&b1, &b2)?
    };
    emit_json(&report, out)?;
    Ok(verdict_code(report.verdict))
}

fn run_build(recipe: &Path, out: Option<&Path>) -> Result<u8> {
    let recipe = read_recipe(recipe)?;
    let elements = recipe.build()?;
    let reports = verify_sequence(&elements, &SequenceScope::WholeSpace, Relation::Strict)?;
    let diagrams: Vec<String> = elements
        .iter()
        .map(render_structuring_element)
        .collect::<Result<_>>()?;
    let all_ok = reports.iter().all(|r| r.verdict);
    #[derive(serde::Serialize)]
    struct BuildReport {
        elements: Vec<String>,
        guaranteed_by_construction: bool,
        whole_space_verified: bool,
        reports: Vec<InclusionReport>,
    }
    emit_json(
        &BuildReport {
            elements: diagrams,
            guaranteed_by_construction: recipe.guaranteed(),
            whole_space_verified: all_ok,
            reports,
        },
        out,
    )?;
    Ok(verdict_code(all_ok))
}

fn run_verify_seq(
    recipe: &Path,
    pixels: Option<&Path>,
    weak: bool,
    out: Option<&Path>,
) -> Result<u8> {
    let elements = read_recipe(recipe)?.build()?;
    let scope = match pixels {
        Some(path) => SequenceScope::Restricted(read_pixels(path)?),
        None => SequenceScope::WholeSpace,
    };
    let relation = if weak { Relation::Weak } else { Relation::Strict };
    let reports = verify_sequence(&elements, &scope, relation)?;
    let all_ok = reports.iter().all(|r| r.verdict);
    emit_json(&reports, out)?;
    Ok(verdict_code(all_ok))
}

fn run_oracle(pair: &PairArgs, pixels: &Path, cap: usize, out: Option<&Path>) -> Result<u8> {
    let b1 = read_se(&pair.se1)?;
    let b2 = read_se(&pair.se2)?;
    let p = read_pixels(pixels)?;
    let verdict = property_holds(&b1, &b2, &p, cap)?;
    let ok = verdict.holds_opening && verdict.holds_closing;
    emit_json(&verdict, out)?;
    Ok(verdict_code(ok))
}

fn run_audit(cap: usize, out: Option<&Path>) -> Result<u8> {
    #[derive(serde::Serialize)]
    struct CaseAudit {
        name: &'static str,
        pixels: usize,
        swept: bool,
        consistent: Option<bool>,
    }
    let mut ok = true;
    let mut cases = Vec::new();
    for case in catalog::counterexample_cases() {
        let swept = case.p.len() <= cap;
        let consistent = if swept {
            let audit = equivalence_audit(&case.b1, &case.b2, &case.p, cap)?;
            Some(audit.consistent())
        } else {
            None
        };
        if consistent == Some(false) {
            ok = false;
        }
        cases.push(CaseAudit {
            name: case.name,
            pixels: case.p.len(),
            swept,
            consistent,
        });
    }
    let matrix = audit_implication_matrix(&catalog::implication_corpus())?;
    if !matrix.matches_expected() {
        ok = false;
    }
    #[derive(serde::Serialize)]
    struct AuditReport {
        cases: Vec<CaseAudit>,
        matrix: morphkit::inclusion::ImplicationMatrix,
        matrix_matches_expected: bool,
        consistent: bool,
    }
    let matches = matrix.matches_expected();
    emit_json(
        &AuditReport {
            cases,
            matrix,
            matrix_matches_expected: matches,
            consistent: ok,
        },
        out,
    )?;
    Ok(verdict_code(ok))
}

fn run_granulometry(
    image: &Path,
    recipe: &Path,
    mode: ModeArg,
    force: bool,
    out: Option<&Path>,
) -> Result<u8> {
    let g = read_image(image)?;
    let elements = read_recipe(recipe)?.build()?;
    let mode = match mode {
        ModeArg::Opening => FilterMode::Opening,
        ModeArg::Closing => FilterMode::Closing,
    };
    let curve = granulometric_curve(&g, &elements, mode, force)?;
    let zeros: Vec<usize> = curve.iter().map(|&(_, n)| n).collect();
    let csv = granulometry_csv(&zeros);
    if let Some(dir) = out {
        fs::create_dir_all(dir)?;
        for (i, b) in elements.iter().enumerate() {
            let filtered = match mode {
                FilterMode::Opening => g.opening(b)?,
                FilterMode::Closing => g.closing(b)?,
            };
            if filtered.domain().as_rectangle().is_some() {
                fs::write(dir.join(format!("step_{i}.pgm")), write_pgm(&filtered, None)?)?;
            } else {
                fs::write(
                    dir.join(format!("step_{i}.grid")),
                    write_masked_grid(&filtered)?,
                )?;
            }
            let zero = filtered.zero_set();
            let mask = if zero.is_empty() {
                String::from("(empty)\n")
            } else {
                render(&zero, &Point::origin(2))?
            };
            fs::write(dir.join(format!("step_{i}_zero.txt")), mask)?;
        }
        fs::write(dir.join("curve.csv"), &csv)?;
    }
    print!("{csv}");
    Ok(0)
}

fn run_examples(out: Option<&Path>) -> Result<u8> {
    let diffs = catalog::verify()?;
    let mut lines = Vec::new();
    lines.push(format!(
        "counterexample pack: {} entries",
        catalog::counterexample_cases().len()
    ));
    for case in catalog::counterexample_cases() {
        lines.push(format!("  {} - {}", case.name, case.summary));
    }
    lines.push(format!("sequence pack: {} entries", catalog::sequences().len()));
    for seq in catalog::sequences() {
        lines.push(format!(
            "  {} ({} elements) - {}",
            seq.name,
            seq.elements.len(),
            seq.summary
        ));
    }
    if diffs.is_empty() {
        lines.push("all fixtures verified".into());
    } else {
        lines.push(format!("{} MISMATCHES:", diffs.len()));
        for d in &diffs {
            lines.push(format!("  {d}"));
        }
    }
    emit(&lines.join("\n"), out)?;
    Ok(verdict_code(diffs.is_empty()))
}

fn run(cli: &Cli) -> Result<u8> {
    if let Some(jobs) = cli.jobs {
        // a second build_global in the same process is harmless: the pool is
        // already running with the earlier setting
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Check { pair, pixels, sign } => {
            run_check(pair, pixels, *sign, Relation::Strict, out)
        }
        Command::WeakCheck { pair, pixels, sign } => {
            run_check(pair, pixels, *sign, Relation::Weak, out)
        }
        Command::CheckWholeSpace { pair, weak } => run_whole_space(pair, *weak, out),
        Command::Build { recipe } => run_build(recipe, out),
        Command::VerifySeq {
            recipe,
            pixels,
            weak,
        } => run_verify_seq(recipe, pixels.as_deref(), *weak, out),
        Command::Oracle { pair, pixels, cap } => run_oracle(pair, pixels, *cap, out),
        Command::Audit { cap } => run_audit(*cap, out),
        Command::Granulometry {
            image,
            recipe,
            mode,
            force,
        } => run_granulometry(image, recipe, *mode, *force, out),
        Command::Examples => run_examples(out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(MorphError::UnverifiedSequence { step }) => {
            eprintln!("error: sequence failed verification at step {step}; pass --force to run anyway");
            ExitCode::from(3)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
