use std::fs;
use std::io::Write;

use serde_json::{json, Value};
use sympgt_core::action::{generator_matrix, parse_generator_name, Generator};
use sympgt_core::algebra::{casimir, close_algebra, highest_vector, verify_relations, Closure};
use sympgt_core::branching::{
    branch, branched_dimension, character, is_hyperoctahedral_invariant, multiplicity_product,
    weyl_character, weyl_dim,
};
use sympgt_core::io::{to_exact_json, to_matrix_market, OutputFormat, RunConfig, SCHEMA};
use sympgt_core::model::{format_rational, SignedIndex};
use sympgt_core::patterns::count_patterns;
use sympgt_core::{Error, HighestWeight, PatternBasis, Result, SparseOperator};

use crate::{Command, Common};

pub(crate) fn run(command: Command) -> Result<u8> {
    match command {
        Command::Enumerate(c) => with_setup(&c, |lam, config| enumerate(lam, config)),
        Command::Dim(c) => with_setup(&c, |lam, config| dim(lam, config)),
        Command::Matrix { common, generator } => {
            with_setup(&common, |lam, config| matrix(lam, config, &generator))
        }
        Command::Verify(c) => with_setup(&c, |lam, config| verify(lam, config)),
        Command::Branch(c) => with_setup(&c, |lam, config| branch_table(lam, config)),
        Command::Character(c) => with_setup(&c, |lam, config| character_table(lam, config)),
        Command::Casimir(c) => with_setup(&c, |lam, config| casimir_value(lam, config)),
    }
}

fn with_setup<F>(common: &Common, f: F) -> Result<u8>
where
    F: FnOnce(&HighestWeight, &RunConfig) -> Result<u8> + Send,
{
    let lam = common.highest_weight()?;
    let config = common.config()?;
    config.run(|| f(&lam, &config))
}

fn emit(config: &RunConfig, text: &str) -> Result<()> {
    match &config.output_path {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::Domain(format!("stdout: {e}")))
        }
    }
}

fn enumerate(lam: &HighestWeight, config: &RunConfig) -> Result<u8> {
    let basis = PatternBasis::new(lam, config.dimension_guard)?;
    let mut text = String::new();
    for p in basis.patterns() {
        text.push_str(&p.to_line());
        text.push('\n');
    }
    emit(config, &text)?;
    Ok(0)
}

fn dim(lam: &HighestWeight, config: &RunConfig) -> Result<u8> {
    let count = count_patterns(lam);
    let weyl = weyl_dim(lam);
    emit(config, &format!("{count}\n"))?;
    if count != weyl {
        eprintln!("pattern count {count} disagrees with Weyl dimension {weyl}");
        return Ok(1);
    }
    Ok(0)
}

fn matrix(lam: &HighestWeight, config: &RunConfig, name: &str) -> Result<u8> {
    let (i, j) = parse_generator_name(name)?;
    let rank = lam.rank();
    SignedIndex::new(i, rank).map_err(|_| Error::UnknownGenerator(name.to_string()))?;
    SignedIndex::new(j, rank).map_err(|_| Error::UnknownGenerator(name.to_string()))?;
    let basis = PatternBasis::new(lam, config.dimension_guard)?;
    let op: SparseOperator = match Generator::from_indices(i, j, rank) {
        Ok(g) => generator_matrix(&basis, g)?,
        Err(_) => close_algebra(&basis)?.op(i, j)?,
    };
    let label = format!("F[{i},{j}]");
    let text = match config.output_format {
        OutputFormat::ExactJson => to_exact_json(lam, &label, &op),
        OutputFormat::MatrixMarket => to_matrix_market(lam, &label, &op),
    };
    emit(config, &text)?;
    Ok(0)
}

fn suite(passed: bool, mut details: Value) -> Value {
    details["passed"] = json!(passed);
    details
}

fn verify(lam: &HighestWeight, config: &RunConfig) -> Result<u8> {
    let basis = PatternBasis::new(lam, config.dimension_guard)?;
    let mut suites = serde_json::Map::new();
    let mut summary = Vec::new();

    let count = count_patterns(lam);
    let weyl = weyl_dim(lam);
    let ok = count == weyl && count == basis.len().into();
    suites.insert(
        "dimension".into(),
        suite(ok, json!({"patterns": count.to_string(), "weyl": weyl.to_string()})),
    );
    summary.push(format!("dimension: {count} patterns, Weyl {weyl}"));

    let closure: std::result::Result<Closure, Error> = close_algebra(&basis);
    match &closure {
        Ok(closure) => {
            let report = verify_relations(closure)?;
            suites.insert(
                "relations".into(),
                suite(
                    report.passed(),
                    json!({
                        "span_dimension": closure.span_dim(),
                        "basis_elements": report.basis_elements,
                        "pairs_checked": report.pairs_checked,
                        "nonzero_residuals": report.failures.len(),
                        "generator_mismatches": report.generator_mismatches.len(),
                        "symmetry_violations": report.symmetry_violations.len(),
                    }),
                ),
            );
            summary.push(format!(
                "relations: {} pairs, {} nonzero residuals",
                report.pairs_checked,
                report.failures.len()
            ));

            let entry = match casimir(closure) {
                Ok((_, scalar)) => {
                    summary.push(format!("casimir: scalar {}", format_rational(&scalar)));
                    suite(true, json!({"scalar": format_rational(&scalar)}))
                }
                Err(e) => {
                    summary.push(format!("casimir: {e}"));
                    suite(false, json!({"error": e.to_string()}))
                }
            };
            suites.insert("casimir".into(), entry);

            let entry = match highest_vector(closure) {
                Ok(index) => {
                    summary.push(format!("highest vector: basis index {index}"));
                    suite(true, json!({"index": index}))
                }
                Err(e) => {
                    summary.push(format!("highest vector: {e}"));
                    suite(false, json!({"error": e.to_string()}))
                }
            };
            suites.insert("highest_vector".into(), entry);
        }
        Err(e) => {
            summary.push(format!("closure: {e}"));
            suites.insert("relations".into(), suite(false, json!({"error": e.to_string()})));
        }
    }

    let chi = character(&basis);
    let oracle = weyl_character(lam)?;
    let ok = chi == oracle && is_hyperoctahedral_invariant(&chi);
    suites.insert("character".into(), suite(ok, json!({"distinct_weights": chi.len()})));
    summary.push(format!("character: {} distinct weights", chi.len()));

    if lam.rank() >= 2 {
        let terms = branch(lam)?;
        let mut ok = branched_dimension(&terms) == weyl;
        for t in &terms {
            ok &= multiplicity_product(lam, &t.mu)? == t.multiplicity;
        }
        suites.insert("branching".into(), suite(ok, json!({"components": terms.len()})));
        summary.push(format!("branching: {} components", terms.len()));
    }

    let passed = suites.values().all(|s| s["passed"] == json!(true));
    let report = json!({
        "schema": SCHEMA,
        "kind": "verify",
        "lambda": lam.entries(),
        "dimension": basis.len(),
        "suites": suites,
        "passed": passed,
    });
    for line in &summary {
        eprintln!("{line}");
    }
    eprintln!("{}", if passed { "all suites passed" } else { "SUITE FAILURE" });
    emit(config, &format!("{report}\n"))?;
    Ok(if passed { 0 } else { 1 })
}

fn branch_table(lam: &HighestWeight, config: &RunConfig) -> Result<u8> {
    let terms = branch(lam)?;
    let mut text = String::from("mu\tc\talpha\tbeta\tdim\n");
    let fmt = |v: &[sympgt_core::Rational]| {
        v.iter().map(format_rational).collect::<Vec<_>>().join(",")
    };
    for t in &terms {
        text.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            t.mu,
            t.multiplicity,
            fmt(&t.alphas),
            fmt(&t.betas),
            weyl_dim(&t.mu)
        ));
    }
    let total = branched_dimension(&terms);
    let dim = weyl_dim(lam);
    let ok = total == dim;
    text.push_str(&format!(
        "sum c*dim = {total}, dim = {dim}: {}\n",
        if ok { "ok" } else { "MISMATCH" }
    ));
    emit(config, &text)?;
    Ok(if ok { 0 } else { 1 })
}

fn character_table(lam: &HighestWeight, config: &RunConfig) -> Result<u8> {
    let basis = PatternBasis::new(lam, config.dimension_guard)?;
    let mut text = String::new();
    for (weight, mult) in character(&basis) {
        text.push_str(&format!("{weight}\t{mult}\n"));
    }
    emit(config, &text)?;
    Ok(0)
}

fn casimir_value(lam: &HighestWeight, config: &RunConfig) -> Result<u8> {
    let basis = PatternBasis::new(lam, config.dimension_guard)?;
    let (_, scalar) = casimir(&close_algebra(&basis)?)?;
    emit(config, &format!("{}\n", format_rational(&scalar)))?;
    Ok(0)
}
