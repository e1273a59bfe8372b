use std::io::Write;

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use serde_json::json;

use opfractal::matrix::{self, analyze_w0_sparsity, block_summary, BlockMatrix, SparsityReport};
use opfractal::operators::{parseval_table, verify_cuntz, Base};
use opfractal::spectrum::{enumerate_gamma, stratum_index, tilde_stratum_index, word_value};
use opfractal::{
    chaos_game_estimate, mu_hat_at, mu_hat_product, Frequency, GammaOrder, MuHatValue, Report,
};

use crate::config::{Format, RunConfig};

fn parse_frequency(s: &str) -> Result<Frequency, String> {
    s.parse::<Frequency>().map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct MuhatArgs {
    /// Frequency: integer, fraction a/b, or decimal.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_frequency)]
    pub t: Frequency,
}

fn evaluate(config: &RunConfig, t: Frequency) -> anyhow::Result<MuHatValue> {
    Ok(match config.terms {
        Some(terms) => mu_hat_product(t.to_f64(), config.params, terms)?,
        None => mu_hat_at(t, config.params, config.tol)?,
    })
}

pub fn muhat(config: &RunConfig, args: &MuhatArgs) -> anyhow::Result<bool> {
    config.require_format("muhat", &[Format::Text, Format::Json])?;
    let value = evaluate(config, args.t)?;
    let mut out = config.writer("muhat", false)?;
    match config.format {
        Format::Json => {
            let doc = json!({ "t": args.t.to_string(), "params": config.params, "value": value });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        _ => {
            writeln!(out, "t: {}", args.t)?;
            writeln!(out, "exact_zero: {}", value.exact_zero)?;
            writeln!(out, "sign: {}", value.sign)?;
            writeln!(out, "magnitude: {}", value.magnitude)?;
            writeln!(out, "error_bound: {:e}", value.error_bound)?;
            writeln!(out, "value: {}", value.value())?;
            writeln!(out, "terms: {}", value.terms)?;
        }
    }
    out.flush()?;
    Ok(true)
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Order {
    Value,
    Strata,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long, value_enum, default_value_t = Order::Value)]
    pub order: Order,
}

pub fn spectrum(config: &RunConfig, args: &SpectrumArgs) -> anyhow::Result<bool> {
    config.require_format("spectrum", &[Format::Text, Format::Csv, Format::Json])?;
    let order = match args.order {
        Order::Value => GammaOrder::ValueAscending,
        Order::Strata => GammaOrder::StrataMajor,
    };
    let params = config.params;
    let mut rows = Vec::new();
    for w in enumerate_gamma(config.max_digits, order) {
        let tilde = if w.digit(0) {
            tilde_stratum_index(w, params)?.to_string()
        } else {
            "-".to_string()
        };
        rows.push((w, word_value(w, params), stratum_index(w), tilde));
    }
    let mut out = config.writer(&format!("spectrum-{}", config.tag()), true)?;
    match config.format {
        Format::Json => {
            let doc: Vec<_> = rows
                .iter()
                .map(|(w, v, s, t)| {
                    json!({ "word": w, "value": v, "stratum": s.to_string(), "tilde": t })
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Format::Csv => {
            writeln!(out, "word,value,stratum,tilde")?;
            for (w, v, s, t) in &rows {
                writeln!(out, "{w},{v},{s},{t}")?;
            }
        }
        _ => {
            writeln!(
                out,
                "{:<24} {:>16} {:>8} {:>8}",
                "word", "value", "stratum", "tilde"
            )?;
            for (w, v, s, t) in &rows {
                let shown = if w.is_empty() {
                    "()".to_string()
                } else {
                    w.to_string()
                };
                writeln!(
                    out,
                    "{shown:<24} {:>16} {:>8} {t:>8}",
                    v.to_string(),
                    s.to_string()
                )?;
            }
        }
    }
    out.flush()?;
    Ok(true)
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    /// Pixel size of one entry in SVG output.
    #[arg(long, default_value_t = 8)]
    pub cell: u32,
}

pub fn matrix(config: &RunConfig, args: &MatrixArgs) -> anyhow::Result<bool> {
    if config.params.p().is_none() {
        bail!("matrix needs --p");
    }
    let m = BlockMatrix::strata_major(config.params, config.max_digits, config.tol)?;
    let mut out = config.writer(&format!("matrix-{}", config.tag()), true)?;
    match config.format {
        Format::Csv => matrix::write_csv(&m, &mut out)?,
        Format::Pgm => matrix::write_pgm(&m, &mut out)?,
        Format::Svg => matrix::write_svg(&m, &mut out, args.cell)?,
        Format::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(&block_summary(&m))?)?;
        }
        Format::Text => {
            let summary = block_summary(&m);
            writeln!(out, "size: {}", summary.size)?;
            for (stratum, count) in &summary.strata {
                writeln!(out, "stratum {stratum}: {count} indices")?;
            }
            for c in &summary.cells {
                if c.nonzero > 0 {
                    writeln!(
                        out,
                        "block ({}, {}): {}/{} nonzero, max |entry| {}",
                        c.row, c.col, c.nonzero, c.entries, c.max_magnitude
                    )?;
                }
            }
        }
    }
    out.flush()?;
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Cuntz,
    BlockDiagonal,
    BlockEquality,
    CommuteEven,
    CommuteOdd,
    Multiplication,
    W0Sparsity,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,

    /// Highest stratum compared by block-equality.
    #[arg(long, default_value_t = 3)]
    pub k_max: u32,

    /// Digit length searched for sparsity witnesses (default: max-digits + 2).
    #[arg(long)]
    pub witness_digits: Option<u32>,
}

struct Outcome {
    report: Report,
    sparsity: Option<SparsityReport>,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome {
            report,
            sparsity: None,
        }
    }
}

fn fixed_quarter_five(config: &RunConfig) -> bool {
    config.params.n() == 2 && matches!(config.params.p(), None | Some(5))
}

fn run_suite(config: &RunConfig, suite: Suite, args: &VerifyArgs) -> anyhow::Result<Outcome> {
    let params = config.params;
    let d = config.max_digits;
    Ok(match suite {
        Suite::Cuntz => verify_cuntz(params, d).into(),
        Suite::BlockDiagonal => matrix::verify_block_diagonal(params, d)?.into(),
        Suite::BlockEquality => matrix::verify_block_equality(params, d, args.k_max)?.into(),
        Suite::CommuteEven => matrix::verify_commutation_even(params, d)?.into(),
        Suite::CommuteOdd => matrix::verify_odd_relations(params, d)?.into(),
        Suite::Multiplication => {
            if !fixed_quarter_five(config) {
                bail!("multiplication is only defined for n = 2, p = 5");
            }
            matrix::verify_multiplication_identity(d, config.tol)?.into()
        }
        Suite::W0Sparsity => {
            if !fixed_quarter_five(config) {
                bail!("w0-sparsity is only defined for n = 2, p = 5");
            }
            let sparsity = analyze_w0_sparsity(d, args.witness_digits)?;
            Outcome {
                report: sparsity.report.clone(),
                sparsity: Some(sparsity),
            }
        }
        Suite::All => unreachable!("expanded by the caller"),
    })
}

/// The suites `all` runs for the configured parameters, with reasons for
/// the ones it leaves out.
fn applicable_suites(config: &RunConfig) -> (Vec<Suite>, Vec<String>) {
    let mut run = vec![Suite::Cuntz];
    let mut skipped = Vec::new();
    let has_p = config.params.p().is_some();
    for suite in [Suite::BlockDiagonal, Suite::BlockEquality] {
        if has_p {
            run.push(suite);
        } else {
            skipped.push(format!("{suite:?}: needs --p"));
        }
    }
    match (has_p, config.params.is_even()) {
        (true, true) => run.push(Suite::CommuteEven),
        (true, false) => run.push(Suite::CommuteOdd),
        (false, _) => skipped.push("commutation: needs --p".into()),
    }
    if fixed_quarter_five(config) {
        run.extend([Suite::Multiplication, Suite::W0Sparsity]);
    } else {
        skipped.push("Multiplication, W0Sparsity: need n = 2, p = 5".into());
    }
    (run, skipped)
}

fn write_sparsity_text(out: &mut dyn Write, s: &SparsityReport) -> anyhow::Result<()> {
    let classes: Vec<String> = s.classes.iter().map(|(c, n)| format!("{c}:{n}")).collect();
    writeln!(out, "  classes: {}", classes.join(" "))?;
    for b in &s.blocks {
        write!(
            out,
            "  block ({}, {}): expected {:?}, {}/{} nonzero",
            b.row,
            b.col,
            b.expected,
            b.nonzero,
            b.rows * b.cols
        )?;
        if let Some(w) = &b.witness {
            write!(out, ", witness U({}, {}) = {}", w.row, w.col, w.value)?;
        }
        if let Some(w) = &b.exact_one {
            write!(out, ", exact one at U({}, {})", w.row, w.col)?;
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn verify(config: &RunConfig, args: &VerifyArgs) -> anyhow::Result<bool> {
    config.require_format("verify", &[Format::Text, Format::Json])?;
    let (suites, skipped) = match args.suite {
        Suite::All => applicable_suites(config),
        suite => (vec![suite], Vec::new()),
    };
    let mut outcomes = Vec::new();
    for suite in suites {
        let outcome = run_suite(config, suite, args).with_context(|| format!("suite {suite:?}"))?;
        outcomes.push(outcome);
    }
    let passed = outcomes.iter().all(|o| o.report.passed());

    let mut out = config.writer("verify", false)?;
    match config.format {
        Format::Json => {
            let reports: Vec<_> = outcomes
                .iter()
                .map(|o| json!({ "report": o.report, "sparsity": o.sparsity }))
                .collect();
            let doc = json!({
                "params": config.params,
                "max_digits": config.max_digits,
                "passed": passed,
                "suites": reports,
                "skipped": skipped,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        _ => {
            for o in &outcomes {
                writeln!(out, "{}", o.report)?;
                for note in &o.report.notes {
                    writeln!(out, "  note: {note}")?;
                }
                if let Some(s) = &o.sparsity {
                    write_sparsity_text(&mut out, s)?;
                }
                for v in &o.report.violations {
                    writeln!(
                        out,
                        "VIOLATION\t{}\t{}\t{}",
                        o.report.suite, v.context, v.detail
                    )?;
                }
            }
            for s in &skipped {
                writeln!(out, "skipped: {s}")?;
            }
        }
    }
    out.flush()?;
    Ok(passed)
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BaseArg {
    /// The canonical spectrum Γ.
    Gamma,
    /// The scaled set pΓ.
    Scaled,
}

#[derive(Debug, Args)]
pub struct ParsevalArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_frequency)]
    pub t: Frequency,

    #[arg(long, value_enum, default_value_t = BaseArg::Gamma)]
    pub base: BaseArg,
}

pub fn parseval(config: &RunConfig, args: &ParsevalArgs) -> anyhow::Result<bool> {
    config.require_format("parseval", &[Format::Text, Format::Csv, Format::Json])?;
    let base = match args.base {
        BaseArg::Gamma => Base::Gamma,
        BaseArg::Scaled => Base::Scaled,
    };
    let table = parseval_table(args.t, base, config.params, config.max_digits, config.tol)?;
    let bessel = table.iter().all(|row| row.respects_bessel());
    let mut out = config.writer("parseval", false)?;
    match config.format {
        Format::Json => {
            let doc = json!({ "t": args.t.to_string(), "base": base, "params": config.params, "rows": table });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Format::Csv => {
            writeln!(out, "digits,sum,error_bound")?;
            for row in &table {
                writeln!(out, "{},{},{:e}", row.digits, row.value, row.error_bound)?;
            }
        }
        _ => {
            writeln!(out, "{:>6} {:>20} {:>12}", "digits", "sum", "error_bound")?;
            for row in &table {
                writeln!(
                    out,
                    "{:>6} {:>20.16} {:>12.3e}",
                    row.digits, row.value, row.error_bound
                )?;
            }
        }
    }
    out.flush()?;
    Ok(bessel)
}

#[derive(Debug, Args)]
pub struct ChaosArgs {
    /// One or more frequencies (negative fractions as --t=-1/4).
    #[arg(long, required = true, num_args = 1.., allow_negative_numbers = true, value_parser = parse_frequency)]
    pub t: Vec<Frequency>,

    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
}

pub fn chaos(config: &RunConfig, args: &ChaosArgs) -> anyhow::Result<bool> {
    config.require_format("chaos", &[Format::Text, Format::Csv, Format::Json])?;
    let mut rows = Vec::new();
    for (i, &t) in args.t.iter().enumerate() {
        let product = evaluate(config, t)?;
        let estimate = chaos_game_estimate(
            t.to_f64(),
            config.params,
            args.samples,
            config.seed.wrapping_add(i as u64),
        )?;
        let z = estimate.z_score(product.value());
        rows.push((t, product, estimate, z));
    }
    let mut out = config.writer("chaos", false)?;
    match config.format {
        Format::Json => {
            let doc: Vec<_> = rows
                .iter()
                .map(|(t, p, e, z)| json!({ "t": t.to_string(), "product": p, "chaos": e, "z": z }))
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Format::Csv => {
            writeln!(out, "t,product,product_error,estimate,std_error,z")?;
            for (t, p, e, z) in &rows {
                writeln!(
                    out,
                    "{t},{},{:e},{},{:e},{z}",
                    p.value(),
                    p.error_bound,
                    e.estimate,
                    e.std_error
                )?;
            }
        }
        _ => {
            writeln!(
                out,
                "{:>12} {:>22} {:>22} {:>12} {:>8}",
                "t", "product", "estimate", "std_error", "z"
            )?;
            for (t, p, e, z) in &rows {
                writeln!(
                    out,
                    "{:>12} {:>22.16} {:>22.16} {:>12.3e} {:>8.3}",
                    t.to_string(),
                    p.value(),
                    e.estimate,
                    e.std_error,
                    z
                )?;
            }
        }
    }
    out.flush()?;
    Ok(true)
}
