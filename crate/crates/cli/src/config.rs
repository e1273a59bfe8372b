use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use opfractal::spectrum::MAX_DIGITS;
use opfractal::BernoulliParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Pgm,
    Svg,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Text => "txt",
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Pgm => "pgm",
            Format::Svg => "svg",
        }
    }
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Scale parameter: λ = 1/(2n).
    #[arg(long, global = true, default_value_t = 2)]
    pub n: u32,

    /// Odd spectral scaling p ≥ 3 for U.
    #[arg(long, global = true)]
    pub p: Option<u32>,

    /// Largest digit length of spectrum words.
    #[arg(long, global = true, default_value_t = 6)]
    pub max_digits: u32,

    /// Target error bound for μ̂ values.
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub tol: f64,

    /// Fixed number of product factors (overrides --tol where applicable).
    #[arg(long, global = true)]
    pub terms: Option<u32>,

    /// Seed for Monte-Carlo sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Output file; defaults to stdout, or a generated name in --out-dir.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    /// Directory for generated output files.
    #[arg(long, global = true, env = "OPFRACTAL_OUT_DIR")]
    pub out_dir: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// Validated options shared by all subcommands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: BernoulliParams,
    pub max_digits: u32,
    pub tol: f64,
    pub terms: Option<u32>,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn from_args(args: &GlobalArgs) -> anyhow::Result<Self> {
        let params = BernoulliParams::new(args.n, args.p)?;
        if !(args.tol.is_finite() && args.tol > 0.0) {
            bail!("--tol must be a positive finite number, got {}", args.tol);
        }
        if args.max_digits > MAX_DIGITS {
            bail!(
                "--max-digits must be at most {MAX_DIGITS}, got {}",
                args.max_digits
            );
        }
        if args.terms == Some(0) {
            bail!("--terms must be positive");
        }
        Ok(RunConfig {
            params,
            max_digits: args.max_digits,
            tol: args.tol,
            terms: args.terms,
            seed: args.seed,
            output: args.output.clone(),
            out_dir: args.out_dir.clone(),
            format: args.format,
        })
    }

    pub fn require_format(&self, command: &str, allowed: &[Format]) -> anyhow::Result<()> {
        if !allowed.contains(&self.format) {
            bail!(
                "{command} does not support --format {}",
                self.format
                    .to_possible_value()
                    .expect("no skipped variants")
                    .get_name()
            );
        }
        Ok(())
    }

    /// The output sink: --output, else `stem.ext` in --out-dir when
    /// `use_out_dir` is set, else stdout.
    pub fn writer(&self, stem: &str, use_out_dir: bool) -> anyhow::Result<Box<dyn Write>> {
        let path = match (&self.output, &self.out_dir) {
            (Some(path), _) => Some(path.clone()),
            (None, Some(dir)) if use_out_dir => {
                std::fs::create_dir_all(dir)
                    .with_context(|| format!("creating {}", dir.display()))?;
                Some(dir.join(format!("{stem}.{}", self.format.extension())))
            }
            _ => None,
        };
        Ok(match path {
            Some(path) => {
                let file =
                    File::create(&path).with_context(|| format!("creating {}", path.display()))?;
                eprintln!("writing {}", path.display());
                Box::new(BufWriter::new(file))
            }
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }

    /// A short tag for generated file names.
    pub fn tag(&self) -> String {
        match self.params.p() {
            Some(p) => format!("n{}-p{}-d{}", self.params.n(), p, self.max_digits),
            None => format!("n{}-d{}", self.params.n(), self.max_digits),
        }
    }
}
