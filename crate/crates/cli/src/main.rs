//! Command-line front end: braid-relation verification, convolution
//! monodromy matrices, constituent decomposition and the full seven-point
//! certification pipeline. All reports are JSON; exact rationals are
//! serialized as "p/q" strings.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use ellconv::braid::{
    braid_action, check_braid_relations, deformations_equal, delta_words, free_reduce,
    global_alpha_deformation, global_beta_deformation, is_pure_conjugation, TupleDeformation,
};
use ellconv::cocycle::convolution_monodromy;
use ellconv::linalg::{Mat, Rat};
use ellconv::monodromy::MonodromyTuple;
use ellconv::repdecomp::{decompose, DecomposeConfig, Representation};
use ellconv::tannaka::{verify_g2, CaseLabel, SevenPointSheaf};

#[derive(Parser)]
#[command(
    name = "ellconv",
    about = "Exact monodromy of convolutions of local systems on punctured elliptic curves",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify braid relations, the loop-word suite and the quotient-level
    /// product relation.
    Relations(RelationsArgs),
    /// Compute the 21 quotient-level monodromy matrices of a self
    /// convolution.
    Convolve(InputArgs),
    /// Decompose the convolution representation into irreducible
    /// constituents.
    Decompose(InputArgs),
    /// Run the full certification pipeline and emit the report.
    G2(InputArgs),
}

#[derive(Args)]
struct RelationsArgs {
    /// Strand count for the braid-relation check.
    #[arg(long, default_value_t = 14)]
    strands: usize,
    /// Corrupt the given loop word (1-based) before checking; test hook.
    #[arg(long)]
    mutate_delta: Option<usize>,
    /// Skip the matrix-level product-relation suite.
    #[arg(long)]
    skip_matrix: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InputArgs {
    /// Family label: I, II-i, II-ii, II-iii, beauville.
    #[arg(long)]
    case: Option<String>,
    /// Parameter override `name=value` with rational value, repeatable.
    #[arg(long = "param")]
    params: Vec<String>,
    /// JSON file holding a monodromy tuple (rank, locals, handle).
    #[arg(long)]
    tuple: Option<PathBuf>,
    /// Output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for the randomized decomposition steps.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated certificate primes.
    #[arg(long, value_delimiter = ',')]
    primes: Vec<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Relations(args) => cmd_relations(args),
        Command::Convolve(args) => cmd_convolve(args),
        Command::Decompose(args) => cmd_decompose(args),
        Command::G2(args) => cmd_g2(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn emit<T: Serialize>(out: &Option<PathBuf>, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {path:?}"))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

#[derive(Serialize)]
struct DeltaCheck {
    index: usize,
    preserves_product: bool,
    pure_conjugation: bool,
    inverse_roundtrip: bool,
}

#[derive(Serialize)]
struct RelationsReport {
    strands: usize,
    braid_relations_pass: bool,
    braid_relation_failures: Vec<String>,
    delta_suite: Option<Vec<DeltaCheck>>,
    globals_match_reference: Option<bool>,
    matrix_product_relation: Option<bool>,
    pass: bool,
}

fn cmd_relations(args: RelationsArgs) -> Result<bool> {
    let relations = check_braid_relations(args.strands);
    let braid_relations_pass = relations.all_pass();
    let braid_relation_failures = relations
        .failures()
        .iter()
        .map(|c| c.label.clone())
        .collect();

    // loop-word suite only applies at the reference strand count
    let mut delta_suite = None;
    let mut globals_match = None;
    let mut matrix_ok = None;
    if args.strands == 14 {
        let mut words = delta_words();
        if let Some(k) = args.mutate_delta {
            if k == 0 || k > words.len() {
                bail!("--mutate-delta index {k} out of range 1..=19");
            }
            words[k - 1].0.push(1);
        }
        let id = TupleDeformation::identity(14);
        let reference = free_reduce(&id.local_product());
        let mut checks = Vec::with_capacity(words.len());
        for (i, w) in words.iter().enumerate() {
            let deformed = braid_action(w, &id)?;
            let preserves_product = free_reduce(&deformed.local_product()) == reference;
            let pure_conjugation = is_pure_conjugation(&deformed);
            let back = braid_action(&w.inverse(), &deformed)?;
            let inverse_roundtrip = deformations_equal(&back, &id);
            checks.push(DeltaCheck {
                index: i + 1,
                preserves_product,
                pure_conjugation,
                inverse_roundtrip,
            });
        }
        delta_suite = Some(checks);

        globals_match = Some(globals_match_reference());

        if !args.skip_matrix {
            let sheaf = ellconv::tannaka::beauville_on_e_tuple();
            let cm = convolution_monodromy(&sheaf.tuple, &sheaf.tuple)?;
            matrix_ok = Some(cm.product_relation().is_identity());
        }
    }

    let pass = braid_relations_pass
        && delta_suite.as_ref().map_or(true, |cs| {
            cs.iter()
                .all(|c| c.preserves_product && c.pure_conjugation && c.inverse_roundtrip)
        })
        && globals_match.unwrap_or(true)
        && matrix_ok.unwrap_or(true);
    let report = RelationsReport {
        strands: args.strands,
        braid_relations_pass,
        braid_relation_failures,
        delta_suite,
        globals_match_reference: globals_match,
        matrix_product_relation: matrix_ok,
        pass,
    };
    emit(&args.out, &report)?;
    Ok(pass)
}

/// The two handle deformations at 7+7 points, compared letter by letter
/// after free reduction against the reference word lists.
fn globals_match_reference() -> bool {
    use ellconv::braid::{GeneratorWord, Letter};
    let build = |rows: &[Vec<(usize, i8)>]| -> TupleDeformation {
        TupleDeformation {
            components: rows
                .iter()
                .map(|r| GeneratorWord(r.iter().map(|&(k, e)| Letter(k, e)).collect()))
                .collect(),
        }
    };
    let mut alpha_rows: Vec<Vec<(usize, i8)>> = Vec::new();
    for i in 1..=7usize {
        let mut w: Vec<(usize, i8)> = (8..=14).rev().map(|k| (k, -1)).collect();
        w.push((i, 1));
        w.extend((8..=14).map(|k| (k, 1)));
        alpha_rows.push(w);
    }
    for k in 8..=14usize {
        alpha_rows.push(vec![(15, 1), (k, 1), (15, -1)]);
    }
    alpha_rows.push(vec![(15, 1)]);
    let mut beta_of_alpha: Vec<(usize, i8)> = (8..=14).rev().map(|k| (k, -1)).collect();
    beta_of_alpha.push((16, 1));
    alpha_rows.push(beta_of_alpha);

    let mut beta_rows: Vec<Vec<(usize, i8)>> = Vec::new();
    for i in 1..=7usize {
        let mut w: Vec<(usize, i8)> = vec![(16, 1)];
        w.extend((8..=14).map(|k| (k, 1)));
        w.push((16, -1));
        w.push((i, 1));
        w.push((16, 1));
        w.extend((8..=14).rev().map(|k| (k, -1)));
        w.push((16, -1));
        beta_rows.push(w);
    }
    for k in 8..=14usize {
        beta_rows.push(vec![(16, 1), (k, 1), (16, -1)]);
    }
    let mut alpha_of_beta: Vec<(usize, i8)> = (8..=14).map(|k| (k, 1)).collect();
    alpha_of_beta.push((15, 1));
    beta_rows.push(alpha_of_beta);
    beta_rows.push(vec![(16, 1)]);

    deformations_equal(&global_alpha_deformation(7, 7), &build(&alpha_rows))
        && deformations_equal(&global_beta_deformation(7, 7), &build(&beta_rows))
}

fn parse_params(items: &[String]) -> Result<BTreeMap<String, Rat>> {
    let mut map = BTreeMap::new();
    for item in items {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| anyhow!("parameter {item:?} is not of the form name=value"))?;
        let rat: Rat = value.parse().map_err(|e| anyhow!("parameter {key}: {e}"))?;
        map.insert(key.trim().to_string(), rat);
    }
    Ok(map)
}

enum Input {
    Sheaf(SevenPointSheaf),
    Tuple(MonodromyTuple),
}

fn load_input(args: &InputArgs) -> Result<Input> {
    match (&args.case, &args.tuple) {
        (Some(_), Some(_)) => bail!("--case and --tuple are mutually exclusive"),
        (None, None) => bail!("one of --case or --tuple is required"),
        (Some(case), None) => {
            let label = CaseLabel::parse(case).ok_or_else(|| {
                anyhow!("unknown case {case:?}; use I, II-i, II-ii, II-iii or beauville")
            })?;
            if label == CaseLabel::Beauville {
                return Ok(Input::Sheaf(ellconv::tannaka::beauville_on_e_tuple()));
            }
            let mut params = SevenPointSheaf::default_params(label);
            for (k, v) in parse_params(&args.params)? {
                params.insert(k, v);
            }
            Ok(Input::Sheaf(SevenPointSheaf::from_case(label, params)?))
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {path:?}"))?;
            let tuple: MonodromyTuple =
                serde_json::from_str(&text).context("parsing monodromy tuple JSON")?;
            tuple.validate()?;
            Ok(Input::Tuple(tuple))
        }
    }
}

fn decompose_config(args: &InputArgs) -> DecomposeConfig {
    let mut cfg = DecomposeConfig {
        seed: args.seed,
        ..DecomposeConfig::default()
    };
    if !args.primes.is_empty() {
        cfg.certificate_primes = args.primes.clone();
    }
    cfg
}

#[derive(Serialize)]
struct ConvolveReport {
    w_dim: usize,
    matrices: Vec<Mat>,
    convention: &'static str,
}

fn cmd_convolve(args: InputArgs) -> Result<bool> {
    let tuple = match load_input(&args)? {
        Input::Sheaf(s) => s.tuple,
        Input::Tuple(t) => t,
    };
    let cm = convolution_monodromy(&tuple, &tuple)?;
    let report = ConvolveReport {
        w_dim: cm.w_dim(),
        matrices: cm.matrices.iter().map(|m| m.induced.clone()).collect(),
        convention: "globals-inverted",
    };
    emit(&args.out, &report)?;
    Ok(true)
}

#[derive(Serialize)]
struct ConstituentReport {
    rank: usize,
    multiplicity: usize,
    certificate: ellconv::repdecomp::Certificate,
    endomorphism_dim: usize,
    sub_basis: ellconv::linalg::Subspace,
}

#[derive(Serialize)]
struct DecomposeReport {
    w_dim: usize,
    seed: u64,
    constituents: Vec<ConstituentReport>,
}

fn cmd_decompose(args: InputArgs) -> Result<bool> {
    let tuple = match load_input(&args)? {
        Input::Sheaf(s) => s.tuple,
        Input::Tuple(t) => t,
    };
    let cfg = decompose_config(&args);
    let cm = convolution_monodromy(&tuple, &tuple)?;
    let rep = Representation::new(cm.matrices.iter().map(|m| m.induced.clone()).collect());
    let constituents = decompose(&rep, &cfg)?;
    let report = DecomposeReport {
        w_dim: cm.w_dim(),
        seed: cfg.seed,
        constituents: constituents
            .into_iter()
            .map(|c| ConstituentReport {
                rank: c.rank,
                multiplicity: c.multiplicity,
                certificate: c.certificate,
                endomorphism_dim: c.endomorphism_dim,
                sub_basis: c.sub_basis,
            })
            .collect(),
    };
    emit(&args.out, &report)?;
    Ok(true)
}

fn cmd_g2(args: InputArgs) -> Result<bool> {
    let sheaf = match load_input(&args)? {
        Input::Sheaf(s) => s,
        Input::Tuple(tuple) => {
            // raw tuples are accepted when they have the seven-point shape
            if tuple.locals.len() != 7 || tuple.rank != 2 {
                bail!(
                    "raw tuple must have 7 rank-2 locals, got {} of rank {}",
                    tuple.locals.len(),
                    tuple.rank
                );
            }
            SevenPointSheaf {
                source: None,
                tuple,
                case_label: CaseLabel::Custom,
                parameters: BTreeMap::new(),
            }
        }
    };
    let cfg = decompose_config(&args);
    let report = verify_g2(&sheaf, &cfg)?;
    let pass = report.conclusion == "G2";
    emit(&args.out, &report)?;
    Ok(pass)
}
