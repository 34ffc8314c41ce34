use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use pifactor_core::factor::{
    factorize_nilpotent, factorize_rank2_euclid, lattice_form, verify_factorization,
    FactorizationReport, LatticeForm, NilFactorization, PrimitiveFactor,
};
use pifactor_core::wavelet::{
    check_biorthogonal, compose_biorthogonal, linear_condition_holds, quadratic_condition_holds,
    verify_theorem_instance,
};
use pifactor_core::{
    check_pseudoidentity, derive_partner, example_pair, probe_conjecture, random_pair,
    scalar_parse, ConstMatrix, Error, FieldScalar, FieldTag, LPMatrix, PseudoidentityViolation,
};

use crate::docs::{
    field_name, parse_any_factorization, parse_doc, render_compact, render_pretty,
    AnyFactorization, BundleDocument, FactorizationDocument, LatticeDocument, MatrixDocument,
};
use crate::error::{CliError, CliResult};
use crate::report::{Report, ReportFormat, Status};

#[derive(Debug, Parser)]
#[command(
    name = "pifactor",
    version,
    about = "Exact verification and factorization of pseudoidentity and biorthogonal wavelet matrix pairs",
    after_help = "Exit codes: 0 success, 1 usage, parse or I/O error, 2 mathematical violation.\n\
                  A path of '-' reads standard input. Documents without an output path go to \
                  standard output, one per line, and the report then goes to standard error."
)]
pub struct Cli {
    /// Layout of the report.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub report_format: ReportFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that two matrix documents form a pseudoidentity pair (C, D).
    Verify { c: String, d: String },
    /// Factor the left member C of a pseudoidentity pair.
    Factor(FactorArgs),
    /// Emit a pseudoidentity pair (C, D) as two matrix documents.
    Generate(GenerateArgs),
    /// Reproduce the rank-2 counterexample: the block conjecture fails on a valid pair.
    DemoCounterexample,
    /// Biorthogonal wavelet matrix pairs.
    Wavelet {
        #[command(subcommand)]
        command: WaveletCommand,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    General,
    Rank2Euclid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Nilpotent,
    Lattice,
}

#[derive(Debug, Args)]
pub struct FactorArgs {
    /// Matrix document holding C.
    pub input: String,
    /// Factorization algorithm; ignored with --emit lattice.
    #[arg(long, value_enum, default_value = "general")]
    pub strategy: Strategy,
    #[arg(long, value_enum, default_value = "nilpotent")]
    pub emit: Emit,
    /// Check an existing factorization or lattice document against C instead of factoring.
    #[arg(long, value_name = "FACTORS")]
    pub verify: Option<String>,
    #[arg(short, long, value_name = "PATH")]
    pub output: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Example21,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Field {
    #[value(name = "Q")]
    Q,
    #[value(name = "Qi", alias = "Q(i)")]
    Qi,
}

impl Field {
    fn tag(self) -> FieldTag {
        match self {
            Field::Q => FieldTag::Rational,
            Field::Qi => FieldTag::GaussianRational,
        }
    }
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Nonzero coefficients a_1..a_k (example21).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub a: Vec<String>,
    /// Strictly increasing positive exponents m_1..m_k (example21).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub m: Vec<i64>,
    #[arg(long, default_value_t = 2)]
    pub rank: usize,
    /// Number of primitive factors multiplied together (random).
    #[arg(long, default_value_t = 3)]
    pub factors: usize,
    #[arg(long, default_value_t = 3)]
    pub max_shift: i64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "Q")]
    pub field: Field,
    #[arg(long, value_name = "PATH")]
    pub out_c: Option<String>,
    #[arg(long, value_name = "PATH")]
    pub out_d: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum WaveletCommand {
    /// Check the quadratic and linear conditions for (L, R).
    Verify {
        l: String,
        r: String,
        /// Also recompose this bundle and compare it with (L, R).
        #[arg(long, value_name = "PATH")]
        bundle: Option<String>,
    },
    /// Build (L, R) from a bundle document. Extracting a bundle from a pair is not supported.
    Compose {
        bundle: String,
        #[arg(long, value_name = "PATH")]
        out_l: Option<String>,
        #[arg(long, value_name = "PATH")]
        out_r: Option<String>,
    },
}

pub struct Io<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

/// What a command produced besides its report.
pub struct Outcome {
    pub report: Report,
    pub wrote_stdout: bool,
}

impl Io<'_> {
    fn read(&mut self, path: &str) -> CliResult<String> {
        if path == "-" {
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|source| CliError::Io {
                    path: "<stdin>".into(),
                    source,
                })?;
            Ok(s)
        } else {
            std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.into(),
                source,
            })
        }
    }

    /// Writes a pretty document to `path`, or one compact line to stdout.
    /// Returns whether stdout was used.
    fn emit<T: serde::Serialize>(&mut self, doc: &T, path: Option<&str>) -> CliResult<bool> {
        match path {
            Some(p) if p != "-" => {
                std::fs::write(p, render_pretty(doc)).map_err(|source| CliError::Io {
                    path: p.into(),
                    source,
                })?;
                Ok(false)
            }
            _ => {
                writeln!(self.stdout, "{}", render_compact(doc)).map_err(|source| {
                    CliError::Io {
                        path: "<stdout>".into(),
                        source,
                    }
                })?;
                Ok(true)
            }
        }
    }

    fn load_matrix(&mut self, path: &str, what: &str) -> CliResult<LPMatrix> {
        let context = format!("{what} ({path})");
        let doc: MatrixDocument = parse_doc(&self.read(path)?, &context)?;
        doc.to_matrix(&context)
    }
}

pub fn execute(cli: &Cli, io: &mut Io<'_>) -> CliResult<Outcome> {
    match &cli.command {
        Command::Verify { c, d } => cmd_verify(io, c, d),
        Command::Factor(args) => match &args.verify {
            Some(factors) => cmd_factor_verify(io, &args.input, factors),
            None => cmd_factor(io, args),
        },
        Command::Generate(args) => cmd_generate(io, args),
        Command::DemoCounterexample => cmd_demo(),
        Command::Wavelet {
            command: WaveletCommand::Verify { l, r, bundle },
        } => cmd_wavelet_verify(io, l, r, bundle.as_deref()),
        Command::Wavelet {
            command:
                WaveletCommand::Compose {
                    bundle,
                    out_l,
                    out_r,
                },
        } => cmd_wavelet_compose(io, bundle, out_l.as_deref(), out_r.as_deref()),
    }
}

fn ok_or_violated(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "violated"
    }
}

fn holds(ok: bool) -> &'static str {
    if ok {
        "holds"
    } else {
        "fails"
    }
}

fn same_field(a: &LPMatrix, b: &LPMatrix) -> CliResult<(LPMatrix, LPMatrix)> {
    let tag = a.tag().join(b.tag());
    Ok((a.with_tag(tag)?, b.with_tag(tag)?))
}

fn cmd_verify(io: &mut Io<'_>, c_path: &str, d_path: &str) -> CliResult<Outcome> {
    let c = io.load_matrix(c_path, "C")?;
    let d = io.load_matrix(d_path, "D")?;
    if c.tag() != d.tag() {
        return Err(Error::FieldMismatch.into());
    }
    let mut r = Report::new("verify");
    r.set("rank", c.rank()).set("field", field_name(c.tag()));
    let violations = match check_pseudoidentity(&c, &d) {
        Ok(_) => Vec::new(),
        Err(Error::NotPseudoidentity(v)) => v,
        Err(e) => return Err(e.into()),
    };
    for (key, v) in [
        ("support", PseudoidentityViolation::Support),
        (
            "product_identity",
            PseudoidentityViolation::ProductNotIdentity,
        ),
        ("eval_one", PseudoidentityViolation::EvalOneNotIdentity),
        ("det_one", PseudoidentityViolation::DetNotOne),
    ] {
        r.set(key, ok_or_violated(!violations.contains(&v)));
    }
    if violations.is_empty() {
        let pair = check_pseudoidentity(&c, &d)?;
        r.set("k_c", pair.k_c)
            .set("k_d", pair.k_d)
            .set("genus_c", c.genus())
            .set("genus_d", d.genus());
        if pair.is_degenerate() {
            r.set("note", "degenerate (constant) pair");
        }
    } else {
        let codes: Vec<_> = violations
            .iter()
            .map(PseudoidentityViolation::code)
            .collect();
        r.fail(Status::Violation)
            .set("code", "NOT_PSEUDOIDENTITY")
            .set("violations", codes.join(","));
    }
    Ok(Outcome {
        report: r,
        wrote_stdout: false,
    })
}

fn factorization_entries(r: &mut Report, rep: &FactorizationReport) {
    r.set("factors", rep.factor_count)
        .set("sum_k", rep.sum_shifts)
        .set(
            "degree",
            rep.degree.map_or("none".to_string(), |d| d.to_string()),
        )
        .set("genus", rep.genus)
        .set("degree_bound", holds(rep.degree_bound_holds()))
        .set(
            "genus_bound",
            format!("{} (informational)", holds(rep.genus_bound_holds())),
        );
}

fn lattice_entries(r: &mut Report, lf: &LatticeForm, c: &LPMatrix) -> bool {
    let replay = lf.replay().with_tag(c.tag().join(lf.tag)).ok();
    let replay_ok = replay
        .as_ref()
        .zip(c.with_tag(c.tag().join(lf.tag)).ok())
        .is_some_and(|(a, b)| *a == b);
    let constant_ok = lf.constant_product().is_identity();
    r.set("stages", lf.stages.len())
        .set(
            "shifted_stages",
            lf.stages.iter().filter(|s| s.k > 0).count(),
        )
        .set("max_shift", lf.max_shift())
        .set(
            "degree",
            c.t_degree().map_or("none".to_string(), |d| d.to_string()),
        )
        .set("replay", ok_or_violated(replay_ok))
        .set("constant_product_identity", ok_or_violated(constant_ok));
    replay_ok && constant_ok
}

fn cmd_factor(io: &mut Io<'_>, args: &FactorArgs) -> CliResult<Outcome> {
    let c = io.load_matrix(&args.input, "C")?;
    derive_partner(&c)?;
    let mut r = Report::new("factor");
    r.set("rank", c.rank()).set("field", field_name(c.tag()));
    let wrote_stdout = match args.emit {
        Emit::Nilpotent => {
            let fac = match args.strategy {
                Strategy::General => factorize_nilpotent(&c)?,
                Strategy::Rank2Euclid => factorize_rank2_euclid(&c)?,
            };
            let doc = FactorizationDocument::from_factorization(&fac);
            // re-read what is about to be written so the check covers serialization too
            let reloaded =
                parse_doc::<FactorizationDocument>(&render_pretty(&doc), "emitted factorization")?
                    .to_factorization(c.tag(), "emitted factorization")?;
            let rep = verify_factorization(&c.with_tag(reloaded.tag)?, &reloaded);
            r.set(
                "strategy",
                args.strategy.to_possible_value().expect("named").get_name(),
            )
            .set("emit", "nilpotent");
            factorization_entries(&mut r, &rep);
            r.set("verified", rep.passed());
            if !rep.passed() {
                r.fail(Status::Violation)
                    .set("code", "FACTORIZATION_MISMATCH");
            }
            io.emit(&doc, args.output.as_deref())?
        }
        Emit::Lattice => {
            let lf = lattice_form(&c)?;
            let doc = LatticeDocument::from_lattice(&lf);
            let reloaded = parse_doc::<LatticeDocument>(&render_pretty(&doc), "emitted lattice")?
                .to_lattice("emitted lattice")?;
            r.set("emit", "lattice");
            let ok = lattice_entries(&mut r, &reloaded, &c);
            r.set("verified", ok);
            if !ok {
                r.fail(Status::Violation).set("code", "LATTICE_MISMATCH");
            }
            io.emit(&doc, args.output.as_deref())?
        }
    };
    Ok(Outcome {
        report: r,
        wrote_stdout,
    })
}

fn cmd_factor_verify(io: &mut Io<'_>, input: &str, factors: &str) -> CliResult<Outcome> {
    let c = io.load_matrix(input, "C")?;
    let context = format!("factors ({factors})");
    let any = parse_any_factorization(&io.read(factors)?, &context)?;
    let mut r = Report::new("factor-verify");
    r.set("rank", c.rank()).set("field", field_name(c.tag()));
    match any {
        AnyFactorization::Nilpotent(doc) => {
            let fac = doc.to_factorization(c.tag(), &context)?;
            let rep = verify_factorization(&c.with_tag(fac.tag)?, &fac);
            r.set("kind", "nilpotent");
            factorization_entries(&mut r, &rep);
            r.set("square_zero", ok_or_violated(rep.all_square_zero))
                .set("left_matches", rep.left_matches)
                .set(
                    "right_matches",
                    rep.right_matches
                        .map_or("undefined".to_string(), |b| b.to_string()),
                );
            if !rep.passed() {
                r.fail(Status::Violation)
                    .set("code", "FACTORIZATION_MISMATCH");
            }
        }
        AnyFactorization::Lattice(doc) => {
            let lf = doc.to_lattice(&context)?;
            if lf.rank != c.rank() {
                return Err(Error::RankMismatch(c.rank(), lf.rank).into());
            }
            r.set("kind", "lattice");
            if !lattice_entries(&mut r, &lf, &c) {
                r.fail(Status::Violation).set("code", "LATTICE_MISMATCH");
            }
        }
    }
    Ok(Outcome {
        report: r,
        wrote_stdout: false,
    })
}

fn cmd_generate(io: &mut Io<'_>, args: &GenerateArgs) -> CliResult<Outcome> {
    let tag = args.field.tag();
    let pair = match args.kind {
        Kind::Example21 => {
            let a = args
                .a
                .iter()
                .map(|s| scalar_parse(s, FieldTag::GaussianRational).and_then(|x| x.with_tag(tag)))
                .collect::<Result<Vec<FieldScalar>, _>>()?;
            example_pair(&a, &args.m)?
        }
        Kind::Random => random_pair(tag, args.rank, args.factors, args.max_shift, args.seed)?,
    };
    let mut r = Report::new("generate");
    r.set(
        "kind",
        args.kind.to_possible_value().expect("named").get_name(),
    )
    .set("rank", pair.rank())
    .set("field", field_name(pair.c.tag()))
    .set("k_c", pair.k_c)
    .set("k_d", pair.k_d);
    if args.kind == Kind::Random {
        r.set("seed", args.seed);
    }
    let c_out = io.emit(&MatrixDocument::from_matrix(&pair.c), args.out_c.as_deref())?;
    let d_out = io.emit(&MatrixDocument::from_matrix(&pair.d), args.out_d.as_deref())?;
    Ok(Outcome {
        report: r,
        wrote_stdout: c_out || d_out,
    })
}

fn cmd_demo() -> CliResult<Outcome> {
    let q = FieldTag::Rational;
    let one = FieldScalar::one(q);
    let pair = example_pair(&[one.clone(), one], &[1, 2])?;
    let probe = probe_conjecture(&pair)?;
    let mut r = Report::new("demo-counterexample");
    r.set("pair", "a = (1, 1), m = (1, 2)")
        .set("c_blocks", format_blocks(&pair.c))
        .set("d_blocks", format_blocks(&pair.d))
        .set("k_c", pair.k_c)
        .set("p", probe.p)
        .set("c_block", &probe.c_block)
        .set("c_block_det", probe.c_block.det())
        .set("c_block_invertible", probe.c_block_invertible)
        .set("d_block", &probe.d_block)
        .set("d_block_invertible", probe.d_block_invertible)
        .set("conjecture_holds", probe.conjecture_holds)
        .set("weaker_condition_solvable", probe.weaker_condition_solvable);

    let n = ConstMatrix::from_int_rows(q, &[[1, -1], [1, -1]]);
    let fac = NilFactorization::new(
        2,
        q,
        vec![
            PrimitiveFactor::new(n.clone(), 1)?,
            PrimitiveFactor::new(n.clone(), 2)?,
        ],
    )?;
    let rep = verify_factorization(&pair.c, &fac);
    r.set("factorization", format!("L_N(1) L_N(2) with N = {n}"))
        .set("factorization_verified", rep.passed())
        .set("sum_k", rep.sum_shifts)
        .set("degree", rep.degree.unwrap_or(0))
        .set("degrees_add_up", rep.degree == Some(rep.sum_shifts));
    let general = factorize_nilpotent(&pair.c)?;
    r.set("general_factors", general.len())
        .set("general_sum_k", general.sum_shifts());
    if probe.conjecture_holds || !rep.passed() {
        r.fail(Status::Violation);
    }
    Ok(Outcome {
        report: r,
        wrote_stdout: false,
    })
}

fn format_blocks(m: &LPMatrix) -> String {
    let doc = MatrixDocument::from_matrix(m);
    let parts: Vec<String> = doc
        .blocks
        .iter()
        .map(|b| {
            let rows: Vec<String> = b
                .matrix
                .iter()
                .map(|row| format!("[{}]", row.join(", ")))
                .collect();
            format!("z^{}: [{}]", b.power, rows.join(", "))
        })
        .collect();
    parts.join("; ")
}

fn cmd_wavelet_verify(
    io: &mut Io<'_>,
    l_path: &str,
    r_path: &str,
    bundle: Option<&str>,
) -> CliResult<Outcome> {
    let l = io.load_matrix(l_path, "L")?;
    let rm = io.load_matrix(r_path, "R")?;
    if l.rank() != rm.rank() {
        return Err(Error::RankMismatch(l.rank(), rm.rank()).into());
    }
    let bundle = match bundle {
        Some(path) => {
            let context = format!("bundle ({path})");
            Some(parse_doc::<BundleDocument>(&io.read(path)?, &context)?.to_bundle(&context)?)
        }
        None => None,
    };
    let tag = bundle
        .as_ref()
        .map_or(l.tag(), |b| b.tag())
        .join(l.tag())
        .join(rm.tag());
    let (l, rm) = (l.with_tag(tag)?, rm.with_tag(tag)?);

    let mut r = Report::new("wavelet-verify");
    let quadratic = quadratic_condition_holds(&l, &rm);
    let linear = linear_condition_holds(&l) && linear_condition_holds(&rm);
    r.set("rank", l.rank())
        .set("field", field_name(tag))
        .set("quadratic", ok_or_violated(quadratic))
        .set("linear", ok_or_violated(linear))
        .set("genus", l.genus().max(rm.genus()));
    if !(quadratic && linear) {
        let mut codes = Vec::new();
        if !quadratic {
            codes.push("QUADRATIC_VIOLATION");
        }
        if !linear {
            codes.push("LINEAR_VIOLATION");
        }
        r.fail(Status::Violation)
            .set("code", "NOT_BIORTHOGONAL")
            .set("violations", codes.join(","));
    }
    if let Some(bundle) = bundle {
        let t = verify_theorem_instance(&l, &rm, &bundle);
        r.set("l_matches", t.l_matches)
            .set("r_matches", t.r_matches)
            .set("nil_genus", t.nil_genus)
            .set("genus_bound", t.genus_bound)
            .set("genus_ok", t.genus_ok)
            .set("exponent_consistent", t.exponent_consistent);
        if !t.passed() {
            r.fail(Status::Violation);
            if r.get("code").is_none() {
                r.set("code", "BUNDLE_MISMATCH");
            }
        }
    }
    Ok(Outcome {
        report: r,
        wrote_stdout: false,
    })
}

fn cmd_wavelet_compose(
    io: &mut Io<'_>,
    path: &str,
    out_l: Option<&str>,
    out_r: Option<&str>,
) -> CliResult<Outcome> {
    let context = format!("bundle ({path})");
    let bundle = parse_doc::<BundleDocument>(&io.read(path)?, &context)?.to_bundle(&context)?;
    let (pair, rep) = compose_biorthogonal(&bundle)?;
    let l_doc = MatrixDocument::from_matrix(&pair.l);
    let r_doc = MatrixDocument::from_matrix(&pair.r);
    let reread = |doc: &MatrixDocument| {
        parse_doc::<MatrixDocument>(&render_pretty(doc), "emitted pair")?.to_matrix("emitted pair")
    };
    let (l, rm) = same_field(&reread(&l_doc)?, &reread(&r_doc)?)?;
    let verified =
        check_biorthogonal(&l, &rm).is_ok() && verify_theorem_instance(&l, &rm, &bundle).passed();

    let mut r = Report::new("wavelet-compose");
    r.set("rank", rep.rank)
        .set("field", field_name(pair.l.tag()))
        .set("k0", rep.k0)
        .set("d", rep.d)
        .set("b", rep.b)
        .set("exponent_consistent", rep.exponent_consistent())
        .set("nil_genus", rep.nil_genus)
        .set("genus", rep.pair_genus)
        .set("verified", verified);
    if !(verified && rep.exponent_consistent()) {
        r.fail(Status::Violation)
            .set("code", "COMPOSITION_MISMATCH");
    }
    let l_out = io.emit(&l_doc, out_l)?;
    let r_out = io.emit(&r_doc, out_r)?;
    Ok(Outcome {
        report: r,
        wrote_stdout: l_out || r_out,
    })
}

pub fn error_report(command: &str, e: &CliError) -> Report {
    let mut r = Report::new(command);
    r.fail(if e.exit_code() == 2 {
        Status::Violation
    } else {
        Status::Error
    });
    r.set("code", e.code());
    if let Some(Error::NotPseudoidentity(v)) = e.core() {
        let codes: Vec<_> = v.iter().map(PseudoidentityViolation::code).collect();
        r.set("violations", codes.join(","));
    }
    if let Some(Error::NotBiorthogonal(v)) = e.core() {
        let codes: Vec<_> = v.iter().map(|x| x.code()).collect();
        r.set("violations", codes.join(","));
    }
    r.set("message", e);
    r
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Verify { .. } => "verify",
            Command::Factor(a) if a.verify.is_some() => "factor-verify",
            Command::Factor(_) => "factor",
            Command::Generate(_) => "generate",
            Command::DemoCounterexample => "demo-counterexample",
            Command::Wavelet {
                command: WaveletCommand::Verify { .. },
            } => "wavelet-verify",
            Command::Wavelet {
                command: WaveletCommand::Compose { .. },
            } => "wavelet-compose",
        }
    }
}
