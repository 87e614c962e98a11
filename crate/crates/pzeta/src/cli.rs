//! The `pzeta` command line.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use pzeta_core::dirichlet::product_truncated;
use pzeta_core::psl2::make_psl2;
use pzeta_core::rationality::{replay_factors, sml_conditions, ExponentFamily, FactorDescriptor};
use pzeta_core::structure::ChiefChoice;
use pzeta_core::zeta::{self, OmegaParity, RowStatus, WRow};
use pzeta_core::{arith, Index, Psl2Variant, SubgroupLattice};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Config, Format, Overrides};
use crate::error::{exit, CliError};
use crate::input::{builtin_group, read_group_file, read_poly_arg, NamedGroup};
use crate::json::{
    DescriptorJson, FactorizationJson, FamilyJson, LatticeJson, OmegaJson, PolyJson, ReplayInput, ReplayJson,
    SmlJson, WRowJson, ZetaReport,
};

#[derive(Debug, Parser)]
#[command(name = "pzeta", version, about = "Probabilistic zeta functions of finite groups")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Largest group order whose subgroup lattice may be built.
    #[arg(long, global = true)]
    pub budget_order: Option<usize>,
    /// Largest number of subgroups to enumerate.
    #[arg(long, global = true)]
    pub budget_subgroups: Option<usize>,
    /// Default window for truncated products and expansions.
    #[arg(long, global = true)]
    pub truncate: Option<u64>,
    /// Largest field size accepted for PSL(2,q) and PGL(2,q).
    #[arg(long, global = true)]
    pub max_q: Option<u64>,
    /// Seconds allowed for a single lattice construction.
    #[arg(long, global = true)]
    pub time_limit: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "source")]
pub struct GroupSource {
    /// Builtin group: S<n>, A<n>, C<n>, Cp, D<2m>, Q8, V4, PSL2, PGL2, PSL(2,q), products GxH.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Group file: `degree <d>` followed by one generator per line in cycle notation.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    #[command(flatten)]
    pub source: GroupSource,
    /// Order for `Cp`.
    #[arg(long)]
    pub p: Option<u64>,
    /// Field size for `PSL2` and `PGL2`.
    #[arg(long)]
    pub q: Option<u64>,
}

#[derive(Debug, Args)]
pub struct AlmostSimpleArgs {
    /// Field size, an odd prime at least 5.
    #[arg(long)]
    pub q: u64,
    #[arg(long, value_enum, default_value_t = VariantArg::Psl)]
    pub variant: VariantArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Psl,
    Pgl,
}

impl From<VariantArg> for Psl2Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Psl => Psl2Variant::Psl,
            VariantArg::Pgl => Psl2Variant::Pgl,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum ChoiceArg {
    #[default]
    First,
    Last,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// P_G(s) from the subgroup lattice.
    Pg {
        #[command(flatten)]
        group: GroupArgs,
        /// Also evaluate P_G at this positive integer.
        #[arg(long)]
        at: Option<u32>,
    },
    /// P_{X,S}(s) for X = PSL(2,q) or PGL(2,q).
    Pxs {
        #[command(flatten)]
        x: AlmostSimpleArgs,
        /// Print the factor descriptor with multiplicity r instead.
        #[arg(long)]
        descriptor_r: Option<u32>,
        /// Descriptor id used with --descriptor-r.
        #[arg(long, default_value_t = 0)]
        id: u64,
    },
    /// Ω(X) and its minimum w(X).
    Omega {
        #[command(flatten)]
        x: AlmostSimpleArgs,
        /// Admit even indices as well.
        #[arg(long)]
        any_parity: bool,
    },
    /// Brute-force w(X) for PSL(2,q) and PGL(2,q) against the table of minima.
    Wtable {
        #[arg(long, default_value_t = 5)]
        qmin: u64,
        #[arg(long, default_value_t = 13)]
        qmax: u64,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [VariantArg::Psl, VariantArg::Pgl])]
        variants: Vec<VariantArg>,
        /// Exit with status 4 on any mismatch.
        #[arg(long)]
        strict: bool,
    },
    /// Chief series and the factor polynomials P_i(s).
    Factorize {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = ChoiceArg::First)]
        choice: ChoiceArg,
        #[arg(long)]
        strict: bool,
    },
    /// Subgroup lattice with Hasse edges, classes and Möbius values.
    Moebius {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Replay of the w, I*, β, c_β and H(s) computations on factor data.
    Replay {
        /// JSON list of factor descriptors, or {"factors": [...], "bound": n}.
        file: PathBuf,
        /// Window for H(s) and Q(s); defaults to --truncate.
        #[arg(long)]
        bound: Option<u64>,
        /// Exit with status 4 if a consistency check fails.
        #[arg(long)]
        strict: bool,
    },
    /// Conditions (i) and (ii) on an exponent family.
    Smlcheck {
        /// Explicit exponents, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 1.., group = "family")]
        r: Option<Vec<u64>>,
        /// r_i = r for infinitely many i.
        #[arg(long, group = "family")]
        constant: Option<u64>,
        /// r_i = a + i·d, given as a,d.
        #[arg(long, value_delimiter = ',', group = "family")]
        arithmetic: Option<Vec<u64>>,
        /// r_i = a·b^i, given as a,b.
        #[arg(long, value_delimiter = ',', group = "family")]
        geometric: Option<Vec<u64>>,
        /// JSON family, e.g. {"geometric": {"start": 1, "ratio": 2}}.
        #[arg(long, group = "family")]
        file: Option<PathBuf>,
    },
    /// Product of Dirichlet polynomials (text, inline JSON or JSON files).
    Product {
        #[arg(required = true, num_args = 1..)]
        polys: Vec<String>,
        /// Only keep indices up to --truncate.
        #[arg(long)]
        truncated: bool,
    },
    /// Exact quotient A/B in the ring of Dirichlet polynomials.
    Divide {
        a: String,
        b: String,
        /// Largest index allowed in the quotient; defaults to the largest index of A.
        #[arg(long)]
        bound: Option<u64>,
    },
}

/// Parses arguments, runs, prints, and returns the exit status.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::PARSE } else { exit::OK };
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(cli, |k| std::env::var(k).ok(), &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("pzeta: {e}");
            e.exit_code()
        }
    }
}

/// Runs a parsed command line. `Ok` carries a nonzero status for
/// verification mismatches that still produce output.
pub fn run(cli: Cli, env: impl Fn(&str) -> Option<String>, out: &mut dyn Write) -> Result<i32, CliError> {
    let overrides = Overrides {
        format: cli.format,
        budget_order: cli.budget_order,
        budget_subgroups: cli.budget_subgroups,
        truncate: cli.truncate,
        max_q: cli.max_q,
        time_limit: cli.time_limit,
    };
    let cfg = Config::resolve(&overrides, env)?;
    match cli.command {
        Command::Pg { group, at } => cmd_pg(&cfg, &group, at, out),
        Command::Pxs { x, descriptor_r, id } => cmd_pxs(&cfg, &x, descriptor_r, id, out),
        Command::Omega { x, any_parity } => cmd_omega(&cfg, &x, any_parity, out),
        Command::Wtable {
            qmin,
            qmax,
            variants,
            strict,
        } => cmd_wtable(&cfg, qmin, qmax, &variants, strict, out),
        Command::Factorize { group, choice, strict } => cmd_factorize(&cfg, &group, choice, strict, out),
        Command::Moebius { group } => cmd_moebius(&cfg, &group, out),
        Command::Replay { file, bound, strict } => cmd_replay(&cfg, &file, bound, strict, out),
        Command::Smlcheck {
            r,
            constant,
            arithmetic,
            geometric,
            file,
        } => cmd_smlcheck(&cfg, r, constant, arithmetic, geometric, file, out),
        Command::Product { polys, truncated } => cmd_product(&cfg, &polys, truncated, out),
        Command::Divide { a, b, bound } => cmd_divide(&cfg, &a, &b, bound, out),
    }
}

fn print_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn load_group(cfg: &Config, args: &GroupArgs) -> Result<NamedGroup, CliError> {
    match (&args.source.builtin, &args.source.file) {
        (Some(name), _) => builtin_group(name, args.p, args.q, cfg.max_q, cfg.budget.max_order),
        (None, Some(path)) => read_group_file(path, cfg.budget.max_order),
        (None, None) => Err(CliError::Parse("either --builtin or --file is required".into())),
    }
}

fn build_lattice(cfg: &Config, g: &NamedGroup) -> Result<SubgroupLattice, CliError> {
    Ok(SubgroupLattice::build_with_interrupt(&g.group, cfg.budget, &cfg.deadline())?)
}

fn almost_simple(cfg: &Config, x: &AlmostSimpleArgs) -> Result<(pzeta_core::AlmostSimpleSpec, SubgroupLattice), CliError> {
    let spec = make_psl2(x.q, x.variant.into(), cfg.max_q)?;
    if spec.group.order() > cfg.budget.max_order {
        return Err(pzeta_core::GroupError::OrderBoundExceeded {
            bound: cfg.budget.max_order,
        }
        .into());
    }
    let lattice = SubgroupLattice::build_with_interrupt(&spec.group, cfg.budget, &cfg.deadline())?;
    Ok((spec, lattice))
}

fn cmd_pg(cfg: &Config, args: &GroupArgs, at: Option<u32>, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = load_group(cfg, args)?;
    let start = Instant::now();
    let lattice = build_lattice(cfg, &g)?;
    let p = zeta::p_g(&lattice);
    let elapsed = start.elapsed();
    let stats = lattice.stats();
    let value = at.map(|k| p.evaluate_at(k));
    match cfg.format {
        Format::Json => {
            let report = ZetaReport {
                group: g.label.clone(),
                order: g.group.order(),
                p_g: (&p).into(),
                p_g_text: p.to_string(),
                subgroups: stats.subgroups,
                classes: stats.classes,
                elapsed_ms: elapsed.as_millis() as u64,
            };
            if let (Some(k), Some(v)) = (at, value) {
                let mut obj = serde_json::to_value(&report)?;
                obj["at"] = serde_json::json!({ "k": k, "value": v.to_string() });
                print_json(out, &obj)?;
            } else {
                print_json(out, &report)?;
            }
        }
        Format::Text => {
            writeln!(out, "group: {} (order {})", g.label, g.group.order())?;
            writeln!(out, "P(s) = {p}")?;
            writeln!(
                out,
                "subgroups: {}  classes: {}  time: {:.1} ms",
                stats.subgroups,
                stats.classes,
                elapsed.as_secs_f64() * 1e3
            )?;
            if let (Some(k), Some(v)) = (at, value) {
                writeln!(out, "P({k}) = {v}")?;
            }
        }
    }
    Ok(exit::OK)
}

fn cmd_pxs(
    cfg: &Config,
    x: &AlmostSimpleArgs,
    descriptor_r: Option<u32>,
    id: u64,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let (spec, lattice) = almost_simple(cfg, x)?;
    let p = zeta::p_xs(&spec, &lattice);
    if let Some(r) = descriptor_r {
        let d = FactorDescriptor::psl2_from_pxs(id, x.q, x.variant.into(), r, &p)?;
        return match cfg.format {
            Format::Json => {
                print_json(out, &DescriptorJson::from(&d))?;
                Ok(exit::OK)
            }
            Format::Text => {
                writeln!(out, "factor {} of {} with r = {}: {}", d.id, spec.label, d.r, d.polynomial())?;
                Ok(exit::OK)
            }
        };
    }
    match cfg.format {
        Format::Json => print_json(
            out,
            &serde_json::json!({ "x": spec.label, "p_xs": PolyJson::from(&p), "p_xs_text": p.to_string() }),
        )?,
        Format::Text => writeln!(out, "P_{{{},S}}(s) = {p}", spec.label)?,
    }
    Ok(exit::OK)
}

fn cmd_omega(cfg: &Config, x: &AlmostSimpleArgs, any_parity: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let (spec, lattice) = almost_simple(cfg, x)?;
    let parity = if any_parity { OmegaParity::Any } else { OmegaParity::Odd };
    let res = zeta::omega_set(&spec, &lattice, parity);
    match cfg.format {
        Format::Json => print_json(out, &OmegaJson::from(&res))?,
        Format::Text => {
            let list: Vec<String> = res.omega.iter().map(u64::to_string).collect();
            writeln!(out, "Omega({}) = {{{}}}", res.label, list.join(", "))?;
            match res.w {
                Some(w) => writeln!(out, "w = {w}")?,
                None => writeln!(out, "w undefined (empty set)")?,
            }
        }
    }
    Ok(exit::OK)
}

fn cmd_wtable(
    cfg: &Config,
    qmin: u64,
    qmax: u64,
    variants: &[VariantArg],
    strict: bool,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let jobs: Vec<(u64, Psl2Variant)> = (qmin.max(5)..=qmax)
        .filter(|&q| arith::is_prime(q as Index))
        .flat_map(|q| variants.iter().map(move |&v| (q, v.into())))
        .collect();
    let max_q = cfg.max_q.max(qmax);
    let rows: Vec<WRow> = jobs
        .par_iter()
        .map(|&(q, v)| zeta::w_table_row(q, v, cfg.budget, max_q, &cfg.deadline()))
        .collect::<Result<_, _>>()?;
    match cfg.format {
        Format::Json => print_json(out, &rows.iter().map(WRowJson::from).collect::<Vec<_>>())?,
        Format::Text => {
            writeln!(out, "{:>4}  {:<7}  {:>9}  {:>9}  status", "q", "variant", "computed", "predicted")?;
            for r in &rows {
                let computed = r.computed.map_or("-".to_string(), |w| w.to_string());
                write!(out, "{:>4}  {:<7}  {:>9}  {:>9}  {}", r.q, r.variant, computed, r.predicted, r.status.as_str())?;
                match &r.note {
                    Some(n) => writeln!(out, "  ({n})")?,
                    None => writeln!(out)?,
                }
            }
        }
    }
    let mismatch = rows.iter().any(|r| r.status == RowStatus::Mismatch);
    Ok(if strict && mismatch { exit::MISMATCH } else { exit::OK })
}

fn cmd_factorize(
    cfg: &Config,
    args: &GroupArgs,
    choice: ChoiceArg,
    strict: bool,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let g = load_group(cfg, args)?;
    let lattice = build_lattice(cfg, &g)?;
    let choice = match choice {
        ChoiceArg::First => ChiefChoice::First,
        ChoiceArg::Last => ChiefChoice::Last,
    };
    let cf = zeta::chief_factorization(&lattice, choice)?;
    let p = zeta::p_g(&lattice);
    let product_matches = cf.product()? == p;
    match cfg.format {
        Format::Json => print_json(out, &FactorizationJson::new(&g.label, g.group.order(), &cf, &p, product_matches))?,
        Format::Text => {
            writeln!(out, "group: {} (order {})", g.label, g.group.order())?;
            for (i, ((f, poly), (&frat, comp))) in cf
                .series
                .factors
                .iter()
                .zip(&cf.polys)
                .zip(cf.frattini.iter().zip(&cf.complements))
                .enumerate()
            {
                write!(out, "factor {}: {:<10} P_{}(s) = {poly}", i + 1, f.label(), i + 1)?;
                if frat {
                    write!(out, "  [Frattini]")?;
                }
                if let Some(c) = comp {
                    write!(out, "  complements: {c}")?;
                }
                writeln!(out)?;
            }
            writeln!(out, "P(s) = {p}")?;
            writeln!(out, "product check: {}", if product_matches { "OK" } else { "MISMATCH" })?;
        }
    }
    if !product_matches {
        return if strict {
            Ok(exit::MISMATCH)
        } else {
            Err(CliError::Mismatch("product of factor polynomials differs from P_G".into()))
        };
    }
    Ok(exit::OK)
}

fn cmd_moebius(cfg: &Config, args: &GroupArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = load_group(cfg, args)?;
    let lattice = build_lattice(cfg, &g)?;
    match cfg.format {
        Format::Json => print_json(out, &LatticeJson::new(&g.label, &lattice))?,
        Format::Text => {
            let stats = lattice.stats();
            writeln!(
                out,
                "group: {} (order {}), {} subgroups in {} classes",
                g.label,
                g.group.order(),
                stats.subgroups,
                stats.classes
            )?;
            writeln!(out, "{:>5}  {:>6}  {:>5}  {:>8}", "class", "order", "size", "moebius")?;
            for (k, c) in lattice.classes().iter().enumerate() {
                let rep = c.members[0];
                writeln!(out, "{k:>5}  {:>6}  {:>5}  {:>8}", c.order, c.members.len(), lattice.moebius(rep))?;
            }
        }
    }
    Ok(exit::OK)
}

fn cmd_replay(
    cfg: &Config,
    file: &PathBuf,
    bound: Option<u64>,
    strict: bool,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let text = std::fs::read_to_string(file)?;
    let ReplayInput {
        factors: descs,
        bound: file_bound,
    } = ReplayInput::parse(&text)?;
    let factors = descs.iter().map(DescriptorJson::to_descriptor).collect::<Result<Vec<_>, _>>()?;
    let bound = bound.map(|b| b as Index).or(file_bound).unwrap_or(cfg.truncate);
    let rep = replay_factors(&factors, bound)?;
    let json = ReplayJson::from(&rep);
    match cfg.format {
        Format::Json => print_json(out, &json)?,
        Format::Text => {
            let show = |v: Option<String>| v.unwrap_or_else(|| "-".into());
            writeln!(out, "q = {}", rep.q)?;
            writeln!(out, "w = {}", show(rep.w.map(|w| w.to_string())))?;
            writeln!(out, "I* = {:?}", rep.i_star)?;
            let h: Vec<String> = rep.h_factors.iter().map(|f| format!("({f})")).collect();
            writeln!(out, "H(s) = {}", if h.is_empty() { "1".into() } else { h.join("") })?;
            writeln!(out, "H(s) = {}", rep.h_expansion)?;
            writeln!(out, "r = {}", show(rep.r.map(|r| r.to_string())))?;
            writeln!(out, "beta = {}", show(rep.beta.map(|b| b.to_string())))?;
            writeln!(
                out,
                "c_beta = {} ({})",
                show(json.c_beta.clone()),
                show(json.c_beta_sign.clone())
            )?;
            writeln!(out, "characterization of I*: {}", if rep.characterization_holds { "OK" } else { "FAILED" })?;
            if let Some(s) = &json.sml {
                writeln!(out, "{}", sml_line(s))?;
            }
        }
    }
    let consistent = rep.characterization_holds
        && rep.h_coefficients_negative
        && rep.w == rep.w_via_projection
        && rep.beta_is_w_pow_r != Some(false)
        && rep.c_beta.as_ref().is_none_or(|c| c < &BigInt::from(0));
    Ok(if strict && !consistent { exit::MISMATCH } else { exit::OK })
}

fn sml_line(s: &SmlJson) -> String {
    let i = match s.violated_at {
        Some(n) => format!("(i) violated at n = {n}"),
        None => "(i) holds".into(),
    };
    let ii = match s.witness_prime {
        Some(t) => format!("(ii) holds with t = {t}"),
        None => "(ii) violated".into(),
    };
    let scope = if s.window_relative { " [window]" } else { "" };
    format!("{i}; {ii}{scope}")
}

fn pair(v: &[u64], what: &str) -> Result<(u64, u64), CliError> {
    match v {
        [a, b] => Ok((*a, *b)),
        _ => Err(CliError::Parse(format!("--{what} takes two values"))),
    }
}

fn cmd_smlcheck(
    cfg: &Config,
    r: Option<Vec<u64>>,
    constant: Option<u64>,
    arithmetic: Option<Vec<u64>>,
    geometric: Option<Vec<u64>>,
    file: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let family = if let Some(rs) = r {
        ExponentFamily::Explicit(rs)
    } else if let Some(c) = constant {
        ExponentFamily::Constant(c)
    } else if let Some(v) = arithmetic {
        let (start, step) = pair(&v, "arithmetic")?;
        ExponentFamily::Arithmetic { start, step }
    } else if let Some(v) = geometric {
        let (start, ratio) = pair(&v, "geometric")?;
        ExponentFamily::Geometric { start, ratio }
    } else if let Some(path) = file {
        match serde_json::from_str::<FamilyJson>(&std::fs::read_to_string(path)?)? {
            FamilyJson::Explicit(v) => ExponentFamily::Explicit(v),
            FamilyJson::Constant(c) => ExponentFamily::Constant(c),
            FamilyJson::Arithmetic { start, step } => ExponentFamily::Arithmetic { start, step },
            FamilyJson::Geometric { start, ratio } => ExponentFamily::Geometric { start, ratio },
        }
    } else {
        return Err(CliError::Parse(
            "one of --r, --constant, --arithmetic, --geometric, --file is required".into(),
        ));
    };
    let verdict = sml_conditions(&family).map_err(|e| CliError::Parse(e.to_string()))?;
    let json = SmlJson::from(&verdict);
    match cfg.format {
        Format::Json => print_json(out, &json)?,
        Format::Text => writeln!(out, "{}", sml_line(&json))?,
    }
    Ok(exit::OK)
}

fn cmd_product(cfg: &Config, polys: &[String], truncated: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let factors = polys.iter().map(|p| read_poly_arg(p)).collect::<Result<Vec<_>, _>>()?;
    if truncated {
        let t = product_truncated(&factors, cfg.truncate)?;
        match cfg.format {
            Format::Json => print_json(
                out,
                &serde_json::json!({ "bound": t.bound(), "product": PolyJson::from(&t) }),
            )?,
            Format::Text => writeln!(out, "{t}")?,
        }
        return Ok(exit::OK);
    }
    let mut acc = pzeta_core::DirichletPolynomial::one();
    for f in &factors {
        acc = acc.mul(f)?;
    }
    match cfg.format {
        Format::Json => print_json(out, &PolyJson::from(&acc))?,
        Format::Text => writeln!(out, "{acc}")?,
    }
    Ok(exit::OK)
}

fn cmd_divide(cfg: &Config, a: &str, b: &str, bound: Option<u64>, out: &mut dyn Write) -> Result<i32, CliError> {
    let a = read_poly_arg(a)?;
    let b = read_poly_arg(b)?;
    let q = a.divide_exact(&b, bound.map(|x| x as Index))?;
    match cfg.format {
        Format::Json => print_json(out, &PolyJson::from(&q))?,
        Format::Text => writeln!(out, "{q}")?,
    }
    Ok(exit::OK)
}
