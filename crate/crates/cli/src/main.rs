mod render;
mod workspace;

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use adele_lab_core::brauer::{archimedean_group_type, restrict_from_q, transport, BrauerClass};
use adele_lab_core::equivalence::{
    check_gcd_equivalence, check_local_equivalence, gcd_witness_algebra, EquivalenceVerdict, RefutationSite,
    DEFAULT_WITNESS_CEILING,
};
use adele_lab_core::fieldlab::{splitting_type, zeta_partial, NumberField, ZetaEstimate};
use adele_lab_core::genus::{
    brute_force_theta_max, dmax_construct, genus_report, isobound, lambda_budget, pr_bound, theta, SearchSpace,
};
use adele_lab_core::orders::{is_maximal, level_ideal, transport_order, tree_distance, tree_neighbors, OrderData, TreeVertex};
use adele_lab_core::real::parse_decimal;
use adele_lab_core::volume::{covolume_cf, exponent_product, lambda_factor, volume_sl_n_d, VolumeInput, VolumeResult};
use adele_lab_core::Error;
use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::de::DeserializeOwned;
use serde_json::json;

use render::{row, Output};
use workspace::Workspace;

#[derive(Parser)]
#[command(name = "adele-lab", version, about = "Local equivalence, Brauer classes, volumes and genus bounds")]
struct Cli {
    /// Print a single JSON document instead of a table.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 256)]
    precision_bits: u32,
    #[arg(long, global = true, default_value_t = 1000)]
    prime_bound: u64,
    /// JSON file holding added fields and saved matchings.
    #[arg(long, global = true)]
    workspace: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Add, show or list number fields.
    #[command(subcommand)]
    Field(FieldCmd),
    /// Residue degrees of the places over a prime.
    Split { field: String, p: u64 },
    /// Compare residue degree multisets up to a bound.
    Equiv(Pair),
    /// Compare residue degree gcds up to a bound.
    GcdEquiv(Pair),
    /// Build (and with --save, store) the canonical place matching.
    Match {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        save: bool,
    },
    /// Brauer classes given by local invariants.
    #[command(subcommand)]
    Brauer(BrauerCmd),
    /// Orders described by local deviations from maximal.
    #[command(subcommand)]
    Order(OrderCmd),
    /// Vertices of the Bruhat-Tits tree of SL_2 over Q_p.
    #[command(subcommand)]
    Tree(TreeCmd),
    /// Covolumes and the factors they are built from.
    #[command(subcommand)]
    Volume(VolumeCmd),
    /// Genus bounds from covolume budgets.
    #[command(subcommand)]
    Genus(GenusCmd),
}

#[derive(Args)]
struct Pair {
    left: String,
    right: String,
    /// Prime bound for the scan (defaults to --prime-bound).
    #[arg(long)]
    bound: Option<u64>,
}

#[derive(Subcommand)]
enum FieldCmd {
    /// Validate a field document (file, inline JSON or `-`) and store it.
    Add { doc: String },
    Show { label: String },
    List,
}

#[derive(Subcommand)]
enum BrauerCmd {
    Validate { class: String },
    Tensor { a: String, b: String },
    Inverse { class: String },
    Degree { class: String },
    /// Extend a class over Q to a field.
    Restrict { class: String, field: String },
    /// Move a class along the canonical matching to another field.
    Transport { class: String, target: String },
    Archtype { class: String, n: u64 },
    /// Class over Q splitting over LEFT but not RIGHT, built at P0.
    Witness {
        left: String,
        right: String,
        p0: u64,
        #[arg(long, default_value_t = DEFAULT_WITNESS_CEILING)]
        ceiling: u64,
    },
}

#[derive(Subcommand)]
enum OrderCmd {
    Level { order: String },
    Maximal { order: String },
    Transport { order: String, target: String },
}

#[derive(Subcommand)]
enum TreeCmd {
    /// Vertices as JSON or `p,a,n,b`.
    Dist { u: String, v: String },
    Neighbors { u: String },
}

#[derive(Subcommand)]
enum VolumeCmd {
    /// Volume for SL_n(D), from a VolumeInput document or a field and class.
    Sl {
        #[arg(long, conflicts_with_all = ["field", "class"])]
        input: Option<String>,
        #[arg(long, requires = "class")]
        field: Option<String>,
        #[arg(long)]
        class: Option<String>,
        #[arg(long, default_value_t = 1)]
        n: u64,
        /// Prime bound for the zeta values (defaults to --prime-bound).
        #[arg(long)]
        zeta_bound: Option<u64>,
    },
    /// Covolume of a maximal arithmetic subgroup of PSL_2(C)^r.
    Cf {
        #[arg(long)]
        disc: Option<String>,
        #[arg(long)]
        zeta_field: Option<String>,
        #[arg(long, requires = "zeta_error")]
        zeta_value: Option<String>,
        #[arg(long)]
        zeta_error: Option<String>,
        #[arg(long)]
        zeta_bound: Option<u64>,
        #[arg(long, default_value_t = 1)]
        ext: u64,
    },
    Lambda { q: u64, nd: u64, d_v: u64 },
    Expprod { d: u64 },
}

#[derive(Subcommand)]
enum GenusCmd {
    Theta { degrees: Vec<u64> },
    Bound { volume: String, d: u64 },
    Budget {
        volume: String,
        d: u64,
        #[arg(long)]
        disc: Option<String>,
    },
    Isobound { n: String },
    Dmax { alpha: u32 },
    /// Exhaustive maximum of theta within a lambda budget.
    Search {
        n: String,
        #[arg(long, default_value_t = 16)]
        max_places: usize,
        #[arg(long, default_value_t = 8)]
        nd_max: u64,
    },
    /// Combined bound for a concrete ramification pattern.
    Report {
        #[arg(long, value_delimiter = ',')]
        ram: Vec<u64>,
        #[arg(long)]
        volume: String,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        disc: Option<String>,
    },
}

fn read_arg(arg: &str) -> Result<String> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(arg.to_string());
    }
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(arg).with_context(|| format!("reading {arg}"))
}

fn load<T: DeserializeOwned>(arg: &str) -> Result<T> {
    let text = read_arg(arg)?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{arg}: {e}")).into())
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidInput(format!("not a number: {s}"));
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().map_err(|_| bad())?;
        let b: BigInt = b.trim().parse().map_err(|_| bad())?;
        if b == BigInt::from(0) {
            return Err(bad().into());
        }
        return Ok(BigRational::new(a, b));
    }
    Ok(parse_decimal(s).ok_or_else(bad)?)
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.trim().parse().map_err(|_| Error::InvalidInput(format!("not an integer: {s}")).into())
}

fn parse_vertex(s: &str) -> Result<TreeVertex> {
    if s.trim_start().starts_with('{') {
        return load(s);
    }
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || Error::InvalidInput(format!("vertex must be JSON or p,a,n,b: {s}"));
    if parts.len() != 4 {
        return Err(bad().into());
    }
    let p: u64 = parts[0].parse().map_err(|_| bad())?;
    let a: u32 = parts[1].parse().map_err(|_| bad())?;
    let n: u32 = parts[2].parse().map_err(|_| bad())?;
    let b: BigUint = parts[3].parse().map_err(|_| bad())?;
    let m = [[BigInt::from(p).pow(a), BigInt::from(b)], [BigInt::from(0), BigInt::from(p).pow(n)]];
    Ok(TreeVertex::from_matrix(p, &m)?)
}

fn verdict_rows(v: &EquivalenceVerdict) -> Vec<(String, String)> {
    match v {
        EquivalenceVerdict::Refuted { site, reason } => {
            let at = match site {
                RefutationSite::Prime(p) => p.to_string(),
                RefutationSite::Infinity => "infinity".into(),
            };
            vec![row("verdict", "refuted"), row("at", at), row("reason", reason)]
        }
        EquivalenceVerdict::ConsistentUpTo { bound, skipped_primes } => vec![
            row("verdict", "consistent"),
            row("bound", bound),
            row("skipped", format!("{skipped_primes:?}")),
        ],
    }
}

fn class_rows(c: &BrauerClass) -> Vec<(String, String)> {
    let mut rows = vec![row("field", c.field())];
    if c.invariants().is_empty() {
        rows.push(row("invariants", "none (trivial)"));
    }
    rows.extend(c.invariants().iter().map(|(p, q)| row(p.to_string(), q)));
    rows
}

fn volume_rows(v: &VolumeResult) -> Vec<(String, String)> {
    let mut rows = vec![row("value", v.value.to_sci(20)), row("error_bound", v.error_bound.to_sci(3))];
    rows.extend(
        v.breakdown
            .iter()
            .map(|f| row(&f.name, format!("{} +/- {}", f.value.to_sci(20), f.error_bound.to_sci(3)))),
    );
    rows
}

/// Small integers as JSON numbers, large ones as decimal strings.
fn int_json(n: &BigInt) -> serde_json::Value {
    match i64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

fn run(cli: Cli) -> Result<()> {
    let out = Output { json: cli.json };
    let prec = cli.precision_bits;
    let mut ws = Workspace::open(cli.workspace.as_deref())?;
    match cli.cmd {
        Cmd::Field(FieldCmd::Add { doc }) => {
            let field: NumberField = load(&doc)?;
            ws.add_field(&field)?;
            out.emit(field.spec(), vec![row("added", field.label())])
        }
        Cmd::Field(FieldCmd::Show { label }) => {
            let k = ws.field(&label)?;
            let (r1, r2) = k.signature();
            let disc = k.field_discriminant().map(|d| d.to_string()).unwrap_or_else(|| "unknown".into());
            out.emit(
                k.spec(),
                vec![
                    row("label", k.label()),
                    row("minpoly", k.minpoly()),
                    row("degree", k.degree()),
                    row("signature", format!("({r1},{r2})")),
                    row("poly_disc", k.poly_discriminant()),
                    row("field_disc", disc),
                ],
            )
        }
        Cmd::Field(FieldCmd::List) => {
            let labels = ws.labels();
            let rows = labels.iter().map(|l| row(l, ws.field(l).map(|k| k.minpoly().to_string()).unwrap_or_default())).collect();
            out.emit(&labels, rows)
        }
        Cmd::Split { field, p } => {
            let s = splitting_type(&ws.field(&field)?, p)?;
            out.emit(
                &s,
                vec![
                    row("p", s.p),
                    row("status", format!("{:?}", s.status)),
                    row("degrees", format!("{:?}", s.degrees)),
                    row("ramification", format!("{:?}", s.ramification)),
                ],
            )
        }
        Cmd::Equiv(pair) => {
            let v = check_local_equivalence(&ws.field(&pair.left)?, &ws.field(&pair.right)?, pair.bound.unwrap_or(cli.prime_bound))?;
            out.emit(&v, verdict_rows(&v))
        }
        Cmd::GcdEquiv(pair) => {
            let v = check_gcd_equivalence(&ws.field(&pair.left)?, &ws.field(&pair.right)?, pair.bound.unwrap_or(cli.prime_bound))?;
            out.emit(&v, verdict_rows(&v))
        }
        Cmd::Match { pair, save } => {
            let bound = pair.bound.unwrap_or(cli.prime_bound);
            let phi = adele_lab_core::equivalence::build_place_matching(&ws.field(&pair.left)?, &ws.field(&pair.right)?, bound)?;
            if save {
                ws.add_matching(&phi)?;
            }
            let slots: usize = phi.finite_matching.values().map(Vec::len).sum();
            out.emit(
                &phi,
                vec![
                    row("left", &phi.left_field),
                    row("right", &phi.right_field),
                    row("verified_bound", phi.verified_bound),
                    row("matched_primes", phi.finite_matching.len()),
                    row("matched_places", slots),
                    row("real", phi.archimedean_matching.real.len()),
                    row("complex", phi.archimedean_matching.complex.len()),
                ],
            )
        }
        Cmd::Brauer(cmd) => brauer(cmd, &ws, &out, cli.prime_bound),
        Cmd::Order(cmd) => order(cmd, &ws, &out, cli.prime_bound),
        Cmd::Tree(TreeCmd::Dist { u, v }) => {
            let d = tree_distance(&parse_vertex(&u)?, &parse_vertex(&v)?)?;
            out.emit(&json!({ "distance": d }), vec![row("distance", d)])
        }
        Cmd::Tree(TreeCmd::Neighbors { u }) => {
            let nb = tree_neighbors(&parse_vertex(&u)?);
            let rows = nb.iter().enumerate().map(|(i, v)| row(i.to_string(), format!("{},{},{},{}", v.p, v.a, v.n, v.b))).collect();
            out.emit(&nb, rows)
        }
        Cmd::Volume(cmd) => volume(cmd, &ws, &out, prec, cli.prime_bound),
        Cmd::Genus(cmd) => genus(cmd, &out, prec),
    }
}

fn brauer(cmd: BrauerCmd, ws: &Workspace, out: &Output, bound: u64) -> Result<()> {
    match cmd {
        BrauerCmd::Validate { class } => {
            let c: BrauerClass = load(&class)?;
            let violations = c.validate().err().unwrap_or_default();
            let mut rows = vec![row("valid", violations.is_empty())];
            rows.extend(violations.iter().map(|v| row("violation", v)));
            out.emit(&json!({ "valid": violations.is_empty(), "violations": violations }), rows)
        }
        BrauerCmd::Tensor { a, b } => {
            let c = load::<BrauerClass>(&a)?.tensor(&load(&b)?)?;
            out.emit(&c, class_rows(&c))
        }
        BrauerCmd::Inverse { class } => {
            let c = load::<BrauerClass>(&class)?.inverse();
            out.emit(&c, class_rows(&c))
        }
        BrauerCmd::Degree { class } => {
            let c: BrauerClass = load(&class)?;
            let d = c.division_algebra_degree();
            out.emit(&json!({ "degree": d }), vec![row("degree", d)])
        }
        BrauerCmd::Restrict { class, field } => {
            let c = restrict_from_q(&load(&class)?, &ws.field(&field)?, bound)?;
            out.emit(&c, class_rows(&c))
        }
        BrauerCmd::Transport { class, target } => {
            let c: BrauerClass = load(&class)?;
            let phi = ws.matching(c.field(), &target, bound)?;
            let t = transport(&c, &phi)?;
            out.emit(&t, class_rows(&t))
        }
        BrauerCmd::Archtype { class, n } => {
            let c: BrauerClass = load(&class)?;
            let t = archimedean_group_type(&c, &ws.field(c.field())?, n)?;
            out.emit(&t, vec![row("group", &t), row("noncompact", t.noncompact())])
        }
        BrauerCmd::Witness { left, right, p0, ceiling } => {
            let c = gcd_witness_algebra(&ws.field(&left)?, &ws.field(&right)?, p0, ceiling)?;
            out.emit(&c, class_rows(&c))
        }
    }
}

fn order(cmd: OrderCmd, ws: &Workspace, out: &Output, bound: u64) -> Result<()> {
    match cmd {
        OrderCmd::Level { order } => {
            let l = level_ideal(&load::<OrderData>(&order)?);
            out.emit(&l, vec![row("level", &l)])
        }
        OrderCmd::Maximal { order } => {
            let m = is_maximal(&load::<OrderData>(&order)?);
            out.emit(&json!({ "maximal": m }), vec![row("maximal", m)])
        }
        OrderCmd::Transport { order, target } => {
            let o: OrderData = load(&order)?;
            let phi = ws.matching(o.class().field(), &target, bound)?;
            let moved = transport_order(&o, &phi, &transport(o.class(), &phi)?)?;
            let mut rows = class_rows(moved.class());
            rows.push(row("level", level_ideal(&moved)));
            out.emit(&moved, rows)
        }
    }
}

fn volume(cmd: VolumeCmd, ws: &Workspace, out: &Output, prec: u32, bound: u64) -> Result<()> {
    match cmd {
        VolumeCmd::Sl { input, field, class, n, zeta_bound } => {
            let input: VolumeInput = match (input, field, class) {
                (Some(doc), _, _) => load(&doc)?,
                (None, field, Some(class)) => {
                    let c: BrauerClass = load(&class)?;
                    let k = ws.field(field.as_deref().unwrap_or(c.field()))?;
                    VolumeInput::from_class(&k, &c, n, zeta_bound.unwrap_or(bound), prec)?
                }
                _ => return Err(Error::InvalidInput("give --input or --class".into()).into()),
            };
            let v = volume_sl_n_d(&input)?;
            out.emit(&v, volume_rows(&v))
        }
        VolumeCmd::Cf { disc, zeta_field, zeta_value, zeta_error, zeta_bound, ext } => {
            let field = zeta_field.as_deref().map(|l| ws.field(l)).transpose()?;
            let zeta = match (&field, zeta_value, zeta_error) {
                (_, Some(v), Some(e)) => ZetaEstimate::from_decimal(2, 0, &parse_rational(&v)?, &parse_rational(&e)?, prec),
                (Some(k), _, _) => zeta_partial(k, 2, zeta_bound.unwrap_or(bound), prec)?,
                _ => return Err(Error::InvalidInput("give --zeta-field or --zeta-value/--zeta-error".into()).into()),
            };
            let disc = match (disc, &field) {
                (Some(d), _) => parse_int(&d)?,
                (None, Some(k)) => k.abs_field_discriminant()?,
                (None, None) => return Err(Error::MissingFieldDiscriminant("covolume".into()).into()),
            };
            let v = covolume_cf(&disc, &zeta, ext, prec)?;
            out.emit(&v, volume_rows(&v))
        }
        VolumeCmd::Lambda { q, nd, d_v } => {
            let l = lambda_factor(q, nd, d_v)?;
            out.emit(&json!({ "lambda": l.to_string() }), vec![row("lambda", l)])
        }
        VolumeCmd::Expprod { d } => {
            let v = exponent_product(d, prec)?;
            let (mid, rad) = (v.mid(), v.rad());
            out.emit(
                &json!({ "value": mid, "error_bound": rad }),
                vec![row("value", mid.to_sci(20)), row("error_bound", rad.to_sci(3))],
            )
        }
    }
}

fn genus(cmd: GenusCmd, out: &Output, prec: u32) -> Result<()> {
    match cmd {
        GenusCmd::Theta { degrees } => {
            let t = theta(&degrees)?;
            out.emit(&json!({ "theta": int_json(&t) }), vec![row("theta", t)])
        }
        GenusCmd::Bound { volume, d } => {
            let b = pr_bound(&parse_rational(&volume)?, d)?;
            out.emit(&json!({ "bound": int_json(&b) }), vec![row("bound", b)])
        }
        GenusCmd::Budget { volume, d, disc } => {
            let disc = disc.as_deref().map(parse_int).transpose()?;
            let b = lambda_budget(&parse_rational(&volume)?, d, disc.as_ref(), prec)?;
            let (mid, rad) = (b.refined.mid(), b.refined.rad());
            out.emit(
                &json!({ "coarse": b.coarse.to_string(), "refined": mid, "refined_error": rad }),
                vec![
                    row("coarse", adele_lab_core::real::format_sci(&b.coarse, 20)),
                    row("refined", mid.to_sci(20)),
                    row("refined_error", rad.to_sci(3)),
                ],
            )
        }
        GenusCmd::Isobound { n } => {
            let (alpha, bound) = isobound(&parse_rational(&n)?)?;
            out.emit(&json!({ "alpha": alpha, "bound": int_json(&bound) }), vec![row("alpha", alpha), row("bound", bound)])
        }
        GenusCmd::Dmax { alpha } => {
            let places = dmax_construct(alpha)?;
            let rows = places.iter().map(|p| row(p.place.to_string(), format!("d_v={} inv={}", p.d_v, p.inv))).collect();
            out.emit(&places, rows)
        }
        GenusCmd::Search { n, max_places, nd_max } => {
            let space = SearchSpace { max_places, nd_range: (2, nd_max) };
            let best = brute_force_theta_max(&parse_rational(&n)?, &space)?;
            out.emit(
                &best,
                vec![
                    row("theta", &best.theta),
                    row("nd", best.nd),
                    row("local_degrees", format!("{:?}", best.local_degrees)),
                    row("lambda_product", &best.lambda_product),
                ],
            )
        }
        GenusCmd::Report { ram, volume, d, disc } => {
            let disc = disc.as_deref().map(parse_int).transpose()?;
            let r = genus_report(&ram, &parse_rational(&volume)?, d, disc.as_ref(), prec)?;
            out.emit(
                &r,
                vec![
                    row("theta", &r.theta),
                    row("bound", &r.bound),
                    row("branch", format!("{:?}", r.branch)),
                    row("alpha", r.alpha),
                    row("budget", r.budget.to_sci(20)),
                    row("phi", format!("{:?}", r.details)),
                ],
            )
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("ADELE_LAB_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    configure_threads();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let name = e.downcast_ref::<Error>().map(Error::name).unwrap_or("InvalidInput");
            eprintln!("error[{name}]: {e:#}");
            ExitCode::from(1)
        }
    }
}
