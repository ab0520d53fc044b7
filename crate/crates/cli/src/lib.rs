//! Command-line front end for `artin-core`.
//!
//! Every subcommand resolves its input (a preset such as `~D5+A3`, or a
//! graph file via `--file`), calls one library operation and formats the
//! result as text or JSON.

pub mod json;
pub mod reproduce;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use artin_core::classify::{parse_preset_types, ClassifyError};
use artin_core::graph::GraphError;
use artin_core::homology::{h1_of_artin, h2_fast, homology_at, AbelianGroup};
use artin_core::modeltheory::{
    center_fact, distinguish_irreducible, elementary_equivalent_spherical, existentially_equivalent_affine,
    retract_obstruction, torsion_profile, Decision, DistinguishCertificate, EqeCertificate, RetractOutcome,
    Witness,
};
use artin_core::poincare::{coxeter_number, exponents, group_order};
use artin_core::salvetti::homology_is_unconditional;
use artin_core::{build_complex, classify, preset_graph, CoxeterGraph, CoxeterType, Family, IntPolynomial};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::json::*;
use crate::reproduce::Table;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unparseable input, unknown preset, unreadable file.
    #[error("{0}")]
    Input(String),
    /// Well-formed input outside an operation's hypotheses.
    #[error("{0}")]
    Domain(String),
    /// `reproduce` found mismatches; carries the full report.
    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Domain(_) | CliError::Mismatch(_) => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Artin groups of Coxeter graphs: classification, homology and
/// first-order invariants.
#[derive(Debug, Parser)]
#[command(name = "artin", version)]
pub struct Cli {
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,

    /// Read the graph from a file in the text format instead of a preset.
    #[arg(long, global = true, value_name = "PATH")]
    pub file: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Irreducible components and their types.
    Classify { preset: Option<String> },
    /// Connected components with their generators and edges.
    Decompose { preset: Option<String> },
    /// Poincaré polynomial of a spherical graph.
    Poincare { preset: Option<String> },
    /// Salvetti chain complex up to degree K + 1.
    Complex {
        preset: Option<String>,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Integral homology in degree K from the Salvetti complex.
    Homology {
        preset: Option<String>,
        #[arg(long)]
        degree: usize,
    },
    /// H_2 of a connected simply laced Artin group (closed form).
    H2 { preset: Option<String> },
    /// H_1 (abelianization) of the Artin group.
    H1 { preset: Option<String> },
    /// Torsion orders of the central quotient of an irreducible spherical type.
    Torsion { preset: Option<String> },
    /// Generator of the center and its abelianized exponent.
    Center { preset: Option<String> },
    /// Separate two spherical Artin groups by first-order invariants.
    Distinguish { first: String, second: String },
    /// Existential equivalence of simply laced affine Artin groups.
    EqeAffine { first: String, second: String },
    /// Homological obstruction to TARGET retracting onto SOURCE.
    Retract { target: String, source: String },
    /// List catalog types.
    Catalog {
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
        /// Largest dihedral label listed.
        #[arg(long, default_value_t = 8)]
        max_m: u32,
    },
    /// Recompute the reference tables and compare with recorded values.
    Reproduce {
        /// Restrict to some tables (repeatable).
        #[arg(long, value_enum)]
        table: Vec<Table>,
        /// Corrupt the first recorded value (harness self-test).
        #[arg(long)]
        inject_mismatch: bool,
    },
}

/// Result of a successful command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub warnings: Vec<String>,
}

impl Output {
    fn text(stdout: String) -> Self {
        Output {
            stdout,
            warnings: Vec::new(),
        }
    }
}

fn graph_err(e: GraphError) -> CliError {
    CliError::Input(e.to_string())
}

fn classify_err(input: &str, e: ClassifyError) -> CliError {
    match e {
        ClassifyError::InvalidType(_) | ClassifyError::PresetSyntax(_) => CliError::Input(format!("{input}: {e}")),
        ClassifyError::EmptyGraph | ClassifyError::DisconnectedGraph => CliError::Domain(format!("{input}: {e}")),
    }
}

fn domain(input: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Domain(format!("{input}: {e}"))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable output")
}

/// Exactly one of a preset and `--file`.
fn load_graph(preset: Option<&str>, file: Option<&PathBuf>) -> Result<(String, CoxeterGraph), CliError> {
    match (preset, file) {
        (Some(p), None) => Ok((p.to_string(), preset_graph(p).map_err(|e| classify_err(p, e))?)),
        (None, Some(path)) => {
            let shown = path.display().to_string();
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{shown}: {e}")))?;
            let g = CoxeterGraph::parse(&text).map_err(|e| CliError::Input(format!("{shown}: {}", graph_err(e))))?;
            Ok((shown, g))
        }
        (Some(_), Some(_)) => Err(CliError::Input("give either a preset or --file, not both".into())),
        (None, None) => Err(CliError::Input("missing input: give a preset or --file".into())),
    }
}

/// A single irreducible type, from a preset term or a connected graph file.
fn load_type(preset: Option<&str>, file: Option<&PathBuf>) -> Result<(String, CoxeterType), CliError> {
    if let (Some(p), None) = (preset, file) {
        let types = parse_preset_types(p).map_err(|e| classify_err(p, e))?;
        return match types.as_slice() {
            [t] => Ok((p.to_string(), *t)),
            _ => Err(CliError::Input(format!("{p}: expected a single irreducible type"))),
        };
    }
    let (name, g) = load_graph(preset, file)?;
    let d = classify(&g);
    match d.components.as_slice() {
        [c] => Ok((name, c.ty)),
        _ => Err(domain(&name, ClassifyError::DisconnectedGraph)),
    }
}

fn single_type(p: &str) -> Result<CoxeterType, CliError> {
    load_type(Some(p), None).map(|(_, t)| t)
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let file = cli.file.as_ref();
    let json = cli.format == Format::Json;
    if file.is_some()
        && matches!(
            cli.command,
            Command::Distinguish { .. }
                | Command::EqeAffine { .. }
                | Command::Retract { .. }
                | Command::Catalog { .. }
                | Command::Reproduce { .. }
        )
    {
        return Err(CliError::Input("--file is not accepted by this command".into()));
    }
    match &cli.command {
        Command::Classify { preset } => {
            let (_, g) = load_graph(preset.as_deref(), file)?;
            let d = classify(&g);
            Ok(Output::text(if json {
                to_json(&ClassifyJson::new(&g, &d))
            } else {
                d.to_string()
            }))
        }
        Command::Decompose { preset } => {
            let (_, g) = load_graph(preset.as_deref(), file)?;
            Ok(Output::text(decompose(&g, json)))
        }
        Command::Poincare { preset } => {
            let (name, g) = load_graph(preset.as_deref(), file)?;
            poincare(&name, &g, json).map(Output::text)
        }
        Command::Complex { preset, degree } => {
            let (name, g) = load_graph(preset.as_deref(), file)?;
            let c = build_complex(&g, *degree).map_err(|e| domain(&name, e))?;
            let dump = c.dump();
            Ok(Output::text(if json {
                to_json(&ComplexJson::from(&dump))
            } else {
                let mut out = String::new();
                for d in &dump.degrees {
                    let names: Vec<String> = d.basis.iter().map(|s| format!("{{{}}}", s.join(","))).collect();
                    let _ = writeln!(out, "C_{} (rank {}): {}", d.k, d.basis.len(), names.join(" "));
                    if d.k > 0 && !d.boundary.is_empty() {
                        for row in &d.boundary {
                            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                            let _ = writeln!(out, "  [{}]", cells.join(" "));
                        }
                    }
                }
                out.trim_end().to_string()
            }))
        }
        Command::Homology { preset, degree } => {
            let (name, g) = load_graph(preset.as_deref(), file)?;
            let c = build_complex(&g, *degree).map_err(|e| domain(&name, e))?;
            let h = homology_at(&c, *degree).map_err(|e| domain(&name, e))?;
            let unconditional = homology_is_unconditional(&g);
            let mut out = Output::text(if json {
                to_json(&HomologyJson {
                    degree: *degree,
                    group: (&h).into(),
                    text: h.to_string(),
                    unconditional,
                })
            } else {
                h.to_string()
            });
            if !unconditional {
                out.warnings.push(format!(
                    "note: {name} has components outside the spherical and affine catalogs; \
                     the result is the homology of the Salvetti complex and equals the group \
                     homology under the K(pi,1) conjecture"
                ));
            }
            Ok(out)
        }
        Command::H2 { preset } => {
            let (name, g) = load_graph(preset.as_deref(), file)?;
            let h = h2_fast(&g).map_err(|e| domain(&name, e))?;
            Ok(Output::text(group_out(&h, json)))
        }
        Command::H1 { preset } => {
            let (_, g) = load_graph(preset.as_deref(), file)?;
            Ok(Output::text(group_out(&h1_of_artin(&g), json)))
        }
        Command::Torsion { preset } => {
            let (name, t) = load_type(preset.as_deref(), file)?;
            let p = torsion_profile(&t).map_err(|e| domain(&name, e))?;
            Ok(Output::text(if json {
                to_json(&TorsionJson {
                    ty: t.to_string(),
                    orders: p.orders.iter().copied().collect(),
                })
            } else {
                p.to_string()
            }))
        }
        Command::Center { preset } => {
            let (name, t) = load_type(preset.as_deref(), file)?;
            let f = center_fact(&t).map_err(|e| domain(&name, e))?;
            Ok(Output::text(if json {
                to_json(&CenterJson::new(t.to_string(), &f))
            } else {
                format!(
                    "{t}: center generated by {}, N = {}, central exponent {}",
                    generator_name(f.generator_kind),
                    f.reflection_count,
                    f.central_exponent
                )
            }))
        }
        Command::Distinguish { first, second } => {
            let cert = distinguish(first, second)?;
            Ok(Output::text(if json {
                to_json(&CertificateJson::from(&cert))
            } else {
                certificate_text(&cert)
            }))
        }
        Command::EqeAffine { first, second } => {
            let (s, t) = (single_type(first)?, single_type(second)?);
            let d = existentially_equivalent_affine(&s, &t).map_err(|e| domain(&format!("{first} vs {second}"), e))?;
            Ok(Output::text(if json {
                to_json(&DecisionJson::from(&d))
            } else {
                decision_text(&d)
            }))
        }
        Command::Retract { target, source } => {
            let (t, s) = (single_type(target)?, single_type(source)?);
            let r = retract_obstruction(&t, &s).map_err(|e| domain(&format!("{target} onto {source}"), e))?;
            Ok(Output::text(if json {
                to_json(&RetractJson::from(&r))
            } else {
                retract_text(&t, &s, &r)
            }))
        }
        Command::Catalog { max_rank, max_m } => Ok(Output::text(catalog(*max_rank, *max_m, json))),
        Command::Reproduce { table, inject_mismatch } => {
            let report = reproduce::reproduce(table, *inject_mismatch)?;
            let rendered = if json {
                to_json(&report)
            } else {
                reproduce::render_text(&report)
            };
            if report.mismatches > 0 {
                Err(CliError::Mismatch(rendered))
            } else {
                Ok(Output::text(rendered))
            }
        }
    }
}

fn group_out(h: &AbelianGroup, json: bool) -> String {
    if json {
        to_json(&GroupJson::from(h))
    } else {
        h.to_string()
    }
}

fn decompose(g: &CoxeterGraph, json: bool) -> String {
    let d = classify(g);
    let pieces: Vec<PieceJson> = d
        .components
        .iter()
        .map(|c| {
            let sub = g.induced(&c.generators);
            PieceJson {
                ty: c.ty.to_string(),
                generators: sub.names().to_vec(),
                edges: sub
                    .edges()
                    .map(|(u, v, l)| EdgeJson {
                        u: sub.name(u).to_string(),
                        v: sub.name(v).to_string(),
                        label: l.to_string(),
                    })
                    .collect(),
            }
        })
        .collect();
    if json {
        return to_json(&DecomposeJson { components: pieces });
    }
    let mut out = String::new();
    for p in &pieces {
        let _ = write!(out, "{}: {}", p.ty, p.generators.join(" "));
        for e in &p.edges {
            let _ = write!(out, "\n  {} - {} ({})", e.u, e.v, e.label);
        }
        out.push('\n');
    }
    if pieces.is_empty() {
        out.push_str("trivial");
    }
    out.trim_end().to_string()
}

fn poincare(name: &str, g: &CoxeterGraph, json: bool) -> Result<String, CliError> {
    let d = classify(g);
    let mut factors = Vec::new();
    let mut multiplicity: BTreeMap<u32, u32> = BTreeMap::new();
    for c in &d.components {
        let e = exponents(&c.ty).map_err(|e| domain(name, e))?;
        for &x in &e {
            *multiplicity.entry(x).or_default() += 1;
        }
        factors.push(FactorJson {
            ty: c.ty.to_string(),
            exponents: e,
        });
    }
    let mut factored = String::new();
    let mut expanded = IntPolynomial::one();
    for (&e, &k) in &multiplicity {
        let f = IntPolynomial::q_integer(e);
        let _ = write!(factored, "({f})");
        if k > 1 {
            let _ = write!(factored, "^{k}");
        }
        expanded = &expanded * &f.pow(k);
    }
    if factored.is_empty() {
        factored.push('1');
    }
    Ok(if json {
        to_json(&PoincareJson {
            factored,
            factors,
            expanded: expanded.coeffs().iter().map(BigNum::from).collect(),
        })
    } else {
        format!("{factored} = {expanded}")
    })
}

fn distinguish(first: &str, second: &str) -> Result<DistinguishCertificate, CliError> {
    let context = format!("{first} vs {second}");
    let (_, g) = load_graph(Some(first), None)?;
    let (_, h) = load_graph(Some(second), None)?;
    let (dg, dh) = (classify(&g), classify(&h));
    if let ([a], [b]) = (dg.components.as_slice(), dh.components.as_slice()) {
        return distinguish_irreducible(&a.ty, &b.ty).map_err(|e| domain(&context, e));
    }
    elementary_equivalent_spherical(&g, &h)
        .map(|(_, cert)| cert)
        .map_err(|e| domain(&context, e))
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::None => "none".into(),
        Witness::TorsionOrder(o) => format!("torsion order {o} occurs on one side only"),
        Witness::Hyperbolic { first, second } => {
            format!("central quotient hyperbolic: first {first}, second {second}")
        }
        Witness::CyclicOrders(a, b) => format!("abelianized central quotients Z/{a} vs Z/{b}"),
        Witness::Component { ty, first, second } => {
            format!("component {ty} occurs {first} vs {second} times")
        }
    }
}

fn certificate_text(c: &DistinguishCertificate) -> String {
    match c.method {
        None => format!("{:?}", c.verdict),
        Some(m) => format!("{:?} by {m:?}: {}", c.verdict, witness_text(&c.witness)),
    }
}

fn retract_text(t: &CoxeterType, s: &CoxeterType, r: &RetractOutcome) -> String {
    match r {
        RetractOutcome::Obstructed { degree, source, target } => format!(
            "Obstructed in degree {degree}: H_{degree}({s}) = {source} does not embed in H_{degree}({t}) = {target}"
        ),
        RetractOutcome::NoObstructionFound => "NoObstructionFound".into(),
    }
}

fn decision_text(d: &Decision) -> String {
    match d {
        Decision::Equivalent => "Equivalent".into(),
        Decision::OutOfTheoremScope => "OutOfTheoremScope".into(),
        Decision::NotEquivalent(EqeCertificate::RankMismatch(a, b)) => {
            format!("NotEquivalent: ~A{a} and ~A{b} have different ranks")
        }
        Decision::NotEquivalent(EqeCertificate::Retract { target, source, outcome }) => {
            format!("NotEquivalent: {}", retract_text(target, source, outcome))
        }
    }
}

fn catalog_types(max_rank: usize, max_m: u32) -> Vec<CoxeterType> {
    let mut types = Vec::new();
    types.extend((1..=max_rank).map(CoxeterType::a));
    types.extend((2..=max_rank).map(CoxeterType::b));
    types.extend((4..=max_rank).map(CoxeterType::d));
    for (f, r) in [
        (Family::E6, 6),
        (Family::E7, 7),
        (Family::E8, 8),
        (Family::F4, 4),
        (Family::H3, 3),
        (Family::H4, 4),
    ] {
        if r <= max_rank {
            types.push(CoxeterType::exceptional(f));
        }
    }
    if max_rank >= 2 {
        types.extend((5..=max_m).map(CoxeterType::dihedral));
    }
    types.extend((1..=max_rank).map(CoxeterType::affine_a));
    types.extend((4..=max_rank).map(CoxeterType::affine_d));
    for (f, r) in [(Family::AffE6, 6), (Family::AffE7, 7), (Family::AffE8, 8)] {
        if r <= max_rank {
            types.push(CoxeterType::exceptional(f));
        }
    }
    types
}

fn catalog(max_rank: usize, max_m: u32, json: bool) -> String {
    let entries: Vec<CatalogEntryJson> = catalog_types(max_rank, max_m)
        .iter()
        .map(|t| CatalogEntryJson {
            ty: t.to_string(),
            vertices: t.vertex_count(),
            spherical: t.is_spherical(),
            affine: t.is_affine(),
            exponents: exponents(t).ok(),
            coxeter_number: coxeter_number(t).ok(),
            order: group_order(t).ok().as_ref().map(BigNum::from),
            graph: t.template().map(|g| g.to_text()).unwrap_or_default(),
        })
        .collect();
    if json {
        return to_json(&entries);
    }
    let mut out = String::new();
    for e in &entries {
        let kind = if e.spherical { "spherical" } else { "affine" };
        let _ = write!(out, "{:<8} {:>2} vertices  {kind}", e.ty, e.vertices);
        if let (Some(ex), Some(h), Some(o)) = (&e.exponents, e.coxeter_number, &e.order) {
            let ex: Vec<String> = ex.iter().map(u32::to_string).collect();
            let _ = write!(out, "  exponents {}  h = {h}  |W| = {}", ex.join(" "), o.0);
        }
        out.push('\n');
    }
    out.trim_end().to_string()
}
