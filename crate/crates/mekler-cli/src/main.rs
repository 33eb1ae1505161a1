//! `mekler` — build finite Mekler groups from nice graphs and run the
//! definable-structure pipelines: niceness checks, type censuses, graph
//! recovery, separatedness analysis, inp-pattern checks and per-element
//! classification.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 semantic rejection
//! (a graph that is not nice), 3 resource cap exceeded.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mekler_core::bilinear::{BilinearSystem, SeparatedSearch};
use mekler_core::classify;
use mekler_core::graph::{self, Graph};
use mekler_core::group::MeklerGroup;
use mekler_core::transversal;
use mekler_core::{Error, Partial};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "mekler",
    about = "Finite Mekler groups over nice graphs",
    version,
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Enumeration cap (elements); env MEKLER_CAP overrides the default.
    #[arg(long, global = true)]
    cap: Option<u128>,

    /// Seed for randomized fixture generation (reserved for scripting).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a graph is nice; exit 2 with the witness if not.
    CheckNice { path: PathBuf },

    /// Build M(C) and print its order, dimensions and transversal sizes.
    Build {
        path: PathBuf,
        #[arg(long, default_value_t = 3)]
        p: u64,
    },

    /// Count elements of each type.
    Census {
        path: PathBuf,
        #[arg(long, default_value_t = 3)]
        p: u64,
    },

    /// Recover the graph from the group and verify the isomorphism.
    Recover {
        path: PathBuf,
        #[arg(long, default_value_t = 3)]
        p: u64,
        /// Minimum core degree for the quotient-cover check.
        #[arg(long, default_value_t = 2)]
        threshold: usize,
    },

    /// Analyse separatedness of F(M(C)), or of the wedge-quotient fixture.
    Separated {
        path: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        p: u64,
        /// Analyse the non-separated wedge-quotient fixture instead of a graph.
        #[arg(long)]
        wedge_quotient: bool,
    },

    /// Check the support formula family: m-consistent, (m+1)-inconsistent.
    Inp {
        path: PathBuf,
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long)]
        m: usize,
    },

    /// Classify one element given in the text form gen=[...];com=[...].
    Classify {
        path: PathBuf,
        element: String,
        #[arg(long, default_value_t = 3)]
        p: u64,
    },

    /// Emit a random graph with no 3- or 4-cycles in edge-list format.
    /// Niceness is not guaranteed; pipe through `check-nice`.
    GenGirth5 {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        degree_bound: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap prints help/version on stdout with success; errors go to stderr
            let is_help = matches!(
                err.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = err.print();
            return if is_help {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::NotNice(_) => 2,
        Error::CapExceeded { .. } | Error::BoundExceeded(_) => 3,
        _ => 1,
    }
}

fn cap_from(cli_cap: Option<u128>) -> Option<u128> {
    if let Some(cap) = cli_cap {
        return Some(cap);
    }
    std::env::var("MEKLER_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
}

fn load_graph(path: &Path) -> Result<Graph, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    graph::parse_graph(&text)
}

fn build_group(path: &Path, p: u64, cap: Option<u128>) -> Result<MeklerGroup, Error> {
    let g = load_graph(path)?;
    let group = MeklerGroup::build(g, p)?;
    Ok(match cap {
        Some(cap) => group.with_enumeration_cap(cap),
        None => group,
    })
}

fn emit(format: Format, text: String, json: impl Serialize) -> Result<(), Error> {
    match format {
        Format::Text => print!("{text}"),
        Format::Json => {
            let value = serde_json::to_string_pretty(&json)
                .map_err(|e| Error::Internal(format!("json serialization failed: {e}")))?;
            println!("{value}");
        }
    }
    Ok(())
}

fn format_image(image: &[u64]) -> String {
    let inner = image
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",");
    format!("[{inner}]")
}

fn run(cli: Cli) -> Result<u8, Error> {
    let cap = cap_from(cli.cap);
    match cli.command {
        Command::CheckNice { path } => return cmd_check_nice(&path, cli.format),
        Command::Build { path, p } => cmd_build(&path, p, cap, cli.format)?,
        Command::Census { path, p } => cmd_census(&path, p, cap, cli.format)?,
        Command::Recover { path, p, threshold } => {
            cmd_recover(&path, p, threshold, cap, cli.format)?
        }
        Command::Separated {
            path,
            p,
            wedge_quotient,
        } => cmd_separated(path.as_deref(), p, wedge_quotient, cli.format)?,
        Command::Inp { path, p, m } => cmd_inp(&path, p, m, cap, cli.format)?,
        Command::Classify { path, element, p } => {
            cmd_classify(&path, p, &element, cap, cli.format)?
        }
        Command::GenGirth5 { n, degree_bound } => {
            let g = graph::random_girth5(n, degree_bound, cli.seed)?;
            print!("{}", g.to_edge_list());
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// check-nice
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct CheckNiceReport {
    schema_version: u32,
    vertices: usize,
    edges: usize,
    nice: bool,
    violation: Option<graph::NicenessViolation>,
}

fn cmd_check_nice(path: &Path, format: Format) -> Result<u8, Error> {
    let g = load_graph(path)?;
    let report = graph::is_nice(&g);
    let mut text = format!(
        "graph: {} vertices, {} edges\n",
        g.vertex_count(),
        g.edge_count()
    );
    let _ = writeln!(text, "nice: {}", report.verdict);
    if let Some(v) = &report.violation {
        let _ = writeln!(text, "violation: {v}");
    }
    emit(
        format,
        text,
        CheckNiceReport {
            schema_version: SCHEMA_VERSION,
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            nice: report.verdict,
            violation: report.violation.clone(),
        },
    )?;
    // the report is the output; the exit code alone signals the rejection
    Ok(if report.verdict { 0 } else { 2 })
}

// ---------------------------------------------------------------------------
// build
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct BuildReport {
    schema_version: u32,
    vertices: usize,
    edges: usize,
    p: u64,
    order: String,
    dim_v: usize,
    dim_w: usize,
    enumerable: bool,
    transversal: transversal::TransversalSchema,
}

fn cmd_build(path: &Path, p: u64, cap: Option<u128>, format: Format) -> Result<(), Error> {
    let group = build_group(path, p, cap)?;
    let order = group.order();
    let enumerable = order.value().is_some_and(|v| v <= group.enumeration_cap());
    let t = transversal::compute_full_transversal(&group)?;
    let mut text = format!(
        "graph: {} vertices, {} edges\n",
        group.graph().vertex_count(),
        group.graph().edge_count()
    );
    let _ = writeln!(text, "p: {p}");
    let _ = writeln!(text, "order: {order}");
    let _ = writeln!(text, "dim V: {}", group.generator_count());
    let _ = writeln!(text, "dim W: {}", group.center_dim());
    let _ = writeln!(
        text,
        "element enumeration: {}",
        if enumerable {
            "available".to_string()
        } else {
            format!("skipped (order above cap {})", group.enumeration_cap())
        }
    );
    let _ = writeln!(
        text,
        "transversal: |X^nu| = {}, |X^p| = {}, |X^iota| = {}, |X^zeta| = {}",
        t.x_nu.len(),
        t.x_p.len(),
        t.x_iota.len(),
        t.x_zeta.len()
    );
    emit(
        format,
        text,
        BuildReport {
            schema_version: SCHEMA_VERSION,
            vertices: group.graph().vertex_count(),
            edges: group.graph().edge_count(),
            p,
            order: order.to_string(),
            dim_v: group.generator_count(),
            dim_w: group.center_dim(),
            enumerable,
            transversal: t.to_schema(),
        },
    )
}

// ---------------------------------------------------------------------------
// census
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct CensusReport {
    schema_version: u32,
    p: u64,
    #[serde(flatten)]
    census: classify::TypeCensus,
    total: Option<u64>,
}

fn cmd_census(path: &Path, p: u64, cap: Option<u128>, format: Format) -> Result<(), Error> {
    let group = build_group(path, p, cap)?;
    let census = classify::type_census(&group)?;
    let mut text = format!(
        "census for {} vertices, p = {p}\n",
        group.graph().vertex_count()
    );
    let opt = |v: Option<u64>| match v {
        Some(x) => x.to_string(),
        None => "skipped (image space above cap)".to_string(),
    };
    let _ = writeln!(text, "central: {}", census.central);
    let _ = writeln!(text, "one_nu: {}", census.one_nu);
    let _ = writeln!(text, "p_minus_one: {}", opt(census.p_minus_one));
    let _ = writeln!(text, "type_p: {}", opt(census.type_p));
    let _ = writeln!(text, "one_iota: {}", opt(census.one_iota));
    if let Some(total) = census.total() {
        let _ = writeln!(text, "total: {total}");
    }
    let total = census.total();
    emit(
        format,
        text,
        CensusReport {
            schema_version: SCHEMA_VERSION,
            p,
            census,
            total,
        },
    )
}

// ---------------------------------------------------------------------------
// recover
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct RecoverReport {
    schema_version: u32,
    p: u64,
    classes: usize,
    isomorphic: bool,
    isomorphism: Vec<usize>,
    cover: Option<CoverSummary>,
}

#[derive(Serialize)]
struct CoverSummary {
    threshold: usize,
    quotient_classes: usize,
    is_cover: bool,
}

fn cmd_recover(
    path: &Path,
    p: u64,
    threshold: usize,
    cap: Option<u128>,
    format: Format,
) -> Result<(), Error> {
    let group = build_group(path, p, cap)?;
    let recovered = classify::recover_graph(&group)?;
    let mut text = format!("recovered: {} classes\n", recovered.classes.len());
    let _ = writeln!(text, "isomorphic: true");
    let cover = match classify::gamma_cover_check(&group, threshold) {
        Ok(outcome) => {
            let _ = writeln!(
                text,
                "cover: {} (threshold {threshold}, {} quotient classes)",
                outcome.report.is_cover,
                outcome.quotient.classes.len()
            );
            Some(CoverSummary {
                threshold,
                quotient_classes: outcome.quotient.classes.len(),
                is_cover: outcome.report.is_cover,
            })
        }
        Err(Error::CapExceeded { .. }) | Err(Error::BoundExceeded(_)) => {
            let _ = writeln!(text, "cover: skipped (quotient above cap)");
            None
        }
        Err(e) => return Err(e),
    };
    emit(
        format,
        text,
        RecoverReport {
            schema_version: SCHEMA_VERSION,
            p,
            classes: recovered.classes.len(),
            isomorphic: true,
            isomorphism: recovered.isomorphism.clone(),
            cover,
        },
    )
}

// ---------------------------------------------------------------------------
// separated
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct SeparatedReport {
    schema_version: u32,
    p: u64,
    #[serde(rename = "dimV")]
    dim_v: usize,
    #[serde(rename = "dimW")]
    dim_w: usize,
    fixture: String,
    outcome: String,
    basis: Option<Vec<Vec<u64>>>,
    certificate: Option<mekler_core::bilinear::CountingCertificate>,
}

fn cmd_separated(
    path: Option<&Path>,
    p: u64,
    wedge_quotient: bool,
    format: Format,
) -> Result<(), Error> {
    let (system, fixture) = if wedge_quotient {
        (
            BilinearSystem::wedge_quotient_fixture(p)?,
            "wedge quotient".to_string(),
        )
    } else {
        let path = path.ok_or_else(|| {
            Error::Input("a graph path is required unless --wedge-quotient is set".into())
        })?;
        let group = MeklerGroup::build(load_graph(path)?, p)?;
        (BilinearSystem::f_of_group(&group), "F(M(C))".to_string())
    };
    let full_space: Vec<Vec<u64>> = (0..system.dim_v())
        .map(|i| {
            let mut v = vec![0u64; system.dim_v()];
            v[i] = 1;
            v
        })
        .collect();
    let search = system.find_separated_basis(&full_space)?;
    let mut text = format!(
        "system: dim V = {}, dim W = {}, p = {p} ({fixture})\n",
        system.dim_v(),
        system.dim_w()
    );
    let (outcome, basis, certificate) = match search {
        SeparatedSearch::Found(basis) => {
            let _ = writeln!(text, "separated: true");
            let rows: Vec<String> = basis.iter().map(|b| format_image(b)).collect();
            let _ = writeln!(text, "basis: {}", rows.join(" "));
            ("separated".to_string(), Some(basis), None)
        }
        SeparatedSearch::NoneCertified(cert) => {
            let _ = writeln!(text, "separated: false");
            let _ = writeln!(
                text,
                "certificate: beta span {} < required {}",
                cert.beta_span_dim, cert.required
            );
            ("not separated (certified)".to_string(), None, Some(cert))
        }
        SeparatedSearch::Indeterminate => {
            let _ = writeln!(text, "separated: indeterminate (search bound exhausted)");
            ("indeterminate".to_string(), None, None)
        }
    };
    emit(
        format,
        text,
        SeparatedReport {
            schema_version: SCHEMA_VERSION,
            p,
            dim_v: system.dim_v(),
            dim_w: system.dim_w(),
            fixture,
            outcome,
            basis,
            certificate,
        },
    )
}

// ---------------------------------------------------------------------------
// inp
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct InpJsonReport {
    schema_version: u32,
    p: u64,
    #[serde(flatten)]
    report: classify::InpReport,
}

fn cmd_inp(path: &Path, p: u64, m: usize, cap: Option<u128>, format: Format) -> Result<(), Error> {
    let group = build_group(path, p, cap)?;
    let vertices: Vec<usize> = (0..group.generator_count()).collect();
    let report = classify::inp_pattern_check(&group, m, &vertices)?;
    let mut text = format!("inp check: m = {m}, vertices {:?}\n", report.vertices);
    let _ = writeln!(text, "consistent: {}", report.consistent);
    let _ = writeln!(text, "inconsistent_at: {}", report.inconsistent_at);
    let _ = writeln!(text, "verified: {}", report.inconsistency_verified);
    emit(
        format,
        text,
        InpJsonReport {
            schema_version: SCHEMA_VERSION,
            p,
            report,
        },
    )
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct ClassifyReport {
    schema_version: u32,
    p: u64,
    element: String,
    type_tag: classify::TypeTag,
    q: Option<u64>,
    isolation: Option<String>,
    sim_class: Option<Vec<u64>>,
    handle: Option<Vec<u64>>,
    minimal_index: (usize, usize),
    support: Option<classify::SupportRecord>,
}

fn cmd_classify(
    path: &Path,
    p: u64,
    element: &str,
    cap: Option<u128>,
    format: Format,
) -> Result<(), Error> {
    let group = build_group(path, p, cap)?;
    let g = group.parse_element(element)?;
    let ty = classify::type_of(&group, &g)?;
    let (n, m) = classify::minimal_a_index(&group, &g);
    let support = match classify::support(&group, &g, n, m)? {
        Partial::Defined(rec) => Some(rec),
        Partial::Undetermined => None,
    };
    let sim_class = if group.is_central(&g) {
        None
    } else {
        Some(classify::sim_class_of(&group, &g)?.0)
    };
    let handle = match &ty {
        classify::ElementType::TypeP { handle } => Some(handle.0.clone()),
        _ => None,
    };
    let isolation = ty.isolation().map(|i| {
        match i {
            classify::Isolation::Iota => "iota",
            classify::Isolation::Nu => "nu",
        }
        .to_string()
    });

    let tag_name = match ty.tag() {
        classify::TypeTag::Central => "central",
        classify::TypeTag::OneNu => "one_nu",
        classify::TypeTag::PMinusOne => "p_minus_one",
        classify::TypeTag::TypeP => "type_p",
        classify::TypeTag::OneIota => "one_iota",
    };
    let mut text = format!("element: {g}\n");
    let _ = writeln!(text, "type: {tag_name}");
    if let Some(q) = ty.q(group.p()) {
        let _ = writeln!(text, "q: {q}");
    }
    if let Some(iso) = &isolation {
        let _ = writeln!(text, "isolation: {iso}");
    }
    if let Some(class) = &sim_class {
        let _ = writeln!(text, "sim_class: {}", format_image(class));
    }
    if let Some(h) = &handle {
        let _ = writeln!(text, "handle: {}", format_image(h));
    }
    let _ = writeln!(text, "minimal_index: ({n}, {m})");
    if let Some(rec) = &support {
        let s: Vec<String> = rec.s.iter().map(|c| format_image(&c.0)).collect();
        let hs: Vec<String> = rec.s_handles.iter().map(|c| format_image(&c.0)).collect();
        let _ = writeln!(
            text,
            "support: s = {{{}}}, handles = {{{}}}",
            s.join(", "),
            hs.join(", ")
        );
    }
    emit(
        format,
        text,
        ClassifyReport {
            schema_version: SCHEMA_VERSION,
            p,
            element: g.to_string(),
            type_tag: ty.tag(),
            q: ty.q(group.p()),
            isolation,
            sim_class,
            handle,
            minimal_index: (n, m),
            support,
        },
    )
}
