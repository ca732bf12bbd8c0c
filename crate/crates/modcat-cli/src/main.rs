//! `modcat`: command-line front end for the exact module-category and
//! group-theoretical-category toolkit in `modcat-core`.
//!
//! Groups and cochains are loaded from JSON files or from the builtin
//! registry; every subcommand emits a deterministic report as text, JSON,
//! or CSV. Exit status: 0 on success, 1 on a domain error (bad datum,
//! unknown builtin, failed verification), 2 on an I/O or parse error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use modcat_core::cochain::{builtin_cochain, kx_coboundary_witness, Cochain, CochainInput};
use modcat_core::group::{subgroups, FiniteGroup, GroupInput, Subgroup};
use modcat_core::gt::{classify_algebras, fiber_functors, fpdim_squared, path_algebra_check, GTCategory};
use modcat_core::h8::{
    build_h8, builtin_module_algebra, decompose_module, irreps, match_classification,
    morita_separators, verify_module_algebra, Tag,
};
use modcat_core::modcat::{classify, rank_table, RankTable};
use modcat_core::oracle::{
    ambient_field, conjugacy_classes, invertible_group, simple_catalog, twisted_group_algebra,
    two_vertex_classes, AlgebraObject,
};

#[derive(Parser)]
#[command(name = "modcat", version, about = "Exact classification tools for pointed and group-theoretical fusion categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, element names, and the full subgroup lattice of a group.
    GroupInfo {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Classify the module categories M(L, psi) over Vec_G^omega.
    Modcats {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The simple-bimodule rank table over the classified data.
    Ranks {
        #[command(flatten)]
        input: InputArgs,
        /// Verify this many randomly sampled entries against the
        /// concrete bimodule oracle.
        #[arg(long, value_name = "N")]
        sample: Option<usize>,
        /// RNG seed for --sample (printed with the report).
        #[arg(long, default_value_t = 0xC0FFEE)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Conjugation orbits of simple bimodules over A(K, alpha) (or between
    /// two algebras when --K2 is given) and the invertible group.
    Conjugacy {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        pair: KArgs,
        /// Second subgroup for two-vertex orbits (comma-separated elements).
        #[arg(long = "K2", value_name = "LIST")]
        k2: Option<String>,
        /// Twist for the second subgroup.
        #[arg(long, default_value = "trivial")]
        alpha2: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Fiber functors of C(G, omega, K, alpha).
    Fiber {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        pair: KArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// One base algebra per Morita class of C(G, omega, K, alpha), with
    /// exact squared Frobenius-Perron dimensions.
    Algebras {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        pair: KArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// k-commutativity verdicts (is the tensor algebra a path algebra?)
    /// for every base algebra, against a chosen fiber functor.
    PathCheck {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        pair: KArgs,
        /// Index into the fiber-functor list.
        #[arg(long, default_value_t = 0)]
        fiber_index: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The Kac-Paljutkin algebra H8: axioms, irreducibles, and (with
    /// --verify-all) the full module-algebra case study.
    H8 {
        /// Verify the six module algebras, the Morita separators, and the
        /// matching with C(D8, omega, <z>, 1).
        #[arg(long)]
        verify_all: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct InputArgs {
    /// JSON file with a multiplication table or builtin reference.
    #[arg(long, value_name = "FILE", conflicts_with = "builtin_group")]
    group: Option<PathBuf>,
    /// Builtin group: trivial, Zn (e.g. Z6), Z2xZ2, S3, D8.
    #[arg(long, value_name = "NAME")]
    builtin_group: Option<String>,
    /// Associator 3-cocycle: builtin name (trivial, d8, d8_conj,
    /// omega_cyclic:<n>:<l>) or a JSON file.
    #[arg(long, default_value = "trivial")]
    omega: String,
}

#[derive(Args)]
struct KArgs {
    /// Comma-separated element indices of K, e.g. "0,4".
    #[arg(long = "K", value_name = "LIST")]
    k: String,
    /// Twist 2-cochain on K: "trivial", a builtin name, or a JSON file.
    #[arg(long, default_value = "trivial")]
    alpha: String,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

/// Failures split by exit status: 1 for domain errors, 2 for I/O/parse.
enum Failure {
    Domain(anyhow::Error),
    Io(anyhow::Error),
}

type CliResult<T> = Result<T, Failure>;

fn domain<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Domain(e.into())
}

fn io<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Io(e.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

// ---------------------------------------------------------------------
// Report rendering

struct Table {
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
}

struct Report {
    lines: Vec<String>,
    table: Option<Table>,
    json: Value,
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render(report: &Report, format: Format) -> CliResult<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.json).map_err(io)?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let table = report
                .table
                .as_ref()
                .ok_or_else(|| domain(anyhow!("this subcommand has no tabular output for CSV")))?;
            let mut s = String::new();
            let header: Vec<String> = table.headers.iter().map(|h| csv_field(h)).collect();
            let _ = writeln!(s, "{}", header.join(","));
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(|c| csv_field(c)).collect();
                let _ = writeln!(s, "{}", cells.join(","));
            }
            Ok(s)
        }
        Format::Text => {
            let mut s = String::new();
            for line in &report.lines {
                let _ = writeln!(s, "{line}");
            }
            if let Some(table) = &report.table {
                let ncols = table.headers.len();
                let mut widths: Vec<usize> = table.headers.iter().map(|h| h.len()).collect();
                for row in &table.rows {
                    for (i, c) in row.iter().enumerate() {
                        widths[i] = widths[i].max(c.len());
                    }
                }
                let fmt_row = |cells: &[String]| -> String {
                    let mut line = String::new();
                    for i in 0..ncols {
                        if i > 0 {
                            line.push_str("  ");
                        }
                        let cell = cells.get(i).map(String::as_str).unwrap_or("");
                        let _ = write!(line, "{cell:width$}", width = widths[i]);
                    }
                    line.trim_end().to_string()
                };
                let _ = writeln!(s, "{}", fmt_row(&table.headers));
                for row in &table.rows {
                    let _ = writeln!(s, "{}", fmt_row(row));
                }
            }
            Ok(s)
        }
    }
}

fn emit(report: &Report, output: &OutputArgs) -> CliResult<()> {
    let text = render(report, output.format)?;
    match &output.out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(io),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------
// Input loading

fn load_group(input: &InputArgs) -> CliResult<Arc<FiniteGroup>> {
    match (&input.group, &input.builtin_group) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))
                .map_err(io)?;
            let parsed: GroupInput = serde_json::from_str(&text)
                .with_context(|| format!("parsing {}", path.display()))
                .map_err(io)?;
            parsed.build().map_err(domain)
        }
        (None, Some(name)) => FiniteGroup::builtin(name).map_err(domain),
        (None, None) => Err(domain(anyhow!("one of --group or --builtin-group is required"))),
    }
}

fn load_cochain(
    spec: &str,
    group: &Arc<FiniteGroup>,
    degree: usize,
    domain_hint: Option<&Subgroup>,
) -> CliResult<Cochain> {
    if spec.ends_with(".json") || Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec)
            .with_context(|| format!("reading {spec}"))
            .map_err(io)?;
        let parsed: CochainInput = serde_json::from_str(&text)
            .with_context(|| format!("parsing {spec}"))
            .map_err(io)?;
        return parsed.build(group).map_err(domain);
    }
    if matches!(spec, "trivial" | "1") {
        let dom = domain_hint.cloned().unwrap_or_else(|| Subgroup::whole(group.clone()));
        return Ok(Cochain::trivial(dom, degree));
    }
    builtin_cochain(spec, group, degree).map_err(domain)
}

fn parse_subgroup(group: &Arc<FiniteGroup>, list: &str) -> CliResult<Subgroup> {
    let mut elements = Vec::new();
    for part in list.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let idx: usize = part
            .parse()
            .with_context(|| format!("invalid element index `{part}`"))
            .map_err(domain)?;
        elements.push(idx);
    }
    Subgroup::new(group.clone(), &elements).map_err(domain)
}

fn load_category(input: &InputArgs, pair: &KArgs) -> CliResult<GTCategory> {
    let group = load_group(input)?;
    let omega = load_cochain(&input.omega, &group, 3, None)?;
    let k = parse_subgroup(&group, &pair.k)?;
    let alpha = load_cochain(&pair.alpha, &group, 2, Some(&k))?;
    GTCategory::new(omega, k, alpha).map_err(domain)
}

fn load_algebra(
    group: &Arc<FiniteGroup>,
    list: &str,
    alpha_spec: &str,
) -> CliResult<(Subgroup, Cochain)> {
    let k = parse_subgroup(group, list)?;
    let alpha = load_cochain(alpha_spec, group, 2, Some(&k))?;
    Ok((k, alpha))
}

// ---------------------------------------------------------------------
// Subcommands

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::GroupInfo { input, output } => {
            let report = group_info(&input)?;
            emit(&report, &output)
        }
        Command::Modcats { input, output } => {
            let report = modcats(&input)?;
            emit(&report, &output)
        }
        Command::Ranks { input, sample, seed, output } => {
            let report = ranks(&input, sample, seed)?;
            emit(&report, &output)
        }
        Command::Conjugacy { input, pair, k2, alpha2, output } => {
            let report = conjugacy(&input, &pair, k2.as_deref(), &alpha2)?;
            emit(&report, &output)
        }
        Command::Fiber { input, pair, output } => {
            let report = fiber(&input, &pair)?;
            emit(&report, &output)
        }
        Command::Algebras { input, pair, output } => {
            let report = algebras(&input, &pair)?;
            emit(&report, &output)
        }
        Command::PathCheck { input, pair, fiber_index, output } => {
            let report = path_check(&input, &pair, fiber_index)?;
            emit(&report, &output)
        }
        Command::H8 { verify_all, output } => {
            let report = h8_report(verify_all)?;
            emit(&report, &output)
        }
    }
}

fn group_info(input: &InputArgs) -> CliResult<Report> {
    let group = load_group(input)?;
    let subs = subgroups(&group);
    let mut rows = Vec::new();
    let mut sub_json = Vec::new();
    for (i, s) in subs.iter().enumerate() {
        let elements: Vec<String> = s.elements().iter().map(|e| e.to_string()).collect();
        rows.push(vec![
            i.to_string(),
            s.order().to_string(),
            s.display_name(),
            elements.join(" "),
        ]);
        sub_json.push(json!({
            "order": s.order(),
            "name": s.display_name(),
            "elements": s.elements(),
        }));
    }
    let names = group.names();
    let lines = vec![
        format!("order: {}", group.order()),
        format!("abelian: {}", group.is_abelian()),
        format!("elements: {}", names.join(" ")),
        format!("subgroups: {}", subs.len()),
    ];
    let json = json!({
        "order": group.order(),
        "abelian": group.is_abelian(),
        "elements": names,
        "subgroups": sub_json,
    });
    Ok(Report {
        lines,
        table: Some(Table {
            headers: vec!["#".into(), "order".into(), "subgroup".into(), "elements".into()],
            rows,
        }),
        json,
    })
}

fn modcats(input: &InputArgs) -> CliResult<Report> {
    let group = load_group(input)?;
    let omega = load_cochain(&input.omega, &group, 3, None)?;
    let data = classify(&omega).map_err(domain)?;
    let mut rows = Vec::new();
    let mut class_json = Vec::new();
    for (i, d) in data.iter().enumerate() {
        let elements: Vec<String> = d.subgroup().elements().iter().map(|e| e.to_string()).collect();
        rows.push(vec![
            i.to_string(),
            d.label(),
            d.subgroup().order().to_string(),
            elements.join(" "),
        ]);
        class_json.push(json!({
            "label": d.label(),
            "order": d.subgroup().order(),
            "elements": d.subgroup().elements(),
        }));
    }
    Ok(Report {
        lines: vec![format!("module categories over Vec_G^omega: {}", data.len())],
        table: Some(Table {
            headers: vec!["#".into(), "(L, psi)".into(), "|L|".into(), "elements".into()],
            rows,
        }),
        json: json!({ "count": data.len(), "classes": class_json }),
    })
}

fn rank_table_rows(table: &RankTable) -> (Vec<String>, Vec<Vec<String>>) {
    let labels = table.labels();
    let mut headers = vec![String::new()];
    headers.extend(labels.iter().cloned());
    let rows = table
        .entries
        .iter()
        .zip(&labels)
        .map(|(row, label)| {
            let mut cells = vec![label.clone()];
            cells.extend(row.iter().map(|v| v.to_string()));
            cells
        })
        .collect();
    (headers, rows)
}

fn ranks(input: &InputArgs, sample: Option<usize>, seed: u64) -> CliResult<Report> {
    let group = load_group(input)?;
    let omega = load_cochain(&input.omega, &group, 3, None)?;
    let table = rank_table(&omega).map_err(domain)?;
    let (headers, rows) = rank_table_rows(&table);
    let mut lines = vec![format!("rank table over {} data", table.data.len())];
    let mut sample_json = Value::Null;
    if let Some(n) = sample {
        lines.push(format!("oracle sample: {n} entries, seed = {seed}"));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut checks = Vec::new();
        for _ in 0..n {
            let i = rng.gen_range(0..table.data.len());
            let j = rng.gen_range(0..table.data.len());
            let (di, dj) = (&table.data[i], &table.data[j]);
            let field = ambient_field(&omega, &[di.psi(), dj.psi()]);
            let make = |d: &modcat_core::modcat::ModCatDatum| -> CliResult<AlgebraObject> {
                twisted_group_algebra(d.subgroup(), d.psi(), &omega, &field).map_err(domain)
            };
            let cat = simple_catalog(&make(di)?, &make(dj)?).map_err(domain)?;
            if cat.rank() != table.entries[i][j] {
                return Err(domain(anyhow!(
                    "oracle disagrees with the counting formula at ({i}, {j}): {} vs {}",
                    cat.rank(),
                    table.entries[i][j]
                )));
            }
            lines.push(format!("  ({}, {}): rank {} confirmed", di.label(), dj.label(), cat.rank()));
            checks.push(json!({ "i": i, "j": j, "rank": cat.rank() }));
        }
        sample_json = json!({ "seed": seed, "checks": checks });
    }
    let json = json!({
        "labels": table.labels(),
        "entries": table.entries,
        "sample": sample_json,
    });
    Ok(Report { lines, table: Some(Table { headers, rows }), json })
}

fn conjugacy(
    input: &InputArgs,
    pair: &KArgs,
    k2: Option<&str>,
    alpha2: &str,
) -> CliResult<Report> {
    let group = load_group(input)?;
    let omega = load_cochain(&input.omega, &group, 3, None)?;
    let (k, alpha) = load_algebra(&group, &pair.k, &pair.alpha)?;
    let mut twists: Vec<&Cochain> = vec![&alpha];
    let second = match k2 {
        Some(list) => Some(load_algebra(&group, list, alpha2)?),
        None => None,
    };
    if let Some((_, a2)) = &second {
        twists.push(a2);
    }
    let field = ambient_field(&omega, &twists);
    let a = twisted_group_algebra(&k, &alpha, &omega, &field).map_err(domain)?;

    if let Some((k2, alpha2)) = &second {
        let b = twisted_group_algebra(k2, alpha2, &omega, &field).map_err(domain)?;
        let report = two_vertex_classes(&a, &b).map_err(domain)?;
        let rows: Vec<Vec<String>> = report
            .orbits
            .iter()
            .enumerate()
            .map(|(i, o)| {
                let members: Vec<String> = o.iter().map(|m| m.to_string()).collect();
                vec![i.to_string(), o.len().to_string(), members.join(" ")]
            })
            .collect();
        let sizes: Vec<usize> = report.orbits.iter().map(|o| o.len()).collect();
        return Ok(Report {
            lines: vec![
                format!("simple bimodules: {}", report.catalog.rank()),
                format!("two-vertex orbits: {}", report.orbits.len()),
            ],
            table: Some(Table {
                headers: vec!["#".into(), "size".into(), "members".into()],
                rows,
            }),
            json: json!({
                "rank": report.catalog.rank(),
                "orbits": report.orbits,
                "orbit_sizes": sizes,
            }),
        });
    }

    let report = conjugacy_classes(&a).map_err(domain)?;
    let inv = invertible_group(&a).map_err(domain)?;
    let rows: Vec<Vec<String>> = report
        .orbits
        .iter()
        .enumerate()
        .map(|(i, o)| {
            let members: Vec<String> = o.iter().map(|m| m.to_string()).collect();
            vec![i.to_string(), o.len().to_string(), members.join(" ")]
        })
        .collect();
    let sizes: Vec<usize> = report.orbits.iter().map(|o| o.len()).collect();
    Ok(Report {
        lines: vec![
            format!("simple bimodules: {}", report.catalog.rank()),
            format!("invertibles: {}", report.invertible.len()),
            format!("invertible group: {}", inv.name),
            format!("conjugation orbits: {}", report.orbits.len()),
        ],
        table: Some(Table { headers: vec!["#".into(), "size".into(), "members".into()], rows }),
        json: json!({
            "rank": report.catalog.rank(),
            "invertible_count": report.invertible.len(),
            "invertible_group": inv.name,
            "orbits": report.orbits,
            "orbit_sizes": sizes,
        }),
    })
}

fn fiber(input: &InputArgs, pair: &KArgs) -> CliResult<Report> {
    let c = load_category(input, pair)?;
    let fibers = fiber_functors(&c).map_err(domain)?;
    let mut rows = Vec::new();
    let mut fiber_json = Vec::new();
    for (i, f) in fibers.iter().enumerate() {
        let gamma_trivial = kx_coboundary_witness(&f.gamma).map_err(domain)?.is_some();
        let gamma = if gamma_trivial { "coboundary" } else { "nontrivial" };
        rows.push(vec![
            i.to_string(),
            f.n.display_name(),
            f.n.order().to_string(),
            gamma.to_string(),
        ]);
        fiber_json.push(json!({
            "n": f.n.elements(),
            "n_name": f.n.display_name(),
            "gamma_trivial": gamma_trivial,
        }));
    }
    Ok(Report {
        lines: vec![format!("fiber functors: {}", fibers.len())],
        table: Some(Table {
            headers: vec!["#".into(), "N".into(), "|N|".into(), "gamma".into()],
            rows,
        }),
        json: json!({ "count": fibers.len(), "fibers": fiber_json }),
    })
}

fn algebras(input: &InputArgs, pair: &KArgs) -> CliResult<Report> {
    let c = load_category(input, pair)?;
    let data = classify_algebras(&c).map_err(domain)?;
    let mut rows = Vec::new();
    let mut alg_json = Vec::new();
    for (i, d) in data.iter().enumerate() {
        let dim = fpdim_squared(&c, d).map_err(domain)?;
        rows.push(vec![
            i.to_string(),
            d.modcat.label(),
            dim.to_string(),
            d.rho_dim.to_string(),
        ]);
        alg_json.push(json!({
            "label": d.modcat.label(),
            "fpdim_squared": dim.to_string(),
            "rho_dim": d.rho_dim,
        }));
    }
    Ok(Report {
        lines: vec![format!("base algebras (one per Morita class): {}", data.len())],
        table: Some(Table {
            headers: vec!["#".into(), "(L, psi)".into(), "fpdim^2".into(), "dim rho".into()],
            rows,
        }),
        json: json!({ "count": data.len(), "algebras": alg_json }),
    })
}

fn path_check(input: &InputArgs, pair: &KArgs, fiber_index: usize) -> CliResult<Report> {
    let c = load_category(input, pair)?;
    let fibers = fiber_functors(&c).map_err(domain)?;
    let fiber = fibers
        .get(fiber_index)
        .ok_or_else(|| domain(anyhow!("fiber index {fiber_index} out of range ({} found)", fibers.len())))?;
    let data = classify_algebras(&c).map_err(domain)?;
    let (all_ok, reports) = path_algebra_check(&c, &data, fiber).map_err(domain)?;
    let mut rows = Vec::new();
    let mut rep_json = Vec::new();
    for r in &reports {
        let breakdown = match r.exact_fact_breakdown {
            Some((a, b, cc)) => format!("a={a} b={b} c={cc}"),
            None => "-".to_string(),
        };
        rows.push(vec![
            r.algebra.modcat.label(),
            r.lhs.to_string(),
            r.rhs.to_string(),
            r.commutative.to_string(),
            breakdown,
        ]);
        rep_json.push(json!({
            "label": r.algebra.modcat.label(),
            "lhs": r.lhs,
            "rhs": r.rhs.to_string(),
            "commutative": r.commutative,
            "breakdown": r.exact_fact_breakdown.map(|(a, b, cc)| vec![a, b, cc]),
        }));
    }
    Ok(Report {
        lines: vec![
            format!("fiber functor: (N = {}, |N| = {})", fiber.n.display_name(), fiber.n.order()),
            format!("all tensor algebras are path algebras: {all_ok}"),
        ],
        table: Some(Table {
            headers: vec![
                "(L, psi)".into(),
                "lhs".into(),
                "rhs".into(),
                "commutative".into(),
                "exact-fact (a,b,c)".into(),
            ],
            rows,
        }),
        json: json!({
            "fiber_n": fiber.n.elements(),
            "all_path_algebras": all_ok,
            "reports": rep_json,
        }),
    })
}

fn decomposition_name(mults: &[usize; 5]) -> String {
    let mut parts = Vec::new();
    for (i, &m) in mults.iter().enumerate() {
        match m {
            0 => {}
            1 => parts.push(format!("W{i}")),
            _ => parts.push(format!("W{i}^{m}")),
        }
    }
    parts.join(" + ")
}

fn h8_report(verify_all: bool) -> CliResult<Report> {
    let h = build_h8();
    h.verify_hopf_axioms().map_err(domain)?;
    let ws = irreps(&h).map_err(domain)?;
    let dims: Vec<usize> = ws.iter().map(|w| w.dim).collect();
    let mut lines = vec![
        "Hopf axioms: ok".to_string(),
        format!("irreducibles: {}", ws.iter().map(|w| format!("{} (dim {})", w.name, w.dim)).collect::<Vec<_>>().join(", ")),
    ];
    let mut json_obj = json!({
        "hopf_axioms": "ok",
        "irrep_dims": dims,
    });
    let mut table = None;

    if verify_all {
        let mut rows = Vec::new();
        let mut alg_json = Vec::new();
        for tag in Tag::ALL {
            let s = builtin_module_algebra(&h, tag);
            verify_module_algebra(&h, &s).map_err(domain)?;
            let d = decompose_module(&h, &s.underlying_module(&h).map_err(domain)?).map_err(domain)?;
            let commutative = s.is_commutative(h.field());
            rows.push(vec![
                tag.name().to_string(),
                s.dim.to_string(),
                commutative.to_string(),
                decomposition_name(&d),
            ]);
            alg_json.push(json!({
                "tag": tag.name(),
                "dim": s.dim,
                "commutative": commutative,
                "multiplicities": d.to_vec(),
            }));
        }
        let morita = morita_separators(&h).map_err(domain)?;
        lines.push(format!("module algebras verified: {}", Tag::ALL.len()));
        lines.push(format!("dims: {:?}", morita.dims));
        lines.push(format!(
            "x-restriction summands: {}",
            morita
                .x_summands
                .iter()
                .map(|(t, n)| format!("{} -> {n}", t.name()))
                .collect::<Vec<_>>()
                .join(", ")
        ));

        let g = FiniteGroup::d8();
        let k = Subgroup::new(g, &[0, 4]).map_err(domain)?;
        let alpha = Cochain::trivial(k.clone(), 2);
        let c = GTCategory::new(modcat_core::cochain::omega_d8(false), k, alpha).map_err(domain)?;
        let matching = match_classification(&h, &c).map_err(domain)?;
        let mut match_json = Vec::new();
        for p in &matching.pairs {
            lines.push(format!(
                "match: {} <-> {} ({})",
                p.algebra.modcat.label(),
                p.tag.name(),
                decomposition_name(&p.hopf_multiplicities)
            ));
            match_json.push(json!({
                "label": p.algebra.modcat.label(),
                "tag": p.tag.name(),
                "multiplicities": p.hopf_multiplicities.to_vec(),
            }));
        }
        table = Some(Table {
            headers: vec!["algebra".into(), "dim".into(), "commutative".into(), "decomposition".into()],
            rows,
        });
        let obj = json_obj.as_object_mut().expect("object");
        obj.insert("module_algebras".into(), Value::Array(alg_json));
        obj.insert("morita_dims".into(), json!(morita.dims.to_vec()));
        obj.insert("matching".into(), Value::Array(match_json));
    }

    Ok(Report { lines, table, json: json_obj })
}
