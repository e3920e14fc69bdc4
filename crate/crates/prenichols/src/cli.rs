//! Command-line front end: analyze diagrams, enumerate roots, compute
//! Hilbert tables, test primitivity and zero-ness, run forced-relation
//! verdicts and the full verification suite.
//!
//! Exit codes: 0 = pass, 1 = verification failure, 2 = usage,
//! 3 = parse/validation, 4 = resource cap, 5 = inconclusive-only.
//! All numeric output is exact; `--format rows` emits machine-readable lines
//! that round-trip through [`rows::parse_line`]. Timings go to stderr only.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};

use crate::braiding::{parse_braiding_file, BraidingMatrix, MultiDegree};
use crate::catalog::{self, CatalogEntry};
use crate::freealg::FreeElement;
use crate::quotient::{expand_product_form, Quotient};
use crate::rootsys::{enumerate_roots, RootCaps, RootsResult};
use crate::scalar::render_cyclotomic;
use crate::verifier::{
    check_forced_relation, run_paper_suite, ItemStatus, Verdict, VerifierOptions,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VERIFICATION_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;
pub const EXIT_INCONCLUSIVE: i32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Rows,
}

#[derive(Parser)]
#[command(name = "prenichols", version, about = "exact computations with braided Hopf algebras of diagonal type")]
struct Cli {
    #[arg(long, value_enum, default_value = "plain", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Dynkin diagram, Cartan matrix, Cartan vertices and diagram
    /// obstructions of a braiding matrix (a catalog entry or a file path).
    Diagram { input: String },
    /// Enumerate positive roots, walking the Weyl groupoid within caps.
    Roots {
        input: String,
        #[arg(long, default_value_t = 1000)]
        cap: usize,
        #[arg(long, default_value_t = 60)]
        height: u32,
    },
    /// Per-multidegree dimension table of a catalog algebra.
    Hilbert {
        entry: String,
        #[arg(long)]
        max_degree: u32,
        /// compare against a named product form of the entry
        #[arg(long)]
        compare: Option<String>,
    },
    /// Normal form of an expression in a catalog algebra.
    Nf {
        entry: String,
        #[arg(long)]
        expr: String,
    },
    /// Primitivity of an expression in a catalog algebra.
    Primitive {
        entry: String,
        #[arg(long)]
        expr: String,
    },
    /// Forced-relation verdict for an expression over a catalog braiding.
    Verdict {
        entry: String,
        #[arg(long)]
        rel: String,
        /// explicit lower relations (repeatable)
        #[arg(long)]
        lower: Vec<String>,
        /// take lower relations of strictly smaller degree from this
        /// presentation
        #[arg(long)]
        lower_from: Option<String>,
    },
    /// Run a verification suite; `paper-suite` is the only suite.
    Verify { suite: String },
}

/// Resolve `name`, `name:presentation` or the compact `namepresentation`
/// spelling (hyphens in the entry name optional) to an entry and a
/// presentation name.
fn resolve_entry(spec: &str) -> Result<(CatalogEntry, String), String> {
    let (name_part, pres_part) = match spec.split_once(':') {
        Some((n, p)) => (n.to_string(), Some(p.to_string())),
        None => (spec.to_string(), None),
    };
    let normalized = |s: &str| s.replace('-', "").to_ascii_lowercase();
    // exact entry name first
    for candidate in catalog::ENTRY_NAMES {
        if candidate == name_part {
            let entry = catalog::load_entry(candidate).map_err(|e| e.to_string())?;
            let pres = pres_part.clone().unwrap_or_else(|| default_presentation(&entry));
            return Ok((entry, pres));
        }
    }
    // compact spelling: entry prefix + presentation suffix
    if pres_part.is_none() {
        for candidate in catalog::ENTRY_NAMES {
            let compact = normalized(candidate);
            let spec_norm = normalized(&name_part);
            if let Some(rest) = spec_norm.strip_prefix(&compact) {
                let rest = rest.trim_start_matches('-');
                let entry = catalog::load_entry(candidate).map_err(|e| e.to_string())?;
                if rest.is_empty() {
                    let pres = default_presentation(&entry);
                    return Ok((entry, pres));
                }
                for pname in entry.presentations.keys() {
                    if normalized(pname) == rest {
                        let pname = pname.clone();
                        return Ok((entry, pname));
                    }
                }
            }
        }
    }
    Err(format!(
        "unknown entry '{}'; known entries: {}",
        spec,
        catalog::ENTRY_NAMES.join(", ")
    ))
}

fn default_presentation(entry: &CatalogEntry) -> String {
    for candidate in ["eminent-completed", "eminent", "distinguished", "underline"] {
        if entry.presentations.contains_key(candidate) {
            return candidate.to_string();
        }
    }
    entry
        .presentations
        .keys()
        .next()
        .cloned()
        .unwrap_or_else(|| "eminent".into())
}

fn load_matrix(input: &str) -> Result<BraidingMatrix, (i32, String)> {
    if std::path::Path::new(input).exists() {
        let text = std::fs::read_to_string(input)
            .map_err(|e| (EXIT_PARSE, format!("cannot read {}: {}", input, e)))?;
        return parse_braiding_file(&text).map_err(|e| (EXIT_PARSE, e.to_string()));
    }
    let (entry, _) = resolve_entry(input).map_err(|m| (EXIT_PARSE, m))?;
    Ok(entry.braiding)
}

fn degree_token(d: &MultiDegree) -> String {
    d.0.iter()
        .map(|b| b.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn run_diagram(input: &str, format: Format, out: &mut String) -> Result<i32, (i32, String)> {
    let q = load_matrix(input)?;
    let diagram = q.dynkin_diagram();
    let cartan = q
        .cartan_data(8)
        .map_err(|e| (EXIT_RESOURCE, e.to_string()))?;
    let obstructions = q.obstruction_scan();
    match format {
        Format::Rows => {
            for (i, label) in diagram.vertex_labels.iter().enumerate() {
                let _ = writeln!(out, "VERTEX {} {} {}", i + 1, label.order(), label.exponent());
            }
            for (i, j, label) in &diagram.edges {
                let _ = writeln!(
                    out,
                    "EDGE {} {} {} {}",
                    i + 1,
                    j + 1,
                    label.order(),
                    label.exponent()
                );
            }
            for (i, row) in cartan.matrix.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    let _ = writeln!(out, "CARTAN {} {} {}", i + 1, j + 1, c);
                }
            }
            for v in &cartan.cartan_vertices {
                let _ = writeln!(out, "CARTANVERTEX {}", v + 1);
            }
            for o in &obstructions {
                let _ = writeln!(out, "OBSTRUCTION {}", o.kind());
            }
        }
        Format::Plain => {
            let labels: Vec<String> = diagram
                .vertex_labels
                .iter()
                .map(|l| l.to_string())
                .collect();
            let _ = writeln!(out, "vertices: {}", labels.join(", "));
            for (i, j, label) in &diagram.edges {
                let _ = writeln!(out, "edge {}--{}: {}", i + 1, j + 1, label);
            }
            let _ = writeln!(out, "Cartan matrix:");
            for row in &cartan.matrix {
                let cells: Vec<String> = row.iter().map(|c| format!("{:>3}", c)).collect();
                let _ = writeln!(out, "  [{}]", cells.join(" "));
            }
            let verts: Vec<String> = cartan
                .cartan_vertices
                .iter()
                .map(|v| (v + 1).to_string())
                .collect();
            let _ = writeln!(
                out,
                "Cartan vertices: {}",
                if verts.is_empty() { "none".into() } else { verts.join(", ") }
            );
            if obstructions.is_empty() {
                let _ = writeln!(out, "obstructions: none found by the scan");
            } else {
                for o in &obstructions {
                    let _ = writeln!(out, "obstruction: {} {:?}", o.kind(), o);
                }
            }
        }
    }
    Ok(EXIT_PASS)
}

fn run_roots(
    input: &str,
    cap: usize,
    height: u32,
    format: Format,
    out: &mut String,
) -> Result<i32, (i32, String)> {
    let q = load_matrix(input)?;
    let caps = RootCaps {
        max_states: cap,
        max_height: height,
        cartan_cap: 8,
    };
    match enumerate_roots(&q, caps) {
        RootsResult::Finite(roots) => {
            match format {
                Format::Rows => {
                    let _ = writeln!(out, "ROOTS FINITE {}", roots.len());
                    for r in &roots {
                        let _ = writeln!(out, "ROOT {}", degree_token(r));
                    }
                }
                Format::Plain => {
                    let _ = writeln!(out, "finite: {} positive roots", roots.len());
                    for r in &roots {
                        let _ = writeln!(out, "  {}", r);
                    }
                }
            }
            Ok(EXIT_PASS)
        }
        RootsResult::NotFiniteWithinCap { reason } => {
            match format {
                Format::Rows => {
                    let _ = writeln!(out, "ROOTS NOTFINITE {}", reason);
                }
                Format::Plain => {
                    let _ = writeln!(out, "not finite within caps: {}", reason);
                }
            }
            Ok(EXIT_RESOURCE)
        }
    }
}

fn run_hilbert(
    entry_spec: &str,
    max_degree: u32,
    compare: Option<&str>,
    format: Format,
    out: &mut String,
) -> Result<i32, (i32, String)> {
    let (entry, pres_name) = resolve_entry(entry_spec).map_err(|m| (EXIT_PARSE, m))?;
    let pres = entry
        .presentation(&pres_name)
        .map_err(|e| (EXIT_PARSE, e.to_string()))?;
    let quo = Quotient::new(pres.clone());
    let h = quo.hilbert(max_degree).map_err(|e| (EXIT_RESOURCE, e.to_string()))?;
    for (d, c) in &h.table {
        match format {
            Format::Rows => {
                let _ = writeln!(out, "DIM {} {}", degree_token(d), c);
            }
            Format::Plain => {
                let _ = writeln!(out, "dim {} = {}", d, c);
            }
        }
    }
    if let Some(form_name) = compare {
        let form = entry.product_forms.get(form_name).ok_or_else(|| {
            (
                EXIT_PARSE,
                format!(
                    "no product form '{}'; available: {}",
                    form_name,
                    entry
                        .product_forms
                        .keys()
                        .cloned()
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            )
        })?;
        let expanded = expand_product_form(form, entry.braiding.rank(), max_degree);
        match h.first_difference(&expanded) {
            None => {
                let _ = writeln!(
                    out,
                    "{}",
                    match format {
                        Format::Rows => "COMPARE MATCH".to_string(),
                        Format::Plain => format!("table matches product form '{}'", form_name),
                    }
                );
                Ok(EXIT_PASS)
            }
            Some(d) => {
                let _ = writeln!(
                    out,
                    "{}",
                    match format {
                        Format::Rows => format!("COMPARE MISMATCH {}", degree_token(&d)),
                        Format::Plain => format!(
                            "table differs from '{}' first at {} (engine {}, form {})",
                            form_name,
                            d,
                            h.dim(&d),
                            expanded.dim(&d)
                        ),
                    }
                );
                Ok(EXIT_VERIFICATION_FAILURE)
            }
        }
    } else {
        Ok(EXIT_PASS)
    }
}

fn render_element(u: &FreeElement, format: Format, out: &mut String) {
    if u.is_zero() {
        match format {
            Format::Rows => {
                let _ = writeln!(out, "TERM 0 1");
            }
            Format::Plain => {
                let _ = writeln!(out, "0");
            }
        }
        return;
    }
    for (w, c) in u.sorted_terms() {
        let word = if w.is_empty() { "1".to_string() } else { w.to_string() };
        match format {
            Format::Rows => {
                let _ = writeln!(out, "TERM {} {}", render_cyclotomic(&c), word);
            }
            Format::Plain => {
                let _ = writeln!(out, "  ({}) {}", render_cyclotomic(&c), word);
            }
        }
    }
}

fn run_nf(
    entry_spec: &str,
    expr: &str,
    format: Format,
    out: &mut String,
) -> Result<i32, (i32, String)> {
    let (entry, pres_name) = resolve_entry(entry_spec).map_err(|m| (EXIT_PARSE, m))?;
    let pres = entry
        .presentation(&pres_name)
        .map_err(|e| (EXIT_PARSE, e.to_string()))?;
    let elem = entry.parse(expr).map_err(|e| (EXIT_PARSE, e.to_string()))?;
    let quo = Quotient::new(pres.clone());
    let nf = quo
        .normal_form(&elem)
        .map_err(|e| (EXIT_RESOURCE, e.to_string()))?;
    render_element(&nf, format, out);
    Ok(EXIT_PASS)
}

fn run_primitive(
    entry_spec: &str,
    expr: &str,
    format: Format,
    out: &mut String,
) -> Result<i32, (i32, String)> {
    let (entry, pres_name) = resolve_entry(entry_spec).map_err(|m| (EXIT_PARSE, m))?;
    let pres = entry
        .presentation(&pres_name)
        .map_err(|e| (EXIT_PARSE, e.to_string()))?;
    let elem = entry.parse(expr).map_err(|e| (EXIT_PARSE, e.to_string()))?;
    let quo = Quotient::new(pres.clone());
    let primitive = quo
        .is_primitive(&elem)
        .map_err(|e| (EXIT_RESOURCE, e.to_string()))?;
    match format {
        Format::Rows => {
            let _ = writeln!(out, "PRIMITIVE {}", primitive);
        }
        Format::Plain => {
            let _ = writeln!(out, "{}", if primitive { "PRIMITIVE" } else { "NOT PRIMITIVE" });
        }
    }
    Ok(EXIT_PASS)
}

fn run_verdict(
    entry_spec: &str,
    rel: &str,
    lower: &[String],
    lower_from: Option<&str>,
    format: Format,
    out: &mut String,
) -> Result<i32, (i32, String)> {
    let (entry, default_pres) = resolve_entry(entry_spec).map_err(|m| (EXIT_PARSE, m))?;
    let rel_elem = entry.parse(rel).map_err(|e| (EXIT_PARSE, e.to_string()))?;
    let rel_degree = rel_elem
        .degree()
        .ok_or_else(|| (EXIT_PARSE, "relation must be homogeneous".to_string()))?;
    let mut lower_elems = Vec::new();
    for l in lower {
        lower_elems.push(entry.parse(l).map_err(|e| (EXIT_PARSE, e.to_string()))?);
    }
    let from = lower_from.map(|s| s.to_string()).or(Some(default_pres));
    if let Some(pname) = from {
        if let Ok(pres) = entry.presentation(&pname) {
            for r in &pres.relations {
                let d = r.degree().expect("validated");
                if d.leq(&rel_degree) && d != rel_degree {
                    lower_elems.push(r.clone());
                }
            }
        }
    }
    let verdict = check_forced_relation(
        &entry.braiding,
        &rel_elem,
        &lower_elems,
        VerifierOptions::default(),
    )
    .map_err(|e| (EXIT_RESOURCE, e.to_string()))?;
    match &verdict {
        Verdict::ForcedZero {
            refutations,
            conditional,
            degree,
            ..
        } => {
            match format {
                Format::Rows => {
                    let _ = writeln!(out, "VERDICT forced-zero");
                    let _ = writeln!(out, "DEGREE {}", degree_token(degree));
                    for r in refutations {
                        let _ = writeln!(out, "REASON {}", r);
                    }
                    let _ = writeln!(out, "CONDITIONAL {}", conditional);
                }
                Format::Plain => {
                    let _ = writeln!(
                        out,
                        "FORCED ZERO at degree {}{}",
                        degree,
                        if *conditional {
                            " (conditional on the finiteness conjecture)"
                        } else {
                            ""
                        }
                    );
                    for r in refutations {
                        let _ = writeln!(out, "  refuted by {}", r);
                    }
                }
            }
            Ok(EXIT_PASS)
        }
        Verdict::ImpliedZero { degree, refutations } => {
            match format {
                Format::Rows => {
                    let _ = writeln!(out, "VERDICT implied");
                    let _ = writeln!(out, "DEGREE {}", degree_token(degree));
                    for r in refutations {
                        let _ = writeln!(out, "REASON {}", r);
                    }
                }
                Format::Plain => {
                    let _ = writeln!(
                        out,
                        "IMPLIED: already zero modulo smaller forced relations at degree {}",
                        degree
                    );
                }
            }
            Ok(EXIT_PASS)
        }
        Verdict::NotForced { degree, .. } => {
            match format {
                Format::Rows => {
                    let _ = writeln!(out, "VERDICT not-forced");
                    let _ = writeln!(out, "DEGREE {}", degree_token(degree));
                }
                Format::Plain => {
                    let _ = writeln!(out, "NOT FORCED at degree {}", degree);
                }
            }
            Ok(EXIT_PASS)
        }
        Verdict::Inconclusive { reason } => {
            match format {
                Format::Rows => {
                    let _ = writeln!(out, "VERDICT inconclusive");
                    let _ = writeln!(out, "REASON {}", reason);
                }
                Format::Plain => {
                    let _ = writeln!(out, "INCONCLUSIVE: {}", reason);
                }
            }
            Ok(EXIT_INCONCLUSIVE)
        }
    }
}

fn run_verify(suite: &str, format: Format, out: &mut String) -> Result<i32, (i32, String)> {
    if suite != "paper-suite" {
        return Err((EXIT_USAGE, format!("unknown suite '{}'", suite)));
    }
    let report = run_paper_suite(VerifierOptions::default());
    for item in &report.items {
        match format {
            Format::Rows => {
                let _ = writeln!(out, "ITEM {} {} {}", item.id, item.status, item.detail);
            }
            Format::Plain => {
                let _ = writeln!(out, "{:12} {}  {}", item.status.to_string(), item.id, item.detail);
            }
        }
        // timings go to the separate channel so comparison output is stable
        eprintln!("timing {} {}ms", item.id, item.millis);
    }
    let pass = report
        .items
        .iter()
        .filter(|i| i.status == ItemStatus::Pass)
        .count();
    let _ = writeln!(out, "# {} of {} items pass", pass, report.items.len());
    if report.any_fail() {
        Ok(EXIT_VERIFICATION_FAILURE)
    } else if !report.all_pass() {
        Ok(EXIT_INCONCLUSIVE)
    } else {
        Ok(EXIT_PASS)
    }
}

/// Run the CLI on the given arguments, collecting stdout text. Used by
/// `main` and by the round-trip tests.
pub fn run(args: &[String]) -> (i32, String) {
    let mut out = String::new();
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap renders help/version through its own error type
            let message = e.to_string();
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            return (code, message);
        }
    };
    let format = cli.format;
    let result = match &cli.command {
        Command::Diagram { input } => run_diagram(input, format, &mut out),
        Command::Roots { input, cap, height } => run_roots(input, *cap, *height, format, &mut out),
        Command::Hilbert {
            entry,
            max_degree,
            compare,
        } => run_hilbert(entry, *max_degree, compare.as_deref(), format, &mut out),
        Command::Nf { entry, expr } => run_nf(entry, expr, format, &mut out),
        Command::Primitive { entry, expr } => run_primitive(entry, expr, format, &mut out),
        Command::Verdict {
            entry,
            rel,
            lower,
            lower_from,
        } => run_verdict(entry, rel, lower, lower_from.as_deref(), format, &mut out),
        Command::Verify { suite } => run_verify(suite, format, &mut out),
    };
    match result {
        Ok(code) => (code, out),
        Err((code, message)) => {
            let _ = writeln!(out, "error: {}", message);
            (code, out)
        }
    }
}

/// Parsers for the machine-readable rows output.
pub mod rows {
    use crate::braiding::MultiDegree;

    #[derive(Debug, Clone, PartialEq, Eq)]
    pub enum Row {
        Vertex { index: usize, order: u64, exponent: u64 },
        Edge { i: usize, j: usize, order: u64, exponent: u64 },
        Cartan { i: usize, j: usize, value: i64 },
        CartanVertex { index: usize },
        Obstruction { kind: String },
        RootsFinite { count: usize },
        Root { degree: MultiDegree },
        RootsNotFinite { reason: String },
        Dim { degree: MultiDegree, value: u64 },
        CompareMatch,
        CompareMismatch { degree: MultiDegree },
        Term { coeff: String, word: String },
        Primitive { value: bool },
        Verdict { status: String },
        Degree { degree: MultiDegree },
        Reason { text: String },
        Conditional { value: bool },
        Item { id: String, status: String, detail: String },
        Comment { text: String },
    }

    /// Parse one line of rows output; `None` for lines outside the format.
    pub fn parse_line(line: &str) -> Option<Row> {
        let mut parts = line.split_whitespace();
        let head = parts.next()?;
        let rest: Vec<&str> = parts.collect();
        let degree_of = |toks: &[&str]| -> Option<MultiDegree> {
            let v: Result<Vec<u32>, _> = toks.iter().map(|t| t.parse()).collect();
            v.ok().map(MultiDegree)
        };
        match head {
            "#" => Some(Row::Comment {
                text: rest.join(" "),
            }),
            "VERTEX" => Some(Row::Vertex {
                index: rest.first()?.parse().ok()?,
                order: rest.get(1)?.parse().ok()?,
                exponent: rest.get(2)?.parse().ok()?,
            }),
            "EDGE" => Some(Row::Edge {
                i: rest.first()?.parse().ok()?,
                j: rest.get(1)?.parse().ok()?,
                order: rest.get(2)?.parse().ok()?,
                exponent: rest.get(3)?.parse().ok()?,
            }),
            "CARTAN" => Some(Row::Cartan {
                i: rest.first()?.parse().ok()?,
                j: rest.get(1)?.parse().ok()?,
                value: rest.get(2)?.parse().ok()?,
            }),
            "CARTANVERTEX" => Some(Row::CartanVertex {
                index: rest.first()?.parse().ok()?,
            }),
            "OBSTRUCTION" => Some(Row::Obstruction {
                kind: rest.join(" "),
            }),
            "ROOTS" => match rest.first()? {
                &"FINITE" => Some(Row::RootsFinite {
                    count: rest.get(1)?.parse().ok()?,
                }),
                &"NOTFINITE" => Some(Row::RootsNotFinite {
                    reason: rest[1..].join(" "),
                }),
                _ => None,
            },
            "ROOT" => Some(Row::Root {
                degree: degree_of(&rest)?,
            }),
            "DIM" => {
                let (value, degree) = rest.split_last()?;
                Some(Row::Dim {
                    degree: degree_of(degree)?,
                    value: value.parse().ok()?,
                })
            }
            "COMPARE" => match rest.first()? {
                &"MATCH" => Some(Row::CompareMatch),
                &"MISMATCH" => Some(Row::CompareMismatch {
                    degree: degree_of(&rest[1..])?,
                }),
                _ => None,
            },
            "TERM" => Some(Row::Term {
                coeff: rest.first()?.to_string(),
                word: rest.get(1)?.to_string(),
            }),
            "PRIMITIVE" => Some(Row::Primitive {
                value: rest.first()?.parse().ok()?,
            }),
            "VERDICT" => Some(Row::Verdict {
                status: rest.first()?.to_string(),
            }),
            "DEGREE" => Some(Row::Degree {
                degree: degree_of(&rest)?,
            }),
            "REASON" => Some(Row::Reason {
                text: rest.join(" "),
            }),
            "CONDITIONAL" => Some(Row::Conditional {
                value: rest.first()?.parse().ok()?,
            }),
            "ITEM" => Some(Row::Item {
                id: rest.first()?.to_string(),
                status: rest.get(1)?.to_string(),
                detail: rest[2..].join(" "),
            }),
            _ => None,
        }
    }
}
