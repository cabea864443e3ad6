//! `stab`: exact stability computations on a ruled surface from the shell.
//!
//! Exit codes: 0 success, 1 input error (or a failed `verify`), 2 refusal
//! with a certificate.

mod descriptor;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use ruledstab::catalog::{ch_object, default_catalog, glued_phase, parse_object, CatalogEntry, GluedPhase};
use ruledstab::serial::{
    descriptor_from_json, BoundaryReport, CatalogEntryDto, ChargeReport, DescriptorDto, NeighborhoodDto, PerversityReport,
    PhaseDto, SideReport, VerdictReport,
};
use ruledstab::walls::boundary_solve_with;
use ruledstab::{
    classify_skyscraper, deform_side, neighborhood_check, verify, BoundaryOutcome, GluedDescriptor, NumClass,
    ObjectSpec, Q, StabError, StabilityDescriptor, SurfaceData,
};

use descriptor::{parse_lifted, rational, DescriptorArgs};

#[derive(Parser, Debug)]
#[command(name = "stab", version, about = "Bridgeland stability data on ruled surfaces, in exact arithmetic")]
struct Cli {
    /// Genus of the base curve.
    #[arg(long, global = true, default_value_t = 1)]
    genus: u32,

    /// Self-intersection C0^2 = deg E (Hartshorne's invariant is -e).
    #[arg(long = "e", global = true, default_value_t = 0, allow_negative_numbers = true)]
    e: i64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Central charge of objects.
    Charge {
        #[command(flatten)]
        desc: DescriptorArgs,
        /// Object expression, e.g. "O_f(-C0)[1]"; repeatable.
        #[arg(long = "object", required = true, allow_hyphen_values = true)]
        objects: Vec<String>,
    },
    /// Phase of single-factor objects under a glued condition.
    Phase {
        #[command(flatten)]
        desc: DescriptorArgs,
        #[arg(long = "object", required = true, allow_hyphen_values = true)]
        objects: Vec<String>,
    },
    /// Gluing perversity and whether the gluing is a stability condition.
    Perversity {
        #[command(flatten)]
        desc: DescriptorArgs,
    },
    /// Stability of skyscraper sheaves O_x.
    Classify {
        #[command(flatten)]
        desc: DescriptorArgs,
    },
    /// Boundary witness for the wall gluing with M1^{-1} = (a, b; c, d).
    WallWitness {
        /// Accepted for symmetry with the other commands.
        #[arg(long)]
        glued: bool,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "a1")]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "a1")]
        b: Option<String>,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        c: String,
        /// Defaults to `a`.
        #[arg(long, allow_hyphen_values = true)]
        d: Option<String>,
        /// Translate on the first factor instead of `--a/--b/--c/--d`.
        #[arg(long = "A1", allow_hyphen_values = true, conflicts_with_all = ["a", "b"])]
        a1: Option<String>,
        /// Free parameters of the witness family: omega = w f, B = x C0 + y f.
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        w: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        y: String,
    },
    /// Side of the wall on which a nearby condition lies.
    DeformSide {
        #[command(flatten)]
        desc: DescriptorArgs,
        /// Descriptor JSON of the nearby condition.
        #[arg(long)]
        toward: String,
    },
    /// Check |W - Z| < s |Z| on a list of classes.
    Neighborhood {
        #[command(flatten)]
        desc: DescriptorArgs,
        #[arg(long)]
        toward: String,
        /// Threshold in (0, 1), standing in for sin(pi eps).
        #[arg(long)]
        s: String,
        /// Defaults to the built-in catalog.
        #[arg(long = "object", allow_hyphen_values = true)]
        objects: Vec<String>,
    },
    /// Chern characters and factor membership of named objects.
    Catalog {
        #[arg(long = "object", allow_hyphen_values = true)]
        objects: Vec<String>,
    },
    /// Report where the skyscraper verdict changes along a descriptor path.
    Scan {
        /// JSON file holding an array of descriptors.
        #[arg(long)]
        path: PathBuf,
        /// Also write the per-step log as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run the invariant suite.
    Verify,
}

struct Report {
    json: String,
    text: String,
    code: u8,
}

impl Report {
    fn ok(value: impl Serialize, text: String) -> Self {
        Self { json: serde_json::to_string(&value).expect("reports serialize"), text, code: 0 }
    }
}

type Result<T> = std::result::Result<T, StabError>;

fn objects(list: &[String]) -> Result<Vec<ObjectSpec>> {
    list.iter().map(|t| parse_object(t).map_err(StabError::from)).collect()
}

fn single_or_list<T: Serialize>(mut items: Vec<T>) -> String {
    if items.len() == 1 {
        serde_json::to_string(&items.remove(0))
    } else {
        serde_json::to_string(&items)
    }
    .expect("reports serialize")
}

fn input(msg: impl Into<String>) -> StabError {
    StabError::Input(msg.into())
}

fn run(cli: &Cli) -> Result<Report> {
    let s = SurfaceData::new(cli.genus, cli.e);
    match &cli.command {
        Command::Charge { desc, objects: list } => {
            let d = desc.resolve()?;
            if let StabilityDescriptor::Divisorial(dd) = &d {
                dd.screen(&s)?;
            }
            let mut reports = Vec::new();
            let mut text = String::new();
            for spec in objects(list)? {
                let z = d.charge(&s, &ch_object(&s, &spec))?;
                let r = ChargeReport::new(&spec, &z);
                writeln!(text, "Z({}) = {}", r.object, r.charge).unwrap();
                reports.push(r);
            }
            Ok(Report { json: single_or_list(reports), text, code: 0 })
        }
        Command::Phase { desc, objects: list } => {
            let gd = desc.resolve_glued()?;
            let mut reports = Vec::new();
            let mut text = String::new();
            for spec in objects(list)? {
                let entry = CatalogEntry::<Q>::new(&s, spec)?;
                let phase = match glued_phase(&gd, &entry)? {
                    GluedPhase::Phase(p) => Some(PhaseDto::from_phase(&p)),
                    GluedPhase::Mixed => None,
                };
                let shown = phase.as_ref().map_or("none (Mixed)".to_string(), |p| format!("{:.6}", p.approx));
                writeln!(text, "phase({}) = {}  [{}]", entry.spec, shown, entry.component.name()).unwrap();
                reports.push(json!({
                    "object": entry.spec.to_string(),
                    "component": entry.component.name(),
                    "phase": phase,
                }));
            }
            Ok(Report { json: single_or_list(reports), text, code: 0 })
        }
        Command::Perversity { desc } => {
            let gd = desc.resolve_glued()?;
            let p = gd.perversity();
            let report = PerversityReport::from_comparison(&p);
            let text = format!(
                "per = {:.6} ({}); stability condition: {}\n",
                report.per.approx,
                report.verdict,
                gd.is_stability()
            );
            Ok(Report::ok(report, text))
        }
        Command::Classify { desc } => {
            let d = desc.resolve()?;
            let v = classify_skyscraper(&s, &d)?;
            let report = VerdictReport::from(&v);
            let mut text = format!("{} (moduli: {})\n", report.verdict, report.moduli);
            if let Some(obj) = &report.destabilizer {
                writeln!(text, "destabilized by {obj}").unwrap();
            }
            Ok(Report::ok(report, text))
        }
        Command::WallWitness { a, b, c, d, a1, w, y, .. } => {
            let gd = match a1 {
                Some(t) => GluedDescriptor::new(parse_lifted(t)?, ruledstab::LiftedGL::identity()),
                None => {
                    let a = rational(a.as_deref().expect("required by clap"))?;
                    let b = rational(b.as_deref().expect("required by clap"))?;
                    let d = match d {
                        Some(t) => rational(t)?,
                        None => a.clone(),
                    };
                    GluedDescriptor::from_inverse_entries(a, b, rational(c)?, d, 1)?
                }
            };
            let outcome = boundary_solve_with(&s, &gd, rational(w)?, rational(y)?)?;
            let report = BoundaryReport::from_outcome(&outcome);
            let (text, code) = match &report {
                BoundaryReport::Witness { m_inv, b, omega, note, .. } => (
                    format!(
                        "witness: M^-1 = [[{}, {}], [{}, {}]], B = {b}, omega = {omega}\n{note}\n",
                        m_inv[0][0], m_inv[0][1], m_inv[1][0], m_inv[1][1]
                    ),
                    0,
                ),
                BoundaryReport::Refusal { equation, actual, required } => {
                    (format!("refused: {equation} fails (b = {actual}, needs {required})\n"), 2)
                }
            };
            debug_assert_eq!(matches!(outcome, BoundaryOutcome::Refusal(_)), code == 2);
            Ok(Report { code, ..Report::ok(report, text) })
        }
        Command::DeformSide { desc, toward } => {
            let gd = desc.resolve_glued()?;
            let target = descriptor_from_json::<Q>(toward)?;
            let v = deform_side(&s, &gd, &target.pr1(&s))?;
            let report = SideReport::from_verdict(&v);
            let text = format!(
                "{}: phase(O_f) = {:.9}, phase(O_f(-C0)[1]) = {:.9}\n",
                report.side, report.fiber_phase.approx, report.quotient_phase.approx
            );
            Ok(Report::ok(report, text))
        }
        Command::Neighborhood { desc, toward, s: thr, objects: list } => {
            let base = desc.resolve()?;
            let target = descriptor_from_json::<Q>(toward)?;
            let specs = if list.is_empty() {
                default_catalog::<Q>(&s).into_iter().map(|e| e.spec).collect()
            } else {
                objects(list)?
            };
            let labels: Vec<String> = specs.iter().map(ToString::to_string).collect();
            let classes: Vec<NumClass<Q>> = specs.iter().map(|sp| ch_object(&s, sp)).collect();
            let r = neighborhood_check(&s, &base.pr1(&s), &target.pr1(&s), &rational(thr)?, &classes)?;
            let report = NeighborhoodDto::from_report(&r, &labels);
            let mut text = String::new();
            for e in &report.entries {
                writeln!(text, "{:<20} {:>12} {}", e.object, e.ratio_sq, if e.passes { "ok" } else { "FAIL" }).unwrap();
            }
            writeln!(text, "max |W-Z|^2/|Z|^2 = {}; all pass: {}", report.max_ratio_sq, report.all_pass).unwrap();
            Ok(Report::ok(report, text))
        }
        Command::Catalog { objects: list } => {
            let entries: Vec<CatalogEntry<Q>> = if list.is_empty() {
                default_catalog(&s)
            } else {
                objects(list)?.into_iter().map(|sp| CatalogEntry::new(&s, sp)).collect::<Result<_>>()?
            };
            let dtos: Vec<CatalogEntryDto> = entries.iter().map(CatalogEntryDto::from_entry).collect();
            let mut text = String::new();
            for d in &dtos {
                writeln!(text, "{:<20} ch = ({}, {}, {})  {}", d.object, d.ch.r, d.ch.c1, d.ch.ch2, d.component).unwrap();
            }
            Ok(Report::ok(dtos, text))
        }
        Command::Scan { path, csv } => scan(&s, path, csv.as_deref()),
        Command::Verify => {
            let rows = verify::run_suite(&s);
            let mut text = String::new();
            let mut json_rows = Vec::new();
            for r in &rows {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                writeln!(text, "{status}  {:<20} {:>7} checks", r.name, r.checked).unwrap();
                if let Some(f) = &r.failure {
                    writeln!(text, "      {f}").unwrap();
                }
                json_rows.push(json!({"name": r.name, "checked": r.checked, "passed": r.passed(), "failure": r.failure}));
            }
            let code = if rows.iter().all(|r| r.passed()) { 0 } else { 1 };
            Ok(Report { json: json!(json_rows).to_string(), text, code })
        }
    }
}

fn scan(s: &SurfaceData, path: &std::path::Path, csv: Option<&std::path::Path>) -> Result<Report> {
    let raw = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let steps: Vec<DescriptorDto> =
        serde_json::from_str(&raw).map_err(|e| input(format!("scan path JSON: {e}")))?;
    let verdicts: Vec<String> = steps
        .iter()
        .map(|dto| {
            dto.to_descriptor::<Q>()
                .and_then(|d| classify_skyscraper(s, &d))
                .map_or_else(|e| format!("error:{}", e.kind()), |v| v.kind.name().to_string())
        })
        .collect();
    let changes: Vec<serde_json::Value> = verdicts
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] != w[1])
        .map(|(i, w)| json!({"index": i + 1, "from": w[0], "to": w[1]}))
        .collect();
    if let Some(out) = csv {
        let mut body = String::from("index,verdict\n");
        for (i, v) in verdicts.iter().enumerate() {
            writeln!(body, "{i},{v}").unwrap();
        }
        std::fs::write(out, body).map_err(|e| input(format!("{}: {e}", out.display())))?;
    }
    let mut text = String::new();
    for c in &changes {
        writeln!(text, "step {}: {} -> {}", c["index"], c["from"], c["to"]).unwrap();
    }
    if changes.is_empty() {
        text.push_str("no verdict changes\n");
    }
    Ok(Report::ok(json!({"verdicts": verdicts, "changes": changes}), text))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Json => println!("{}", report.json),
                Format::Text => {
                    for c in SurfaceData::new(cli.genus, cli.e).caveats() {
                        println!("note: {c}");
                    }
                    print!("{}", report.text)
                }
            }
            ExitCode::from(report.code)
        }
        Err(e) => {
            match cli.format {
                Format::Json => eprintln!("{}", json!({"error": e.kind(), "message": e.to_string()})),
                Format::Text => eprintln!("error ({}): {e}", e.kind()),
            }
            ExitCode::from(1)
        }
    }
}
