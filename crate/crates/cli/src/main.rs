use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context as _, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use latsurg::checks::run_checks;
use latsurg::completion::dm_completion;
use latsurg::congruence::{is_local_congruence, least_local_congruence, quotient_order_delta};
use latsurg::io::report::{
    partition_blocks, CompletionReport, CongruenceReport, LatticeReport, PipelineJson, PlanReport, QuotientReport,
    ReduceReport, Verdict, VerifyReport,
};
use latsurg::io::{export_dot, export_lattice_dot, looks_like_poset, parse_context, parse_poset, serialize_csv};
use latsurg::reduction::{quotient_order_d, verify_reduction_isomorphism};
use latsurg::surgery::{congruence_surgery_pipeline, remove_concept, verify_removal};
use latsurg::{build_lattice, AttributeSet, FiniteLattice, FinitePoset, FormalContext};

/// Concept lattices, reduction quotients, local congruences and context surgery.
#[derive(Parser)]
#[command(name = "latsurg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Context as CSV or Burmeister CXT.
    file: PathBuf,
    /// Print a JSON report instead of text.
    #[arg(long)]
    json: bool,
    /// Also write the Hasse diagram as DOT.
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PreferArg {
    Objects,
    Attributes,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    JoinFirst,
    MeetFirst,
}

#[derive(Subcommand)]
enum Command {
    /// List the concepts and covers of the lattice.
    Concepts {
        #[command(flatten)]
        common: Common,
    },
    /// Classes of the reduction to an attribute subset.
    Reduce {
        #[command(flatten)]
        common: Common,
        /// Attribute subset, comma separated.
        #[arg(short = 'D', value_name = "ATTRS")]
        d: String,
    },
    /// Least local congruence containing the reduction classes.
    Congruence {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'D', value_name = "ATTRS")]
        d: String,
    },
    /// Remove one concept by editing the context.
    Surgery {
        #[command(flatten)]
        common: Common,
        /// Concept id, e.g. C4.
        #[arg(long, value_name = "ID")]
        remove: String,
        #[arg(long, value_enum, default_value = "objects")]
        prefer: PreferArg,
    },
    /// Reduce, merge by the least local congruence and edit the reduced context.
    Pipeline {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'D', value_name = "ATTRS")]
        d: String,
        #[arg(long, value_enum, default_value = "objects")]
        prefer: PreferArg,
        #[arg(long, value_enum, default_value = "join-first")]
        order: OrderArg,
    },
    /// Dedekind-MacNeille completion of a poset file or of a context's lattice.
    Dm {
        #[command(flatten)]
        common: Common,
    },
    /// Run every structural check on one context.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Extra attribute subset to check.
        #[arg(short = 'D', value_name = "ATTRS")]
        d: Option<String>,
    },
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    command: &'static str,
    #[serde(flatten)]
    report: T,
}

#[derive(Serialize)]
struct ConceptsJson {
    lattice: LatticeReport,
}

#[derive(Serialize)]
struct SurgeryJson {
    plan: PlanReport,
    size_before: usize,
    size_after: usize,
    verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

#[derive(Serialize)]
struct DmJson {
    completion: CompletionReport,
}

fn read_context(path: &Path) -> Result<FormalContext> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_context(&text).with_context(|| format!("in {}", path.display()))
}

fn parse_subset(ctx: &FormalContext, list: &str) -> Result<AttributeSet> {
    let names: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    Ok(ctx.attribute_set(&names)?)
}

fn set(names: &[String]) -> String {
    format!("{{{}}}", names.join(","))
}

fn emit<T: Serialize>(command: &'static str, report: T) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, &Envelope { command, report })?;
    writeln!(out)?;
    Ok(())
}

fn write_dot(common: &Common, dot: impl FnOnce() -> String) -> Result<()> {
    if let Some(path) = &common.dot {
        fs::write(path, dot()).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}

fn print_covers(p: &FinitePoset) {
    let edges: Vec<String> = p
        .cover_edges()
        .into_iter()
        .map(|(a, b)| format!("{} < {}", p.label(a), p.label(b)))
        .collect();
    println!("covers: {}", edges.join(", "));
}

fn print_lattice(r: &LatticeReport) {
    println!("{} concepts", r.size);
    for c in &r.concepts {
        let mut flags = Vec::new();
        if c.join_irreducible {
            flags.push("join-irreducible");
        }
        if c.meet_irreducible {
            flags.push("meet-irreducible");
        }
        println!(
            "{:>4}  extent {}  intent {}  obg {}  atg {}  {}",
            c.id,
            set(&c.extent),
            set(&c.intent),
            set(&c.obg),
            set(&c.atg),
            flags.join(" ")
        );
    }
    let covers: Vec<String> = r.covers.iter().map(|[a, b]| format!("{a} < {b}")).collect();
    println!("covers: {}", covers.join(", "));
}

fn print_blocks(title: &str, blocks: &[Vec<String>]) {
    println!("{title}: {} blocks", blocks.len());
    for b in blocks {
        println!("  {}", set(b));
    }
}

fn print_quotient(q: &QuotientReport) {
    println!("quotient: {} classes", q.classes.len());
    for c in &q.classes {
        println!("  {} = {}", c.label, set(&c.members));
    }
    let covers: Vec<String> = q.covers.iter().map(|[a, b]| format!("{a} < {b}")).collect();
    println!("quotient covers: {}", covers.join(", "));
    match &q.witness {
        None => println!("is_lattice true"),
        Some(w) => println!(
            "is_lattice false: {} and {} have no {}",
            w.pair[0],
            w.pair[1],
            match w.missing {
                latsurg::poset::MissingBound::Meet => "meet",
                latsurg::poset::MissingBound::Join => "join",
            }
        ),
    }
}

fn verdict_line(v: Verdict) -> &'static str {
    match v {
        Verdict::Isomorphic => "verdict ISOMORPHIC",
        Verdict::NotIsomorphic => "verdict NOT_ISOMORPHIC",
    }
}

/// `Ok(true)` when every verification passed.
fn run(command: Command) -> Result<bool> {
    match command {
        Command::Concepts { common } => {
            let ctx = read_context(&common.file)?;
            let lat = build_lattice(&ctx);
            write_dot(&common, || export_lattice_dot(&lat, None))?;
            let report = LatticeReport::new(&lat);
            if common.json {
                emit("concepts", ConceptsJson { lattice: report })?;
            } else {
                print_lattice(&report);
            }
            Ok(true)
        }
        Command::Reduce { common, d } => {
            let ctx = read_context(&common.file)?;
            let d = parse_subset(&ctx, &d)?;
            let lat = build_lattice(&ctx);
            let rq = quotient_order_d(&lat, &d)?;
            let (verdict, detail) = match verify_reduction_isomorphism(&lat, &d) {
                Ok(_) => (Verdict::Isomorphic, None),
                Err(e) if e.is_verification_failure() => (Verdict::NotIsomorphic, Some(e.to_string())),
                Err(e) => return Err(e.into()),
            };
            write_dot(&common, || export_lattice_dot(&lat, Some(&rq.quotient.partition)))?;
            let report = ReduceReport {
                subset: ctx.attribute_names(&d),
                blocks: partition_blocks(lat.poset(), &rq.quotient.partition),
                quotient: QuotientReport::new(lat.poset(), &rq.quotient),
                reduced: LatticeReport::new(&rq.reduced),
                verdict,
                detail,
            };
            if common.json {
                emit("reduce", &report)?;
            } else {
                println!("D = {}", set(&report.subset));
                print_blocks("reduction classes", &report.blocks);
                println!("reduced lattice: {} concepts", report.reduced.size);
                println!("{}", verdict_line(verdict));
            }
            Ok(verdict == Verdict::Isomorphic)
        }
        Command::Congruence { common, d } => {
            let ctx = read_context(&common.file)?;
            let d = parse_subset(&ctx, &d)?;
            let lat = build_lattice(&ctx);
            let rho = latsurg::reduction::rho_d(&lat, &d)?;
            let delta = least_local_congruence(&lat, &rho)?;
            let local = is_local_congruence(&lat, &delta)?;
            let q = quotient_order_delta(&lat, &delta)?;
            write_dot(&common, || export_lattice_dot(&lat, Some(&delta)))?;
            let report = CongruenceReport {
                subset: ctx.attribute_names(&d),
                rho: partition_blocks(lat.poset(), &rho),
                delta: partition_blocks(lat.poset(), &delta),
                is_local_congruence: local,
                quotient: QuotientReport::new(lat.poset(), &q),
            };
            if common.json {
                emit("congruence", &report)?;
            } else {
                println!("D = {}", set(&report.subset));
                print_blocks("reduction classes", &report.rho);
                print_blocks("least local congruence", &report.delta);
                print_quotient(&report.quotient);
            }
            Ok(local)
        }
        Command::Surgery { common, remove, prefer } => {
            let ctx = read_context(&common.file)?;
            let lat = build_lattice(&ctx);
            let c = lat.index_of_id(&remove)?;
            let prefer = match prefer {
                PreferArg::Objects => latsurg::Prefer::Objects,
                PreferArg::Attributes => latsurg::Prefer::Attributes,
            };
            let plan = remove_concept(&lat, c, prefer)?;
            let after = build_lattice(&plan.result);
            let (verdict, detail) = match verify_removal(&lat, &plan) {
                Ok(_) => (Verdict::Isomorphic, None),
                Err(e) if e.is_verification_failure() => (Verdict::NotIsomorphic, Some(e.to_string())),
                Err(e) => return Err(e.into()),
            };
            write_dot(&common, || export_lattice_dot(&after, None))?;
            let report = SurgeryJson {
                plan: PlanReport::new(&lat, &plan),
                size_before: lat.len(),
                size_after: after.len(),
                verdict,
                detail,
            };
            if common.json {
                emit("surgery", &report)?;
            } else {
                print_plan(&report.plan);
                println!("{} concepts before, {} after", report.size_before, report.size_after);
                print!("{}", serialize_csv(&plan.result));
                println!("{}", verdict_line(verdict));
            }
            Ok(verdict == Verdict::Isomorphic)
        }
        Command::Pipeline { common, d, prefer, order } => {
            let ctx = read_context(&common.file)?;
            let d = parse_subset(&ctx, &d)?;
            let prefer = match prefer {
                PreferArg::Objects => latsurg::Prefer::Objects,
                PreferArg::Attributes => latsurg::Prefer::Attributes,
            };
            let order = match order {
                OrderArg::JoinFirst => latsurg::RemovalOrder::JoinFirst,
                OrderArg::MeetFirst => latsurg::RemovalOrder::MeetFirst,
            };
            let r = congruence_surgery_pipeline(&ctx, &d, prefer, order)?;
            write_dot(&common, || export_lattice_dot(&r.final_lattice, None))?;
            let report = PipelineJson::new(&r);
            if common.json {
                emit("pipeline", &report)?;
            } else {
                println!("D = {}", set(&report.subset));
                print_blocks("least local congruence", &report.delta);
                for s in &report.steps {
                    println!("step: remove {}", s.concept);
                    print_plan(&s.plan);
                }
                if !report.deferred.is_empty() {
                    println!("left in place: {}", report.deferred.join(", "));
                }
                println!("final context:");
                print!("{}", serialize_csv(r.final_context()));
                println!("final objects {}", set(&report.final_context.objects));
                println!("final attributes {}", set(&report.final_context.attributes));
                println!("{} concepts, completion of the class order has {} elements", report.final_size, report.completion_size);
                println!("{}", verdict_line(report.verdict));
            }
            Ok(r.verified())
        }
        Command::Dm { common } => {
            let text =
                fs::read_to_string(&common.file).with_context(|| format!("cannot read {}", common.file.display()))?;
            let poset = if looks_like_poset(&text) {
                parse_poset(&text)
            } else {
                parse_context(&text).map(|ctx| build_lattice(&ctx).poset().clone())
            }
            .with_context(|| format!("in {}", common.file.display()))?;
            let c = dm_completion(&poset);
            write_dot(&common, || export_dot(c.lattice.poset(), None))?;
            let report = CompletionReport::new(&poset, &c);
            if common.json {
                emit("dm", DmJson { completion: report })?;
            } else {
                println!("{} elements, completion has {} elements", report.poset_size, report.size);
                for e in &report.elements {
                    println!("  {} = {}", e.label, set(&e.cut));
                }
                print_covers(c.lattice.poset());
            }
            Ok(true)
        }
        Command::Verify { common, d } => {
            let ctx = read_context(&common.file)?;
            let d = d.map(|d| parse_subset(&ctx, &d)).transpose()?;
            write_dot(&common, || export_lattice_dot(&build_lattice(&ctx), None))?;
            let report = VerifyReport::new(run_checks(&ctx, d.as_ref()));
            let passed = report.passed;
            if common.json {
                emit("verify", &report)?;
            } else {
                for c in &report.checks {
                    match &c.detail {
                        None => println!("PASS {}", c.name),
                        Some(why) => println!("FAIL {}: {why}", c.name),
                    }
                }
                let ok = report.checks.iter().filter(|c| c.passed).count();
                println!("{ok}/{} checks passed", report.checks.len());
            }
            Ok(passed)
        }
    }
}

fn print_plan(p: &PlanReport) {
    let branch = p.branch.map_or("none", |b| b.label());
    println!("target {} ({:?}), branch {branch}", p.target, p.kind);
    if let Some(t) = &p.cone_bound {
        println!("  cone bound {t}");
    }
    if !p.gamma.is_empty() {
        println!("  Γ = {}  Γ′ = {}", set(&p.gamma), set(&p.gamma_prime));
    }
    println!("  removed {}", set(&p.removed));
    for f in &p.fresh {
        println!("  added {} incident to {}", f.name, set(&f.incident));
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(error_code(&e))
        }
    }
}

/// 2 for a broken invariant anywhere in the chain, 1 for everything else.
fn error_code(e: &anyhow::Error) -> u8 {
    let verification = e
        .chain()
        .any(|c| c.downcast_ref::<latsurg::Error>().is_some_and(latsurg::Error::is_verification_failure));
    if verification {
        2
    } else {
        1
    }
}
