use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use trispec_core::json::{self, Document};
use trispec_core::oracle::{all_posets, grid_downsets_transfer, naive_poset_count};
use trispec_core::scheme_models::{
    dsg_model, locus_prime_predicates, perf_immersion, sg_immersion,
};
use trispec_core::spectrum::{spectrum, verify_cls, verify_point_closures};
use trispec_core::suite::{self, run_parallel, summarize, Subject, Suite};
use trispec_core::tensor::tensor_lattice;
use trispec_core::{catalog, dot, Error, Report, SpecSpace, Status, ThickLattice};

#[derive(Parser)]
#[command(
    name = "trispec",
    version,
    about = "Spectra of finite lattices of thick subcategories"
)]
struct Cli {
    /// Worker threads for suite runs (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Reserved; every computation is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Primes, witnesses and closed sets of a space, lattice or model.
    Spectrum {
        input: PathBuf,
        /// Write the Hasse diagram of the spectrum as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Also list every specialization-closed subset.
        #[arg(long)]
        enumerate: bool,
        /// Write the spectrum report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run verification suites on one input or on every small poset.
    Verify(VerifyArgs),
    /// The lattice above an element, as lattice JSON.
    Quotient {
        input: PathBuf,
        element: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Adjoin incomparable atoms to a lattice, as lattice JSON.
    Augment {
        input: PathBuf,
        #[arg(required = true)]
        labels: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Prime ideals and the Balmer spectrum of a space or model.
    Balmer {
        input: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Loci, primality predicates and immersions of a scheme model.
    Model { input: PathBuf },
    /// Oracle self-checks: poset counts and down-set counting.
    Selftest,
    /// DOT of a space or lattice, or of its spectrum.
    ExportDot {
        input: PathBuf,
        #[arg(long)]
        spectrum: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write every bundled space, lattice and model as JSON into a directory.
    Catalog { out: PathBuf },
}

#[derive(Args)]
struct VerifyArgs {
    input: Option<PathBuf>,
    /// Verify every labeled poset on this many points (at most 5).
    #[arg(long, conflicts_with = "input")]
    all_posets: Option<usize>,
    #[arg(long)]
    prime_subsets: bool,
    #[arg(long)]
    rcst: bool,
    #[arg(long)]
    cls: bool,
    #[arg(long)]
    quot: bool,
    #[arg(long)]
    tensor: bool,
    #[arg(long)]
    prid: bool,
    #[arg(long)]
    twoprm: bool,
    #[arg(long)]
    openness: bool,
    #[arg(long)]
    sg: bool,
    #[arg(long)]
    oracle: bool,
    /// Print every individual check.
    #[arg(short, long)]
    verbose: bool,
}

impl VerifyArgs {
    fn suites(&self) -> Vec<Suite> {
        let flags = [
            (self.prime_subsets, Suite::PrimeSubsets),
            (self.rcst, Suite::Rcst),
            (self.cls, Suite::Cls),
            (self.quot, Suite::Quot),
            (self.tensor, Suite::Tensor),
            (self.prid, Suite::Prid),
            (self.twoprm, Suite::Twoprm),
            (self.openness, Suite::Openness),
            (self.sg, Suite::Sg),
            (self.oracle, Suite::Oracle),
        ];
        let chosen: Vec<Suite> = flags
            .iter()
            .filter(|(on, _)| *on)
            .map(|&(_, s)| s)
            .collect();
        if chosen.is_empty() {
            Suite::ALL.to_vec()
        } else {
            chosen
        }
    }
}

/// Failure modes mapped to exit codes.
enum Failure {
    Input(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_cap() {
            Failure::Cap(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

const MAX_VERIFY_POSET_POINTS: usize = 5;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let _ = cli.seed;
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Spectrum {
            input,
            dot,
            enumerate,
            json,
        } => cmd_spectrum(input, dot.as_deref(), *enumerate, json.as_deref()),
        Command::Verify(args) => cmd_verify(args, cli.jobs),
        Command::Quotient {
            input,
            element,
            output,
        } => cmd_quotient(input, element, output.as_deref()),
        Command::Augment {
            input,
            labels,
            output,
        } => cmd_augment(input, labels, output.as_deref()),
        Command::Balmer { input, json } => cmd_balmer(input, json.as_deref()),
        Command::Model { input } => cmd_model(input),
        Command::Selftest => cmd_selftest(),
        Command::ExportDot {
            input,
            spectrum,
            output,
        } => cmd_export_dot(input, *spectrum, output.as_deref()),
        Command::Catalog { out } => cmd_catalog(out),
    }
}

fn load(path: &Path) -> Result<Document, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(json::parse_document(&text)?)
}

fn doc_name(doc: &Document, path: &Path) -> String {
    doc.name()
        .map(str::to_string)
        .or_else(|| path.file_stem().map(|s| s.to_string_lossy().into_owned()))
        .unwrap_or_else(|| "input".into())
}

/// The space underlying a space or model document.
fn space_of(doc: &Document) -> Option<&SpecSpace> {
    match doc {
        Document::Space(s) => Some(s),
        Document::Model(m) => Some(m.space()),
        Document::Lattice { .. } => None,
    }
}

fn lattice_of(doc: &Document) -> Result<ThickLattice, Failure> {
    match doc {
        Document::Lattice { lattice, .. } => Ok(lattice.clone()),
        _ => Ok(ThickLattice::from_support_data(
            space_of(doc).expect("space"),
        )?),
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn list(items: impl IntoIterator<Item = String>) -> String {
    items.into_iter().collect::<Vec<_>>().join(", ")
}

fn cmd_spectrum(
    input: &Path,
    dot_out: Option<&Path>,
    enumerate: bool,
    json_out: Option<&Path>,
) -> Outcome {
    let doc = load(input)?;
    let name = doc_name(&doc, input);
    if enumerate {
        if let Some(space) = space_of(&doc) {
            let family = space.enumerate_spcl()?;
            println!("{} specialization-closed subsets:", family.len());
            for &s in &family.members {
                println!("  {}", space.set_label(s));
            }
        }
    }
    let lat = lattice_of(&doc)?;
    let spec = spectrum(&lat)?;
    println!(
        "{} primes: {}",
        spec.len(),
        list(spec.labels().iter().cloned())
    );
    for (p, w) in spec.labels().iter().zip(spec.witness()) {
        match w {
            Some(w) => println!("  {p} ⋖ {}", lat.id(*w)),
            None => println!("  {p} (no unique cover)"),
        }
    }
    println!("{} closed sets", spec.closed_sets().len());
    let mut report = verify_point_closures(&spec);
    report.subject = name.clone();
    report.extend(verify_cls(&lat)?);
    for c in &report.checks {
        if c.status != Status::Pass {
            println!("{} {} [{name}]: {}", c.status, c.name, c.detail);
        }
    }
    if let Some(p) = dot_out {
        fs::write(p, dot::spectrum_dot(&spec, &name))?;
    }
    if let Some(p) = json_out {
        fs::write(p, json::spectrum_to_json(&name, &spec, &lat, &report))?;
    }
    Ok(report.passed())
}

fn print_suite(suite: Suite, subject: &str, report: &Report, verbose: bool) {
    let c = summarize(suite.name(), report);
    let detail = if c.status == Status::Pass {
        let parts: Vec<&str> = report
            .checks
            .iter()
            .map(|c| c.detail.as_str())
            .filter(|d| !d.is_empty())
            .collect();
        if parts.is_empty() || parts.len() > 3 {
            c.detail
        } else {
            parts.join("; ")
        }
    } else {
        c.detail
    };
    println!("{} {} [{subject}]: {detail}", c.status, c.name);
    if verbose {
        for line in report.to_string().lines() {
            println!("  {line}");
        }
    }
}

fn cmd_verify(args: &VerifyArgs, jobs: usize) -> Outcome {
    let suites = args.suites();
    if let Some(n) = args.all_posets {
        if n > MAX_VERIFY_POSET_POINTS {
            return Err(Failure::Input(format!(
                "--all-posets takes at most {MAX_VERIFY_POSET_POINTS} points, got {n}"
            )));
        }
        let posets = all_posets(n, false)?;
        let subjects: Vec<Subject> = posets.into_iter().map(Subject::Space).collect();
        let results = run_parallel(&subjects, jobs, |s| suite::verify(s, &suites));
        let mut ok = true;
        for (k, &s) in suites.iter().enumerate() {
            let mut failed = Vec::new();
            let mut warned = 0;
            for (subject, res) in subjects.iter().zip(&results) {
                let report = match res {
                    Ok(reports) => &reports[k].1,
                    Err(e) => return Err(e.clone().into()),
                };
                match summarize(s.name(), report).status {
                    Status::Fail => failed.push((subject.name().to_string(), report)),
                    Status::Warn => warned += 1,
                    Status::Pass => {}
                }
            }
            if failed.is_empty() && warned == 0 {
                println!(
                    "PASS {s}: all {} labeled posets on {n} points",
                    subjects.len()
                );
            } else if failed.is_empty() {
                println!(
                    "WARN {s}: {warned} of {} labeled posets not applicable",
                    subjects.len()
                );
            } else {
                ok = false;
                println!(
                    "FAIL {s}: {} of {} labeled posets",
                    failed.len(),
                    subjects.len()
                );
                for (name, report) in failed {
                    print_suite(s, &name, report, args.verbose);
                }
            }
        }
        return Ok(ok);
    }
    let Some(input) = &args.input else {
        return Err(Failure::Input("give an input file or --all-posets".into()));
    };
    let doc = load(input)?;
    let name = doc_name(&doc, input);
    let subject = match doc {
        Document::Space(s) => Subject::Space(s.with_name(name.clone())),
        Document::Lattice { lattice, .. } => Subject::Lattice(name.clone(), lattice),
        Document::Model(m) => Subject::Model(m),
    };
    let reports = suite::verify(&subject, &suites)?;
    let mut ok = true;
    for (s, r) in &reports {
        ok &= r.passed();
        print_suite(*s, &name, r, args.verbose);
    }
    Ok(ok)
}

fn cmd_quotient(input: &Path, element: &str, output: Option<&Path>) -> Outcome {
    let doc = load(input)?;
    let name = doc_name(&doc, input);
    let lat = lattice_of(&doc)?;
    let (q, _) = lat.quotient(element)?;
    emit(
        output,
        &json::lattice_to_json(&q, Some(&format!("{name}/{element}"))),
    )?;
    Ok(true)
}

fn cmd_augment(input: &Path, labels: &[String], output: Option<&Path>) -> Outcome {
    let doc = load(input)?;
    let name = doc_name(&doc, input);
    let lat = lattice_of(&doc)?;
    let aug = ThickLattice::augment(&lat, labels)?;
    emit(
        output,
        &json::lattice_to_json(&aug, Some(&format!("{name}+{}", labels.join("+")))),
    )?;
    Ok(true)
}

fn cmd_balmer(input: &Path, json_out: Option<&Path>) -> Outcome {
    let doc = load(input)?;
    let name = doc_name(&doc, input);
    let space = space_of(&doc).ok_or_else(|| Failure::Input(Error::NotClassified.to_string()))?;
    let tl = tensor_lattice(space)?;
    let lat = tl.base();
    let ideals = tl.prime_ideals();
    println!(
        "{} prime ideals: {}",
        ideals.len(),
        list(ideals.iter().map(|&p| lat.id(p).to_string()))
    );
    let spec = tl.balmer_spectrum()?;
    println!("{} closed sets", spec.closed_sets().len());
    let mut report = tl.verify_all()?;
    report.subject = name.clone();
    for c in report.failures() {
        println!("FAIL {} [{name}]: {}", c.name, c.detail);
    }
    if let Some(p) = json_out {
        fs::write(p, json::spectrum_to_json(&name, &spec, lat, &report))?;
    }
    Ok(report.passed())
}

fn cmd_model(input: &Path) -> Outcome {
    let doc = load(input)?;
    let Document::Model(m) = doc else {
        return Err(Failure::Input(format!(
            "{} is not a model document",
            input.display()
        )));
    };
    let sp = m.space();
    println!("model {}", m.name());
    println!(
        "  gorenstein: {}, separated: {}",
        m.gorenstein(),
        m.separated()
    );
    println!("  Sing = {}", sp.set_label(m.sing_locus()));
    println!("  CI   = {}", sp.set_label(m.ci_locus()));
    println!("  HS   = {}", sp.set_label(m.hs_locus()));
    for (i, t) in m.tags().iter().enumerate() {
        let p = locus_prime_predicates(&m, sp.label(i))?;
        println!(
            "  {}: {t}; S^b prime: {}; S^sg: {}",
            sp.label(i),
            p.sb_prime,
            p.sg_prime
        );
    }
    let perf = perf_immersion(&m)?;
    print!("{}", perf.report("perf"));
    match sg_immersion(&m) {
        Ok(sg) => {
            println!("  D^sg lattice: {} elements", dsg_model(&m)?.len());
            print!("{}", sg.report("sg"));
        }
        Err(Error::ClassificationUnavailable(why)) => {
            println!("WARN sg [{}]: classification unavailable: {why}", m.name());
        }
        Err(e) => return Err(e.into()),
    }
    let report = suite::model(&m)?;
    for c in &report.checks {
        if c.status == Status::Warn && c.name.contains("open") {
            println!("WARN {} [{}]: {}", c.name, m.name(), c.detail);
        }
    }
    for c in report.failures() {
        println!("FAIL {} [{}]: {}", c.name, m.name(), c.detail);
    }
    Ok(report.passed())
}

fn cmd_selftest() -> Outcome {
    let mut r = Report::new("selftest");
    for n in 0..=5 {
        let labeled = all_posets(n, false)?.len();
        let unlabeled = all_posets(n, true)?.len();
        let detail = format!("{labeled} labeled, {unlabeled} unlabeled");
        if n <= 4 {
            let naive = naive_poset_count(n)?;
            r.check(
                format!("posets on {n} points"),
                labeled == naive,
                format!("{detail}, naive filter {naive}"),
            );
        } else {
            r.check(
                format!("posets on {n} points"),
                labeled > 0 && unlabeled > 0,
                detail,
            );
        }
    }
    for (rows, cols) in [(2, 3), (3, 3), (4, 5)] {
        let fast = SpecSpace::grid(rows, cols).count_spcl();
        let transfer = grid_downsets_transfer(rows, cols);
        r.check(
            format!("down-sets of the {rows}x{cols} grid"),
            fast == transfer,
            format!("{fast} = {transfer}"),
        );
    }
    for space in catalog::spaces() {
        let name = space.name().unwrap_or("space").to_string();
        let lat = ThickLattice::from_support_data(&space)?;
        let rep = suite::oracle(&name, &lat)?;
        r.checks
            .push(summarize(&format!("oracle primes on {name}"), &rep));
    }
    print!("{r}");
    Ok(r.passed())
}

fn cmd_export_dot(input: &Path, spectrum_only: bool, output: Option<&Path>) -> Outcome {
    let doc = load(input)?;
    let name = doc_name(&doc, input);
    let text = if spectrum_only {
        let lat = lattice_of(&doc)?;
        dot::spectrum_dot(&spectrum(&lat)?, &name)
    } else {
        match &doc {
            Document::Lattice { lattice, .. } => dot::lattice_dot(lattice, &name),
            _ => dot::space_dot(space_of(&doc).expect("space")),
        }
    };
    emit(output, &text)?;
    Ok(true)
}

fn cmd_catalog(out: &Path) -> Outcome {
    fs::create_dir_all(out)?;
    let mut count = 0;
    for space in catalog::spaces() {
        let name = space.name().unwrap_or("space").to_string();
        fs::write(
            out.join(format!("space-{name}.json")),
            json::space_to_json(&space),
        )?;
        count += 1;
    }
    for (name, lat) in catalog::explicit_lattices() {
        fs::write(
            out.join(format!("lattice-{name}.json")),
            json::lattice_to_json(&lat, Some(name)),
        )?;
        count += 1;
    }
    for (name, _, lat) in catalog::augmented_family()? {
        fs::write(
            out.join(format!("lattice-{name}.json")),
            json::lattice_to_json(&lat, Some(&name)),
        )?;
        count += 1;
    }
    for m in catalog::models() {
        fs::write(
            out.join(format!("model-{}.json", m.name())),
            json::model_to_json(&m),
        )?;
        count += 1;
    }
    println!("wrote {count} files to {}", out.display());
    Ok(true)
}
