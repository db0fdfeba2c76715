use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mvring::algebra::{pair_index, product_algebra, Elem};
use mvring::catalog;
use mvring::chain_ring::{verify_ring_axioms, ChainRing};
use mvring::classify::{classify, VarietyLabel};
use mvring::coextensive::{self, Probe};
use mvring::ideal::{self, IdealSet};
use mvring::lu_ring::{f_ring_check, lu_ring_laws};
use mvring::ring_side::upsilon_roundtrip;
use mvring::spectrum_ring::{gamma_general_roundtrip, SpectrumRing};
use mvring::{format, Error, FiniteAlgebra, Report};

/// Verification runs for finite MV-algebras with product.
#[derive(Parser)]
#[command(name = "mvring", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// `catalog:<constructor>` or a path to an algebra file
    input: String,
    /// Ring elements are enumerated with |x| <= M·u
    #[arg(long, default_value_t = 8)]
    window: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random words or samples per randomized check
    #[arg(long, default_value_t = 10_000)]
    budget: usize,
    /// Only emit machine-readable lines
    #[arg(long)]
    machine: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Place an algebra in the variety tower
    Classify {
        #[command(flatten)]
        common: Common,
        /// Fail unless the label equals this one
        #[arg(long)]
        expect: Option<String>,
    },
    /// Enumerate ideals and compare ideal notions
    Ideals {
        #[command(flatten)]
        common: Common,
    },
    /// Prime spectra and the subdirect embedding
    Spectrum {
        #[command(flatten)]
        common: Common,
    },
    /// Quotient by the ideal generated by the given elements
    Quotient {
        #[command(flatten)]
        common: Common,
        /// Comma-separated generators
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        by: Vec<Elem>,
        /// Quotient the MV-reduct, dropping the product
        #[arg(long)]
        mv: bool,
    },
    /// Ring laws of the associated ring on the window
    RingTable {
        #[command(flatten)]
        common: Common,
    },
    /// Round trips between the algebra and its ring
    VerifyEquivalence {
        #[command(flatten)]
        common: Common,
    },
    /// Splittings along complemented elements and their pushout squares
    VerifyCoextensive {
        #[command(flatten)]
        common: Common,
        /// Probe algebras given as catalog constructors
        #[arg(long, num_args = 1..)]
        probes: Vec<String>,
    },
    /// The named algebras
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Names, expected labels and notes
    List,
    /// Print an algebra file for a constructor
    Emit { name: String },
}

enum Failure {
    Input(Error),
    Other(Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(e) if e.is_size_error() => 3,
            Failure::Input(_) => 2,
            Failure::Other(e) if e.is_size_error() => 3,
            Failure::Other(_) => 1,
        }
    }

    fn error(&self) -> &Error {
        match self {
            Failure::Input(e) | Failure::Other(e) => e,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Other(e)
    }
}

/// Lines to print and whether every check passed.
struct Run {
    out: String,
    passed: bool,
    checks: usize,
    failed: usize,
}

impl Run {
    fn new() -> Self {
        Self {
            out: String::new(),
            passed: true,
            checks: 0,
            failed: 0,
        }
    }

    fn line(&mut self, text: impl AsRef<str>) {
        self.out.push_str(text.as_ref());
        self.out.push('\n');
    }

    fn report(&mut self, prefix: &str, report: Report) {
        let mut r = Report::new();
        r.merge(prefix, report);
        for c in r.checks() {
            self.line(c.to_string());
            self.checks += 1;
            self.failed += usize::from(!c.passed);
        }
        self.passed &= r.all_passed();
    }
}

fn load(input: &str) -> Result<FiniteAlgebra, Failure> {
    match input.strip_prefix("catalog:") {
        Some(ctor) => catalog::build(ctor).map_err(Failure::Input),
        None => {
            let text = std::fs::read_to_string(Path::new(input))
                .map_err(|e| Failure::Input(Error::InvalidArgument(format!("cannot read {input}: {e}"))))?;
            format::parse(&text).map_err(Failure::Input)
        }
    }
}

fn members(set: &IdealSet) -> String {
    let items: Vec<String> = set.members().iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn classify_cmd(alg: &FiniteAlgebra, expect: Option<&str>, run: &mut Run) -> Result<(), Failure> {
    let c = classify(alg);
    run.line(format!("LABEL {}", c.label));
    for (name, verdict) in [
        ("mv", &c.mv),
        ("product", &c.product),
        ("mvw", &c.mvw),
        ("pmv", &c.pmv),
        ("pmvf", &c.pmvf),
        ("pmv1", &c.pmv1),
    ] {
        match verdict.first() {
            None => run.line(format!("LAWS {name} hold")),
            Some(w) => run.line(format!("LAWS {name} fail {}", w.describe(alg))),
        }
    }
    if let Some(e) = expect {
        let want = VarietyLabel::parse(e)
            .ok_or_else(|| Failure::Input(Error::InvalidArgument(format!("unknown label {e}"))))?;
        let mut r = Report::new();
        r.push("label", c.label == want, format!("expected {want}, got {}", c.label));
        run.report("", r);
    }
    Ok(())
}

fn ideals_cmd(alg: &FiniteAlgebra, common: &Common, run: &mut Run) -> Result<(), Failure> {
    let all = ideal::all_ideals_with_budget(alg, common.budget.max(1))?;
    for i in &all {
        let f = i.flags();
        let mut tags = Vec::new();
        if f.is_absorbent {
            tags.push("absorbent");
        }
        if f.is_prime_mv {
            tags.push("prime");
        }
        if f.is_prime_w {
            tags.push("prime-w");
        }
        run.line(format!("IDEAL {} {}", members(i), tags.join(" ")).trim_end());
    }
    run.line(format!("COUNT ideals {}", all.len()));
    if classify(alg).is_at_least(VarietyLabel::Pmvf) {
        let s = ideal::check_espectros(alg)?;
        run.line(format!("INFO spec-w-equals-spec {}", s.spec_w_equals_spec));
        run.report("", s.report);
    }
    Ok(())
}

fn spectrum_cmd(alg: &FiniteAlgebra, run: &mut Run) -> Result<(), Failure> {
    let spec = ideal::spec(alg)?;
    let spec_w = ideal::spec_w(alg)?;
    for p in &spec {
        run.line(format!("PRIME {}", members(p)));
    }
    for p in &spec_w {
        run.line(format!("PRIME-W {}", members(p)));
    }
    let emb = ideal::subdirect_embedding(alg)?;
    run.line(format!("INFO embedding-carries-products {}", emb.carries_products));
    for a in alg.elements() {
        let image: Vec<String> = emb.image(a).iter().map(|x| x.to_string()).collect();
        run.line(format!("IMAGE {a} ({})", image.join(",")));
    }
    run.report("subdirect", emb.verify(alg));
    Ok(())
}

fn quotient_cmd(alg: &FiniteAlgebra, by: &[Elem], mv: bool, run: &mut Run) -> Result<(), Failure> {
    let i = ideal::generated_ideal(alg, by)?;
    let q = if mv {
        ideal::quotient_mv(alg, &i)?
    } else {
        ideal::quotient(alg, &i)?
    };
    run.line(format!("IDEAL {}", members(&i)));
    let proj: Vec<String> = q.projection.iter().map(|x| x.to_string()).collect();
    run.line(format!("PROJECTION {}", proj.join(" ")));
    run.line(format!("LABEL {}", classify(&q.algebra).label));
    run.out.push_str(&format::write(&q.algebra));
    Ok(())
}

fn ring_cmd(alg: &FiniteAlgebra, common: &Common, run: &mut Run) -> Result<(), Failure> {
    if alg.is_chain() && !alg.is_trivial() {
        let ring = ChainRing::new(alg.clone())?;
        run.line(format!("RING chain window {}", common.window));
        run.report("chain", verify_ring_axioms(&ring, common.window as i64));
        run.report("f-ring", f_ring_check(&ring, common.window, common.budget, common.seed));
    } else {
        let ring = SpectrumRing::new(alg)?;
        run.line(format!("RING spectrum primes {} window {}", ring.primes().len(), common.window));
        run.report("laws", lu_ring_laws(&ring, common.window, common.budget, common.seed));
        run.report("f-ring", f_ring_check(&ring, common.window, common.budget, common.seed));
    }
    Ok(())
}

fn equivalence_cmd(alg: &FiniteAlgebra, common: &Common, run: &mut Run) -> Result<(), Failure> {
    run.report("gamma", gamma_general_roundtrip(alg, common.budget, common.seed)?);
    let ring = SpectrumRing::new(alg)?;
    run.report("upsilon", upsilon_roundtrip(&ring, common.window, common.budget, common.seed)?);
    run.report("f-ring", f_ring_check(&ring, common.window, common.budget, common.seed));
    if alg.is_chain() {
        let chain = ChainRing::new(alg.clone())?;
        run.report("chain", verify_ring_axioms(&chain, common.window as i64));
    }
    Ok(())
}

fn coextensive_cmd(alg: &FiniteAlgebra, probes: &[String], run: &mut Run) -> Result<(), Failure> {
    let probes: Vec<Probe> = if probes.is_empty() {
        coextensive::default_probes()
    } else {
        probes
            .iter()
            .map(|p| catalog::build(p).map(|a| Probe::new(p.clone(), a)).map_err(Failure::Input))
            .collect::<Result<_, _>>()?
    };
    for e in coextensive::boolean_elements(alg) {
        let s = coextensive::split(alg, e)?;
        let prefix = format!("e={e}");
        run.line(format!(
            "SPLIT e={e} left {} right {}",
            s.left.algebra.size(),
            s.right.algebra.size()
        ));
        let iso = s.is_isomorphism();
        run.report(&prefix, s.report.clone());
        if !iso {
            continue;
        }
        // g = θ⁻¹ : C/⟨e⟩ × C/⟨¬e⟩ → C sends (0, 1) to e
        let (a, b) = (&s.left.algebra, &s.right.algebra);
        let mut g = vec![0; product_algebra(a, b).size()];
        for (c, &(l, r)) in s.theta.iter().enumerate() {
            g[pair_index(b, l, r)] = c;
        }
        let report = coextensive::pushout_check(a, b, alg, &g, &probes, coextensive::DEFAULT_BUDGET)?;
        run.report(&prefix, report);
    }
    Ok(())
}

fn catalog_cmd(action: &CatalogAction) -> Result<Run, Failure> {
    let mut run = Run::new();
    match action {
        CatalogAction::List => {
            for e in catalog::entries() {
                run.line(format!("{} {} {}", e.name, e.expected, e.note));
            }
        }
        CatalogAction::Emit { name } => {
            let alg = catalog::build(name).map_err(Failure::Input)?;
            run.out = format::write(&alg);
        }
    }
    Ok(run)
}

fn execute(cli: &Cli) -> Result<Run, Failure> {
    let (common, name) = match &cli.command {
        Command::Catalog { action } => return catalog_cmd(action),
        Command::Classify { common, .. } => (common, "classify"),
        Command::Ideals { common } => (common, "ideals"),
        Command::Spectrum { common } => (common, "spectrum"),
        Command::Quotient { common, .. } => (common, "quotient"),
        Command::RingTable { common } => (common, "ring-table"),
        Command::VerifyEquivalence { common } => (common, "verify-equivalence"),
        Command::VerifyCoextensive { common, .. } => (common, "verify-coextensive"),
    };
    let alg = load(&common.input)?;
    let mut run = Run::new();
    match &cli.command {
        Command::Classify { expect, .. } => classify_cmd(&alg, expect.as_deref(), &mut run)?,
        Command::Ideals { .. } => ideals_cmd(&alg, common, &mut run)?,
        Command::Spectrum { .. } => spectrum_cmd(&alg, &mut run)?,
        Command::Quotient { by, mv, .. } => quotient_cmd(&alg, by, *mv, &mut run)?,
        Command::RingTable { .. } => ring_cmd(&alg, common, &mut run)?,
        Command::VerifyEquivalence { .. } => equivalence_cmd(&alg, common, &mut run)?,
        Command::VerifyCoextensive { probes, .. } => coextensive_cmd(&alg, probes, &mut run)?,
        Command::Catalog { .. } => unreachable!("handled above"),
    }
    if !common.machine {
        let (checks, failed) = (run.checks, run.failed);
        let mut human = String::new();
        writeln!(human, "# {name} {} ({} elements)", common.input, alg.size()).unwrap();
        human.push_str(&run.out);
        if checks > 0 {
            writeln!(human, "# {checks} checks, {failed} failed").unwrap();
        }
        run.out = human;
    }
    Ok(run)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(run) => {
            print!("{}", run.out);
            if run.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.error());
            ExitCode::from(f.code())
        }
    }
}
