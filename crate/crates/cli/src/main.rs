use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use hopfvoa::action::{
    blocks_json, cocommutativity_check, commutant_check, invariants_subalgebra, isotypic_decompose, kernel_analysis,
    separating_vector, sigma_image, verify_module_voa, HopfAction,
};
use hopfvoa::hopf::{
    antipode_order, find_grouplikes, is_cocommutative, tensor_multiplicity, verify_axioms, verify_rep_isos,
    Cocommutativity, HopfAlgebra, Representation,
};
use hopfvoa::report::{Check, Report};
use hopfvoa::schema::{action_from_json, hopf_from_json, read_json, rep_from_json, to_pretty, voa_from_json, voa_to_json};
use hopfvoa::suite::{self, SuiteConfig};
use hopfvoa::voa::{verify_voa_window, TruncatedVoa};
use hopfvoa::zhu::{verify_an_identities, AnContext};
use hopfvoa::{fixtures, Error};

#[derive(Parser)]
#[command(name = "hopfvoa", version, about = "Exact checks for Hopf algebras acting on truncated Heisenberg VOAs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Weight window N (caps the window of action files).
    #[arg(long, global = true)]
    window: Option<usize>,
    /// Weight budget for pairwise checks.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Highest weight of invariants fed to sigma-image.
    #[arg(long, global = true)]
    cutoff: Option<usize>,
    /// Reject inputs whose scalars need more than Q(ζ_m).
    #[arg(long, global = true)]
    conductor: Option<u32>,
    /// Write the document here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Fallback directory for input paths that do not exist as given.
    #[arg(long, global = true)]
    fixtures_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check every Hopf algebra axiom.
    VerifyHopf { hopf: PathBuf },
    /// Find the group-like elements and their multiplication table.
    Grouplikes { hopf: PathBuf },
    /// Order of the antipode.
    AntipodeOrder {
        hopf: PathBuf,
        #[arg(long, default_value_t = 64)]
        cap: usize,
    },
    /// Check the dual, tensor and Hom isomorphisms for two representations.
    RepIsos { hopf: PathBuf, m: PathBuf, n: PathBuf },
    /// Export the mode tables of a Heisenberg VOA window.
    BuildVoa {
        #[arg(long, default_value_t = 1)]
        rank: u32,
    },
    /// Check the VOA axioms on a window (a file, or a Heisenberg VOA by rank).
    VerifyVoa {
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        rank: u32,
    },
    /// Extend an action from V_1 to every weight and print its matrices.
    ExtendAction { action: PathBuf },
    /// Check the module VOA axioms.
    VerifyAction { action: PathBuf },
    /// Invariant subalgebra and its closure checks.
    Invariants { action: PathBuf },
    /// Isotypic decomposition over the given irreducibles.
    Decompose {
        action: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        irreps: Vec<PathBuf>,
    },
    /// Compare invariant endomorphisms of V_n with the intertwiners.
    Commutant {
        action: PathBuf,
        #[arg(long)]
        weight: usize,
        #[arg(long, num_args = 1..)]
        irreps: Vec<PathBuf>,
    },
    /// Span of zero modes of invariants on V_n against End_H(V_n).
    SigmaImage {
        action: PathBuf,
        #[arg(long)]
        weight: usize,
    },
    /// Swap identity for an action, or plain cocommutativity of a Hopf algebra.
    Cocomm {
        file: PathBuf,
        #[arg(long)]
        as_algebra_only: bool,
    },
    /// Kernel of the action, its Hopf ideal checks and the quotient.
    Kernel { action: PathBuf },
    /// A vector separating the matrix units of one irreducible.
    SeparatingVector {
        action: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        irreps: Vec<PathBuf>,
        /// Position of the irreducible in --irreps (1-based).
        #[arg(long)]
        irrep: usize,
        /// Column of the matrix units (1-based).
        #[arg(long, default_value_t = 1)]
        q0: usize,
    },
    /// Multiplicity of M_l in M_i ⊗ M_j.
    TensorMult { hopf: PathBuf, mi: PathBuf, mj: PathBuf, ml: PathBuf },
    /// Zhu product identities at level n.
    AnVerify {
        action: PathBuf,
        #[arg(long, default_value_t = 0)]
        level: usize,
    },
    /// Run the acceptance battery.
    Suite {
        /// Run one criterion only.
        #[arg(long)]
        only: Option<usize>,
    },
    /// Write the shipped fixture files into --fixtures-dir (or --out).
    Fixtures,
}

enum Output {
    Report(Report),
    Document(Value),
}

struct Ctx<'a> {
    cli: &'a Cli,
}

impl Ctx<'_> {
    fn resolve(&self, p: &Path) -> PathBuf {
        match &self.cli.fixtures_dir {
            Some(dir) if !p.exists() && dir.join(p).exists() => dir.join(p),
            _ => p.to_path_buf(),
        }
    }

    fn field_ok(&self, conductor: u32) -> Result<(), Error> {
        match self.cli.conductor {
            Some(m) if m % conductor != 0 => {
                Err(Error::Precondition(format!("input needs Q(ζ_{conductor}), not contained in Q(ζ_{m})")))
            }
            _ => Ok(()),
        }
    }

    fn hopf(&self, p: &Path) -> Result<HopfAlgebra, Error> {
        let h = hopf_from_json(&read_json(&self.resolve(p))?).map_err(|e| locate(p, e))?;
        self.field_ok(h.conductor())?;
        Ok(h)
    }

    fn rep(&self, p: &Path, h: &HopfAlgebra) -> Result<Representation, Error> {
        rep_from_json(&read_json(&self.resolve(p))?, h).map_err(|e| locate(p, e))
    }

    fn reps(&self, ps: &[PathBuf], h: &HopfAlgebra) -> Result<Vec<Representation>, Error> {
        ps.iter().map(|p| self.rep(p, h)).collect()
    }

    fn action(&self, p: &Path) -> Result<HopfAction, Error> {
        let path = self.resolve(p);
        let base = path.parent().unwrap_or(Path::new("."));
        let spec = action_from_json(&read_json(&path)?, base).map_err(|e| locate(p, e))?;
        self.field_ok(spec.hopf.conductor())?;
        spec.build(self.cli.window)
    }

    /// `--budget`, defaulting to 5 clipped to the window.
    fn budget(&self, a: &HopfAction) -> Result<usize, Error> {
        let window = a.voa().window();
        match self.cli.budget {
            Some(b) if b > window => Err(Error::Precondition(format!("budget {b} exceeds window {window}"))),
            Some(b) => Ok(b),
            None => Ok(5.min(window)),
        }
    }
}

fn locate(p: &Path, e: Error) -> Error {
    match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", p.display())),
        other => other,
    }
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let ctx = Ctx { cli };
    let out = match &cli.command {
        Command::VerifyHopf { hopf } => Output::Report(verify_axioms(&ctx.hopf(hopf)?)),
        Command::Grouplikes { hopf } => {
            let h = ctx.hopf(hopf)?;
            let mut r = Report::new();
            r.set("grouplikes", find_grouplikes(&h).to_json(&h));
            Output::Report(r)
        }
        Command::AntipodeOrder { hopf, cap } => {
            let h = ctx.hopf(hopf)?;
            let order = antipode_order(&h, *cap);
            let mut r = Report::new();
            r.push(Check::verdict("antipode has finite order", "hopf.antipode-finite-order", order.is_some(), || {
                json!({ "cap": cap })
            }));
            r.set("order", order);
            Output::Report(r)
        }
        Command::RepIsos { hopf, m, n } => {
            let h = ctx.hopf(hopf)?;
            Output::Report(verify_rep_isos(&h, &ctx.rep(m, &h)?, &ctx.rep(n, &h)?))
        }
        Command::BuildVoa { rank } => {
            let window = cli.window.unwrap_or(8);
            let v = TruncatedVoa::heisenberg(*rank, window)?;
            Output::Document(voa_to_json(&v, cli.budget.unwrap_or(window))?)
        }
        Command::VerifyVoa { file, rank } => {
            let v = match file {
                Some(f) => voa_from_json(&read_json(&ctx.resolve(f))?).map_err(|e| locate(f, e))?,
                None => TruncatedVoa::heisenberg(*rank, cli.window.unwrap_or(8))?,
            };
            let budget = cli.budget.unwrap_or(5).min(v.window()).min(v.pair_budget().unwrap_or(usize::MAX));
            Output::Report(verify_voa_window(&v, budget)?)
        }
        Command::ExtendAction { action } => {
            let a = ctx.action(action)?;
            let mut r = Report::new();
            r.set("window", a.voa().window());
            r.set("dims", a.voa().dims());
            r.set("blocks", blocks_json(&a));
            Output::Report(r)
        }
        Command::VerifyAction { action } => {
            let a = ctx.action(action)?;
            Output::Report(verify_module_voa(&a, ctx.budget(&a)?)?)
        }
        Command::Invariants { action } => {
            let a = ctx.action(action)?;
            let (inv, mut r) = invariants_subalgebra(&a, ctx.budget(&a)?)?;
            let v = a.voa();
            let cutoff = cli.cutoff.unwrap_or(v.window()).min(v.window());
            r.set("dims", inv.dims());
            r.set("basis", inv.upto(cutoff).map(|(n, x)| json!({ "weight": n, "vector": v.render(x) })).collect::<Vec<_>>());
            Output::Report(r)
        }
        Command::Decompose { action, irreps } => {
            let a = ctx.action(action)?;
            let reps = ctx.reps(irreps, a.hopf())?;
            let (dec, mut r) = isotypic_decompose(&a, &reps)?;
            r.set("multiplicities", dec.multiplicity_table());
            Output::Report(r)
        }
        Command::Commutant { action, weight, irreps } => {
            let a = ctx.action(action)?;
            let dec = if irreps.is_empty() {
                None
            } else {
                Some(isotypic_decompose(&a, &ctx.reps(irreps, a.hopf())?)?.0)
            };
            Output::Report(commutant_check(&a, *weight, dec.as_ref())?)
        }
        Command::SigmaImage { action, weight } => {
            let a = ctx.action(action)?;
            let cutoff = cli.cutoff.unwrap_or(6).min(a.voa().window());
            let (inv, mut r) = invariants_subalgebra(&a, ctx.budget(&a)?)?;
            r.extend(sigma_image(&a, &inv, *weight, cutoff)?);
            Output::Report(r)
        }
        Command::Cocomm { file, as_algebra_only } => {
            if *as_algebra_only {
                let h = ctx.hopf(file)?;
                let mut r = Report::new();
                let tag = "hopf.cocommutative-group-algebra";
                match is_cocommutative(&h) {
                    Cocommutativity::Cocommutative => r.push(Check::pass("cocommutative", tag)),
                    Cocommutativity::Witness { index, difference } => r.push(Check::fail(
                        "cocommutative",
                        tag,
                        json!({ "h": h.label(index), "difference": h.render_tensor(&difference) }),
                    )),
                }
                Output::Report(r)
            } else {
                Output::Report(cocommutativity_check(&ctx.action(file)?))
            }
        }
        Command::Kernel { action } => Output::Report(kernel_analysis(&ctx.action(action)?)?.report),
        Command::SeparatingVector { action, irreps, irrep, q0 } => {
            if *irrep == 0 || *q0 == 0 {
                return Err(Error::Invalid("--irrep and --q0 are 1-based".into()));
            }
            let a = ctx.action(action)?;
            let reps = ctx.reps(irreps, a.hopf())?;
            let (dec, _) = isotypic_decompose(&a, &reps)?;
            Output::Report(separating_vector(&a, &reps, &dec, irrep - 1, q0 - 1)?.report)
        }
        Command::TensorMult { hopf, mi, mj, ml } => {
            let h = ctx.hopf(hopf)?;
            let (i, j, l) = (ctx.rep(mi, &h)?, ctx.rep(mj, &h)?, ctx.rep(ml, &h)?);
            let mut r = Report::new();
            r.set("multiplicity", tensor_multiplicity(&h, &i, &j, &l));
            Output::Report(r)
        }
        Command::AnVerify { action, level } => {
            let a = ctx.action(action)?;
            let an = AnContext::new(a.voa(), *level);
            Output::Report(verify_an_identities(&an, &a, ctx.budget(&a)?)?)
        }
        Command::Suite { only } => {
            let cfg = SuiteConfig { window: cli.window.unwrap_or(8), budget: cli.budget.unwrap_or(5) };
            if cfg.budget > cfg.window {
                return Err(Error::Precondition(format!("budget {} exceeds window {}", cfg.budget, cfg.window)));
            }
            let criteria = match only {
                Some(id) => vec![suite::run(*id, &cfg)?],
                None => suite::run_all(&cfg)?,
            };
            for c in &criteria {
                eprintln!("{}", c.line());
            }
            let doc = suite::summary_json(&cfg, &criteria);
            if criteria.iter().all(|c| c.passed()) {
                Output::Document(doc)
            } else {
                let mut r = Report::new();
                for c in criteria.iter().filter(|c| !c.passed()) {
                    r.checks.extend(c.report.failures().cloned());
                }
                r.set("suite", doc);
                Output::Report(r)
            }
        }
        Command::Fixtures => {
            let dir = cli
                .fixtures_dir
                .clone()
                .or_else(|| cli.out.clone())
                .ok_or_else(|| Error::Invalid("pass --fixtures-dir or --out".into()))?;
            fixtures::write_all(&dir)?;
            let names: Vec<String> = fixtures::files().into_iter().map(|(n, _)| n).collect();
            eprintln!("wrote {} files to {}", names.len(), dir.display());
            return Ok(Output::Report(Report::new()));
        }
    };
    Ok(out)
}

fn emit(cli: &Cli, text: &str) -> anyhow::Result<()> {
    match &cli.out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let (text, ok) = match out {
                Output::Report(r) => (r.render(), r.passed()),
                Output::Document(v) => (to_pretty(&v), true),
            };
            if matches!(cli.command, Command::Fixtures) {
                return ExitCode::SUCCESS;
            }
            if let Err(e) = emit(&cli, &text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
