//! Argument parsing and the individual commands.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use thiserror::Error;

use quantalg::algebra::{search_countermodel, SearchBudget};
use quantalg::constructions::{
    canonical_model, direct_product, generated_subalgebra, r_of_k, CanonicalOptions,
};
use quantalg::dsl::{print_algebra, print_structure, Workspace};
use quantalg::logic::LogicError;
use quantalg::qfo::QfoError;
use quantalg::term::TermError;
use quantalg::{
    build_universe, check_proof, check_qfo_axioms, eval_horn, least_derivable_distance,
    reduced_product, to_algebra, to_qfo, Algebra, AlgebraError, Conditional, Distance, FilterSpec,
    Hom, Homomorphism, Name, Term, UniverseBudget,
};

use crate::generators::DEFAULT_SEED;
use crate::report::{digest, Report};
use crate::suites;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

fn input(e: impl ToString) -> CliError {
    CliError::Input(e.to_string())
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Budget { .. }
            | AlgebraError::AssignmentCap { .. }
            | AlgebraError::Term(TermError::CapExceeded { .. }) => CliError::Budget(e.to_string()),
            other => input(other),
        }
    }
}

impl From<LogicError> for CliError {
    fn from(e: LogicError) -> Self {
        match e {
            LogicError::UniverseCap { .. }
            | LogicError::InstanceCap { .. }
            | LogicError::StepGuard(_)
            | LogicError::Term(TermError::CapExceeded { .. }) => CliError::Budget(e.to_string()),
            other => input(other),
        }
    }
}

impl From<QfoError> for CliError {
    fn from(e: QfoError) -> Self {
        match e {
            QfoError::Algebra(a) => a.into(),
            other => input(other),
        }
    }
}

/// Quantitative equational logic workbench.
///
/// Every command prints a report and exits with 0 when all checks pass,
/// 1 when a check fails (the report carries a witness), 2 on an input or
/// validation error and 3 when a budget is exceeded. Results of
/// constructions are named with `-> NAME`.
#[derive(Debug, Parser)]
#[command(name = "quantalg", version)]
pub struct Cli {
    /// Workspace file; `-` reads standard input.
    #[arg(short = 'w', long, global = true, value_name = "FILE")]
    pub workspace: Option<PathBuf>,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Add wall-clock time to the report. Reports stop being reproducible.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Append constructed objects to the workspace file.
    #[arg(long, global = true)]
    pub save: bool,
    /// Term depth for universes and canonical models.
    #[arg(long, global = true, env = "QUANTALG_DEPTH", default_value_t = 2)]
    pub depth: usize,
    /// Largest carrier tried by countermodel search.
    #[arg(long, global = true, env = "QUANTALG_MAX_CARRIER", default_value_t = 3)]
    pub max_carrier: usize,
    /// Most terms a universe or enumeration may hold.
    #[arg(long, global = true, env = "QUANTALG_TERM_CAP", default_value_t = 2000)]
    pub term_cap: usize,
    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Metric axioms and non-expansiveness of an algebra.
    CheckAlgebra { algebra: String },
    /// Whether an algebra satisfies every equation of a theory.
    CheckSat { algebra: String, theory: String },
    /// Least derivable bound for a goal `[hyps] |- s =[e] t` under a theory.
    Derive {
        theory: String,
        goal: String,
        /// Print a checked proof when the goal is derivable.
        #[arg(long)]
        proof: bool,
    },
    /// Search small algebras for a model of the hypotheses violating the goal.
    Countermodel {
        goal: String,
        #[arg(long = "into", value_name = "NAME")]
        into: Option<String>,
    },
    /// Direct product of algebras.
    Product {
        algebras: Vec<String>,
        #[arg(long = "into", value_name = "NAME")]
        into: Option<String>,
    },
    /// Subalgebra generated by a set of elements, written `{a b}`.
    Subalgebra {
        algebra: String,
        generators: Vec<String>,
        #[arg(long = "into", value_name = "NAME")]
        into: Option<String>,
    },
    /// Canonical model of a finite class over `--vars n` variables.
    CanonicalModel {
        #[arg(required = true)]
        algebras: Vec<String>,
        #[arg(long)]
        vars: usize,
        /// Merge components inducing the same pseudometric.
        #[arg(long)]
        dedup: bool,
        #[arg(long = "into", value_name = "NAME")]
        into: Option<String>,
    },
    /// Whether a map `a=x b=y ...` is a homomorphism.
    CheckHom {
        source: String,
        target: String,
        map: Vec<String>,
    },
    /// Whether a homomorphism is c-reflexive.
    CheckReflexive {
        source: String,
        target: String,
        map: Vec<String>,
        #[arg(long)]
        c: usize,
    },
    /// Threshold structure of an algebra.
    ToQfo {
        algebra: String,
        #[arg(long = "into", value_name = "NAME")]
        into: Option<String>,
    },
    /// Algebra of a threshold structure satisfying all six axioms.
    ToAlgebra {
        structure: String,
        #[arg(long = "into", value_name = "NAME")]
        into: Option<String>,
    },
    /// Reduced product over the principal filter generated by `--filter {i j}`.
    ReducedProduct {
        #[arg(required = true)]
        structures: Vec<String>,
        #[arg(long, num_args = 1.., required = true)]
        filter: Vec<String>,
        #[arg(long = "into", value_name = "NAME")]
        into: Option<String>,
    },
    /// Evaluate a Horn formula on a threshold structure.
    EvalHorn { structure: String, formula: String },
    /// Check a proof object against a theory.
    CheckProof { theory: String, proof: String },
    /// Run a named property suite, or `all`.
    Suite { name: String },
    /// Print the workspace in canonical form.
    Fmt,
}

/// What a command run produced: the exit code and the two output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// `->` is accepted between arguments and rewritten to `--into`.
pub fn normalize_args<I: IntoIterator<Item = String>>(args: I) -> Vec<String> {
    args.into_iter()
        .map(|a| if a == "->" { "--into".to_string() } else { a })
        .collect()
}

pub fn main_with<I: IntoIterator<Item = String>>(args: I) -> Outcome {
    let cli = match Cli::try_parse_from(normalize_args(args)) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => Outcome {
            code: if report.passed() { 0 } else { 1 },
            stdout: if cli.json {
                report.to_json()
            } else {
                report.to_text()
            },
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn read_workspace(cli: &Cli) -> Result<(String, Workspace), CliError> {
    let Some(path) = &cli.workspace else {
        return Err(input("this command needs a workspace file (-w FILE)"));
    };
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(input)?
    } else {
        std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?
    };
    let ws = Workspace::parse(&text).map_err(|e| input(format!("{}:{e}", path.display())))?;
    Ok((text, ws))
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Suite { name } => suites::run(name, cli.seed).ok_or_else(|| {
            input(format!(
                "unknown suite `{name}`; available: {}, all",
                suites::names().join(", ")
            ))
        })?,
        command => {
            let (text, ws) = read_workspace(cli)?;
            let env = Env {
                cli,
                ws: &ws,
                text: &text,
            };
            let mut r = env.run(command)?;
            if cli.save {
                if let (Some(out), Some(path)) = (&r.output, &cli.workspace) {
                    if path.as_os_str() != "-" {
                        let mut updated = text.clone();
                        if !updated.ends_with('\n') {
                            updated.push('\n');
                        }
                        updated.push_str(out);
                        std::fs::write(path, updated).map_err(input)?;
                        r.result("saved_to", path.display());
                    }
                }
            }
            r
        }
    };
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

struct Env<'a> {
    cli: &'a Cli,
    ws: &'a Workspace,
    text: &'a str,
}

fn lookup<'a, T>(kind: &str, found: Option<&'a T>, name: &str) -> Result<&'a T, CliError> {
    found.ok_or_else(|| input(format!("no {kind} named `{name}`")))
}

/// Element names from arguments such as `{a b}`, `{a,b}` or `a b`.
fn braced_list(parts: &[String]) -> Vec<String> {
    parts
        .join(" ")
        .replace(['{', '}', ','], " ")
        .split_whitespace()
        .map(str::to_string)
        .collect()
}

fn map_pairs(parts: &[String]) -> Result<Vec<(Name, Name)>, CliError> {
    parts
        .iter()
        .map(|p| {
            p.split_once('=')
                .map(|(a, b)| (Name::from(a.trim()), Name::from(b.trim())))
                .ok_or_else(|| input(format!("map entry `{p}` is not of the form a=b")))
        })
        .collect()
}

impl Env<'_> {
    fn report(&self, command: &Command) -> Report {
        let line = describe(command);
        let mut r = Report::new(
            line.clone(),
            digest(&[self.text.as_bytes(), line.as_bytes()]),
        );
        r.budget("depth", self.cli.depth)
            .budget("max_carrier", self.cli.max_carrier)
            .budget("term_cap", self.cli.term_cap);
        r
    }

    fn algebra(&self, name: &str) -> Result<&Algebra, CliError> {
        lookup("algebra", self.ws.algebras.get(name), name)
    }

    fn theory(&self, name: &str) -> Result<&[Conditional], CliError> {
        lookup("theory", self.ws.theories.get(name), name).map(Vec::as_slice)
    }

    fn hom(&self, source: &str, target: &str, map: &[String]) -> Result<Hom, CliError> {
        let (a, b) = (self.algebra(source)?.clone(), self.algebra(target)?.clone());
        Ok(Homomorphism::from_names(a, b, &map_pairs(map)?)?)
    }

    fn run(&self, command: &Command) -> Result<Report, CliError> {
        let mut r = self.report(command);
        match command {
            Command::CheckAlgebra { algebra } => {
                let a = self.algebra(algebra)?;
                let violations = a.validate();
                r.result("carrier", a.size());
                r.check(
                    "valid",
                    violations.is_empty(),
                    format!("{} violations", violations.len()),
                );
                for v in violations {
                    r.witness(v.to_string());
                }
            }
            Command::CheckSat { algebra, theory } => {
                let a = self.algebra(algebra)?;
                let axioms = self.theory(theory)?;
                let violations = a.validate();
                r.check(
                    "algebra-valid",
                    violations.is_empty(),
                    format!("{} violations", violations.len()),
                );
                for (k, ce) in axioms.iter().enumerate() {
                    match a.find_violation(ce)? {
                        None => r.check(format!("axiom.{}", k + 1), true, ce.to_string()),
                        Some(cx) => {
                            r.witness(format!("axiom {}: {cx}", k + 1));
                            r.check(format!("axiom.{}", k + 1), false, ce.to_string())
                        }
                    };
                }
            }
            Command::Derive {
                theory,
                goal,
                proof,
            } => self.derive(&mut r, theory, goal, *proof)?,
            Command::Countermodel { goal, into } => {
                let ce = self.ws.parse_conditional(goal).map_err(input)?;
                let budget = SearchBudget {
                    max_carrier: self.cli.max_carrier,
                    ..SearchBudget::default()
                };
                match search_countermodel(&ce.hypotheses, &ce.conclusion, budget)? {
                    None => {
                        r.check(
                            "no-countermodel",
                            true,
                            format!("grid exhausted up to carrier {}", self.cli.max_carrier),
                        );
                    }
                    Some(m) => {
                        let assignment: Vec<String> = m
                            .assignment_names()
                            .iter()
                            .map(|(v, e)| format!("{v} := {e}"))
                            .collect();
                        r.result("carrier", m.algebra.size())
                            .result("distance", m.distance);
                        r.witness(format!(
                            "{}; d = {} > {}",
                            assignment.join(", "),
                            m.distance,
                            ce.conclusion.bound
                        ));
                        r.check("no-countermodel", false, "a model violates the goal");
                        r.output = Some(print_algebra(
                            into.as_deref().unwrap_or("Countermodel"),
                            &m.algebra,
                        ));
                    }
                }
            }
            Command::Product { algebras, into } => {
                let factors = algebras
                    .iter()
                    .map(|n| self.algebra(n))
                    .collect::<Result<Vec<_>, _>>()?;
                let p = direct_product(&self.ws.signature, &factors)?;
                r.result("carrier", p.size());
                r.output = Some(print_algebra(into.as_deref().unwrap_or("Product"), &p));
            }
            Command::Subalgebra {
                algebra,
                generators,
                into,
            } => {
                let a = self.algebra(algebra)?;
                let seed = braced_list(generators)
                    .iter()
                    .map(|e| {
                        a.index_of(e)
                            .ok_or_else(|| input(format!("`{algebra}` has no element `{e}`")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let e = generated_subalgebra(a, &seed)?;
                r.result("carrier", e.sub.size());
                r.output = Some(print_algebra(into.as_deref().unwrap_or("Sub"), &e.sub));
            }
            Command::CanonicalModel {
                algebras,
                vars,
                dedup,
                into,
            } => self.canonical(&mut r, algebras, *vars, *dedup, into.as_deref())?,
            Command::CheckHom {
                source,
                target,
                map,
            } => {
                let h = self.hom(source, target, map)?;
                let violation = h.violation();
                r.result("surjective", h.is_surjective());
                if let Some(v) = &violation {
                    r.witness(v.to_string());
                }
                r.check("homomorphism", violation.is_none(), "");
            }
            Command::CheckReflexive {
                source,
                target,
                map,
                c,
            } => {
                if *c == 0 {
                    return Err(input("c must be a positive integer"));
                }
                let h = self.hom(source, target, map)?;
                let violation = h.violation();
                if let Some(v) = &violation {
                    r.witness(v.to_string());
                }
                r.check("homomorphism", violation.is_none(), "");
                let witness = h.reflexivity_witness(*c);
                if let Some(set) = &witness {
                    let shown: Vec<&str> = set.iter().map(|&i| &**h.target().element(i)).collect();
                    r.witness(format!("no isometric preimage for {{{}}}", shown.join(" ")));
                }
                r.result("c", c);
                r.check(
                    "c-reflexive",
                    witness.is_none(),
                    "image subsets smaller than c pull back isometrically",
                );
            }
            Command::ToQfo { algebra, into } => {
                let m = to_qfo(self.algebra(algebra)?);
                r.result("carrier", m.size());
                r.output = Some(print_structure(into.as_deref().unwrap_or("Structure"), &m));
            }
            Command::ToAlgebra { structure, into } => {
                let m = lookup(
                    "structure",
                    self.ws.structures.get(structure.as_str()),
                    structure,
                )?;
                for c in check_qfo_axioms(m) {
                    if let Some(w) = &c.witness {
                        r.witness(format!("axiom ({}): {w}", c.axiom));
                    }
                    r.check(format!("axiom.{}", c.axiom), c.passed(), "");
                }
                if r.passed() {
                    let a = to_algebra(m)?;
                    r.output = Some(print_algebra(into.as_deref().unwrap_or("Algebra"), &a));
                }
            }
            Command::ReducedProduct {
                structures,
                filter,
                into,
            } => {
                let ms = structures
                    .iter()
                    .map(|n| lookup("structure", self.ws.structures.get(n.as_str()), n))
                    .collect::<Result<Vec<_>, _>>()?;
                let generator = braced_list(filter)
                    .iter()
                    .map(|s| {
                        s.parse::<usize>()
                            .map_err(|_| input(format!("filter index `{s}` is not a number")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let spec = FilterSpec::new(ms.len(), &generator)?;
                let rp = reduced_product(&ms, &spec)?;
                r.result("carrier", rp.size());
                for c in check_qfo_axioms(&rp) {
                    r.check(
                        format!("axiom.{}", c.axiom),
                        c.passed(),
                        c.witness.unwrap_or_default(),
                    );
                }
                r.output = Some(print_structure(into.as_deref().unwrap_or("Reduced"), &rp));
            }
            Command::EvalHorn { structure, formula } => {
                let m = lookup(
                    "structure",
                    self.ws.structures.get(structure.as_str()),
                    structure,
                )?;
                let phi = lookup("formula", self.ws.formulas.get(formula.as_str()), formula)?;
                let found = eval_horn(m, phi)?;
                if let Some(w) = &found {
                    let shown: Vec<String> = w.iter().map(|(v, e)| format!("{v} := {e}")).collect();
                    r.witness(shown.join(", "));
                }
                r.check("formula-holds", found.is_none(), phi.to_string());
            }
            Command::CheckProof { theory, proof } => {
                let axioms = self.theory(theory)?;
                let p = lookup("proof", self.ws.proofs.get(proof.as_str()), proof)?;
                if let Some(c) = p.conclusion() {
                    r.result("conclusion", c);
                }
                r.result("steps", p.steps.len());
                let outcome = check_proof(p, axioms);
                if let Err(e) = &outcome {
                    r.witness(e.to_string());
                }
                r.check("proof-valid", outcome.is_ok() && !p.steps.is_empty(), "");
            }
            Command::Fmt => {
                r.output = Some(self.ws.to_string());
            }
            Command::Suite { .. } => unreachable!("suites need no workspace"),
        }
        Ok(r)
    }

    fn derive(
        &self,
        r: &mut Report,
        theory: &str,
        goal: &str,
        want_proof: bool,
    ) -> Result<(), CliError> {
        let axioms = self.theory(theory)?;
        let ce = self.ws.parse_conditional(goal).map_err(input)?;
        let budget = UniverseBudget {
            depth: self.cli.depth,
            term_cap: self.cli.term_cap,
            ..UniverseBudget::default()
        };
        let universe = build_universe(&ce.hypotheses, &ce.conclusion, axioms, budget)?;
        let table = least_derivable_distance(&ce.hypotheses, axioms, &universe)?;
        let goal = &ce.conclusion;
        let bound = table
            .bound(&goal.left, &goal.right)
            .cloned()
            .unwrap_or(Distance::Infinite);
        r.result("universe_terms", universe.len())
            .result("rounds", table.rounds());
        r.result("bound", bound);
        let derivable = table.derives(goal);
        if derivable {
            r.check("derivable", true, goal.to_string());
            if want_proof {
                let proof = table
                    .proof_of(goal)
                    .ok_or_else(|| input("no proof recorded for a derivable goal"))?;
                let checked = check_proof(&proof, axioms);
                r.check(
                    "proof-checks",
                    checked.is_ok(),
                    checked.err().map(|e| e.to_string()).unwrap_or_default(),
                );
                r.output = Some(proof.to_string());
            }
        } else {
            r.witness(format!(
                "least derivable bound is {bound}, above {}",
                goal.bound
            ));
            if axioms.is_empty() {
                let search = SearchBudget {
                    max_carrier: self.cli.max_carrier,
                    ..SearchBudget::default()
                };
                if let Some(m) = search_countermodel(&ce.hypotheses, goal, search)? {
                    let assignment: Vec<String> = m
                        .assignment_names()
                        .iter()
                        .map(|(v, e)| format!("{v} := {e}"))
                        .collect();
                    r.witness(format!(
                        "countermodel on {} elements: {}",
                        m.algebra.size(),
                        assignment.join(", ")
                    ));
                    r.output = Some(print_algebra("Countermodel", &m.algebra));
                }
            }
            r.check("derivable", false, goal.to_string());
        }
        Ok(())
    }

    fn canonical(
        &self,
        r: &mut Report,
        algebras: &[String],
        vars: usize,
        dedup: bool,
        into: Option<&str>,
    ) -> Result<(), CliError> {
        if vars == 0 {
            return Err(input("--vars must be at least 1"));
        }
        let members: Vec<Algebra> = algebras
            .iter()
            .map(|n| self.algebra(n).cloned())
            .collect::<Result<_, _>>()?;
        let declared = self.ws.signature.variables();
        let variables: Vec<Name> = if declared.len() >= vars {
            declared[..vars].to_vec()
        } else {
            (1..=vars).map(|i| Name::from(format!("x{i}"))).collect()
        };
        let sig = self
            .ws
            .signature
            .with_variables(Vec::new())
            .map_err(input)?;
        let options = CanonicalOptions {
            depth: self.cli.depth,
            term_cap: self.cli.term_cap,
            deduplicate: dedup,
            ..CanonicalOptions::default()
        };
        let model = canonical_model(&sig, &members, &variables, options)?;
        r.result("r_of_k", r_of_k(&members))
            .result("components", model.components().len())
            .result("carrier", model.product().size())
            .result("terms", model.terms().len());
        for (i, x) in variables.iter().enumerate() {
            for y in &variables[i + 1..] {
                let d = model
                    .distance(&Term::Var(x.clone()), &Term::Var(y.clone()))
                    .expect("variables are tabulated");
                r.result(&format!("distance.{x}.{y}"), d);
            }
        }
        r.output = Some(print_algebra(into.unwrap_or("Canonical"), model.product()));
        Ok(())
    }
}

/// The command as a single line, used in the report and its digest.
fn describe(command: &Command) -> String {
    let join = |v: &[String]| v.join(" ");
    let into = |n: &Option<String>| n.as_ref().map(|n| format!(" -> {n}")).unwrap_or_default();
    match command {
        Command::CheckAlgebra { algebra } => format!("check-algebra {algebra}"),
        Command::CheckSat { algebra, theory } => format!("check-sat {algebra} {theory}"),
        Command::Derive {
            theory,
            goal,
            proof,
        } => {
            format!(
                "derive {theory} \"{goal}\"{}",
                if *proof { " --proof" } else { "" }
            )
        }
        Command::Countermodel { goal, into: n } => format!("countermodel \"{goal}\"{}", into(n)),
        Command::Product { algebras, into: n } => format!("product {}{}", join(algebras), into(n)),
        Command::Subalgebra {
            algebra,
            generators,
            into: n,
        } => {
            format!(
                "subalgebra {algebra} {{{}}}{}",
                braced_list(generators).join(" "),
                into(n)
            )
        }
        Command::CanonicalModel {
            algebras,
            vars,
            dedup,
            into: n,
        } => format!(
            "canonical-model {} --vars {vars}{}{}",
            join(algebras),
            if *dedup { " --dedup" } else { "" },
            into(n)
        ),
        Command::CheckHom {
            source,
            target,
            map,
        } => format!("check-hom {source} {target} {}", join(map)),
        Command::CheckReflexive {
            source,
            target,
            map,
            c,
        } => {
            format!("check-reflexive {source} {target} {} --c {c}", join(map))
        }
        Command::ToQfo { algebra, into: n } => format!("to-qfo {algebra}{}", into(n)),
        Command::ToAlgebra { structure, into: n } => format!("to-algebra {structure}{}", into(n)),
        Command::ReducedProduct {
            structures,
            filter,
            into: n,
        } => format!(
            "reduced-product {} --filter {{{}}}{}",
            join(structures),
            braced_list(filter).join(" "),
            into(n)
        ),
        Command::EvalHorn { structure, formula } => format!("eval-horn {structure} {formula}"),
        Command::CheckProof { theory, proof } => format!("check-proof {theory} {proof}"),
        Command::Suite { name } => format!("suite {name}"),
        Command::Fmt => "fmt".into(),
    }
}
