//! The `qorder` command line: file formats, commands and exit codes.
//!
//! Exit codes: 0 success or the property holds, 1 the property fails (a
//! witness is printed), 2 input error, 3 a search ran out of budget.

pub mod format;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qorder_core::fixtures::fixture;
use qorder_core::{
    cauchy_complete_cat, cauchy_complete_trs, classify, converges, factor_through_completion, is_equivalence,
    is_inverse_pair, is_left_adjoint, mat_extension, mat_lifting, morita_check, normalize_category, reshuffle,
    right_adjoint_candidate, run_suite, search_other_factorization, skeleton, stable_objects, unreshuffle,
    validate_quantaloid, Budget, CheckConfig, CompletionResult, EnrichedStructure, Idm, ObjectMap, QError,
    SearchOutcome, SemiDistributor, SplittingChoice, Suite,
};

use format::{
    dir_of, inline_of, map_file, mat_file, probe_spec, read, splitting_specs, splittings_from, struct_file,
    to_canonical, BaseRef, MapFile, MatFile, QuantFile, Resolver, StructFile, TableFile, WitnessFile,
};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Fails(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Fails(_) => 1,
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<QError> for CliError {
    fn from(e: QError) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "qorder", version, about = "Totally regular semicategories over finite quantaloids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write the result here instead of standard output.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Residual {
    /// Largest X with Φ ⊗ X <= Θ.
    Lift,
    /// Largest X with X ⊗ Φ <= Θ.
    Extend,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a .quant, .struct, .mat, .map or .witness file.
    Validate { file: PathBuf },
    /// Print which structure notions a .struct file satisfies.
    Classify { file: PathBuf },
    /// Compose Φ: A ⇸ B with Ψ: B ⇸ C into Ψ ⊗ Φ.
    Compose {
        phi: PathBuf,
        psi: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Matrix lifting or extension of Θ through Φ.
    Residuate {
        #[arg(value_enum)]
        kind: Residual,
        phi: PathBuf,
        theta: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Decide whether a regular semidistributor is a left adjoint; writes its right adjoint.
    Adjoint {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Find the object map a left adjoint converges to.
    Converge {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Cauchy completion of a structure.
    Complete {
        file: PathBuf,
        /// Complete as a totally regular structure.
        #[arg(long, conflicts_with = "cat", required_unless_present = "cat")]
        trs: bool,
        /// Complete as a category.
        #[arg(long)]
        cat: bool,
        /// Keep one object per isomorphism class.
        #[arg(long)]
        skeletal: bool,
        #[command(flatten)]
        out: Output,
        /// Write the probe table here.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Split-idempotent completion of a base (fixture name or .quant file).
    Idm {
        base: String,
        #[command(flatten)]
        out: Output,
    },
    /// Retype a totally regular structure over the split-idempotent completion.
    Reshuffle {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Read a normal category over `idm:<base>` back over `<base>`.
    Unreshuffle {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Make a category normal by splitting its endo-homs.
    Normalize {
        file: PathBuf,
        /// Splitting witness to use instead of the first splitting found.
        #[arg(long)]
        splitting: Option<PathBuf>,
        /// Write the splitting used here.
        #[arg(long)]
        witness: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Isomorphism of two structures and equivalence of their completions.
    Morita {
        a: PathBuf,
        b: PathBuf,
        /// Write the isomorphism witness here.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Write the equivalence witness between the completions here.
        #[arg(long)]
        equivalence: Option<PathBuf>,
    },
    /// Extend a regular semifunctor along the completion of its domain.
    Factor {
        /// The semifunctor, as a .map file into a complete structure.
        #[arg(long)]
        map: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Run a property suite: lemma4, lemma13, prop15, prop16, prop17, prop18, prop19, prop23.
    PropCheck {
        suite: String,
        /// Base fixture name or .quant file.
        #[arg(long, default_value = "q3")]
        base: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        max_objects: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
}

fn emit(out: &Output, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &out.out {
        Some(p) => write_file(p, text),
        None => stdout.write_all(text.as_bytes()).map_err(|e| CliError::Input(e.to_string())),
    }
}

fn write_file(p: &Path, text: &str) -> Result<(), CliError> {
    fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))
}

macro_rules! say {
    ($w:expr, $($arg:tt)*) => {
        writeln!($w, $($arg)*).map_err(|e| CliError::Input(e.to_string()))?
    };
}

fn budget() -> Result<Budget, CliError> {
    Budget::from_env().map_err(CliError::Input)
}

struct Loaded<T> {
    value: T,
    dom_base: BaseRef,
    cod_base: BaseRef,
}

fn load_struct(r: &mut Resolver, path: &Path) -> Result<(Arc<EnrichedStructure>, StructFile), CliError> {
    let f: StructFile = read(path)?;
    Ok((r.structure(&f)?, f))
}

fn struct_base(r: &mut Resolver, sref: &format::StructRef, dir: &Path) -> Result<BaseRef, CliError> {
    Ok(r.struct_ref(sref, dir)?.1.base)
}

fn load_mat(r: &mut Resolver, path: &Path) -> Result<Loaded<SemiDistributor>, CliError> {
    let f: MatFile = read(path)?;
    let dir = dir_of(path);
    Ok(Loaded {
        value: r.semidistributor(&f, &dir)?,
        dom_base: struct_base(r, &f.dom, &dir)?,
        cod_base: struct_base(r, &f.cod, &dir)?,
    })
}

fn load_map(r: &mut Resolver, path: &Path) -> Result<Loaded<ObjectMap>, CliError> {
    let f: MapFile = read(path)?;
    let dir = dir_of(path);
    Ok(Loaded {
        value: r.object_map(&f, &dir)?,
        dom_base: struct_base(r, &f.dom, &dir)?,
        cod_base: struct_base(r, &f.cod, &dir)?,
    })
}

fn object_names(s: &EnrichedStructure, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&x| s.obs().name(x).to_string()).collect()
}

fn map_line(f: &ObjectMap) -> String {
    (0..f.dom().n_objects())
        .map(|a| format!("{} -> {}", f.dom().obs().name(a), f.cod().obs().name(f.apply(a))))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Runs one command, writing reports to `stdout`.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let mut r = Resolver::default();
    match cli.command {
        Command::Validate { file } => validate(&mut r, &file, stdout),
        Command::Classify { file } => {
            let (s, _) = load_struct(&mut r, &file)?;
            let flags = classify(&s);
            say!(stdout, "{flags}");
            if flags.regular {
                let stable = stable_objects(&s)?;
                say!(stdout, "stable objects: [{}]", object_names(&s, &stable).join(", "));
            }
            Ok(())
        }
        Command::Compose { phi, psi, out } => {
            let (phi, psi) = (load_mat(&mut r, &phi)?, load_mat(&mut r, &psi)?);
            if phi.value.cod() != psi.value.dom() {
                return Err(CliError::Input("the codomain of the first matrix is not the domain of the second".into()));
            }
            let composite = phi.value.then(&psi.value)?;
            emit(&out, &to_canonical(&mat_file(&composite, phi.dom_base, psi.cod_base)), stdout)
        }
        Command::Residuate { kind, phi, theta, out } => {
            let (phi, theta) = (load_mat(&mut r, &phi)?, load_mat(&mut r, &theta)?);
            let q = phi.value.base().clone();
            let result = match kind {
                Residual::Lift => {
                    // Φ: A ⇸ B, Θ: C ⇸ B, result C ⇸ A
                    let x = mat_lifting(&q, phi.value.mat(), theta.value.mat())?;
                    let m = SemiDistributor::new(theta.value.dom().clone(), phi.value.dom().clone(), x)?;
                    mat_file(&m, theta.dom_base, phi.dom_base)
                }
                Residual::Extend => {
                    // Φ: A ⇸ B, Θ: A ⇸ C, result B ⇸ C
                    let x = mat_extension(&q, phi.value.mat(), theta.value.mat())?;
                    let m = SemiDistributor::new(phi.value.cod().clone(), theta.value.cod().clone(), x)?;
                    mat_file(&m, phi.cod_base, theta.cod_base)
                }
            };
            emit(&out, &to_canonical(&result), stdout)
        }
        Command::Adjoint { file, out } => {
            let phi = load_mat(&mut r, &file)?;
            match is_left_adjoint(&phi.value)? {
                Some(pair) => {
                    say!(stdout, "left adjoint: yes");
                    let text = to_canonical(&mat_file(&pair.right, phi.cod_base, phi.dom_base));
                    emit(&out, &text, stdout)
                }
                None => {
                    let cand = right_adjoint_candidate(&phi.value)?;
                    say!(stdout, "left adjoint: no");
                    Err(CliError::Fails(format!(
                        "the candidate {:?} fails the unit or counit inequality",
                        cand.entry_names(phi.value.base())
                    )))
                }
            }
        }
        Command::Converge { file, out } => {
            let phi = load_mat(&mut r, &file)?;
            let pair = is_left_adjoint(&phi.value)?.ok_or_else(|| CliError::Input("not a left adjoint".into()))?;
            match converges(&pair)? {
                Some(f) => {
                    say!(stdout, "converges: {}", map_line(&f));
                    if out.out.is_some() {
                        emit(&out, &to_canonical(&map_file(&f, phi.dom_base, phi.cod_base)), stdout)?;
                    }
                    Ok(())
                }
                None => Err(CliError::Fails(format!(
                    "{:?} does not converge",
                    phi.value.mat().entry_names(phi.value.base())
                ))),
            }
        }
        Command::Complete {
            file,
            trs,
            cat: _,
            skeletal,
            out,
            table,
        } => {
            let (s, f) = load_struct(&mut r, &file)?;
            let c = if trs { cauchy_complete_trs(&s)? } else { cauchy_complete_cat(&s)? };
            let (structure, table_file) = completion_output(&s, &c, skeletal)?;
            emit(&out, &to_canonical(&struct_file(&structure, f.base.clone())), stdout)?;
            let table_path = table.or_else(|| out.out.as_ref().map(|p| p.with_extension("table.json")));
            if let Some(p) = table_path {
                write_file(&p, &to_canonical(&table_file))?;
            }
            Ok(())
        }
        Command::Idm { base, out } => {
            let (q, _) = r.base_arg(&base)?;
            let idm = Idm::build(&q);
            emit(&out, &to_canonical(&QuantFile::Inline(Box::new(inline_of(idm.quantaloid())))), stdout)
        }
        Command::Reshuffle { file, out } => {
            let (s, f) = load_struct(&mut r, &file)?;
            let idm = Idm::build(s.base());
            let w = reshuffle(&idm, &s)?;
            let base = match f.base {
                BaseRef::Fixture(n) => BaseRef::Fixture(format!("idm:{n}")),
                BaseRef::Inline(_) => BaseRef::Inline(Box::new(inline_of(idm.quantaloid()))),
            };
            emit(&out, &to_canonical(&struct_file(&w.target, base)), stdout)
        }
        Command::Unreshuffle { file, out } => {
            let f: StructFile = read(&file)?;
            let inner = match &f.base {
                BaseRef::Fixture(n) => n.strip_prefix("idm:").map(str::to_string),
                BaseRef::Inline(_) => None,
            }
            .ok_or(QError::NotIdmBase)?;
            let idm = Idm::build(&fixture(&inner)?);
            let s = r.structure(&f)?;
            let back = unreshuffle(&idm, &s)?;
            emit(&out, &to_canonical(&struct_file(&back, BaseRef::Fixture(inner))), stdout)
        }
        Command::Normalize {
            file,
            splitting,
            witness,
            out,
        } => {
            let (s, f) = load_struct(&mut r, &file)?;
            let choice = match splitting {
                Some(p) => match read::<WitnessFile>(&p)? {
                    WitnessFile::Splitting { splittings } => Some(SplittingChoice {
                        splittings: splittings_from(&s, &splittings)?,
                    }),
                    _ => return Err(CliError::Input(format!("{}: not a splitting witness", p.display()))),
                },
                None => None,
            };
            let n = normalize_category(&s, choice)?;
            emit(&out, &to_canonical(&struct_file(&n.normal, f.base.clone())), stdout)?;
            if let Some(p) = witness {
                let w = WitnessFile::Splitting {
                    splittings: splitting_specs(&s, &n.choice.splittings),
                };
                write_file(&p, &to_canonical(&w))?;
            }
            if n.inverse {
                Ok(())
            } else {
                Err(CliError::Fails("the comparison pair is not inverse".into()))
            }
        }
        Command::Morita {
            a,
            b,
            witness,
            equivalence,
        } => {
            let (sa, fa) = load_struct(&mut r, &a)?;
            let (sb, fb) = load_struct(&mut r, &b)?;
            let report = morita_check(&sa, &sb, &budget()?)?;
            let verdict = match &report.isomorphism {
                SearchOutcome::Found(_) => "isomorphic",
                SearchOutcome::NotFound => "not isomorphic",
                SearchOutcome::BudgetExceeded => "budget-exceeded",
            };
            let completions = match &report.equivalence {
                SearchOutcome::Found(_) => "equivalent",
                SearchOutcome::NotFound => "not equivalent",
                SearchOutcome::BudgetExceeded => "budget-exceeded",
            };
            say!(stdout, "VERDICT: {verdict}");
            say!(stdout, "completions: {completions}");
            if let (Some(p), SearchOutcome::Found(w)) = (&witness, &report.isomorphism) {
                let file = WitnessFile::Isomorphism {
                    forward: mat_file(&w.forward, fa.base.clone(), fb.base.clone()),
                    backward: mat_file(&w.backward, fb.base.clone(), fa.base.clone()),
                };
                write_file(p, &to_canonical(&file))?;
            }
            if let (Some(p), SearchOutcome::Found(w)) = (&equivalence, &report.equivalence) {
                let file = WitnessFile::Equivalence {
                    f: map_file(&w.f, fa.base.clone(), fb.base.clone()),
                    g: map_file(&w.g, fb.base, fa.base),
                };
                write_file(p, &to_canonical(&file))?;
            }
            if report.isomorphism.is_exceeded() || report.equivalence.is_exceeded() {
                Err(CliError::Budget("the Morita searches were inconclusive".into()))
            } else if report.agree() {
                Ok(())
            } else {
                Err(CliError::Fails(format!("structures {verdict} but completions {completions}")))
            }
        }
        Command::Factor { map, out } => {
            let f = load_map(&mut r, &map)?;
            let a_cc = cauchy_complete_trs(f.value.dom())?;
            let g = factor_through_completion(&f.value, &a_cc)?;
            say!(stdout, "extension: {}", map_line(&g));
            emit(&out, &to_canonical(&map_file(&g, f.dom_base, f.cod_base)), stdout)?;
            match search_other_factorization(&f.value, &a_cc, &g, &budget()?)? {
                SearchOutcome::NotFound => Ok(()),
                SearchOutcome::Found(h) => Err(CliError::Fails(format!("inequivalent second extension: {}", map_line(&h)))),
                SearchOutcome::BudgetExceeded => Err(CliError::Budget("uniqueness search".into())),
            }
        }
        Command::PropCheck {
            suite,
            base,
            seed,
            max_objects,
            samples,
        } => {
            let suite: Suite = suite.parse()?;
            let (q, _) = r.base_arg(&base)?;
            let cfg = CheckConfig {
                max_objects,
                seed,
                samples,
                budget: budget()?,
                ..CheckConfig::default()
            };
            let report = run_suite(suite, &q, &cfg)?;
            say!(stdout, "{report}");
            if report.witness.is_some() {
                Err(CliError::Fails(format!("{suite} fails on {}", q.name())))
            } else if report.budget_exceeded {
                Err(CliError::Budget(format!("{suite} on {}", q.name())))
            } else {
                Ok(())
            }
        }
    }
}

fn completion_output(
    s: &Arc<EnrichedStructure>,
    c: &CompletionResult,
    skeletal: bool,
) -> Result<(Arc<EnrichedStructure>, TableFile), CliError> {
    let q = s.base();
    let k = c.embed.map();
    let (structure, kept, class_of) = if skeletal {
        let (sub, incl, class_of) = skeleton(&c.completed)?;
        (sub, incl.map().to_vec(), class_of)
    } else {
        let n = c.completed.n_objects();
        (c.completed.clone(), (0..n).collect(), (0..n).collect())
    };
    let names = object_names(&structure, &(0..structure.n_objects()).collect::<Vec<_>>());
    let table = TableFile {
        structure: names.clone(),
        embedding: Some(
            (0..s.n_objects())
                .map(|b| (s.obs().name(b).to_string(), names[class_of[k[b]]].clone()))
                .collect(),
        ),
        probes: kept
            .iter()
            .zip(&names)
            .map(|(&i, name)| probe_spec(q, name, &c.object_table[i], s))
            .collect(),
    };
    Ok((structure, table))
}

fn validate(r: &mut Resolver, file: &Path, stdout: &mut dyn Write) -> Result<(), CliError> {
    let ext = file.extension().and_then(|e| e.to_str()).unwrap_or("");
    let dir = dir_of(file);
    match ext {
        "quant" => {
            let f: QuantFile = read(file)?;
            let q = r.quant_file(&f)?;
            let report = validate_quantaloid(&q);
            if report.is_ok() {
                say!(stdout, "valid quantaloid `{}` with {} objects", q.name(), q.n_objects());
                Ok(())
            } else {
                for v in &report.violations {
                    say!(stdout, "{v}");
                }
                Err(CliError::Fails(format!("`{}` violates the quantaloid laws", q.name())))
            }
        }
        "struct" => {
            let (s, _) = load_struct(r, file)?;
            say!(stdout, "valid structure with {} objects", s.n_objects());
            say!(stdout, "{}", classify(&s));
            Ok(())
        }
        "mat" => {
            let phi = load_mat(r, file)?.value;
            let fl = phi.flags();
            say!(stdout, "semidistributor: {}", yes(fl.semidistributor));
            say!(stdout, "regular: {}", yes(fl.regular));
            Ok(())
        }
        "map" => {
            let f = load_map(r, file)?.value;
            let fl = qorder_core::check_object_map(&f);
            say!(stdout, "semifunctor: {}", yes(fl.semifunctor));
            say!(stdout, "functor: {}", yes(fl.functor));
            say!(stdout, "regular semifunctor: {}", yes(fl.regular_semifunctor));
            Ok(())
        }
        "witness" => match read::<WitnessFile>(file)? {
            WitnessFile::Isomorphism { forward, backward } => {
                let (phi, psi) = (r.semidistributor(&forward, &dir)?, r.semidistributor(&backward, &dir)?);
                if is_inverse_pair(&phi, &psi)? {
                    say!(stdout, "inverse pair: verified");
                    Ok(())
                } else {
                    Err(CliError::Fails("the matrices are not inverse".into()))
                }
            }
            WitnessFile::Equivalence { f, g } => {
                let (f, g) = (r.object_map(&f, &dir)?, r.object_map(&g, &dir)?);
                if is_equivalence(&f, &g) {
                    say!(stdout, "equivalence: verified");
                    Ok(())
                } else {
                    Err(CliError::Fails("the maps are not inverse up to isomorphism".into()))
                }
            }
            WitnessFile::Splitting { splittings } => {
                say!(stdout, "splitting witness for {} objects", splittings.len());
                Ok(())
            }
        },
        _ => Err(CliError::Input(format!(
            "{}: unknown file kind (expected .quant, .struct, .mat, .map or .witness)",
            file.display()
        ))),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
