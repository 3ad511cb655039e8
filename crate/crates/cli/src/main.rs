//! `bigbracket` — exact checks for the graded Poisson algebra on
//! S((V⊕V*)[−1]), Gerstenhaber–Schack cohomology of finite bialgebras,
//! Koszul-type resolutions over enveloping algebras, and the formality
//! linear algebra.
//!
//! Exit codes: 0 = all checks passed, 1 = a mathematical check failed,
//! 2 = usage or input error. Reports are deterministic: the same inputs
//! produce byte-identical JSON (no timing fields, no floats, fixed basis
//! and pivot orders).

use anyhow::{anyhow, bail, Context, Result};
use bigbracket::{
    abelian_transport_check, abelian_transport_check_mutated, boundary_construct,
    boundary_construct_with_gram, dim_by_degree, enumerate_basis, format_rat, gs_cohomology,
    h1_vanishing_check, hom_complex, infer_dimension, invariant_form_space, parse_rat,
    verify_poisson, yoneda_product, Dimension, Element, FiniteBialgebra, FormalityError, GsError,
    HomComplexElement, LieAlgebraData, ProtoStructure, RationalMatrix, SymmetricForm,
};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "bigbracket",
    version,
    about = "exact computer algebra checks: big bracket, deformation complexes, resolutions, formality"
)]
struct Cli {
    /// Write the JSON report to this path instead of printing text
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Seed for the randomized parts of property suites
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Total-degree truncation for cohomology computations
    #[arg(long, global = true, value_name = "N")]
    max_degree: Option<usize>,

    /// Filtration-degree cap for resolution truncations
    #[arg(long, global = true, value_name = "N")]
    cap: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify the graded Poisson axioms of the big bracket at a given dimension
    VerifyPoisson {
        #[arg(long)]
        dim: usize,
    },
    /// Evaluate [h, h] for a degree-3 element and report Maurer–Cartan status
    McCheck {
        /// element JSON file: {"terms": [{"coeff": "...", "I": [...], "J": [...]}]}
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
        /// ambient dimension (default: smallest dimension containing the element)
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Name the structure a degree-3 element defines (Lie bialgebra, quasi, …)
    Classify {
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Cohomology of (H, [h, −]) for a Maurer–Cartan element h
    DefCohomology {
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Gerstenhaber–Schack cohomology of a finite-dimensional bialgebra
    GsCohomology {
        /// one of: trivial, group_z2, group_z3, sweedler4, dual_group_z2
        #[arg(long, conflicts_with = "input")]
        builtin: Option<String>,
        /// bialgebra JSON file with mu/delta/unit/counit tables
        #[arg(long, value_name = "FILE")]
        input: Option<PathBuf>,
    },
    /// Cohomology of the reduced hom-complex (∧𝔤⊗∧𝔤*, ad_λ) of a Lie algebra
    Hgs {
        /// one of: abelian1, abelian2, abelian3, nonabelian2, heisenberg3, sl2
        #[arg(long, conflicts_with = "lie_algebra")]
        builtin: Option<String>,
        /// Lie algebra JSON file: {"d": 3, "c": [[i, j, k, "num/den"], …]} with i < j
        #[arg(long, value_name = "FILE")]
        lie_algebra: Option<PathBuf>,
    },
    /// Yoneda product on the reduced hom-complex of an abelian Lie algebra
    Yoneda {
        #[arg(long)]
        dim: usize,
        /// left factor as an element JSON file (omit both factors to run the
        /// exhaustive agreement check against the graded product instead)
        #[arg(long, value_name = "FILE", requires = "right")]
        left: Option<PathBuf>,
        #[arg(long, value_name = "FILE", requires = "left")]
        right: Option<PathBuf>,
    },
    /// Transport the differential through the induced/coinduced adjunction
    /// (abelian case) and verify it vanishes
    TransportCheck {
        #[arg(long)]
        dim: usize,
        /// run the sign-corrupted variant (expected to fail; demonstrates
        /// the check's sensitivity)
        #[arg(long)]
        mutated: bool,
    },
    /// Degree census, boundary construction, and invariant-form computation
    FormalityCheck {
        #[arg(long)]
        dim: usize,
    },
    /// Solve [a, g(b)] + [b, g(a)] = F(a, b) for g given a symmetric form F
    Boundary {
        #[arg(long)]
        dim: usize,
        /// symmetric 2d×2d matrix as nested rational-string arrays
        #[arg(long, value_name = "FILE")]
        form: PathBuf,
        /// optional replacement Gram matrix (same format); the canonical
        /// pairing is used when absent
        #[arg(long, value_name = "FILE")]
        gram: Option<PathBuf>,
    },
    /// Space of gl(V)-invariant symmetric forms on V⊕V*
    Invariants {
        #[arg(long)]
        dim: usize,
    },
}

#[derive(Serialize)]
struct RunReport {
    command: &'static str,
    inputs: Value,
    status: &'static str,
    payload: Value,
}

/// Error that should surface as exit code 2 (bad usage or bad input files);
/// mathematical failures are not errors — they are reports with status fail.
struct UsageError(anyhow::Error);

type CmdResult = std::result::Result<(bool, Value), UsageError>;

fn usage<T>(e: anyhow::Error) -> std::result::Result<T, UsageError> {
    Err(UsageError(e))
}

fn dimension(d: usize) -> std::result::Result<Dimension, UsageError> {
    Dimension::new(d).map_err(|e| UsageError(anyhow!(e)))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> std::result::Result<T, UsageError> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(UsageError)?;
    serde_json::from_str(&text)
        .with_context(|| format!("cannot parse {}", path.display()))
        .map_err(UsageError)
}

fn matrix_from_strings(rows: &[Vec<String>]) -> Result<RationalMatrix> {
    let r = rows.len();
    let c = rows.first().map_or(0, |row| row.len());
    if rows.iter().any(|row| row.len() != c) {
        bail!("ragged matrix rows");
    }
    let mut m = RationalMatrix::zero(r, c);
    for (i, row) in rows.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            let v = parse_rat(s).with_context(|| format!("entry ({i}, {j})"))?;
            m.set(i, j, v);
        }
    }
    Ok(m)
}

fn matrix_to_strings(m: &RationalMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| format_rat(&m.get(r, c))).collect())
        .collect()
}

fn load_element(
    path: &Path,
    dim_flag: Option<usize>,
) -> std::result::Result<(Element, Dimension), UsageError> {
    let h: Element = read_json(path)?;
    let d = match dim_flag {
        Some(d) => dimension(d)?,
        None => infer_dimension(&h).map_err(|e| UsageError(anyhow!(e)))?,
    };
    Ok((h, d))
}

fn proto(
    path: &Path,
    dim_flag: Option<usize>,
) -> std::result::Result<(ProtoStructure, Dimension), UsageError> {
    let (h, d) = load_element(path, dim_flag)?;
    // an element of the wrong degree is an input error, not a math failure
    let p = ProtoStructure::new(h, d).map_err(|e| UsageError(anyhow!(e)))?;
    Ok((p, d))
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.cmd {
        Cmd::VerifyPoisson { dim } => {
            let d = dimension(*dim)?;
            let report = verify_poisson(d, cli.seed);
            let passed = report.passed();
            Ok((passed, serde_json::to_value(&report).expect("serializable")))
        }
        Cmd::McCheck { input, dim } => {
            let (p, d) = proto(input, *dim)?;
            let (square, is_mc) = p.mc_check();
            let payload = json!({
                "dim": d.get(),
                "element": p.element(),
                "bracket_square": square,
                "is_maurer_cartan": is_mc,
            });
            Ok((is_mc, payload))
        }
        Cmd::Classify { input, dim } => {
            let (p, d) = proto(input, *dim)?;
            let (square, is_mc) = p.mc_check();
            let payload = json!({
                "dim": d.get(),
                "classification": p.classify(),
                "is_maurer_cartan": is_mc,
                "bracket_square": square,
                "lambda": p.lambda(),
                "delta": p.delta(),
                "alpha": p.alpha(),
                "beta": p.beta(),
            });
            // classification always succeeds; the tag itself is the answer
            Ok((true, payload))
        }
        Cmd::DefCohomology { input, dim } => {
            let (p, d) = proto(input, *dim)?;
            match p.deformation_cohomology() {
                Ok(dims) => {
                    let space: Vec<usize> =
                        (0..=d.top_degree()).map(|n| dim_by_degree(d, n)).collect();
                    let payload = json!({
                        "dim": d.get(),
                        "space_dims": space,
                        "cohomology_dims": dims,
                    });
                    Ok((true, payload))
                }
                Err(e) => {
                    let (square, _) = p.mc_check();
                    let payload = json!({
                        "dim": d.get(),
                        "reason": e.to_string(),
                        "bracket_square": square,
                    });
                    Ok((false, payload))
                }
            }
        }
        Cmd::GsCohomology { builtin, input } => {
            let a = match (builtin, input) {
                (Some(name), None) => {
                    FiniteBialgebra::builtin(name).map_err(|e| UsageError(anyhow!(e)))?
                }
                (None, Some(path)) => read_json::<FiniteBialgebra>(path)?,
                _ => return usage(anyhow!("give exactly one of --builtin or --input")),
            };
            let max_total = cli.max_degree.unwrap_or(4);
            match gs_cohomology(&a, max_total) {
                Ok(report) => Ok((true, serde_json::to_value(&report).expect("serializable"))),
                // d² ≠ 0 is a mathematical failure; everything else
                // (truncation too large, bad shapes) is usage
                Err(e @ GsError::DSquare { .. }) => Ok((false, json!({ "reason": e.to_string() }))),
                Err(e) => usage(anyhow!(e)),
            }
        }
        Cmd::Hgs {
            builtin,
            lie_algebra,
        } => {
            let g = match (builtin, lie_algebra) {
                (Some(name), None) => {
                    LieAlgebraData::builtin(name).map_err(|e| UsageError(anyhow!(e)))?
                }
                (None, Some(path)) => read_json::<LieAlgebraData>(path)?,
                _ => return usage(anyhow!("give exactly one of --builtin or --lie-algebra")),
            };
            let complex = hom_complex(&g).map_err(|e| UsageError(anyhow!(e)))?;
            let top = 2 * g.dim();
            let space: Vec<usize> = (0..=top).map(|n| complex.space_dim(n)).collect();
            let payload = json!({
                "name": g.name(),
                "dim": g.dim(),
                "abelian": g.is_abelian(),
                "lambda": g.lambda(),
                "space_dims": space,
                "cohomology_dims": complex.cohomology_dims(),
            });
            Ok((true, payload))
        }
        Cmd::Yoneda { dim, left, right } => {
            let d = dimension(*dim)?;
            let g = LieAlgebraData::abelian(d.get()).expect("valid dimension");
            match (left, right) {
                (Some(lp), Some(rp)) => {
                    let u: Element = read_json(lp)?;
                    let v: Element = read_json(rp)?;
                    let hu = HomComplexElement::from_element(&u, d.get())
                        .map_err(|e| UsageError(anyhow!(e)))?;
                    let hv = HomComplexElement::from_element(&v, d.get())
                        .map_err(|e| UsageError(anyhow!(e)))?;
                    let product = yoneda_product(&hu, &hv, &g).map_err(|e| UsageError(anyhow!(e)))?;
                    let as_element = product.to_element();
                    let graded = &u * &v;
                    let agrees = as_element == graded;
                    let payload = json!({
                        "dim": d.get(),
                        "product": as_element,
                        "graded_product": graded,
                        "agrees": agrees,
                    });
                    Ok((agrees, payload))
                }
                (None, None) => {
                    // exhaustive: every basis pair, Yoneda vs graded product
                    let mut basis = Vec::new();
                    for n in 0..=d.top_degree() {
                        basis.extend(enumerate_basis(d, n));
                    }
                    let mut pairs = 0usize;
                    let mut mismatches = Vec::new();
                    for a in &basis {
                        for b in &basis {
                            let ea = Element::from_monomial(*a);
                            let eb = Element::from_monomial(*b);
                            let hu = HomComplexElement::from_element(&ea, d.get())
                                .expect("basis element");
                            let hv = HomComplexElement::from_element(&eb, d.get())
                                .expect("basis element");
                            let uv = yoneda_product(&hu, &hv, &g)
                                .expect("abelian by construction")
                                .to_element();
                            let expect = &ea * &eb;
                            pairs += 1;
                            if uv != expect && mismatches.len() < 10 {
                                mismatches.push(format!("{a} · {b}: {uv} ≠ {expect}"));
                            }
                        }
                    }
                    let passed = mismatches.is_empty();
                    let payload = json!({
                        "dim": d.get(),
                        "pairs_checked": pairs,
                        "mismatches": mismatches,
                    });
                    Ok((passed, payload))
                }
                _ => usage(anyhow!("--left and --right must be given together")),
            }
        }
        Cmd::TransportCheck { dim, mutated } => {
            let cap = cli.cap.unwrap_or(2);
            let result = if *mutated {
                abelian_transport_check_mutated(*dim, cap)
            } else {
                abelian_transport_check(*dim, cap)
            };
            let report = result.map_err(|e| UsageError(anyhow!(e)))?;
            let passed = report.passed();
            Ok((passed, serde_json::to_value(&report).expect("serializable")))
        }
        Cmd::FormalityCheck { dim } => {
            let d = dimension(*dim)?;
            let h1 = h1_vanishing_check(d);
            let inv = invariant_form_space(d);
            let passed = h1.passed() && inv.space_dim == 1 && inv.proportional_to_pairing;
            let payload = json!({
                "h1_vanishing": h1,
                "invariant_forms": inv,
            });
            Ok((passed, payload))
        }
        Cmd::Boundary { dim, form, gram } => {
            let d = dimension(*dim)?;
            let rows: Vec<Vec<String>> = read_json(form)?;
            let fm = matrix_from_strings(&rows).map_err(UsageError)?;
            let f1 = SymmetricForm::new(fm).map_err(|e| UsageError(anyhow!(e)))?;
            if f1.dim_v() != d.get() {
                return usage(anyhow!(
                    "form is {}×{} but --dim {} needs {}×{}",
                    2 * f1.dim_v(),
                    2 * f1.dim_v(),
                    d.get(),
                    2 * d.get(),
                    2 * d.get()
                ));
            }
            let solved = match gram {
                Some(gp) => {
                    let grows: Vec<Vec<String>> = read_json(gp)?;
                    let gm = matrix_from_strings(&grows).map_err(UsageError)?;
                    boundary_construct_with_gram(&f1, &gm)
                }
                None => boundary_construct(&f1, d),
            };
            match solved {
                Ok(g) => {
                    let payload = json!({
                        "dim": d.get(),
                        "g": matrix_to_strings(&g),
                        "verified": true,
                    });
                    Ok((true, payload))
                }
                // no solution / failed substitution: the mathematics said no
                Err(
                    e @ (FormalityError::NoBoundary { .. }
                    | FormalityError::SubstitutionFailed { .. }),
                ) => Ok((false, json!({ "dim": d.get(), "reason": e.to_string() }))),
                Err(e) => usage(anyhow!(e)),
            }
        }
        Cmd::Invariants { dim } => {
            let d = dimension(*dim)?;
            let report = invariant_form_space(d);
            let passed = report.space_dim == 1 && report.proportional_to_pairing;
            Ok((passed, serde_json::to_value(&report).expect("serializable")))
        }
    }
}

fn command_name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::VerifyPoisson { .. } => "verify-poisson",
        Cmd::McCheck { .. } => "mc-check",
        Cmd::Classify { .. } => "classify",
        Cmd::DefCohomology { .. } => "def-cohomology",
        Cmd::GsCohomology { .. } => "gs-cohomology",
        Cmd::Hgs { .. } => "hgs",
        Cmd::Yoneda { .. } => "yoneda",
        Cmd::TransportCheck { .. } => "transport-check",
        Cmd::FormalityCheck { .. } => "formality-check",
        Cmd::Boundary { .. } => "boundary",
        Cmd::Invariants { .. } => "invariants",
    }
}

fn inputs_echo(cli: &Cli) -> Value {
    let path = |p: &PathBuf| Value::String(p.display().to_string());
    let opt_path = |p: &Option<PathBuf>| p.as_ref().map_or(Value::Null, path);
    match &cli.cmd {
        Cmd::VerifyPoisson { dim } => json!({ "dim": dim, "seed": cli.seed }),
        Cmd::McCheck { input, dim } | Cmd::Classify { input, dim } | Cmd::DefCohomology { input, dim } => {
            json!({ "input": path(input), "dim": dim })
        }
        Cmd::GsCohomology { builtin, input } => json!({
            "builtin": builtin,
            "input": opt_path(input),
            "max_total": cli.max_degree.unwrap_or(4),
        }),
        Cmd::Hgs {
            builtin,
            lie_algebra,
        } => json!({ "builtin": builtin, "lie_algebra": opt_path(lie_algebra) }),
        Cmd::Yoneda { dim, left, right } => {
            json!({ "dim": dim, "left": opt_path(left), "right": opt_path(right) })
        }
        Cmd::TransportCheck { dim, mutated } => {
            json!({ "dim": dim, "cap": cli.cap.unwrap_or(2), "mutated": mutated })
        }
        Cmd::FormalityCheck { dim } | Cmd::Invariants { dim } => json!({ "dim": dim }),
        Cmd::Boundary { dim, form, gram } => {
            json!({ "dim": dim, "form": path(form), "gram": opt_path(gram) })
        }
    }
}

fn render_text(report: &RunReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("command: {}\n", report.command));
    out.push_str(&format!("status:  {}\n", report.status));
    out.push_str(&serde_json::to_string_pretty(&report.payload).expect("serializable"));
    out.push('\n');
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (passed, payload) = match run(&cli) {
        Ok(x) => x,
        Err(UsageError(e)) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let report = RunReport {
        command: command_name(&cli.cmd),
        inputs: inputs_echo(&cli),
        status: if passed { "pass" } else { "fail" },
        payload,
    };
    if let Some(path) = &cli.json {
        let mut bytes = serde_json::to_vec_pretty(&report).expect("serializable");
        bytes.push(b'\n');
        if let Err(e) = std::fs::write(path, bytes) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    } else {
        print!("{}", render_text(&report));
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
