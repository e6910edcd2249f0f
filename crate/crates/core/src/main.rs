use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hoca_core::coeff::Matrix;
use hoca_core::complex::{cone, cylinder, ChainMap, Complex};
use hoca_core::io::{self, TSetDoc, Wire};
use hoca_core::localization::t_cell_tower;
use hoca_core::model::{derived_hom, factorize, generating_trivial_cofibrations, verify_descent, DescentData};
use hoca_core::monoidal::{derived_tensor, monoid_axiom_probe, tensor};
use hoca_core::presentation::{adjunction_check, extend, restrict, AComplex, AddCategory};
use hoca_core::selftest;
use hoca_core::spectra::{is_weak_omega_spectrum, suspension_map, validate_spectrum, Spectrum};
use hoca_core::{Error, Result};

#[derive(Parser)]
#[command(name = "hoca", version, about = "Exact homological algebra over Z and Z/m")]
struct Cli {
    /// Output style; `json` emits documents in the wire format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Cohomology of a complex, in every degree or in one.
    Homology {
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        deg: Option<i64>,
    },
    /// Mapping cone of a chain map.
    Cone { input: PathBuf },
    /// Cylinder of a complex.
    Cylinder { input: PathBuf },
    /// Tensor product of two complexes.
    Tensor { x: PathBuf, y: PathBuf },
    /// Tensor product after cofibrant replacement of the first factor.
    DerivedTensor {
        x: PathBuf,
        y: PathBuf,
        #[arg(long)]
        descent: Option<PathBuf>,
    },
    /// Hom in the derived category, Hom(X, Y[shift]).
    DerivedHom {
        x: PathBuf,
        y: PathBuf,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        shift: i64,
        #[arg(long)]
        descent: Option<PathBuf>,
    },
    /// Cell factorization of a chain map into a cofibration and a trivial fibration.
    Factorize {
        input: PathBuf,
        #[arg(long, default_value_t = 16)]
        max_cells: usize,
        #[arg(long)]
        descent: Option<PathBuf>,
    },
    /// Checks a descent structure, optionally against probe complexes.
    VerifyDescent {
        input: PathBuf,
        #[arg(long)]
        probe: Vec<PathBuf>,
    },
    /// Tower that cones off maps out of a set of complexes.
    Localize {
        input: PathBuf,
        #[arg(long)]
        tset: PathBuf,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
        range: Option<Vec<i64>>,
    },
    /// Checks C ⊗ j for one generating trivial cofibration j.
    ProbeMonoidAxiom {
        input: PathBuf,
        #[arg(long)]
        j_index: usize,
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
        range: Option<Vec<i64>>,
        #[arg(long)]
        descent: Option<PathBuf>,
    },
    /// Symmetric spectra.
    #[command(subcommand)]
    Spectrum(SpectrumCmd),
    /// Modules over the additive category of finite free modules.
    #[command(subcommand)]
    Present(PresentCmd),
    /// Runs the acceptance suite.
    Selftest {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=10))]
        /// Run only this criterion (1 to 10); the seed comes from HOCA_SEED
        criterion: Option<u8>,
    },
}

#[derive(Subcommand)]
enum SpectrumCmd {
    /// Coxeter relations and equivariance of the iterated assembly maps.
    Validate { input: PathBuf },
    /// The suspension maps E_n ⊗ S → E_{n+1}.
    Suspend { input: PathBuf },
    /// Whether every adjoint assembly map is a quasi-isomorphism.
    WeakOmega {
        input: PathBuf,
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
        range: Option<Vec<i64>>,
        /// Also test levelwise locality for this descent structure.
        #[arg(long)]
        descent: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum PresentCmd {
    /// Restriction of a complex to the additive category.
    Restrict {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2])]
        ranks: Vec<usize>,
    },
    /// Extension of a complex of modules to a complex.
    Extend { input: PathBuf },
    /// Triangle identities and, when enumerable, the hom-set bijection.
    CheckAdjunction {
        x: PathBuf,
        f: PathBuf,
        #[arg(long, default_value_t = 1 << 12)]
        budget: usize,
    },
}

/// A report: text lines, a JSON value, and an exit status.
struct Out {
    text: Vec<String>,
    json: Value,
    status: u8,
}

impl Out {
    fn ok(text: Vec<String>, json: Value) -> Self {
        Out { text, json, status: 0 }
    }

    fn check(text: Vec<String>, json: Value, passed: bool) -> Self {
        Out {
            text,
            json,
            status: if passed { 0 } else { 3 },
        }
    }
}

enum Failure {
    Usage(String),
    Run(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match dispatch(cli.cmd) {
        Ok(out) => {
            match cli.format {
                Format::Text => {
                    for line in &out.text {
                        println!("{line}");
                    }
                }
                Format::Json => {
                    let mut v = out.json;
                    if let Value::Object(m) = &mut v {
                        m.insert("format".into(), json!(io::FORMAT_VERSION));
                    }
                    println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
                }
            }
            ExitCode::from(out.status)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Run(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn range_of(r: Option<Vec<i64>>) -> std::result::Result<Option<(i64, i64)>, Failure> {
    match r.as_deref() {
        None => Ok(None),
        Some([a, b]) if a <= b => Ok(Some((*a, *b))),
        Some([a, b]) => Err(Failure::Usage(format!("--range {a} {b} is empty"))),
        Some(_) => Err(Failure::Usage("--range takes two degrees".into())),
    }
}

fn descent_or_frees(path: Option<PathBuf>, like: &Complex) -> Result<DescentData> {
    match path {
        Some(p) => io::read_file(&p),
        None => Ok(DescentData::frees(like.ring())),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn matrix_text(m: &Matrix) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

/// One line per degree with the module and outgoing differential, then the cohomology.
fn complex_text(c: &Complex, indent: &str) -> Vec<String> {
    if c.is_zero() {
        return vec![format!("{indent}0")];
    }
    let mut out = Vec::new();
    for n in c.degrees() {
        let d = c.d(n);
        if d.rows() > 0 && d.cols() > 0 {
            out.push(format!("{indent}C^{n} = {}  d = {}", c.module(n), matrix_text(&d)));
        } else {
            out.push(format!("{indent}C^{n} = {}", c.module(n)));
        }
    }
    for n in c.degrees() {
        out.push(format!("{indent}H^{n} = {}", c.homology(n)));
    }
    out
}

fn emit_complex(c: &Complex) -> Out {
    Out::ok(complex_text(c, ""), c.to_value())
}

fn dispatch(cmd: Cmd) -> std::result::Result<Out, Failure> {
    Ok(match cmd {
        Cmd::Homology { input, deg } => {
            let c: Complex = io::read_file(&input)?;
            match deg {
                Some(n) => {
                    let h = c.homology(n);
                    Out::ok(vec![h.to_string()], json!({"degree": n, "homology": h.to_value()}))
                }
                None => {
                    let groups: Vec<_> = c.degrees().map(|n| (n, c.homology(n))).collect();
                    let text = if groups.is_empty() {
                        vec!["0".to_string()]
                    } else {
                        groups.iter().map(|(n, h)| format!("H^{n} = {h}")).collect()
                    };
                    let map: serde_json::Map<String, Value> =
                        groups.iter().map(|(n, h)| (n.to_string(), h.to_value())).collect();
                    Out::ok(text, json!({ "homology": map }))
                }
            }
        }
        Cmd::Cone { input } => emit_complex(&cone(&io::read_file::<ChainMap>(&input)?).complex),
        Cmd::Cylinder { input } => emit_complex(&cylinder(&io::read_file(&input)?).complex),
        Cmd::Tensor { x, y } => {
            let (x, y): (Complex, Complex) = (io::read_file(&x)?, io::read_file(&y)?);
            emit_complex(&tensor(&x, &y)?)
        }
        Cmd::DerivedTensor { x, y, descent } => {
            let (x, y): (Complex, Complex) = (io::read_file(&x)?, io::read_file(&y)?);
            let dd = descent_or_frees(descent, &x)?;
            emit_complex(&derived_tensor(&x, &y, &dd)?.complex)
        }
        Cmd::DerivedHom { x, y, shift, descent } => {
            let (x, y): (Complex, Complex) = (io::read_file(&x)?, io::read_file(&y)?);
            let dd = descent_or_frees(descent, &x)?;
            let h = derived_hom(&x, &y, shift, &dd)?;
            Out::ok(vec![h.to_string()], json!({"shift": shift, "group": h.to_value()}))
        }
        Cmd::Factorize { input, max_cells, descent } => {
            let f: ChainMap = io::read_file(&input)?;
            let dd = descent_or_frees(descent, f.source())?;
            let fac = factorize(&f, &dd, max_cells)?;
            let mut text = vec![format!("cells: {}", fac.certificate.number_of_cells())];
            for (k, cell) in fac.certificate.cells.iter().enumerate() {
                text.push(format!("  cell {k}: D^{} {}", cell.degree, cell.module));
            }
            text.push("middle:".into());
            text.extend(complex_text(fac.middle(), "  "));
            text.push(format!("p quasi-isomorphism: {}", yes(fac.p.is_quasi_isomorphism())));
            text.push(format!("p degreewise surjective: {}", yes(fac.p.is_degreewise_surjective())));
            Out::ok(
                text,
                json!({
                    "cells": fac.certificate.number_of_cells(),
                    "i": fac.i.to_value(),
                    "p": fac.p.to_value(),
                }),
            )
        }
        Cmd::VerifyDescent { input, probe } => {
            let dd: DescentData = io::read_file(&input)?;
            let probes = probe.iter().map(|p| io::read_file(p)).collect::<Result<Vec<Complex>>>()?;
            let report = verify_descent(&dd, &probes)?;
            let text = report
                .items
                .iter()
                .map(|i| format!("{} {}: {}", if i.passed { "PASS" } else { "FAIL" }, i.name, i.detail))
                .collect();
            let items: Vec<Value> = report
                .items
                .iter()
                .map(|i| json!({"name": i.name, "passed": i.passed, "detail": i.detail}))
                .collect();
            Out::check(text, json!({"passed": report.passed(), "items": items}), report.passed())
        }
        Cmd::Localize { input, tset, steps, range } => {
            let range = range_of(range)?;
            let c: Complex = io::read_file(&input)?;
            let doc: TSetDoc = io::read_file(&tset)?;
            let tower = t_cell_tower(&c, &doc.tset, steps, range)?;
            let mut text = Vec::new();
            let mut stages = Vec::new();
            for (k, stage) in tower.stages.iter().enumerate() {
                let cohomology: Vec<String> = stage.degrees().map(|n| format!("H^{n} = {}", stage.homology(n))).collect();
                text.push(format!(
                    "stage {k}: {}",
                    if cohomology.is_empty() { "0".into() } else { cohomology.join(", ") }
                ));
                let coned = tower.log.get(k).cloned().unwrap_or_default();
                for a in &coned {
                    text.push(format!("  cone off T{} at shift {} (class {} of {})", a.t_index, a.shift, a.generator, a.group));
                }
                let comparison = tower.composite(k);
                stages.push(json!({
                    "complex": stage.to_value(),
                    "comparison": comparison.to_value(),
                    "coned_off": coned.iter().map(|a| json!({
                        "t_index": a.t_index, "shift": a.shift, "generator": a.generator, "group": a.group.to_value(),
                    })).collect::<Vec<_>>(),
                }));
            }
            text.push(format!("residual classes: {}", tower.residual.len()));
            Out::ok(text, json!({"stages": stages, "residual": tower.residual.len()}))
        }
        Cmd::ProbeMonoidAxiom { input, j_index, range, descent } => {
            let range = range_of(range)?.unwrap_or((-2, 2));
            let c: Complex = io::read_file(&input)?;
            let dd = descent_or_frees(descent, &c)?;
            let js = generating_trivial_cofibrations(&dd, Some(range))?;
            let Some(j) = js.get(j_index) else {
                return Err(Failure::Usage(format!(
                    "--j-index {j_index} is out of range: J has {} members over degrees {} to {}",
                    js.len(),
                    range.0,
                    range.1
                )));
            };
            let passed = monoid_axiom_probe(&c, j, &dd)?;
            let text = vec![
                format!("j_{j_index}: {} → {}", describe(j.source()), describe(j.target())),
                format!("C ⊗ j injective and a quasi-isomorphism: {}", yes(passed)),
            ];
            Out::check(text, json!({"j_index": j_index, "j": j.to_value(), "passed": passed}), passed)
        }
        Cmd::Spectrum(sc) => spectrum(sc)?,
        Cmd::Present(pc) => present(pc)?,
        Cmd::Selftest { criterion } => {
            let seed = selftest::seed_from_env();
            let ids: Vec<usize> = match criterion {
                Some(k) => vec![k as usize],
                None => (1..=10).collect(),
            };
            let outcomes: Vec<_> = ids.iter().map(|&id| selftest::run(id, seed)).collect();
            let passed = outcomes.iter().all(|o| o.passed);
            let mut text = vec![format!("seed {seed}")];
            text.extend(outcomes.iter().map(ToString::to_string));
            let json = json!({
                "seed": seed,
                "criteria": outcomes.iter().map(|o| json!({
                    "id": o.id, "name": o.name, "passed": o.passed, "detail": o.detail,
                })).collect::<Vec<_>>(),
            });
            Out::check(text, json, passed)
        }
    })
}

/// Bounds and ranks of a complex on one line.
fn describe(c: &Complex) -> String {
    if c.is_zero() {
        return "0".into();
    }
    c.degrees()
        .map(|n| format!("{}@{n}", c.module(n)))
        .collect::<Vec<_>>()
        .join(" → ")
}

fn spectrum(cmd: SpectrumCmd) -> std::result::Result<Out, Failure> {
    Ok(match cmd {
        SpectrumCmd::Validate { input } => {
            let e: Spectrum = io::read_file(&input)?;
            let report = validate_spectrum(&e)?;
            let mut text = vec![format!("truncation {}, ranks {:?}", e.truncation(), e.seq().ranks())];
            text.extend(report.coxeter.iter().map(|c| format!("coxeter: {c}")));
            text.extend(report.failures.iter().map(|f| format!("equivariance: {f}")));
            text.push(if report.passed() { "valid".into() } else { "invalid".into() });
            let json = json!({
                "passed": report.passed(),
                "coxeter": report.coxeter,
                "equivariance": report.failures.iter().map(ToString::to_string).collect::<Vec<_>>(),
            });
            Out::check(text, json, report.passed())
        }
        SpectrumCmd::Suspend { input } => {
            let e: Spectrum = io::read_file(&input)?;
            let maps = suspension_map(&e)?;
            let text = maps
                .iter()
                .enumerate()
                .map(|(n, f)| format!("E_{n} ⊗ S → E_{}: quasi-isomorphism {}", n + 1, yes(f.is_quasi_isomorphism())))
                .collect();
            let json = json!({
                "maps": maps.iter().map(|f| json!({
                    "map": f.to_value(), "quasi_isomorphism": f.is_quasi_isomorphism(),
                })).collect::<Vec<_>>(),
            });
            Out::ok(text, json)
        }
        SpectrumCmd::WeakOmega { input, range, descent } => {
            let range = range_of(range)?;
            let e: Spectrum = io::read_file(&input)?;
            let dd = descent.map(|p| io::read_file::<DescentData>(&p)).transpose()?;
            let report = is_weak_omega_spectrum(&e, dd.as_ref(), None, range)?;
            let mut text = vec![format!("weak Ω: {}", yes(report.is_weak_omega()))];
            if !report.adjoint_failures.is_empty() {
                text.push(format!("adjoint fails at levels {:?}", report.adjoint_failures));
            }
            if dd.is_some() {
                text.push(format!("levelwise local: {}", yes(report.local_failures.is_empty())));
            }
            let json = json!({
                "weak_omega": report.is_weak_omega(),
                "adjoint_failures": report.adjoint_failures,
                "local_failures": report.local_failures,
            });
            Out::check(text, json, report.is_weak_omega())
        }
    })
}

fn present(cmd: PresentCmd) -> std::result::Result<Out, Failure> {
    Ok(match cmd {
        PresentCmd::Restrict { input, ranks } => {
            let f: Complex = io::read_file(&input)?;
            let cat = AddCategory::new(f.ring().clone(), ranks).map_err(|e| Failure::Usage(e.to_string()))?;
            let m = restrict(&f, &cat);
            let mut text = Vec::new();
            for (o, r) in cat.ranks().iter().enumerate() {
                text.push(format!("M(R^{r}):"));
                text.extend(complex_text(m.value(o), "  "));
            }
            Out::ok(text, m.to_value())
        }
        PresentCmd::Extend { input } => {
            let m: AComplex = io::read_file(&input)?;
            emit_complex(&extend(&m)?)
        }
        PresentCmd::CheckAdjunction { x, f, budget } => {
            let x: AComplex = io::read_file(&x)?;
            let f: Complex = io::read_file(&f)?;
            let r = adjunction_check(&x, &f, budget)?;
            let mut text = vec![
                format!("extension triangle: {}", yes(r.extend_triangle)),
                format!("restriction triangle: {}", yes(r.restrict_triangle)),
            ];
            match (r.counts, r.bijective) {
                (Some((a, b)), Some(bij)) => {
                    text.push(format!("|Hom(i_!X, F)| = {a}, |Nat(X, i^*F)| = {b}, bijection: {}", yes(bij)))
                }
                _ => text.push("hom sets not enumerated".into()),
            }
            let json = json!({
                "passed": r.passed(),
                "extend_triangle": r.extend_triangle,
                "restrict_triangle": r.restrict_triangle,
                "counts": r.counts.map(|(a, b)| vec![a, b]),
                "bijective": r.bijective,
            });
            Out::check(text, json, r.passed())
        }
    })
}
