//! The `leviweb` command-line driver.
//!
//! Exit codes: 0 success, 1 the input was rejected, 2 the pipeline failed,
//! 3 bad command-line usage.

use std::collections::HashMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use super::csv::write_trace_csv;
use super::print::format_complex;
use super::report::Report;
use super::{parse_point, print_canonical, InputMode, ProblemInput};
use crate::algebra::{GaussRational, MultiPoly, NumPoly, ResultantMethod, Var};
use crate::hypersurface::{
    hermitian_symmetry_check, is_dicritical, levi_flat_check, make_hypersurface, real_slots, real_values,
    sample_regular_points, segre_at, Hypersurface,
};
use crate::leaf::{trace_leaf, verify_trace, Check, CheckStatus, TraceConfig};
use crate::par::Execution;
use crate::roots::find_roots;
use crate::web::{extract_web, first_integral_values, param_membership, ExtractOptions, WebSystem};

#[derive(Parser, Debug)]
#[command(name = "leviweb", version, about = "Holomorphic webs of real algebraic Levi-flat hypersurfaces")]
struct Cli {
    /// Run without the thread pool.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Sylvester,
    Subresultant,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reality, Hermitian symmetry and sampled Levi-flatness.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// The Segre variety of a point and its slice by the z_n axis.
    Segre {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Whether the Segre variety of a point is all of C^n.
    Dicritical {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Eliminate the line parameter and print the web.
    Extract {
        file: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// `a1,..,an;b1,..,bn`
        #[arg(long, allow_hyphen_values = true)]
        line: Option<String>,
        #[arg(long, value_enum, default_value_t = Method::Subresultant)]
        method: Method,
    },
    /// Values of the first integral at a point.
    FirstIntegral {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Trace a leaf of the web.
    Trace {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        start: String,
        /// Index into the sorted roots of each Phi_j at the start.
        #[arg(long, default_value_t = 0)]
        branch: usize,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        /// Direction in z' (default e_1).
        #[arg(long, allow_hyphen_values = true)]
        direction: Option<String>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        emit_csv: Option<PathBuf>,
    },
    /// Whether a point lies on some member H(., zeta) = 0 with |zeta| = 1.
    Membership {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        seed: Option<u64>,
    },
}

enum Failure {
    Validation(String),
    Pipeline(String),
    Usage(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Validation(_) => 1,
            Failure::Pipeline(_) => 2,
            Failure::Usage(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Validation(m) | Failure::Pipeline(m) | Failure::Usage(m) => m,
        }
    }
}

pub fn run_cli() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    run(&args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// Runs the driver on `args` (including the program name).
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let exec = if cli.sequential { Execution::Sequential } else { Execution::default() };
    match dispatch(cli.command, exec) {
        Ok(report) => {
            let _ = write!(out, "{report}");
            0
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn load(path: &Path) -> Result<ProblemInput, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))?;
    ProblemInput::from_text(&text).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
}

fn hypersurface(input: &ProblemInput, what: &str) -> Result<Hypersurface, Failure> {
    if input.mode != InputMode::Rho {
        return Err(Failure::Validation(format!("{what} needs mode = rho")));
    }
    let rho = input.rho().map_err(|e| Failure::Validation(e.to_string()))?;
    make_hypersurface(rho, input.n).map_err(|e| Failure::Validation(e.to_string()))
}

fn exact_point(text: &str, n: usize) -> Result<Vec<GaussRational>, Failure> {
    let p = parse_point(text).map_err(|e| Failure::Usage(format!("point `{text}`: {e}")))?;
    if p.len() != n {
        return Err(Failure::Usage(format!("point `{text}` has {} coordinates, expected {n}", p.len())));
    }
    Ok(p)
}

fn float_point(text: &str, n: usize) -> Result<Vec<Complex64>, Failure> {
    Ok(exact_point(text, n)?.iter().map(GaussRational::to_complex).collect())
}

fn extract(input: &mut ProblemInput, seed: Option<u64>, method: ResultantMethod, exec: Execution) -> Result<WebSystem, Failure> {
    if seed.is_some() {
        input.seed = seed;
    }
    extract_web(input, &ExtractOptions { method, exec }).map_err(|e| {
        if e.is_validation() {
            Failure::Validation(e.to_string())
        } else {
            Failure::Pipeline(e.to_string())
        }
    })
}

fn dispatch(cmd: Command, exec: Execution) -> Result<Report, Failure> {
    let mut r = Report::new();
    match cmd {
        Command::Check { file, samples, radius, seed, tol } => {
            let input = load(&file)?;
            let h = hypersurface(&input, "check")?;
            r.push("reality", "ok");
            r.push("hermitian", hermitian_symmetry_check(&h));
            let seed = seed.or(input.seed).unwrap_or(0);
            let s = sample_regular_points(&h, samples, radius, seed, exec).map_err(|e| Failure::Pipeline(e.to_string()))?;
            let levi = levi_flat_check(&h, &s, tol);
            r.push("samples", levi.samples);
            r.push("levi-ratio", format!("{:.3e}", levi.worst_ratio));
            r.push("levi-flat", levi.flat);
        }
        Command::Segre { file, point } => {
            let input = load(&file)?;
            let h = hypersurface(&input, "segre")?;
            let w = exact_point(&point, input.n)?;
            let q = segre_at(&h, &w);
            r.push("segre", print_canonical(&q));
            r.push("dicritical", q.is_zero());
            if !q.is_zero() {
                // The slice by the z_n axis: roots in z_n with z' = 0.
                let n = input.n;
                let bindings: HashMap<Var, MultiPoly> = (1..n).map(|j| (Var::Z(j as u8), MultiPoly::zero())).collect();
                let axis = q.substitute(&bindings);
                let coeffs: Vec<Complex64> = axis
                    .coeffs_in(Var::Z(n as u8))
                    .iter()
                    .map(|c| c.constant_value().map_or(Complex64::new(0.0, 0.0), |v| v.to_complex()))
                    .collect();
                match find_roots(&coeffs, 1e-13) {
                    Ok(roots) => {
                        r.push("axis-roots", roots.values.len());
                        for (k, v) in roots.values.iter().enumerate() {
                            r.push(format!("z{n}_{}", k + 1), format_complex(*v));
                        }
                    }
                    Err(_) => {
                        r.push("axis-roots", "all");
                    }
                }
            }
        }
        Command::Dicritical { file, point } => {
            let input = load(&file)?;
            let h = hypersurface(&input, "dicritical")?;
            let w = exact_point(&point, input.n)?;
            r.push("dicritical", is_dicritical(&h, &w));
        }
        Command::Extract { file, seed, line, method } => {
            let mut input = load(&file)?;
            if let Some(l) = line {
                let parsed = super::input::parse_line(&l).map_err(|e| Failure::Usage(format!("--line: {e}")))?;
                if parsed.0.len() != input.n {
                    return Err(Failure::Usage(format!("--line has dimension {}, expected {}", parsed.0.len(), input.n)));
                }
                input.line = Some(parsed);
            }
            let method = match method {
                Method::Sylvester => ResultantMethod::Sylvester,
                Method::Subresultant => ResultantMethod::Subresultant,
            };
            let w = extract(&mut input, seed, method, exec)?;
            web_report(&mut r, &w, input.seed.unwrap_or(0));
        }
        Command::FirstIntegral { file, point, seed } => {
            let mut input = load(&file)?;
            let z = float_point(&point, input.n)?;
            let w = extract(&mut input, seed, ResultantMethod::default(), exec)?;
            let zw = w.to_working(&z);
            let values = first_integral_values(&w.family, &zw).map_err(|e| Failure::Pipeline(e.to_string()))?;
            r.push("values", values.len());
            for (k, v) in values.iter().enumerate() {
                r.push(format!("t{}", k + 1), format_complex(*v));
            }
        }
        Command::Membership { file, point, seed } => {
            let mut input = load(&file)?;
            if input.mode != InputMode::Param {
                return Err(Failure::Validation("membership needs mode = param".into()));
            }
            let z = float_point(&point, input.n)?;
            let w = extract(&mut input, seed, ResultantMethod::default(), exec)?;
            let member = param_membership(&w.family, &z).map_err(|e| Failure::Pipeline(e.to_string()))?;
            let values = first_integral_values(&w.family, &z).map_err(|e| Failure::Pipeline(e.to_string()))?;
            r.push("member", member);
            for (k, v) in values.iter().enumerate() {
                r.push(format!("zeta{}", k + 1), format!("{} |{:.12e}|", format_complex(*v), v.norm()));
            }
        }
        Command::Trace { file, start, branch, steps, step, direction, tol, seed, emit_csv } => {
            let mut input = load(&file)?;
            let n = input.n;
            let z0 = float_point(&start, n)?;
            let direction = match direction {
                Some(d) => Some(float_point(&d, n - 1)?),
                None => None,
            };
            if !(step > 0.0) || !(tol > 0.0) {
                return Err(Failure::Usage("--step and --tol must be positive".into()));
            }
            let w = extract(&mut input, seed, ResultantMethod::default(), exec)?;
            let cfg = TraceConfig { step, max_steps: steps, tol, direction, ..Default::default() };
            let tr = trace_leaf(&w, &w.to_working(&z0), branch, &cfg).map_err(|e| Failure::Pipeline(e.to_string()))?;
            let v = verify_trace(&tr, w.hypersurface.as_ref(), &w.family, tol);
            r.push("coordinates", if w.transform.is_some() { "working" } else { "original" });
            r.push("t0", format_complex(tr.t0));
            r.push("steps", tr.points.len() - 1);
            r.push("halvings", tr.halvings);
            r.push("max-phi-residual", format!("{:.3e}", tr.max_phi_residual));
            r.push("end", tr.points.last().expect("nonempty").iter().map(|c| format_complex(*c)).collect::<Vec<_>>().join(", "));
            let show = |c: Check| match c.status {
                CheckStatus::Skipped => c.status.to_string(),
                _ => format!("{} ({:.3e})", c.status, c.worst),
            };
            r.push("on-gamma", show(v.on_gamma));
            r.push("in-segre", show(v.in_segre));
            r.push("integral", show(v.integral));
            if let Some(path) = emit_csv {
                let resid = trace_residuals(&w, &tr.points, tr.t0);
                let mut buf = Vec::new();
                write_trace_csv(&mut buf, &tr, &resid).expect("write to memory");
                std::fs::write(&path, buf).map_err(|e| Failure::Pipeline(format!("{}: {e}", path.display())))?;
                r.push("csv", path.display());
            }
        }
    }
    Ok(r)
}

/// `|ρ(z)|` in rho mode, `|Ĥ(z, t0)|` in param mode.
fn trace_residuals(w: &WebSystem, points: &[Vec<Complex64>], t0: Complex64) -> Vec<f64> {
    match &w.hypersurface {
        Some(h) => {
            let rho = NumPoly::from_poly(&h.rho, &real_slots(h.n));
            points.iter().map(|z| rho.eval(&real_values(z)).norm()).collect()
        }
        None => {
            let slots: Vec<Var> = (1..=w.n).map(|k| Var::Z(k as u8)).chain(std::iter::once(Var::T)).collect();
            let hp = NumPoly::from_poly(&w.family.h, &slots);
            points
                .iter()
                .map(|z| {
                    let vals: Vec<Complex64> = z.iter().copied().chain(std::iter::once(t0)).collect();
                    hp.eval(&vals).norm()
                })
                .collect()
        }
    }
}

fn web_report(r: &mut Report, w: &WebSystem, seed: u64) {
    r.push("mode", w.mode);
    r.push("n", w.n);
    r.push("seed", seed);
    match &w.transform {
        Some(m) => r.push("transform", m),
        None => r.push("transform", "identity"),
    };
    match &w.line {
        Some(l) => r.push("line", l),
        None => r.push("line", "none"),
    };
    r.push("H", print_canonical(&w.family.h));
    if w.transform.is_some() {
        r.push("H-original", print_canonical(&w.h_original));
    }
    r.push("deg-t", w.family.degree());
    for e in &w.eliminations {
        let j = e.j;
        r.push(format!("G{j}"), print_canonical(&e.g));
        r.push(format!("route{j}"), if e.t_free { "t-free" } else { "resultant" });
        r.push(format!("R{j}"), print_canonical(&e.raw));
        r.push(format!("content{j}"), print_canonical(&e.content));
        r.push(format!("Phi{j}"), print_canonical(&e.phi));
        r.push(format!("d{j}"), e.degree);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(list: &[&str]) -> Vec<String> {
        std::iter::once("leviweb").chain(list.iter().copied()).map(String::from).collect()
    }

    #[test]
    fn usage_errors_exit_3() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(&args(&["frobnicate"]), &mut out, &mut err), 3);
        assert_eq!(run(&args(&["extract"]), &mut out, &mut err), 3);
        assert_eq!(run(&args(&["--help"]), &mut out, &mut err), 0);
    }

    #[test]
    fn missing_file_is_a_validation_failure() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(&args(&["extract", "/nonexistent/x.lv"]), &mut out, &mut err), 1);
    }
}
