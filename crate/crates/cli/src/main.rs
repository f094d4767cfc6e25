//! `singpert`: command-line front end of the singular-perturbation lab.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use singpert::diagnostics::{
    enumerate_partitions, growth_profile, integral_test, macaev_check, mass_detect,
    synthesis_defect, volterra_window_check, Rectangle,
};
use singpert::engine::matrix::choose_shift;
use singpert::engine::{
    adjoint_check, build_matrix, build_matrix_rank_n, compute_spectrum, eigensystem,
    oracle_spectrum, phi_zeros, shift_identity, RoutePreference, MATCH_TOL,
};
use singpert::gallery::section4::{default_bits, default_spectrum};
use singpert::gallery::{
    lacunary_sequence, mittag_leffler_check, section4_build, sharp_instance, sharp_zero_freeness,
    synthesis_gap_check,
};
use singpert::herglotz::{build_model, clark_measure, Delta, ModelPair, Which};
use singpert::io::{
    read_problem, read_sequence, sha256_hex, write_csv, write_json, Problem, RunManifest,
};
use singpert::spectral_data::{
    classify_real_type, generalized_weak_report, validate, validate_rank_n,
};
use singpert::{Error, C64};

#[derive(Parser)]
#[command(
    name = "singpert",
    version,
    about = "Functional-model lab for rank-one singular perturbations"
)]
struct Cli {
    /// Tolerance for pass/fail decisions (command specific default)
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Output root; defaults to $SINGPERT_OUT, then ./out
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Do not print the result JSON
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ProblemArgs {
    /// Problem JSON file
    problem: PathBuf,
    /// Real constant of rho: `auto` or a number
    #[arg(long, default_value = "auto")]
    delta: String,
}

#[derive(Subcommand)]
enum Command {
    /// Admissibility report for a problem file
    Validate { problem: PathBuf },
    /// Evaluate a model function on a grid
    Model {
        #[command(flatten)]
        p: ProblemArgs,
        /// beta, rho, theta, phi or phi_tilde
        #[arg(long, default_value = "phi")]
        which: String,
        /// x0,x1,y0,y1
        #[arg(long, default_value = "-10,10,0.1,10")]
        grid: String,
        #[arg(long, default_value_t = 21)]
        n: usize,
    },
    /// Matrix spectrum against the zeros of the generating function
    Spectrum {
        #[command(flatten)]
        p: ProblemArgs,
        #[arg(long, default_value = "auto")]
        route: String,
    },
    /// Oracle against model, with the structural identities
    Compare {
        #[command(flatten)]
        p: ProblemArgs,
    },
    /// Clark measure for a point on the unit circle
    Clark {
        #[command(flatten)]
        p: ProblemArgs,
        /// re,im
        #[arg(long, default_value = "-1,0", allow_hyphen_values = true)]
        zeta: String,
    },
    /// Growth, integrability and completeness diagnostics
    #[command(subcommand)]
    Diagnose(Diagnose),
    /// Worked constructions
    #[command(subcommand)]
    Gallery(Gallery),
}

#[derive(Subcommand)]
enum Diagnose {
    /// Envelope of y|phi(iy)| along the imaginary axis
    Growth {
        #[command(flatten)]
        p: ProblemArgs,
        #[arg(long, default_value_t = 1e4)]
        y_max: f64,
        #[arg(long, default_value_t = 200)]
        points: usize,
    },
    /// Weighted integrability of phi on a horizontal line
    Integral {
        #[command(flatten)]
        p: ProblemArgs,
        #[arg(long, default_value_t = 1.0)]
        power: f64,
        #[arg(long, default_value_t = 1.0)]
        tau: f64,
        #[arg(long, default_value_t = 0.0)]
        eta: f64,
    },
    /// Trace-class hypotheses of the Macaev theorem
    Macaev {
        #[command(flatten)]
        p: ProblemArgs,
    },
    /// Point mass at infinity of a Clark measure
    Mass {
        #[command(flatten)]
        p: ProblemArgs,
        #[arg(long, default_value = "-1,0", allow_hyphen_values = true)]
        zeta: String,
        #[arg(long, default_value_t = 1e6)]
        y_max: f64,
    },
    /// Synthesis defect of mixed eigenvector systems
    Synthesis {
        #[command(flatten)]
        p: ProblemArgs,
        /// 1-based indices replaced by adjoint vectors; all partitions when absent
        #[arg(long, value_delimiter = ',')]
        j2: Option<Vec<usize>>,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Zero count of phi in a rectangle by the argument principle
    VolterraWindow {
        #[command(flatten)]
        p: ProblemArgs,
        /// x0,x1,y0,y1 with y0 >= 0
        #[arg(long, allow_hyphen_values = true)]
        rect: String,
    },
}

#[derive(Subcommand)]
enum Gallery {
    /// Zero-freeness of the sharp instance
    Sharp {
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        alpha1: f64,
        #[arg(long, default_value_t = 0.0)]
        alpha2: f64,
        #[arg(long, default_value_t = 500)]
        n: usize,
        #[arg(long, default_value = "0.1,50,0,10")]
        rect: String,
    },
    /// Mittag-Leffler expansion of 1/cos(pi sqrt z)
    MlCheck {
        #[arg(long, default_value = "-1,0", allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = 1000)]
        n: usize,
    },
    /// Lacunary construction with extended precision
    Section4 {
        #[arg(long, default_value_t = 30)]
        k: usize,
        /// Spectrum file; t_n = n³ when absent
        #[arg(long)]
        spectrum: Option<PathBuf>,
        #[arg(long, default_value_t = 20_000)]
        len: usize,
        #[arg(long)]
        bits: Option<usize>,
    },
    /// Lacunary subsequence of a spectrum
    Lacunary {
        #[arg(long)]
        spectrum: PathBuf,
    },
    /// Gap and little-o conditions for a synthesis sequence
    Gaps {
        #[arg(long)]
        spectrum: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 2.0)]
        power: f64,
    },
}

enum Failure {
    Run(Error),
    Tolerance(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

struct Ctx {
    out: Option<PathBuf>,
    seed: u64,
    quiet: bool,
    tol: Option<f64>,
}

impl Ctx {
    fn emit<T: Serialize>(
        &self,
        command: &str,
        params: Value,
        input: Option<&Problem>,
        result: &T,
    ) -> Result<(RunManifest, PathBuf), Error> {
        let params: BTreeMap<String, Value> = match params {
            Value::Object(m) => m.into_iter().collect(),
            _ => BTreeMap::new(),
        };
        let manifest = RunManifest::new(command, params, input, self.seed);
        let dir = manifest.output_dir(self.out.as_deref());
        let path = write_json(&dir, "result.json", &manifest, result)?;
        if !self.quiet {
            println!("{}", serde_json::to_string_pretty(result)?);
            eprintln!("wrote {}", path.display());
        }
        Ok((manifest, dir))
    }
}

fn parse_delta(s: &str) -> Result<Delta, Error> {
    if s == "auto" {
        return Ok(Delta::Auto);
    }
    s.parse::<f64>()
        .map(Delta::Value)
        .map_err(|e| Error::BadParameters(format!("delta '{s}': {e}")))
}

fn parse_complex(s: &str) -> Result<C64, Error> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Error::BadParameters(format!("complex '{s}': {e}")))?;
    match v.as_slice() {
        [re] => Ok(C64::new(*re, 0.0)),
        [re, im] => Ok(C64::new(*re, *im)),
        _ => Err(Error::BadParameters(format!("complex '{s}' needs re,im"))),
    }
}

fn load(p: &ProblemArgs) -> Result<(Problem, Delta), Error> {
    Ok((read_problem(&p.problem)?, parse_delta(&p.delta)?))
}

fn load_model(p: &ProblemArgs) -> Result<(Problem, ModelPair), Error> {
    let (prob, delta) = load(p)?;
    let model = build_model(&prob.rank_one()?, delta)?;
    Ok((prob, model))
}

fn sequence_hash(path: &Path) -> Result<String, Error> {
    Ok(sha256_hex(&std::fs::read(path)?))
}

fn pairs(z: &[C64]) -> Vec<[f64; 2]> {
    z.iter().map(|z| [z.re, z.im]).collect()
}

fn run(cli: Cli) -> Outcome {
    let ctx = Ctx {
        out: cli.out,
        seed: cli.seed,
        quiet: cli.quiet,
        tol: cli.tol,
    };
    match cli.command {
        Command::Validate { problem } => {
            let prob = read_problem(&problem)?;
            let report = match &prob {
                Problem::RankOne(d) => json!({
                    "rank": 1,
                    "admissibility": validate(d),
                    "real_type": classify_real_type(d),
                    "generalized_weak": generalized_weak_report(d),
                }),
                Problem::RankN(d) => json!({
                    "rank": d.rank(),
                    "admissibility": validate_rank_n(d),
                }),
            };
            ctx.emit("validate", json!({}), Some(&prob), &report)?;
        }
        Command::Model { p, which, grid, n } => {
            let (prob, model) = load_model(&p)?;
            let w: Which = which.parse()?;
            let rect: Vec<f64> = grid
                .split(',')
                .map(|x| x.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|e| Error::BadParameters(format!("grid '{grid}': {e}")))?;
            let [x0, x1, y0, y1] = rect[..] else {
                return Err(
                    Error::BadParameters(format!("grid '{grid}' needs x0,x1,y0,y1")).into(),
                );
            };
            let n = n.max(2);
            let mut rows = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    let z = C64::new(
                        x0 + (x1 - x0) * i as f64 / (n - 1) as f64,
                        y0 + (y1 - y0) * j as f64 / (n - 1) as f64,
                    );
                    let f = model.eval(w, z).unwrap_or(C64::new(f64::NAN, f64::NAN));
                    rows.push(vec![z.re, z.im, f.re, f.im]);
                }
            }
            let summary = json!({
                "which": which,
                "points": rows.len(),
                "beta_at_infinity": [model.beta_at_infinity().re, model.beta_at_infinity().im],
                "rho_at_infinity": model.rho_at_infinity(),
                "theta_at_infinity": [model.theta_at_infinity().re, model.theta_at_infinity().im],
            });
            let params = json!({"delta": p.delta, "which": which, "grid": grid, "n": n});
            let (m, dir) = ctx.emit("model", params, Some(&prob), &summary)?;
            write_csv(
                &dir,
                "eval.csv",
                &m,
                &["re_z", "im_z", "re_f", "im_f"],
                &rows,
            )?;
        }
        Command::Spectrum { p, route } => {
            let (prob, delta) = load(&p)?;
            let pref: RoutePreference = route.parse()?;
            let tol = ctx.tol.unwrap_or(MATCH_TOL);
            let params = json!({"delta": p.delta, "route": route, "tol": tol});
            match &prob {
                Problem::RankN(d) if d.rank() > 1 => {
                    let m = build_matrix_rank_n(d, pref)?;
                    let o = oracle_spectrum(&m)?;
                    let res = json!({
                        "route": m.route,
                        "oracle": pairs(&o.eigenvalues),
                        "model_zeros": null,
                        "inverse_residual": m.inverse_residual(),
                    });
                    ctx.emit("spectrum", params, Some(&prob), &res)?;
                }
                _ => {
                    let s = compute_spectrum(&prob.rank_one()?, pref, delta)?;
                    ctx.emit("spectrum", params, Some(&prob), &s)?;
                    if !s.matches(tol) {
                        return Err(Failure::Tolerance(format!(
                            "oracle and model spectra differ by {:e} > {:e}",
                            s.match_residual,
                            tol * s.spectral_scale
                        )));
                    }
                }
            }
        }
        Command::Compare { p } => {
            let (prob, delta) = load(&p)?;
            let d = prob.rank_one()?;
            let adm = validate(&d);
            if !adm.condition_a {
                return Err(Error::Admissibility(format!(
                    "kappa - omega = {:e} is below the threshold {:e}",
                    adm.witnesses.distance, adm.witnesses.threshold
                ))
                .into());
            }
            let tol = ctx.tol.unwrap_or(MATCH_TOL);
            let s = compute_spectrum(&d, RoutePreference::Auto, delta)?;
            let rn = d.to_rank_n();
            let adj = adjoint_check(&rn)?;
            let shift = shift_identity(&rn, C64::new(choose_shift(&rn)?, 0.0))?;
            let rel = s.match_residual / s.spectral_scale;
            let res = json!({
                "match_residual": s.match_residual,
                "relative_residual": rel,
                "hausdorff": s.hausdorff,
                "spectral_scale": s.spectral_scale,
                "inverse_residual": s.inverse_residual,
                "adjoint": adj,
                "shift": shift,
                "real_type": classify_real_type(&d),
            });
            ctx.emit(
                "compare",
                json!({"delta": p.delta, "tol": tol}),
                Some(&prob),
                &res,
            )?;
            if rel > tol {
                return Err(Failure::Tolerance(format!(
                    "match residual {rel:e} > {tol:e}"
                )));
            }
        }
        Command::Clark { p, zeta } => {
            let (prob, model) = load_model(&p)?;
            let z = parse_complex(&zeta)?;
            let cm = clark_measure(&model, z)?;
            ctx.emit(
                "clark",
                json!({"delta": p.delta, "zeta": zeta}),
                Some(&prob),
                &cm,
            )?;
        }
        Command::Diagnose(d) => diagnose(&ctx, d)?,
        Command::Gallery(g) => gallery(&ctx, g)?,
    }
    Ok(())
}

fn diagnose(ctx: &Ctx, d: Diagnose) -> Outcome {
    match d {
        Diagnose::Growth { p, y_max, points } => {
            let (prob, model) = load_model(&p)?;
            let g = growth_profile(&model, y_max, points);
            let params = json!({"delta": p.delta, "y_max": y_max, "points": points});
            let (m, dir) = ctx.emit("diagnose-growth", params, Some(&prob), &g)?;
            let rows: Vec<Vec<f64>> = (0..g.y_grid.len())
                .map(|k| vec![g.y_grid[k], g.phi_abs[k], g.beta_abs[k], g.phi_tilde_abs[k]])
                .collect();
            write_csv(
                &dir,
                "growth.csv",
                &m,
                &["y", "abs_phi", "abs_beta", "abs_phi_tilde"],
                &rows,
            )?;
        }
        Diagnose::Integral { p, power, tau, eta } => {
            let (prob, model) = load_model(&p)?;
            let r = integral_test(&model, power, tau, eta)?;
            let params = json!({"delta": p.delta, "power": power, "tau": tau, "eta": eta});
            ctx.emit("diagnose-integral", params, Some(&prob), &r)?;
        }
        Diagnose::Macaev { p } => {
            let prob = read_problem(&p.problem)?;
            let r = macaev_check(&prob.rank_n());
            ctx.emit("diagnose-macaev", json!({}), Some(&prob), &r)?;
        }
        Diagnose::Mass { p, zeta, y_max } => {
            let (prob, model) = load_model(&p)?;
            let z = parse_complex(&zeta)?;
            let tol = ctx.tol.unwrap_or(1e-10);
            let r = mass_detect(&model, z, tol, y_max)?;
            let params = json!({"delta": p.delta, "zeta": zeta, "tol": tol, "y_max": y_max});
            ctx.emit("diagnose-mass", params, Some(&prob), &r)?;
        }
        Diagnose::Synthesis { p, j2, budget } => {
            let (prob, model) = load_model(&p)?;
            let d = prob.rank_one()?;
            let zeros = phi_zeros(&model)?;
            let mat = build_matrix(&d, RoutePreference::Auto)?;
            let es = eigensystem(&model, &zeros, Some(&mat))?;
            let mu = d.base.mu();
            let params = json!({"delta": p.delta, "j2": j2, "budget": budget});
            match j2 {
                Some(j2) => {
                    if j2.iter().any(|&j| j == 0 || j > es.lambdas.len()) {
                        return Err(Error::BadParameters(format!(
                            "j2 indices must lie in 1..={}",
                            es.lambdas.len()
                        ))
                        .into());
                    }
                    let zero_based: Vec<usize> = j2.iter().map(|j| j - 1).collect();
                    let r = synthesis_defect(&es, &mu, &zero_based)?;
                    ctx.emit("diagnose-synthesis", params, Some(&prob), &r)?;
                }
                None => {
                    let r = enumerate_partitions(&es, &mu, budget, ctx.seed)?;
                    ctx.emit("diagnose-synthesis", params, Some(&prob), &r)?;
                }
            }
        }
        Diagnose::VolterraWindow { p, rect } => {
            let (prob, model) = load_model(&p)?;
            let r: Rectangle = rect.parse()?;
            let w = volterra_window_check(&model, r)?;
            ctx.emit(
                "diagnose-volterra-window",
                json!({"delta": p.delta, "rect": rect}),
                Some(&prob),
                &w,
            )?;
        }
    }
    Ok(())
}

fn gallery(ctx: &Ctx, g: Gallery) -> Outcome {
    match g {
        Gallery::Sharp {
            eps,
            alpha1,
            alpha2,
            n,
            rect,
        } => {
            let inst = sharp_instance(eps, alpha1, alpha2, n)?;
            let r: Rectangle = rect.parse()?;
            let z = sharp_zero_freeness(&inst, r, 400)?;
            let res = json!({
                "n": n,
                "eps": inst.eps,
                "alpha1": alpha1,
                "alpha2": alpha2,
                "zero_freeness": z,
                "smoothness_a": inst.smoothness_a.last(),
                "smoothness_b": inst.smoothness_b.last(),
                "tails_monotone": inst.tails_monotone,
            });
            let params =
                json!({"eps": eps, "alpha1": alpha1, "alpha2": alpha2, "n": n, "rect": rect});
            let (m, dir) = ctx.emit("gallery-sharp", params, None, &res)?;
            let rows: Vec<Vec<f64>> = (0..n)
                .map(|k| vec![(k + 1) as f64, inst.smoothness_a[k], inst.smoothness_b[k]])
                .collect();
            write_csv(
                &dir,
                "smoothness.csv",
                &m,
                &["n", "partial_a", "partial_b"],
                &rows,
            )?;
            if z.zero_count != 0 {
                return Err(Failure::Tolerance(format!(
                    "{} zeros of phi in the window",
                    z.zero_count
                )));
            }
        }
        Gallery::MlCheck { z, n } => {
            let zz = parse_complex(&z)?;
            let r = mittag_leffler_check(zz, n)?;
            ctx.emit("gallery-ml-check", json!({"z": z, "n": n}), None, &r)?;
            if !r.within_bound {
                return Err(Failure::Tolerance(format!(
                    "error {:e} exceeds tail bound {:e}",
                    r.err, r.tail_bound
                )));
            }
        }
        Gallery::Section4 {
            k,
            spectrum,
            len,
            bits,
        } => {
            let (t, source) = match &spectrum {
                Some(path) => (read_sequence(path)?, json!(sequence_hash(path)?)),
                None => (default_spectrum(len), json!(format!("cubes:{len}"))),
            };
            let bits = bits.unwrap_or_else(default_bits);
            let pipe = section4_build(&t, k, bits)?;
            let params = json!({"k": k, "bits": bits, "spectrum": source});
            let (m, dir) = ctx.emit("gallery-section4", params, None, &pipe)?;
            let rows: Vec<Vec<f64>> = (0..pipe.range)
                .map(|i| {
                    vec![
                        (i + 1) as f64,
                        pipe.d_log10[i],
                        pipe.nu_log10[i],
                        pipe.residue_errors[i],
                    ]
                })
                .collect();
            write_csv(
                &dir,
                "coefficients.csv",
                &m,
                &["n", "log10_abs_d", "log10_nu", "residue_error"],
                &rows,
            )?;
            if !pipe.residue_pass || !pipe.one_zero_per_gap {
                return Err(Failure::Tolerance(format!(
                    "residue {:e}, one zero per gap: {}",
                    pipe.residue_max, pipe.one_zero_per_gap
                )));
            }
        }
        Gallery::Lacunary { spectrum } => {
            let t = read_sequence(&spectrum)?;
            let r = lacunary_sequence(&t)?;
            ctx.emit(
                "gallery-lacunary",
                json!({"spectrum": sequence_hash(&spectrum)?}),
                None,
                &r,
            )?;
        }
        Gallery::Gaps { spectrum, c, power } => {
            let s = read_sequence(&spectrum)?;
            let r = synthesis_gap_check(&s, c, power)?;
            let params = json!({"spectrum": sequence_hash(&spectrum)?, "c": c, "power": power});
            ctx.emit("gallery-gaps", params, None, &r)?;
        }
    }
    Ok(())
}

fn exit_code(e: &Error) -> u8 {
    let input = e.is_input_error()
        || matches!(
            e,
            Error::Io(_)
                | Error::EvaluationAtPole { .. }
                | Error::NearPole { .. }
                | Error::DegenerateZeta { .. }
                | Error::ChainRequired { .. }
                | Error::OrderTooHigh { .. }
                | Error::DegreeOverflow { .. }
        );
    if input {
        2
    } else {
        4
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Tolerance(msg)) => {
            eprintln!("tolerance failure: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Run(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
