use std::fmt::Write as _;
use std::path::Path;

use anderson1d::fmt::sig12;
use anderson1d::montecarlo::{estimate_expected_count, run_experiment, CountMode, ExperimentConfig, Model, MAX_GAPS};
use anderson1d::randpot::{bernoulli_lattice, sample_covering, GapDistribution, Perturbation, PotentialRealization};
use anderson1d::rng;
use anderson1d::spectral::{
    bracket_counts_dn, count_with_bracketed_w, well_ground_asymptotic, well_ground_state, Boundary, CountCertificate,
    RefinePolicy, WellGeometry,
};
use anderson1d::theory::{borderline, expectation_bounds};

use crate::error::{CliError, CliResult};
use crate::params::Params;

const COMMON_KEYS: &[&str] = &["out", "workers"];
const DIST_KEYS: &[&str] = &["dist", "eta", "alpha", "xm", "q", "p"];
const W_KEYS: &[&str] = &["W", "C", "s", "beta", "knots"];
const REFINE_KEYS: &[&str] = &["refine_initial", "refine_max", "refine_tol"];

fn allowed(groups: &[&[&'static str]]) -> Vec<&'static str> {
    let mut v = COMMON_KEYS.to_vec();
    for g in groups {
        v.extend_from_slice(g);
    }
    v
}

/// Where gaps come from.
enum Source {
    Renewal(GapDistribution),
    /// Occupation probability of a unit cell.
    Bernoulli(f64),
}

impl Source {
    /// The gap law; lattice gaps are geometric with `q = 1 - p`.
    fn gap_law(&self) -> CliResult<GapDistribution> {
        Ok(match self {
            Self::Renewal(d) => *d,
            Self::Bernoulli(p) => GapDistribution::geometric(1.0 - p)?,
        })
    }
}

fn parse_source(p: &mut Params) -> CliResult<Source> {
    let name: String = p.require("dist")?;
    Ok(match name.as_str() {
        "exp" => Source::Renewal(GapDistribution::exponential(p.get_or("eta", 1.0)?)?),
        "stretched" => {
            Source::Renewal(GapDistribution::stretched_exponential(p.get_or("eta", 1.0)?, p.require("alpha")?)?)
        }
        "pareto" => Source::Renewal(GapDistribution::pareto(p.get_or("xm", 1.0)?, p.require("alpha")?)?),
        "geometric" => Source::Renewal(GapDistribution::geometric(p.require("q")?)?),
        "bernoulli" => {
            let prob: f64 = p.require("p")?;
            if !(prob > 0.0 && prob < 1.0) {
                return Err(CliError::Usage(format!("p must lie in (0, 1), got {prob}")));
            }
            Source::Bernoulli(prob)
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown dist `{other}` (expected exp, stretched, pareto, geometric or bernoulli)"
            )))
        }
    })
}

/// Half width for `source`; lattice bumps are unit cells.
fn half_width(p: &mut Params, source: &Source) -> CliResult<f64> {
    match source {
        Source::Renewal(_) => p.get_or("l", 0.5),
        Source::Bernoulli(_) => match p.peek("l") {
            Some(_) => Err(CliError::Usage("`l` is fixed at 0.5 for dist=bernoulli".into())),
            None => Ok(0.5),
        },
    }
}

fn parse_knots(raw: &str) -> CliResult<Vec<(f64, f64)>> {
    raw.split(',')
        .map(|pair| {
            let (x, v) = pair
                .split_once(':')
                .ok_or_else(|| CliError::Usage(format!("knot `{pair}` is not of the form x:value")))?;
            let num = |s: &str| s.trim().parse::<f64>().map_err(|e| CliError::Usage(format!("knot `{pair}`: {e}")));
            Ok((num(x)?, num(v)?))
        })
        .collect()
}

fn parse_perturbation(p: &mut Params) -> CliResult<Perturbation> {
    let kind: String = p.get_or("W", "log".to_string())?;
    Ok(match kind.as_str() {
        "log" => Perturbation::log_power(p.require("C")?, p.get_or("s", 2.0)?)?,
        "power" => Perturbation::power_law(p.require("C")?, p.require("beta")?)?,
        "const" => Perturbation::constant(p.require("C")?)?,
        "table" => {
            let raw: String = p.require("knots")?;
            Perturbation::tabulated(parse_knots(&raw)?)?
        }
        other => return Err(CliError::Usage(format!("unknown W `{other}` (expected log, power, const or table)"))),
    })
}

fn parse_refine(p: &mut Params) -> CliResult<RefinePolicy> {
    let d = RefinePolicy::default();
    Ok(RefinePolicy {
        initial: p.get_or("refine_initial", d.initial)?,
        max: p.get_or("refine_max", d.max)?,
        tolerance: p.get_or("refine_tol", d.tolerance)?,
    })
}

/// Writes `body` under the comment header to `out=` or stdout.
fn emit(p: &Params, command: &str, extra_header: &str, body: &str) -> CliResult<()> {
    let text = format!("# anderson1d {} {command}\n{}{extra_header}{body}", anderson1d::VERSION, p.header());
    match p.peek("out") {
        Some(path) => write_file(Path::new(path), &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

pub fn generate(mut p: Params) -> CliResult<()> {
    p.check_keys(&allowed(&[DIST_KEYS, &["l", "h", "X", "seed"]]))?;
    let source = parse_source(&mut p)?;
    let l = half_width(&mut p, &source)?;
    let h: f64 = p.get_or("h", 1.0)?;
    let x: f64 = p.require("X")?;
    let seed: u64 = p.get_or("seed", 0)?;
    let real = match source {
        Source::Renewal(d) => sample_covering(&d, l, h, x, seed, MAX_GAPS)?,
        Source::Bernoulli(prob) => bernoulli_lattice(prob, h, x, seed)?,
    };
    emit(&p, "generate", "", &real.to_text())
}

fn read_realization(path: &str) -> CliResult<PotentialRealization> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read realization {path}: {e}")))?;
    PotentialRealization::from_text(&text).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

pub fn count(mut p: Params) -> CliResult<()> {
    p.check_keys(&allowed(&[W_KEYS, REFINE_KEYS, &["realization", "bc"]]))?;
    let path: String = p.require("realization")?;
    let real = read_realization(&path)?;
    let w = parse_perturbation(&mut p)?;
    let bc: Boundary = p.get_or("bc", Boundary::Dirichlet)?;
    let refine = parse_refine(&mut p)?;
    let whole = count_with_bracketed_w(&real, &w, bc, refine)?;
    let dn = bracket_counts_dn(&real, &w, refine)?.certificate();
    let mut extra = String::new();
    for c in [&whole, &dn] {
        if c.flagged {
            writeln!(extra, "# warning: {} bracket still wider than refine_tol", c.method).expect("write to string");
        }
    }
    let body = format!("{}\n{}\n{}\n", CountCertificate::CSV_HEADER, whole.csv_row(), dn.csv_row());
    emit(&p, "count", &extra, &body)
}

pub fn well(mut p: Params) -> CliResult<()> {
    p.check_keys(&allowed(&[&["L", "l", "h", "bc"]]))?;
    let sizes: Vec<f64> = p.list("L", "25,50,100,200")?;
    let l: f64 = p.get_or("l", 1.0)?;
    let h: f64 = p.get_or("h", 1.0)?;
    let bc: Boundary = p.get_or("bc", Boundary::Dirichlet)?;
    let mut body = String::from("L,root_mu0,asym_mu0,abs_err,err_L3\n");
    for big_l in sizes {
        let g = WellGeometry::new(big_l, l, h, bc)?;
        let root = well_ground_state(&g)?;
        let asym = well_ground_asymptotic(&g);
        let err = (root.sqrt() - asym.sqrt()).abs();
        writeln!(
            body,
            "{},{},{},{},{}",
            sig12(big_l),
            sig12(root),
            sig12(asym),
            sig12(err),
            sig12(err * big_l.powi(3))
        )
        .expect("write to string");
    }
    emit(&p, "well", "# abs_err = |sqrt(root_mu0) - sqrt(asym_mu0)|\n", &body)
}

pub fn borderline_cmd(mut p: Params) -> CliResult<()> {
    p.check_keys(&allowed(&[
        DIST_KEYS,
        REFINE_KEYS,
        &["l", "h", "s", "multipliers", "grid", "trials", "seed", "mode"],
    ]))?;
    let source = parse_source(&mut p)?;
    let l = half_width(&mut p, &source)?;
    let h: f64 = p.get_or("h", 1.0)?;
    let mut law = borderline(&source.gap_law()?)?;
    if let Some(s) = p.get::<f64>("s")? {
        law.exponent = s;
    }
    let multipliers: Vec<f64> = p.list("multipliers", "0.25,1,4")?;
    let checkpoints: Vec<f64> = p.list("grid", "1000,10000,100000")?;
    let trials: usize = p.get_or("trials", 100)?;
    let master_seed: u64 = p.get_or("seed", 0)?;
    let mode: CountMode = p.get_or("mode", CountMode::WholeDomain)?;
    let refine = parse_refine(&mut p)?;
    let model = match source {
        Source::Renewal(dist) => Model::Renewal { dist, half_width: l, height: h },
        Source::Bernoulli(prob) => Model::Bernoulli { p: prob, height: h },
    };
    let prefix = p.peek("out").map(str::to_string);
    let mut body = String::from("multiplier,C,growing_fraction,final_mean\n");
    for m in multipliers {
        let cfg = ExperimentConfig {
            model: model.clone(),
            perturbation: law.perturbation(m)?,
            checkpoints: checkpoints.clone(),
            trials,
            master_seed,
            mode,
            refine,
        };
        let report = run_experiment(&cfg)?;
        let final_mean = report.summary.last().map_or(0.0, |s| s.mean);
        writeln!(
            body,
            "{},{},{},{}",
            sig12(m),
            sig12(m * law.constant),
            sig12(report.growing_fraction),
            sig12(final_mean)
        )
        .expect("write to string");
        if let Some(prefix) = &prefix {
            let head = format!(
                "# anderson1d {} borderline\n{}# multiplier={}\n# W={} C={} s={}\n",
                anderson1d::VERSION,
                p.header(),
                sig12(m),
                law.form,
                sig12(m * law.constant),
                sig12(law.exponent)
            );
            let tag = sig12(m);
            write_file(Path::new(&format!("{prefix}summary_m{tag}.csv")), &format!("{head}{}", report.summary_csv()))?;
            write_file(Path::new(&format!("{prefix}trials_m{tag}.csv")), &format!("{head}{}", report.trials_csv()))?;
        }
    }
    let extra =
        format!("# borderline: {} constant={} exponent={}\n", law.form, sig12(law.constant), sig12(law.exponent));
    let text = format!("# anderson1d {} borderline\n{}{extra}{body}", anderson1d::VERSION, p.header());
    print!("{text}");
    Ok(())
}

pub fn expect(mut p: Params) -> CliResult<()> {
    p.check_keys(&allowed(&[DIST_KEYS, &["w", "samples", "seed"]]))?;
    let dist = parse_source(&mut p)?.gap_law()?;
    let ws: Vec<f64> = p.list("w", "0.5,1,2")?;
    let samples: usize = p.get_or("samples", 100_000)?;
    let seed: u64 = p.get_or("seed", 0)?;
    let mut body = String::from("w,estimate,stderr,lower,upper\n");
    for (i, w) in ws.into_iter().enumerate() {
        let e = estimate_expected_count(&dist, w, samples, rng::trial_seed(seed, i as u64))?;
        let b = expectation_bounds(&dist, w)?;
        writeln!(body, "{},{},{},{},{}", sig12(w), sig12(e.mean), sig12(e.stderr), sig12(b.lower), sig12(b.upper))
            .expect("write to string");
    }
    emit(&p, "expect", "", &body)
}
