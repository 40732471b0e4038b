//! Re-runs the bundled worked examples and checks the stored expected values.

use clap::ValueEnum;
use fuzzopt_core::cones::{intersection_empty_sampled, FeasibleSet};
use fuzzopt_core::fixtures;
use fuzzopt_core::fuzzy::{is_zero, Cuts, LevelGrid};
use fuzzopt_core::optimality::{fritz_john_find, fritz_john_verify, kkt_find, kkt_verify};
use fuzzopt_core::svm::{svm_bias_set, svm_margin_report, svm_solve, svm_stationary_lambda, svm_verify, SvmCaps};
use fuzzopt_core::{CutFamily, Result, Settings};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Example {
    BoxCones,
    #[value(name = "fj_1d")]
    #[serde(rename = "fj_1d")]
    Fj1d,
    #[value(name = "kkt_2d")]
    #[serde(rename = "kkt_2d")]
    Kkt2d,
    #[value(name = "svm_6pt")]
    #[serde(rename = "svm_6pt")]
    Svm6pt,
}

impl Example {
    pub fn name(self) -> &'static str {
        match self {
            Example::BoxCones => "box_cones",
            Example::Fj1d => "fj_1d",
            Example::Kkt2d => "kkt_2d",
            Example::Svm6pt => "svm_6pt",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Assertion {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub example: Example,
    pub pass: bool,
    pub assertions: Vec<Assertion>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.assertions.iter().filter(|a| !a.pass).count()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for a in &self.assertions {
            let tag = if a.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag} {}: {}\n", a.name, a.detail));
        }
        out.push_str(&format!(
            "{}: {} of {} assertions passed\n",
            self.example.name(),
            self.assertions.len() - self.failures(),
            self.assertions.len()
        ));
        out
    }
}

#[derive(Default)]
struct Checks(Vec<Assertion>);

impl Checks {
    fn add(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.0.push(Assertion {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        });
    }

    /// Compares `f` against affine endpoint formulas on the grid plus its breakpoints.
    fn affine(&mut self, name: &str, f: &CutFamily, lo: [f64; 2], hi: [f64; 2], tol: f64) {
        let levels = LevelGrid::default().with_levels(&f.kinks());
        let err = levels
            .levels()
            .iter()
            .map(|&r| {
                let c = f.at(r);
                (c.lo() - (lo[0] + lo[1] * r)).abs().max((c.hi() - (hi[0] + hi[1] * r)).abs())
            })
            .fold(0.0, f64::max);
        let want = format!("[{}{:+}ρ, {}{:+}ρ]", lo[0], lo[1], hi[0], hi[1]);
        self.add(name, err <= tol, format!("expected {want}, max error {err:.1e} (tol {tol:.0e})"));
    }
}

pub fn run(example: Example, settings: &Settings, seed: u64) -> Result<Report> {
    let mut c = Checks::default();
    match example {
        Example::BoxCones => box_cones(&mut c, settings, seed)?,
        Example::Fj1d => fj_1d(&mut c, settings)?,
        Example::Kkt2d => kkt_2d(&mut c, settings)?,
        Example::Svm6pt => svm_6pt(&mut c, settings)?,
    }
    let assertions = c.0;
    Ok(Report {
        example,
        pass: assertions.iter().all(|a| a.pass),
        assertions,
    })
}

fn box_cones(c: &mut Checks, s: &Settings, seed: u64) -> Result<()> {
    let e = fixtures::box_problem().objective().clone();
    let g = e.grad(&fixtures::BOX_OPTIMUM)?;
    c.affine("first partial at (1.5, 1)", &g.partials()[0], [0.0, 0.0], [0.0, 0.0], 1e-12);
    c.affine("second partial at (1.5, 1)", &g.partials()[1], [2.0, 2.0], [10.0, -6.0], 1e-12);
    let set = FeasibleSet::boxed(fixtures::BOX_LO.to_vec(), fixtures::BOX_HI.to_vec())?;
    let r = intersection_empty_sampled(&e, &set, &fixtures::BOX_OPTIMUM, 10_000, seed, s)?;
    c.add(
        "no descent feasible direction at (1.5, 1)",
        r.empty_suspected,
        format!("{} directions sampled", r.trials),
    );
    let r = intersection_empty_sampled(&e, &set, &fixtures::BOX_OTHER, 100, seed, s)?;
    let pass = r.counterexample.as_ref().is_some_and(|t| t[1] < 0.0);
    c.add(
        "descent feasible direction at (1.5, 2)",
        pass,
        format!("direction {:?} after {} trials", r.counterexample, r.trials),
    );
    Ok(())
}

fn fj_1d(c: &mut Checks, s: &Settings) -> Result<()> {
    let p = fixtures::fj_1d();
    let x = fixtures::FJ_1D_POINT;
    let y1 = p.constraints()[0].eval(&x)?;
    c.add("Y1(2) is zero", is_zero(&y1, &s.grid, s.active_tol), "every cut within active tolerance of [0, 0]");
    let y2 = p.constraints()[1].eval(&x)?;
    c.affine("Y2(2) = <-8,-7,-6>", &y2, [-8.0, 1.0], [-6.0, -1.0], 1e-12);
    c.affine("objective gradient at 2", &p.objective().grad(&x)?.partials()[0], [-16.0, 8.0], [7.0, -15.0], 1e-12);
    c.affine("Y1 gradient at 2", &p.constraints()[0].grad(&x)?.partials()[0], [-4.0, 9.0], [7.0, -2.0], 1e-12);
    let r = fritz_john_verify(&p, &x, 5.0, &[8.0, 0.0], s)?;
    c.add("Fritz-John (5, 8, 0) verifies", r.pass, format!("stationarity worst {:.1e}", r.stationarity.worst));
    c.affine("residual for (5, 8, 0)", &r.residuals[0], [-112.0, 112.0], [91.0, -91.0], 1e-9);
    let cert = fritz_john_find(&p, &x, s)?;
    let ratio = cert.kappas[0] / cert.kappa0;
    c.add(
        "found multipliers proportional to (5, 8, 0)",
        (ratio - 1.6).abs() <= 1e-9 && cert.kappas[1] == 0.0,
        format!("kappa0 {}, kappas {:?}", cert.kappa0, cert.kappas),
    );
    Ok(())
}

fn kkt_2d(c: &mut Checks, s: &Settings) -> Result<()> {
    let p = fixtures::kkt_2d();
    let x = fixtures::KKT_2D_POINT;
    let y2 = p.constraints()[1].eval(&x)?;
    c.affine("Y2(0, 2) = <-14,-13,-10>", &y2, [-14.0, 1.0], [-10.0, -3.0], 1e-12);
    let r = fritz_john_verify(&p, &x, 2.5, &[1.0, 0.0], s)?;
    c.add("Fritz-John (2.5, 1, 0) verifies", r.pass, format!("stationarity worst {:.1e}", r.stationarity.worst));
    let r = kkt_verify(&p, &x, &[0.4, 0.0], s)?;
    c.add("KKT (0.4, 0) verifies", r.pass, format!("stationarity worst {:.1e}", r.stationarity.worst));
    c.affine("first residual coordinate", &r.residuals[0], [-0.8, 0.8], [1.2, -1.2], 1e-9);
    let cert = kkt_find(&p, &x, s)?;
    c.add(
        "found KKT multiplier 0.4",
        (cert.kappas[0] - 0.4).abs() <= 1e-9,
        format!("kappas {:?}", cert.kappas),
    );
    Ok(())
}

fn svm_6pt(c: &mut Checks, s: &Settings) -> Result<()> {
    let d = fixtures::svm_6pt();
    let b = svm_bias_set(&d, &[3.0, 1.0], &[0, 4], s)?;
    c.add(
        "rho_max = 0.6 for lambda (3, 1)",
        (b.rho_max - 0.6).abs() <= 1e-12,
        format!("rho_max {}", b.rho_max),
    );
    let err = b
        .levels
        .levels()
        .iter()
        .zip(&b.intervals)
        .filter_map(|(&r, i)| i.map(|i| (i.lo() - (6.0 + 10.0 * r)).abs().max((i.hi() - (15.0 - 5.0 * r)).abs())))
        .fold(0.0, f64::max);
    c.add("bias set [6+10ρ, 15-5ρ]", err <= 1e-12, format!("max error {err:.1e}"));
    let objective = 0.5 * [3.0f64, 1.0].iter().map(|v| v * v).sum::<f64>();
    c.add("objective 5 for lambda (3, 1)", (objective - 5.0).abs() <= 1e-12, format!("1/2 |(3, 1)|^2 = {objective}"));
    let m = svm_margin_report(&d, &[3.0, 1.0], 12.0, s)?;
    let margins: Vec<f64> = m.points.iter().map(|p| p.core_margin).collect();
    c.add(
        "core margins at bias 12",
        margins == [5.0, 9.0, 11.0, 6.0, 3.0, 1.0],
        format!("{margins:?}"),
    );
    let l = svm_stationary_lambda(&d, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0], s)?;
    c.add(
        "stationary normal for kappa (1,0,0,0,1,0)",
        l.lambda == [3.0, -1.0],
        format!("{:?}", l.lambda),
    );
    let sol = svm_solve(&d, SvmCaps::default(), s)?;
    let check = svm_verify(&d, &sol, s)?;
    c.add(
        "solver optimality system",
        check.pass(1e-9) && sol.objective <= 5.0 + 1e-9,
        format!(
            "support {:?}, lambda {:?}, objective {}",
            sol.support_indices, sol.lambda, sol.objective
        ),
    );
    Ok(())
}
