//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI, TAU};
use std::process::{Command, ExitCode};
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polyrot::blaschke;
use polyrot::bounds::{self, LambdaValue};
use polyrot::oracle::{self, ArcSpec};
use polyrot::polynomial::{Polynomial, RootForm, UnitCirclePoint};
use polyrot::rational::{RationalChecker, RationalFunction};
use polyrot::roots::{self, RootSolveConfig};
use polyrot::sampling::{self, RootZone};
use polyrot::witness::{self, WitnessSpec};
use polyrot::Error;

const CASES: usize = 500;
const POINTS: usize = 20;
const MAX_DRAWS: usize = 1000;

struct Case {
    rf: RootForm,
    p: Polynomial,
    thetas: Vec<f64>,
}

/// Random angle that passes the zero guard and is far enough from every zero
/// for the central difference at step 1e-5 to be accurate to 1e-7.
fn valid_theta(rng: &mut ChaCha8Rng, p: &Polynomial, zeros: &[Complex64]) -> Option<f64> {
    (0..MAX_DRAWS).map(|_| rng.gen_range(0.0..TAU)).find(|&t| {
        oracle::is_valid_point(zeros, t) && p.eval_guarded(UnitCirclePoint::new(t).z()).is_ok()
    })
}

fn corpus(seed: u64, count: usize, degrees: (usize, usize), zone: RootZone) -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(degrees.0..=degrees.1);
            let (rf, p) = sampling::random_polynomial(&mut rng, n, zone).unwrap();
            let thetas = (0..POINTS).filter_map(|_| valid_theta(&mut rng, &p, &rf.roots)).collect();
            Case { rf, p, thetas }
        })
        .collect()
}

/// Running maximum.
struct Worst {
    value: f64,
    count: usize,
}

impl Worst {
    fn new() -> Self {
        Worst { value: f64::NEG_INFINITY, count: 0 }
    }

    fn push(&mut self, v: f64) {
        self.count += 1;
        if v.is_nan() || v > self.value {
            self.value = v;
        }
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn oracle_agreement(disk: &[Case]) -> Outcome {
    let start = Instant::now();
    let mut worst = Worst::new();
    for c in disk {
        for &t in &c.thetas {
            let speed = c.p.rotation_speed(UnitCirclePoint::new(t)).unwrap();
            let fd = oracle::arg_derivative_fd(&c.p, t, 1e-5).unwrap();
            worst.push((speed - fd).abs());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst.value <= 1e-6 && secs < 10.0 && worst.count >= CASES * POINTS * 9 / 10,
        format!("max |speed - fd| = {:.3e} over {} points in {secs:.2} s (tol 1e-6, < 10 s)", worst.value, worst.count),
    )
}

fn nonnegativity(disk: &[Case], circle: &[Case]) -> Outcome {
    let mut neg = Worst::new();
    for c in disk {
        for &t in &c.thetas {
            neg.push(-bounds::lambda_at(&c.p, UnitCirclePoint::new(t)).unwrap().0);
        }
    }
    let mut dev = Worst::new();
    for c in circle {
        for &t in &c.thetas {
            dev.push(bounds::lambda_at(&c.p, UnitCirclePoint::new(t)).unwrap().0.abs());
        }
    }
    outcome(
        -neg.value >= -1e-9 && dev.value <= 1e-9 && dev.count > 0,
        format!(
            "min Λ = {:.3e} over {} points (>= -1e-9); max |Λ| on-circle = {:.3e} over {} points (<= 1e-9)",
            -neg.value, neg.count, dev.value, dev.count
        ),
    )
}

fn value_bound(disk: &[Case]) -> Outcome {
    let mut shortfall = Worst::new();
    for c in disk {
        for &t in &c.thetas {
            let pt = UnitCirclePoint::new(t);
            let lam = bounds::lambda_at(&c.p, pt).unwrap();
            shortfall.push(bounds::bound_value_thm1(&c.p, pt, lam).unwrap() - lam.0);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut residual = Worst::new();
    for _ in 0..100 {
        let a = sampling::random_root(&mut rng, RootZone::InDisk);
        let k = rng.gen_range(0..=5);
        let unimodular: Vec<Complex64> =
            (0..k).map(|_| Complex64::from_polar(1.0, rng.gen_range(0.05..TAU - 0.05))).collect();
        let rf = witness::witness_thm1(a, &unimodular).unwrap();
        residual.push(witness::thm1_residual(&rf).unwrap());
    }
    outcome(
        shortfall.value <= 1e-9 && residual.value <= 1e-8,
        format!(
            "max (bound - Λ) = {:.3e} (<= 1e-9); witness max |Λ - bound| at 1 = {:.3e} over 100 draws (<= 1e-8)",
            shortfall.value, residual.value
        ),
    )
}

fn coefficient_bound(disk: &[Case]) -> Outcome {
    let mut shortfall = Worst::new();
    let mut ordering = Worst::new();
    let mut remark = Worst::new();
    for c in disk {
        let rhs = bounds::bound_coeff2_thm2(&c.p);
        ordering.push(bounds::bound_coefficient(&c.p) - rhs);
        remark.push(-blaschke::mercer_remark_unchecked(&c.p).margin);
        for &t in &c.thetas {
            shortfall.push(rhs - bounds::lambda_at(&c.p, UnitCirclePoint::new(t)).unwrap().0);
        }
    }
    let remark_ok = disk.iter().all(|c| blaschke::mercer_remark_unchecked(&c.p).holds);
    outcome(
        shortfall.value <= 1e-9 && ordering.value <= 1e-12 && remark_ok,
        format!(
            "max (bound - Λ) = {:.3e} (<= 1e-9); max (coeff - bound) = {:.3e} (<= 1e-12); coefficient remark worst margin = {:.3e}",
            shortfall.value, ordering.value, -remark.value
        ),
    )
}

fn arc_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let alphas = [FRAC_PI_6, FRAC_PI_4, FRAC_PI_2];
    let mut inc = Worst::new();
    let mut lam1 = Worst::new();
    for i in 0..100 {
        let alpha = alphas[i % 3];
        let k = rng.gen_range(0..=5);
        let unimodular: Vec<Complex64> = (0..k)
            .map(|_| Complex64::from_polar(1.0, rng.gen_range(alpha + 1e-3..TAU - alpha - 1e-3)))
            .collect();
        let rf = witness::witness_thm3(sampling::random_leading(&mut rng), &unimodular, alpha).unwrap();
        let p = rf.to_polynomial().unwrap();
        let beta = oracle::arc_increment_with_zeros(&p, &ArcSpec::new(0.0, alpha).unwrap(), &rf.roots).unwrap();
        inc.push((beta - alpha).abs());
        lam1.push((bounds::lambda_at(&p, UnitCirclePoint::new(0.0)).unwrap().0 - 1.0).abs());
    }
    let mut excess = Worst::new();
    let mut applied = 0;
    for _ in 0..200 {
        let n = rng.gen_range(1..=12);
        let (rf, p) = sampling::random_polynomial(&mut rng, n, RootZone::InDisk).unwrap();
        let alpha = rng.gen_range(0.05..FRAC_PI_2);
        let Some(center) = valid_theta(&mut rng, &p, &rf.roots) else { continue };
        let arc = ArcSpec::new(center, alpha).unwrap();
        let beta = oracle::arc_increment_with_zeros(&p, &arc, &rf.roots).unwrap();
        if beta < PI {
            applied += 1;
            let lam = bounds::lambda_at(&p, UnitCirclePoint::new(center)).unwrap();
            excess.push(lam.0 - bounds::arc_ratio(alpha, beta));
        }
    }
    let grid = TAU / 4096.0;
    outcome(
        inc.value <= grid && lam1.value <= 1e-10 && excess.value <= 1e-6 && applied > 0,
        format!(
            "witness max |β - α| = {:.3e} (<= {grid:.3e}), max |Λ(1) - 1| = {:.3e} (<= 1e-10); max (Λ - ratio) = {:.3e} over {applied} arcs (<= 1e-6)",
            inc.value, lam1.value, excess.value
        ),
    )
}

fn zero_free_upper(outside: &[Case]) -> Outcome {
    let mut excess = Worst::new();
    for c in outside {
        for &t in &c.thetas {
            let pt = UnitCirclePoint::new(t);
            let speed = c.p.rotation_speed(pt).unwrap();
            excess.push(speed - bounds::upper_bound_zero_free(&c.p, pt).unwrap());
        }
    }
    outcome(
        excess.value <= 1e-9,
        format!("max (speed - bound) = {:.3e} over {} points (<= 1e-9)", excess.value, excess.count),
    )
}

fn self_map_identities(disk: &[Case]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut d1 = Worst::new();
    let mut d2 = Worst::new();
    for _ in 0..200 {
        let n = rng.gen_range(1..=12);
        let (rf, p) = sampling::random_polynomial(&mut rng, n, RootZone::InDisk).unwrap();
        let f = blaschke::from_polynomial_thm2(&rf).unwrap();
        let along = |x: f64| f.eval(Complex64::new(x, 0.0));
        let fd1 = oracle::five_point_derivative(along, 0.0, 1e-3);
        let fd2 = oracle::five_point_second_derivative(along, 0.0, 1e-3);
        d1.push((fd1 - blaschke::f_prime_0_coeffs(&p)).norm());
        d2.push((fd2 - blaschke::f_second_0_coeffs(&p)).norm());
    }
    let mut gor = Worst::new();
    let mut gor_eq = Worst::new();
    let mut mercer = Worst::new();
    for c in disk {
        for &t in &c.thetas {
            let pt = UnitCirclePoint::new(t);
            let lam: LambdaValue = bounds::lambda_at(&c.p, pt).unwrap();
            gor.push(-blaschke::goryainov_at(&c.rf, pt).unwrap().margin);
            match blaschke::check_mercer(
                blaschke::f_prime_0_coeffs(&c.p),
                blaschke::f_second_0_coeffs(&c.p),
                lam.0 + 1.0,
            ) {
                Ok(m) => mercer.push(-m.margin),
                Err(Error::DegenerateDerivative) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
    for _ in 0..100 {
        let a = sampling::random_root(&mut rng, RootZone::InDisk);
        let report = witness::run_witness(&WitnessSpec::Goryainov { a }).unwrap();
        for e in &report.equalities {
            gor_eq.push(e.deviation);
        }
    }
    outcome(
        d1.value <= 1e-8 && d2.value <= 1e-6 && gor.value <= 1e-9 && gor_eq.value <= 1e-9 && mercer.value <= 1e-9,
        format!(
            "f'(0) fd err {:.3e} (<= 1e-8), f''(0) fd err {:.3e} (<= 1e-6); Goryainov min margin {:.3e}, extremal deviation {:.3e}; Mercer min margin {:.3e}",
            d1.value, d2.value, -gor.value, gor_eq.value, -mercer.value
        ),
    )
}

fn rational_bounds() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = [Worst::new(), Worst::new()];
    let mut counted = [0usize; 2];
    for (class, zone) in [RootZone::InDisk, RootZone::Outside].into_iter().enumerate() {
        for _ in 0..200 {
            let m = rng.gen_range(1..=10);
            let (rf, p) = sampling::random_polynomial(&mut rng, m, zone).unwrap();
            let k = rng.gen_range(1..=4);
            let poles = sampling::random_poles(&mut rng, k);
            let checker = RationalChecker::with_zones(
                RationalFunction::new(p.clone(), poles).unwrap(),
                witness::zones_of(&rf),
            );
            for _ in 0..POINTS {
                let Some(t) = valid_theta(&mut rng, &p, &rf.roots) else { continue };
                let rep = checker.check(UnitCirclePoint::new(t), 1e-9).unwrap();
                let check = if class == 0 { rep.lower } else { rep.upper };
                let check = check.expect("hypothesis class applies");
                worst[class].push(-check.margin);
                counted[class] += 1;
            }
        }
    }
    let mut eq = Worst::new();
    for _ in 0..50 {
        let k = rng.gen_range(1..=4);
        let poles = sampling::random_poles(&mut rng, k);
        let alpha = Complex64::from_polar(1.0, rng.gen_range(0.0..TAU));
        let beta = Complex64::from_polar(1.0, rng.gen_range(0.0..TAU));
        let r = witness::witness_rational(&poles, alpha, beta).unwrap();
        let zeros = roots::find_roots(r.numerator(), &RootSolveConfig::default()).unwrap();
        let checker = RationalChecker::with_zones(r.clone(), polyrot::ZoneSummary::from_roots(zeros.clone()));
        for _ in 0..100 {
            let Some(t) = valid_theta(&mut rng, r.numerator(), &zeros) else { continue };
            let rep = checker.check(UnitCirclePoint::new(t), 1e-9).unwrap();
            for c in [rep.lower, rep.upper].into_iter().flatten() {
                eq.push(c.margin.abs());
            }
        }
    }
    outcome(
        worst[0].value <= 1e-9 && worst[1].value <= 1e-9 && eq.value <= 1e-8 && eq.count > 0,
        format!(
            "zeros-in-disk min margin {:.3e} ({} pts); zero-free min margin {:.3e} ({} pts); αB+β max |margin| {:.3e} ({} checks, <= 1e-8)",
            -worst[0].value, counted[0], -worst[1].value, counted[1], eq.value, eq.count
        ),
    )
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_polyrot"))
            .args(["fuzz", "--seed", "42"])
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    let same = a.stdout == b.stdout && !a.stdout.is_empty();
    outcome(
        same && a.status.code() == b.status.code(),
        format!("two runs of `fuzz --seed 42`: {} bytes, identical = {same}, exit {:?}", a.stdout.len(), a.status.code()),
    )
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() -> ExitCode {
    let disk = corpus(1, CASES, (1, 12), RootZone::InDisk);
    let circle = corpus(2, CASES, (1, 12), RootZone::OnCircle);
    let outside = corpus(4, CASES, (1, 12), RootZone::Outside);

    let criteria: Vec<Criterion> = vec![
        ("1 oracle agreement", Box::new(|| oracle_agreement(&disk))),
        ("2 nonnegativity and on-circle equality", Box::new(|| nonnegativity(&disk, &circle))),
        ("3 value-dependent lower bound", Box::new(|| value_bound(&disk))),
        ("4 second-coefficient lower bound", Box::new(|| coefficient_bound(&disk))),
        ("5 zero-free arc upper bound", Box::new(arc_bound)),
        ("6 zero-free polynomial upper bound", Box::new(|| zero_free_upper(&outside))),
        ("7 self-map identities and inequalities", Box::new(|| self_map_identities(&disk))),
        ("8 rational functions", Box::new(rational_bounds)),
        ("9 determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let o = run();
        failed += !o.pass as usize;
        println!("[{}] criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
