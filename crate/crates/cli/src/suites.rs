//! Named verification suites: seeded randomized and windowed identity
//! checks, one report line per check.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use vljet::formal::{
    bracket_bplus, bracket_g, bracket_l, bracket_semidirect, jacobi_defect, AElement,
    AlgebraElement, BPlusElement, GAElement, GElement, LElement,
};
use vljet::ideal::{
    in_ideal_ik, in_ideal_jk, project_reductive, random_ideal_element, window_codim_ik,
    window_points, ReductiveElement,
};
use vljet::jet::verify_jet_axioms;
use vljet::json::spec_from_json_unchecked;
use vljet::matrix::QMatrix;
use vljet::scalar::{rat, rat_int};
use vljet::{Error, LatticePoint, MultiIndex};

pub struct Config {
    pub seed: u64,
    pub window: i64,
    pub cap: u32,
    pub trials: u32,
    pub text: bool,
}

struct Check {
    name: String,
    pass: bool,
    detail: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: Option<String>) -> Self {
        Check { name: name.into(), pass, detail }
    }

    fn print(&self, config: &Config) {
        if config.text {
            match (&self.pass, &self.detail) {
                (true, _) => println!("PASS {}", self.name),
                (false, Some(d)) => println!("FAIL {} — {d}", self.name),
                (false, None) => println!("FAIL {}", self.name),
            }
        } else {
            let line = json!({
                "check": self.name,
                "pass": self.pass,
                "seed": config.seed,
                "detail": self.detail,
            });
            println!("{line}");
        }
    }
}

/// Run one named suite, printing a report line per check; true iff all pass.
pub fn run_suite(suite: &str, spec_text: Option<&str>, config: &Config) -> Result<bool, Error> {
    let checks = match suite {
        "jacobi" => suite_jacobi(config),
        "ideals" => suite_ideals(config)?,
        "jk" => suite_jk(config),
        "sl2-quotient" => suite_sl2_quotient(config)?,
        "jet" => suite_jet(spec_text, config)?,
        "fit" => suite_fit(spec_text, config)?,
        other => return Err(Error::Parse(format!("unknown suite {other:?}"))),
    };
    let mut all_pass = true;
    for check in &checks {
        check.print(config);
        all_pass &= check.pass;
    }
    Ok(all_pass)
}

fn require_spec<'a>(spec_text: Option<&'a str>, suite: &str) -> Result<&'a str, Error> {
    spec_text.ok_or_else(|| Error::Parse(format!("the {suite} suite needs a spec file")))
}

// ---------------------------------------------------------------------------
// random elements

fn random_point<R: Rng>(rng: &mut R, radius: i64, allow_zero: bool) -> LatticePoint {
    loop {
        let p = LatticePoint::new(rng.gen_range(-radius..=radius), rng.gen_range(-radius..=radius));
        if allow_zero || !p.is_zero() {
            return p;
        }
    }
}

fn random_g<R: Rng>(rng: &mut R) -> GElement {
    let terms = (0..rng.gen_range(1..=3))
        .map(|_| (random_point(rng, 5, false), rat_int(rng.gen_range(-9..=9))));
    GElement::from_terms(terms).expect("nonzero indices")
}

fn random_l<R: Rng>(rng: &mut R) -> LElement {
    let terms = (0..rng.gen_range(1..=3))
        .map(|_| (random_point(rng, 5, false), rat_int(rng.gen_range(-9..=9))));
    LElement::from_terms(terms).expect("nonzero indices")
}

fn random_ga<R: Rng>(rng: &mut R) -> GAElement {
    let g = random_g(rng);
    let a_terms: Vec<_> = (0..rng.gen_range(0..=2))
        .map(|_| (random_point(rng, 5, true), rat_int(rng.gen_range(-9..=9))))
        .collect();
    GAElement::new(g, AElement::from_terms(a_terms).expect("any indices"))
}

fn random_bplus<R: Rng>(rng: &mut R, min_degree: u32, max_degree: u32) -> BPlusElement {
    let terms = (0..rng.gen_range(1..=3)).map(|_| {
        let d = rng.gen_range(min_degree..=max_degree);
        let r1 = rng.gen_range(0..=d);
        (MultiIndex::new(r1, d - r1), rat_int(rng.gen_range(-9..=9)))
    });
    BPlusElement::from_terms(terms)
}

// ---------------------------------------------------------------------------
// suites

fn jacobi_check<T: AlgebraElement + std::fmt::Debug>(
    name: &str,
    trials: u32,
    mut gen: impl FnMut() -> T,
    bracket: impl Fn(&T, &T) -> T + Copy,
) -> Check {
    for t in 0..trials {
        let (x, y, z) = (gen(), gen(), gen());
        if !jacobi_defect(&x, &y, &z, bracket).is_zero() {
            return Check::new(
                format!("jacobi:{name}"),
                false,
                Some(format!("trial {t}: nonzero defect for {x:?}, {y:?}, {z:?}")),
            );
        }
    }
    Check::new(format!("jacobi:{name}"), true, None)
}

fn suite_jacobi(config: &Config) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let n = config.trials;
    vec![
        jacobi_check("G", n, || random_g(&mut rng), bracket_g),
        {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(1));
            jacobi_check("GA", n, move || random_ga(&mut rng), bracket_semidirect)
        },
        {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(2));
            jacobi_check("L", n, move || random_l(&mut rng), bracket_l)
        },
        {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(3));
            jacobi_check("Bplus", n, move || random_bplus(&mut rng, 0, 5), bracket_bplus)
        },
    ]
}

fn suite_ideals(config: &Config) -> Result<Vec<Check>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let support = window_points(4);
    let mut checks = Vec::new();
    for k in 2..=4u32 {
        for l in 2..=4u32 {
            let name = format!("ideals:bracket(I{k},I{l})-in-I{}", k + l - 1);
            let mut failure = None;
            for t in 0..config.trials {
                let x = random_ideal_element(&support, k, false, &mut rng)?;
                let y = random_ideal_element(&support, l, false, &mut rng)?;
                if !in_ideal_ik(&bracket_l(&x, &y), k + l - 1)? {
                    failure = Some(format!("trial {t}: bracket left the ideal"));
                    break;
                }
            }
            checks.push(Check::new(name, failure.is_none(), failure));
        }
    }
    Ok(checks)
}

fn suite_jk(config: &Config) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut checks = Vec::new();
    for k in 2..=5u32 {
        for l in 2..=5u32 {
            let name = format!("jk:bracket(J{k},J{l})-in-J{}", k + l - 2);
            let mut failure = None;
            for t in 0..config.trials {
                let x = random_bplus(&mut rng, k, k + 2);
                let y = random_bplus(&mut rng, l, l + 2);
                let b = bracket_bplus(&x, &y);
                let ok = b.is_zero() || in_ideal_jk(&b, k + l - 2).unwrap_or(false);
                if !ok {
                    failure = Some(format!("trial {t}: bracket left the ideal"));
                    break;
                }
            }
            checks.push(Check::new(name, failure.is_none(), failure));
        }
    }
    checks
}

fn suite_sl2_quotient(config: &Config) -> Result<Vec<Check>, Error> {
    let window = window_points(config.window);
    let mut checks = Vec::new();

    // projection respects the bracket on the whole window
    let mut failure = None;
    'outer: for m in &window {
        for n in &window {
            let lhs = project_reductive(&bracket_l(
                &LElement::basis(*m).expect("nonzero"),
                &LElement::basis(*n).expect("nonzero"),
            ));
            let rhs = ReductiveElement::bracket(
                &project_reductive(&LElement::basis(*m).expect("nonzero")),
                &project_reductive(&LElement::basis(*n).expect("nonzero")),
            );
            if lhs != rhs {
                failure = Some(format!("pair ({m}, {n})"));
                break 'outer;
            }
        }
    }
    checks.push(Check::new("sl2-quotient:homomorphism", failure.is_none(), failure));

    // the projected quadratic directions generate a standard sl2 triple
    let sl2_of = |a: i64, b: i64| {
        project_reductive(&LElement::basis(LatticePoint::new(a, b)).expect("nonzero")).sl2_part
    };
    let e = sl2_of(2, 0).scale(&rat(-1, 4));
    let f = sl2_of(0, 2).scale(&rat(1, 4));
    let h = QMatrix::commutator(&e, &f).expect("2x2");
    let relations_ok = h == QMatrix::from_int_rows(&[&[1, 0], &[0, -1]])
        && QMatrix::commutator(&h, &e).expect("2x2") == e.scale(&rat_int(2))
        && QMatrix::commutator(&h, &f).expect("2x2") == f.scale(&rat_int(-2));
    checks.push(Check::new("sl2-quotient:sl2-relations", relations_ok, None));

    // codimensions of the ideal inside finite windows
    let codims_ok = (1..=3).all(|r| window_codim_ik(2, r).is_ok_and(|c| c == 3))
        && window_codim_ik(3, 3)? == 7;
    checks.push(Check::new("sl2-quotient:window-codim", codims_ok, None));

    Ok(checks)
}

fn suite_jet(spec_text: Option<&str>, config: &Config) -> Result<Vec<Check>, Error> {
    let spec = spec_from_json_unchecked(require_spec(spec_text, "jet")?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let sample: Vec<LatticePoint> =
        (0..4).map(|_| random_point(&mut rng, 6, true)).collect();
    let report = verify_jet_axioms(&spec, config.window, &sample)?;
    Ok(report
        .into_iter()
        .map(|c| Check::new(format!("jet:{}", c.axiom), c.pass, c.counterexample))
        .collect())
}

fn suite_fit(spec_text: Option<&str>, config: &Config) -> Result<Vec<Check>, Error> {
    let spec = spec_from_json_unchecked(require_spec(spec_text, "fit")?)?;
    let report = match vljet::fit::theorem_roundtrip(&spec, config.cap) {
        Ok(r) => r,
        Err(e @ Error::NoPolynomialFit { .. }) => {
            return Ok(vec![Check::new("fit:interpolation", false, Some(e.to_string()))]);
        }
        Err(e) => return Err(e),
    };
    let mut checks = vec![
        Check::new(
            "fit:interpolation",
            true,
            Some(format!("degree {}", report.fit_degree)),
        ),
        Check::new("fit:held-out-probes", report.probes_pass, None),
        Check::new("fit:bracket-relations", report.relations_pass, None),
    ];
    if let Some(pass) = report.closed_form_pass {
        checks.push(Check::new("fit:closed-form-coefficients", pass, None));
    }
    if let Some(pass) = report.input_generators_pass {
        checks.push(Check::new("fit:input-generators", pass, None));
    }
    Ok(checks)
}
