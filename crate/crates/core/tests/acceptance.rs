//! Full acceptance suite: eleven exact, seeded, zero-tolerance checks
//! covering the brackets, ideal filtrations, the reductive quotient, jet
//! modules, operator extraction and interpolation, classification, and
//! difference derivatives. One pass/fail line is printed per criterion.

use num::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use vljet::fit::{fit_family, theorem_roundtrip};
use vljet::formal::{
    bracket_bplus, bracket_g, bracket_l, bracket_semidirect, jacobi_defect, AElement,
    AlgebraElement, BPlusElement, GAElement, GElement, LElement,
};
use vljet::ideal::{
    diff_derivative, in_ideal_ik, in_ideal_jk, project_reductive, random_ideal_element,
    window_codim_ik, window_points, ReductiveElement,
};
use vljet::jet::{act_element, act_t, extract_l, f_isomorphic, JetModuleSpec, ModuleVector};
use vljet::matrix::QMatrix;
use vljet::rep::{
    bplus_from_sl2, bplus_indecomposable, sl2_irrep, sl2_is_irreducible, Indecomposability,
};
use vljet::scalar::{rat, rat_int, Rational};
use vljet::{det_pair, LatticePoint, MultiIndex};

fn lp(a: i64, b: i64) -> LatticePoint {
    LatticePoint::new(a, b)
}

fn l_basis(a: i64, b: i64) -> LElement {
    LElement::basis(lp(a, b)).expect("nonzero index")
}

fn bp(a: u32, b: u32) -> BPlusElement {
    BPlusElement::basis(MultiIndex::new(a, b))
}

fn random_point<R: Rng>(rng: &mut R, radius: i64, allow_zero: bool) -> LatticePoint {
    loop {
        let p = lp(rng.gen_range(-radius..=radius), rng.gen_range(-radius..=radius));
        if allow_zero || !p.is_zero() {
            return p;
        }
    }
}

fn random_lattice_sum<R: Rng>(rng: &mut R, allow_zero: bool) -> Vec<(LatticePoint, Rational)> {
    (0..rng.gen_range(1..=3))
        .map(|_| (random_point(rng, 5, allow_zero), rat_int(rng.gen_range(-9..=9))))
        .collect()
}

/// The 18 module specs used throughout: three weights, three scales, three
/// fiber dimensions.
fn standard_specs() -> Vec<JetModuleSpec> {
    let alphas = [
        (rat_int(0), rat_int(0)),
        (rat(1, 2), rat_int(0)),
        (rat(1, 3), rat_int(-2)),
    ];
    let lambdas = [rat_int(1), rat_int(2), rat(-1, 2)];
    let mut specs = Vec::new();
    for alpha in &alphas {
        for lambda in &lambdas {
            for n in 0..=2 {
                specs.push(
                    JetModuleSpec::f(alpha.clone(), lambda.clone(), sl2_irrep(n).unwrap())
                        .unwrap(),
                );
            }
        }
    }
    specs
}

/// Memoized grade-zero operators of one spec.
struct LCache<'a> {
    spec: &'a JetModuleSpec,
    table: BTreeMap<LatticePoint, QMatrix>,
}

impl<'a> LCache<'a> {
    fn new(spec: &'a JetModuleSpec) -> Self {
        LCache { spec, table: BTreeMap::new() }
    }

    fn get(&mut self, m: &LatticePoint) -> QMatrix {
        self.table
            .entry(*m)
            .or_insert_with(|| extract_l(self.spec, m).expect("nonzero index"))
            .clone()
    }
}

// ---------------------------------------------------------------------------
// the criteria

fn criterion_1_jacobi() -> Result<(), String> {
    let trials = 1000;

    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for t in 0..trials {
        let mut g = || GElement::from_terms(random_lattice_sum(&mut rng, false)).unwrap();
        let (x, y, z) = (g(), g(), g());
        if !jacobi_defect(&x, &y, &z, bracket_g).is_zero() {
            return Err(format!("witt bracket, trial {t}"));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for t in 0..trials {
        let mut ga = || {
            let g = GElement::from_terms(random_lattice_sum(&mut rng, false)).unwrap();
            let a = AElement::from_terms(random_lattice_sum(&mut rng, true)).unwrap();
            GAElement::new(g, a)
        };
        let (x, y, z) = (ga(), ga(), ga());
        if !jacobi_defect(&x, &y, &z, bracket_semidirect).is_zero() {
            return Err(format!("semidirect bracket, trial {t}"));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for t in 0..trials {
        let mut l = || LElement::from_terms(random_lattice_sum(&mut rng, false)).unwrap();
        let (x, y, z) = (l(), l(), l());
        if !jacobi_defect(&x, &y, &z, bracket_l).is_zero() {
            return Err(format!("auxiliary bracket, trial {t}"));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for t in 0..trials {
        let mut b = || {
            BPlusElement::from_terms((0..rng.gen_range(1..=3)).map(|_| {
                let d = rng.gen_range(0..=5u32);
                let r1 = rng.gen_range(0..=d);
                (MultiIndex::new(r1, d - r1), rat_int(rng.gen_range(-9..=9)))
            }))
        };
        let (x, y, z) = (b(), b(), b());
        if !jacobi_defect(&x, &y, &z, bracket_bplus).is_zero() {
            return Err(format!("block-type bracket, trial {t}"));
        }
    }
    Ok(())
}

fn criterion_2_element_regressions() -> Result<(), String> {
    // [-L(1,0), L(0,1)] = L(1,1) - L(1,0) - L(0,1)
    let h = l_basis(1, 1).sub(&l_basis(1, 0)).sub(&l_basis(0, 1));
    let lhs = bracket_l(&l_basis(1, 0).neg(), &l_basis(0, 1));
    if lhs != h {
        return Err("first quoted bracket".into());
    }

    // [h, -L(1,0)] = -(L(2,1) - L(1,1) - L(1,0)) + (L(1,1) - L(0,1) - L(1,0))
    let lhs = bracket_l(&h, &l_basis(1, 0).neg());
    let rhs = l_basis(2, 1)
        .sub(&l_basis(1, 1))
        .sub(&l_basis(1, 0))
        .neg()
        .add(&l_basis(1, 1).sub(&l_basis(0, 1)).sub(&l_basis(1, 0)));
    if lhs != rhs {
        return Err("second quoted bracket".into());
    }
    // its regrouping as -2L(1,0) minus an ideal element
    let w21 = l_basis(2, 1)
        .sub(&l_basis(1, 1).scale(&rat_int(2)))
        .sub(&l_basis(1, 0).scale(&rat_int(2)))
        .add(&l_basis(0, 1));
    if lhs != l_basis(1, 0).scale(&rat_int(-2)).sub(&w21) {
        return Err("second quoted bracket, regrouped form".into());
    }

    // [h, L(0,1)] = -(L(1,2) - L(1,1) - L(0,1)) + (L(1,1) - L(0,1) - L(1,0))
    let lhs = bracket_l(&h, &l_basis(0, 1));
    let rhs = l_basis(1, 2)
        .sub(&l_basis(1, 1))
        .sub(&l_basis(0, 1))
        .neg()
        .add(&l_basis(1, 1).sub(&l_basis(0, 1)).sub(&l_basis(1, 0)));
    if lhs != rhs {
        return Err("third quoted bracket".into());
    }

    // [D_{(1,1)}, D_{(2,0)}] = 2 D_{(2,0)} and [D_{(0,2)}, D_{(2,0)}] = 4 D_{(1,1)}
    if bracket_bplus(&bp(1, 1), &bp(2, 0)) != bp(2, 0).scale(&rat_int(2)) {
        return Err("first quoted block-type bracket".into());
    }
    if bracket_bplus(&bp(0, 2), &bp(2, 0)) != bp(1, 1).scale(&rat_int(4)) {
        return Err("second quoted block-type bracket".into());
    }

    // L(2,1) - 2L(1,1) - 2L(1,0) + L(0,1) lies in the quadratic-kernel ideal
    if !in_ideal_ik(&w21, 2).unwrap() {
        return Err("quoted ideal element".into());
    }
    Ok(())
}

fn criterion_3_ideal_filtration() -> Result<(), String> {
    let support = window_points(4);
    let mut rng = ChaCha8Rng::seed_from_u64(301);
    let grid = [2u32, 3, 4];
    for t in 0..200 {
        let k = grid[t % grid.len()];
        let l = grid[(t / grid.len()) % grid.len()];
        let x = random_ideal_element(&support, k, false, &mut rng).unwrap();
        let y = random_ideal_element(&support, l, false, &mut rng).unwrap();
        if !in_ideal_ik(&bracket_l(&x, &y), k + l - 1).unwrap() {
            return Err(format!("trial {t}: [I{k}, I{l}] escaped I{}", k + l - 1));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(302);
    let grid = [2u32, 3, 4, 5];
    for t in 0..200 {
        let k = grid[t % grid.len()];
        let l = grid[(t / grid.len()) % grid.len()];
        let mut random_jk = |k: u32| {
            BPlusElement::from_terms((0..rng.gen_range(1..=3)).map(|_| {
                let d = rng.gen_range(k..=k + 2);
                let r1 = rng.gen_range(0..=d);
                (MultiIndex::new(r1, d - r1), rat_int(rng.gen_range(-9..=9)))
            }))
        };
        let b = bracket_bplus(&random_jk(k), &random_jk(l));
        if !(b.is_zero() || in_ideal_jk(&b, k + l - 2).unwrap()) {
            return Err(format!("trial {t}: [J{k}, J{l}] escaped J{}", k + l - 2));
        }
    }
    Ok(())
}

fn criterion_4_reductive_quotient() -> Result<(), String> {
    let window = window_points(3);
    for m in &window {
        for n in &window {
            let lhs = project_reductive(&bracket_l(
                &LElement::basis(*m).unwrap(),
                &LElement::basis(*n).unwrap(),
            ));
            let rhs = ReductiveElement::bracket(
                &project_reductive(&LElement::basis(*m).unwrap()),
                &project_reductive(&LElement::basis(*n).unwrap()),
            );
            if lhs != rhs {
                return Err(format!("homomorphism fails at ({m}, {n})"));
            }
        }
    }

    // the images of -L(1,0), L(0,1), L(1,1)-L(1,0)-L(0,1) form an sl2 triple
    let img = |x: &LElement| project_reductive(x).sl2_part;
    let e = img(&l_basis(1, 0).neg());
    let f = img(&l_basis(0, 1));
    let h = img(&l_basis(1, 1).sub(&l_basis(1, 0)).sub(&l_basis(0, 1)));
    let comm = |a: &QMatrix, b: &QMatrix| QMatrix::commutator(a, b).unwrap();
    if comm(&e, &f) != h
        || comm(&h, &e) != e.scale(&rat_int(2))
        || comm(&h, &f) != f.scale(&rat_int(-2))
    {
        return Err("sl2 relations fail for the projected triple".into());
    }

    for r in 1..=3i64 {
        if window_codim_ik(2, r).unwrap() != 3 {
            return Err(format!("codimension of the quadratic kernel at radius {r}"));
        }
    }
    if window_codim_ik(3, 3).unwrap() != 7 {
        return Err("codimension of the cubic kernel at radius 3".into());
    }
    Ok(())
}

fn criterion_5_jet_axioms() -> Result<(), String> {
    let specs = standard_specs();
    let mut rng = ChaCha8Rng::seed_from_u64(501);
    for (i, spec) in specs.iter().enumerate() {
        let sample: Vec<LatticePoint> =
            (0..3).map(|_| random_point(&mut rng, 5, true)).collect();
        let report = vljet::jet::verify_jet_axioms(spec, 3, &sample).unwrap();
        if let Some(bad) = report.iter().find(|c| !c.pass) {
            return Err(format!("spec {i}: axiom {:?} fails", bad.axiom));
        }
    }

    // representation property on 200 seeded random (x, y, v)
    let mut rng = ChaCha8Rng::seed_from_u64(502);
    for t in 0..200 {
        let spec = &specs[t % specs.len()];
        let mut ga = || {
            let g = GElement::from_terms([(
                random_point(&mut rng, 3, false),
                rat_int(rng.gen_range(-3..=3)),
            )])
            .unwrap();
            let a = AElement::from_terms([(
                random_point(&mut rng, 2, true),
                rat_int(rng.gen_range(-3..=3)),
            )])
            .unwrap();
            GAElement::new(g, a)
        };
        let (x, y) = (ga(), ga());
        let v = ModuleVector::basis_at(
            spec.dim(),
            random_point(&mut rng, 2, true),
            rng.gen_range(0..spec.dim()),
        );
        let lhs = act_element(spec, &bracket_semidirect(&x, &y), &v).unwrap();
        let rhs = act_element(spec, &x, &act_element(spec, &y, &v).unwrap())
            .unwrap()
            .sub(&act_element(spec, &y, &act_element(spec, &x, &v).unwrap()).unwrap())
            .unwrap();
        if lhs != rhs {
            return Err(format!("representation property fails on trial {t}"));
        }
    }
    Ok(())
}

fn criterion_6_extracted_bracket() -> Result<(), String> {
    let window = window_points(3);
    for (i, spec) in standard_specs().iter().enumerate() {
        let mut cache = LCache::new(spec);
        for m in &window {
            for n in &window {
                let comm = QMatrix::commutator(&cache.get(m), &cache.get(n)).unwrap();
                let c = rat_int(det_pair(n, m));
                let sum = lp(m.m1 + n.m1, m.m2 + n.m2);
                let mut rhs = cache.get(m).add(&cache.get(n)).unwrap().neg();
                if !sum.is_zero() {
                    rhs = rhs.add(&cache.get(&sum)).unwrap();
                }
                if comm != rhs.scale(&c) {
                    return Err(format!("spec {i}: bracket fails at ({m}, {n})"));
                }
            }
        }
    }
    Ok(())
}

fn criterion_7_generator_map_agreement() -> Result<(), String> {
    for (i, spec) in standard_specs().iter().enumerate() {
        let JetModuleSpec::F { alpha, lambda, rep } = spec else { unreachable!() };
        let bspec =
            JetModuleSpec::b(lambda.clone(), bplus_from_sl2(rep, alpha)).unwrap();
        for a in -2..=2i64 {
            for b in -2..=2i64 {
                let n = lp(a, b);
                for c in -2..=2i64 {
                    for d in -2..=2i64 {
                        let m = lp(c, d);
                        if !m.is_zero()
                            && spec.act_d_matrix(&m, &n).unwrap()
                                != bspec.act_d_matrix(&m, &n).unwrap()
                        {
                            return Err(format!("spec {i}: d-action differs at m={m}, n={n}"));
                        }
                    }
                }
                for k in 0..spec.dim() {
                    let v = ModuleVector::basis_at(spec.dim(), n, k);
                    for c in -2..=2i64 {
                        for d in -2..=2i64 {
                            let m = lp(c, d);
                            if act_t(spec, &m, &v).unwrap() != act_t(&bspec, &m, &v).unwrap() {
                                return Err(format!(
                                    "spec {i}: t-action differs at m={m}, n={n}"
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// A random integer matrix with determinant 1, as a product of unitriangular
/// factors.
fn random_unimodular<R: Rng>(dim: usize, rng: &mut R) -> QMatrix {
    let mut lower = QMatrix::identity(dim);
    let mut upper = QMatrix::identity(dim);
    for i in 0..dim {
        for j in 0..i {
            lower.set(i, j, rat_int(rng.gen_range(-2..=2)));
            upper.set(j, i, rat_int(rng.gen_range(-2..=2)));
        }
    }
    lower.mul(&upper).unwrap()
}

fn criterion_8_fit_roundtrip() -> Result<(), String> {
    for (i, spec) in standard_specs().iter().enumerate() {
        let report = theorem_roundtrip(spec, 4).map_err(|e| format!("spec {i}: {e}"))?;
        if !report.all_pass() {
            return Err(format!("spec {i}: {report:?}"));
        }
        let JetModuleSpec::F { alpha, rep, .. } = spec else { unreachable!() };
        let expected_degree = bplus_from_sl2(rep, alpha).max_degree();
        if report.fit_degree != expected_degree {
            return Err(format!(
                "spec {i}: fit degree {} instead of {expected_degree}",
                report.fit_degree
            ));
        }
    }

    // conjugated generator maps of degree <= 3 round-trip as well
    let mut rng = ChaCha8Rng::seed_from_u64(801);
    for t in 0..5 {
        let n = rng.gen_range(1..=2i64);
        let alpha = (rat_int(rng.gen_range(-2..=2)), rat(rng.gen_range(-3..=3), 2));
        let base = bplus_from_sl2(&sl2_irrep(n).unwrap(), &alpha);
        let g = random_unimodular(base.dim(), &mut rng);
        let conj = base.conjugate(&g).unwrap();
        if conj.max_degree() > 3 {
            return Err(format!("trial {t}: generator degree out of range"));
        }
        let spec = JetModuleSpec::b(rat_int(rng.gen_range(1..=3)), conj).unwrap();
        let report = theorem_roundtrip(&spec, 4).map_err(|e| format!("trial {t}: {e}"))?;
        if !report.all_pass() {
            return Err(format!("trial {t}: {report:?}"));
        }
    }
    Ok(())
}

fn criterion_9_ideal_acts_as_zero() -> Result<(), String> {
    let support = window_points(4);
    let mut rng = ChaCha8Rng::seed_from_u64(901);
    let elements: Vec<LElement> = (0..100)
        .map(|_| random_ideal_element(&support, 2, true, &mut rng).unwrap())
        .collect();
    for (i, spec) in standard_specs().iter().enumerate() {
        let mut cache = LCache::new(spec);
        for (t, x) in elements.iter().enumerate() {
            let mut acc = QMatrix::zero(spec.dim(), spec.dim());
            for (m, c) in x.iter() {
                acc = acc.add(&cache.get(m).scale(c)).unwrap();
            }
            if !acc.is_zero() {
                return Err(format!("spec {i}, element {t}: nonzero action"));
            }
        }
    }
    Ok(())
}

fn criterion_10_classification() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    for t in 0..10 {
        let alpha = (rat(rng.gen_range(-6..=6), 3), rat(rng.gen_range(-6..=6), 2));
        let lambda = rat_int(rng.gen_range(1..=3));
        let n = rng.gen_range(0..=3i64);
        let base =
            JetModuleSpec::f(alpha.clone(), lambda.clone(), sl2_irrep(n).unwrap()).unwrap();
        let shift = (rat_int(rng.gen_range(-5..=5)), rat_int(rng.gen_range(-5..=5)));
        let shifted = JetModuleSpec::f(
            (alpha.0.clone() + &shift.0, alpha.1.clone() + &shift.1),
            lambda.clone(),
            sl2_irrep(n).unwrap(),
        )
        .unwrap();
        if !f_isomorphic(&base, &shifted).unwrap() {
            return Err(format!("trial {t}: integer shift not detected"));
        }

        let scale_changed =
            JetModuleSpec::f(alpha.clone(), lambda.clone() + rat_int(1), sl2_irrep(n).unwrap())
                .unwrap();
        let fiber_changed =
            JetModuleSpec::f(alpha.clone(), lambda.clone(), sl2_irrep(n + 1).unwrap()).unwrap();
        let off_lattice = JetModuleSpec::f(
            (alpha.0.clone() + rat(1, 2), alpha.1.clone()),
            lambda.clone(),
            sl2_irrep(n).unwrap(),
        )
        .unwrap();
        for (what, other) in
            [("scale", scale_changed), ("fiber", fiber_changed), ("weight", off_lattice)]
        {
            if f_isomorphic(&base, &other).unwrap() {
                return Err(format!("trial {t}: {what} perturbation not detected"));
            }
        }
    }

    for n in 0..=12 {
        if !sl2_is_irreducible(&sl2_irrep(n).unwrap()) {
            return Err(format!("irreducibility fails for highest weight {n}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1002);
    for t in 0..10 {
        let a = sl2_irrep(rng.gen_range(0..=5)).unwrap();
        let b = sl2_irrep(rng.gen_range(0..=5)).unwrap();
        if sl2_is_irreducible(&a.direct_sum(&b)) {
            return Err(format!("trial {t}: two-block sum reported irreducible"));
        }
    }

    let alpha = (rat(1, 2), rat_int(-1));
    for n in 0..=4 {
        let rep = bplus_from_sl2(&sl2_irrep(n).unwrap(), &alpha);
        if bplus_indecomposable(&rep, 16, 42) != Indecomposability::Yes {
            return Err(format!("indecomposable verdict fails for highest weight {n}"));
        }
        let sum = rep.direct_sum(&rep).unwrap();
        if bplus_indecomposable(&sum, 16, 42) != Indecomposability::No {
            return Err(format!("decomposable verdict fails for highest weight {n}"));
        }
    }
    Ok(())
}

fn criterion_11_difference_derivatives() -> Result<(), String> {
    for s in -3..=3i64 {
        for l in 3..=8u32 {
            for k in 2..l.min(8) {
                let x = diff_derivative(1, s, l).unwrap();
                if !in_ideal_ik(&x, k).unwrap() {
                    return Err(format!(
                        "order-{l} derivative at {s} escapes the degree-{k} kernel"
                    ));
                }
            }
        }
    }

    // operator-level alternating sums vanish beyond the fitted degree
    let specs = [
        JetModuleSpec::f((rat(1, 2), rat_int(0)), rat_int(1), sl2_irrep(1).unwrap()).unwrap(),
        JetModuleSpec::f((rat(1, 3), rat_int(-2)), rat_int(2), sl2_irrep(2).unwrap()).unwrap(),
    ];
    for (i, spec) in specs.iter().enumerate() {
        let dim = spec.dim();
        let family =
            fit_family(|m| extract_l(spec, m).unwrap(), 4, dim).map_err(|e| e.to_string())?;
        let d = family.degree();
        for l in (d + 1)..=(d + 3) {
            for s in -2..=2i64 {
                let mut acc = QMatrix::zero(dim, dim);
                for j in 0..=l {
                    let sign = if (l - j) % 2 == 0 { 1 } else { -1 };
                    let c = rat_int(sign)
                        * BigRational::from_integer(vljet::lattice::binomial(l, j));
                    acc = acc.add(&family.eval(&lp(s + j as i64, 1)).scale(&c)).unwrap();
                }
                if !acc.is_zero() {
                    return Err(format!("spec {i}: order-{l} sum at {s} is nonzero"));
                }
            }
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, fn() -> Result<(), String>)> = vec![
        ("criterion 1: jacobi identity for all four brackets", criterion_1_jacobi),
        ("criterion 2: quoted element regressions", criterion_2_element_regressions),
        ("criterion 3: ideal filtrations close under brackets", criterion_3_ideal_filtration),
        ("criterion 4: reductive quotient projection", criterion_4_reductive_quotient),
        ("criterion 5: jet module axioms and representation property", criterion_5_jet_axioms),
        ("criterion 6: extracted operators realize the auxiliary bracket", criterion_6_extracted_bracket),
        ("criterion 7: generator-map module agrees with the fiber module", criterion_7_generator_map_agreement),
        ("criterion 8: extract-fit round-trip recovers the generators", criterion_8_fit_roundtrip),
        ("criterion 9: the quadratic-kernel ideal acts as zero", criterion_9_ideal_acts_as_zero),
        ("criterion 10: classification and irreducibility verdicts", criterion_10_classification),
        ("criterion 11: difference derivatives fall into the filtration", criterion_11_difference_derivatives),
    ];
    let mut failures = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(()) => println!("PASS {name}"),
            Err(detail) => {
                println!("FAIL {name} — {detail}");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
