//! Jet modules: construction from a spec, the semidirect-product action,
//! grade-zero operator extraction, axiom verification, and the isomorphism
//! classifier for the irreducible family.

use crate::error::{Error, Result};
use crate::formal::GAElement;
use crate::ideal::window_points;
use crate::lattice::{det_pair, monomial, multi_factorial, LatticePoint};
use crate::matrix::QMatrix;
use crate::rep::{sl2_is_irreducible, sl2_isomorphic, BPlusRep, SL2Rep};
use crate::scalar::{rat_int, rat_is_integer, Rational};
use num::{BigRational, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

/// A complete recipe for a jet module: either the irreducible family built
/// from an sl2 representation and parameters (alpha, lambda), or the general
/// family induced by a Block-type representation and lambda.
#[derive(Clone, Debug, PartialEq)]
pub enum JetModuleSpec {
    F { alpha: (Rational, Rational), lambda: Rational, rep: SL2Rep },
    B { lambda: Rational, rep: BPlusRep },
}

impl JetModuleSpec {
    pub fn f(alpha: (Rational, Rational), lambda: Rational, rep: SL2Rep) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::InvalidParameter("lambda must be nonzero".into()));
        }
        Ok(JetModuleSpec::F { alpha, lambda, rep })
    }

    pub fn b(lambda: Rational, rep: BPlusRep) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::InvalidParameter("lambda must be nonzero".into()));
        }
        Ok(JetModuleSpec::B { lambda, rep })
    }

    pub fn dim(&self) -> usize {
        match self {
            JetModuleSpec::F { rep, .. } => rep.dim(),
            JetModuleSpec::B { rep, .. } => rep.dim(),
        }
    }

    pub fn lambda(&self) -> &Rational {
        match self {
            JetModuleSpec::F { lambda, .. } | JetModuleSpec::B { lambda, .. } => lambda,
        }
    }

    /// The matrix by which d_m maps the grade-n component into grade m+n.
    pub fn act_d_matrix(&self, m: &LatticePoint, n: &LatticePoint) -> Result<QMatrix> {
        if m.is_zero() {
            return Err(Error::ZeroIndex);
        }
        let dim = self.dim();
        match self {
            JetModuleSpec::F { alpha, rep, .. } => {
                let (m1, m2) = (m.m1, m.m2);
                let sl2 = rep.apply_combo(
                    &rat_int(m1 * m2),
                    &rat_int(-m1 * m1),
                    &rat_int(m2 * m2),
                );
                // det with alpha + n as the top row
                let shift = (alpha.0.clone() + rat_int(n.m1)) * rat_int(m2)
                    - (alpha.1.clone() + rat_int(n.m2)) * rat_int(m1);
                sl2.add(&QMatrix::scalar(dim, &shift))
            }
            JetModuleSpec::B { rep, .. } => {
                let mut out = QMatrix::scalar(dim, &rat_int(det_pair(n, m)));
                for (i, d) in rep.gens() {
                    let c = BigRational::new(monomial(m, i), multi_factorial(i));
                    out = out.add(&d.scale(&c))?;
                }
                Ok(out)
            }
        }
    }
}

/// Element of the graded module: a finite-support map from grades to
/// coordinate vectors. Zero vectors are dropped on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleVector {
    dim: usize,
    support: BTreeMap<LatticePoint, Vec<Rational>>,
}

impl ModuleVector {
    pub fn zero(dim: usize) -> Self {
        ModuleVector { dim, support: BTreeMap::new() }
    }

    pub fn from_support(
        dim: usize,
        support: impl IntoIterator<Item = (LatticePoint, Vec<Rational>)>,
    ) -> Result<Self> {
        let mut out = ModuleVector::zero(dim);
        for (grade, vec) in support {
            if vec.len() != dim {
                return Err(Error::DimMismatch(format!(
                    "vector at grade {grade} has length {}, expected {dim}",
                    vec.len()
                )));
            }
            out.accumulate(grade, vec);
        }
        Ok(out)
    }

    /// The k-th coordinate basis vector placed at a single grade.
    pub fn basis_at(dim: usize, grade: LatticePoint, k: usize) -> Self {
        let mut v = vec![Rational::zero(); dim];
        v[k] = rat_int(1);
        ModuleVector::from_support(dim, [(grade, v)]).expect("basis vector has the right length")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = (&LatticePoint, &Vec<Rational>)> {
        self.support.iter()
    }

    pub fn component(&self, grade: &LatticePoint) -> Vec<Rational> {
        self.support.get(grade).cloned().unwrap_or_else(|| vec![Rational::zero(); self.dim])
    }

    fn accumulate(&mut self, grade: LatticePoint, vec: Vec<Rational>) {
        let entry =
            self.support.entry(grade).or_insert_with(|| vec![Rational::zero(); self.dim]);
        for (slot, v) in entry.iter_mut().zip(vec) {
            *slot += v;
        }
        if entry.iter().all(|x| x.is_zero()) {
            self.support.remove(&grade);
        }
    }

    pub fn add(&self, other: &ModuleVector) -> Result<ModuleVector> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch("module vectors of different fiber dimension".into()));
        }
        let mut out = self.clone();
        for (g, v) in other.support() {
            out.accumulate(*g, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &ModuleVector) -> Result<ModuleVector> {
        self.add(&other.scale(&rat_int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> ModuleVector {
        if c.is_zero() {
            return ModuleVector::zero(self.dim);
        }
        let support =
            self.support.iter().map(|(g, v)| (*g, v.iter().map(|x| x * c).collect())).collect();
        ModuleVector { dim: self.dim, support }
    }
}

/// Action of t^m: shift every grade by m and scale by lambda. Valid for all
/// m including (0,0), where t^0 acts as the scalar lambda.
pub fn act_t(spec: &JetModuleSpec, m: &LatticePoint, v: &ModuleVector) -> Result<ModuleVector> {
    if v.dim() != spec.dim() {
        return Err(Error::DimMismatch("vector dimension does not match the module".into()));
    }
    let lambda = spec.lambda();
    let support = v
        .support
        .iter()
        .map(|(n, u)| (n.add(m), u.iter().map(|x| x * lambda).collect()))
        .collect();
    Ok(ModuleVector { dim: v.dim, support })
}

/// Action of d_m, m != (0,0): each grade-n component is mapped into grade
/// m+n by the grade-local action matrix.
pub fn act_d(spec: &JetModuleSpec, m: &LatticePoint, v: &ModuleVector) -> Result<ModuleVector> {
    if v.dim() != spec.dim() {
        return Err(Error::DimMismatch("vector dimension does not match the module".into()));
    }
    let mut out = ModuleVector::zero(v.dim());
    for (n, u) in v.support() {
        let mat = spec.act_d_matrix(m, n)?;
        out.accumulate(m.add(n), mat.apply(u)?);
    }
    Ok(out)
}

/// Linear extension of act_d and act_t over a semidirect-product element.
pub fn act_element(
    spec: &JetModuleSpec,
    x: &GAElement,
    v: &ModuleVector,
) -> Result<ModuleVector> {
    let mut out = ModuleVector::zero(spec.dim());
    for (m, c) in x.g_part.iter() {
        out = out.add(&act_d(spec, m, v)?.scale(c))?;
    }
    for (m, c) in x.a_part.iter() {
        out = out.add(&act_t(spec, m, v)?.scale(c))?;
    }
    Ok(out)
}

/// The grade-zero operator of d_m: the matrix sending a grade-(0,0) vector
/// to its grade-m image.
pub fn extract_l(spec: &JetModuleSpec, m: &LatticePoint) -> Result<QMatrix> {
    spec.act_d_matrix(m, &LatticePoint::zero())
}

/// One line of the jet-axiom report.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub pass: bool,
    pub counterexample: Option<String>,
}

impl AxiomCheck {
    fn pass(axiom: &str) -> Self {
        AxiomCheck { axiom: axiom.into(), pass: true, counterexample: None }
    }
    fn fail(axiom: &str, cx: String) -> Self {
        AxiomCheck { axiom: axiom.into(), pass: false, counterexample: Some(cx) }
    }
}

/// Verify the defining module identities exactly over a finite window,
/// reporting pass/fail per axiom with the first counterexample found.
pub fn verify_jet_axioms(
    spec: &JetModuleSpec,
    window_radius: i64,
    sample_grades: &[LatticePoint],
) -> Result<Vec<AxiomCheck>> {
    if window_radius < 1 {
        return Err(Error::InvalidParameter(format!(
            "window radius must be >= 1, got {window_radius}"
        )));
    }
    let nonzero = window_points(window_radius);
    let mut full = nonzero.clone();
    full.push(LatticePoint::zero());
    let dim = spec.dim();
    let lambda = spec.lambda();
    let mut report = Vec::new();

    // cache of grade-local action matrices
    let mut cache: BTreeMap<(LatticePoint, LatticePoint), QMatrix> = BTreeMap::new();
    let mat = |m: &LatticePoint, n: &LatticePoint,
                   cache: &mut BTreeMap<(LatticePoint, LatticePoint), QMatrix>|
     -> Result<QMatrix> {
        if let Some(hit) = cache.get(&(*m, *n)) {
            return Ok(hit.clone());
        }
        let out = spec.act_d_matrix(m, n)?;
        cache.insert((*m, *n), out.clone());
        Ok(out)
    };

    // (a) [d_m, d_n] acts as det(n over m) d_{m+n}
    let mut check_a = None;
    'a: for m in &nonzero {
        for n in &nonzero {
            for p in sample_grades {
                let lhs = mat(m, &n.add(p), &mut cache)?
                    .mul(&mat(n, p, &mut cache)?)?
                    .sub(&mat(n, &m.add(p), &mut cache)?.mul(&mat(m, p, &mut cache)?)?)?;
                let s = m.add(n);
                let rhs = if s.is_zero() {
                    QMatrix::zero(dim, dim)
                } else {
                    mat(&s, p, &mut cache)?.scale(&rat_int(det_pair(n, m)))
                };
                if lhs != rhs {
                    check_a = Some(format!("m={m}, n={n}, grade={p}"));
                    break 'a;
                }
            }
        }
    }
    report.push(match check_a {
        None => AxiomCheck::pass("bracket of d operators"),
        Some(cx) => AxiomCheck::fail("bracket of d operators", cx),
    });

    // (b) [d_m, t^n] acts as det(n over m) t^{m+n}
    let mut check_b = None;
    'b: for m in &nonzero {
        for n in &full {
            for p in sample_grades {
                let lhs = mat(m, &n.add(p), &mut cache)?
                    .scale(lambda)
                    .sub(&mat(m, p, &mut cache)?.scale(lambda))?;
                let rhs = QMatrix::scalar(dim, &(rat_int(det_pair(n, m)) * lambda));
                if lhs != rhs {
                    check_b = Some(format!("m={m}, n={n}, grade={p}"));
                    break 'b;
                }
            }
        }
    }
    report.push(match check_b {
        None => AxiomCheck::pass("bracket of d with t"),
        Some(cx) => AxiomCheck::fail("bracket of d with t", cx),
    });

    // (c) [t^m, t^n] acts as zero, via the actual action on sample vectors
    let mut check_c = None;
    'c: for m in full.iter().take(6) {
        for n in full.iter().take(6) {
            for p in sample_grades {
                for k in 0..dim {
                    let v = ModuleVector::basis_at(dim, *p, k);
                    let ab = act_t(spec, m, &act_t(spec, n, &v)?)?;
                    let ba = act_t(spec, n, &act_t(spec, m, &v)?)?;
                    if ab != ba {
                        check_c = Some(format!("m={m}, n={n}, grade={p}, basis={k}"));
                        break 'c;
                    }
                }
            }
        }
    }
    report.push(match check_c {
        None => AxiomCheck::pass("t operators commute"),
        Some(cx) => AxiomCheck::fail("t operators commute", cx),
    });

    // (d) quasi-associativity t^m t^n v = lambda t^{m+n} v
    let mut check_d = None;
    'd: for m in &nonzero {
        for n in &nonzero {
            if m.add(n).is_zero() {
                continue;
            }
            for p in sample_grades {
                for k in 0..dim {
                    let v = ModuleVector::basis_at(dim, *p, k);
                    let lhs = act_t(spec, m, &act_t(spec, n, &v)?)?;
                    let rhs = act_t(spec, &m.add(n), &v)?.scale(lambda);
                    if lhs != rhs {
                        check_d = Some(format!("m={m}, n={n}, grade={p}, basis={k}"));
                        break 'd;
                    }
                }
            }
        }
    }
    report.push(match check_d {
        None => AxiomCheck::pass("quasi-associativity"),
        Some(cx) => AxiomCheck::fail("quasi-associativity", cx),
    });

    // (e) every t^m acts bijectively: the action is the invertible scalar
    // lambda composed with a grade shift
    if lambda.is_zero() {
        report.push(AxiomCheck::fail("t operators bijective", "lambda = 0".into()));
    } else {
        report.push(AxiomCheck::pass("t operators bijective"));
    }

    // (f) homogeneous components all have the fiber dimension
    let square = sample_grades.iter().all(|p| {
        (0..dim).all(|k| {
            let v = ModuleVector::basis_at(dim, *p, k);
            v.component(p).len() == dim
        })
    });
    if square {
        report.push(AxiomCheck::pass("homogeneous dimensions uniform"));
    } else {
        report.push(AxiomCheck::fail("homogeneous dimensions uniform", "fiber mismatch".into()));
    }

    Ok(report)
}

/// Irreducibility of an F-variant spec; delegated to the sl2 test.
pub fn f_is_irreducible(spec: &JetModuleSpec) -> Result<bool> {
    match spec {
        JetModuleSpec::F { rep, .. } => Ok(sl2_is_irreducible(rep)),
        JetModuleSpec::B { .. } => Err(Error::InvalidParameter(
            "irreducibility test applies to F-variant specs; use the indecomposability probe".into(),
        )),
    }
}

/// Isomorphism of two irreducible F-variant jet modules: an integer shift of
/// alpha, equal lambda, and isomorphic sl2 fibers.
pub fn f_isomorphic(a: &JetModuleSpec, b: &JetModuleSpec) -> Result<bool> {
    let (JetModuleSpec::F { alpha: aa, lambda: la, rep: ra },
         JetModuleSpec::F { alpha: ab, lambda: lb, rep: rb }) = (a, b)
    else {
        return Err(Error::InvalidParameter("classification applies to F-variant specs".into()));
    };
    if !f_is_irreducible(a)? || !f_is_irreducible(b)? {
        return Err(Error::NotIrreducible);
    }
    let d1 = aa.0.clone() - ab.0.clone();
    let d2 = aa.1.clone() - ab.1.clone();
    Ok(rat_is_integer(&d1) && rat_is_integer(&d2) && la == lb && sl2_isomorphic(ra, rb)?)
}
