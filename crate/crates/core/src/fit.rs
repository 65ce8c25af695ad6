//! Recover the polynomial coefficient operators of an operator family
//! m -> L(m) by exact interpolation, and verify the recovered family against
//! the Block-type commutator relations.

use crate::error::{Error, Result};
use crate::jet::{extract_l, JetModuleSpec};
use crate::lattice::{monomial, multi_factorial, LatticePoint, MultiIndex};
use crate::matrix::QMatrix;
use crate::rep::{bplus_from_sl2, validate_bplus_rep, BPlusRep};
use num::BigRational;
use serde::Serialize;
use std::collections::BTreeMap;

/// A finite family of coefficient matrices D_i against the basis m^i / i!.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyOperatorFamily {
    dim: usize,
    coeffs: BTreeMap<MultiIndex, QMatrix>,
}

impl PolyOperatorFamily {
    pub fn new(dim: usize, coeffs: BTreeMap<MultiIndex, QMatrix>) -> Result<Self> {
        for (i, m) in &coeffs {
            if !m.is_square() || m.rows() != dim {
                return Err(Error::DimMismatch(format!(
                    "coefficient D_{i} must be {dim}x{dim}"
                )));
            }
        }
        let coeffs = coeffs.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        Ok(PolyOperatorFamily { dim, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &BTreeMap<MultiIndex, QMatrix> {
        &self.coeffs
    }

    pub fn coeff(&self, i: &MultiIndex) -> QMatrix {
        self.coeffs.get(i).cloned().unwrap_or_else(|| QMatrix::zero(self.dim, self.dim))
    }

    /// Largest total degree with a nonzero coefficient.
    pub fn degree(&self) -> u32 {
        self.coeffs.keys().map(MultiIndex::degree).max().unwrap_or(0)
    }

    /// Evaluate sum over i of m^i / i! * D_i.
    pub fn eval(&self, m: &LatticePoint) -> QMatrix {
        let mut out = QMatrix::zero(self.dim, self.dim);
        for (i, d) in &self.coeffs {
            let c = BigRational::new(monomial(m, i), multi_factorial(i));
            out = out.add(&d.scale(&c)).expect("square matrices of equal size");
        }
        out
    }
}

/// Evaluation grid for candidate degree d: the square {1, ..., d+2}^2.
fn fit_grid(d: u32) -> Vec<LatticePoint> {
    let top = d as i64 + 2;
    let mut out = Vec::new();
    for a in 1..=top {
        for b in 1..=top {
            out.push(LatticePoint::new(a, b));
        }
    }
    out
}

/// Held-out validation set for candidate degree d: points on the lines
/// m1 = -1 and m2 = -1, which the grid never touches.
fn held_out(d: u32) -> Vec<LatticePoint> {
    let top = d as i64 + 2;
    let mut out = Vec::new();
    for k in 1..=top {
        out.push(LatticePoint::new(-1, k));
        out.push(LatticePoint::new(k, -1));
    }
    out
}

/// Interpolate the least-degree polynomial family matching the sampler on
/// the evaluation grid and the held-out set, for some degree <= degree_cap.
pub fn fit_family<F>(sampler: F, degree_cap: u32, dim: usize) -> Result<PolyOperatorFamily>
where
    F: Fn(&LatticePoint) -> QMatrix,
{
    let mut last_residual = LatticePoint::new(1, 1);
    for d in 0..=degree_cap {
        let indices = MultiIndex::degree_range(0, d);
        let grid = fit_grid(d);
        // one shared coefficient matrix, one right-hand column per matrix entry
        let mut a = QMatrix::zero(grid.len(), indices.len());
        let mut b = QMatrix::zero(grid.len(), dim * dim);
        for (row, m) in grid.iter().enumerate() {
            for (col, i) in indices.iter().enumerate() {
                a.set(row, col, BigRational::new(monomial(m, i), multi_factorial(i)));
            }
            let sample = sampler(m);
            for (col, entry) in sample.entries().iter().enumerate() {
                b.set(row, col, entry.clone());
            }
        }
        let Some(x) = a.solve(&b)? else {
            last_residual = grid[0];
            continue;
        };
        // the grid has at least as many points as unknowns and the monomials
        // are independent on it, so the solution is the unique candidate
        debug_assert_eq!(a.rank(), indices.len());
        let mut coeffs = BTreeMap::new();
        for (row, i) in indices.iter().enumerate() {
            let data = (0..dim * dim).map(|c| x.get(row, c).clone()).collect();
            coeffs.insert(*i, QMatrix::new(dim, dim, data)?);
        }
        let family = PolyOperatorFamily::new(dim, coeffs)?;
        match held_out(d).iter().find(|m| family.eval(m) != sampler(m)) {
            None => return Ok(family),
            Some(m) => last_residual = *m,
        }
    }
    Err(Error::NoPolynomialFit {
        cap: degree_cap,
        point: (last_residual.m1, last_residual.m2),
    })
}

/// Exact agreement of the family with the sampler at every probe point.
pub fn verify_fit<F>(family: &PolyOperatorFamily, sampler: F, probes: &[LatticePoint]) -> bool
where
    F: Fn(&LatticePoint) -> QMatrix,
{
    probes.iter().all(|m| family.eval(m) == sampler(m))
}

/// Whether the coefficient matrices satisfy the Block-type commutator
/// relations.
pub fn check_bplus_relations(family: &PolyOperatorFamily) -> bool {
    validate_bplus_rep(family.dim, family.coeffs.clone()).is_ok()
}

/// Report of the full extraction-interpolation-verification pipeline.
#[derive(Clone, Debug, Serialize)]
pub struct RoundtripReport {
    pub fit_degree: u32,
    pub probes_pass: bool,
    pub relations_pass: bool,
    /// For F-variant specs: exact agreement of the fitted coefficients with
    /// the closed-form generator assignment. None for B-variant specs.
    pub closed_form_pass: Option<bool>,
    /// For B-variant specs: fitted coefficients equal the input generators.
    pub input_generators_pass: Option<bool>,
}

impl RoundtripReport {
    pub fn all_pass(&self) -> bool {
        self.probes_pass
            && self.relations_pass
            && self.closed_form_pass.unwrap_or(true)
            && self.input_generators_pass.unwrap_or(true)
    }
}

/// Probe points far outside every fit grid and held-out line.
fn distant_probes(count: usize) -> Vec<LatticePoint> {
    (0..count as i64).map(|k| LatticePoint::new(11 + k, -3 - k)).collect()
}

/// Run extract -> fit -> held-out probes -> relation check, plus the
/// closed-form coefficient comparison for F-variant specs.
pub fn theorem_roundtrip(spec: &JetModuleSpec, degree_cap: u32) -> Result<RoundtripReport> {
    let dim = spec.dim();
    let sampler = |m: &LatticePoint| extract_l(spec, m).expect("nonzero probe index");
    let family = fit_family(sampler, degree_cap, dim)?;
    let probes_pass = verify_fit(&family, sampler, &distant_probes(20));
    let relations_pass = check_bplus_relations(&family);
    let (closed_form_pass, input_generators_pass) = match spec {
        JetModuleSpec::F { alpha, rep, .. } => {
            let expect = bplus_from_sl2(rep, alpha);
            (Some(family.coeffs == *expect.gens()), None)
        }
        JetModuleSpec::B { rep, .. } => (None, Some(family.coeffs == *rep.gens())),
    };
    Ok(RoundtripReport {
        fit_degree: family.degree(),
        probes_pass,
        relations_pass,
        closed_form_pass,
        input_generators_pass,
    })
}

/// Convert a fitted family into a validated Block-type representation.
pub fn family_as_bplus_rep(family: &PolyOperatorFamily) -> Result<BPlusRep> {
    validate_bplus_rep(family.dim, family.coeffs.clone())
}
