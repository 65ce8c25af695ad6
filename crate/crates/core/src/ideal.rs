//! The filtration ideals of the auxiliary algebra and of the positive
//! Block-type algebra, the derived-subalgebra test, the projection onto the
//! reductive quotient, and difference derivatives.

use crate::error::{Error, Result};
use crate::formal::{BPlusElement, LElement};
use crate::lattice::{binomial, monomial, LatticePoint, MultiIndex};
use crate::matrix::QMatrix;
use crate::scalar::{rat_int, Rational};
use num::{BigRational, Zero};
use rand::Rng;

/// Element of the reductive quotient sl2 + two central lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductiveElement {
    /// 2x2 traceless matrix.
    pub sl2_part: QMatrix,
    pub z1_coeff: Rational,
    pub z2_coeff: Rational,
}

impl ReductiveElement {
    pub fn new(sl2_part: QMatrix, z1_coeff: Rational, z2_coeff: Rational) -> Result<Self> {
        if sl2_part.rows() != 2 || sl2_part.cols() != 2 {
            return Err(Error::DimMismatch("sl2 part must be 2x2".into()));
        }
        if !sl2_part.trace().is_zero() {
            return Err(Error::InvalidParameter("sl2 part must be traceless".into()));
        }
        Ok(ReductiveElement { sl2_part, z1_coeff, z2_coeff })
    }

    pub fn zero() -> Self {
        ReductiveElement {
            sl2_part: QMatrix::zero(2, 2),
            z1_coeff: Rational::zero(),
            z2_coeff: Rational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sl2_part.is_zero() && self.z1_coeff.is_zero() && self.z2_coeff.is_zero()
    }

    /// Bracket of the quotient: matrix commutator on the sl2 part, zero on
    /// the central coordinates.
    pub fn bracket(a: &ReductiveElement, b: &ReductiveElement) -> ReductiveElement {
        ReductiveElement {
            sl2_part: QMatrix::commutator(&a.sl2_part, &b.sl2_part).expect("2x2 commutator"),
            z1_coeff: Rational::zero(),
            z2_coeff: Rational::zero(),
        }
    }
}

/// The linear functional sending sum a_i L(m_i) to sum a_i m_i^r.
pub fn phi_r(x: &LElement, r: &MultiIndex) -> Rational {
    let mut acc = Rational::zero();
    for (m, a) in x.iter() {
        acc += a * BigRational::from_integer(monomial(m, r));
    }
    acc
}

/// Membership in the ideal cut out by phi_r = 0 for 2 <= |r| <= k.
pub fn in_ideal_ik(x: &LElement, k: u32) -> Result<bool> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("ideal index k must be >= 2, got {k}")));
    }
    Ok(MultiIndex::degree_range(2, k).iter().all(|r| phi_r(x, r).is_zero()))
}

/// Membership in the derived subalgebra: sum a_i m_i = (0,0).
pub fn in_derived(x: &LElement) -> bool {
    let mut s1 = Rational::zero();
    let mut s2 = Rational::zero();
    for (m, a) in x.iter() {
        s1 += a * rat_int(m.m1);
        s2 += a * rat_int(m.m2);
    }
    s1.is_zero() && s2.is_zero()
}

/// Linear extension of the projection onto sl2 plus two central lines:
/// L(m) maps to [[m1*m2, -m1^2], [m2^2, -m1*m2]] + m1*z1 + m2*z2.
pub fn project_reductive(x: &LElement) -> ReductiveElement {
    let mut sl2 = QMatrix::zero(2, 2);
    let mut z1 = Rational::zero();
    let mut z2 = Rational::zero();
    for (m, a) in x.iter() {
        let (m1, m2) = (m.m1, m.m2);
        let block = QMatrix::from_int_rows(&[&[m1 * m2, -m1 * m1], &[m2 * m2, -m1 * m2]]);
        sl2 = sl2.add(&block.scale(a)).expect("2x2 add");
        z1 += a * rat_int(m1);
        z2 += a * rat_int(m2);
    }
    ReductiveElement { sl2_part: sl2, z1_coeff: z1, z2_coeff: z2 }
}

/// Rank of the evaluation matrix of the phi_r functionals (2 <= |r| <= k)
/// over the lattice window [-w, w]^2 minus the origin. For w >= k this equals
/// the codimension of the ideal.
pub fn window_codim_ik(k: u32, window_radius: i64) -> Result<usize> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("ideal index k must be >= 2, got {k}")));
    }
    if window_radius < 1 {
        return Err(Error::InvalidParameter(format!(
            "window radius must be >= 1, got {window_radius}"
        )));
    }
    let rows = MultiIndex::degree_range(2, k);
    let cols = window_points(window_radius);
    let mut m = QMatrix::zero(rows.len(), cols.len());
    for (i, r) in rows.iter().enumerate() {
        for (j, p) in cols.iter().enumerate() {
            m.set(i, j, BigRational::from_integer(monomial(p, r)));
        }
    }
    Ok(m.rank())
}

/// All nonzero lattice points in [-w, w]^2.
pub fn window_points(w: i64) -> Vec<LatticePoint> {
    let mut out = Vec::new();
    for m1 in -w..=w {
        for m2 in -w..=w {
            if m1 != 0 || m2 != 0 {
                out.push(LatticePoint::new(m1, m2));
            }
        }
    }
    out
}

/// Membership of a derived-part element in the span of D_i with |i| >= k.
///
/// Rejects inputs with support of degree <= 1, which lie outside the derived
/// part of the Block-type algebra.
pub fn in_ideal_jk(x: &BPlusElement, k: u32) -> Result<bool> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("ideal index k must be >= 2, got {k}")));
    }
    for (i, _) in x.iter() {
        if i.degree() < 2 {
            return Err(Error::InvalidParameter(format!(
                "element has support at D_{i} of degree < 2, outside the derived part"
            )));
        }
    }
    Ok(x.iter().all(|(i, _)| i.degree() >= k))
}

/// The l-fold forward difference of the family s -> L(s, c), c in {0, 1}:
/// sum over i of (-1)^(l-i) C(l,i) L(s+i, c).
///
/// For c = 0 the indices (s+i, 0) must avoid the excluded point (0,0).
pub fn diff_derivative(c: i64, s: i64, l: u32) -> Result<LElement> {
    if c != 0 && c != 1 {
        return Err(Error::InvalidParameter(format!("second coordinate must be 0 or 1, got {c}")));
    }
    if c == 0 && (s..=s + l as i64).contains(&0) {
        return Err(Error::ZeroIndex);
    }
    let mut terms = Vec::new();
    for i in 0..=l {
        let sign = if (l - i) % 2 == 0 { 1 } else { -1 };
        let coeff = BigRational::from_integer(binomial(l, i) * num::BigInt::from(sign));
        terms.push((LatticePoint::new(s + i as i64, c), coeff));
    }
    LElement::from_terms(terms)
}

/// A seeded random element of the ideal (2 <= |r| <= k conditions), supported
/// on the given points, built by exact kernel sampling. Optionally also
/// intersect with the derived subalgebra (the two |r| = 1 conditions).
pub fn random_ideal_element<R: Rng>(
    support: &[LatticePoint],
    k: u32,
    intersect_derived: bool,
    rng: &mut R,
) -> Result<LElement> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("ideal index k must be >= 2, got {k}")));
    }
    if support.iter().any(LatticePoint::is_zero) {
        return Err(Error::ZeroIndex);
    }
    let mut rows = MultiIndex::degree_range(2, k);
    if intersect_derived {
        rows.push(MultiIndex::new(1, 0));
        rows.push(MultiIndex::new(0, 1));
    }
    let mut m = QMatrix::zero(rows.len(), support.len());
    for (i, r) in rows.iter().enumerate() {
        for (j, p) in support.iter().enumerate() {
            m.set(i, j, BigRational::from_integer(monomial(p, r)));
        }
    }
    let kernel = m.null_space_basis();
    let mut coords = vec![Rational::zero(); support.len()];
    for v in &kernel {
        let c = rat_int(rng.gen_range(-9i64..=9));
        for (slot, entry) in coords.iter_mut().zip(v) {
            *slot += &c * entry;
        }
    }
    LElement::from_terms(support.iter().copied().zip(coords))
}
