//! Univariate polynomials over the rationals.
//!
//! Just enough arithmetic to support minimal polynomials of matrices and the
//! coprime-factor splitting used by the indecomposability probe: division,
//! gcd, squarefree parts, and rational root search.

use crate::matrix::QMatrix;
use crate::scalar::Rational;
use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

/// Polynomial with rational coefficients, lowest degree first.
/// The zero polynomial has an empty coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        QPoly { coeffs: vec![Rational::one()] }
    }

    /// x - a
    pub fn linear_root(a: &Rational) -> Self {
        QPoly::new(vec![-a.clone(), Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Scale so the leading coefficient is one.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().recip();
        QPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    /// Euclidean division: (quotient, remainder).
    pub fn div_rem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let d = divisor.degree();
        let lead_inv = divisor.leading().recip();
        if rem.len() <= d {
            return (QPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = rem[i].clone() * &lead_inv;
            if c.is_zero() {
                continue;
            }
            quot[i - d] = c.clone();
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i - d + j] -= &c * dc;
            }
        }
        (QPoly::new(quot), QPoly::new(rem))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> QPoly {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * crate::scalar::rat_int(i as i64))
            .collect();
        QPoly::new(out)
    }

    /// Squarefree part: self / gcd(self, self').
    pub fn squarefree_part(&self) -> QPoly {
        if self.degree() == 0 || self.is_zero() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero());
        q.monic()
    }

    /// All rational roots, by the rational root theorem applied to the
    /// primitive integer form of the squarefree part.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let sf = self.squarefree_part();
        if sf.is_zero() || sf.degree() == 0 {
            return vec![];
        }
        // clear denominators
        let mut den = BigInt::one();
        for c in sf.coeffs() {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> =
            sf.coeffs().iter().map(|c| c.numer() * (&den / c.denom())).collect();
        // strip trailing zero constant terms: x^k factor means 0 is a root
        let mut roots = Vec::new();
        let mut start = 0;
        while start < ints.len() && ints[start].is_zero() {
            start += 1;
        }
        if start > 0 {
            roots.push(Rational::zero());
        }
        if start >= ints.len() - 1 {
            return roots;
        }
        let constant = ints[start].abs();
        let leading = ints.last().unwrap().abs();
        for p in divisors(&constant) {
            for q in divisors(&leading) {
                for sign in [1i64, -1] {
                    let cand = Rational::new(&p * BigInt::from(sign), q.clone());
                    if sf.eval(&cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand.clone());
                    }
                }
            }
        }
        roots
    }

    /// Largest `a` with (x - root)^a dividing self; also returns the cofactor.
    pub fn split_at_root(&self, root: &Rational) -> (usize, QPoly) {
        let lin = QPoly::linear_root(root);
        let mut mult = 0;
        let mut rest = self.clone();
        loop {
            let (q, r) = rest.div_rem(&lin);
            if r.is_zero() {
                mult += 1;
                rest = q;
            } else {
                break;
            }
        }
        (mult, rest)
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    // trial division; the minimal polynomials handled here are tiny
    let n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let other = &n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}

/// Minimal polynomial of a square rational matrix, monic.
pub fn minimal_polynomial(m: &QMatrix) -> QPoly {
    assert!(m.is_square());
    let n = m.rows();
    // stack successive powers as columns and look for the first dependency
    let mut powers: Vec<QMatrix> = vec![QMatrix::identity(n)];
    loop {
        let k = powers.len();
        // columns: flattened powers 0..k, try to express power k in terms of them
        let next = powers.last().unwrap().mul(m).unwrap();
        let mut a = QMatrix::zero(n * n, k);
        for (col, p) in powers.iter().enumerate() {
            for (row, entry) in p.entries().iter().enumerate() {
                a.set(row, col, entry.clone());
            }
        }
        let mut b = QMatrix::zero(n * n, 1);
        for (row, entry) in next.entries().iter().enumerate() {
            b.set(row, 0, entry.clone());
        }
        if let Some(x) = a.solve(&b).unwrap() {
            // m^k = sum c_i m^i  =>  min poly x^k - sum c_i x^i
            let mut coeffs = vec![Rational::zero(); k + 1];
            for i in 0..k {
                coeffs[i] = -x.get(i, 0).clone();
            }
            coeffs[k] = Rational::one();
            return QPoly::new(coeffs);
        }
        powers.push(next);
        assert!(powers.len() <= n + 1, "minimal polynomial search exceeded dimension bound");
    }
}
