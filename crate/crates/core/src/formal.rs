//! Formal linear combinations over the four basis families and their Lie
//! brackets.
//!
//! Sums store only nonzero terms in a canonical (BTreeMap) order, so
//! structural equality is mathematical equality and "exactly zero" is just
//! `is_zero()`.

use crate::error::{Error, Result};
use crate::lattice::{det_pair, LatticePoint, MultiIndex};
use crate::scalar::{rat_int, Rational};
use num::Zero;
use std::collections::BTreeMap;

/// A finite linear combination of basis symbols indexed by `K`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FormalSum<K: Ord + Clone> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord + Clone> FormalSum<K> {
    pub fn zero() -> Self {
        FormalSum { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &K) -> Rational {
        self.terms.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.terms.iter()
    }

    /// Add `c` to the coefficient of `k`, dropping the term if it cancels.
    pub fn accumulate(&mut self, k: K, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.iter() {
            out.accumulate(k.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero();
        for (k, c) in self.iter() {
            out.accumulate(k.clone(), -c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero();
        for (k, c) in self.iter() {
            out.accumulate(k.clone(), c.clone() * s.clone());
        }
        out
    }
}

/// Addition, negation and the zero test shared by all element kinds, so the
/// Jacobi checker can be written once.
pub trait AlgebraElement: Clone {
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

macro_rules! lattice_element {
    ($(#[$doc:meta])* $name:ident, forbid_zero = $forbid:expr) => {
        $(#[$doc])*
        #[derive(Clone, Debug, PartialEq, Eq, Default)]
        pub struct $name(FormalSum<LatticePoint>);

        impl $name {
            pub fn zero() -> Self {
                $name(FormalSum::zero())
            }

            /// Single basis element with unit coefficient.
            pub fn basis(m: LatticePoint) -> Result<Self> {
                Self::term(m, rat_int(1))
            }

            /// Single term `c * basis(m)`.
            pub fn term(m: LatticePoint, c: Rational) -> Result<Self> {
                if $forbid && m.is_zero() {
                    return Err(Error::ZeroIndex);
                }
                let mut s = FormalSum::zero();
                s.accumulate(m, c);
                Ok($name(s))
            }

            pub fn from_terms(terms: impl IntoIterator<Item = (LatticePoint, Rational)>) -> Result<Self> {
                let mut s = FormalSum::zero();
                for (m, c) in terms {
                    if $forbid && m.is_zero() {
                        return Err(Error::ZeroIndex);
                    }
                    s.accumulate(m, c);
                }
                Ok($name(s))
            }

            pub fn coeff(&self, m: &LatticePoint) -> Rational {
                self.0.coeff(m)
            }

            pub fn iter(&self) -> impl Iterator<Item = (&LatticePoint, &Rational)> {
                self.0.iter()
            }

            pub fn scale(&self, s: &Rational) -> Self {
                $name(self.0.scale(s))
            }

            pub(crate) fn from_sum_unchecked(s: FormalSum<LatticePoint>) -> Self {
                $name(s)
            }
        }

        impl AlgebraElement for $name {
            fn add(&self, other: &Self) -> Self {
                $name(self.0.add(&other.0))
            }
            fn neg(&self) -> Self {
                $name(self.0.neg())
            }
            fn is_zero(&self) -> bool {
                self.0.is_zero()
            }
        }
    };
}

lattice_element!(
    /// Element of the Virasoro-like algebra: a combination of `d_m`, m != (0,0).
    GElement, forbid_zero = true
);
lattice_element!(
    /// Element of the Laurent ring viewed as an abelian Lie algebra: a
    /// combination of `t^n`, any n including (0,0).
    AElement, forbid_zero = false
);
lattice_element!(
    /// Element of the auxiliary algebra with basis `L(m)`, m != (0,0).
    LElement, forbid_zero = true
);

/// Element of the semidirect product: a `d`-part plus a `t`-part.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GAElement {
    pub g_part: GElement,
    pub a_part: AElement,
}

impl GAElement {
    pub fn zero() -> Self {
        GAElement { g_part: GElement::zero(), a_part: AElement::zero() }
    }

    pub fn new(g_part: GElement, a_part: AElement) -> Self {
        GAElement { g_part, a_part }
    }
}

impl AlgebraElement for GAElement {
    fn add(&self, other: &Self) -> Self {
        GAElement {
            g_part: self.g_part.add(&other.g_part),
            a_part: self.a_part.add(&other.a_part),
        }
    }
    fn neg(&self) -> Self {
        GAElement { g_part: self.g_part.neg(), a_part: self.a_part.neg() }
    }
    fn is_zero(&self) -> bool {
        self.g_part.is_zero() && self.a_part.is_zero()
    }
}

/// Element of the positive Block-type algebra: a combination of `D_i`,
/// i in Z_+^2.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BPlusElement(FormalSum<MultiIndex>);

impl BPlusElement {
    pub fn zero() -> Self {
        BPlusElement(FormalSum::zero())
    }

    pub fn basis(i: MultiIndex) -> Self {
        Self::term(i, rat_int(1))
    }

    pub fn term(i: MultiIndex, c: Rational) -> Self {
        let mut s = FormalSum::zero();
        s.accumulate(i, c);
        BPlusElement(s)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (MultiIndex, Rational)>) -> Self {
        let mut s = FormalSum::zero();
        for (i, c) in terms {
            s.accumulate(i, c);
        }
        BPlusElement(s)
    }

    pub fn coeff(&self, i: &MultiIndex) -> Rational {
        self.0.coeff(i)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.0.iter()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        BPlusElement(self.0.scale(s))
    }
}

impl AlgebraElement for BPlusElement {
    fn add(&self, other: &Self) -> Self {
        BPlusElement(self.0.add(&other.0))
    }
    fn neg(&self) -> Self {
        BPlusElement(self.0.neg())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// Bracket of the Virasoro-like algebra: [d_m, d_n] = det(n over m) d_{m+n}.
///
/// The coefficient vanishes whenever m and n are parallel, so the result can
/// never contain the forbidden index (0,0).
pub fn bracket_g(x: &GElement, y: &GElement) -> GElement {
    let mut out = FormalSum::zero();
    for (m, a) in x.iter() {
        for (n, b) in y.iter() {
            let c = det_pair(n, m);
            if c != 0 {
                out.accumulate(m.add(n), rat_int(c) * a.clone() * b.clone());
            }
        }
    }
    GElement::from_sum_unchecked(out)
}

/// Natural action of the Virasoro-like algebra on the Laurent ring:
/// d_m . t^n = det(n over m) t^{m+n}.
pub fn g_action_on_a(x: &GElement, f: &AElement) -> AElement {
    let mut out = FormalSum::zero();
    for (m, a) in x.iter() {
        for (n, b) in f.iter() {
            let c = det_pair(n, m);
            if c != 0 {
                out.accumulate(m.add(n), rat_int(c) * a.clone() * b.clone());
            }
        }
    }
    AElement::from_sum_unchecked(out)
}

/// Semidirect-product bracket: [x+f, y+g] = [x,y] + x.g - y.f.
pub fn bracket_semidirect(u: &GAElement, v: &GAElement) -> GAElement {
    GAElement {
        g_part: bracket_g(&u.g_part, &v.g_part),
        a_part: g_action_on_a(&u.g_part, &v.a_part).sub(&g_action_on_a(&v.g_part, &u.a_part)),
    }
}

/// Bracket of the auxiliary algebra:
/// [L(m), L(n)] = det(n over m) (L(m+n) - L(m) - L(n)).
pub fn bracket_l(x: &LElement, y: &LElement) -> LElement {
    let mut out = FormalSum::zero();
    for (m, a) in x.iter() {
        for (n, b) in y.iter() {
            let c = det_pair(n, m);
            if c != 0 {
                let coeff = rat_int(c) * a.clone() * b.clone();
                out.accumulate(m.add(n), coeff.clone());
                out.accumulate(*m, -coeff.clone());
                out.accumulate(*n, -coeff);
            }
        }
    }
    LElement::from_sum_unchecked(out)
}

/// Structure constant of the positive Block-type algebra on basis pairs.
///
/// Returns the target index and integer coefficient of `[D_i, D_j]`, or
/// `None` when the bracket is zero. The sign convention fixes
/// `[D_{(1,0)}, D_{(0,1)}] = +D_{(0,0)}`.
pub fn bplus_structure(i: &MultiIndex, j: &MultiIndex) -> Option<(MultiIndex, i64)> {
    if i.degree() >= 2 && j.degree() >= 2 {
        let c = j.r1 as i64 * i.r2 as i64 - j.r2 as i64 * i.r1 as i64;
        if c == 0 {
            return None;
        }
        // The coefficient vanishes whenever i+j-(1,1) would leave Z_+^2, so
        // the subtraction here never underflows.
        assert!(i.r1 + j.r1 >= 1 && i.r2 + j.r2 >= 1);
        Some((MultiIndex::new(i.r1 + j.r1 - 1, i.r2 + j.r2 - 1), c))
    } else if *i == MultiIndex::new(1, 0) && *j == MultiIndex::new(0, 1) {
        Some((MultiIndex::new(0, 0), 1))
    } else if *i == MultiIndex::new(0, 1) && *j == MultiIndex::new(1, 0) {
        Some((MultiIndex::new(0, 0), -1))
    } else {
        None
    }
}

/// Bracket of the positive Block-type algebra, extended bilinearly from
/// `bplus_structure`.
pub fn bracket_bplus(x: &BPlusElement, y: &BPlusElement) -> BPlusElement {
    let mut out = FormalSum::zero();
    for (i, a) in x.iter() {
        for (j, b) in y.iter() {
            if let Some((target, c)) = bplus_structure(i, j) {
                out.accumulate(target, rat_int(c) * a.clone() * b.clone());
            }
        }
    }
    BPlusElement(out)
}

/// [x,[y,z]] + [y,[z,x]] + [z,[x,y]]; exactly zero for a valid Lie bracket.
pub fn jacobi_defect<T, F>(x: &T, y: &T, z: &T, bracket: F) -> T
where
    T: AlgebraElement,
    F: Fn(&T, &T) -> T,
{
    let a = bracket(x, &bracket(y, z));
    let b = bracket(y, &bracket(z, x));
    let c = bracket(z, &bracket(x, y));
    a.add(&b).add(&c)
}
