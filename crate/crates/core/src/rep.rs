//! Finite-dimensional sl2 representations, validated representations of the
//! positive Block-type algebra, and the indecomposability probe.

use crate::error::{Error, Result};
use crate::formal::bplus_structure;
use crate::lattice::MultiIndex;
use crate::matrix::QMatrix;
use crate::poly::minimal_polynomial;
use crate::scalar::{rat_int, Rational};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// A matrix triple satisfying the sl2 relations exactly, verified at
/// construction: [h,e] = 2e, [h,f] = -2f, [e,f] = h.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SL2Rep {
    dim: usize,
    e_mat: QMatrix,
    f_mat: QMatrix,
    h_mat: QMatrix,
}

impl SL2Rep {
    pub fn new(e_mat: QMatrix, f_mat: QMatrix, h_mat: QMatrix) -> Result<Self> {
        let dim = e_mat.rows();
        for (name, m) in [("e", &e_mat), ("f", &f_mat), ("h", &h_mat)] {
            if !m.is_square() || m.rows() != dim {
                return Err(Error::DimMismatch(format!(
                    "{name} must be {dim}x{dim}, got {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let check = |lhs: QMatrix, rhs: QMatrix, relation: &str| -> Result<()> {
            if lhs != rhs {
                return Err(Error::InvalidParameter(format!("sl2 relation {relation} violated")));
            }
            Ok(())
        };
        check(QMatrix::commutator(&h_mat, &e_mat)?, e_mat.scale(&rat_int(2)), "[h,e] = 2e")?;
        check(QMatrix::commutator(&h_mat, &f_mat)?, f_mat.scale(&rat_int(-2)), "[h,f] = -2f")?;
        check(QMatrix::commutator(&e_mat, &f_mat)?, h_mat.clone(), "[e,f] = h")?;
        Ok(SL2Rep { dim, e_mat, f_mat, h_mat })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn e(&self) -> &QMatrix {
        &self.e_mat
    }
    pub fn f(&self) -> &QMatrix {
        &self.f_mat
    }
    pub fn h(&self) -> &QMatrix {
        &self.h_mat
    }

    /// Image of `a*h + b*e + c*f` under the representation.
    pub fn apply_combo(&self, a: &Rational, b: &Rational, c: &Rational) -> QMatrix {
        self.h_mat
            .scale(a)
            .add(&self.e_mat.scale(b))
            .and_then(|m| m.add(&self.f_mat.scale(c)))
            .expect("conforming dimensions")
    }

    /// Block-diagonal sum of two representations.
    pub fn direct_sum(&self, other: &SL2Rep) -> SL2Rep {
        SL2Rep {
            dim: self.dim + other.dim,
            e_mat: self.e_mat.direct_sum(&other.e_mat),
            f_mat: self.f_mat.direct_sum(&other.f_mat),
            h_mat: self.h_mat.direct_sum(&other.h_mat),
        }
    }

    /// Conjugate every generator by an invertible matrix.
    pub fn conjugate(&self, g: &QMatrix) -> Result<SL2Rep> {
        let g_inv = g
            .inverse()
            .ok_or_else(|| Error::InvalidParameter("conjugating matrix is singular".into()))?;
        let conj = |m: &QMatrix| g.mul(m).and_then(|x| x.mul(&g_inv));
        SL2Rep::new(conj(&self.e_mat)?, conj(&self.f_mat)?, conj(&self.h_mat)?)
    }
}

/// The (n+1)-dimensional irreducible sl2 representation on a highest-weight
/// basis v_0..v_n: h v_k = (n-2k) v_k, f v_k = v_{k+1}, e v_k = k(n-k+1) v_{k-1}.
pub fn sl2_irrep(n: i64) -> Result<SL2Rep> {
    if n < 0 {
        return Err(Error::InvalidParameter(format!("highest weight must be >= 0, got {n}")));
    }
    let dim = (n + 1) as usize;
    let mut e = QMatrix::zero(dim, dim);
    let mut f = QMatrix::zero(dim, dim);
    let mut h = QMatrix::zero(dim, dim);
    for k in 0..dim {
        let ki = k as i64;
        h.set(k, k, rat_int(n - 2 * ki));
        if k + 1 < dim {
            f.set(k + 1, k, rat_int(1));
        }
        if k > 0 {
            e.set(k - 1, k, rat_int(ki * (n - ki + 1)));
        }
    }
    SL2Rep::new(e, f, h)
}

/// Irreducibility test via the highest-weight space: a finite-dimensional
/// sl2 representation in characteristic zero is irreducible exactly when the
/// kernel of e is one-dimensional.
pub fn sl2_is_irreducible(rep: &SL2Rep) -> bool {
    rep.e_mat.null_space_basis().len() == 1
}

/// Isomorphism test for irreducible representations: classification by
/// dimension. Rejects reducible inputs.
pub fn sl2_isomorphic(a: &SL2Rep, b: &SL2Rep) -> Result<bool> {
    if !sl2_is_irreducible(a) || !sl2_is_irreducible(b) {
        return Err(Error::NotIrreducible);
    }
    Ok(a.dim == b.dim)
}

/// A finite family of matrices realizing the positive Block-type algebra.
/// Absent indices act as zero; all pairwise commutator relations are verified
/// at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BPlusRep {
    dim: usize,
    gens: BTreeMap<MultiIndex, QMatrix>,
}

impl BPlusRep {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &BTreeMap<MultiIndex, QMatrix> {
        &self.gens
    }

    /// Action matrix of D_i; zero for absent indices.
    pub fn gen(&self, i: &MultiIndex) -> QMatrix {
        self.gens.get(i).cloned().unwrap_or_else(|| QMatrix::zero(self.dim, self.dim))
    }

    /// Largest total degree with a nonzero generator.
    pub fn max_degree(&self) -> u32 {
        self.gens.keys().map(MultiIndex::degree).max().unwrap_or(0)
    }

    pub fn direct_sum(&self, other: &BPlusRep) -> Result<BPlusRep> {
        let mut gens = BTreeMap::new();
        let mut keys: Vec<MultiIndex> = self.gens.keys().copied().collect();
        keys.extend(other.gens.keys().copied());
        keys.sort();
        keys.dedup();
        for k in keys {
            gens.insert(k, self.gen(&k).direct_sum(&other.gen(&k)));
        }
        validate_bplus_rep(self.dim + other.dim, gens)
    }

    pub fn conjugate(&self, g: &QMatrix) -> Result<BPlusRep> {
        let g_inv = g
            .inverse()
            .ok_or_else(|| Error::InvalidParameter("conjugating matrix is singular".into()))?;
        let mut gens = BTreeMap::new();
        for (i, m) in &self.gens {
            gens.insert(*i, g.mul(m)?.mul(&g_inv)?);
        }
        validate_bplus_rep(self.dim, gens)
    }

    /// Wrap a generator map without checking the commutator relations.
    ///
    /// Exists so the jet-axiom checker can be exercised against relation
    /// violations; everything else should go through `validate_bplus_rep`.
    pub fn from_gens_unchecked(dim: usize, gens: BTreeMap<MultiIndex, QMatrix>) -> BPlusRep {
        BPlusRep { dim, gens }
    }
}

/// Validate a generator map against the Block-type commutator relations and
/// return the representation. Zero matrices are pruned; absent generators are
/// treated as zero, and a present generator whose index is forced to zero by
/// absent partners is reported as a violation.
pub fn validate_bplus_rep(
    dim: usize,
    gens: BTreeMap<MultiIndex, QMatrix>,
) -> Result<BPlusRep> {
    if dim == 0 {
        return Err(Error::InvalidParameter("representation dimension must be positive".into()));
    }
    let mut pruned: BTreeMap<MultiIndex, QMatrix> = BTreeMap::new();
    for (i, m) in gens {
        if !m.is_square() || m.rows() != dim {
            return Err(Error::DimMismatch(format!(
                "generator D_{i} must be {dim}x{dim}, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        if !m.is_zero() {
            pruned.insert(i, m);
        }
    }
    let rep = BPlusRep { dim, gens: pruned };

    // All pairs over the support plus the Heisenberg corner, so the
    // [D_{(1,0)}, D_{(0,1)}] = D_{(0,0)} relation is checked even when some
    // of those three are absent.
    let mut indices: Vec<MultiIndex> = rep.gens.keys().copied().collect();
    for extra in [MultiIndex::new(0, 0), MultiIndex::new(1, 0), MultiIndex::new(0, 1)] {
        if !indices.contains(&extra) {
            indices.push(extra);
        }
    }
    for i in &indices {
        for j in &indices {
            let lhs = QMatrix::commutator(&rep.gen(i), &rep.gen(j))?;
            let rhs = match bplus_structure(i, j) {
                Some((target, c)) => rep.gen(&target).scale(&rat_int(c)),
                None => QMatrix::zero(dim, dim),
            };
            if lhs != rhs {
                return Err(Error::RelationViolated {
                    i: (i.r1, i.r2),
                    j: (j.r1, j.r2),
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                });
            }
        }
    }

    // A nonzero target with a bracket preimage entirely outside the support
    // is inconsistent: [0, 0] = 0 would force the target to zero.
    for (t, mat) in &rep.gens {
        if t.degree() < 2 {
            continue;
        }
        let (s1, s2) = (t.r1 + 1, t.r2 + 1);
        for i1 in 0..=s1 {
            for i2 in 0..=s2 {
                let i = MultiIndex::new(i1, i2);
                let j = MultiIndex::new(s1 - i1, s2 - i2);
                if i.degree() < 2 || j.degree() < 2 {
                    continue;
                }
                let Some((target, c)) = bplus_structure(&i, &j) else { continue };
                debug_assert_eq!(target, *t);
                if c != 0 && (!rep.gens.contains_key(&i) || !rep.gens.contains_key(&j)) {
                    return Err(Error::RelationViolated {
                        i: (i.r1, i.r2),
                        j: (j.r1, j.r2),
                        lhs: QMatrix::zero(dim, dim).to_string(),
                        rhs: mat.scale(&rat_int(c)).to_string(),
                    });
                }
            }
        }
    }
    Ok(rep)
}

/// Build the Block-type representation induced by an sl2 representation and
/// the two central scalars: D_{(2,0)} = -2e, D_{(0,2)} = 2f, D_{(1,1)} = h,
/// D_{(1,0)} = -alpha2, D_{(0,1)} = alpha1, D_{(0,0)} = 0.
pub fn bplus_from_sl2(rep: &SL2Rep, alpha: &(Rational, Rational)) -> BPlusRep {
    let dim = rep.dim();
    let mut gens = BTreeMap::new();
    gens.insert(MultiIndex::new(2, 0), rep.e().scale(&rat_int(-2)));
    gens.insert(MultiIndex::new(0, 2), rep.f().scale(&rat_int(2)));
    gens.insert(MultiIndex::new(1, 1), rep.h().clone());
    gens.insert(MultiIndex::new(1, 0), QMatrix::scalar(dim, &-alpha.1.clone()));
    gens.insert(MultiIndex::new(0, 1), QMatrix::scalar(dim, &alpha.0.clone()));
    validate_bplus_rep(dim, gens).expect("the sl2-induced generators always satisfy the relations")
}

/// Verdict of the indecomposability probe.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Indecomposability {
    /// Commutant is one-dimensional: certainly indecomposable.
    Yes,
    /// A commutant element with a coprime factor split of its minimal
    /// polynomial yields a splitting idempotent: certainly decomposable.
    No,
    /// Neither certificate was found within the trial budget.
    Unknown,
}

/// Exact basis of the commutant {X : X D_i = D_i X for all i}.
pub fn commutant_basis(rep: &BPlusRep) -> Vec<QMatrix> {
    let n = rep.dim();
    let gens: Vec<&QMatrix> = rep.gens.values().collect();
    if gens.is_empty() {
        // everything commutes with the zero representation
        let mut basis = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let mut m = QMatrix::zero(n, n);
                m.set(a, b, rat_int(1));
                basis.push(m);
            }
        }
        return basis;
    }
    // unknowns X[a][b]; equations (X D - D X)[r][s] = 0 per generator
    let mut sys = QMatrix::zero(gens.len() * n * n, n * n);
    for (gi, d) in gens.iter().enumerate() {
        for r in 0..n {
            for s in 0..n {
                let row = gi * n * n + r * n + s;
                for k in 0..n {
                    // + X[r][k] D[k][s]
                    let cur = sys.get(row, r * n + k) + d.get(k, s);
                    sys.set(row, r * n + k, cur);
                    // - D[r][k] X[k][s]
                    let cur = sys.get(row, k * n + s) - d.get(r, k);
                    sys.set(row, k * n + s, cur);
                }
            }
        }
    }
    sys.null_space_basis()
        .into_iter()
        .map(|v| QMatrix::new(n, n, v).expect("kernel vector has n^2 entries"))
        .collect()
}

/// Three-valued indecomposability probe.
///
/// "Yes" when the commutant is scalars only; "no" when some probed commutant
/// element has a minimal polynomial splitting into coprime rational factors
/// (which yields an invariant direct-sum decomposition); "unknown" otherwise.
pub fn bplus_indecomposable(rep: &BPlusRep, trials: u32, seed: u64) -> Indecomposability {
    let basis = commutant_basis(rep);
    if basis.len() == 1 {
        return Indecomposability::Yes;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials as usize {
        let candidate = if t < basis.len() {
            basis[t].clone()
        } else {
            let mut acc = QMatrix::zero(rep.dim(), rep.dim());
            for b in &basis {
                acc = acc.add(&b.scale(&rat_int(rng.gen_range(-9i64..=9)))).unwrap();
            }
            acc
        };
        let mu = minimal_polynomial(&candidate);
        if mu.degree() < 2 {
            continue;
        }
        for root in mu.rational_roots() {
            let (mult, rest) = mu.split_at_root(&root);
            if mult >= 1 && rest.degree() >= 1 {
                // mu = (x - root)^mult * rest with rest(root) != 0: the two
                // kernels split the module into nonzero invariant summands.
                return Indecomposability::No;
            }
        }
    }
    Indecomposability::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn mi(a: u32, b: u32) -> MultiIndex {
        MultiIndex::new(a, b)
    }

    #[test]
    fn irrep_small_cases() {
        let triv = sl2_irrep(0).unwrap();
        assert_eq!(triv.dim(), 1);
        assert!(triv.e().is_zero() && triv.f().is_zero() && triv.h().is_zero());

        let nat = sl2_irrep(1).unwrap();
        assert_eq!(nat.h(), &QMatrix::from_int_rows(&[&[1, 0], &[0, -1]]));
        assert_eq!(nat.e(), &QMatrix::from_int_rows(&[&[0, 1], &[0, 0]]));
        assert_eq!(nat.f(), &QMatrix::from_int_rows(&[&[0, 0], &[1, 0]]));

        let v2 = sl2_irrep(2).unwrap();
        assert_eq!(v2.h(), &QMatrix::from_int_rows(&[&[2, 0, 0], &[0, 0, 0], &[0, 0, -2]]));
        assert_eq!(v2.e().get(1, 2), &rat_int(2));
        assert_eq!(v2.e().get(0, 1), &rat_int(2));

        assert!(sl2_irrep(-1).is_err());
    }

    #[test]
    fn relations_hold_up_to_twelve() {
        for n in 0..=12 {
            // SL2Rep::new re-verifies the relations on construction
            let rep = sl2_irrep(n).unwrap();
            assert_eq!(rep.dim(), n as usize + 1);
        }
    }

    #[test]
    fn invalid_triple_rejected() {
        let id = QMatrix::identity(2);
        assert!(SL2Rep::new(id.clone(), id.clone(), id).is_err());
    }

    #[test]
    fn irreducibility_test() {
        for n in 0..=12 {
            assert!(sl2_is_irreducible(&sl2_irrep(n).unwrap()));
        }
        let v1 = sl2_irrep(1).unwrap();
        assert!(!sl2_is_irreducible(&v1.direct_sum(&v1)));
    }

    #[test]
    fn isomorphism_by_dimension() {
        let a = sl2_irrep(2).unwrap();
        assert!(sl2_isomorphic(&a, &sl2_irrep(2).unwrap()).unwrap());
        assert!(!sl2_isomorphic(&sl2_irrep(1).unwrap(), &sl2_irrep(3).unwrap()).unwrap());

        let g = QMatrix::from_int_rows(&[&[1, 1], &[0, 1]]);
        let conj = sl2_irrep(1).unwrap().conjugate(&g).unwrap();
        assert!(sl2_isomorphic(&sl2_irrep(1).unwrap(), &conj).unwrap());

        let v1 = sl2_irrep(1).unwrap();
        assert!(sl2_isomorphic(&v1.direct_sum(&v1), &v1).is_err());
    }

    #[test]
    fn bplus_from_sl2_example() {
        let rep = bplus_from_sl2(&sl2_irrep(1).unwrap(), &(rat(1, 2), rat_int(0)));
        assert_eq!(rep.gen(&mi(1, 1)), QMatrix::from_int_rows(&[&[1, 0], &[0, -1]]));
        assert_eq!(rep.gen(&mi(2, 0)), QMatrix::from_int_rows(&[&[0, -2], &[0, 0]]));
        assert_eq!(rep.gen(&mi(0, 2)), QMatrix::from_int_rows(&[&[0, 0], &[2, 0]]));
        assert_eq!(rep.gen(&mi(0, 1)), QMatrix::scalar(2, &rat(1, 2)));
        assert!(rep.gen(&mi(1, 0)).is_zero());

        let zero = bplus_from_sl2(&sl2_irrep(0).unwrap(), &(rat_int(0), rat_int(0)));
        assert!(zero.gens().is_empty());

        let r2 = bplus_from_sl2(&sl2_irrep(2).unwrap(), &(rat_int(0), rat_int(1)));
        assert_eq!(r2.gen(&mi(1, 0)), QMatrix::scalar(3, &rat_int(-1)));
        assert!(r2.gen(&mi(0, 1)).is_zero());
    }

    #[test]
    fn validate_rejects_bad_generators() {
        let mut gens = BTreeMap::new();
        gens.insert(mi(1, 1), QMatrix::identity(2));
        gens.insert(mi(2, 0), QMatrix::identity(2));
        let err = validate_bplus_rep(2, gens).unwrap_err();
        assert!(matches!(err, Error::RelationViolated { .. }));

        // empty map is the zero representation
        assert!(validate_bplus_rep(3, BTreeMap::new()).is_ok());
    }

    #[test]
    fn validate_rejects_orphan_target() {
        // D_{(1,1)} present with no D_{(2,0)}/D_{(0,2)} pair to produce it
        let mut gens = BTreeMap::new();
        gens.insert(mi(1, 1), QMatrix::from_int_rows(&[&[1, 0], &[0, -1]]));
        assert!(validate_bplus_rep(2, gens).is_err());
    }

    #[test]
    fn conjugation_preserves_validity() {
        let rep = bplus_from_sl2(&sl2_irrep(2).unwrap(), &(rat_int(1), rat(1, 3)));
        let g = QMatrix::from_int_rows(&[&[1, 2, 0], &[0, 1, 1], &[0, 0, 1]]);
        assert!(rep.conjugate(&g).is_ok());
    }

    #[test]
    fn indecomposability_verdicts() {
        for n in 0..=4 {
            let rep = bplus_from_sl2(&sl2_irrep(n).unwrap(), &(rat_int(0), rat_int(0)));
            assert_eq!(bplus_indecomposable(&rep, 16, 7), Indecomposability::Yes);
        }

        let a = bplus_from_sl2(&sl2_irrep(1).unwrap(), &(rat_int(0), rat_int(0)));
        let b = bplus_from_sl2(&sl2_irrep(2).unwrap(), &(rat_int(0), rat_int(0)));
        let sum = a.direct_sum(&b).unwrap();
        assert_eq!(bplus_indecomposable(&sum, 16, 7), Indecomposability::No);

        // two copies of the same block
        let twice = a.direct_sum(&a).unwrap();
        assert_eq!(bplus_indecomposable(&twice, 16, 7), Indecomposability::No);

        // the one-dimensional zero representation
        let zero = validate_bplus_rep(1, BTreeMap::new()).unwrap();
        assert_eq!(bplus_indecomposable(&zero, 16, 7), Indecomposability::Yes);
    }

    #[test]
    fn indecomposability_is_conjugation_invariant() {
        let a = bplus_from_sl2(&sl2_irrep(1).unwrap(), &(rat_int(0), rat_int(0)));
        let b = bplus_from_sl2(&sl2_irrep(2).unwrap(), &(rat_int(0), rat_int(0)));
        let sum = a.direct_sum(&b).unwrap();
        let g = QMatrix::from_int_rows(&[
            &[1, 1, 0, 0, 0],
            &[0, 1, 0, 0, 1],
            &[0, 0, 1, 0, 0],
            &[2, 0, 0, 1, 0],
            &[0, 0, 0, 0, 1],
        ]);
        let conj = sum.conjugate(&g).unwrap();
        // the probe may fail to find a splitting after conjugation, but it
        // must never contradict the verdict on the original
        assert_ne!(bplus_indecomposable(&conj, 16, 7), Indecomposability::Yes);
    }

    #[test]
    fn commutant_of_irreducible_is_scalars() {
        let rep = bplus_from_sl2(&sl2_irrep(3).unwrap(), &(rat(1, 2), rat_int(-1)));
        let basis = commutant_basis(&rep);
        assert_eq!(basis.len(), 1);
    }
}
