//! JSON interchange for every value the command-line tool reads or writes.
//!
//! Rationals travel as strings, "p/q" or just "p" when the denominator is
//! one, so files stay exact. Term order in element files is arbitrary;
//! parsing always canonicalizes, so serializing a parsed value is a fixed
//! point.

use crate::error::{Error, Result};
use crate::fit::PolyOperatorFamily;
use crate::formal::{AElement, BPlusElement, GAElement, GElement, LElement};
use crate::ideal::ReductiveElement;
use crate::jet::{JetModuleSpec, ModuleVector};
use crate::lattice::{LatticePoint, MultiIndex};
use crate::matrix::QMatrix;
use crate::rep::{validate_bplus_rep, BPlusRep, SL2Rep};
use crate::scalar::{format_rational, parse_rational, Rational};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

fn from_json_str<'a, T: Deserialize<'a>>(s: &'a str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

fn to_json_string<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serialization of plain data cannot fail")
}

// ---------------------------------------------------------------------------
// matrices

fn matrix_to_rows(m: &QMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| format_rational(m.get(i, j))).collect())
        .collect()
}

fn matrix_from_rows(rows: &[Vec<String>]) -> Result<QMatrix> {
    if rows.is_empty() {
        return Err(Error::Parse("matrix must have at least one row".into()));
    }
    let cols = rows[0].len();
    if cols == 0 || rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Parse("matrix rows must be nonempty and equal length".into()));
    }
    let mut data = Vec::with_capacity(rows.len() * cols);
    for row in rows {
        for s in row {
            data.push(parse_rational(s)?);
        }
    }
    QMatrix::new(rows.len(), cols, data)
}

pub fn matrix_to_json(m: &QMatrix) -> String {
    to_json_string(&matrix_to_rows(m))
}

pub fn matrix_from_json(s: &str) -> Result<QMatrix> {
    matrix_from_rows(&from_json_str::<Vec<Vec<String>>>(s)?)
}

// ---------------------------------------------------------------------------
// algebra elements

#[derive(Serialize, Deserialize)]
struct TermDto {
    coeff: String,
    index: [i64; 2],
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "algebra")]
enum ElementDto {
    G { terms: Vec<TermDto> },
    A { terms: Vec<TermDto> },
    GA { g_terms: Vec<TermDto>, a_terms: Vec<TermDto> },
    L { terms: Vec<TermDto> },
    Bplus { terms: Vec<TermDto> },
}

/// An element of any of the five supported algebras, as found in a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyElement {
    G(GElement),
    A(AElement),
    GA(GAElement),
    L(LElement),
    Bplus(BPlusElement),
}

impl AnyElement {
    pub fn algebra_name(&self) -> &'static str {
        match self {
            AnyElement::G(_) => "G",
            AnyElement::A(_) => "A",
            AnyElement::GA(_) => "GA",
            AnyElement::L(_) => "L",
            AnyElement::Bplus(_) => "Bplus",
        }
    }
}

fn lattice_terms(
    it: impl Iterator<Item = (LatticePoint, Rational)>,
) -> Vec<TermDto> {
    it.map(|(m, c)| TermDto { coeff: format_rational(&c), index: [m.m1, m.m2] })
        .collect()
}

fn parse_lattice_terms(terms: &[TermDto]) -> Result<Vec<(LatticePoint, Rational)>> {
    terms
        .iter()
        .map(|t| Ok((LatticePoint::new(t.index[0], t.index[1]), parse_rational(&t.coeff)?)))
        .collect()
}

fn parse_multi_terms(terms: &[TermDto]) -> Result<Vec<(MultiIndex, Rational)>> {
    terms
        .iter()
        .map(|t| {
            let [a, b] = t.index;
            let (a, b) = (u32::try_from(a), u32::try_from(b));
            let (Ok(a), Ok(b)) = (a, b) else {
                return Err(Error::Parse("multi-index entries must be nonnegative".into()));
            };
            Ok((MultiIndex::new(a, b), parse_rational(&t.coeff)?))
        })
        .collect()
}

pub fn element_to_json(x: &AnyElement) -> String {
    let dto = match x {
        AnyElement::G(g) => ElementDto::G {
            terms: lattice_terms(g.iter().map(|(m, c)| (*m, c.clone()))),
        },
        AnyElement::A(a) => ElementDto::A {
            terms: lattice_terms(a.iter().map(|(m, c)| (*m, c.clone()))),
        },
        AnyElement::GA(u) => ElementDto::GA {
            g_terms: lattice_terms(u.g_part.iter().map(|(m, c)| (*m, c.clone()))),
            a_terms: lattice_terms(u.a_part.iter().map(|(m, c)| (*m, c.clone()))),
        },
        AnyElement::L(l) => ElementDto::L {
            terms: lattice_terms(l.iter().map(|(m, c)| (*m, c.clone()))),
        },
        AnyElement::Bplus(b) => ElementDto::Bplus {
            terms: b
                .iter()
                .map(|(i, c)| TermDto {
                    coeff: format_rational(c),
                    index: [i.r1 as i64, i.r2 as i64],
                })
                .collect(),
        },
    };
    to_json_string(&dto)
}

pub fn element_from_json(s: &str) -> Result<AnyElement> {
    Ok(match from_json_str::<ElementDto>(s)? {
        ElementDto::G { terms } => {
            AnyElement::G(GElement::from_terms(parse_lattice_terms(&terms)?)?)
        }
        ElementDto::A { terms } => {
            AnyElement::A(AElement::from_terms(parse_lattice_terms(&terms)?)?)
        }
        ElementDto::GA { g_terms, a_terms } => AnyElement::GA(GAElement::new(
            GElement::from_terms(parse_lattice_terms(&g_terms)?)?,
            AElement::from_terms(parse_lattice_terms(&a_terms)?)?,
        )),
        ElementDto::L { terms } => {
            AnyElement::L(LElement::from_terms(parse_lattice_terms(&terms)?)?)
        }
        ElementDto::Bplus { terms } => {
            AnyElement::Bplus(BPlusElement::from_terms(parse_multi_terms(&terms)?))
        }
    })
}

// ---------------------------------------------------------------------------
// reductive quotient elements

#[derive(Serialize, Deserialize)]
struct ReductiveDto {
    sl2: Vec<Vec<String>>,
    z1: String,
    z2: String,
}

pub fn reductive_to_json(x: &ReductiveElement) -> String {
    to_json_string(&ReductiveDto {
        sl2: matrix_to_rows(&x.sl2_part),
        z1: format_rational(&x.z1_coeff),
        z2: format_rational(&x.z2_coeff),
    })
}

pub fn reductive_from_json(s: &str) -> Result<ReductiveElement> {
    let dto: ReductiveDto = from_json_str(s)?;
    ReductiveElement::new(
        matrix_from_rows(&dto.sl2)?,
        parse_rational(&dto.z1)?,
        parse_rational(&dto.z2)?,
    )
}

// ---------------------------------------------------------------------------
// representations

#[derive(Serialize, Deserialize)]
struct SL2RepDto {
    dim: usize,
    e: Vec<Vec<String>>,
    f: Vec<Vec<String>>,
    h: Vec<Vec<String>>,
}

pub fn sl2_rep_to_json(rep: &SL2Rep) -> String {
    to_json_string(&sl2_rep_dto(rep))
}

fn sl2_rep_dto(rep: &SL2Rep) -> SL2RepDto {
    SL2RepDto {
        dim: rep.dim(),
        e: matrix_to_rows(rep.e()),
        f: matrix_to_rows(rep.f()),
        h: matrix_to_rows(rep.h()),
    }
}

fn sl2_rep_from_dto(dto: &SL2RepDto) -> Result<SL2Rep> {
    let rep = SL2Rep::new(
        matrix_from_rows(&dto.e)?,
        matrix_from_rows(&dto.f)?,
        matrix_from_rows(&dto.h)?,
    )?;
    if rep.dim() != dto.dim {
        return Err(Error::Parse(format!(
            "declared dim {} does not match {}x{} matrices",
            dto.dim,
            rep.dim(),
            rep.dim()
        )));
    }
    Ok(rep)
}

pub fn sl2_rep_from_json(s: &str) -> Result<SL2Rep> {
    sl2_rep_from_dto(&from_json_str(s)?)
}

fn multi_index_key(i: &MultiIndex) -> String {
    format!("{},{}", i.r1, i.r2)
}

fn parse_multi_index_key(key: &str) -> Result<MultiIndex> {
    let bad = || Error::Parse(format!("invalid multi-index key {key:?}, expected \"i,j\""));
    let (a, b) = key.split_once(',').ok_or_else(bad)?;
    let r1 = a.trim().parse().map_err(|_| bad())?;
    let r2 = b.trim().parse().map_err(|_| bad())?;
    Ok(MultiIndex::new(r1, r2))
}

#[derive(Serialize, Deserialize)]
struct BPlusRepDto {
    dim: usize,
    gens: BTreeMap<String, Vec<Vec<String>>>,
}

pub fn bplus_rep_to_json(rep: &BPlusRep) -> String {
    to_json_string(&bplus_rep_dto(rep))
}

fn bplus_rep_dto(rep: &BPlusRep) -> BPlusRepDto {
    BPlusRepDto {
        dim: rep.dim(),
        gens: rep.gens().iter().map(|(i, m)| (multi_index_key(i), matrix_to_rows(m))).collect(),
    }
}

fn gens_from_dto(dto: &BPlusRepDto) -> Result<BTreeMap<MultiIndex, QMatrix>> {
    dto.gens
        .iter()
        .map(|(k, rows)| Ok((parse_multi_index_key(k)?, matrix_from_rows(rows)?)))
        .collect()
}

/// Parse and validate a Block-type representation; the commutator relations
/// are re-checked, so a file that merely looks well-formed is not enough.
pub fn bplus_rep_from_json(s: &str) -> Result<BPlusRep> {
    let dto: BPlusRepDto = from_json_str(s)?;
    validate_bplus_rep(dto.dim, gens_from_dto(&dto)?)
}

// ---------------------------------------------------------------------------
// module specs and vectors

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind")]
enum SpecDto {
    F { alpha: [String; 2], lambda: String, rep: SL2RepDto },
    B { lambda: String, rep: BPlusRepDto },
}

pub fn spec_to_json(spec: &JetModuleSpec) -> String {
    let dto = match spec {
        JetModuleSpec::F { alpha, lambda, rep } => SpecDto::F {
            alpha: [format_rational(&alpha.0), format_rational(&alpha.1)],
            lambda: format_rational(lambda),
            rep: sl2_rep_dto(rep),
        },
        JetModuleSpec::B { lambda, rep } => SpecDto::B {
            lambda: format_rational(lambda),
            rep: bplus_rep_dto(rep),
        },
    };
    to_json_string(&dto)
}

/// Parse a spec without re-checking the Block-type commutator relations of a
/// B-variant generator map. Structural problems (shapes, zero lambda) are
/// still errors. This is the entry point for verification commands, which
/// want a relation-violating file to surface as a failed axiom rather than a
/// parse error.
pub fn spec_from_json_unchecked(s: &str) -> Result<JetModuleSpec> {
    match from_json_str::<SpecDto>(s)? {
        SpecDto::F { alpha, lambda, rep } => JetModuleSpec::f(
            (parse_rational(&alpha[0])?, parse_rational(&alpha[1])?),
            parse_rational(&lambda)?,
            sl2_rep_from_dto(&rep)?,
        ),
        SpecDto::B { lambda, rep } => JetModuleSpec::b(
            parse_rational(&lambda)?,
            BPlusRep::from_gens_unchecked(rep.dim, gens_from_dto(&rep)?),
        ),
    }
}

pub fn spec_from_json(s: &str) -> Result<JetModuleSpec> {
    match from_json_str::<SpecDto>(s)? {
        SpecDto::F { alpha, lambda, rep } => JetModuleSpec::f(
            (parse_rational(&alpha[0])?, parse_rational(&alpha[1])?),
            parse_rational(&lambda)?,
            sl2_rep_from_dto(&rep)?,
        ),
        SpecDto::B { lambda, rep } => JetModuleSpec::b(
            parse_rational(&lambda)?,
            validate_bplus_rep(rep.dim, gens_from_dto(&rep)?)?,
        ),
    }
}

#[derive(Serialize, Deserialize)]
struct GradeDto {
    grade: [i64; 2],
    vec: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct ModuleVectorDto {
    dim: usize,
    support: Vec<GradeDto>,
}

pub fn vector_to_json(v: &ModuleVector) -> String {
    let support = v
        .support()
        .map(|(g, vec)| GradeDto {
            grade: [g.m1, g.m2],
            vec: vec.iter().map(format_rational).collect(),
        })
        .collect();
    to_json_string(&ModuleVectorDto { dim: v.dim(), support })
}

pub fn vector_from_json(s: &str) -> Result<ModuleVector> {
    let dto: ModuleVectorDto = from_json_str(s)?;
    let mut support = Vec::with_capacity(dto.support.len());
    for g in &dto.support {
        let vec: Result<Vec<Rational>> = g.vec.iter().map(|c| parse_rational(c)).collect();
        support.push((LatticePoint::new(g.grade[0], g.grade[1]), vec?));
    }
    ModuleVector::from_support(dto.dim, support)
}

// ---------------------------------------------------------------------------
// fitted operator families

#[derive(Serialize, Deserialize)]
struct FamilyDto {
    dim: usize,
    coeffs: BTreeMap<String, Vec<Vec<String>>>,
}

pub fn family_to_json(family: &PolyOperatorFamily) -> String {
    to_json_string(&FamilyDto {
        dim: family.dim(),
        coeffs: family
            .coeffs()
            .iter()
            .map(|(i, m)| (multi_index_key(i), matrix_to_rows(m)))
            .collect(),
    })
}

pub fn family_from_json(s: &str) -> Result<PolyOperatorFamily> {
    let dto: FamilyDto = from_json_str(s)?;
    let coeffs = dto
        .coeffs
        .iter()
        .map(|(k, rows)| Ok((parse_multi_index_key(k)?, matrix_from_rows(rows)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    PolyOperatorFamily::new(dto.dim, coeffs)
}
