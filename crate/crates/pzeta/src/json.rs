//! JSON shapes for polynomials, factor descriptors and reports.
//!
//! Big integers travel as decimal strings. Struct field order is the
//! serialization order, which keeps golden files stable.

use std::str::FromStr;

use num_bigint::BigInt;
use pzeta_core::rationality::{
    ConditionI, FactorDescriptor, FactorKind, LambdaDef, ReplayReport, SmlVerdict,
};
use pzeta_core::structure::ChiefFactor;
use pzeta_core::zeta::{ChiefFactorization, OmegaResult, WRow};
use pzeta_core::{DirichletPolynomial, Index, Psl2Variant, RationalSeries, SubgroupLattice, TruncatedSeries};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub n: Index,
    pub a: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub terms: Vec<Term>,
}

impl From<&DirichletPolynomial> for PolyJson {
    fn from(p: &DirichletPolynomial) -> Self {
        PolyJson {
            terms: p.terms().map(|(n, a)| Term { n, a: a.to_string() }).collect(),
        }
    }
}

impl From<&TruncatedSeries> for PolyJson {
    fn from(t: &TruncatedSeries) -> Self {
        PolyJson {
            terms: t.terms().map(|(n, a)| Term { n, a: a.to_string() }).collect(),
        }
    }
}

fn parse_int(s: &str) -> Result<BigInt, CliError> {
    BigInt::from_str(s.trim()).map_err(|_| CliError::Parse(format!("not an integer: {s:?}")))
}

impl PolyJson {
    pub fn to_poly(&self) -> Result<DirichletPolynomial, CliError> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((t.n, parse_int(&t.a)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(DirichletPolynomial::from_terms(terms)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: PolyJson,
    pub den: PolyJson,
}

impl From<&RationalSeries> for RationalJson {
    fn from(r: &RationalSeries) -> Self {
        RationalJson {
            num: r.numerator().into(),
            den: r.denominator().into(),
        }
    }
}

impl RationalJson {
    pub fn to_series(&self) -> Result<RationalSeries, CliError> {
        Ok(RationalSeries::new(self.num.to_poly()?, self.den.to_poly()?)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Psl2Json {
    pub q: u64,
    pub variant: VariantJson,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantJson {
    Psl,
    Pgl,
}

impl From<Psl2Variant> for VariantJson {
    fn from(v: Psl2Variant) -> Self {
        match v {
            Psl2Variant::Psl => VariantJson::Psl,
            Psl2Variant::Pgl => VariantJson::Pgl,
        }
    }
}

impl From<VariantJson> for Psl2Variant {
    fn from(v: VariantJson) -> Self {
        match v {
            VariantJson::Psl => Psl2Variant::Psl,
            VariantJson::Pgl => Psl2Variant::Pgl,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindJson {
    Cyclic(u64),
    Psl2(Psl2Json),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub n: Index,
    pub b: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescriptorJson {
    pub id: u64,
    pub kind: KindJson,
    pub r: u32,
    pub coeffs: Vec<CoeffJson>,
}

impl From<&FactorDescriptor> for DescriptorJson {
    fn from(f: &FactorDescriptor) -> Self {
        let kind = match f.kind {
            FactorKind::Cyclic(q) => KindJson::Cyclic(q),
            FactorKind::Psl2 { q, variant } => KindJson::Psl2(Psl2Json {
                q,
                variant: variant.into(),
            }),
        };
        DescriptorJson {
            id: f.id,
            kind,
            r: f.r,
            coeffs: f.coeffs.iter().map(|(&n, b)| CoeffJson { n, b: b.to_string() }).collect(),
        }
    }
}

impl DescriptorJson {
    pub fn to_descriptor(&self) -> Result<FactorDescriptor, CliError> {
        let kind = match self.kind {
            KindJson::Cyclic(q) => FactorKind::Cyclic(q),
            KindJson::Psl2(p) => FactorKind::Psl2 {
                q: p.q,
                variant: p.variant.into(),
            },
        };
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| Ok((c.n, parse_int(&c.b)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(FactorDescriptor::new(self.id, kind, self.r, coeffs)?)
    }
}

/// A replay input object; a bare descriptor list is accepted as well.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReplayInput {
    pub factors: Vec<DescriptorJson>,
    #[serde(default)]
    pub bound: Option<Index>,
}

impl ReplayInput {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        if text.trim_start().starts_with('[') {
            Ok(ReplayInput {
                factors: serde_json::from_str(text)?,
                bound: None,
            })
        } else {
            Ok(serde_json::from_str(text)?)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaJson {
    pub divisible_by: Index,
    pub odd: bool,
    pub max_prime: Option<Index>,
}

impl LambdaJson {
    fn new(l: LambdaDef, q: Index) -> Self {
        LambdaJson {
            divisible_by: q,
            odd: l.odd,
            max_prime: l.max_prime,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmlJson {
    pub condition_i: String,
    pub violated_at: Option<u64>,
    pub condition_ii: String,
    pub witness_prime: Option<u64>,
    pub window_relative: bool,
}

impl From<&SmlVerdict> for SmlJson {
    fn from(v: &SmlVerdict) -> Self {
        let (condition_i, violated_at) = match v.condition_i {
            ConditionI::Holds => ("holds".to_string(), None),
            ConditionI::ViolatedAt(n) => ("violated".to_string(), Some(n)),
        };
        SmlJson {
            condition_i,
            violated_at,
            condition_ii: if v.condition_ii.is_some() { "holds" } else { "violated" }.to_string(),
            witness_prime: v.condition_ii,
            window_relative: v.window_relative,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayJson {
    pub q: Index,
    pub lambda: LambdaJson,
    pub lambda_bounded: LambdaJson,
    pub r: Option<u32>,
    pub i_star_min_r: Vec<u64>,
    pub w_min_r: Option<Index>,
    pub beta: Option<Index>,
    pub beta_is_w_pow_r: Option<bool>,
    pub c_beta: Option<String>,
    pub c_beta_sign: Option<String>,
    pub c_beta_product: Option<String>,
    pub w: Option<Index>,
    pub w_via_projection: Option<Index>,
    pub i_star: Vec<u64>,
    pub h_factors: Vec<PolyJson>,
    pub h_expansion: PolyJson,
    pub q_expansion: PolyJson,
    pub bound: Index,
    pub characterization_holds: bool,
    pub h_coefficients_negative: bool,
    pub sml: Option<SmlJson>,
}

fn sign(b: &BigInt) -> String {
    match b.sign() {
        num_bigint::Sign::Minus => "negative",
        num_bigint::Sign::NoSign => "zero",
        num_bigint::Sign::Plus => "positive",
    }
    .to_string()
}

impl From<&ReplayReport> for ReplayJson {
    fn from(r: &ReplayReport) -> Self {
        ReplayJson {
            q: r.q,
            lambda: LambdaJson::new(r.lambda, r.q),
            lambda_bounded: LambdaJson::new(r.lambda_bounded, r.q),
            r: r.r,
            i_star_min_r: r.i_star_min_r.clone(),
            w_min_r: r.w_min_r,
            beta: r.beta,
            beta_is_w_pow_r: r.beta_is_w_pow_r,
            c_beta: r.c_beta.as_ref().map(|c| c.to_string()),
            c_beta_sign: r.c_beta.as_ref().map(sign),
            c_beta_product: r.c_beta_product.as_ref().map(|c| c.to_string()),
            w: r.w,
            w_via_projection: r.w_via_projection,
            i_star: r.i_star.clone(),
            h_factors: r.h_factors.iter().map(PolyJson::from).collect(),
            h_expansion: (&r.h_expansion).into(),
            q_expansion: (&r.q_expansion).into(),
            bound: r.h_expansion.bound(),
            characterization_holds: r.characterization_holds,
            h_coefficients_negative: r.h_coefficients_negative,
            sml: r.sml.as_ref().map(SmlJson::from),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaReport {
    pub group: String,
    pub order: usize,
    pub p_g: PolyJson,
    pub p_g_text: String,
    pub subgroups: usize,
    pub classes: usize,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub label: String,
    pub simple: String,
    pub r: u32,
    pub order: u64,
    pub frattini: bool,
    pub complements: Option<u64>,
    pub poly: PolyJson,
    pub poly_text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationJson {
    pub group: String,
    pub order: usize,
    pub factors: Vec<FactorJson>,
    pub p_g: PolyJson,
    pub product_matches: bool,
}

impl FactorizationJson {
    pub fn new(group: &str, order: usize, cf: &ChiefFactorization, p_g: &DirichletPolynomial, product_matches: bool) -> Self {
        let factors = cf
            .series
            .factors
            .iter()
            .zip(&cf.polys)
            .zip(cf.frattini.iter().zip(&cf.complements))
            .map(|((f, p), (&frattini, &complements)): ((&ChiefFactor, _), _)| FactorJson {
                label: f.label(),
                simple: f.simple.to_string(),
                r: f.multiplicity,
                order: f.order,
                frattini,
                complements,
                poly: p.into(),
                poly_text: p.to_string(),
            })
            .collect();
        FactorizationJson {
            group: group.to_string(),
            order,
            factors,
            p_g: p_g.into(),
            product_matches,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaJson {
    pub x: String,
    pub omega: Vec<u64>,
    pub w: Option<u64>,
}

impl From<&OmegaResult> for OmegaJson {
    fn from(o: &OmegaResult) -> Self {
        OmegaJson {
            x: o.label.clone(),
            omega: o.omega.clone(),
            w: o.w,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WRowJson {
    pub q: u64,
    pub variant: VariantJson,
    pub computed: Option<u64>,
    pub predicted: u64,
    pub status: String,
    pub matches: bool,
    pub note: Option<String>,
}

impl From<&WRow> for WRowJson {
    fn from(r: &WRow) -> Self {
        WRowJson {
            q: r.q,
            variant: r.variant.into(),
            computed: r.computed,
            predicted: r.predicted,
            status: r.status.as_str().to_string(),
            matches: r.computed == Some(r.predicted),
            note: r.note.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: usize,
    pub order: usize,
    pub class: usize,
    pub moebius: i64,
    pub elements: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub id: usize,
    pub order: usize,
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub group: String,
    pub order: usize,
    pub nodes: Vec<NodeJson>,
    /// Covering pairs `[lower, upper]`.
    pub edges: Vec<[usize; 2]>,
    pub classes: Vec<ClassJson>,
}

impl LatticeJson {
    pub fn new(group: &str, l: &SubgroupLattice) -> Self {
        LatticeJson {
            group: group.to_string(),
            order: l.group_order(),
            nodes: (0..l.len())
                .map(|k| NodeJson {
                    id: k,
                    order: l.order(k),
                    class: l.class_of(k),
                    moebius: l.moebius(k),
                    elements: l.elements(k),
                })
                .collect(),
            edges: l.hasse_edges().into_iter().map(|(a, b)| [a, b]).collect(),
            classes: l
                .classes()
                .iter()
                .enumerate()
                .map(|(id, c)| ClassJson {
                    id,
                    order: c.order,
                    members: c.members.clone(),
                })
                .collect(),
        }
    }
}

/// Exponent families as accepted by `smlcheck --file`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyJson {
    Explicit(Vec<u64>),
    Constant(u64),
    Arithmetic { start: u64, step: u64 },
    Geometric { start: u64, ratio: u64 },
}
