//! JSON shapes emitted by the `artin` commands.

use artin_core::homology::AbelianGroup;
use artin_core::modeltheory::{
    CenterFact, CenterGenerator, Decision, DistinguishCertificate, EqeCertificate, RetractOutcome, Witness,
};
use artin_core::salvetti::ComplexDump;
use artin_core::Decomposition;
use artin_core::CoxeterGraph;
use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Integer that is written as a JSON number when it fits in `i64` and as a
/// decimal string otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigNum(pub BigInt);

impl Serialize for BigNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for BigNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(BigNum(v.into())),
            Raw::Text(s) => s.parse().map(BigNum).map_err(serde::de::Error::custom),
        }
    }
}

impl From<&BigUint> for BigNum {
    fn from(v: &BigUint) -> Self {
        BigNum(BigInt::from(v.clone()))
    }
}

impl From<&BigInt> for BigNum {
    fn from(v: &BigInt) -> Self {
        BigNum(v.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub free_rank: usize,
    pub torsion: Vec<BigNum>,
}

impl From<&AbelianGroup> for GroupJson {
    fn from(g: &AbelianGroup) -> Self {
        GroupJson {
            free_rank: g.free_rank(),
            torsion: g.torsion().iter().map(BigNum::from).collect(),
        }
    }
}

impl GroupJson {
    pub fn to_group(&self) -> Option<AbelianGroup> {
        let orders = self
            .torsion
            .iter()
            .map(|t| t.0.to_biguint())
            .collect::<Option<Vec<_>>>()?;
        Some(AbelianGroup::from_cyclic_factors(self.free_rank, orders))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    #[serde(rename = "type")]
    pub ty: String,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyJson {
    pub components: Vec<ComponentJson>,
    pub spherical: bool,
    pub affine_simply_laced: bool,
}

impl ClassifyJson {
    pub fn new(g: &CoxeterGraph, d: &Decomposition) -> Self {
        ClassifyJson {
            components: d
                .components
                .iter()
                .map(|c| ComponentJson {
                    ty: c.ty.to_string(),
                    generators: c.generators.iter().map(|&v| g.name(v).to_string()).collect(),
                })
                .collect(),
            spherical: d.is_spherical(),
            affine_simply_laced: d.is_affine_simply_laced(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub u: String,
    pub v: String,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceJson {
    #[serde(rename = "type")]
    pub ty: String,
    pub generators: Vec<String>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeJson {
    pub components: Vec<PieceJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    #[serde(rename = "type")]
    pub ty: String,
    pub exponents: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareJson {
    pub factored: String,
    pub factors: Vec<FactorJson>,
    /// Coefficients, lowest degree first.
    pub expanded: Vec<BigNum>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeJson {
    pub k: usize,
    pub basis: Vec<Vec<String>>,
    pub boundary: Vec<Vec<BigNum>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub degrees: Vec<DegreeJson>,
}

impl From<&ComplexDump> for ComplexJson {
    fn from(d: &ComplexDump) -> Self {
        ComplexJson {
            degrees: d
                .degrees
                .iter()
                .map(|deg| DegreeJson {
                    k: deg.k,
                    basis: deg.basis.clone(),
                    boundary: deg
                        .boundary
                        .iter()
                        .map(|row| row.iter().map(BigNum::from).collect())
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyJson {
    pub degree: usize,
    pub group: GroupJson,
    pub text: String,
    /// False when the result depends on the `K(pi, 1)` conjecture.
    pub unconditional: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionJson {
    #[serde(rename = "type")]
    pub ty: String,
    pub orders: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterJson {
    #[serde(rename = "type")]
    pub ty: String,
    pub generator: String,
    pub reflection_count: u64,
    pub central_exponent: u64,
}

impl CenterJson {
    pub fn new(ty: String, f: &CenterFact) -> Self {
        CenterJson {
            ty,
            generator: generator_name(f.generator_kind).to_string(),
            reflection_count: f.reflection_count,
            central_exponent: f.central_exponent,
        }
    }
}

pub fn generator_name(g: CenterGenerator) -> &'static str {
    match g {
        CenterGenerator::Delta => "Delta",
        CenterGenerator::DeltaSquared => "Delta^2",
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum WitnessJson {
    None,
    TorsionOrder { order: u64 },
    Hyperbolic { first: bool, second: bool },
    CyclicOrders { first: u64, second: u64 },
    Component {
        #[serde(rename = "type")]
        ty: String,
        first: usize,
        second: usize,
    },
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        match *w {
            Witness::None => WitnessJson::None,
            Witness::TorsionOrder(order) => WitnessJson::TorsionOrder { order },
            Witness::Hyperbolic { first, second } => WitnessJson::Hyperbolic { first, second },
            Witness::CyclicOrders(first, second) => WitnessJson::CyclicOrders { first, second },
            Witness::Component { ty, first, second } => WitnessJson::Component {
                ty: ty.to_string(),
                first,
                second,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub verdict: String,
    pub method: Option<String>,
    pub witness: WitnessJson,
}

impl From<&DistinguishCertificate> for CertificateJson {
    fn from(c: &DistinguishCertificate) -> Self {
        CertificateJson {
            verdict: format!("{:?}", c.verdict),
            method: c.method.map(|m| format!("{m:?}")),
            witness: WitnessJson::from(&c.witness),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome")]
pub enum RetractJson {
    Obstructed {
        degree: usize,
        source: GroupJson,
        target: GroupJson,
    },
    NoObstructionFound,
}

impl From<&RetractOutcome> for RetractJson {
    fn from(r: &RetractOutcome) -> Self {
        match r {
            RetractOutcome::Obstructed { degree, source, target } => RetractJson::Obstructed {
                degree: *degree,
                source: source.into(),
                target: target.into(),
            },
            RetractOutcome::NoObstructionFound => RetractJson::NoObstructionFound,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum EqeCertificateJson {
    Retract {
        target: String,
        source: String,
        outcome: RetractJson,
    },
    RankMismatch { first: usize, second: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionJson {
    pub decision: String,
    pub certificate: Option<EqeCertificateJson>,
}

impl From<&Decision> for DecisionJson {
    fn from(d: &Decision) -> Self {
        let (decision, certificate) = match d {
            Decision::Equivalent => ("Equivalent", None),
            Decision::OutOfTheoremScope => ("OutOfTheoremScope", None),
            Decision::NotEquivalent(c) => (
                "NotEquivalent",
                Some(match c {
                    EqeCertificate::Retract { target, source, outcome } => EqeCertificateJson::Retract {
                        target: target.to_string(),
                        source: source.to_string(),
                        outcome: outcome.into(),
                    },
                    EqeCertificate::RankMismatch(first, second) => EqeCertificateJson::RankMismatch {
                        first: *first,
                        second: *second,
                    },
                }),
            ),
        };
        DecisionJson {
            decision: decision.to_string(),
            certificate,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntryJson {
    #[serde(rename = "type")]
    pub ty: String,
    pub vertices: usize,
    pub spherical: bool,
    pub affine: bool,
    pub exponents: Option<Vec<u32>>,
    pub coxeter_number: Option<u64>,
    pub order: Option<BigNum>,
    pub graph: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub table: String,
    pub item: String,
    pub expected: String,
    pub computed: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub checks: Vec<CheckJson>,
    pub total: usize,
    pub mismatches: usize,
}
