//! JSON forms of the library types. Rationals are always strings (`"p/q"` or `"p"`).

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::cm::{CMPoint, Equivalence, LambdaTable};
use crate::envelope::{AxiomResult, Report};
use crate::error::{Error, Result};
use crate::free::{AutGenerator, Automorphism};
use crate::groebner::RightIdealGB;
use crate::matrix::{Matrix, RatMatrix};
use crate::poly::UniPoly;
use crate::rat::{format_rat, parse_rat, Rat};
use crate::ratfun::RatFun;
use crate::resolution::IdealPresentation;
use crate::skew::{Chirality, SkewSum};
use crate::theta::{ExponentData, MonVec, Patch, Transcript};
use crate::weyl::{Exp, WeylElement};

/// A type with a serde representation.
pub trait Json: Sized {
    type Repr: Serialize + DeserializeOwned;
    fn to_repr(&self) -> Self::Repr;
    fn from_repr(r: Self::Repr) -> Result<Self>;

    fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_repr()).expect("serializable")
    }

    fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_repr()).expect("serializable")
    }

    fn from_json(v: serde_json::Value) -> Result<Self> {
        Self::from_repr(serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?)
    }

    fn from_json_str(s: &str) -> Result<Self> {
        Self::from_repr(serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?)
    }
}

fn rats(v: &[Rat]) -> Vec<String> {
    v.iter().map(format_rat).collect()
}

fn parse_rats(v: &[String]) -> Result<Vec<Rat>> {
    v.iter().map(|s| parse_rat(s)).collect()
}

impl Json for Rat {
    type Repr = String;
    fn to_repr(&self) -> String {
        format_rat(self)
    }
    fn from_repr(r: String) -> Result<Self> {
        parse_rat(&r)
    }
}

impl Json for RatMatrix {
    type Repr = Vec<Vec<String>>;
    fn to_repr(&self) -> Self::Repr {
        self.to_rows().iter().map(|r| rats(r)).collect()
    }
    fn from_repr(r: Self::Repr) -> Result<Self> {
        let rows = r
            .iter()
            .map(|row| parse_rats(row))
            .collect::<Result<Vec<_>>>()?;
        if rows.is_empty() {
            return Ok(Matrix::zeros(0, 0));
        }
        Matrix::from_rows(rows)
    }
}

/// Ascending coefficient list.
impl Json for UniPoly {
    type Repr = Vec<String>;
    fn to_repr(&self) -> Self::Repr {
        rats(self.coeffs())
    }
    fn from_repr(r: Self::Repr) -> Result<Self> {
        Ok(UniPoly::new(parse_rats(&r)?))
    }
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct WeylTerm {
    pub k: usize,
    pub l: usize,
    pub num: String,
    pub den: String,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct WeylRepr {
    pub terms: Vec<WeylTerm>,
}

impl Json for WeylElement {
    type Repr = WeylRepr;
    fn to_repr(&self) -> WeylRepr {
        WeylRepr {
            terms: self
                .iter()
                .rev()
                .map(|(e, c)| WeylTerm {
                    k: e.k,
                    l: e.l,
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }
    fn from_repr(r: WeylRepr) -> Result<Self> {
        let terms = r
            .terms
            .iter()
            .map(|t| Ok((t.k, t.l, parse_rat(&format!("{}/{}", t.num, t.den))?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(WeylElement::from_terms(terms))
    }
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct PointRepr {
    pub n: usize,
    #[serde(rename = "X")]
    pub x: Vec<Vec<String>>,
    #[serde(rename = "Y")]
    pub y: Vec<Vec<String>>,
    pub i: Vec<String>,
    pub j: Vec<String>,
}

impl Json for CMPoint {
    type Repr = PointRepr;
    fn to_repr(&self) -> PointRepr {
        PointRepr {
            n: self.n,
            x: self.x.to_repr(),
            y: self.y.to_repr(),
            i: rats(&self.i),
            j: rats(&self.j),
        }
    }
    fn from_repr(r: PointRepr) -> Result<Self> {
        let p = CMPoint::new(
            RatMatrix::from_repr(r.x)?,
            RatMatrix::from_repr(r.y)?,
            parse_rats(&r.i)?,
            parse_rats(&r.j)?,
        )?;
        if p.n != r.n {
            return Err(Error::Shape(format!(
                "declared n = {} but matrices have size {}",
                r.n, p.n
            )));
        }
        Ok(p)
    }
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct SkewTerm {
    pub outer_num: Vec<String>,
    pub outer_den: Vec<String>,
    pub inner_num: Vec<String>,
    pub inner_den: Vec<String>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct SkewRepr {
    pub chirality: String,
    pub terms: Vec<SkewTerm>,
}

fn ratfun_from(num: Vec<String>, den: Vec<String>) -> Result<RatFun> {
    let den = UniPoly::from_repr(den)?;
    if num_traits::Zero::is_zero(&den) {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(RatFun::new(UniPoly::from_repr(num)?, den))
}

/// `outer` is the left factor, `inner` the right factor.
impl Json for SkewSum {
    type Repr = SkewRepr;
    fn to_repr(&self) -> SkewRepr {
        SkewRepr {
            chirality: self.chirality().name().into(),
            terms: self
                .terms()
                .iter()
                .map(|(o, i)| SkewTerm {
                    outer_num: o.num().to_repr(),
                    outer_den: o.den().to_repr(),
                    inner_num: i.num().to_repr(),
                    inner_den: i.den().to_repr(),
                })
                .collect(),
        }
    }
    fn from_repr(r: SkewRepr) -> Result<Self> {
        let ch = match r.chirality.as_str() {
            "YX" => Chirality::YX,
            "XY" => Chirality::XY,
            other => return Err(Error::Parse(format!("unknown chirality {other:?}"))),
        };
        let terms = r
            .terms
            .into_iter()
            .map(|t| {
                Ok((
                    ratfun_from(t.outer_num, t.outer_den)?,
                    ratfun_from(t.inner_num, t.inner_den)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SkewSum::new(ch, terms))
    }
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct LambdaRepr {
    pub bound: usize,
    /// `values[l][k] = j Y^l X^k i`
    pub values: Vec<Vec<String>>,
}

impl Json for LambdaTable {
    type Repr = LambdaRepr;
    fn to_repr(&self) -> LambdaRepr {
        LambdaRepr {
            bound: self.bound,
            values: self.values.iter().map(|r| rats(r)).collect(),
        }
    }
    fn from_repr(r: LambdaRepr) -> Result<Self> {
        let values = r
            .values
            .iter()
            .map(|row| parse_rats(row))
            .collect::<Result<Vec<_>>>()?;
        if values.len() != r.bound + 1 || values.iter().any(|row| row.len() != r.bound + 1) {
            return Err(Error::Shape(
                "lambda table must be (bound+1) x (bound+1)".into(),
            ));
        }
        Ok(LambdaTable {
            bound: r.bound,
            values,
        })
    }
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct EquivalenceRepr {
    pub equivalent: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub intertwiner: Option<Vec<Vec<String>>>,
}

impl Json for Equivalence {
    type Repr = EquivalenceRepr;
    fn to_repr(&self) -> EquivalenceRepr {
        EquivalenceRepr {
            equivalent: self.equivalent,
            witness: self.witness.clone(),
            intertwiner: self.intertwiner.as_ref().map(|g| g.to_repr()),
        }
    }
    fn from_repr(r: EquivalenceRepr) -> Result<Self> {
        Ok(Equivalence {
            equivalent: r.equivalent,
            witness: r.witness,
            intertwiner: r.intertwiner.map(RatMatrix::from_repr).transpose()?,
        })
    }
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GeneratorRepr {
    /// `y ↦ y + p(x)`
    ShiftY { poly: Vec<String> },
    /// `x ↦ x + q(y)`
    ShiftX { poly: Vec<String> },
    /// `x ↦ a x + b y`, `y ↦ c x + d y`
    Linear { matrix: [String; 4] },
}

impl Json for AutGenerator {
    type Repr = GeneratorRepr;
    fn to_repr(&self) -> GeneratorRepr {
        match self {
            AutGenerator::ShiftY(p) => GeneratorRepr::ShiftY { poly: p.to_repr() },
            AutGenerator::ShiftX(q) => GeneratorRepr::ShiftX { poly: q.to_repr() },
            AutGenerator::Linear(m) => GeneratorRepr::Linear {
                matrix: m.clone().map(|c| format_rat(&c)),
            },
        }
    }
    fn from_repr(r: GeneratorRepr) -> Result<Self> {
        Ok(match r {
            GeneratorRepr::ShiftY { poly } => AutGenerator::ShiftY(UniPoly::from_repr(poly)?),
            GeneratorRepr::ShiftX { poly } => AutGenerator::ShiftX(UniPoly::from_repr(poly)?),
            GeneratorRepr::Linear { matrix } => {
                let [a, b, c, d] = matrix;
                AutGenerator::Linear([
                    parse_rat(&a)?,
                    parse_rat(&b)?,
                    parse_rat(&c)?,
                    parse_rat(&d)?,
                ])
            }
        })
    }
}

/// A composite `g1 ∘ g2 ∘ …` of generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AutWord(pub Vec<AutGenerator>);

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct AutWordRepr {
    pub generators: Vec<GeneratorRepr>,
}

impl AutWord {
    pub fn automorphism(&self) -> Result<Automorphism> {
        Automorphism::from_generators(&self.0)
    }
}

impl Json for AutWord {
    type Repr = AutWordRepr;
    fn to_repr(&self) -> AutWordRepr {
        AutWordRepr {
            generators: self.0.iter().map(Json::to_repr).collect(),
        }
    }
    fn from_repr(r: AutWordRepr) -> Result<Self> {
        Ok(AutWord(
            r.generators
                .into_iter()
                .map(AutGenerator::from_repr)
                .collect::<Result<_>>()?,
        ))
    }
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct AxiomRepr {
    pub axiom: String,
    pub location: String,
    pub pass: bool,
    pub defect: Option<String>,
}

impl Json for Report {
    type Repr = Vec<AxiomRepr>;
    fn to_repr(&self) -> Self::Repr {
        self.entries
            .iter()
            .map(|e| AxiomRepr {
                axiom: e.axiom.clone(),
                location: e.location.clone(),
                pass: e.pass,
                defect: e.defect.clone(),
            })
            .collect()
    }
    fn from_repr(r: Self::Repr) -> Result<Self> {
        Ok(Report {
            entries: r
                .into_iter()
                .map(|a| AxiomResult {
                    axiom: a.axiom,
                    location: a.location,
                    pass: a.pass,
                    defect: a.defect,
                })
                .collect(),
        })
    }
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct IdealRepr {
    pub source: PointRepr,
    pub gen_poly: WeylRepr,
    pub gen_skew: SkewRepr,
    pub clearing: Vec<String>,
    pub cleared: [WeylRepr; 2],
}

impl Json for IdealPresentation {
    type Repr = IdealRepr;
    fn to_repr(&self) -> IdealRepr {
        IdealRepr {
            source: self.source.to_repr(),
            gen_poly: self.gen_poly.to_repr(),
            gen_skew: self.gen_skew.to_repr(),
            clearing: self.clearing.to_repr(),
            cleared: [self.cleared[0].to_repr(), self.cleared[1].to_repr()],
        }
    }
    fn from_repr(r: IdealRepr) -> Result<Self> {
        let [a, b] = r.cleared;
        Ok(IdealPresentation {
            source: CMPoint::from_repr(r.source)?,
            gen_poly: WeylElement::from_repr(r.gen_poly)?,
            gen_skew: SkewSum::from_repr(r.gen_skew)?,
            clearing: UniPoly::from_repr(r.clearing)?,
            cleared: [WeylElement::from_repr(a)?, WeylElement::from_repr(b)?],
        })
    }
}

/// Generator list of a right ideal.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct GeneratorsRepr {
    pub generators: Vec<WeylRepr>,
}

pub fn generators_to_json(gens: &[WeylElement]) -> serde_json::Value {
    serde_json::to_value(GeneratorsRepr {
        generators: gens.iter().map(Json::to_repr).collect(),
    })
    .expect("serializable")
}

/// Accepts `{"generators": [...]}`, a bare list of elements, or an ideal presentation (its cleared pair).
pub fn generators_from_json(v: serde_json::Value) -> Result<Vec<WeylElement>> {
    if let Ok(r) = serde_json::from_value::<GeneratorsRepr>(v.clone()) {
        return r
            .generators
            .into_iter()
            .map(WeylElement::from_repr)
            .collect();
    }
    if let Ok(r) = serde_json::from_value::<Vec<WeylRepr>>(v.clone()) {
        return r.into_iter().map(WeylElement::from_repr).collect();
    }
    if let Ok(r) = serde_json::from_value::<IdealRepr>(v) {
        return r.cleared.into_iter().map(WeylElement::from_repr).collect();
    }
    Err(Error::Parse(
        "expected a list of Weyl algebra elements".into(),
    ))
}

fn exp_pair(e: &Exp) -> [usize; 2] {
    [e.k, e.l]
}

fn pair_exp(p: [usize; 2]) -> Exp {
    Exp::new(p[0], p[1])
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct GroebnerRepr {
    pub generators: Vec<WeylRepr>,
    pub basis: Vec<WeylRepr>,
    pub staircase_gens: Vec<[usize; 2]>,
}

impl Json for RightIdealGB {
    type Repr = GroebnerRepr;
    fn to_repr(&self) -> GroebnerRepr {
        GroebnerRepr {
            generators: self.generators.iter().map(Json::to_repr).collect(),
            basis: self.basis.iter().map(Json::to_repr).collect(),
            staircase_gens: self.staircase_gens.iter().map(exp_pair).collect(),
        }
    }
    fn from_repr(r: GroebnerRepr) -> Result<Self> {
        Ok(RightIdealGB {
            generators: r
                .generators
                .into_iter()
                .map(WeylElement::from_repr)
                .collect::<Result<_>>()?,
            basis: r
                .basis
                .into_iter()
                .map(WeylElement::from_repr)
                .collect::<Result<_>>()?,
            staircase_gens: r.staircase_gens.into_iter().map(pair_exp).collect(),
        })
    }
}

/// Sparse polynomial in `x̄`, `ȳ`: list of `[k, l, "c"]`.
impl Json for MonVec {
    type Repr = Vec<(usize, usize, String)>;
    fn to_repr(&self) -> Self::Repr {
        self.iter()
            .rev()
            .map(|(e, c)| (e.k, e.l, format_rat(c)))
            .collect()
    }
    fn from_repr(r: Self::Repr) -> Result<Self> {
        r.into_iter()
            .map(|(k, l, c)| Ok((Exp::new(k, l), parse_rat(&c)?)))
            .collect()
    }
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct PatchRepr {
    pub vector: Vec<(usize, usize, String)>,
    pub eigenvalue: String,
    pub value: Vec<(usize, usize, String)>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct TranscriptRepr {
    pub sigma_gens: Vec<[usize; 2]>,
    pub generator_exponent: [usize; 2],
    pub complement: Vec<[usize; 2]>,
    pub n: usize,
    pub x_corrections: Vec<PatchRepr>,
    pub y_corrections: Vec<PatchRepr>,
}

impl Json for Patch {
    type Repr = PatchRepr;
    fn to_repr(&self) -> PatchRepr {
        PatchRepr {
            vector: self.vector.to_repr(),
            eigenvalue: format_rat(&self.eigenvalue),
            value: self.value.to_repr(),
        }
    }
    fn from_repr(r: PatchRepr) -> Result<Self> {
        Ok(Patch {
            vector: MonVec::from_repr(r.vector)?,
            eigenvalue: parse_rat(&r.eigenvalue)?,
            value: MonVec::from_repr(r.value)?,
        })
    }
}

impl Json for Transcript {
    type Repr = TranscriptRepr;
    fn to_repr(&self) -> TranscriptRepr {
        let e = &self.exponents;
        TranscriptRepr {
            sigma_gens: e.sigma_gens.iter().map(exp_pair).collect(),
            generator_exponent: exp_pair(&e.corner),
            complement: e.complement.iter().map(exp_pair).collect(),
            n: e.n(),
            x_corrections: self.x_patches.iter().map(Json::to_repr).collect(),
            y_corrections: self.y_patches.iter().map(Json::to_repr).collect(),
        }
    }
    fn from_repr(r: TranscriptRepr) -> Result<Self> {
        if r.n != r.complement.len() {
            return Err(Error::Shape("n must equal the complement size".into()));
        }
        Ok(Transcript {
            exponents: ExponentData {
                sigma_gens: r.sigma_gens.into_iter().map(pair_exp).collect(),
                corner: pair_exp(r.generator_exponent),
                complement: r.complement.into_iter().map(pair_exp).collect(),
            },
            x_patches: r
                .x_corrections
                .into_iter()
                .map(Patch::from_repr)
                .collect::<Result<_>>()?,
            y_patches: r
                .y_corrections
                .into_iter()
                .map(Patch::from_repr)
                .collect::<Result<_>>()?,
        })
    }
}

/// Structured error object for the command line.
pub fn error_json(e: &Error) -> serde_json::Value {
    let kind = match e {
        Error::Parse(_) => "parse",
        Error::Shape(_) => "shape",
        Error::ZeroElement => "zero_element",
        Error::InvalidAutomorphism(_) => "invalid_automorphism",
        Error::NoInverse => "no_inverse",
        Error::Chirality(_) => "chirality",
        Error::Membership(_) => "membership",
        Error::InvalidPoint(_) => "invalid_point",
        Error::TruncationOverflow(_) => "truncation_overflow",
        Error::StepBound(_) => "step_bound",
        Error::NonSplitSpectrum { .. } => "non_split_spectrum",
        Error::InfiniteComplement(_) => "infinite_complement",
        Error::Singular => "singular",
        Error::Invariant(_) => "invariant",
    };
    let mut obj = serde_json::json!({ "error": kind, "message": e.to_string() });
    if let Error::NonSplitSpectrum { factor } = e {
        obj["factor"] = serde_json::Value::String(factor.clone());
    }
    obj
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratq};

    fn roundtrip<T: Json + PartialEq + std::fmt::Debug>(v: &T) {
        assert_eq!(&T::from_json_str(&v.to_json_string()).unwrap(), v);
    }

    #[test]
    fn point_schema() {
        let p = CMPoint::single(ratq(1, 2), rat(3));
        assert_eq!(
            p.to_json_string(),
            r#"{"n":1,"X":[["1/2"]],"Y":[["3"]],"i":["1"],"j":["1"]}"#
        );
        roundtrip(&p);
        roundtrip(&CMPoint::nilpotent2());
        roundtrip(&CMPoint::empty());
    }

    #[test]
    fn weyl_schema() {
        let a = WeylElement::from_terms([(1, 1, rat(1)), (0, 0, ratq(-3, 2))]);
        assert_eq!(
            a.to_json_string(),
            r#"{"terms":[{"k":1,"l":1,"num":"1","den":"1"},{"k":0,"l":0,"num":"-3","den":"2"}]}"#
        );
        roundtrip(&a);
    }

    #[test]
    fn other_schemas_roundtrip() {
        let p = CMPoint::nilpotent2();
        roundtrip(&p.lambda_table(3));
        let (kappa, chi) = p.kappa();
        assert!(SkewSum::from_json_str(&kappa.to_json_string())
            .unwrap()
            .sub(&kappa)
            .unwrap()
            .is_zero());
        assert!(SkewSum::from_json_str(&chi.to_json_string())
            .unwrap()
            .sub(&chi)
            .unwrap()
            .is_zero());
        roundtrip(&AutWord(vec![
            AutGenerator::ShiftY(UniPoly::from_ints(&[0, 0, 1])),
            AutGenerator::Linear([rat(0), rat(1), rat(-1), rat(0)]),
        ]));
        roundtrip(&crate::cm::equivalent(&p, &p).unwrap());
    }

    #[test]
    fn malformed_input_is_a_parse_error() {
        assert!(matches!(CMPoint::from_json_str("{"), Err(Error::Parse(_))));
        assert!(matches!(
            CMPoint::from_json_str(r#"{"n":1,"X":[["a"]],"Y":[["0"]],"i":["1"],"j":["1"]}"#),
            Err(Error::Parse(_))
        ));
    }
}
