//! JSON encodings of the value types.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use std::sync::Arc;

use crate::braiding::{coefficients_from_values, double_braiding_invariants, Braiding};
use crate::classify::{ClassInvariants, Classification};
use crate::crossed::{crossed_coefficients_from_values, CrossedBraiding, CrossedClassification};
use crate::data::{Case, DataError, Simple, TYData};
use crate::equations::Violation;
use crate::f2::{bits_to_string, string_to_bits, Bicharacter, F2Error, GradedGroup};
use crate::qform::{FormError, QForm};
use crate::scalar::{CycScalar, Dyadic, ScalarError};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error(transparent)]
    Serde(#[from] serde_json::Error),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    F2(#[from] F2Error),
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("bad bit string {0:?}")]
    Bits(String),
    #[error("sigma1 needs {expected} unit exponents, got {got}")]
    Sigma1 { expected: usize, got: usize },
}

fn sigma1_values(data: &TYData, exps: &[Option<u32>]) -> Result<Vec<CycScalar>, JsonError> {
    let expected = data.order();
    let ok: Option<Vec<u32>> = exps.iter().copied().collect();
    match ok {
        Some(v) if v.len() == expected => Ok(v
            .iter()
            .map(|&e| CycScalar::root_of_unity(data.modulus, e as i64))
            .collect()),
        _ => Err(JsonError::Sigma1 {
            expected,
            got: exps.iter().flatten().count(),
        }),
    }
}

fn form_of(data: &TYData, values: &[CycScalar]) -> Option<QForm> {
    let exps: Option<Vec<u32>> = values.iter().map(|x| x.unit_exponent()).collect();
    QForm::from_table(&data.chi, exps?, data.modulus).ok()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarJson {
    #[serde(rename = "N")]
    pub n: u32,
    pub coeffs: Vec<(i64, u32)>,
}

impl From<&CycScalar> for ScalarJson {
    fn from(x: &CycScalar) -> Self {
        ScalarJson {
            n: x.modulus(),
            coeffs: x.coeffs().iter().map(|d| (d.num, d.den_exp)).collect(),
        }
    }
}

impl TryFrom<&ScalarJson> for CycScalar {
    type Error = ScalarError;
    fn try_from(j: &ScalarJson) -> Result<Self, Self::Error> {
        let ds: Vec<Dyadic> = j
            .coeffs
            .iter()
            .map(|&(num, e)| Dyadic::new(num, e))
            .collect();
        CycScalar::from_dyadics(j.n, &ds)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BicharJson {
    pub dim: usize,
    pub gram_rows: Vec<String>,
}

impl From<&Bicharacter> for BicharJson {
    fn from(c: &Bicharacter) -> Self {
        BicharJson {
            dim: c.dim(),
            gram_rows: c.gram_rows(),
        }
    }
}

impl TryFrom<&BicharJson> for Bicharacter {
    type Error = F2Error;
    fn try_from(j: &BicharJson) -> Result<Self, Self::Error> {
        Bicharacter::from_gram_rows(j.dim, &j.gram_rows)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub dim: usize,
    pub grading: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<String>,
}

fn bits(s: &str, dim: usize) -> Result<u32, JsonError> {
    if s.chars().count() != dim {
        return Err(JsonError::Bits(s.to_string()));
    }
    string_to_bits(s).ok_or_else(|| JsonError::Bits(s.to_string()))
}

impl From<&GradedGroup> for GroupJson {
    fn from(g: &GradedGroup) -> Self {
        GroupJson {
            dim: g.dim,
            grading: bits_to_string(g.grading, g.dim),
            w: g.w.map(|w| bits_to_string(w, g.dim)),
        }
    }
}

impl TryFrom<&GroupJson> for GradedGroup {
    type Error = JsonError;
    fn try_from(j: &GroupJson) -> Result<Self, Self::Error> {
        let w = match &j.w {
            Some(s) => Some(bits(s, j.dim)?),
            None => None,
        };
        Ok(GradedGroup {
            dim: j.dim,
            grading: bits(&j.grading, j.dim)?,
            w,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QFormJson {
    pub chi: BicharJson,
    pub exponents: Vec<u32>,
    #[serde(rename = "N")]
    pub n: u32,
}

impl From<&QForm> for QFormJson {
    fn from(q: &QForm) -> Self {
        QFormJson {
            chi: q.chi().into(),
            exponents: q.exponents().to_vec(),
            n: q.modulus(),
        }
    }
}

impl TryFrom<&QFormJson> for QForm {
    type Error = JsonError;
    fn try_from(j: &QFormJson) -> Result<Self, Self::Error> {
        let chi = Bicharacter::try_from(&j.chi)?;
        Ok(QForm::from_table(&chi, j.exponents.clone(), j.n)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DataJson {
    pub case: String,
    pub group: GroupJson,
    pub chi: BicharJson,
    pub tau_sign: i8,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
}

impl From<&TYData> for DataJson {
    fn from(d: &TYData) -> Self {
        DataJson {
            case: d.case.name().to_string(),
            group: (&d.group).into(),
            chi: (&d.chi).into(),
            tau_sign: d.tau_sign,
            n: Some(d.modulus),
        }
    }
}

impl DataJson {
    /// Builds the data, using `default_modulus` when the object has none.
    pub fn to_data(&self, default_modulus: u32) -> Result<TYData, JsonError> {
        let case: Case = self.case.parse()?;
        let group = GradedGroup::try_from(&self.group)?;
        let chi = Bicharacter::try_from(&self.chi)?;
        Ok(TYData::new(
            case,
            group,
            chi,
            self.tau_sign,
            self.n.unwrap_or(default_modulus),
        )?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsJson {
    pub sgn_sigma: Option<i8>,
    pub symmetric: bool,
    pub nondegenerate: bool,
    pub transparent: Vec<String>,
}

fn simple_name(s: &Simple, dim: usize) -> String {
    match s {
        Simple::G(a) => bits_to_string(*a, dim),
        Simple::M => "m".to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidingJson {
    pub data: DataJson,
    pub sigma1_exponents: Vec<Option<u32>>,
    pub epsilon: Option<i8>,
    pub sigma3_1: ScalarJson,
    pub invariants: InvariantsJson,
}

impl From<&Braiding> for BraidingJson {
    fn from(b: &Braiding) -> Self {
        let db = double_braiding_invariants(b);
        BraidingJson {
            data: b.data.as_ref().into(),
            sigma1_exponents: b.coeffs.sigma1.iter().map(|x| x.unit_exponent()).collect(),
            epsilon: b.epsilon,
            sigma3_1: b.sigma3_one().into(),
            invariants: InvariantsJson {
                sgn_sigma: b.sgn_sigma(),
                symmetric: db.is_symmetric,
                nondegenerate: db.is_nondegenerate,
                transparent: db
                    .transparent
                    .iter()
                    .map(|s| simple_name(s, b.data.group.dim))
                    .collect(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossedBraidingJson {
    pub data: DataJson,
    pub sigma1_exponents: Vec<Option<u32>>,
    pub epsilon: Option<i8>,
    pub sigma3_1: ScalarJson,
    pub invariants: CrossedInvariantsJson,
    pub kappa: Option<i8>,
    pub gamma_m: Option<i8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossedInvariantsJson {
    pub sgn_sigma: Option<i8>,
}

impl From<&CrossedBraiding> for CrossedBraidingJson {
    fn from(b: &CrossedBraiding) -> Self {
        CrossedBraidingJson {
            data: b.data.as_ref().into(),
            sigma1_exponents: b.coeffs.sigma1.iter().map(|x| x.unit_exponent()).collect(),
            epsilon: b.epsilon,
            sigma3_1: b.sigma3_one().into(),
            invariants: CrossedInvariantsJson {
                sgn_sigma: b.sgn_sigma(),
            },
            kappa: b.kappa(),
            gamma_m: b.gamma_m().real_sign(),
        }
    }
}

impl BraidingJson {
    /// The braiding rebuilt through the reduced system from `sigma1` and
    /// `sigma3(1)`; `sigma1` need not be an admissible form.
    pub fn to_braiding(&self, default_modulus: u32) -> Result<Braiding, JsonError> {
        let data = self.data.to_data(default_modulus)?;
        let values = sigma1_values(&data, &self.sigma1_exponents)?;
        let s = CycScalar::try_from(&self.sigma3_1)?;
        let coeffs = coefficients_from_values(&data, &values, &s);
        let form = form_of(&data, &values);
        Ok(Braiding {
            data: Arc::new(data),
            coeffs,
            form,
            epsilon: self.epsilon,
        })
    }
}

impl CrossedBraidingJson {
    pub fn to_crossed(&self, default_modulus: u32) -> Result<CrossedBraiding, JsonError> {
        let data = self.data.to_data(default_modulus)?;
        let values = sigma1_values(&data, &self.sigma1_exponents)?;
        let s = CycScalar::try_from(&self.sigma3_1)?;
        let mut coeffs =
            crossed_coefficients_from_values(&data, &values, self.kappa.unwrap_or(1), &s);
        if let Some(g) = self.gamma_m {
            coeffs.gamma_m = CycScalar::from_int(data.modulus, g as i64);
        }
        let form = form_of(&data, &values);
        Ok(CrossedBraiding {
            data: Arc::new(data),
            coeffs,
            form,
            epsilon: self.epsilon,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationJson {
    pub eq: String,
    pub at: Vec<u32>,
    pub lhs: ScalarJson,
    pub rhs: ScalarJson,
}

impl From<&Violation> for ViolationJson {
    fn from(v: &Violation) -> Self {
        ViolationJson {
            eq: v.eq.clone(),
            at: v.at.clone(),
            lhs: (&v.lhs).into(),
            rhs: (&v.rhs).into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInvariantsJson {
    pub sgn_sigma: Option<i8>,
    pub epsilon: Option<i8>,
    pub sigma_w: Option<i8>,
    pub sigma3_1: Option<ScalarJson>,
}

impl From<&ClassInvariants> for ClassInvariantsJson {
    fn from(c: &ClassInvariants) -> Self {
        ClassInvariantsJson {
            sgn_sigma: c.sgn_sigma,
            epsilon: c.epsilon,
            sigma_w: c.sigma_w,
            sigma3_1: c.sigma3_one.as_ref().map(Into::into),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson<B> {
    pub size: usize,
    pub invariants: ClassInvariantsJson,
    pub representative: B,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pi0Json {
    pub count: u64,
    pub formula: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationJson<B> {
    pub data: DataJson,
    pub classes: Vec<ClassJson<B>>,
    pub pi0_aut_br_orders: Vec<Pi0Json>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strong_equivalences: Option<Vec<(usize, usize, i8)>>,
}

impl From<&Classification> for ClassificationJson<BraidingJson> {
    fn from(c: &Classification) -> Self {
        ClassificationJson {
            data: c.data.as_ref().into(),
            classes: c
                .classes
                .iter()
                .map(|cl| ClassJson {
                    size: cl.size(),
                    invariants: (&cl.invariants).into(),
                    representative: (&c.braidings[cl.representative]).into(),
                })
                .collect(),
            pi0_aut_br_orders: c
                .classes
                .iter()
                .map(|cl| Pi0Json {
                    count: cl.pi0.count,
                    formula: cl.pi0.formula.map(|f| f as u64),
                })
                .collect(),
            obstruction: None,
            strong_equivalences: None,
        }
    }
}

impl From<&CrossedClassification> for ClassificationJson<CrossedBraidingJson> {
    fn from(c: &CrossedClassification) -> Self {
        ClassificationJson {
            data: c.data.as_ref().into(),
            classes: c
                .classes
                .iter()
                .map(|cl| {
                    let rep = &c.braidings[cl.representative];
                    let mut inv = ClassInvariants::of_crossed(rep);
                    inv.sgn_sigma = cl.sgn_sigma;
                    inv.epsilon = cl.epsilon;
                    if cl.epsilon.is_none() {
                        inv.sigma3_one = None;
                    }
                    ClassJson {
                        size: cl.size(),
                        invariants: (&inv).into(),
                        representative: rep.into(),
                    }
                })
                .collect(),
            pi0_aut_br_orders: c
                .classes
                .iter()
                .map(|cl| Pi0Json {
                    count: cl.pi0.count,
                    formula: cl.pi0.formula.map(|f| f as u64),
                })
                .collect(),
            obstruction: c.obstruction.clone(),
            strong_equivalences: Some(c.strong.clone()),
        }
    }
}
