//! Tambara–Yamagami structure data and associator coefficients.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::f2::{canonical_w, Bicharacter, Element, GradedGroup, MAX_DIM};
use crate::scalar::{check_modulus, CycScalar, ScalarError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    SplitReal,
    RealQuaternionic,
    RealComplexId,
    RealComplexConj,
    SplitComplex,
    ComplexComplex,
}

impl Case {
    pub const ALL: [Case; 6] = [
        Case::SplitReal,
        Case::RealQuaternionic,
        Case::RealComplexId,
        Case::RealComplexConj,
        Case::SplitComplex,
        Case::ComplexComplex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Case::SplitReal => "SplitReal",
            Case::RealQuaternionic => "RealQuaternionic",
            Case::RealComplexId => "RealComplexId",
            Case::RealComplexConj => "RealComplexConj",
            Case::SplitComplex => "SplitComplex",
            Case::ComplexComplex => "ComplexComplex",
        }
    }

    pub fn is_real_complex(self) -> bool {
        matches!(self, Case::RealComplexId | Case::RealComplexConj)
    }

    /// Coefficients must be real in every equation of these cases.
    pub fn requires_real(self) -> bool {
        matches!(
            self,
            Case::SplitReal | Case::RealQuaternionic | Case::ComplexComplex
        )
    }

    /// `1/tau^2 = factor * |A|`.
    pub fn tau_factor(self) -> i64 {
        match self {
            Case::RealQuaternionic => 4,
            Case::RealComplexId | Case::RealComplexConj => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Case {
    type Err = DataError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Case::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| DataError::UnknownCase(s.to_string()))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DataError {
    #[error("unknown case {0}")]
    UnknownCase(String),
    #[error("tau sign must be +1 or -1, got {0}")]
    TauSign(i8),
    #[error("group dimension {0} does not match bicharacter dimension {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid associator component for {0}")]
    Component(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A simple object: a group element or `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Simple {
    G(Element),
    M,
}

/// Summand selector for associator components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    Whole,
    Summand(Element),
    Entry(Element, Element),
}

/// A failed structural hypothesis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataViolation {
    pub kind: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TYData {
    pub case: Case,
    pub group: GradedGroup,
    pub chi: Bicharacter,
    pub tau_sign: i8,
    pub modulus: u32,
    /// Exponent of the rescaling `lambda` used to set `chi(w,w) = 1`.
    pub gauge_lambda: Option<u32>,
}

impl TYData {
    /// Builds data, normalizing the graded cases: `w` is replaced by the
    /// canonical element and for `g = id` a self-pairing `chi(w,w) = -1` is
    /// rescaled away.
    pub fn new(
        case: Case,
        group: GradedGroup,
        chi: Bicharacter,
        tau_sign: i8,
        modulus: u32,
    ) -> Result<TYData, DataError> {
        check_modulus(modulus)?;
        if tau_sign != 1 && tau_sign != -1 {
            return Err(DataError::TauSign(tau_sign));
        }
        if group.dim != chi.dim() {
            return Err(DataError::DimensionMismatch(group.dim, chi.dim()));
        }
        let mut data = TYData {
            case,
            group,
            chi,
            tau_sign,
            modulus,
            gauge_lambda: None,
        };
        if case.is_real_complex() && data.group.is_graded() {
            if let Ok(w) = canonical_w(&data.group, &data.chi) {
                data.group.w = Some(w);
                if case == Case::RealComplexId && data.chi.pair(w, w) {
                    // chi'(x,y) = chi(x,y) * lambda^4 for x, y odd
                    let g = data.group.grading;
                    let rows = (0..data.chi.dim())
                        .map(|i| {
                            let r = data.chi.matrix().rows[i];
                            if g >> i & 1 == 1 {
                                r ^ g
                            } else {
                                r
                            }
                        })
                        .collect();
                    data.chi = Bicharacter::from_rows(data.chi.dim(), rows).expect("symmetric");
                    data.gauge_lambda = Some(modulus / 8);
                }
            }
        }
        Ok(data)
    }

    pub fn split_real(n: usize, tau_sign: i8, modulus: u32) -> Result<TYData, DataError> {
        Self::ungraded(
            Case::SplitReal,
            Bicharacter::standard_hyperbolic(n),
            tau_sign,
            modulus,
        )
    }

    pub fn real_quaternionic(n: usize, tau_sign: i8, modulus: u32) -> Result<TYData, DataError> {
        Self::ungraded(
            Case::RealQuaternionic,
            Bicharacter::standard_hyperbolic(n),
            tau_sign,
            modulus,
        )
    }

    pub fn complex_complex(n: usize, tau_sign: i8, modulus: u32) -> Result<TYData, DataError> {
        Self::ungraded(
            Case::ComplexComplex,
            Bicharacter::standard_hyperbolic(n),
            tau_sign,
            modulus,
        )
    }

    /// Split complex data with `chi = h^n ⊕ l^ell`.
    pub fn split_complex(
        n: usize,
        ell: usize,
        tau_sign: i8,
        modulus: u32,
    ) -> Result<TYData, DataError> {
        Self::ungraded(
            Case::SplitComplex,
            Bicharacter::normal_form(n, ell),
            tau_sign,
            modulus,
        )
    }

    /// Real/complex data on `K4^n × <w>`, `w` the top coordinate.
    pub fn real_complex(
        n: usize,
        conj: bool,
        tau_sign: i8,
        modulus: u32,
    ) -> Result<TYData, DataError> {
        let dim = 2 * n + 1;
        let chi = Bicharacter::standard_hyperbolic(n).direct_sum(&Bicharacter::zero(1));
        let group = GradedGroup {
            dim,
            grading: 1 << (2 * n),
            w: Some(1 << (2 * n)),
        };
        let case = if conj {
            Case::RealComplexConj
        } else {
            Case::RealComplexId
        };
        Self::new(case, group, chi, tau_sign, modulus)
    }

    pub fn ungraded(
        case: Case,
        chi: Bicharacter,
        tau_sign: i8,
        modulus: u32,
    ) -> Result<TYData, DataError> {
        Self::new(
            case,
            GradedGroup::ungraded(chi.dim()),
            chi,
            tau_sign,
            modulus,
        )
    }

    pub fn order(&self) -> usize {
        1 << self.group.dim
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.order() as u32
    }

    /// `true` when the coefficient at `x` is Galois-twisted.
    #[inline]
    pub fn degree(&self, x: Element) -> bool {
        self.group.degree(x)
    }

    /// `|g|`: whether the Galois action on `m` is conjugation.
    pub fn g_conj(&self) -> bool {
        self.case == Case::RealComplexConj
    }

    /// Positive `1/sqrt(factor * |A|)`.
    pub fn tau_magnitude(&self) -> Result<CycScalar, ScalarError> {
        let k = self.group.dim as i64 + self.case.tau_factor().trailing_zeros() as i64;
        CycScalar::sqrt2_pow(self.modulus, -k)
    }

    pub fn tau(&self) -> Result<CycScalar, ScalarError> {
        let t = self.tau_magnitude()?;
        Ok(if self.tau_sign < 0 { -t } else { t })
    }

    pub fn chi_scalar(&self, a: Element, b: Element) -> CycScalar {
        self.chi.scalar(a, b, self.modulus)
    }

    pub fn associator_scalar(
        &self,
        triple: [Simple; 3],
        component: Component,
    ) -> Result<CycScalar, DataError> {
        let one = CycScalar::one(self.modulus);
        let bad = || DataError::Component(format!("{triple:?} / {component:?}"));
        let check = |x: Element| -> Result<(), DataError> {
            if (x as usize) < self.order() {
                Ok(())
            } else {
                Err(bad())
            }
        };
        for s in triple {
            if let Simple::G(x) = s {
                check(x)?;
            }
        }
        use Simple::*;
        match (triple, component) {
            ([G(_), G(_), G(_)], Component::Whole)
            | ([G(_), G(_), M], Component::Whole)
            | ([M, G(_), G(_)], Component::Whole) => Ok(one),
            ([G(a), M, G(c)], Component::Whole) => Ok(self.chi_scalar(a, c)),
            ([G(_), M, M], Component::Summand(b)) | ([M, M, G(_)], Component::Summand(b)) => {
                check(b)?;
                Ok(one)
            }
            ([M, G(a), M], Component::Summand(b)) => {
                check(b)?;
                Ok(self.chi_scalar(a, b))
            }
            ([M, M, M], Component::Entry(a, b)) => {
                check(a)?;
                check(b)?;
                // chi is +-1 valued, so chi^-1 = chi
                Ok(self.tau()? * self.chi_scalar(a, b))
            }
            _ => Err(bad()),
        }
    }

    pub fn validate(&self) -> Vec<DataViolation> {
        let mut out = Vec::new();
        let mut push =
            |kind: &'static str, detail: String| out.push(DataViolation { kind, detail });
        if self.tau_sign != 1 && self.tau_sign != -1 {
            push("tau-sign", format!("tau sign {}", self.tau_sign));
        }
        if check_modulus(self.modulus).is_err() {
            push("modulus", format!("modulus {}", self.modulus));
        }
        if self.group.dim > MAX_DIM || self.group.dim != self.chi.dim() {
            push(
                "dimension",
                format!("group dim {} vs chi dim {}", self.group.dim, self.chi.dim()),
            );
            return out;
        }
        if self.chi.matrix().transpose() != *self.chi.matrix() {
            push("symmetry", "chi is not symmetric".into());
        }
        if self.case.is_real_complex() {
            if !self.group.is_graded() {
                push(
                    "grading",
                    "real/complex data needs a nontrivial grading".into(),
                );
                return out;
            }
            let even = self.group.even_basis();
            if !self.chi.restrict(&even).is_nondegenerate() {
                push("nondegeneracy", "chi restricted to A0 is degenerate".into());
                return out;
            }
            match self.group.w {
                None => push("w", "distinguished element not set".into()),
                Some(w) => {
                    if !self.group.degree(w) {
                        push("w", "w is even".into());
                    }
                    if even.iter().any(|&a| self.chi.pair(w, a)) {
                        push("w-orthogonality", "chi(w,-) is nontrivial on A0".into());
                    }
                    if self.chi.pair(w, w) {
                        push("self-pairing", "chi(w,w) = -1".into());
                    }
                }
            }
        } else {
            if self.group.is_graded() {
                push("grading", "ungraded case carries a grading".into());
            }
            if !self.chi.is_nondegenerate() {
                push("nondegeneracy", "chi is degenerate".into());
            }
        }
        let tau_exp = self.group.dim as u32 + self.case.tau_factor().trailing_zeros();
        if tau_exp % 2 == 1 && self.modulus < 8 {
            push(
                "modulus",
                "tau needs sqrt(2), modulus must be at least 8".into(),
            );
        }
        out
    }
}
