//! Braidings on the non-crossed cases: construction from the reduced
//! system, exhaustive search against the unreduced equations, twists and
//! double-braiding invariants.

use std::sync::Arc;

use thiserror::Error;

use crate::data::{Case, Simple, TYData};
use crate::equations::{self, Coefficients, Ctx, Family, Partial, Violation, S0, S1, S2, S3};
use crate::f2::{wall_normalize, Element, F2Error};
use crate::qform::{enumerate_qforms, sign_of, Field, FormError, QForm};
use crate::scalar::{CycScalar, ScalarError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("invalid data: {0}")]
    InvalidData(String),
    #[error("modulus {have} too small, rerun with TYBRAID_MODULUS={need}")]
    ModulusTooSmall { have: u32, need: u32 },
    #[error("instance too large for {what}: |A| = {order}, limit {limit}")]
    Capacity {
        what: &'static str,
        order: usize,
        limit: usize,
    },
    #[error("case {0} is not handled by this solver")]
    WrongCase(Case),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    F2(#[from] F2Error),
}

/// Coefficient functions together with the data they braid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Braiding {
    pub data: Arc<TYData>,
    pub coeffs: Coefficients,
    /// `sigma1` as a quadratic form, when admissible.
    pub form: Option<QForm>,
    /// Position of `sigma3(1)` among the square roots of the radicand.
    pub epsilon: Option<i8>,
}

impl Braiding {
    /// Wraps raw coefficients, recovering the form and sign when possible.
    pub fn from_coefficients(data: Arc<TYData>, coeffs: Coefficients) -> Braiding {
        let exps: Option<Vec<u32>> = coeffs.sigma1.iter().map(|x| x.unit_exponent()).collect();
        let form = exps.and_then(|e| QForm::from_table(&data.chi, e, data.modulus).ok());
        let epsilon = form.as_ref().and_then(|q| {
            let r = radicand(&data, q).ok()?;
            let roots = r.sqrt_candidates().ok()?;
            roots
                .iter()
                .position(|x| *x == coeffs.sigma3[0])
                .map(|i| if i == 0 { 1 } else { -1 })
        });
        Braiding {
            data,
            coeffs,
            form,
            epsilon,
        }
    }

    pub fn sigma3_one(&self) -> &CycScalar {
        &self.coeffs.sigma3[0]
    }

    /// Identity for deduplication and lookup: value table of `sigma1` and `sigma3(1)`.
    pub fn key(&self) -> (Vec<Option<u32>>, CycScalar) {
        (
            self.coeffs
                .sigma1
                .iter()
                .map(|x| x.unit_exponent())
                .collect(),
            self.sigma3_one().clone(),
        )
    }

    /// Failing equation instances, including the structural constraints.
    pub fn check(&self) -> Vec<Violation> {
        check_hexagons(self)
    }

    /// Sign attached to the form for reporting, when it is defined.
    pub fn sgn_sigma(&self) -> Option<i8> {
        self.form
            .as_ref()
            .and_then(|q| form_sign(&self.data, q).ok().flatten())
    }

    pub fn sigma_w(&self) -> Option<i8> {
        let w = self.data.group.w?;
        self.coeffs.sigma1[w as usize].real_sign()
    }
}

pub fn check_hexagons(b: &Braiding) -> Vec<Violation> {
    let Ok(ctx) = Ctx::new(&b.data) else {
        return vec![];
    };
    let mut out = equations::structural_violations(&b.data, &b.coeffs);
    out.extend(equations::violations(&b.data, &ctx, &b.coeffs));
    out
}

/// Sum of the form over the elements whose degree matches `parity`.
fn coset_sum(data: &TYData, q: &QForm, parity: bool) -> CycScalar {
    q.gauss_sum_over(data.elements().filter(|&z| data.degree(z) == parity))
}

/// Number of `l` blocks in the normal form of a split complex bicharacter.
pub fn ell_blocks(data: &TYData) -> Result<usize, F2Error> {
    Ok(wall_normalize(&data.chi)?.l_blocks)
}

/// The reported sign of a form: over `A`, over `A0` in the graded cases and
/// over the hyperbolic part `c^perp` when there is one `l` block.
pub fn form_sign(data: &TYData, q: &QForm) -> Result<Option<i8>, SolveError> {
    match data.case {
        Case::RealComplexId | Case::RealComplexConj => {
            Ok(Some(sign_of(&coset_sum(data, q, false))?))
        }
        Case::SplitComplex => match ell_blocks(data)? {
            0 => Ok(Some(q.sign()?)),
            1 => {
                let c = data.chi.characteristic_vector()?;
                let perp = data.elements().filter(|&x| !data.chi.pair(x, c));
                Ok(Some(sign_of(&q.gauss_sum_over(perp))?))
            }
            _ => Ok(None),
        },
        _ => Ok(Some(q.sign()?)),
    }
}

/// `sigma3(1)^2` as dictated by the reduced system.
pub fn radicand(data: &TYData, q: &QForm) -> Result<CycScalar, ScalarError> {
    let m = data.modulus;
    let tau = data.tau()?;
    Ok(match data.case {
        Case::SplitReal | Case::SplitComplex | Case::ComplexComplex => &tau * &q.gauss_sum(),
        Case::RealQuaternionic => &(&tau * &q.gauss_sum()) * &CycScalar::from_int(m, -2),
        Case::RealComplexId | Case::RealComplexConj => {
            &(&tau * &coset_sum(data, q, data.g_conj())) * &CycScalar::from_int(m, 2)
        }
    })
}

/// Coefficients from the reduced system for a form and a value of `sigma3(1)`.
pub fn reduced_coefficients(data: &TYData, q: &QForm, s: &CycScalar) -> Coefficients {
    let values: Vec<CycScalar> = data.elements().map(|a| q.value(a)).collect();
    coefficients_from_values(data, &values, s)
}

/// As `reduced_coefficients`, from arbitrary `sigma1` values.
pub fn coefficients_from_values(
    data: &TYData,
    sigma1: &[CycScalar],
    s: &CycScalar,
) -> Coefficients {
    let order = data.order();
    let m = data.modulus;
    let mut c = Coefficients::filled(order, &CycScalar::one(m));
    for a in data.elements() {
        for b in data.elements() {
            c.sigma0[a as usize * order + b as usize] = data.chi_scalar(a, b);
        }
    }
    for a in data.elements() {
        let i = a as usize;
        let s1 = sigma1[i].clone();
        let (s2, s3) = match data.case {
            Case::RealComplexId | Case::RealComplexConj => {
                let twist = s * &s.conj_if(data.degree(a)).unit_inverse().expect("unit");
                (&s1 * &twist, s * &s1)
            }
            Case::ComplexComplex => (s1.clone(), s * &s1),
            _ => (s1.clone(), &(s * &s1) * &data.chi_scalar(a, a)),
        };
        c.sigma1[i] = s1;
        c.sigma2[i] = s2;
        c.sigma3[i] = s3;
    }
    c
}

fn solver_field(case: Case) -> Field {
    match case {
        Case::SplitComplex => Field::Complex,
        _ => Field::Real,
    }
}

/// All braidings, built from the reduced system.
pub fn solve_braidings(data: &TYData) -> Result<Vec<Braiding>, SolveError> {
    let v = data.validate();
    if !v.is_empty() {
        return Err(SolveError::InvalidData(
            v.iter()
                .map(|x| x.detail.clone())
                .collect::<Vec<_>>()
                .join("; "),
        ));
    }
    if data.case == Case::ComplexComplex {
        // Galois-nontrivial simples admit no braiding at all.
        return Ok(Vec::new());
    }
    let data = Arc::new(data.clone());
    let mut out = Vec::new();
    for q in enumerate_qforms(&data.chi, solver_field(data.case), data.modulus)? {
        let r = radicand(&data, &q)?;
        let roots = r.sqrt_candidates()?;
        if roots.is_empty() {
            return Err(SolveError::ModulusTooSmall {
                have: data.modulus,
                need: 2 * data.modulus,
            });
        }
        let sign_ok = match data.case {
            Case::SplitReal | Case::RealQuaternionic => roots[0].is_real(),
            Case::RealComplexConj => roots[0].is_real(),
            _ => true,
        };
        if !sign_ok {
            continue;
        }
        for (i, s) in roots.iter().enumerate() {
            let coeffs = reduced_coefficients(&data, &q, s);
            out.push(Braiding {
                data: data.clone(),
                coeffs,
                form: Some(q.clone()),
                epsilon: Some(if i == 0 { 1 } else { -1 }),
            });
        }
    }
    Ok(out)
}

/// Search strategy of the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    /// Every coefficient function enumerated; `|A| <= 2`.
    Full,
    /// `sigma1` and `sigma3(1)` enumerated, the rest derived; `|A| <= 16`.
    Staged,
}

pub const FULL_LIMIT: usize = 2;
pub const STAGED_LIMIT: usize = 16;

pub(crate) struct Search<'a> {
    pub data: &'a TYData,
    pub ctx: Ctx,
    pub fams: &'static [Family],
    pub m: u32,
}

impl<'a> Search<'a> {
    pub(crate) fn select(&self, newly: u8, assigned: u8) -> Vec<&'static Family> {
        self.fams
            .iter()
            .filter(|f| f.deps & newly != 0 && f.deps & !assigned == 0)
            .collect()
    }

    fn accept(&self, c: &Coefficients) -> bool {
        equations::structural_violations(self.data, c).is_empty()
            && equations::violations(self.data, &self.ctx, c).is_empty()
    }

    pub(crate) fn mu(&self, order: u32) -> Vec<CycScalar> {
        (0..order)
            .map(|k| CycScalar::root_of_unity(self.m, (k * (self.m / order)) as i64))
            .collect()
    }
}

/// Every tuple of unit coefficients in the oracle's domain passing all
/// equations, sorted by coefficient table.
pub fn brute_force_braidings(data: &TYData, stage: Stage) -> Result<Vec<Braiding>, SolveError> {
    let order = data.order();
    let limit = match stage {
        Stage::Full => FULL_LIMIT,
        Stage::Staged => STAGED_LIMIT,
    };
    if order > limit {
        return Err(SolveError::Capacity {
            what: "brute force",
            order,
            limit,
        });
    }
    if data.modulus < 16 {
        return Err(SolveError::ModulusTooSmall {
            have: data.modulus,
            need: 16,
        });
    }
    if data.case == Case::ComplexComplex {
        return Err(SolveError::WrongCase(data.case));
    }
    let s = Search {
        data,
        ctx: Ctx::new(data)?,
        fams: equations::families(data.case),
        m: data.modulus,
    };
    let mut found = match stage {
        Stage::Full => full_search(&s)?,
        Stage::Staged => staged_search(&s),
    };
    found.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
    found.dedup();
    let data = Arc::new(data.clone());
    Ok(found
        .into_iter()
        .map(|c| Braiding::from_coefficients(data.clone(), c))
        .collect())
}

pub(crate) fn assignments(
    values: &[CycScalar],
    slots: usize,
) -> impl Iterator<Item = Vec<CycScalar>> + '_ {
    let k = values.len();
    let total = k.pow(slots as u32);
    (0..total).map(move |mut i| {
        (0..slots)
            .map(|_| {
                let v = values[i % k].clone();
                i /= k;
                v
            })
            .collect()
    })
}

fn full_search(s: &Search<'_>) -> Result<Vec<Coefficients>, SolveError> {
    let order = s.data.order();
    let m = s.m;
    let signs = s.mu(2);
    let mu4 = s.mu(4);
    let mu16 = s.mu(16);
    let mut out = Vec::new();
    let mut c = Coefficients::filled(order, &CycScalar::one(m));
    let f0 = s.select(S0, S0);
    let f1 = s.select(S1, S0 | S1);
    let f2 = s.select(S2, S0 | S1 | S2);
    let f3 = s.select(S3, S0 | S1 | S2 | S3);
    for v0 in assignments(&signs, order * order) {
        c.sigma0 = v0;
        if !equations::holds(&s.ctx, &Partial::full(&c), &f0) {
            continue;
        }
        for v1 in assignments(&mu4, order) {
            c.sigma1 = v1;
            if !equations::holds(&s.ctx, &Partial::full(&c), &f1) {
                continue;
            }
            for v2 in assignments(&mu4, order) {
                c.sigma2 = v2;
                if !equations::holds(&s.ctx, &Partial::full(&c), &f2) {
                    continue;
                }
                for v3 in assignments(&mu16, order) {
                    c.sigma3 = v3;
                    if equations::holds(&s.ctx, &Partial::full(&c), &f3) && s.accept(&c) {
                        out.push(c.clone());
                    }
                }
            }
        }
    }
    Ok(out)
}

fn staged_search(s: &Search<'_>) -> Vec<Coefficients> {
    let data = s.data;
    let order = data.order();
    let m = s.m;
    let mut base = Coefficients::filled(order, &CycScalar::one(m));
    for a in data.elements() {
        for b in data.elements() {
            base.sigma0[a as usize * order + b as usize] = data.chi_scalar(a, b);
        }
    }
    let f1 = s.select(S1, S0 | S1);
    let mu4 = s.mu(4);
    let mut sigma1s = Vec::new();
    let mut known = vec![false; order];
    extend_sigma1(s, &f1, &mu4, &mut base, &mut known, 0, &mut sigma1s);
    let mut out = Vec::new();
    for s1 in sigma1s {
        base.sigma1 = s1;
        for s3 in s.mu(16) {
            let mut c = base.clone();
            for a in data.elements() {
                let i = a as usize;
                let v1 = &c.sigma1[i];
                let (v2, v3) = match data.case {
                    Case::RealComplexId | Case::RealComplexConj => {
                        let twist = &s3 * &s3.conj_if(data.degree(a)).unit_inverse().expect("unit");
                        (v1 * &twist, &s3 * v1)
                    }
                    _ => (v1.clone(), &(&s3 * v1) * &data.chi_scalar(a, a)),
                };
                c.sigma2[i] = v2;
                c.sigma3[i] = v3;
            }
            if s.accept(&c) {
                out.push(c);
            }
        }
    }
    out
}

pub(crate) fn extend_sigma1(
    s: &Search<'_>,
    fams: &[&Family],
    domain: &[CycScalar],
    c: &mut Coefficients,
    known: &mut Vec<bool>,
    next: usize,
    out: &mut Vec<Vec<CycScalar>>,
) {
    if next == c.order {
        out.push(c.sigma1.clone());
        return;
    }
    for v in domain {
        c.sigma1[next] = v.clone();
        known[next] = true;
        let ok = {
            let p = Partial {
                coeffs: c,
                known1: Some(&known[..]),
                undecided: Default::default(),
            };
            equations::holds(&s.ctx, &p, fams)
        };
        if ok {
            extend_sigma1(s, fams, domain, c, known, next + 1, out);
        }
        known[next] = false;
    }
}

/// A ribbon structure: `theta` on group elements and on `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Twist {
    pub theta: Vec<CycScalar>,
    pub theta_m: CycScalar,
    pub rho: i8,
}

/// The twists compatible with `b`: `theta_m = rho sigma3(1)^-1`,
/// `theta_a = sigma1(a)^2`, kept when all twist equations hold.
pub fn twists(b: &Braiding) -> Vec<Twist> {
    let c = &b.coeffs;
    let Ok(s_inv) = c.sigma3[0].unit_inverse() else {
        return Vec::new();
    };
    let theta: Vec<CycScalar> = c.sigma1.iter().map(|x| x * x).collect();
    let mut out = Vec::new();
    for rho in [1i8, -1] {
        let theta_m = if rho > 0 { s_inv.clone() } else { -&s_inv };
        let t = Twist {
            theta: theta.clone(),
            theta_m,
            rho,
        };
        if twist_equations_hold(b, &t) {
            out.push(t);
        }
    }
    out
}

pub fn twist_equations_hold(b: &Braiding, t: &Twist) -> bool {
    let c = &b.coeffs;
    let m2 = &t.theta_m * &t.theta_m;
    b.data.elements().all(|a| {
        let i = a as usize;
        let sq = &c.sigma1[i] * &c.sigma1[i];
        let s3sq = &c.sigma3[i] * &c.sigma3[i];
        t.theta[i] == sq
            && t.theta[i] == &m2 * &s3sq
            && b.data
                .elements()
                .all(|x| t.theta[(a ^ x) as usize] == &t.theta[i] * &t.theta[x as usize])
    })
}

/// Transparency data from the double braidings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleBraiding {
    pub transparent: Vec<Simple>,
    pub is_symmetric: bool,
    pub is_nondegenerate: bool,
}

/// Full-twist scalars: `sigma0(a,b) sigma0(b,a)` on pairs of group elements,
/// `sigma1(a) sigma2(a)` between `a` and `m`, and `sigma3(a)^2` on the
/// summand `a` of `m ⊗ m`.
pub fn double_braiding_invariants(b: &Braiding) -> DoubleBraiding {
    let c = &b.coeffs;
    let els: Vec<Element> = b.data.elements().collect();
    let am = |a: Element| (&c.sigma1[a as usize] * &c.sigma2[a as usize]).is_one();
    let mut transparent = Vec::new();
    for &a in &els {
        if els.iter().all(|&x| (c.s0(a, x) * c.s0(x, a)).is_one()) && am(a) {
            transparent.push(Simple::G(a));
        }
    }
    let m_transparent = els
        .iter()
        .all(|&a| am(a) && (&c.sigma3[a as usize] * &c.sigma3[a as usize]).is_one());
    if m_transparent {
        transparent.push(Simple::M);
    }
    let is_symmetric = transparent.len() == els.len() + 1;
    let is_nondegenerate = transparent == [Simple::G(0)];
    DoubleBraiding {
        transparent,
        is_symmetric,
        is_nondegenerate,
    }
}
