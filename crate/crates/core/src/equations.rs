//! Unreduced hexagon and heptagon equations, evaluated exactly.
//!
//! Each family is a pair of sides evaluated at a tuple of group elements.
//! Families are tagged with the coefficient functions they read so that the
//! brute-force search can check them as soon as those functions are fixed.

use std::cell::Cell;

use crate::data::{Case, TYData};
use crate::f2::Element;
use crate::scalar::{CycScalar, ScalarError};

pub const S0: u8 = 1;
pub const S1: u8 = 2;
pub const S2: u8 = 4;
pub const S3: u8 = 8;
/// Crossed structure: `kappa` and `gamma`.
pub const SK: u8 = 16;

/// Coefficient functions of a (possibly crossed) braiding.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coefficients {
    pub order: usize,
    /// Row-major `sigma0(a,b)` at `a * order + b`.
    pub sigma0: Vec<CycScalar>,
    pub sigma1: Vec<CycScalar>,
    pub sigma2: Vec<CycScalar>,
    pub sigma3: Vec<CycScalar>,
    pub kappa: CycScalar,
    pub gamma_a: Vec<CycScalar>,
    pub gamma_m: CycScalar,
}

impl Coefficients {
    pub fn filled(order: usize, value: &CycScalar) -> Self {
        Coefficients {
            order,
            sigma0: vec![value.clone(); order * order],
            sigma1: vec![value.clone(); order],
            sigma2: vec![value.clone(); order],
            sigma3: vec![value.clone(); order],
            kappa: CycScalar::one(value.modulus()),
            gamma_a: vec![CycScalar::one(value.modulus()); order],
            gamma_m: CycScalar::one(value.modulus()),
        }
    }

    #[inline]
    pub fn s0(&self, a: Element, b: Element) -> &CycScalar {
        &self.sigma0[a as usize * self.order + b as usize]
    }
}

/// Coefficients with some `sigma1` entries still unknown; reading one of
/// them marks the current evaluation as undecided.
pub(crate) struct Partial<'a> {
    pub coeffs: &'a Coefficients,
    pub known1: Option<&'a [bool]>,
    pub undecided: Cell<bool>,
}

impl<'a> Partial<'a> {
    pub fn full(coeffs: &'a Coefficients) -> Self {
        Partial {
            coeffs,
            known1: None,
            undecided: Cell::new(false),
        }
    }

    #[inline]
    fn s0(&self, a: Element, b: Element) -> &CycScalar {
        self.coeffs.s0(a, b)
    }

    #[inline]
    fn s1(&self, a: Element) -> &CycScalar {
        if let Some(k) = self.known1 {
            if !k[a as usize] {
                self.undecided.set(true);
            }
        }
        &self.coeffs.sigma1[a as usize]
    }

    #[inline]
    fn s2(&self, a: Element) -> &CycScalar {
        &self.coeffs.sigma2[a as usize]
    }

    #[inline]
    fn s3(&self, a: Element) -> &CycScalar {
        &self.coeffs.sigma3[a as usize]
    }
}

/// Evaluation context derived from structure data.
pub struct Ctx {
    pub order: usize,
    pub modulus: u32,
    chi: Vec<CycScalar>,
    deg: Vec<bool>,
    g: bool,
    tau: CycScalar,
    /// `k tau^2` for split sums, `2 tau` for coset sums.
    sum_scale: CycScalar,
    one: CycScalar,
}

impl Ctx {
    pub fn new(data: &TYData) -> Result<Ctx, ScalarError> {
        let order = data.order();
        let m = data.modulus;
        let mut chi = Vec::with_capacity(order * order);
        for a in data.elements() {
            for b in data.elements() {
                chi.push(data.chi_scalar(a, b));
            }
        }
        let tau = data.tau()?;
        let tau2 = &tau * &tau;
        let sum_scale = match data.case {
            Case::RealQuaternionic => &tau2 * &CycScalar::from_int(m, -2),
            Case::RealComplexId | Case::RealComplexConj => &tau * &CycScalar::from_int(m, 2),
            _ => tau2.clone(),
        };
        Ok(Ctx {
            order,
            modulus: m,
            chi,
            deg: data.elements().map(|x| data.degree(x)).collect(),
            g: data.g_conj(),
            tau,
            sum_scale,
            one: CycScalar::one(m),
        })
    }

    #[inline]
    fn chi(&self, a: Element, b: Element) -> &CycScalar {
        &self.chi[a as usize * self.order + b as usize]
    }

    /// `chi^-1`; chi is `+-1` valued.
    #[inline]
    fn chi_inv(&self, a: Element, b: Element) -> &CycScalar {
        self.chi(a, b)
    }

    #[inline]
    fn d(&self, x: Element) -> bool {
        self.deg[x as usize]
    }
}

pub type Sides = (CycScalar, CycScalar);
type EvalFn = fn(&Ctx, &Partial<'_>, &[Element]) -> Sides;

pub struct Family {
    pub id: &'static str,
    pub arity: usize,
    pub deps: u8,
    eval: EvalFn,
}

impl Family {
    pub(crate) fn eval(&self, ctx: &Ctx, p: &Partial<'_>, t: &[Element]) -> Sides {
        (self.eval)(ctx, p, t)
    }
}

fn inv(x: &CycScalar) -> CycScalar {
    x.unit_inverse()
        .unwrap_or_else(|_| CycScalar::zero(x.modulus()))
}

macro_rules! fam {
    ($id:expr, $ar:expr, $deps:expr, $f:expr) => {
        Family {
            id: $id,
            arity: $ar,
            deps: $deps,
            eval: $f,
        }
    };
}

// Split real, split complex and real/quaternionic.

fn h8(c: &Ctx, s: &Partial<'_>, t: &[Element]) -> Sides {
    let (a, b) = (t[0], t[1]);
    let lhs = &(s.s3(a) * &c.tau) * &(c.chi_inv(a, b) * s.s3(b));
    let mut sum = CycScalar::zero(c.modulus);
    for x in 0..c.order as Element {
        sum = &sum + &(&(c.chi_inv(a, x) * s.s2(x)) * c.chi_inv(x, b));
    }
    (lhs, &c.sum_scale * &sum)
}

fn h16(c: &Ctx, s: &Partial<'_>, t: &[Element]) -> Sides {
    let (a, b) = (t[0], t[1]);
    let lhs = &(s.s3(a) * &c.tau) * &(c.chi(a, b) * s.s3(b));
    let mut sum = CycScalar::zero(c.modulus);
    for x in 0..c.order as Element {
        sum = &sum + &(&(c.chi(a, x) * s.s1(x)) * c.chi(x, b));
    }
    (lhs, &c.sum_scale * &sum)
}

pub static SPLIT: [Family; 16] = [
    fam!("H1", 3, S0, |_, s, t| {
        let (a, b, c) = (t[0], t[1], t[2]);
        (s.s0(c, a ^ b).clone(), s.s0(c, a) * s.s0(c, b))
    }),
    fam!("H2", 2, S2, |c, s, t| {
        let (a, b) = (t[0], t[1]);
        (s.s2(a ^ b).clone(), &(s.s2(a) * c.chi(a, b)) * s.s2(b))
    }),
    fam!("H3", 2, S0 | S1, |c, s, t| {
        let (a, b) = (t[0], t[1]);
        (s.s0(b, a) * s.s1(b), s.s1(b) * c.chi(a, b))
    }),
    fam!("H4", 2, S0 | S1, |c, s, t| {
        let (a, b) = (t[0], t[1]);
        (s.s1(b) * s.s0(b, a), c.chi(b, a) * s.s1(b))
    }),
    fam!("H5", 2, S2 | S3, |c, s, t| {
        let (a, b) = (t[0], t[1]);
        (c.chi(a, b) * s.s3(b), s.s2(a) * s.s3(a ^ b))
    }),
    fam!("H6", 2, S2 | S3, |c, s, t| {
        let (a, b) = (t[0], t[1]);
        (s.s3(b) * c.chi(a, b), s.s3(b ^ a) * s.s2(a))
    }),
    fam!("H7", 2, S0 | S1, |c, s, t| {
        let (a, b) = (t[0], t[1]);
        (s.s0(a, b ^ a).clone(), &(s.s1(a) * c.chi(a, b)) * s.s1(a))
    }),
    fam!("H8", 2, S2 | S3, h8),
    fam!("H9", 3, S0, |_, s, t| {
        let (a, b, c) = (t[0], t[1], t[2]);
        (s.s0(c, a) * s.s0(b, a), s.s0(b ^ c, a).clone())
    }),
    fam!("H10", 2, S0 | S2, |c, s, t| {
        let (a, b) = (t[0], t[1]);
        (c.chi_inv(b, a) * s.s2(a), s.s2(a) * s.s0(b, a))
    }),
    fam!("H11", 2, S0 | S2, |c, s, t| {
        let (a, b) = (t[0], t[1]);
        (s.s0(b, a) * s.s2(a), s.s2(a) * c.chi_inv(a, b))
    }),
    fam!("H12", 2, S1, |c, s, t| {
        let (a, b) = (t[0], t[1]);
        (&(s.s1(b) * c.chi_inv(a, b)) * s.s1(a), s.s1(a ^ b).clone())
    }),
    fam!("H13", 2, S0 | S2, |c, s, t| {
        let (a, b) = (t[0], t[1]);
        (
            s.s0(a ^ b, a).clone(),
            &(s.s2(a) * c.chi_inv(a, b)) * s.s2(a),
        )
    }),
    fam!("H14", 2, S1 | S3, |c, s, t| {
        let (a, b) = (t[0], t[1]);
        (s.s3(a ^ b) * s.s1(a), s.s3(b) * c.chi_inv(a, b))
    }),
    fam!("H15", 2, S1 | S3, |c, s, t| {
        let (a, b) = (t[0], t[1]);
        (s.s1(a) * s.s3(b ^ a), c.chi_inv(a, b) * s.s3(b))
    }),
    fam!("H16", 2, S1 | S3, h16),
];

// Real/complex. `x^y` conjugates iff |y| = 1.

fn rc_h8(c: &Ctx, s: &Partial<'_>, t: &[Element]) -> Sides {
    let (x, y) = (t[0], t[1]);
    let lhs = &(c.chi_inv(x, y).conj_if(c.g) * &s.s3(x).conj_if(c.d(y))) * &s.s3(y).conj_if(c.d(x));
    let coset = c.g ^ c.d(x) ^ c.d(y);
    let mut sum = CycScalar::zero(c.modulus);
    for z in (0..c.order as Element).filter(|&z| c.d(z) == coset) {
        let term = &(c.chi_inv(x, z).conj_if(c.g) * c.chi_inv(z, y).conj_if(c.g))
            * &s.s2(z).conj_if(c.d(z));
        sum = &sum + &term;
    }
    (lhs, &c.sum_scale * &sum)
}

fn rc_h16(c: &Ctx, s: &Partial<'_>, t: &[Element]) -> Sides {
    let (x, y) = (t[0], t[1]);
    let lhs = &(s.s3(x) * s.s3(y)) * &c.chi(x, y).conj_if(c.d(x) ^ c.d(y));
    let coset = c.g ^ c.d(x) ^ c.d(y);
    let mut sum = CycScalar::zero(c.modulus);
    for z in (0..c.order as Element).filter(|&z| c.d(z) == coset) {
        let gz = c.g ^ c.d(z);
        let term = &(c.chi(x, z).conj_if(gz) * c.chi(z, y).conj_if(gz)) * s.s1(z);
        sum = &sum + &term;
    }
    (lhs, &c.sum_scale * &sum)
}

pub static REAL_COMPLEX: [Family; 16] = [
    fam!("RC-H1", 3, S0, |_, s, t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        (s.s0(x, y) * s.s0(x, z), s.s0(x, y ^ z).clone())
    }),
    fam!("RC-H2", 2, S0 | S1, |c, s, t| {
        let (x, y) = (t[0], t[1]);
        (s.s1(x) * s.s0(x, y), c.chi(y, x) * &s.s1(x).conj_if(c.d(y)))
    }),
    fam!("RC-H3", 2, S0 | S1, |c, s, t| {
        let (x, y) = (t[0], t[1]);
        (s.s0(x, y) * s.s1(x), &s.s1(x).conj_if(c.d(y)) * c.chi(x, y))
    }),
    fam!("RC-H4", 2, S2, |c, s, t| {
        let (x, y) = (t[0], t[1]);
        (&(s.s2(y) * c.chi(x, y)) * s.s2(x), s.s2(x ^ y).clone())
    }),
    fam!("RC-H5", 2, S0 | S1, |c, s, t| {
        let (x, y) = (t[0], t[1]);
        let gxy = c.g ^ c.d(x) ^ c.d(y);
        let lhs = &(c.chi(x, y).conj_if(c.d(y)) * s.s1(x).conj_if(gxy)) * s.s1(x);
        (lhs, s.s0(x, x ^ y).clone())
    }),
    fam!("RC-H6", 2, S2 | S3, |c, s, t| {
        let (x, y) = (t[0], t[1]);
        let gxy = c.g ^ c.d(x) ^ c.d(y);
        (
            &s.s2(x).conj_if(gxy) * s.s3(x ^ y),
            s.s3(y).conj_if(c.d(x)) * c.chi(x, y).conj_if(c.d(y)),
        )
    }),
    fam!("RC-H7", 2, S2 | S3, |c, s, t| {
        let (x, y) = (t[0], t[1]);
        let gxy = c.g ^ c.d(x) ^ c.d(y);
        (
            s.s3(x ^ y) * &s.s2(x).conj_if(gxy),
            s.s3(y).conj_if(c.d(x)) * c.chi(x, y).conj_if(c.g ^ c.d(x)),
        )
    }),
    fam!("RC-H8", 2, S2 | S3, rc_h8),
    fam!("RC-H9", 3, S0, |_, s, t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        (s.s0(x ^ y, z).clone(), s.s0(x, z) * s.s0(y, z))
    }),
    fam!("RC-H10", 2, S1, |c, s, t| {
        let (x, y) = (t[0], t[1]);
        (s.s1(x ^ y).clone(), &(s.s1(x) * s.s1(y)) * c.chi_inv(x, y))
    }),
    fam!("RC-H11", 2, S0 | S2, |c, s, t| {
        let (x, y) = (t[0], t[1]);
        (
            &s.s2(y).conj_if(c.d(x)) * c.chi_inv(x, y),
            s.s0(x, y) * s.s2(y),
        )
    }),
    fam!("RC-H12", 2, S0 | S2, |c, s, t| {
        let (x, y) = (t[0], t[1]);
        (
            &s.s2(y).conj_if(c.d(x)) * c.chi_inv(y, x),
            s.s2(y) * s.s0(x, y),
        )
    }),
    fam!("RC-H13", 2, S1 | S3, |c, s, t| {
        let (x, y) = (t[0], t[1]);
        (
            s.s3(y) * &c.chi_inv(x, y).conj_if(c.g ^ c.d(x)),
            s.s1(x) * s.s3(x ^ y),
        )
    }),
    fam!("RC-H14", 2, S1 | S3, |c, s, t| {
        let (x, y) = (t[0], t[1]);
        (
            s.s3(y) * &c.chi_inv(x, y).conj_if(c.d(y)),
            s.s1(x) * s.s3(x ^ y),
        )
    }),
    fam!("RC-H15", 2, S0 | S2, |c, s, t| {
        let (x, y) = (t[0], t[1]);
        let gxy = c.g ^ c.d(x) ^ c.d(y);
        let rhs = &(s.s2(x).conj_if(gxy) * c.chi_inv(x, y).conj_if(c.d(y))) * s.s2(x);
        (s.s0(x ^ y, x).clone(), rhs)
    }),
    fam!("RC-H16", 2, S1 | S3, rc_h16),
];

// Complex/complex crossed braidings.

fn cb_f8(c: &Ctx, s: &Partial<'_>, t: &[Element]) -> Sides {
    let (a, b) = (t[0], t[1]);
    let lhs = &(c.chi(a, b) * s.s3(a)) * s.s3(b);
    let mut sum = CycScalar::zero(c.modulus);
    for x in 0..c.order as Element {
        sum = &sum + &(&(c.chi(x, b) * c.chi(a, x)) * s.s2(x));
    }
    (lhs, &(&c.tau * &s.coeffs.kappa) * &sum)
}

fn cb_b8(c: &Ctx, s: &Partial<'_>, t: &[Element]) -> Sides {
    let (a, b) = (t[0], t[1]);
    let mut sum = CycScalar::zero(c.modulus);
    for x in 0..c.order as Element {
        sum = &sum + &(&(c.chi(a, x) * c.chi(x, b)) * s.s3(x));
    }
    let lhs = &(&(&c.tau * &s.coeffs.gamma_m) * s.s3(b)) * &(&sum * &inv(s.s1(a)));
    (lhs, c.chi(a, b).clone())
}

pub static CROSSED: [Family; 16] = [
    fam!("CB-F1", 3, S0, |_, s, t| {
        let (a, b, c) = (t[0], t[1], t[2]);
        (s.s0(a, b ^ c).clone(), s.s0(a, b) * s.s0(a, c))
    }),
    fam!("CB-F2", 2, S0 | S1, |c, s, t| {
        let (a, b) = (t[0], t[1]);
        (s.s0(a, b) * s.s1(a), c.chi(b, a) * s.s1(a))
    }),
    fam!("CB-F3", 2, S0 | S1, |c, s, t| {
        let (a, b) = (t[0], t[1]);
        (c.chi(a, b) * s.s1(a), s.s1(a) * s.s0(a, b))
    }),
    fam!("CB-F4", 2, S0 | S1, |c, s, t| {
        let (a, b) = (t[0], t[1]);
        (
            s.s0(a, a ^ b).clone(),
            &(c.chi_inv(b, a) * s.s1(a)) * s.s1(a),
        )
    }),
    fam!("CB-F5", 2, S2, |c, s, t| {
        let (a, b) = (t[0], t[1]);
        (s.s2(a ^ b).clone(), &(c.chi(a, b) * s.s2(a)) * s.s2(b))
    }),
    fam!("CB-F6", 2, S2 | S3, |c, s, t| {
        let (a, b) = (t[0], t[1]);
        (c.chi_inv(b, a) * s.s3(b), s.s2(a) * s.s3(a ^ b))
    }),
    fam!("CB-F7", 2, S2 | S3, |c, s, t| {
        let (a, b) = (t[0], t[1]);
        (c.chi_inv(b ^ a, a) * s.s3(a ^ b), s.s3(b) * s.s2(a))
    }),
    fam!("CB-F8", 2, S2 | S3 | SK, cb_f8),
    fam!("CB-B1", 3, S0, |c, s, t| {
        let (a, b, x) = (t[0], t[1], t[2]);
        (
            &(&inv(s.s0(b ^ x, a)) * s.s0(x, a)) * s.s0(b, a),
            c.one.clone(),
        )
    }),
    fam!("CB-B2", 2, S1, |c, s, t| {
        let (a, b) = (t[0], t[1]);
        let lhs = &(&(c.chi_inv(a, b) * &inv(s.s1(a ^ b))) * s.s1(b)) * s.s1(a);
        (lhs, c.one.clone())
    }),
    fam!("CB-B3", 2, S0 | S2, |c, s, t| {
        let (a, b) = (t[0], t[1]);
        let lhs = &(&(c.chi_inv(b, a) * &inv(s.s2(a))) * s.s2(a)) * s.s0(b, a);
        (lhs, c.one.clone())
    }),
    fam!("CB-B4", 2, S1 | S3, |c, s, t| {
        let (a, b) = (t[0], t[1]);
        (
            &(&inv(s.s3(b)) * s.s3(a ^ b)) * s.s1(a),
            c.chi(b, a).clone(),
        )
    }),
    fam!("CB-B5", 2, S0 | S2, |c, s, t| {
        let (a, b) = (t[0], t[1]);
        (
            &(s.s2(a) * s.s0(b, a)) * &inv(s.s2(a)),
            c.chi_inv(a, b).clone(),
        )
    }),
    fam!("CB-B6", 2, S1 | S3, |c, s, t| {
        let (a, b) = (t[0], t[1]);
        let lhs = &(&(c.chi_inv(a, b) * &inv(s.s3(a))) * s.s1(b)) * s.s3(a ^ b);
        (lhs, c.one.clone())
    }),
    fam!("CB-B7", 2, S0 | S2 | SK, |c, s, t| {
        let (a, b) = (t[0], t[1]);
        let lhs = &(&(&s.coeffs.gamma_a[a as usize] * &inv(s.s0(b, a))) * s.s2(a))
            * &(c.chi(b ^ a, a) * s.s2(a));
        (lhs, c.one.clone())
    }),
    fam!("CB-B8", 2, S1 | S3 | SK, cb_b8),
];

pub fn families(case: Case) -> &'static [Family] {
    match case {
        Case::RealComplexId | Case::RealComplexConj => &REAL_COMPLEX,
        Case::ComplexComplex => &CROSSED,
        _ => &SPLIT,
    }
}

/// Display id, with the quaternionic variants of the two sum equations.
pub fn display_id(case: Case, id: &'static str) -> &'static str {
    match (case, id) {
        (Case::RealQuaternionic, "H8") => "Q8P",
        (Case::RealQuaternionic, "H16") => "Q16P",
        _ => id,
    }
}

/// A failed equation instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub eq: String,
    pub at: Vec<Element>,
    pub lhs: CycScalar,
    pub rhs: CycScalar,
}

pub(crate) fn tuples(order: usize, arity: usize) -> impl Iterator<Item = [Element; 3]> {
    let total = order.pow(arity as u32);
    (0..total).map(move |mut i| {
        let mut t = [0; 3];
        for slot in t.iter_mut().take(arity) {
            *slot = (i % order) as Element;
            i /= order;
        }
        t
    })
}

/// Returns `true` when every instance of the selected families holds.
pub(crate) fn holds(ctx: &Ctx, p: &Partial<'_>, fams: &[&Family]) -> bool {
    for f in fams {
        for t in tuples(ctx.order, f.arity) {
            p.undecided.set(false);
            let (l, r) = f.eval(ctx, p, &t[..f.arity]);
            if !p.undecided.get() && l != r {
                return false;
            }
        }
    }
    true
}

/// All failing instances of the case's families.
pub fn violations(data: &TYData, ctx: &Ctx, coeffs: &Coefficients) -> Vec<Violation> {
    let p = Partial::full(coeffs);
    let mut out = Vec::new();
    for f in families(data.case) {
        for t in tuples(ctx.order, f.arity) {
            let (l, r) = f.eval(ctx, &p, &t[..f.arity]);
            if l != r {
                out.push(Violation {
                    eq: display_id(data.case, f.id).to_string(),
                    at: t[..f.arity].to_vec(),
                    lhs: l,
                    rhs: r,
                });
            }
        }
    }
    out
}

/// Structural constraints imported from the case lemmas: unit values and
/// reality where the endomorphism algebras force it.
pub fn structural_violations(data: &TYData, coeffs: &Coefficients) -> Vec<Violation> {
    let mut out = Vec::new();
    let m = data.modulus;
    let mut unit = |at: Vec<Element>, x: &CycScalar| {
        if x.unit_exponent().is_none() {
            out.push(Violation {
                eq: "UNIT".into(),
                at,
                lhs: x.clone(),
                rhs: CycScalar::one(m),
            });
        }
    };
    for a in data.elements() {
        for b in data.elements() {
            unit(vec![a, b], coeffs.s0(a, b));
        }
        unit(vec![a], &coeffs.sigma1[a as usize]);
        unit(vec![a], &coeffs.sigma2[a as usize]);
        unit(vec![a], &coeffs.sigma3[a as usize]);
    }
    let (r0, r1, r2, r3) = match data.case {
        Case::SplitReal | Case::RealQuaternionic | Case::ComplexComplex => (true, true, true, true),
        Case::RealComplexId => (true, true, true, false),
        Case::RealComplexConj => (true, true, true, true),
        Case::SplitComplex => (false, false, false, false),
    };
    let mut real = |on: bool, at: Vec<Element>, x: &CycScalar| {
        if on && !x.is_real() {
            out.push(Violation {
                eq: "REAL".into(),
                at,
                lhs: x.clone(),
                rhs: x.conjugate(),
            });
        }
    };
    for a in data.elements() {
        for b in data.elements() {
            real(r0, vec![a, b], coeffs.s0(a, b));
        }
        real(r1, vec![a], &coeffs.sigma1[a as usize]);
        real(r2, vec![a], &coeffs.sigma2[a as usize]);
        real(r3, vec![a], &coeffs.sigma3[a as usize]);
    }
    out
}
