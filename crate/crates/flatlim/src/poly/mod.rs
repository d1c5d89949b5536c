//! Monomials, term orders, and polynomials in K[x,y,z,w].
//!
//! The public ring has the four variables x > y > z > w. Internally every
//! monomial carries a fifth exponent slot for the auxiliary elimination
//! variable `t` used by the ideal-calculus constructions; `t` never appears
//! in parsed input or printed output of the public API.

mod order;
mod parse;

pub use order::{TermOrder, WeightVector};
pub use parse::ParseError;

use std::cmp::Ordering;
use std::fmt;

use crate::scalar::{Field, Scalar};

/// Total number of exponent slots (four ring variables plus internal `t`).
pub(crate) const NVARS: usize = 5;
/// Index of the internal elimination variable.
pub(crate) const T_INDEX: usize = 4;

pub(crate) const VAR_NAMES: [&str; NVARS] = ["x", "y", "z", "w", "t"];

/// A ring variable of K[x,y,z,w].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
    W,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X, Var::Y, Var::Z, Var::W];

    pub(crate) fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::Z => 2,
            Var::W => 3,
        }
    }

    pub fn name(self) -> &'static str {
        VAR_NAMES[self.index()]
    }
}

/// A power product with cached total degree.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; NVARS],
    deg: u32,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial { exps: [0; NVARS], deg: 0 }
    }

    /// Monomial from exponents of x, y, z, w.
    pub fn new(exps: [u16; 4]) -> Monomial {
        Monomial::from_all([exps[0], exps[1], exps[2], exps[3], 0])
    }

    pub fn var(v: Var) -> Monomial {
        let mut exps = [0u16; NVARS];
        exps[v.index()] = 1;
        Monomial { exps, deg: 1 }
    }

    pub(crate) fn var_t() -> Monomial {
        let mut exps = [0u16; NVARS];
        exps[T_INDEX] = 1;
        Monomial { exps, deg: 1 }
    }

    pub(crate) fn from_all(exps: [u16; NVARS]) -> Monomial {
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg }
    }

    pub fn exponent(&self, v: Var) -> u16 {
        self.exps[v.index()]
    }

    pub(crate) fn exponent_at(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn total_degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; NVARS];
        for (i, e) in exps.iter_mut().enumerate() {
            *e = self.exps[i]
                .checked_add(other.exps[i])
                .expect("monomial exponent overflow");
        }
        Monomial { exps, deg: self.deg + other.deg }
    }

    /// Exact quotient if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = [0u16; NVARS];
        for (i, e) in exps.iter_mut().enumerate() {
            *e = self.exps[i].checked_sub(other.exps[i])?;
        }
        Some(Monomial { exps, deg: self.deg - other.deg })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        (0..NVARS).all(|i| self.exps[i] <= other.exps[i])
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; NVARS];
        for (i, e) in exps.iter_mut().enumerate() {
            *e = self.exps[i].max(other.exps[i]);
        }
        Monomial::from_all(exps)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..NVARS).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    pub(crate) fn has_t(&self) -> bool {
        self.exps[T_INDEX] > 0
    }

    /// Keeps the exponents selected by `mask` (bit i = slot i), zeroing the rest.
    pub(crate) fn project(&self, mask: u8) -> Monomial {
        let mut exps = [0u16; NVARS];
        for (i, e) in exps.iter_mut().enumerate() {
            if mask & (1 << i) != 0 {
                *e = self.exps[i];
            }
        }
        Monomial::from_all(exps)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (name, &e) in VAR_NAMES.iter().zip(&self.exps) {
            match e {
                0 => {}
                e => {
                    if !first {
                        write!(f, "*")?;
                    }
                    first = false;
                    if e == 1 {
                        write!(f, "{name}")?;
                    } else {
                        write!(f, "{name}^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All monomials of the given total degree in x, y, z, w, in descending
/// grevlex order. Used by the brute-force oracles and the span-based checks.
pub fn monomials_of_degree(deg: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let d = deg as i64;
    for ex in (0..=d).rev() {
        for ey in (0..=d - ex).rev() {
            for ez in (0..=d - ex - ey).rev() {
                let ew = d - ex - ey - ez;
                out.push(Monomial::new([ex as u16, ey as u16, ez as u16, ew as u16]));
            }
        }
    }
    out.sort_by(|a, b| TermOrder::Grevlex.cmp(b, a));
    out
}

/// A polynomial in canonical form: terms strictly descending under grevlex,
/// no zero coefficients, no duplicate monomials. Structural equality is
/// polynomial equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    terms: Vec<(Scalar, Monomial)>,
}

impl Polynomial {
    pub fn zero(field: Field) -> Polynomial {
        Polynomial { field, terms: Vec::new() }
    }

    pub fn one(field: Field) -> Polynomial {
        Polynomial::constant(Scalar::one(field))
    }

    pub fn constant(c: Scalar) -> Polynomial {
        Polynomial::from_terms(c.field(), vec![(c, Monomial::one())])
    }

    pub fn var(v: Var, field: Field) -> Polynomial {
        Polynomial::from_terms(field, vec![(Scalar::one(field), Monomial::var(v))])
    }

    pub(crate) fn var_t(field: Field) -> Polynomial {
        Polynomial::from_terms(field, vec![(Scalar::one(field), Monomial::var_t())])
    }

    pub fn term(c: Scalar, m: Monomial) -> Polynomial {
        Polynomial::from_terms(c.field(), vec![(c, m)])
    }

    /// Canonicalizes an arbitrary term list: merges duplicate monomials,
    /// drops zeros, sorts descending under grevlex.
    pub fn from_terms(field: Field, mut terms: Vec<(Scalar, Monomial)>) -> Polynomial {
        for (c, _) in &terms {
            assert_eq!(c.field(), field, "coefficient from a different field");
        }
        terms.sort_by(|a, b| TermOrder::Grevlex.cmp(&b.1, &a.1));
        let mut merged: Vec<(Scalar, Monomial)> = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            match merged.last_mut() {
                Some((lc, lm)) if *lm == m => *lc = &*lc + &c,
                _ => merged.push((c, m)),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        Polynomial { field, terms: merged }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Scalar, Monomial)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; zero polynomial reports 0.
    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(_, m)| m.total_degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((_, first)) => {
                let d = first.total_degree();
                self.terms.iter().all(|(_, m)| m.total_degree() == d)
            }
        }
    }

    /// True when only the variables in `vars` occur.
    pub fn uses_only(&self, vars: &[Var]) -> bool {
        let mut mask = [false; NVARS];
        for v in vars {
            mask[v.index()] = true;
        }
        self.terms
            .iter()
            .all(|(_, m)| (0..NVARS).all(|i| mask[i] || m.exponent_at(i) == 0))
    }

    pub(crate) fn has_t(&self) -> bool {
        self.terms.iter().any(|(_, m)| m.has_t())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.field, other.field, "polynomials from different fields");
        // Merge of two canonically sorted term lists.
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, am) = &self.terms[i];
            let (b, bm) = &other.terms[j];
            match TermOrder::Grevlex.cmp(am, bm) {
                Ordering::Greater => {
                    out.push((a.clone(), *am));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b.clone(), *bm));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a + b;
                    if !c.is_zero() {
                        out.push((c, *am));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().cloned());
        Polynomial { field: self.field, terms: out }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            field: self.field,
            terms: self.terms.iter().map(|(c, m)| (-c, *m)).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.field);
        }
        Polynomial {
            field: self.field,
            terms: self.terms.iter().map(|(a, m)| (a * c, *m)).collect(),
        }
    }

    /// Multiplies by a single term (order-preserving, no re-sort needed).
    pub fn mul_term(&self, c: &Scalar, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.field);
        }
        Polynomial {
            field: self.field,
            terms: self.terms.iter().map(|(a, am)| (a * c, am.mul(m))).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.field, other.field, "polynomials from different fields");
        let mut acc = Polynomial::zero(self.field);
        for (c, m) in &other.terms {
            acc = acc.add(&self.mul_term(c, m));
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Leading term under the given order.
    pub fn leading_term(&self, order: &TermOrder) -> Option<(&Scalar, &Monomial)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.1, &b.1))
            .map(|(c, m)| (c, m))
    }

    /// ω-degree of the polynomial: the maximum weight over its terms.
    pub fn weight_degree(&self, omega: &WeightVector) -> Option<u64> {
        self.terms.iter().map(|(_, m)| omega.weight(m)).max()
    }

    /// The sum of the terms of maximal ω-weight. Errors on the zero
    /// polynomial, whose initial form is undefined.
    pub fn initial_form(&self, omega: &WeightVector) -> Result<Polynomial, ZeroInitialForm> {
        let max = self.weight_degree(omega).ok_or(ZeroInitialForm)?;
        Ok(Polynomial {
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(_, m)| omega.weight(m) == max)
                .cloned()
                .collect(),
        })
    }

    /// True when every term has the same ω-weight.
    pub fn is_weight_homogeneous(&self, omega: &WeightVector) -> bool {
        match self.terms.first() {
            None => true,
            Some((_, m)) => {
                let w = omega.weight(m);
                self.terms.iter().all(|(_, m)| omega.weight(m) == w)
            }
        }
    }

    /// Substitutes scalar values for all four variables (t must not occur).
    pub fn eval(&self, values: &[Scalar; 4]) -> Scalar {
        let mut acc = Scalar::zero(self.field);
        for (c, m) in &self.terms {
            assert!(!m.has_t(), "eval on internal-variable polynomial");
            let mut term = c.clone();
            for (v, val) in Var::ALL.iter().zip(values) {
                term = &term * &val.pow(m.exponent(*v) as u32);
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Coefficient of the given monomial (zero if absent).
    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .iter()
            .find(|(_, tm)| tm == m)
            .map(|(c, _)| c.clone())
            .unwrap_or_else(|| Scalar::zero(self.field))
    }
}

/// Error for `initial_form` on the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("initial form of the zero polynomial is undefined")]
pub struct ZeroInitialForm;

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, Field::Q).unwrap()
    }

    #[test]
    fn product_of_conjugates() {
        assert_eq!(p("x+y").mul(&p("x-y")), p("x^2 - y^2"));
    }

    #[test]
    fn additive_inverse_cancels() {
        let f = p("3*x^2*y - 7/2*z*w + 1");
        assert!(f.add(&f.neg()).is_zero());
    }

    #[test]
    fn line_form_product_with_zero_point() {
        // l*m for the a = 0 line forms x - a*z and y - a*(a*z + w).
        assert_eq!(p("x - 0*z").mul(&p("y - 0*(0*z + w)")), p("x*y"));
    }

    #[test]
    fn weight_degree_examples() {
        let w4 = WeightVector::new([4, 2, 1, 1]).unwrap();
        assert_eq!(w4.weight(&Monomial::new([1, 1, 1, 0])), 7);
        assert_eq!(w4.weight(&Monomial::one()), 0);
        // y^(d-1) * z^a has weight 2d - 2 + a under (d,2,1,1).
        for d in 3u16..=7 {
            for a in 0u16..=5 {
                let wd = WeightVector::new([d as u64, 2, 1, 1]).unwrap();
                let m = Monomial::new([0, d - 1, a, 0]);
                assert_eq!(wd.weight(&m), 2 * d as u64 - 2 + a as u64);
            }
        }
    }

    #[test]
    fn initial_form_examples() {
        let q = p("x*(x+w) - y*z");
        for d in 3u64..=6 {
            let w = WeightVector::new([d, 2, 1, 1]).unwrap();
            assert_eq!(q.initial_form(&w).unwrap(), p("x^2"));
        }
        let w4 = WeightVector::new([4, 2, 1, 1]).unwrap();
        // Product of the m_i forms has initial form y^d.
        let m_prod = p("(y - 1*(1*z+w)) * (y - 2*(2*z+w)) * (y - 3*(3*z+w)) * y");
        assert_eq!(m_prod.initial_form(&w4).unwrap(), p("y^4"));
        // x - a*z has initial form x for d >= 2.
        assert_eq!(p("x - 5*z").initial_form(&w4).unwrap(), p("x"));
        assert!(Polynomial::zero(Field::Q).initial_form(&w4).is_err());
    }

    #[test]
    fn weight_homogeneous_fixed_by_initial_form() {
        let w4 = WeightVector::new([4, 2, 1, 1]).unwrap();
        let f = p("x*z^4 - y^3*z*w"); // weights 4+4 = 8 and 6+2 = 8
        assert!(f.is_weight_homogeneous(&w4));
        assert_eq!(f.initial_form(&w4).unwrap(), f);
    }

    #[test]
    fn monomials_of_degree_counts() {
        assert_eq!(monomials_of_degree(0).len(), 1);
        assert_eq!(monomials_of_degree(1).len(), 4);
        assert_eq!(monomials_of_degree(2).len(), 10);
        assert_eq!(monomials_of_degree(5).len(), 56);
        let deg2 = monomials_of_degree(2);
        for w in deg2.windows(2) {
            assert_eq!(TermOrder::Grevlex.cmp(&w[0], &w[1]), Ordering::Greater);
        }
    }

    pub(crate) fn arb_monomial(max_exp: u16) -> impl Strategy<Value = Monomial> {
        proptest::array::uniform4(0..=max_exp).prop_map(Monomial::new)
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(((-9i64..=9, 1i64..=4), arb_monomial(4)), 0..6).prop_map(
            |terms| {
                Polynomial::from_terms(
                    Field::Q,
                    terms
                        .into_iter()
                        .map(|((n, d), m)| (Scalar::rational(n, d), m))
                        .collect(),
                )
            },
        )
    }

    fn arb_weight() -> impl Strategy<Value = WeightVector> {
        proptest::array::uniform4(0u64..=6)
            .prop_filter("not all zero", |w| w.iter().any(|&x| x > 0))
            .prop_map(|w| WeightVector::new(w).unwrap())
    }

    proptest! {
        #[test]
        fn ring_axioms(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            prop_assert_eq!(f.add(&g), g.add(&f));
            prop_assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
            prop_assert_eq!(f.mul(&g), g.mul(&f));
            prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
            prop_assert!(f.sub(&f).is_zero());
        }

        #[test]
        fn initial_form_is_multiplicative(f in arb_poly(), g in arb_poly(), w in arb_weight()) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            let lhs = f.mul(&g).initial_form(&w).unwrap();
            let rhs = f.initial_form(&w).unwrap().mul(&g.initial_form(&w).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn initial_form_is_idempotent(f in arb_poly(), w in arb_weight()) {
            prop_assume!(!f.is_zero());
            let once = f.initial_form(&w).unwrap();
            prop_assert_eq!(once.initial_form(&w).unwrap(), once.clone());
            prop_assert!(once.is_weight_homogeneous(&w));
        }
    }
}
