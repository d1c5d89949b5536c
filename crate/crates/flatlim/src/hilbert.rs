//! Hilbert series, functions, and polynomials of homogeneous ideals in the
//! four-variable coordinate ring, plus a complete-intersection dimension
//! check for pairs of binary forms.
//!
//! The Hilbert function of R/I equals that of R modulo the leading-term
//! ideal of any Groebner basis of I, so everything reduces to monomial
//! ideals. The monomial-ideal numerator is computed by the pivot recursion
//! h(I) = t * h(I : v) + h(I + (v)) and cross-checked by inclusion and
//! exclusion on small generator sets.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::groebner::Ideal;
use crate::linalg::RowSpan;
use crate::poly::{Monomial, Polynomial, TermOrder, Var, NVARS};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HilbertError {
    #[error("hilbert data requires homogeneous generators")]
    NonHomogeneous,
    #[error("expected a nonzero homogeneous form in the last two variables")]
    NotBinaryForm,
    #[error("not a regular sequence: quotient has dimension {actual} in degree {degree}, complete intersection predicts {expected}")]
    NotRegularSequence { degree: u32, expected: u64, actual: u64 },
}

/// Numerator h(t) of the Hilbert series h(t)/(1-t)^4 of R/I. Coefficients
/// are indexed by degree; the zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertNumerator {
    coeffs: Vec<BigInt>,
}

impl HilbertNumerator {
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// dim_K (R/I)_n. Terms with k > n contribute nothing: the binomial
    /// counts monomials of degree n-k, which is zero for negative degree
    /// even where the polynomial extension of the binomial is not.
    pub fn hilbert_function(&self, n: u32) -> BigInt {
        let mut acc = BigInt::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if k as u32 > n {
                break;
            }
            acc += c * binomial((n - k as u32) as u64 + 3, 3);
        }
        acc
    }

    /// The Hilbert polynomial: write h(t) = (1-t)^e * k(t) with k(1) != 0;
    /// then HP(n) = sum_j k_j * binom(n + 3 - e - j, 3 - e).
    pub fn hilbert_polynomial(&self) -> HilbertPolynomial {
        let mut k = self.coeffs.clone();
        let mut e = 0usize;
        while !k.is_empty() && k.iter().sum::<BigInt>().is_zero() {
            k = divide_by_one_minus_t(&k);
            e += 1;
            assert!(e <= 4, "numerator divisible by (1-t)^5");
        }
        if k.is_empty() || e == 4 {
            return HilbertPolynomial { coeffs: Vec::new() };
        }
        let m = 4 - e;
        let mut coeffs = vec![BigRational::zero(); m];
        for (j, kj) in k.iter().enumerate() {
            // binom(n + m - 1 - j, m - 1) as a polynomial in n.
            let mut term = vec![BigRational::from_integer(kj.clone())];
            for i in 1..m {
                let shift = BigRational::from_integer(BigInt::from(i as i64 - j as i64));
                let mut next = vec![BigRational::zero(); term.len() + 1];
                for (p, c) in term.iter().enumerate() {
                    next[p + 1] += c;
                    next[p] += c * &shift;
                }
                term = next;
            }
            let fact: BigInt = (1..m as u64).map(BigInt::from).product::<BigInt>().max(BigInt::one());
            let inv_fact = BigRational::new(BigInt::one(), fact);
            for (p, c) in term.into_iter().enumerate() {
                coeffs[p] += c * &inv_fact;
            }
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        HilbertPolynomial { coeffs }
    }
}

impl fmt::Display for HilbertNumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (BigRational::from_integer(c.clone()), k, "t")),
        )
    }
}

/// The Hilbert polynomial in the variable n, coefficients ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPolynomial {
    coeffs: Vec<BigRational>,
}

/// Degree and arithmetic genus read off a linear Hilbert polynomial
/// HP(n) = degree * n + 1 - genus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveData {
    pub degree: BigInt,
    pub genus: BigInt,
}

impl HilbertPolynomial {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in n; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn eval(&self, n: i64) -> BigRational {
        let n = BigRational::from_integer(BigInt::from(n));
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &n + c;
        }
        acc
    }

    /// Integer value at n; Hilbert polynomials are integer-valued.
    pub fn eval_int(&self, n: i64) -> BigInt {
        let v = self.eval(n);
        assert!(v.is_integer(), "hilbert polynomial value must be integral");
        v.to_integer()
    }

    pub fn curve_data(&self) -> Option<CurveData> {
        if self.degree() != Some(1) {
            return None;
        }
        let d = &self.coeffs[1];
        let c0 = &self.coeffs[0];
        if !d.is_integer() || !c0.is_integer() {
            return None;
        }
        Some(CurveData {
            degree: d.to_integer(),
            genus: BigInt::one() - c0.to_integer(),
        })
    }
}

impl fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (c.clone(), k, "n")),
        )
    }
}

/// Shared "c*v^k" term formatter for series numerators and polynomials.
fn format_terms<I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (BigRational, usize, &'static str)>,
{
    let mut first = true;
    for (c, k, var) in terms {
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
        } else if c.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let unit = mag.is_one();
        if !unit || k == 0 {
            write!(f, "{mag}")?;
        }
        if k > 0 {
            if !unit {
                write!(f, "*")?;
            }
            write!(f, "{var}")?;
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

pub(crate) fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
    }
    let den: BigInt = (1..=k).map(BigInt::from).product::<BigInt>().max(BigInt::one());
    num / den
}

fn divide_by_one_minus_t(h: &[BigInt]) -> Vec<BigInt> {
    // h(t) = (1-t) q(t) gives q_i = sum of h_0..h_i; exact when h(1) = 0.
    let mut q = Vec::with_capacity(h.len().saturating_sub(1));
    let mut acc = BigInt::zero();
    for (i, c) in h.iter().enumerate() {
        acc += c;
        if i + 1 < h.len() {
            q.push(acc.clone());
        }
    }
    while q.last().is_some_and(|c| c.is_zero()) {
        q.pop();
    }
    q
}

fn mono_key(m: &Monomial) -> [u16; NVARS] {
    let mut k = [0u16; NVARS];
    for (i, e) in k.iter_mut().enumerate() {
        *e = m.exponent_at(i);
    }
    k
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| (m.total_degree(), mono_key(m)));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in gens {
        if !out.iter().any(|d| d.divides(&m)) {
            out.push(m);
        }
    }
    out
}

fn add_shifted(acc: &mut Vec<BigInt>, b: &[BigInt], shift: usize) {
    if acc.len() < b.len() + shift {
        acc.resize(b.len() + shift, BigInt::zero());
    }
    for (i, c) in b.iter().enumerate() {
        acc[i + shift] += c;
    }
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn numerator_rec(
    gens: Vec<Monomial>,
    memo: &mut HashMap<Vec<[u16; NVARS]>, Vec<BigInt>>,
) -> Vec<BigInt> {
    if gens.is_empty() {
        return vec![BigInt::one()];
    }
    if gens.iter().any(Monomial::is_one) {
        return Vec::new();
    }
    let pure_power = |m: &Monomial| (0..NVARS).filter(|&i| m.exponent_at(i) > 0).count() == 1;
    if gens.iter().all(pure_power) {
        // Monomial complete intersection: product of (1 - t^deg).
        let mut h = vec![BigInt::one()];
        for m in &gens {
            let d = m.total_degree() as usize;
            let mut next = vec![BigInt::zero(); h.len() + d];
            for (i, c) in h.iter().enumerate() {
                next[i] += c;
                next[i + d] -= c;
            }
            h = next;
        }
        return trim(h);
    }

    let key: Vec<[u16; NVARS]> = gens.iter().map(mono_key).collect();
    if let Some(h) = memo.get(&key) {
        return h.clone();
    }

    // Pivot: the most frequent variable among generators that are not pure
    // powers; ties break toward the earlier variable.
    let mut counts = [0usize; NVARS];
    for m in gens.iter().filter(|m| !pure_power(m)) {
        for (i, c) in counts.iter_mut().enumerate() {
            if m.exponent_at(i) > 0 {
                *c += 1;
            }
        }
    }
    let pivot = (0..NVARS).max_by_key(|&i| counts[i]).expect("nonempty");
    debug_assert!(counts[pivot] > 0);
    let v = Monomial::from_all({
        let mut e = [0u16; NVARS];
        e[pivot] = 1;
        e
    });

    let colon: Vec<Monomial> = gens
        .iter()
        .map(|m| m.div(&v).unwrap_or(*m))
        .collect();
    let plus: Vec<Monomial> = std::iter::once(v)
        .chain(gens.iter().filter(|m| m.exponent_at(pivot) == 0).copied())
        .collect();

    let mut h = Vec::new();
    add_shifted(&mut h, &numerator_rec(minimalize(colon), memo), 1);
    add_shifted(&mut h, &numerator_rec(minimalize(plus), memo), 0);
    let h = trim(h);
    memo.insert(key, h.clone());
    h
}

/// Inclusion-exclusion numerator: sum over generator subsets S of
/// (-1)^|S| t^(deg lcm S). Exponential in the generator count; used as an
/// independent cross-check on small inputs.
pub(crate) fn inclusion_exclusion_numerator(gens: &[Monomial]) -> HilbertNumerator {
    let mut h: Vec<BigInt> = Vec::new();
    for mask in 0u32..(1 << gens.len()) {
        let mut lcm = Monomial::one();
        for (i, m) in gens.iter().enumerate() {
            if mask & (1 << i) != 0 {
                lcm = lcm.lcm(m);
            }
        }
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        add_shifted(&mut h, &[BigInt::from(sign)], lcm.total_degree() as usize);
    }
    HilbertNumerator { coeffs: trim(h) }
}

/// Hilbert series numerator of R modulo the monomial ideal generated by
/// `gens` (which need not be minimal).
pub fn hilbert_series_monomial(gens: &[Monomial]) -> HilbertNumerator {
    assert!(
        gens.iter().all(|m| !m.has_t()),
        "monomial from the internal elimination ring"
    );
    let minimal = minimalize(gens.to_vec());
    let coeffs = numerator_rec(minimal.clone(), &mut HashMap::new());
    if cfg!(debug_assertions) && minimal.len() <= 6 {
        debug_assert_eq!(
            coeffs,
            inclusion_exclusion_numerator(&minimal).coeffs,
            "pivot recursion disagrees with inclusion-exclusion"
        );
    }
    HilbertNumerator { coeffs }
}

/// Hilbert series numerator of R/I for a homogeneous ideal, via the leading
/// monomials of its grevlex Groebner basis.
pub fn hilbert_numerator(ideal: &Ideal) -> Result<HilbertNumerator, HilbertError> {
    if !ideal.is_homogeneous() {
        return Err(HilbertError::NonHomogeneous);
    }
    let gb = ideal.groebner_basis(&TermOrder::Grevlex);
    Ok(hilbert_series_monomial(&gb.leading_monomials()))
}

/// dim_K (R/I)_n for a homogeneous ideal.
pub fn hilbert_function(ideal: &Ideal, n: u32) -> Result<BigInt, HilbertError> {
    Ok(hilbert_numerator(ideal)?.hilbert_function(n))
}

/// Hilbert polynomial of R/I for a homogeneous ideal.
pub fn hilbert_polynomial(ideal: &Ideal) -> Result<HilbertPolynomial, HilbertError> {
    Ok(hilbert_numerator(ideal)?.hilbert_polynomial())
}

/// Result of the complete-intersection dimension check: the graded
/// dimensions of K[z,w]/(f,g) through the socle degree, and their sum
/// deg(f) * deg(g).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CiCheck {
    pub dims: Vec<u64>,
    pub total: u64,
}

/// Verifies degree by degree, with exact linear algebra and no Groebner
/// input, that two binary forms in z, w cut out a complete intersection:
/// dim (K[z,w]/(f,g))_n must match the coefficients of
/// (1-t^deg f)(1-t^deg g)/(1-t)^2. Fails iff the forms share a factor.
pub fn ci_hilbert_check(f: &Polynomial, g: &Polynomial) -> Result<CiCheck, HilbertError> {
    for h in [f, g] {
        if h.is_zero() || !h.is_homogeneous() || !h.uses_only(&[Var::Z, Var::W]) {
            return Err(HilbertError::NotBinaryForm);
        }
    }
    let field = f.field();
    let df = f.total_degree() as usize;
    let dg = g.total_degree() as usize;
    // Predicted h-vector: (1 + t + .. + t^(df-1)) (1 + t + .. + t^(dg-1)).
    let mut predicted = vec![0u64; df + dg - 1];
    for i in 0..df {
        for j in 0..dg {
            predicted[i + j] += 1;
        }
    }
    let socle = df + dg - 2;

    for n in 0..=(socle + 1) as u32 {
        let width = n as usize + 1;
        let mut span = RowSpan::new(field, width);
        for (form, dform) in [(f, df), (g, dg)] {
            let Some(rem) = (n as usize).checked_sub(dform) else {
                continue;
            };
            for a in 0..=rem {
                let shift = Monomial::new([0, 0, (rem - a) as u16, a as u16]);
                let shifted = form.mul_term(&crate::scalar::Scalar::one(field), &shift);
                let row: Vec<_> = (0..width)
                    .map(|b| {
                        shifted.coefficient(&Monomial::new([
                            0,
                            0,
                            (n as usize - b) as u16,
                            b as u16,
                        ]))
                    })
                    .collect();
                span.insert(row);
            }
        }
        let actual = (width - span.rank()) as u64;
        let expected = predicted.get(n as usize).copied().unwrap_or(0);
        if actual != expected {
            return Err(HilbertError::NotRegularSequence { degree: n, expected, actual });
        }
    }
    Ok(CiCheck { dims: predicted.clone(), total: predicted.iter().sum() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::monomials_of_degree;
    use crate::scalar::Field;
    use proptest::prelude::*;

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, Field::Q).unwrap()
    }

    fn ideal(gens: &[&str]) -> Ideal {
        Ideal::new(Field::Q, gens.iter().map(|s| p(s)).collect())
    }

    fn mono(exps: [u16; 4]) -> Monomial {
        Monomial::new(exps)
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn numerator_examples() {
        assert_eq!(hilbert_series_monomial(&[]).coeffs(), &[big(1)]);
        assert_eq!(
            hilbert_series_monomial(&[mono([1, 0, 0, 0])]).coeffs(),
            &[big(1), big(-1)]
        );
        // <x^2, x*y, y^2>: 1 - 3t^2 + 2t^3.
        let h = hilbert_series_monomial(&[mono([2, 0, 0, 0]), mono([1, 1, 0, 0]), mono([0, 2, 0, 0])]);
        assert_eq!(h.coeffs(), &[big(1), big(0), big(-3), big(2)]);
        assert_eq!(h.to_string(), "2*t^3 - 3*t^2 + 1");
        assert_eq!(h.hilbert_function(2), big(7));
        assert_eq!(h.hilbert_function(3), big(10));
    }

    #[test]
    fn redundant_generators_are_harmless() {
        let a = hilbert_series_monomial(&[mono([1, 0, 0, 0]), mono([2, 1, 0, 0])]);
        let b = hilbert_series_monomial(&[mono([1, 0, 0, 0])]);
        assert_eq!(a, b);
    }

    #[test]
    fn hilbert_function_clamps_low_degrees() {
        // R/<x,y,z,w> has numerator (1-t)^4; without clamping, the k=4 term
        // binom(n-1, 3) evaluates to -1 at n=0 and poisons the count.
        let vars: Vec<Monomial> = (0..4).map(|i| {
            let mut e = [0u16; 4];
            e[i] = 1;
            mono(e)
        }).collect();
        let h = hilbert_series_monomial(&vars);
        assert_eq!(h.coeffs(), &[big(1), big(-4), big(6), big(-4), big(1)]);
        assert_eq!(h.hilbert_function(0), big(1));
        for n in 1..6 {
            assert_eq!(h.hilbert_function(n), big(0));
        }
    }

    #[test]
    fn full_ring_and_unit_ideal() {
        let full = hilbert_series_monomial(&[]);
        assert_eq!(full.hilbert_function(5), big(56));
        let hp = full.hilbert_polynomial();
        assert_eq!(hp.degree(), Some(3));
        assert_eq!(hp.eval_int(10), big(286));
        assert_eq!(hp.to_string(), "1/6*n^3 + n^2 + 11/6*n + 1");

        let unit = hilbert_series_monomial(&[Monomial::one()]);
        assert_eq!(unit.coeffs(), &[] as &[BigInt]);
        assert_eq!(unit.hilbert_function(3), big(0));
        assert!(unit.hilbert_polynomial().is_zero());
    }

    #[test]
    fn line_and_point_polynomials() {
        let line = hilbert_polynomial(&ideal(&["x", "y"])).unwrap();
        assert_eq!(line.to_string(), "n + 1");
        let cd = line.curve_data().unwrap();
        assert_eq!(cd.degree, big(1));
        assert_eq!(cd.genus, big(0));

        let point = hilbert_polynomial(&ideal(&["x", "y", "z"])).unwrap();
        assert_eq!(point.degree(), Some(0));
        assert_eq!(point.eval_int(100), big(1));
        assert!(point.curve_data().is_none());
    }

    #[test]
    fn skew_lines_give_two_n_plus_two() {
        let i = crate::groebner::intersect(&ideal(&["x", "y"]), &ideal(&["z", "w"]));
        let hp = hilbert_polynomial(&i).unwrap();
        assert_eq!(hp.to_string(), "2*n + 2");
        let cd = hp.curve_data().unwrap();
        assert_eq!(cd.degree, big(2));
        assert_eq!(cd.genus, big(-1));
        // Eventual agreement of function and polynomial.
        let h = hilbert_numerator(&i).unwrap();
        for n in 4..10 {
            assert_eq!(h.hilbert_function(n), hp.eval_int(n as i64));
        }
        // In low degrees the function may exceed the polynomial.
        assert_eq!(h.hilbert_function(0), big(1));
    }

    #[test]
    fn extremal_style_ideal_polynomial() {
        // Degree 3, with F = z^2, G = z^3 - w^3.
        let i = ideal(&["x^2", "x*y", "y^3", "x*(z^3 - w^3) - y^2*z^2"]);
        let hp = hilbert_polynomial(&i).unwrap();
        assert_eq!(hp.to_string(), "3*n + 3");
        let cd = hp.curve_data().unwrap();
        assert_eq!(cd.degree, big(3));
        assert_eq!(cd.genus, big(-2));
    }

    #[test]
    fn non_homogeneous_input_is_rejected() {
        assert_eq!(
            hilbert_numerator(&ideal(&["x^2 + y"])).unwrap_err(),
            HilbertError::NonHomogeneous
        );
    }

    #[test]
    fn ci_check_examples() {
        let ok = ci_hilbert_check(&p("z^2"), &p("z^3 - w^3")).unwrap();
        assert_eq!(ok.dims, vec![1, 2, 2, 1]);
        assert_eq!(ok.total, 6);

        let err = ci_hilbert_check(&p("z^2"), &p("z^3")).unwrap_err();
        assert_eq!(
            err,
            HilbertError::NotRegularSequence { degree: 3, expected: 1, actual: 2 }
        );

        assert_eq!(
            ci_hilbert_check(&p("z + x"), &p("w")).unwrap_err(),
            HilbertError::NotBinaryForm
        );
        assert_eq!(
            ci_hilbert_check(&p("z + w^2"), &p("w")).unwrap_err(),
            HilbertError::NotBinaryForm
        );
    }

    #[test]
    fn ci_check_prime_field() {
        let f = Polynomial::parse("z^2 + w^2", Field::Fp(7)).unwrap();
        let g = Polynomial::parse("z^3 + 2*w^3", Field::Fp(7)).unwrap();
        let ok = ci_hilbert_check(&f, &g).unwrap();
        assert_eq!(ok.total, 6);
    }

    fn brute_hilbert_function(gens: &[Monomial], n: u32) -> BigInt {
        let count = monomials_of_degree(n)
            .into_iter()
            .filter(|m| !gens.iter().any(|g| g.divides(m)))
            .count();
        BigInt::from(count)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn numerator_matches_brute_force_counts(
            gens in proptest::collection::vec(
                proptest::array::uniform4(0u16..=3).prop_map(Monomial::new),
                1..5,
            )
        ) {
            let h = hilbert_series_monomial(&gens);
            for n in 0..8u32 {
                prop_assert_eq!(h.hilbert_function(n), brute_hilbert_function(&gens, n));
            }
        }

        #[test]
        fn polynomial_agrees_with_function_eventually(
            gens in proptest::collection::vec(
                proptest::array::uniform4(0u16..=2).prop_map(Monomial::new),
                1..5,
            )
        ) {
            let h = hilbert_series_monomial(&gens);
            let hp = h.hilbert_polynomial();
            let start = h.coeffs().len() as u32;
            for n in start..start + 5 {
                prop_assert_eq!(h.hilbert_function(n), hp.eval_int(n as i64));
            }
        }
    }
}
