//! Buchberger engine and ideal calculus: normal forms, reduced Groebner
//! bases, membership, elimination, intersection, colon, saturation, initial
//! ideals for weight vectors, and ideal equality.
//!
//! Pair selection uses the normal strategy (minimal lcm degree first) with
//! the product and chain criteria. Over Q, intermediate basis elements are
//! rescaled to integer, content-free form after every reduction; only the
//! final reduced basis is monic. All tie-breaks are fixed (input order, then
//! leading monomial), so outputs are deterministic.
//!
//! The elimination-based operations (intersection, colon, saturation) run in
//! an internal five-variable ring extending K[x,y,z,w] by one auxiliary
//! variable; the auxiliary variable never escapes into results.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex};

use crate::log::flog;
use crate::poly::{Monomial, Polynomial, TermOrder, Var, WeightVector};
use crate::scalar::{content_normalize, Field, Scalar};

/// Default bound on colon iterations inside [`saturate`].
pub const DEFAULT_STEP_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GroebnerError {
    #[error("colon by the zero polynomial")]
    ZeroColonDivisor,
    #[error("saturation cap exceeded: no stabilization within {cap} colon steps")]
    SaturationCapExceeded { cap: usize },
    #[error("exact division failed: divisor does not divide")]
    InexactDivision,
}

/// Terms sorted strictly descending under a working order.
type Terms = Vec<(Scalar, Monomial)>;

fn to_terms(f: &Polynomial, ord: &TermOrder) -> Terms {
    let mut t: Terms = f.terms().to_vec();
    t.sort_by(|a, b| ord.cmp(&b.1, &a.1));
    t
}

/// `f` scaled by the term c*x^m; descending order is preserved because
/// monomial orders are multiplicative.
fn mul_term(f: &Terms, c: &Scalar, m: &Monomial) -> Terms {
    f.iter().map(|(fc, fm)| (fc * c, fm.mul(m))).collect()
}

/// a - c * x^m * b, both inputs sorted descending under `ord`.
fn sub_scaled(a: &Terms, c: &Scalar, m: &Monomial, b: &Terms, ord: &TermOrder) -> Terms {
    let mut out = Terms::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let bm = b[j].1.mul(m);
        match ord.cmp(&a[i].1, &bm) {
            std::cmp::Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                out.push(((&b[j].0 * c).neg(), bm));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let coef = &a[i].0 - &(&b[j].0 * c);
                if !coef.is_zero() {
                    out.push((coef, bm));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for (bc, bm) in &b[j..] {
        out.push(((bc * c).neg(), bm.mul(m)));
    }
    out
}

/// S-polynomial, cross-scaled by leading coefficients to avoid fractions.
fn spoly(f: &Terms, g: &Terms, ord: &TermOrder) -> Terms {
    let (fc, fm) = &f[0];
    let (gc, gm) = &g[0];
    let l = fm.lcm(gm);
    let left = mul_term(f, gc, &l.div(fm).expect("lcm divisible"));
    sub_scaled(&left, fc, &l.div(gm).expect("lcm divisible"), g, ord)
}

/// Full reduction of `work` by `basis`: cancels every divisible term, not
/// just the lead. Quotients (aligned with `basis`) are tracked on demand so
/// that input = sum(quotient_i * basis_i) + remainder exactly.
fn reduce_full(
    mut work: Terms,
    basis: &[Terms],
    ord: &TermOrder,
    mut quotients: Option<&mut Vec<Terms>>,
) -> Terms {
    let mut remainder = Terms::new();
    'outer: while let Some((c, m)) = work.first().cloned() {
        for (i, b) in basis.iter().enumerate() {
            if b.is_empty() {
                continue;
            }
            let (bc, bm) = &b[0];
            if let Some(q) = m.div(bm) {
                let factor = c.checked_div(bc).expect("nonzero leading coefficient");
                work = sub_scaled(&work, &factor, &q, b, ord);
                if let Some(qs) = quotients.as_deref_mut() {
                    qs[i].push((factor, q));
                }
                continue 'outer;
            }
        }
        remainder.push((c, m));
        work.remove(0);
    }
    remainder
}

fn content_normalize_terms(terms: Terms) -> Terms {
    if terms.is_empty() {
        return terms;
    }
    let coeffs: Vec<Scalar> = terms.iter().map(|(c, _)| c.clone()).collect();
    let normalized = content_normalize(&coeffs);
    normalized
        .into_iter()
        .zip(terms)
        .map(|(c, (_, m))| (c, m))
        .collect()
}

/// A reduced Groebner basis: monic elements, no term of any element
/// divisible by the leading monomial of another, sorted ascending by
/// leading monomial. The reduced basis of an ideal is unique per order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GBasis {
    order: TermOrder,
    elements: Vec<Polynomial>,
    work: Vec<Terms>,
}

impl GBasis {
    fn new(order: TermOrder, field: Field, work: Vec<Terms>) -> GBasis {
        let elements = work
            .iter()
            .map(|t| Polynomial::from_terms(field, t.clone()))
            .collect();
        GBasis { order, elements, work }
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.work.iter().map(|t| t[0].1).collect()
    }

    /// The unique remainder of `f` on division by the basis: no remainder
    /// term is divisible by any leading monomial, and f - remainder lies in
    /// the ideal. Zero iff f is a member.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let r = reduce_full(to_terms(f, &self.order), &self.work, &self.order, None);
        Polynomial::from_terms(f.field(), r)
    }

    /// Normal form together with the division quotients:
    /// f = sum(q_i * elements_i) + remainder.
    pub fn normal_form_with_quotients(&self, f: &Polynomial) -> (Polynomial, Vec<Polynomial>) {
        let mut qs = vec![Terms::new(); self.work.len()];
        let r = reduce_full(to_terms(f, &self.order), &self.work, &self.order, Some(&mut qs));
        (
            Polynomial::from_terms(f.field(), r),
            qs.into_iter()
                .map(|q| Polynomial::from_terms(f.field(), q))
                .collect(),
        )
    }

    /// Buchberger verifier: every S-polynomial of basis pairs reduces to
    /// zero. Runs without the pair-pruning criteria.
    pub fn verify(&self) -> bool {
        for i in 0..self.work.len() {
            for j in i + 1..self.work.len() {
                let s = spoly(&self.work[i], &self.work[j], &self.order);
                if !reduce_full(s, &self.work, &self.order, None).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Reducedness check: monic elements and no term divisible by another
    /// element's leading monomial.
    pub fn is_reduced(&self) -> bool {
        self.work.iter().enumerate().all(|(i, f)| {
            f[0].0.is_one()
                && f.iter().all(|(_, m)| {
                    self.work
                        .iter()
                        .enumerate()
                        .all(|(j, g)| i == j || !g[0].1.divides(m))
                })
        })
    }
}

/// Computes the reduced Groebner basis of the given generators.
pub fn buchberger(gens: &[Polynomial], field: Field, order: &TermOrder) -> GBasis {
    let mut basis: Vec<Terms> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| content_normalize_terms(to_terms(g, order)))
        .collect();

    let mut pending: Vec<(usize, usize)> = Vec::new();
    let mut pending_set: HashSet<(usize, usize)> = HashSet::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pending.push((i, j));
            pending_set.insert((i, j));
        }
    }

    let pair_key = |basis: &[Terms], (i, j): (usize, usize)| {
        let lcm = basis[i][0].1.lcm(&basis[j][0].1);
        (lcm.total_degree(), lcm, i, j)
    };
    let key_less = |a: &(u32, Monomial, usize, usize), b: &(u32, Monomial, usize, usize)| {
        use std::cmp::Ordering::*;
        match a.0.cmp(&b.0).then_with(|| order.cmp(&a.1, &b.1)) {
            Less => true,
            Greater => false,
            Equal => (a.2, a.3) < (b.2, b.3),
        }
    };

    let mut considered = 0usize;
    let mut reduced_to_zero = 0usize;
    while !pending.is_empty() {
        // Normal strategy: minimal lcm degree, then lcm under the order,
        // then pair indices. The key is total, so selection is deterministic.
        let mut best = 0;
        let mut best_key = pair_key(&basis, pending[0]);
        for (idx, &pair) in pending.iter().enumerate().skip(1) {
            let key = pair_key(&basis, pair);
            if key_less(&key, &best_key) {
                best = idx;
                best_key = key;
            }
        }
        let (i, j) = pending.swap_remove(best);
        pending_set.remove(&(i, j));
        considered += 1;

        let lm_i = &basis[i][0].1;
        let lm_j = &basis[j][0].1;
        // Product criterion: coprime leading monomials reduce to zero.
        if lm_i.is_coprime(lm_j) {
            continue;
        }
        // Chain criterion: skip when some k divides the lcm and both
        // companion pairs have already been handled.
        let lcm_ij = lm_i.lcm(lm_j);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k][0].1.divides(&lcm_ij)
                && !pending_set.contains(&key_of(i, k))
                && !pending_set.contains(&key_of(j, k))
        });
        if chain {
            continue;
        }

        let s = spoly(&basis[i], &basis[j], order);
        let r = reduce_full(s, &basis, order, None);
        if r.is_empty() {
            reduced_to_zero += 1;
            continue;
        }
        let r = content_normalize_terms(r);
        let new_idx = basis.len();
        for k in 0..new_idx {
            pending.push((k, new_idx));
            pending_set.insert((k, new_idx));
        }
        basis.push(r);
    }
    flog!(
        2,
        "buchberger: {} generators -> {} raw basis elements ({} pairs considered, {} reduced to zero)",
        gens.len(),
        basis.len(),
        considered,
        reduced_to_zero
    );

    // Minimalize: drop elements whose leading monomial is divisible by
    // another kept element's leading monomial.
    let mut order_idx: Vec<usize> = (0..basis.len()).collect();
    order_idx.sort_by(|&a, &b| order.cmp(&basis[a][0].1, &basis[b][0].1));
    let mut kept: Vec<Terms> = Vec::new();
    for idx in order_idx {
        let lm = &basis[idx][0].1;
        if !kept.iter().any(|k| k[0].1.divides(lm)) {
            kept.push(basis[idx].clone());
        }
    }

    // Inter-reduce tails until stable, re-normalizing content each pass.
    loop {
        let mut changed = false;
        for i in 0..kept.len() {
            let others: Vec<Terms> = kept
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, t)| t.clone())
                .collect();
            let reduced =
                content_normalize_terms(reduce_full(kept[i].clone(), &others, order, None));
            debug_assert!(!reduced.is_empty(), "minimal element reduced to zero");
            if reduced != kept[i] {
                kept[i] = reduced;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    // Monic, ascending by leading monomial.
    for f in &mut kept {
        let inv = f[0].0.inv().expect("nonzero leading coefficient");
        for (c, _) in f.iter_mut() {
            *c = &*c * &inv;
        }
    }
    kept.sort_by(|a, b| order.cmp(&a[0].1, &b[0].1));
    GBasis::new(order.clone(), field, kept)
}

fn key_of(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// An ideal: a generator list plus a cache of reduced Groebner bases, one
/// per term order. The reduced basis is unique, so the cache is canonical.
#[derive(Debug)]
pub struct Ideal {
    field: Field,
    gens: Vec<Polynomial>,
    cache: Mutex<HashMap<TermOrder, Arc<GBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Ideal {
        Ideal {
            field: self.field,
            gens: self.gens.clone(),
            cache: Mutex::new(self.cache.lock().expect("cache lock").clone()),
        }
    }
}

impl Ideal {
    /// Builds an ideal from generators; zero polynomials are dropped.
    pub fn new(field: Field, gens: Vec<Polynomial>) -> Ideal {
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &gens {
            assert_eq!(g.field(), field, "generator from a different field");
        }
        Ideal { field, gens, cache: Mutex::new(HashMap::new()) }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// The reduced Groebner basis under `order`, computed once and cached.
    pub fn groebner_basis(&self, order: &TermOrder) -> Arc<GBasis> {
        if let Some(b) = self.cache.lock().expect("cache lock").get(order) {
            return Arc::clone(b);
        }
        let computed = Arc::new(buchberger(&self.gens, self.field, order));
        let mut cache = self.cache.lock().expect("cache lock");
        Arc::clone(cache.entry(order.clone()).or_insert(computed))
    }

    /// Membership via normal form against the grevlex basis.
    pub fn contains(&self, f: &Polynomial) -> bool {
        self.groebner_basis(&TermOrder::Grevlex).normal_form(f).is_zero()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        let gb = self.groebner_basis(&TermOrder::Grevlex);
        gb.elements().len() == 1 && gb.elements()[0].total_degree() == 0
    }
}

/// True iff the ideals coincide: their reduced Groebner bases under the
/// fixed reference order (grevlex) are identical.
pub fn ideals_equal(a: &Ideal, b: &Ideal) -> bool {
    let ga = a.groebner_basis(&TermOrder::Grevlex);
    let gb = b.groebner_basis(&TermOrder::Grevlex);
    ga.elements() == gb.elements()
}

/// Generators of I ∩ K[x,y,z,w] for an ideal of the internal five-variable
/// ring: Groebner basis under a block order with the auxiliary variable
/// first, keeping the auxiliary-free elements.
pub(crate) fn eliminate_t(ideal: &Ideal) -> Ideal {
    let gb = ideal.groebner_basis(&TermOrder::eliminate_t());
    let gens = gb
        .elements()
        .iter()
        .filter(|f| !f.has_t())
        .cloned()
        .collect();
    Ideal::new(ideal.field(), gens)
}

/// I ∩ J via elimination of the auxiliary variable from t·I + (1-t)·J.
pub fn intersect(a: &Ideal, b: &Ideal) -> Ideal {
    assert_eq!(a.field(), b.field(), "ideals over different fields");
    let field = a.field();
    let t = Polynomial::var_t(field);
    let one_minus_t = Polynomial::one(field).sub(&t);
    let mut gens: Vec<Polynomial> = a.generators().iter().map(|f| f.mul(&t)).collect();
    gens.extend(b.generators().iter().map(|g| g.mul(&one_minus_t)));
    eliminate_t(&Ideal::new(field, gens))
}

/// Exact quotient g/f; errors if f does not divide g.
pub fn div_exact(g: &Polynomial, f: &Polynomial) -> Result<Polynomial, GroebnerError> {
    if f.is_zero() {
        return Err(GroebnerError::ZeroColonDivisor);
    }
    let ord = TermOrder::Grevlex;
    let divisor = vec![to_terms(f, &ord)];
    let mut qs = vec![Terms::new()];
    let r = reduce_full(to_terms(g, &ord), &divisor, &ord, Some(&mut qs));
    if r.is_empty() {
        Ok(Polynomial::from_terms(g.field(), qs.swap_remove(0)))
    } else {
        Err(GroebnerError::InexactDivision)
    }
}

/// The colon ideal I : f = { g : g·f ∈ I }, via (I ∩ ⟨f⟩) divided by f.
pub fn colon(ideal: &Ideal, f: &Polynomial) -> Result<Ideal, GroebnerError> {
    if f.is_zero() {
        return Err(GroebnerError::ZeroColonDivisor);
    }
    let inter = intersect(ideal, &Ideal::new(ideal.field(), vec![f.clone()]));
    let gens = inter
        .generators()
        .iter()
        .map(|g| div_exact(g, f))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Ideal::new(ideal.field(), gens))
}

/// I : f^∞ by iterated colon until the reduced basis stabilizes; also
/// returns the number of colon steps taken. Errors if the ascending chain
/// has not stabilized after `cap` steps.
pub fn saturate_with_steps(
    ideal: &Ideal,
    f: &Polynomial,
    cap: usize,
) -> Result<(Ideal, usize), GroebnerError> {
    let mut current = ideal.clone();
    for step in 1..=cap {
        let next = colon(&current, f)?;
        if ideals_equal(&next, &current) {
            flog!(2, "saturate: stabilized after {step} colon steps");
            return Ok((current, step));
        }
        current = next;
    }
    Err(GroebnerError::SaturationCapExceeded { cap })
}

/// I : f^∞ with the default step cap.
pub fn saturate(ideal: &Ideal, f: &Polynomial) -> Result<Ideal, GroebnerError> {
    saturate_with_steps(ideal, f, DEFAULT_STEP_CAP).map(|(i, _)| i)
}

/// Saturation at the irrelevant maximal ideal: I : (x,y,z,w)^∞, computed as
/// the intersection over the four variables of I : v^∞. Requires a
/// homogeneous ideal.
pub fn saturate_irrelevant(ideal: &Ideal) -> Result<Ideal, GroebnerError> {
    saturate_irrelevant_with_cap(ideal, DEFAULT_STEP_CAP)
}

pub fn saturate_irrelevant_with_cap(ideal: &Ideal, cap: usize) -> Result<Ideal, GroebnerError> {
    assert!(
        ideal.is_homogeneous(),
        "irrelevant saturation requires a homogeneous ideal"
    );
    let field = ideal.field();
    let mut acc: Option<Ideal> = None;
    for v in Var::ALL {
        let (sat_v, _) = saturate_with_steps(ideal, &Polynomial::var(v, field), cap)?;
        acc = Some(match acc {
            None => sat_v,
            Some(prev) => intersect(&prev, &sat_v),
        });
    }
    Ok(acc.expect("four variables"))
}

/// The initial ideal in_ω(I): the ideal generated by the initial forms of a
/// reduced Groebner basis under the ω-refined order (which generate the
/// initial forms of all members).
pub fn initial_ideal(ideal: &Ideal, omega: &WeightVector) -> Ideal {
    let order = TermOrder::weight_refined(*omega, TermOrder::Grevlex);
    let gb = ideal.groebner_basis(&order);
    let gens = gb
        .elements()
        .iter()
        .map(|f| f.initial_form(omega).expect("basis elements are nonzero"))
        .collect();
    Ideal::new(ideal.field(), gens)
}
