//! Term orders: lex, graded reverse lex, weight-refined, and block orders.

use std::cmp::Ordering;
use std::fmt;

use super::{Monomial, Var, NVARS, T_INDEX};

/// A weight vector on the four ring variables x, y, z, w (the internal
/// elimination variable has weight zero). Not all entries may be zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector {
    weights: [u64; 4],
}

impl WeightVector {
    pub fn new(weights: [u64; 4]) -> Option<WeightVector> {
        if weights.iter().all(|&w| w == 0) {
            None
        } else {
            Some(WeightVector { weights })
        }
    }

    pub fn weights(&self) -> [u64; 4] {
        self.weights
    }

    /// The scalar product of the weights with the exponent vector.
    pub fn weight(&self, m: &Monomial) -> u64 {
        self.weights
            .iter()
            .enumerate()
            .map(|(i, &w)| w * m.exponent_at(i) as u64)
            .sum()
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.weights;
        write!(f, "({a},{b},{c},{d})")
    }
}

/// A total, multiplicative monomial order with 1 minimal.
///
/// Variable order is x > y > z > w (> t internally). `WeightRefined`
/// compares weights first and delegates ties; `Block` compares the
/// projection onto the masked variables first, then the complement.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    Lex,
    Grevlex,
    WeightRefined { omega: WeightVector, tie: Box<TermOrder> },
    Block { mask: u8, first: Box<TermOrder>, rest: Box<TermOrder> },
}

impl TermOrder {
    pub fn weight_refined(omega: WeightVector, tie: TermOrder) -> TermOrder {
        TermOrder::WeightRefined { omega, tie: Box::new(tie) }
    }

    /// Block order putting the listed variables first.
    pub fn block(first_vars: &[Var], first: TermOrder, rest: TermOrder) -> TermOrder {
        let mut mask = 0u8;
        for v in first_vars {
            mask |= 1 << v.index();
        }
        TermOrder::Block { mask, first: Box::new(first), rest: Box::new(rest) }
    }

    /// The elimination order for the internal variable t: any monomial
    /// containing t exceeds every t-free monomial.
    pub(crate) fn eliminate_t() -> TermOrder {
        TermOrder::Block {
            mask: 1 << T_INDEX,
            first: Box::new(TermOrder::Grevlex),
            rest: Box::new(TermOrder::Grevlex),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Lex => {
                for i in 0..NVARS {
                    match a.exponent_at(i).cmp(&b.exponent_at(i)) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            TermOrder::Grevlex => a.total_degree().cmp(&b.total_degree()).then_with(|| {
                // Equal degrees: the last nonzero entry of the exponent
                // difference decides, negative meaning greater.
                for i in (0..NVARS).rev() {
                    match b.exponent_at(i).cmp(&a.exponent_at(i)) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }),
            TermOrder::WeightRefined { omega, tie } => omega
                .weight(a)
                .cmp(&omega.weight(b))
                .then_with(|| tie.cmp(a, b)),
            TermOrder::Block { mask, first, rest } => first
                .cmp(&a.project(*mask), &b.project(*mask))
                .then_with(|| rest.cmp(&a.project(!*mask), &b.project(!*mask))),
        }
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermOrder::Lex => write!(f, "lex"),
            TermOrder::Grevlex => write!(f, "grevlex"),
            TermOrder::WeightRefined { omega, tie } => write!(f, "weight{omega}+{tie}"),
            TermOrder::Block { mask, first, rest } => {
                write!(f, "block[")?;
                let mut sep = "";
                for (i, name) in super::VAR_NAMES.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        write!(f, "{sep}{name}")?;
                        sep = ",";
                    }
                }
                write!(f, ":{first}|{rest}]")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::arb_monomial;
    use super::*;
    use proptest::prelude::*;

    fn m(e: [u16; 4]) -> Monomial {
        Monomial::new(e)
    }

    fn omega_order(d: u64) -> TermOrder {
        TermOrder::weight_refined(WeightVector::new([d, 2, 1, 1]).unwrap(), TermOrder::Grevlex)
    }

    #[test]
    fn grevlex_golden_orderings() {
        // z > w under grevlex.
        assert_eq!(TermOrder::Grevlex.cmp(&m([0, 0, 1, 0]), &m([0, 0, 0, 1])), Ordering::Greater);
        // Degree dominates: y*z > x.
        assert_eq!(TermOrder::Grevlex.cmp(&m([0, 1, 1, 0]), &m([1, 0, 0, 0])), Ordering::Greater);
        // Equal degree: x*w < y*z (difference last nonzero positive).
        assert_eq!(TermOrder::Grevlex.cmp(&m([1, 0, 0, 1]), &m([0, 1, 1, 0])), Ordering::Less);
    }

    #[test]
    fn weight_refined_golden_orderings() {
        let ord = omega_order(4);
        // x and y^2 tie at weight 4; grevlex tie-break picks the higher degree.
        assert_eq!(ord.cmp(&m([0, 2, 0, 0]), &m([1, 0, 0, 0])), Ordering::Greater);
        // x and z^4 tie at weight 4; degree again decides.
        assert_eq!(ord.cmp(&m([0, 0, 4, 0]), &m([1, 0, 0, 0])), Ordering::Greater);
        // Weight dominates regardless of degree: x > z^3.
        assert_eq!(ord.cmp(&m([1, 0, 0, 0]), &m([0, 0, 3, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_respects_variable_order() {
        assert_eq!(TermOrder::Lex.cmp(&m([1, 0, 0, 0]), &m([0, 9, 9, 9])), Ordering::Greater);
        assert_eq!(TermOrder::Lex.cmp(&m([0, 0, 1, 0]), &m([0, 0, 0, 9])), Ordering::Greater);
    }

    #[test]
    fn elimination_order_separates_t() {
        let ord = TermOrder::eliminate_t();
        let t = Monomial::var_t();
        let big = m([9, 9, 9, 9]);
        assert_eq!(ord.cmp(&t, &big), Ordering::Greater);
        assert_eq!(ord.cmp(&big, &m([0, 1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn block_order_on_public_vars() {
        let ord = TermOrder::block(&[Var::X, Var::Y], TermOrder::Grevlex, TermOrder::Grevlex);
        // Any x/y content beats pure z/w content.
        assert_eq!(ord.cmp(&m([0, 1, 0, 0]), &m([0, 0, 5, 5])), Ordering::Greater);
    }

    fn arb_order() -> impl Strategy<Value = TermOrder> {
        prop_oneof![
            Just(TermOrder::Lex),
            Just(TermOrder::Grevlex),
            proptest::array::uniform4(0u64..=5)
                .prop_filter("nonzero", |w| w.iter().any(|&x| x > 0))
                .prop_map(|w| TermOrder::weight_refined(
                    WeightVector::new(w).unwrap(),
                    TermOrder::Grevlex
                )),
            (1u8..31).prop_map(|mask| TermOrder::Block {
                mask,
                first: Box::new(TermOrder::Grevlex),
                rest: Box::new(TermOrder::Grevlex),
            }),
        ]
    }

    proptest! {
        #[test]
        fn orders_are_total_and_antisymmetric(
            ord in arb_order(),
            a in arb_monomial(5),
            b in arb_monomial(5),
        ) {
            let ab = ord.cmp(&a, &b);
            let ba = ord.cmp(&b, &a);
            prop_assert_eq!(ab, ba.reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
        }

        #[test]
        fn orders_are_transitive(
            ord in arb_order(),
            a in arb_monomial(4),
            b in arb_monomial(4),
            c in arb_monomial(4),
        ) {
            let mut v = [a, b, c];
            v.sort_by(|p, q| ord.cmp(p, q));
            prop_assert!(ord.cmp(&v[0], &v[1]) != Ordering::Greater);
            prop_assert!(ord.cmp(&v[1], &v[2]) != Ordering::Greater);
            prop_assert!(ord.cmp(&v[0], &v[2]) != Ordering::Greater);
        }

        #[test]
        fn orders_are_multiplicative(
            ord in arb_order(),
            a in arb_monomial(4),
            b in arb_monomial(4),
            n in arb_monomial(4),
        ) {
            prop_assert_eq!(ord.cmp(&a.mul(&n), &b.mul(&n)), ord.cmp(&a, &b));
        }

        #[test]
        fn one_is_minimal(ord in arb_order(), a in arb_monomial(5)) {
            prop_assert!(ord.cmp(&Monomial::one(), &a) != Ordering::Greater);
        }
    }
}
