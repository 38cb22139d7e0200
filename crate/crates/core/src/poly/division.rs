use std::collections::{BinaryHeap, HashMap};

use num_traits::Zero;

use super::{Coeff, Monomial, MonomialOrder, PolyError, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

struct Divisor {
    lead: Monomial,
    lead_inv: Coeff,
    terms: Vec<(Monomial, Coeff)>,
}

/// Multivariate division of `f` by `divisors` under `order`.
///
/// At each step the largest remaining term is cancelled by the first divisor
/// (in list order) whose leading monomial divides it, or moved to the
/// remainder when none does. On return `f = sum(q_i * g_i) + r` and no term of
/// `r` is divisible by any leading monomial.
pub fn divide(
    f: &Polynomial,
    divisors: &[Polynomial],
    order: &MonomialOrder,
) -> Result<Division, PolyError> {
    divide_with_limit(f, divisors, order, usize::MAX)
}

/// Like [`divide`], but gives up with [`PolyError::StepLimit`] after
/// `max_steps` reduction steps.
pub fn divide_with_limit(
    f: &Polynomial,
    divisors: &[Polynomial],
    order: &MonomialOrder,
    max_steps: usize,
) -> Result<Division, PolyError> {
    let field = f.field();
    let nvars = f.nvars();
    let mut prepared = Vec::with_capacity(divisors.len());
    for g in divisors {
        if g.field() != field {
            return Err(PolyError::FieldMismatch {
                left: field,
                right: g.field(),
            });
        }
        if g.nvars() != nvars {
            return Err(PolyError::VarCountMismatch {
                left: nvars,
                right: g.nvars(),
            });
        }
        let (lead, lc) = g.leading_term(order)?;
        prepared.push(Divisor {
            lead: lead.clone(),
            lead_inv: field.inv(lc)?,
            terms: g
                .terms()
                .filter(|(m, _)| *m != lead)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        });
    }

    let mut quotient_terms: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); divisors.len()];
    let mut remainder_terms = Vec::new();
    let mut work: HashMap<Monomial, Coeff> =
        f.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    let mut heap: BinaryHeap<(Vec<i64>, Monomial)> = work
        .keys()
        .map(|m| (order.sort_key(m), m.clone()))
        .collect();

    let mut steps = 0usize;
    while let Some((_, m)) = heap.pop() {
        // stale heap entries: already processed or cancelled
        let Some(c) = work.remove(&m) else { continue };
        steps += 1;
        if steps > max_steps {
            return Err(PolyError::StepLimit(max_steps));
        }
        match prepared.iter().position(|d| d.lead.divides(&m)) {
            Some(i) => {
                let d = &prepared[i];
                let shift = d.lead.quotient_of(&m);
                let factor = field.mul(&c, &d.lead_inv);
                for (tm, tc) in &d.terms {
                    let target = tm.mul(&shift);
                    let delta = field.mul(&factor, tc);
                    match work.get_mut(&target) {
                        Some(slot) => {
                            *slot = field.sub(slot, &delta);
                            if slot.is_zero() {
                                work.remove(&target);
                            }
                        }
                        None => {
                            heap.push((order.sort_key(&target), target.clone()));
                            work.insert(target, field.neg(&delta));
                        }
                    }
                }
                quotient_terms[i].push((shift, factor));
            }
            None => remainder_terms.push((m, c)),
        }
    }

    Ok(Division {
        quotients: quotient_terms
            .into_iter()
            .map(|t| Polynomial::from_terms(field, nvars, t))
            .collect(),
        remainder: Polynomial::from_terms(field, nvars, remainder_terms),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::FieldSpec;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(q(), n, i)
    }

    fn reconstruct(div: &Division, divisors: &[Polynomial]) -> Polynomial {
        divisors
            .iter()
            .zip(&div.quotients)
            .fold(div.remainder.clone(), |acc, (g, h)| &acc + &(g * h))
    }

    #[test]
    fn squared_vandermonde_triple() {
        let g = &(&(&x(3, 0) - &x(3, 1)) * &(&x(3, 0) - &x(3, 2))) * &(&x(3, 1) - &x(3, 2));
        let f = g.pow(2);
        for order in [
            MonomialOrder::lex(),
            MonomialOrder::grlex(),
            MonomialOrder::grevlex(),
        ] {
            let div = divide(&f, std::slice::from_ref(&g), &order).unwrap();
            assert!(div.remainder.is_zero());
            assert_eq!(div.quotients[0], g);
            assert_eq!(reconstruct(&div, std::slice::from_ref(&g)), f);
        }
    }

    #[test]
    fn exact_linear_quotient() {
        let one = Polynomial::one(q(), 1);
        let f = &x(1, 0).pow(2) - &one;
        let g = &x(1, 0) - &one;
        let div = divide(&f, std::slice::from_ref(&g), &MonomialOrder::grlex()).unwrap();
        assert_eq!(div.quotients[0], &x(1, 0) + &one);
        assert!(div.remainder.is_zero());
    }

    #[test]
    fn no_divisibility_leaves_remainder() {
        let f = x(2, 0);
        let g = x(2, 1);
        for order in [
            MonomialOrder::lex(),
            MonomialOrder::grlex(),
            MonomialOrder::grevlex(),
        ] {
            let div = divide(&f, std::slice::from_ref(&g), &order).unwrap();
            assert_eq!(div.remainder, f);
            assert!(div.quotients[0].is_zero());
        }
    }

    #[test]
    fn empty_divisor_list() {
        let f = &x(2, 0) + &x(2, 1);
        let div = divide(&f, &[], &MonomialOrder::grlex()).unwrap();
        assert!(div.quotients.is_empty());
        assert_eq!(div.remainder, f);
    }

    #[test]
    fn zero_divisor_rejected() {
        let f = x(2, 0);
        let zero = Polynomial::zero(q(), 2);
        assert_eq!(
            divide(&f, &[zero], &MonomialOrder::grlex()),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn step_limit() {
        let f = x(1, 0).pow(10);
        let g = &x(1, 0) - &Polynomial::one(q(), 1);
        assert_eq!(
            divide_with_limit(&f, &[g], &MonomialOrder::grlex(), 3),
            Err(PolyError::StepLimit(3))
        );
    }
}
