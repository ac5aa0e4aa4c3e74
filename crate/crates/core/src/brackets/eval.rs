use num_bigint::BigInt;
use num_traits::Zero;

use super::{
    factorial, one_24th, BracketError, BracketKey, CanonicalKey, ExponentMultiset, MemoCache,
};
use crate::Rational;

/// One summand `coeff * <target>` of a recursion step.
///
/// Targets are structural rewrites of the input key. A target is
/// [`CanonicalKey::Zero`] when an exponent would go negative; otherwise it is
/// a key that may still fail the degree gate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepTerm {
    pub coeff: Rational,
    pub target: CanonicalKey,
}

/// The string-type recursion for a key with a `J`-point carrying no psi factor.
///
/// The removed point `j*` is the last (smallest) entry of the multiset. The
/// first term is `m * <c~ - 1; rest>`; the others decrement each remaining
/// positive exponent, grouped by value with the multiplicity as coefficient.
///
/// # Panics
///
/// If the key has no zero exponent or `m + n < 2`.
pub fn string_step(key: &BracketKey) -> Vec<StepTerm> {
    assert!(
        key.exps.contains(0),
        "string step needs a zero exponent: {key}"
    );
    assert!(key.dim() >= 2, "string step needs m + n >= 2: {key}");
    let rest = key.exps.without(0).expect("checked above");

    let mut terms = Vec::with_capacity(rest.len() + 1);
    let first = match key.c_tilde.checked_sub(1) {
        Some(c) => CanonicalKey::Key(BracketKey {
            m: key.m,
            c_tilde: c,
            exps: rest.clone(),
        }),
        None => CanonicalKey::Zero,
    };
    terms.push(StepTerm {
        coeff: Rational::from_integer(key.m.into()),
        target: first,
    });
    for (value, mult) in rest.grouped() {
        if value == 0 {
            continue;
        }
        let exps = rest
            .decremented(value)
            .expect("value is present and positive");
        terms.push(StepTerm {
            coeff: Rational::from_integer(mult.into()),
            target: CanonicalKey::Key(BracketKey {
                m: key.m,
                c_tilde: key.c_tilde,
                exps,
            }),
        });
    }
    terms
}

/// Moves one `I`-point into `J` with exponent zero; the value is unchanged
/// when every existing `J`-exponent is positive.
///
/// # Panics
///
/// If `m = 0`, some exponent is zero, or `m + n < 2`.
pub fn transfer_step(key: &BracketKey) -> BracketKey {
    assert!(key.m >= 1, "transfer step needs an I-point: {key}");
    assert!(
        !key.exps.contains(0),
        "transfer step needs positive exponents: {key}"
    );
    assert!(key.dim() >= 2, "transfer step needs m + n >= 2: {key}");
    BracketKey {
        m: key.m - 1,
        c_tilde: key.c_tilde,
        exps: key.exps.with(0),
    }
}

struct Engine<'a> {
    cache: Option<&'a MemoCache>,
}

impl Engine<'_> {
    fn bracket(&self, key: &BracketKey) -> Rational {
        if !key.passes_gate() {
            return Rational::zero();
        }
        if let Some(v) = self.cache.and_then(|c| c.get(key)) {
            return v;
        }
        let value = if key.m == 0 {
            self.hodge(key.c_tilde, &key.exps)
        } else if key.n() == 0 && key.m == 1 {
            // M~_{1,({i},{})} = M_{1,1} and psi~ = psi there
            if key.c_tilde == 1 {
                one_24th()
            } else {
                Rational::zero()
            }
        } else if key.exps.contains(0) {
            self.sum(&string_step(key))
        } else {
            self.bracket(&transfer_step(key))
        };
        if let Some(cache) = self.cache {
            cache
                .insert(key.clone(), value.clone())
                .expect("memo table is consistent");
        }
        value
    }

    fn sum(&self, terms: &[StepTerm]) -> Rational {
        terms
            .iter()
            .filter(|t| !t.coeff.is_zero())
            .filter_map(|t| t.target.key().map(|k| &t.coeff * self.bracket(k)))
            .fold(Rational::zero(), |acc, v| acc + v)
    }

    /// `<lambda^a prod psi_j^{c_j}, M_{1,n}>` for `n >= 1`.
    fn hodge(&self, a: u32, exps: &ExponentMultiset) -> Rational {
        let n = exps.len();
        debug_assert!(n >= 1);
        // lambda is pulled back from the one-dimensional M_{1,1}
        if a >= 2 || u64::from(a) + exps.sum() != n as u64 {
            return Rational::zero();
        }
        if n == 1 {
            return match (a, exps.as_slice()[0]) {
                (0, 1) | (1, 0) => one_24th(),
                _ => Rational::zero(),
            };
        }
        let key = BracketKey {
            m: 0,
            c_tilde: a,
            exps: exps.clone(),
        };
        if exps.contains(0) {
            self.sum(&string_step(&key))
        } else if exps.contains(1) {
            // dilaton: 2g - 2 + (n - 1) with g = 1
            let rest = exps.without(1).expect("checked above");
            let factor = Rational::from_integer(BigInt::from(n - 1));
            factor
                * self.bracket(&BracketKey {
                    m: 0,
                    c_tilde: a,
                    exps: rest,
                })
        } else {
            unreachable!("degree equals dimension forces an exponent 0 or 1: {key}")
        }
    }
}

/// Exact value of a bracket, memoizing every key computed along the way.
///
/// Keys that fail the degree gate evaluate to zero.
pub fn eval_bracket(key: &BracketKey, cache: &MemoCache) -> Rational {
    Engine { cache: Some(cache) }.bracket(key)
}

/// Same as [`eval_bracket`] without a memo table. Exponential in the worst
/// case; meant for cross-checking.
pub fn eval_bracket_uncached(key: &BracketKey) -> Rational {
    Engine { cache: None }.bracket(key)
}

/// `<lambda^a prod psi_j^{c_j}, M_{1,n}>`, with `lambda^2 = 0`.
pub fn eval_genus1_hodge(
    lambda_pow: u32,
    exps: &ExponentMultiset,
) -> Result<Rational, BracketError> {
    if exps.is_empty() {
        return Err(BracketError::UndefinedModuliSpace);
    }
    let key = BracketKey {
        m: 0,
        c_tilde: lambda_pow,
        exps: exps.clone(),
    };
    Ok(eval_bracket(&key, &MemoCache::new()))
}

/// `<prod psi_j^{c_j}, M_{1,n}>`.
pub fn eval_genus1_psi(exps: &ExponentMultiset) -> Result<Rational, BracketError> {
    eval_genus1_hodge(0, exps)
}

/// `(1/24) m^n (m-1)!`, the value of `<m + n; 0^n>_{(m,n)}`.
pub fn corollary_closed_form(m: u32, n: u32) -> Result<Rational, BracketError> {
    if m == 0 {
        return Err(BracketError::NoIPoints);
    }
    let value = BigInt::from(m).pow(n) * factorial(u64::from(m) - 1);
    Ok(Rational::from_integer(value) * one_24th())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(m: u32, c: u32, exps: &[u32]) -> BracketKey {
        BracketKey::new(m, c, exps.to_vec()).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn term(coeff: i64, target: Option<BracketKey>) -> StepTerm {
        StepTerm {
            coeff: r(coeff, 1),
            target: target.map_or(CanonicalKey::Zero, CanonicalKey::Key),
        }
    }

    fn ev(m: u32, c: u32, exps: &[u32]) -> Rational {
        eval_bracket(&key(m, c, exps), &MemoCache::new())
    }

    #[test]
    fn single_i_point() {
        assert_eq!(ev(1, 1, &[]), r(1, 24));
        assert_eq!(ev(1, 0, &[]), r(0, 1));
    }

    #[test]
    fn corollary_examples() {
        assert_eq!(ev(3, 5, &[0, 0]), r(3, 4));
        assert_eq!(corollary_closed_form(1, 0).unwrap(), r(1, 24));
        assert_eq!(corollary_closed_form(2, 1).unwrap(), r(1, 12));
        assert_eq!(corollary_closed_form(3, 2).unwrap(), r(3, 4));
        assert_eq!(corollary_closed_form(0, 2), Err(BracketError::NoIPoints));
    }

    #[test]
    fn mixed_bracket() {
        // transfer to {1;2;[1,0]}, then <1;(1)>_(1,1) + <2;(0)>_(1,1) = 1/24 + 1/24
        assert_eq!(ev(2, 2, &[1]), r(1, 12));
        assert_eq!(ev(1, 1, &[1]), r(1, 24));
        assert_eq!(ev(1, 2, &[0]), r(1, 24));
    }

    #[test]
    fn psi_on_m11() {
        assert_eq!(ev(0, 0, &[1]), r(1, 24));
    }

    #[test]
    fn string_step_examples() {
        assert_eq!(
            string_step(&key(3, 3, &[0, 0, 0])),
            vec![term(3, Some(key(3, 2, &[0, 0])))]
        );
        assert_eq!(
            string_step(&key(0, 0, &[2, 0])),
            vec![term(0, None), term(1, Some(key(0, 0, &[1])))]
        );
        assert_eq!(
            string_step(&key(1, 1, &[1, 0])),
            vec![
                term(1, Some(key(1, 0, &[1]))),
                term(1, Some(key(1, 1, &[0])))
            ]
        );
    }

    #[test]
    fn string_step_groups_equal_exponents() {
        let terms = string_step(&key(1, 0, &[2, 2, 1, 0]));
        assert_eq!(
            terms,
            vec![
                term(1, None),
                term(2, Some(key(1, 0, &[2, 1, 1]))),
                term(1, Some(key(1, 0, &[2, 2, 0]))),
            ]
        );
    }

    #[test]
    #[should_panic(expected = "zero exponent")]
    fn string_step_requires_zero() {
        string_step(&key(1, 1, &[1]));
    }

    #[test]
    #[should_panic(expected = "m + n >= 2")]
    fn string_step_requires_two_points() {
        string_step(&key(0, 0, &[0]));
    }

    #[test]
    fn transfer_examples() {
        assert_eq!(transfer_step(&key(2, 2, &[])), key(1, 2, &[0]));
        assert_eq!(transfer_step(&key(1, 1, &[1])), key(0, 1, &[1, 0]));
        assert_eq!(transfer_step(&key(3, 4, &[2, 1])), key(2, 4, &[2, 1, 0]));
    }

    #[test]
    #[should_panic(expected = "positive exponents")]
    fn transfer_requires_positive_exponents() {
        transfer_step(&key(2, 2, &[1, 0]));
    }

    #[test]
    #[should_panic(expected = "I-point")]
    fn transfer_requires_i_point() {
        transfer_step(&key(0, 2, &[1, 1]));
    }

    #[test]
    fn hodge_examples() {
        let e = |v: &[u32]| ExponentMultiset::new(v.to_vec());
        assert_eq!(eval_genus1_hodge(0, &e(&[1])).unwrap(), r(1, 24));
        assert_eq!(eval_genus1_hodge(1, &e(&[0])).unwrap(), r(1, 24));
        assert_eq!(eval_genus1_hodge(2, &e(&[1, 0, 0])).unwrap(), r(0, 1));
        assert_eq!(eval_genus1_hodge(0, &e(&[1, 1, 1])).unwrap(), r(1, 12));
        assert_eq!(eval_genus1_hodge(1, &e(&[1, 0])).unwrap(), r(1, 24));
        assert_eq!(
            eval_genus1_hodge(0, &e(&[])),
            Err(BracketError::UndefinedModuliSpace)
        );
    }

    #[test]
    fn psi_examples() {
        let e = |v: &[u32]| ExponentMultiset::new(v.to_vec());
        assert_eq!(eval_genus1_psi(&e(&[2, 0])).unwrap(), r(1, 24));
        assert_eq!(eval_genus1_psi(&e(&[1, 1])).unwrap(), r(1, 24));
        // degree 3 on a 4-dimensional space
        assert_eq!(eval_genus1_psi(&e(&[3, 0, 0, 0])).unwrap(), r(0, 1));
        // string: <tau_1 tau_1> + <tau_2 tau_0> = 1/24 + 1/24
        assert_eq!(eval_genus1_psi(&e(&[2, 1, 0])).unwrap(), r(1, 12));
        assert_eq!(
            eval_genus1_psi(&e(&[])),
            Err(BracketError::UndefinedModuliSpace)
        );
    }

    #[test]
    fn gate_failures_are_zero() {
        assert_eq!(ev(2, 0, &[1]), r(0, 1));
        assert_eq!(ev(0, 0, &[1, 1, 0]), r(0, 1));
    }

    #[test]
    fn memo_records_subkeys() {
        let cache = MemoCache::new();
        eval_bracket(&key(3, 5, &[0, 0]), &cache);
        assert_eq!(cache.get(&key(1, 1, &[])), Some(r(1, 24)));
        assert_eq!(cache.get(&key(3, 5, &[0, 0])), Some(r(3, 4)));
    }
}
