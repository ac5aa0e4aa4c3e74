use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use tautrec::brackets::{
    canonical_key, eval_bracket, eval_bracket_uncached, string_step, transfer_step, BracketKey,
    CanonicalKey, MemoCache,
};
use tautrec::oracle::{LabeledEvaluator, Policy};
use tautrec::Rational;

/// Gate-passing keys with `m <= 4`, `n <= 5`, as (m, c~, unsorted exponents).
fn gated() -> impl Strategy<Value = (u32, u32, Vec<u32>)> {
    (0u32..=4, 0usize..=5)
        .prop_filter("needs a marked point", |(m, n)| m + *n as u32 >= 1)
        .prop_flat_map(|(m, n)| {
            let dim = m + n as u32;
            (Just(m), prop::collection::vec(0..=dim, n)).prop_filter_map(
                "degree too large",
                move |(m, e)| {
                    let s: u32 = e.iter().sum();
                    (s <= dim).then(|| (m, dim - s, e))
                },
            )
        })
}

fn value(m: u32, c: u32, e: &[u32]) -> Rational {
    eval_bracket_uncached(&BracketKey::new(m, c, e.to_vec()).unwrap())
}

fn signed(e: &[u32]) -> Vec<i64> {
    e.iter().map(|&x| i64::from(x)).collect()
}

proptest! {
    #[test]
    fn permutation_invariance((m, c, e) in gated(), seed in any::<u64>()) {
        let mut shuffled = e.clone();
        let len = shuffled.len();
        if len > 1 {
            shuffled.rotate_left((seed % len as u64) as usize);
            shuffled.swap(0, (seed as usize / 7) % len);
        }
        let a = canonical_key(m, c.into(), &signed(&e)).unwrap();
        let b = canonical_key(m, c.into(), &signed(&shuffled)).unwrap();
        prop_assert_eq!(&a, &b);
        let mut labeled = LabeledEvaluator::new(Policy::Random, seed);
        prop_assert_eq!(labeled.eval(m, c, &shuffled), value(m, c, &e));
    }

    #[test]
    fn degree_gate(m in 0u32..=4, c in 0i64..=8, e in prop::collection::vec(-1i64..=5, 0..=5)) {
        prop_assume!(m as usize + e.len() >= 1);
        let degree = c + e.iter().sum::<i64>();
        let dim = i64::from(m) + e.len() as i64;
        match canonical_key(m, c, &e).unwrap() {
            CanonicalKey::Zero => prop_assert!(degree != dim || e.iter().any(|&x| x < 0)),
            CanonicalKey::Key(k) => {
                prop_assert!(degree == dim && k.passes_gate());
                let _ = eval_bracket_uncached(&k);
            }
        }
    }

    #[test]
    fn off_gate_keys_vanish(m in 0u32..=4, c in 0u32..=8, e in prop::collection::vec(0u32..=5, 0..=5)) {
        prop_assume!(m as usize + e.len() >= 1);
        let key = BracketKey::new(m, c, e.clone()).unwrap();
        prop_assume!(!key.passes_gate());
        prop_assert!(eval_bracket_uncached(&key).is_zero());
    }

    #[test]
    fn grouped_string_step_matches_per_point((m, c, e) in gated()) {
        let key = BracketKey::new(m, c, e.clone()).unwrap();
        prop_assume!(key.exps.contains(0) && key.dim() >= 2 && m >= 1);

        let grouped = string_step(&key).iter().fold(Rational::zero(), |acc, t| {
            acc + t.target.key().map_or_else(Rational::zero, |k| &t.coeff * eval_bracket_uncached(k))
        });

        // Remove one zero-exponent point, then decrement one point at a time.
        let mut rest = e.clone();
        rest.remove(rest.iter().position(|&x| x == 0).unwrap());
        let mut per_point = if c >= 1 {
            Rational::from_integer(m.into()) * value(m, c - 1, &rest)
        } else {
            Rational::zero()
        };
        for i in 0..rest.len() {
            if rest[i] > 0 {
                let mut next = rest.clone();
                next[i] -= 1;
                per_point += value(m, c, &next);
            }
        }
        prop_assert_eq!(&grouped, &per_point);
        prop_assert_eq!(grouped, eval_bracket_uncached(&key));
    }

    #[test]
    fn corollary_identity(m in 1u32..=6, n in 0u32..=6) {
        let expected = Rational::new(
            BigInt::from(m).pow(n) * (1..m).fold(BigInt::one(), |a, k| a * k),
            24.into(),
        );
        prop_assert_eq!(value(m, m + n, &vec![0; n as usize]), expected);
    }

    #[test]
    fn memo_soundness(keys in prop::collection::vec(gated(), 1..8)) {
        let cache = MemoCache::new();
        for (m, c, e) in keys {
            let key = BracketKey::new(m, c, e).unwrap();
            prop_assert_eq!(eval_bracket(&key, &cache), eval_bracket_uncached(&key));
        }
        for (key, v) in cache.entries() {
            prop_assert_eq!(v, eval_bracket_uncached(&key));
        }
    }

    #[test]
    fn steps_decrease_dim_then_m((m, c, e) in gated()) {
        let key = BracketKey::new(m, c, e).unwrap();
        prop_assume!(key.dim() >= 2 && m >= 1);
        let measure = |k: &BracketKey| (k.dim(), k.m);
        if key.exps.contains(0) {
            for t in string_step(&key) {
                if let Some(k) = t.target.key() {
                    prop_assert!(measure(k) < measure(&key));
                }
            }
        } else {
            prop_assert!(measure(&transfer_step(&key)) < measure(&key));
        }
    }
}

fn tuples(n: usize, sum: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() == n {
        if sum == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    for v in 0..=sum {
        prefix.push(v);
        tuples(n, sum - v, prefix, out);
        prefix.pop();
    }
}

#[test]
fn hodge_confluence_exhaustive() {
    let mut string_first = LabeledEvaluator::new(Policy::StringFirst, 0);
    let mut dilaton_first = LabeledEvaluator::new(Policy::DilatonFirst, 0);
    for n in 1..=7usize {
        for lambda in 0..=1u32 {
            let mut all = Vec::new();
            tuples(n, n as u32 - lambda, &mut Vec::new(), &mut all);
            for t in all {
                let a = string_first.eval(0, lambda, &t);
                let b = dilaton_first.eval(0, lambda, &t);
                assert_eq!(a, b, "lambda^{lambda} {t:?}");
                assert_eq!(a, value(0, lambda, &t), "lambda^{lambda} {t:?}");
            }
        }
    }
}

#[test]
fn lambda_squared_vanishes() {
    assert!(value(0, 2, &[0, 0]).is_zero());
    assert!(value(0, 2, &[1, 0, 0]).is_zero());
}
