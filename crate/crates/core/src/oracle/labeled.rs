use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Rational;

/// Which reduction to apply to an `m = 0` tuple that admits both.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Policy {
    StringFirst,
    DilatonFirst,
    Random,
}

/// A second bracket evaluator, written independently of
/// [`crate::brackets`]: it keeps the exponents as a labeled tuple (no
/// sorting, no grouping), expands every recursion one point at a time and
/// picks the removed point at random.
///
/// The memo table is keyed by the ordered tuple, so permuted inputs do not
/// share work.
pub struct LabeledEvaluator {
    policy: Policy,
    rng: ChaCha8Rng,
    memo: HashMap<(u32, u32, Vec<u32>), Rational>,
}

fn frac(n: u64, d: u64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn removed(exps: &[u32], at: usize) -> Vec<u32> {
    let mut v = exps.to_vec();
    v.remove(at);
    v
}

impl LabeledEvaluator {
    pub fn new(policy: Policy, seed: u64) -> Self {
        Self {
            policy,
            rng: ChaCha8Rng::seed_from_u64(seed),
            memo: HashMap::new(),
        }
    }

    fn pick(&mut self, candidates: &[usize]) -> usize {
        candidates[self.rng.gen_range(0..candidates.len())]
    }

    /// `<c_tilde; exps>_{(m, len)}` with `exps` in any order.
    pub fn eval(&mut self, m: u32, c_tilde: u32, exps: &[u32]) -> Rational {
        assert!(m as usize + exps.len() >= 1, "M_(1,0) is undefined");
        let degree: u64 = u64::from(c_tilde) + exps.iter().map(|&c| u64::from(c)).sum::<u64>();
        if degree != u64::from(m) + exps.len() as u64 {
            return Rational::zero();
        }
        let memo_key = (m, c_tilde, exps.to_vec());
        if let Some(v) = self.memo.get(&memo_key) {
            return v.clone();
        }
        let value = if m == 0 {
            self.hodge(c_tilde, exps)
        } else {
            self.blowup(m, c_tilde, exps)
        };
        self.memo.insert(memo_key, value.clone());
        value
    }

    /// Sum over each other point `k` with `c_k > 0` of the tuple with `z`
    /// removed and `c_k` lowered by one.
    fn string_tail(&mut self, m: u32, c_tilde: u32, exps: &[u32], z: usize) -> Rational {
        let mut total = Rational::zero();
        for k in 0..exps.len() {
            if k == z || exps[k] == 0 {
                continue;
            }
            let mut next = exps.to_vec();
            next[k] -= 1;
            next.remove(z);
            total += self.eval(m, c_tilde, &next);
        }
        total
    }

    fn blowup(&mut self, m: u32, c_tilde: u32, exps: &[u32]) -> Rational {
        if exps.is_empty() && m == 1 {
            return if c_tilde == 1 {
                frac(1, 24)
            } else {
                Rational::zero()
            };
        }
        let zeros: Vec<usize> = (0..exps.len()).filter(|&k| exps[k] == 0).collect();
        if zeros.is_empty() {
            // an I-point becomes a J-point without psi, at a random slot
            let slot = self.rng.gen_range(0..=exps.len());
            let mut next = exps.to_vec();
            next.insert(slot, 0);
            return self.eval(m - 1, c_tilde, &next);
        }
        let z = self.pick(&zeros);
        let mut total = self.string_tail(m, c_tilde, exps, z);
        if c_tilde >= 1 {
            total +=
                Rational::from_integer(m.into()) * self.eval(m, c_tilde - 1, &removed(exps, z));
        }
        total
    }

    fn hodge(&mut self, lambda_pow: u32, exps: &[u32]) -> Rational {
        let n = exps.len();
        if lambda_pow >= 2 {
            return Rational::zero();
        }
        if n == 1 {
            let hit = (lambda_pow == 0 && exps[0] == 1) || (lambda_pow == 1 && exps[0] == 0);
            return if hit { frac(1, 24) } else { Rational::zero() };
        }
        let zeros: Vec<usize> = (0..n).filter(|&k| exps[k] == 0).collect();
        let ones: Vec<usize> = (0..n).filter(|&k| exps[k] == 1).collect();
        let use_string = match (zeros.is_empty(), ones.is_empty()) {
            (false, true) => true,
            (true, false) => false,
            (false, false) => match self.policy {
                Policy::StringFirst => true,
                Policy::DilatonFirst => false,
                Policy::Random => self.rng.gen_bool(0.5),
            },
            (true, true) => panic!("degree = dimension leaves a 0 or a 1 in {exps:?}"),
        };
        if use_string {
            let z = self.pick(&zeros);
            self.string_tail(0, lambda_pow, exps, z)
        } else {
            let d = self.pick(&ones);
            Rational::from_integer((n as u64 - 1).into())
                * self.eval(0, lambda_pow, &removed(exps, d))
        }
    }
}

/// `<prod psi_j^{c_j}, M_{0,n}>` by the string equation alone, bottoming
/// out at `<tau_0^3> = 1`.
pub fn genus0_by_string(exps: &[u32]) -> Rational {
    fn go(exps: &[u32], memo: &mut HashMap<Vec<u32>, Rational>) -> Rational {
        let n = exps.len();
        let sum: u64 = exps.iter().map(|&c| u64::from(c)).sum();
        if sum + 3 != n as u64 {
            return Rational::zero();
        }
        if n == 3 {
            return Rational::from_integer(1.into());
        }
        if let Some(v) = memo.get(exps) {
            return v.clone();
        }
        let z = exps
            .iter()
            .position(|&c| c == 0)
            .expect("sum < n forces a zero");
        let mut total = Rational::zero();
        for k in 0..n {
            if k != z && exps[k] > 0 {
                let mut next = exps.to_vec();
                next[k] -= 1;
                next.remove(z);
                total += go(&next, memo);
            }
        }
        memo.insert(exps.to_vec(), total.clone());
        total
    }
    assert!(exps.len() >= 3, "M_(0,n) needs n >= 3");
    go(exps, &mut HashMap::new())
}
