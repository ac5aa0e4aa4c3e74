use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::Recorder;
use super::{
    genus0_by_string, Evaluator, LabeledEvaluator, Policy, Standard, StandardStrata, StrataOps,
    VerificationReport,
};
use crate::brackets::{
    canonical_key, corollary_closed_form, BracketKey, CanonicalKey, ExponentMultiset,
};
use crate::strata::{enumerate_a1_ij, precedes, Kind, Label, LabelSet, RootedPartition};
use crate::Rational;

/// `<m + n; 0^n>_{(m,n)} = (1/24) m^n (m-1)!` for `1 <= m <= max_m`,
/// `0 <= n <= max_n`.
pub fn verify_corollary(max_m: u32, max_n: u32) -> VerificationReport {
    verify_corollary_with(&Standard::default(), max_m, max_n)
}

pub fn verify_corollary_with(eval: &dyn Evaluator, max_m: u32, max_n: u32) -> VerificationReport {
    let mut rec = Recorder::new("corollary");
    for m in 1..=max_m {
        for n in 0..=max_n {
            let key =
                BracketKey::new(m, m + n, ExponentMultiset::zeros(n as usize)).expect("m >= 1");
            let expected = corollary_closed_form(m, n).expect("m >= 1");
            rec.check(|| key.to_string(), expected, eval.bracket(&key));
        }
    }
    rec.finish()
}

/// Draws `m` in `[0, 5]`, `n` in `[0, max_dim - m]`, `c~` in `[0, m + n]`
/// and a uniform weak composition of the remaining degree into `n` parts,
/// rejecting keys with no marked point or an unplaceable degree.
pub fn random_key(rng: &mut impl Rng, max_dim: u32) -> BracketKey {
    loop {
        let m = rng.gen_range(0..=5.min(max_dim));
        let n = rng.gen_range(0..=max_dim - m);
        if m + n == 0 {
            continue;
        }
        let c_tilde = rng.gen_range(0..=m + n);
        let rest = m + n - c_tilde;
        if n == 0 && rest != 0 {
            continue;
        }
        // stars and bars: n - 1 bars among rest + n - 1 slots
        let mut exps = vec![0u32; n as usize];
        if n > 0 {
            let slots = rest + n - 1;
            let mut bars: Vec<u32> = (0..slots).collect::<Vec<_>>();
            bars.shuffle(rng);
            let mut bars: Vec<u32> = bars.into_iter().take((n - 1) as usize).collect();
            bars.sort_unstable();
            let mut prev: i64 = -1;
            for (k, &b) in bars.iter().enumerate() {
                exps[k] = (i64::from(b) - prev - 1) as u32;
                prev = i64::from(b);
            }
            exps[n as usize - 1] = (i64::from(slots) - prev - 1) as u32;
        }
        return BracketKey::new(m, c_tilde, exps).expect("m + n >= 1");
    }
}

/// Grouped evaluator against the labeled per-point evaluator on random keys.
pub fn verify_confluence(samples: usize, seed: u64, max_dim: u32) -> VerificationReport {
    verify_confluence_with(&Standard::default(), samples, seed, max_dim)
}

pub fn verify_confluence_with(
    eval: &dyn Evaluator,
    samples: usize,
    seed: u64,
    max_dim: u32,
) -> VerificationReport {
    let mut rec = Recorder::new("confluence");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random = LabeledEvaluator::new(Policy::Random, seed ^ 0x5eed);
    let mut string_first = LabeledEvaluator::new(Policy::StringFirst, seed);
    let mut dilaton_first = LabeledEvaluator::new(Policy::DilatonFirst, seed);

    for _ in 0..samples {
        let key = random_key(&mut rng, max_dim);
        let mut shuffled = key.exps.as_slice().to_vec();
        shuffled.shuffle(&mut rng);

        let grouped = eval.bracket(&key);
        let labeled = random.eval(key.m, key.c_tilde, &shuffled);
        rec.check(
            || format!("{key} as labeled {shuffled:?}"),
            labeled,
            grouped.clone(),
        );

        let raw: Vec<i64> = shuffled.iter().map(|&c| i64::from(c)).collect();
        let canon = canonical_key(key.m, i64::from(key.c_tilde), &raw).expect("m + n >= 1");
        let canon_value = match canon {
            CanonicalKey::Key(k) => eval.bracket(&k),
            CanonicalKey::Zero => Rational::zero(),
        };
        rec.check(
            || format!("{key} canonicalized from {shuffled:?}"),
            grouped.clone(),
            canon_value,
        );

        if key.m == 0 {
            let s = string_first.eval(0, key.c_tilde, &shuffled);
            let d = dilaton_first.eval(0, key.c_tilde, &shuffled);
            rec.check(|| format!("{key} string-first vs dilaton-first"), s, d);
        }
    }
    rec.finish()
}

/// All compositions of `total` into `parts` nonnegative parts, in order.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut tail in compositions(total - first, parts - 1) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::from(1u32), |acc, k| acc * k)
}

/// Genus-zero closed form against pure string recursion, the genus-one
/// dilaton chain, and `lambda^2 = 0` spot checks.
pub fn verify_bases(limit: u32) -> VerificationReport {
    verify_bases_with(&Standard::default(), limit)
}

pub fn verify_bases_with(eval: &dyn Evaluator, limit: u32) -> VerificationReport {
    let mut rec = Recorder::new("bases");
    for n in 3..=limit as usize {
        for tuple in compositions(n as u32 - 3, n) {
            let expected = genus0_by_string(&tuple);
            let actual = eval.genus0(&ExponentMultiset::new(tuple.clone()));
            rec.check(|| format!("genus 0 {tuple:?}"), expected, actual);
        }
    }
    for n in 1..=limit as usize {
        let key = BracketKey::new(0, 0, vec![1; n]).expect("n >= 1");
        let expected = Rational::new(factorial(n as u64 - 1), BigInt::from(24));
        rec.check(
            || format!("genus 1 tau_1^{n}"),
            expected,
            eval.bracket(&key),
        );
    }
    // lambda^2 with the degree gate satisfied: sum c_j = n - 2
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a4bda);
    for _ in 0..10 {
        let n = rng.gen_range(2..=limit.max(2)) as usize;
        let mut exps = vec![0u32; n];
        for _ in 0..n - 2 {
            let k = rng.gen_range(0..n);
            exps[k] += 1;
        }
        let key = BracketKey::new(0, 2, exps).expect("n >= 2");
        rec.check(
            || format!("lambda^2 {key}"),
            Rational::zero(),
            eval.bracket(&key),
        );
    }
    rec.finish()
}

fn label_list(s: &LabelSet) -> String {
    s.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn replace(set: &LabelSet, remove: &[Label], add: Option<Label>) -> LabelSet {
    let mut out = set.clone();
    for l in remove {
        out.remove(l);
    }
    out.extend(add);
    out
}

/// Checks that `map` is a bijection `domain -> codomain` preserving `≺`
/// in both directions.
fn check_isomorphism(
    rec: &mut Recorder,
    what: &str,
    domain: &[RootedPartition],
    codomain: &[RootedPartition],
    map: impl Fn(&RootedPartition) -> Option<RootedPartition>,
) {
    let images: Vec<Option<RootedPartition>> = domain.iter().map(&map).collect();
    let target: BTreeSet<&RootedPartition> = codomain.iter().collect();
    let hit: BTreeSet<&RootedPartition> = images.iter().flatten().collect();
    let well_defined = images
        .iter()
        .all(|x| x.as_ref().is_some_and(|x| target.contains(x)));
    rec.check(
        || format!("{what}: images land in codomain"),
        true,
        well_defined,
    );
    rec.check(|| format!("{what}: injective"), domain.len(), hit.len());
    rec.check(|| format!("{what}: surjective"), codomain.len(), hit.len());
    if !well_defined {
        return;
    }
    let mut preserved = true;
    for (a, fa) in domain.iter().zip(&images) {
        for (b, fb) in domain.iter().zip(&images) {
            let (fa, fb) = (fa.as_ref().expect("checked"), fb.as_ref().expect("checked"));
            if precedes(a, b).ok() != precedes(fa, fb).ok() {
                preserved = false;
            }
        }
    }
    rec.check(
        || format!("{what}: order preserved both ways"),
        true,
        preserved,
    );
}

/// Exhaustive structural checks of the strata model for all `I ⊔ J` with
/// `2 <= |I| + |J| <= max_size`.
pub fn verify_strata(max_size: u32) -> VerificationReport {
    verify_strata_with(&StandardStrata, max_size)
}

pub fn verify_strata_with(ops: &dyn StrataOps, max_size: u32) -> VerificationReport {
    let mut rec = Recorder::new("strata");
    for size in 2..=max_size {
        for a in 0..=size {
            let (i_set, j_set) = Label::universe(a, size - a);
            check_split(&mut rec, ops, &i_set, &j_set);
        }
    }
    rec.finish()
}

fn check_split(rec: &mut Recorder, ops: &dyn StrataOps, i_set: &LabelSet, j_set: &LabelSet) {
    let split = format!("I={{{}}} J={{{}}}", label_list(i_set), label_list(j_set));
    let all = enumerate_a1_ij(i_set, j_set);
    let universe: LabelSet = i_set.union(j_set).copied().collect();

    if i_set.is_empty() {
        rec.check(|| format!("{split}: A_1(I,J) empty"), 0, all.len());
        return;
    }

    // unique minimal element
    let min = RootedPartition::minimal(universe.clone()).expect("|I ⊔ J| >= 2");
    let minimal: Vec<&RootedPartition> = all
        .iter()
        .filter(|x| !all.iter().any(|y| precedes(y, x).unwrap_or(false)))
        .collect();
    rec.check(
        || format!("{split}: unique minimum"),
        listing([&min]),
        listing(minimal),
    );

    // mu_ij
    for &i in i_set {
        for &j in j_set {
            let pair = RootedPartition::pair(&universe, i, j).expect("distinct labels");
            let domain: Vec<RootedPartition> = all
                .iter()
                .filter(|r| precedes(r, &pair).unwrap_or(false))
                .cloned()
                .collect();
            let codomain = enumerate_a1_ij(
                &replace(i_set, &[i], Some(Label::p(Kind::I))),
                &replace(j_set, &[j], None),
            );
            check_isomorphism(
                rec,
                &format!("{split} mu_{i}{j}"),
                &domain,
                &codomain,
                |r| ops.mu(r, i, j).ok(),
            );
        }
    }

    // eta_jj*
    let js: Vec<Label> = j_set.iter().copied().collect();
    for (x, &j) in js.iter().enumerate() {
        for &jstar in &js[x + 1..] {
            let pair = RootedPartition::pair(&universe, j, jstar).expect("distinct labels");
            let domain: Vec<RootedPartition> = all
                .iter()
                .filter(|r| {
                    **r != pair
                        && ((r.principal().contains(&j) && r.principal().contains(&jstar))
                            || r.bubbles()
                                .iter()
                                .any(|b| b.contains(&j) && b.contains(&jstar)))
                })
                .cloned()
                .collect();
            let codomain =
                enumerate_a1_ij(i_set, &replace(j_set, &[j, jstar], Some(Label::p(Kind::J))));
            check_isomorphism(
                rec,
                &format!("{split} eta_{j}{jstar}"),
                &domain,
                &codomain,
                |r| ops.eta(r, j, jstar).ok(),
            );
        }
    }

    // forgetful map and its fibers
    for &jstar in j_set {
        let what = format!("{split} forget {jstar}");
        let images: Vec<Option<RootedPartition>> =
            all.iter().map(|r| ops.forget(r, jstar).ok()).collect();
        let reduced_j = replace(j_set, &[jstar], None);
        let targets = enumerate_a1_ij(i_set, &reduced_j);

        let mut covered: Vec<RootedPartition> = Vec::new();
        for rho_bar in &targets {
            let Ok(fiber) = ops.fiber(rho_bar, jstar) else {
                rec.check(
                    || format!("{what}: fiber of {rho_bar} defined"),
                    true,
                    false,
                );
                continue;
            };
            let listed: BTreeSet<&RootedPartition> = fiber.iter().collect();
            let preimage: BTreeSet<&RootedPartition> = all
                .iter()
                .zip(&images)
                .filter(|(_, img)| img.as_ref() == Some(rho_bar))
                .map(|(r, _)| r)
                .collect();
            rec.check(
                || format!("{what}: fiber of {rho_bar} equals preimage"),
                listing(preimage),
                listing(listed),
            );
            let expected_len = 1
                + rho_bar.bubbles().len()
                + rho_bar
                    .principal()
                    .iter()
                    .filter(|l| l.kind == Kind::I)
                    .count();
            rec.check(
                || format!("{what}: |fiber of {rho_bar}|"),
                expected_len,
                fiber.len(),
            );
            let top_max = fiber
                .lower()
                .all(|x| precedes(x, &fiber.top).unwrap_or(false));
            rec.check(
                || format!("{what}: top of fiber over {rho_bar} is largest"),
                true,
                top_max,
            );
            let antichain = fiber
                .lower()
                .all(|x| fiber.lower().all(|y| !precedes(x, y).unwrap_or(true)));
            rec.check(
                || format!("{what}: lower fiber over {rho_bar} is an antichain"),
                true,
                antichain,
            );
            covered.extend(fiber.iter().cloned());
        }

        let sentinel = RootedPartition::sentinel(replace(&universe, &[jstar], None));
        let over_sentinel: Vec<RootedPartition> = all
            .iter()
            .zip(&images)
            .filter(|(_, img)| img.as_ref() == Some(&sentinel))
            .map(|(r, _)| r.clone())
            .collect();
        rec.check(
            || format!("{what}: sentinel fiber size"),
            i_set.len(),
            over_sentinel.len(),
        );
        let expected_pairs: BTreeSet<RootedPartition> = i_set
            .iter()
            .map(|&i| RootedPartition::pair(&universe, i, jstar).expect("distinct labels"))
            .collect();
        let over_sentinel_set: BTreeSet<RootedPartition> = over_sentinel.iter().cloned().collect();
        rec.check(
            || format!("{what}: sentinel fiber is the pair strata"),
            listing(&expected_pairs),
            listing(&over_sentinel_set),
        );

        covered.extend(over_sentinel);
        let distinct: BTreeSet<&RootedPartition> = covered.iter().collect();
        let whole: BTreeSet<&RootedPartition> = all.iter().collect();
        rec.check(
            || format!("{what}: fibers are disjoint"),
            covered.len(),
            distinct.len(),
        );
        rec.check(
            || format!("{what}: fibers cover A_1(I,J)"),
            listing(whole),
            listing(distinct),
        );

        let mut compatible = true;
        for (x, fx) in all.iter().zip(&images) {
            for (y, fy) in all.iter().zip(&images) {
                if let (Some(fx), Some(fy)) = (fx, fy) {
                    if fx != fy
                        && precedes(x, y).unwrap_or(false)
                        && !precedes(fx, fy).unwrap_or(false)
                    {
                        compatible = false;
                    }
                }
            }
        }
        rec.check(|| format!("{what}: order compatible"), true, compatible);
    }
}

/// Sorted rendering of a set of strata, comparable and printable.
#[derive(PartialEq)]
struct Listing(Vec<String>);

fn listing<'a>(items: impl IntoIterator<Item = &'a RootedPartition>) -> Listing {
    let mut v: Vec<String> = items.into_iter().map(ToString::to_string).collect();
    v.sort();
    Listing(v)
}

impl std::fmt::Display for Listing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}]", self.0.join(", "))
    }
}
