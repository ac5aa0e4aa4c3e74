use std::collections::{BTreeSet, HashMap};

use super::{RootedPartition, StrataError};

/// `a ≺ b`: `a ≠ b` and every bubble of `b` sits inside some bubble of `a`.
///
/// Bubbles of `a` are disjoint, so the bubble map `K_b -> K_a` is unique when
/// it exists. The no-bubble sentinel lies above every stratum.
pub fn precedes(a: &RootedPartition, b: &RootedPartition) -> Result<bool, StrataError> {
    if a.universe() != b.universe() {
        return Err(StrataError::MismatchedUniverse);
    }
    Ok(precedes_unchecked(a, b))
}

pub(crate) fn precedes_unchecked(a: &RootedPartition, b: &RootedPartition) -> bool {
    a != b
        && b.bubbles()
            .iter()
            .all(|small| a.bubbles().iter().any(|big| small.is_subset(big)))
}

/// A total order on a set of strata extending `≺`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearExtension(Vec<RootedPartition>);

impl LinearExtension {
    pub fn as_slice(&self) -> &[RootedPartition] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<RootedPartition> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn position(&self, r: &RootedPartition) -> Option<usize> {
        self.0.iter().position(|x| x == r)
    }

    /// `ϱ - 1`: the predecessor in this order, `None` for the first element.
    pub fn predecessor(&self, r: &RootedPartition) -> Option<&RootedPartition> {
        let k = self.position(r)?;
        k.checked_sub(1).map(|k| &self.0[k])
    }

    /// Pairwise check against `≺` and the extra constraints.
    pub fn respects(&self, constraints: &[(RootedPartition, RootedPartition)]) -> bool {
        let pos: HashMap<&RootedPartition, usize> =
            self.0.iter().enumerate().map(|(k, r)| (r, k)).collect();
        let order_ok = self.0.iter().enumerate().all(|(k, a)| {
            self.0[..k]
                .iter()
                .all(|earlier| !precedes_unchecked(a, earlier))
        });
        order_ok
            && constraints
                .iter()
                .all(|(x, y)| matches!((pos.get(x), pos.get(y)), (Some(px), Some(py)) if px < py))
    }
}

/// Topological order of `strata` respecting `≺` and every `(before, after)`
/// constraint. Among the available strata the smallest in canonical order
/// is always taken next, so the result is the lexicographically first valid
/// order.
pub fn linear_extension(
    strata: &[RootedPartition],
    constraints: &[(RootedPartition, RootedPartition)],
) -> Result<LinearExtension, StrataError> {
    let nodes: Vec<RootedPartition> = strata
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if let Some(first) = nodes.first() {
        let u = first.universe();
        if nodes.iter().any(|r| r.universe() != u) {
            return Err(StrataError::MismatchedUniverse);
        }
    }
    let index: HashMap<&RootedPartition, usize> =
        nodes.iter().enumerate().map(|(k, r)| (r, k)).collect();

    let n = nodes.len();
    let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for a in 0..n {
        for b in 0..n {
            if precedes_unchecked(&nodes[a], &nodes[b]) {
                succ[a].insert(b);
            }
        }
    }
    for (x, y) in constraints {
        let find = |r: &RootedPartition| {
            index
                .get(r)
                .copied()
                .ok_or_else(|| StrataError::UnknownStratum(r.to_string()))
        };
        let (a, b) = (find(x)?, find(y)?);
        if a == b {
            return Err(StrataError::Cycle(x.to_string()));
        }
        succ[a].insert(b);
    }

    let mut indegree = vec![0usize; n];
    for targets in &succ {
        for &b in targets {
            indegree[b] += 1;
        }
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&k| indegree[k] == 0).collect();
    let mut out = Vec::with_capacity(n);
    while let Some(k) = ready.pop_first() {
        out.push(nodes[k].clone());
        for &b in &succ[k] {
            indegree[b] -= 1;
            if indegree[b] == 0 {
                ready.insert(b);
            }
        }
    }
    if out.len() < n {
        let stuck = (0..n)
            .find(|&k| indegree[k] > 0)
            .expect("some node is stuck");
        return Err(StrataError::Cycle(nodes[stuck].to_string()));
    }
    Ok(LinearExtension(out))
}
