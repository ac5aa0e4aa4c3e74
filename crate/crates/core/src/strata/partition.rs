use std::collections::BTreeSet;
use std::fmt;

use super::{Label, LabelSet, StrataError};

/// A stratum `(I_P, {I_k : k in K})`.
///
/// Bubbles are anonymous, so two strata are equal iff their principal sets
/// and bubble collections agree. The derived order compares the sorted
/// principal labels first and then the bubbles by smallest label; it is the
/// canonical tie-break used by [`super::linear_extension`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootedPartition {
    principal: LabelSet,
    bubbles: BTreeSet<LabelSet>,
}

impl RootedPartition {
    /// Checks disjointness and that every bubble has at least two labels.
    /// An empty bubble collection gives the no-bubble sentinel.
    pub fn new(principal: LabelSet, bubbles: BTreeSet<LabelSet>) -> Result<Self, StrataError> {
        let mut seen = principal.clone();
        for bubble in &bubbles {
            if bubble.len() < 2 {
                return Err(StrataError::InvalidPartition(format!(
                    "bubble with {} label(s)",
                    bubble.len()
                )));
            }
            for label in bubble {
                if !seen.insert(*label) {
                    return Err(StrataError::InvalidPartition(format!(
                        "{label} appears twice"
                    )));
                }
            }
        }
        Ok(Self { principal, bubbles })
    }

    /// `(universe, {})`: the extra top element of the forgetful map's target.
    pub fn sentinel(universe: LabelSet) -> Self {
        Self {
            principal: universe,
            bubbles: BTreeSet::new(),
        }
    }

    /// `(∅, {universe})`, the most degenerate stratum.
    pub fn minimal(universe: LabelSet) -> Result<Self, StrataError> {
        Self::new(LabelSet::new(), BTreeSet::from([universe]))
    }

    /// `ϱ_ab`: the single bubble `{a, b}` with everything else principal.
    pub fn pair(universe: &LabelSet, a: Label, b: Label) -> Result<Self, StrataError> {
        for l in [a, b] {
            if !universe.contains(&l) {
                return Err(StrataError::MissingLabel(l));
            }
        }
        if a == b {
            return Err(StrataError::InvalidPartition(format!(
                "{a} paired with itself"
            )));
        }
        let mut principal = universe.clone();
        principal.remove(&a);
        principal.remove(&b);
        Self::new(principal, BTreeSet::from([LabelSet::from([a, b])]))
    }

    pub(crate) fn from_parts_unchecked(principal: LabelSet, bubbles: BTreeSet<LabelSet>) -> Self {
        Self { principal, bubbles }
    }

    pub fn principal(&self) -> &LabelSet {
        &self.principal
    }

    pub fn bubbles(&self) -> &BTreeSet<LabelSet> {
        &self.bubbles
    }

    pub fn is_sentinel(&self) -> bool {
        self.bubbles.is_empty()
    }

    pub fn universe(&self) -> LabelSet {
        let mut all = self.principal.clone();
        for bubble in &self.bubbles {
            all.extend(bubble.iter().copied());
        }
        all
    }

    pub fn contains(&self, label: Label) -> bool {
        self.principal.contains(&label) || self.bubbles.iter().any(|b| b.contains(&label))
    }

    pub fn bubble_of(&self, label: Label) -> Option<&LabelSet> {
        self.bubbles.iter().find(|b| b.contains(&label))
    }

    /// Membership test for `A_1(I,J)` given the set `I`.
    pub fn every_bubble_meets(&self, set: &LabelSet) -> bool {
        self.bubbles.iter().all(|b| !b.is_disjoint(set))
    }

    /// Canonical text form, e.g. `(i1 j2 | {i3 i4} {i5 j1})`.
    pub fn serialize(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for RootedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &LabelSet| {
            s.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(f, "({} |", join(&self.principal))?;
        for bubble in &self.bubbles {
            write!(f, " {{{}}}", join(bubble))?;
        }
        write!(f, ")")
    }
}

/// All set partitions of `elems` into blocks of size at least two.
fn partitions_min2(elems: &[Label]) -> Vec<Vec<LabelSet>> {
    let Some((&first, rest)) = elems.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    // companions of `first`: every nonempty subset of `rest`
    for mask in 1u32..(1 << rest.len()) {
        let mut block = LabelSet::from([first]);
        let mut remaining = Vec::with_capacity(rest.len());
        for (k, &l) in rest.iter().enumerate() {
            if mask & (1 << k) != 0 {
                block.insert(l);
            } else {
                remaining.push(l);
            }
        }
        for mut tail in partitions_min2(&remaining) {
            tail.push(block.clone());
            out.push(tail);
        }
    }
    out
}

/// `A_1(universe)`: every `(I_P, {I_k})` with at least one bubble, all bubbles
/// of size at least two, covering the universe disjointly. Sorted.
pub fn enumerate_a1(universe: &LabelSet) -> Vec<RootedPartition> {
    let labels: Vec<Label> = universe.iter().copied().collect();
    let mut out = Vec::new();
    for mask in 1u32..(1 << labels.len()) {
        if mask.count_ones() < 2 {
            continue;
        }
        let (on_bubbles, principal): (Vec<_>, Vec<_>) = labels
            .iter()
            .enumerate()
            .partition(|(k, _)| mask & (1 << k) != 0);
        let on_bubbles: Vec<Label> = on_bubbles.into_iter().map(|(_, &l)| l).collect();
        let principal: LabelSet = principal.into_iter().map(|(_, &l)| l).collect();
        for blocks in partitions_min2(&on_bubbles) {
            out.push(RootedPartition::from_parts_unchecked(
                principal.clone(),
                blocks.into_iter().collect(),
            ));
        }
    }
    out.sort();
    out
}

/// `A_1(I,J)`: the strata of `A_1(I ⊔ J)` whose every bubble meets `I`.
/// Empty when `I` is empty.
pub fn enumerate_a1_ij(i_set: &LabelSet, j_set: &LabelSet) -> Vec<RootedPartition> {
    if i_set.is_empty() {
        return Vec::new();
    }
    let universe: LabelSet = i_set.union(j_set).copied().collect();
    enumerate_a1(&universe)
        .into_iter()
        .filter(|r| r.every_bubble_meets(i_set))
        .collect()
}
