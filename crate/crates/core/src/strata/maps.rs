use std::collections::BTreeSet;

use super::partition::RootedPartition as RP;
use super::{enumerate_a1_ij, Kind, Label, LabelSet, StrataError};

fn require(rho: &RP, label: Label) -> Result<(), StrataError> {
    if rho.contains(label) {
        Ok(())
    } else {
        Err(StrataError::MissingLabel(label))
    }
}

fn require_kind(label: Label, expected: Kind) -> Result<(), StrataError> {
    if label.kind == expected {
        Ok(())
    } else {
        Err(StrataError::WrongKind { label, expected })
    }
}

/// Replaces `{a, b}` inside `bubble` by `p`, or drops the bubble and puts `p`
/// on the principal component when the bubble is exactly `{a, b}`.
fn collapse_in_bubble(rho: &RP, bubble: &LabelSet, a: Label, b: Label, p: Label) -> RP {
    let mut principal = rho.principal().clone();
    let mut bubbles: BTreeSet<LabelSet> = rho
        .bubbles()
        .iter()
        .filter(|x| *x != bubble)
        .cloned()
        .collect();
    if bubble.len() == 2 {
        principal.insert(p);
    } else {
        let mut shrunk = bubble.clone();
        shrunk.remove(&a);
        shrunk.remove(&b);
        shrunk.insert(p);
        bubbles.insert(shrunk);
    }
    RP::from_parts_unchecked(principal, bubbles)
}

/// `μ_ij`: restricts a stratum `ϱ ≺ ϱ_ij` to the divisor `ϱ_ij`, where the
/// bubble `{q, i, j}` is collapsed to the attaching point `p` (I-type).
pub fn mu(rho: &RP, i: Label, j: Label) -> Result<RP, StrataError> {
    require(rho, i)?;
    require(rho, j)?;
    let p = Label::p(Kind::I);
    if rho.contains(p) {
        return Err(StrataError::LabelClash(p));
    }
    let bubble = rho
        .bubbles()
        .iter()
        .find(|b| b.contains(&i) && b.contains(&j))
        .ok_or(StrataError::NotTogether(i, j))?;
    if bubble.len() == 2 && rho.bubbles().len() == 1 {
        return Err(StrataError::PairStratum(i, j));
    }
    Ok(collapse_in_bubble(rho, bubble, i, j, p))
}

/// `η_jj*` for two `J`-points lying on a common component; `p` is J-type.
///
/// A bubble equal to `{j, j*}` carries no `I`-point, so such input is not a
/// stratum of `A_1(I,J)` and is rejected.
pub fn eta(rho: &RP, j: Label, jstar: Label) -> Result<RP, StrataError> {
    require_kind(j, Kind::J)?;
    require_kind(jstar, Kind::J)?;
    require(rho, j)?;
    require(rho, jstar)?;
    if j == jstar {
        return Err(StrataError::NotTogether(j, jstar));
    }
    let p = Label::p(Kind::J);
    if rho.contains(p) {
        return Err(StrataError::LabelClash(p));
    }
    if rho.principal().contains(&j) && rho.principal().contains(&jstar) {
        let mut principal = rho.principal().clone();
        principal.remove(&j);
        principal.remove(&jstar);
        principal.insert(p);
        return Ok(RP::from_parts_unchecked(principal, rho.bubbles().clone()));
    }
    let bubble = rho
        .bubbles()
        .iter()
        .find(|b| b.contains(&j) && b.contains(&jstar))
        .ok_or(StrataError::NotTogether(j, jstar))?;
    if bubble.len() == 2 {
        return Err(if rho.bubbles().len() == 1 {
            StrataError::PairStratum(j, jstar)
        } else {
            StrataError::BubbleWithoutI(j, jstar)
        });
    }
    Ok(collapse_in_bubble(rho, bubble, j, jstar, p))
}

/// The forgetful map on indices: drops `j*` and stabilizes.
///
/// A bubble left with one label dissolves into the principal component; the
/// result can be the no-bubble sentinel.
pub fn forget_stratum(rho: &RP, jstar: Label) -> Result<RP, StrataError> {
    require_kind(jstar, Kind::J)?;
    require(rho, jstar)?;
    if rho.is_sentinel() {
        return Err(StrataError::Sentinel);
    }
    let mut principal = rho.principal().clone();
    if principal.remove(&jstar) {
        return Ok(RP::from_parts_unchecked(principal, rho.bubbles().clone()));
    }
    let bubble = rho.bubble_of(jstar).expect("label is present");
    let mut bubbles = rho.bubbles().clone();
    bubbles.remove(bubble);
    let mut shrunk = bubble.clone();
    shrunk.remove(&jstar);
    if shrunk.len() == 1 {
        principal.extend(shrunk);
    } else {
        bubbles.insert(shrunk);
    }
    Ok(RP::from_parts_unchecked(principal, bubbles))
}

/// The preimage of a stratum under [`forget_stratum`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    /// `j*` on the principal component; the largest element of the fiber.
    pub top: RP,
    /// `j*` added to each bubble.
    pub onto_bubbles: Vec<RP>,
    /// A new bubble `{i, j*}` for each principal I-point `i`.
    pub new_pairs: Vec<RP>,
}

impl Fiber {
    pub fn len(&self) -> usize {
        1 + self.onto_bubbles.len() + self.new_pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> impl Iterator<Item = &RP> {
        std::iter::once(&self.top)
            .chain(&self.onto_bubbles)
            .chain(&self.new_pairs)
    }

    /// The `onto_bubbles` and `new_pairs` elements.
    pub fn lower(&self) -> impl Iterator<Item = &RP> {
        self.onto_bubbles.iter().chain(&self.new_pairs)
    }
}

/// `f^{-1}(rho_bar)` for `rho_bar ∈ A_1(I, J - {j*})`.
pub fn fiber(rho_bar: &RP, jstar: Label) -> Result<Fiber, StrataError> {
    require_kind(jstar, Kind::J)?;
    if rho_bar.contains(jstar) {
        return Err(StrataError::LabelClash(jstar));
    }
    if rho_bar.is_sentinel() {
        return Err(StrataError::Sentinel);
    }

    let mut top_principal = rho_bar.principal().clone();
    top_principal.insert(jstar);
    let top = RP::from_parts_unchecked(top_principal, rho_bar.bubbles().clone());

    let onto_bubbles = rho_bar
        .bubbles()
        .iter()
        .map(|bubble| {
            let mut bubbles = rho_bar.bubbles().clone();
            bubbles.remove(bubble);
            let mut grown = bubble.clone();
            grown.insert(jstar);
            bubbles.insert(grown);
            RP::from_parts_unchecked(rho_bar.principal().clone(), bubbles)
        })
        .collect();

    let new_pairs = rho_bar
        .principal()
        .iter()
        .filter(|l| l.kind == Kind::I)
        .map(|&i| {
            let mut principal = rho_bar.principal().clone();
            principal.remove(&i);
            let mut bubbles = rho_bar.bubbles().clone();
            bubbles.insert(LabelSet::from([i, jstar]));
            RP::from_parts_unchecked(principal, bubbles)
        })
        .collect();

    Ok(Fiber {
        top,
        onto_bubbles,
        new_pairs,
    })
}

/// Number of strata of `A_1(I,J)` sent to the no-bubble sentinel when `j*`
/// is forgotten, counted by brute force. These are the pair strata
/// `ϱ_{i j*}`, one per `i ∈ I`.
pub fn sentinel_fiber_count(
    i_set: &LabelSet,
    j_set: &LabelSet,
    jstar: Label,
) -> Result<usize, StrataError> {
    if !j_set.contains(&jstar) {
        return Err(StrataError::MissingLabel(jstar));
    }
    let mut count = 0;
    for rho in enumerate_a1_ij(i_set, j_set) {
        if forget_stratum(&rho, jstar)?.is_sentinel() {
            count += 1;
        }
    }
    Ok(count)
}
