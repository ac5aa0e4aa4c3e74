use std::collections::BTreeSet;
use std::fmt;

/// Whether a marked point belongs to `I` or to `J`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    I,
    J,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LabelId {
    Point(u32),
    /// Attaching point on the principal side of a collapsed bubble.
    P,
    /// Attaching point on the bubble side.
    Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub kind: Kind,
    pub id: LabelId,
}

pub type LabelSet = BTreeSet<Label>;

impl Label {
    pub const fn i(n: u32) -> Self {
        Self {
            kind: Kind::I,
            id: LabelId::Point(n),
        }
    }

    pub const fn j(n: u32) -> Self {
        Self {
            kind: Kind::J,
            id: LabelId::Point(n),
        }
    }

    pub const fn p(kind: Kind) -> Self {
        Self {
            kind,
            id: LabelId::P,
        }
    }

    pub const fn q(kind: Kind) -> Self {
        Self {
            kind,
            id: LabelId::Q,
        }
    }

    /// `{i1..i_a}` and `{j1..j_b}`.
    pub fn universe(i_count: u32, j_count: u32) -> (LabelSet, LabelSet) {
        (
            (1..=i_count).map(Self::i).collect(),
            (1..=j_count).map(Self::j).collect(),
        )
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            Kind::I => 'i',
            Kind::J => 'j',
        };
        match self.id {
            LabelId::Point(n) => write!(f, "{k}{n}"),
            LabelId::P => write!(f, "p{k}"),
            LabelId::Q => write!(f, "q{k}"),
        }
    }
}
