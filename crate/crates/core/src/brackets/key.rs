use std::fmt;

use serde::{Deserialize, Serialize};

use super::BracketError;

/// The psi-exponents `(c_j)` of the `J`-points, stored in descending order.
///
/// Marked points are interchangeable, so two tuples that agree up to
/// permutation give the same multiset.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<u32>", from = "Vec<u32>")]
pub struct ExponentMultiset(Vec<u32>);

impl ExponentMultiset {
    pub fn new(mut exps: Vec<u32>) -> Self {
        exps.sort_unstable_by(|a, b| b.cmp(a));
        Self(exps)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&c| u64::from(c)).sum()
    }

    pub fn contains(&self, value: u32) -> bool {
        self.0.contains(&value)
    }

    /// Removes one copy of `value`. Returns `None` if it is absent.
    pub fn without(&self, value: u32) -> Option<Self> {
        let pos = self.0.iter().position(|&c| c == value)?;
        let mut exps = self.0.clone();
        exps.remove(pos);
        Some(Self(exps))
    }

    /// Replaces one copy of `value` (which must be positive) by `value - 1`.
    pub fn decremented(&self, value: u32) -> Option<Self> {
        if value == 0 {
            return None;
        }
        let pos = self.0.iter().position(|&c| c == value)?;
        let mut exps = self.0.clone();
        exps[pos] -= 1;
        Some(Self::new(exps))
    }

    pub fn with(&self, value: u32) -> Self {
        let mut exps = self.0.clone();
        exps.push(value);
        Self::new(exps)
    }

    /// Distinct values with their multiplicities, largest value first.
    pub fn grouped(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &c in &self.0 {
            match out.last_mut() {
                Some((v, k)) if *v == c => *k += 1,
                _ => out.push((c, 1)),
            }
        }
        out
    }
}

impl From<Vec<u32>> for ExponentMultiset {
    fn from(exps: Vec<u32>) -> Self {
        Self::new(exps)
    }
}

impl From<ExponentMultiset> for Vec<u32> {
    fn from(exps: ExponentMultiset) -> Self {
        exps.0
    }
}

impl fmt::Display for ExponentMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Identifies `<c_tilde; exps>_{(m, len(exps))}`.
///
/// The key is structurally canonical (sorted exponents, `m + n >= 1`) but may
/// fail the degree gate; such keys evaluate to zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BracketKey {
    pub m: u32,
    pub c_tilde: u32,
    pub exps: ExponentMultiset,
}

impl BracketKey {
    pub fn new(
        m: u32,
        c_tilde: u32,
        exps: impl Into<ExponentMultiset>,
    ) -> Result<Self, BracketError> {
        let exps = exps.into();
        if m == 0 && exps.is_empty() {
            return Err(BracketError::UndefinedModuliSpace);
        }
        Ok(Self { m, c_tilde, exps })
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u64 {
        u64::from(self.c_tilde) + self.exps.sum()
    }

    pub fn dim(&self) -> u64 {
        u64::from(self.m) + self.exps.len() as u64
    }

    /// Top intersections vanish unless the total degree equals the dimension.
    pub fn passes_gate(&self) -> bool {
        self.degree() == self.dim()
    }
}

impl fmt::Display for BracketKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{};{};{}}}", self.m, self.c_tilde, self.exps)
    }
}

/// A bracket that is either a real key or identically zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CanonicalKey {
    Key(BracketKey),
    Zero,
}

impl CanonicalKey {
    pub fn key(&self) -> Option<&BracketKey> {
        match self {
            CanonicalKey::Key(k) => Some(k),
            CanonicalKey::Zero => None,
        }
    }
}

/// Canonicalizes raw bracket data.
///
/// Negative exponents and keys with degree different from dimension collapse
/// to [`CanonicalKey::Zero`]. `m + n = 0` is an error, not a zero.
pub fn canonical_key(m: u32, c_tilde: i64, exps: &[i64]) -> Result<CanonicalKey, BracketError> {
    if m == 0 && exps.is_empty() {
        return Err(BracketError::UndefinedModuliSpace);
    }
    let Some(key) = structural_key(m, c_tilde, exps) else {
        return Ok(CanonicalKey::Zero);
    };
    if key.passes_gate() {
        Ok(CanonicalKey::Key(key))
    } else {
        Ok(CanonicalKey::Zero)
    }
}

/// Sorts without applying the degree gate. `None` when something is negative.
pub(crate) fn structural_key(m: u32, c_tilde: i64, exps: &[i64]) -> Option<BracketKey> {
    let c_tilde = u32::try_from(c_tilde).ok()?;
    let exps = exps
        .iter()
        .map(|&c| u32::try_from(c).ok())
        .collect::<Option<Vec<_>>>()?;
    Some(BracketKey {
        m,
        c_tilde,
        exps: ExponentMultiset::new(exps),
    })
}
