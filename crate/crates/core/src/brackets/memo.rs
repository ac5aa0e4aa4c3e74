use std::collections::HashMap;
use std::sync::RwLock;

use thiserror::Error;

use super::BracketKey;
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("memo conflict for {key}: stored {stored}, offered {offered}")]
pub struct MemoConflict {
    pub key: BracketKey,
    pub stored: Rational,
    pub offered: Rational,
}

/// Memo table from canonical keys to their exact values.
///
/// Lookups and insertions are atomic with respect to each other, so one cache
/// may be shared across threads. Two threads may race to compute the same
/// key; the second insert is then a no-op as long as the values agree.
#[derive(Debug, Default)]
pub struct MemoCache {
    map: RwLock<HashMap<BracketKey, Rational>>,
}

impl MemoCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, key: &BracketKey) -> Option<Rational> {
        self.map
            .read()
            .expect("memo lock poisoned")
            .get(key)
            .cloned()
    }

    /// Inserts `value`; a key is never stored with two different values.
    pub fn insert(&self, key: BracketKey, value: Rational) -> Result<(), Box<MemoConflict>> {
        let mut map = self.map.write().expect("memo lock poisoned");
        match map.get(&key) {
            Some(stored) if *stored != value => Err(Box::new(MemoConflict {
                key,
                stored: stored.clone(),
                offered: value,
            })),
            Some(_) => Ok(()),
            None => {
                map.insert(key, value);
                Ok(())
            }
        }
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("memo lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Snapshot of all entries in key order.
    pub fn entries(&self) -> Vec<(BracketKey, Rational)> {
        let map = self.map.read().expect("memo lock poisoned");
        let mut out: Vec<_> = map.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn insert_then_get() {
        let cache = MemoCache::new();
        let k = BracketKey::new(2, 2, vec![1]).unwrap();
        assert!(cache.get(&k).is_none());
        cache.insert(k.clone(), r(1, 12)).unwrap();
        assert_eq!(cache.get(&k), Some(r(1, 12)));
        // same value again is fine
        cache.insert(k.clone(), r(2, 24)).unwrap();
        assert_eq!(cache.len(), 1);
    }

    #[test]
    fn conflicting_insert_rejected() {
        let cache = MemoCache::new();
        let k = BracketKey::new(1, 1, vec![]).unwrap();
        cache.insert(k.clone(), r(1, 24)).unwrap();
        let err = cache.insert(k.clone(), r(1, 12)).unwrap_err();
        assert_eq!(err.stored, r(1, 24));
        assert_eq!(cache.get(&k), Some(r(1, 24)));
    }
}
