use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use super::{Matroid, Structure};

/// Wraps an oracle with query counters and a bounded rank memo.
///
/// The memo is cleared wholesale once it holds `capacity` entries.
#[derive(Debug)]
pub struct CountingMatroid<M> {
    inner: M,
    capacity: usize,
    cache: Mutex<HashMap<Vec<usize>, usize>>,
    independence_queries: AtomicU64,
    rank_queries: AtomicU64,
    cache_hits: AtomicU64,
}

impl<M: Matroid> CountingMatroid<M> {
    pub fn new(inner: M, capacity: usize) -> Self {
        Self {
            inner,
            capacity,
            cache: Mutex::new(HashMap::new()),
            independence_queries: AtomicU64::new(0),
            rank_queries: AtomicU64::new(0),
            cache_hits: AtomicU64::new(0),
        }
    }

    pub fn inner(&self) -> &M {
        &self.inner
    }

    pub fn independence_queries(&self) -> u64 {
        self.independence_queries.load(Ordering::Relaxed)
    }

    pub fn rank_queries(&self) -> u64 {
        self.rank_queries.load(Ordering::Relaxed)
    }

    pub fn cache_hits(&self) -> u64 {
        self.cache_hits.load(Ordering::Relaxed)
    }
}

impl<M: Matroid> Matroid for CountingMatroid<M> {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        self.independence_queries.fetch_add(1, Ordering::Relaxed);
        self.inner.is_independent(set)
    }

    fn rank(&self, set: &[usize]) -> usize {
        self.rank_queries.fetch_add(1, Ordering::Relaxed);
        let mut key = set.to_vec();
        key.sort_unstable();
        if let Some(&r) = self.cache.lock().unwrap().get(&key) {
            self.cache_hits.fetch_add(1, Ordering::Relaxed);
            return r;
        }
        let r = self.inner.rank(&key);
        let mut cache = self.cache.lock().unwrap();
        if cache.len() >= self.capacity {
            cache.clear();
        }
        cache.insert(key, r);
        r
    }

    fn structure(&self) -> Structure {
        self.inner.structure()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::UniformMatroid;

    #[test]
    fn counts_and_memoizes() {
        let m = CountingMatroid::new(UniformMatroid::new(4, 2).unwrap(), 2);
        assert_eq!(m.rank(&[0, 1, 2]), 2);
        assert_eq!(m.rank(&[2, 1, 0]), 2);
        assert_eq!(m.cache_hits(), 1);
        m.rank(&[0]);
        m.rank(&[1]);
        assert_eq!(m.rank_queries(), 4);
        assert!(m.is_independent(&[0, 1]));
        assert_eq!(m.independence_queries(), 1);
    }
}
