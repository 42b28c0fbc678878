//! Per-`n` variable tables and write-once caches of expensive values.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock};

use crate::combinatorics::{Perm, SubsetIndex};
use crate::error::{Error, Result};
use crate::rmatrix::TensorVector;
use crate::symalg::VarTable;
use crate::{Poly, RatF};

/// Largest `n` whose variables fit in a [`VarTable`].
pub const MAX_N: usize = 5;

/// Map from keys to lazily computed values; each value is computed once even
/// under concurrent requests.
pub struct Cache<K, V> {
    map: Mutex<HashMap<K, Arc<OnceLock<V>>>>,
}

impl<K: Hash + Eq + Clone, V: Clone> Cache<K, V> {
    pub fn new() -> Self {
        Cache { map: Mutex::new(HashMap::new()) }
    }

    pub fn get_or_init(&self, key: &K, init: impl FnOnce() -> V) -> V {
        let cell = {
            let mut map = self.map.lock().expect("cache lock poisoned");
            map.entry(key.clone()).or_default().clone()
        };
        cell.get_or_init(init).clone()
    }

    pub fn len(&self) -> usize {
        self.map.lock().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl<K: Hash + Eq + Clone, V: Clone> Default for Cache<K, V> {
    fn default() -> Self {
        Self::new()
    }
}

/// Everything attached to a fixed `n`: the variable table (with `t₁..t_n`
/// registered so every `k` shares it) and the caches.
pub struct Context {
    n: usize,
    vt: VarTable,
    pub(crate) weights: Cache<(Perm, SubsetIndex), Poly>,
    pub(crate) restricted: Cache<(Perm, SubsetIndex, SubsetIndex), Poly>,
    pub(crate) wminus_at: Cache<(SubsetIndex, SubsetIndex), RatF>,
    pub(crate) wplus_at: Cache<(Perm, SubsetIndex, SubsetIndex), RatF>,
    pub(crate) xi: Cache<SubsetIndex, TensorVector>,
}

impl Context {
    fn new(n: usize) -> Result<Self> {
        Ok(Context {
            n,
            vt: VarTable::new(n, n)?,
            weights: Cache::new(),
            restricted: Cache::new(),
            wminus_at: Cache::new(),
            wplus_at: Cache::new(),
            xi: Cache::new(),
        })
    }

    /// The shared context for `n`.
    pub fn get(n: usize) -> Result<&'static Context> {
        static CONTEXTS: OnceLock<Vec<OnceLock<Context>>> = OnceLock::new();
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidParameter(format!("n = {n} outside 1..={MAX_N}")));
        }
        let slots = CONTEXTS.get_or_init(|| (0..=MAX_N).map(|_| OnceLock::new()).collect());
        Ok(slots[n].get_or_init(|| Context::new(n).expect("n is within the variable budget")))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vars(&self) -> &VarTable {
        &self.vt
    }

    pub fn lambda(&self) -> Poly {
        Poly::var(self.vt.lambda())
    }

    pub fn y(&self) -> Poly {
        Poly::var(self.vt.y())
    }

    pub fn w(&self) -> Poly {
        Poly::var(self.vt.w())
    }

    pub fn z(&self, i: usize) -> Poly {
        Poly::var(self.vt.z(i))
    }

    pub fn t(&self, a: usize) -> Poly {
        Poly::var(self.vt.t(a))
    }
}
