use std::collections::hash_map::RandomState;
use std::hash::BuildHasher;
use std::num::NonZeroUsize;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use lru::LruCache;
use serde_json::{json, Value};

pub const DEFAULT_CAPACITY: usize = 64;

#[derive(Clone, Debug)]
struct Session {
    kind: String,
    instance: Value,
    last: Value,
}

/// Uploaded instances and their most recent verdicts, keyed by opaque token.
/// Least recently used sessions are evicted once `capacity` is reached.
pub struct SessionStore {
    table: Mutex<LruCache<String, Session>>,
    counter: AtomicU64,
    salt: RandomState,
}

impl SessionStore {
    pub fn new(capacity: usize) -> Self {
        let cap = NonZeroUsize::new(capacity.max(1)).unwrap();
        SessionStore { table: Mutex::new(LruCache::new(cap)), counter: AtomicU64::new(0), salt: RandomState::new() }
    }

    pub fn create(&self, kind: &str, instance: Value) -> String {
        let n = self.counter.fetch_add(1, Ordering::Relaxed);
        let id = format!("{:016x}{:04x}", self.salt.hash_one(n), n & 0xffff);
        let s = Session { kind: kind.to_string(), instance, last: Value::Null };
        self.table.lock().unwrap().put(id.clone(), s);
        id
    }

    pub fn get(&self, id: &str) -> Option<Value> {
        let mut t = self.table.lock().unwrap();
        t.get(id).map(|s| json!({ "session": id, "kind": s.kind, "instance": s.instance, "last": s.last }))
    }

    /// Records `result` as the session's latest verdict; false if unknown.
    pub fn record(&self, id: &str, result: &Value) -> bool {
        match self.table.lock().unwrap().get_mut(id) {
            Some(s) => {
                s.last = result.clone();
                true
            }
            None => false,
        }
    }

    pub fn len(&self) -> usize {
        self.table.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
