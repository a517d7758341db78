//! A working context: one cyclotomic modulus plus memoized groups and tables.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::chartab::{dixon_table, CharTable};
use crate::error::Result;
use crate::group::{Group, Subgroup};
use crate::perm::Perm;

/// Groups and character tables keyed by their element lists, so that every
/// subgroup is enumerated and tabulated at most once per session.
pub struct Session {
    modulus: u32,
    groups: Mutex<HashMap<Vec<Perm>, Arc<Group>>>,
    tables: Mutex<HashMap<Vec<Perm>, Arc<CharTable>>>,
}

impl Session {
    pub fn new(modulus: u32) -> Self {
        Session { modulus, groups: Mutex::new(HashMap::new()), tables: Mutex::new(HashMap::new()) }
    }

    /// Session over `Q(ζ_{exp(G)})`, which contains every value needed for `G`
    /// and its sections.
    pub fn for_group(g: &Group) -> Self {
        Session::new(g.exponent() as u32)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// The shared handle for a group, registering it if new.
    pub fn register(&self, g: Arc<Group>) -> Arc<Group> {
        let mut groups = self.groups.lock().expect("group cache poisoned");
        groups.entry(g.elements().to_vec()).or_insert(g).clone()
    }

    pub fn group(&self, sub: &Subgroup) -> Arc<Group> {
        if let Some(g) = self.groups.lock().expect("group cache poisoned").get(sub.elements()) {
            return g.clone();
        }
        // built outside the lock; the first writer wins
        self.register(Arc::new(Group::from_subgroup(sub)))
    }

    pub fn table(&self, g: &Arc<Group>) -> Result<Arc<CharTable>> {
        let g = self.register(g.clone());
        if let Some(t) = self.tables.lock().expect("table cache poisoned").get(g.elements()) {
            return Ok(t.clone());
        }
        let t = Arc::new(dixon_table(&g, self.modulus)?);
        let mut tables = self.tables.lock().expect("table cache poisoned");
        let entry = tables.entry(g.elements().to_vec()).or_insert(t.clone());
        debug_assert_eq!(entry.rows(), t.rows());
        Ok(entry.clone())
    }
}
