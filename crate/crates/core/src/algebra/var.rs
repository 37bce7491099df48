//! Interned variable names with a fixed global ordering.
//!
//! Variables compare first by their rank in [`FIXED_ORDER`] and then by name,
//! so every polynomial prints in the same term order regardless of the order
//! in which names were first seen.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// Global variable order. Names not listed here sort after all of these,
/// alphabetically.
pub const FIXED_ORDER: &[&str] = &[
    "x", "y", "z", "p", "q", "dx", "dy", "dz", "dp", "dq", "t", "s", "r", "X", "Y", "Z", "P", "Q",
    "L", "dt", "ds", "dr", "dX", "dY", "dZ", "dP", "dQ", "dL", "H0", "H1", "H2", "H3", "H4", "H5",
    "H6", "H7", "H8", "H9", "I", "J",
];

const UNRANKED: u32 = u32::MAX;

#[derive(Clone, Copy)]
pub struct Var {
    rank: u32,
    name: &'static str,
}

fn interner() -> &'static Mutex<HashMap<String, &'static str>> {
    static TABLE: OnceLock<Mutex<HashMap<String, &'static str>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut m = HashMap::new();
        for n in FIXED_ORDER {
            m.insert((*n).to_string(), *n);
        }
        Mutex::new(m)
    })
}

impl Var {
    pub fn new(name: &str) -> Var {
        let rank = FIXED_ORDER
            .iter()
            .position(|n| *n == name)
            .map(|i| i as u32)
            .unwrap_or(UNRANKED);
        let name = if rank != UNRANKED {
            FIXED_ORDER[rank as usize]
        } else {
            let mut table = interner().lock().expect("variable interner poisoned");
            match table.get(name) {
                Some(s) => *s,
                None => {
                    let leaked: &'static str = Box::leak(name.to_string().into_boxed_str());
                    table.insert(name.to_string(), leaked);
                    leaked
                }
            }
        };
        Var { rank, name }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    /// The differential symbol `d<name>` attached to a coordinate.
    pub fn differential(&self) -> Var {
        Var::new(&format!("d{}", self.name))
    }
}

impl PartialEq for Var {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.name == other.name
    }
}

impl Eq for Var {}

impl std::hash::Hash for Var {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.name.hash(state)
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rank
            .cmp(&other.rank)
            .then_with(|| self.name.cmp(other.name))
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name)
    }
}

/// Shorthand used throughout the catalogs.
pub fn var(name: &str) -> Var {
    Var::new(name)
}
