//! Variable registry shared by all polynomial values of a computation.

use std::sync::{Arc, RwLock};

/// Index of a variable inside a [`VarRegistry`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub u32);

/// Append-only list of variable names. Registration order is the printing
/// order, so two registries built by registering the same names in the same
/// order are interchangeable.
#[derive(Debug, Default)]
pub struct VarRegistry {
    names: RwLock<Vec<String>>,
}

pub type Reg = Arc<VarRegistry>;

impl VarRegistry {
    pub fn new() -> Reg {
        Arc::new(Self::default())
    }

    /// Registry with the fixed variable names used throughout the library,
    /// registered in a fixed order so that independently created standard
    /// registries are compatible.
    pub fn standard() -> Reg {
        let reg = Self::new();
        for name in ["t", "b", "w_plus", "w_minus", "y", "z", "x", "u"] {
            reg.var(name);
        }
        reg
    }

    /// Look up a variable, registering it if absent.
    pub fn var(&self, name: &str) -> VarId {
        let mut names = self.names.write().unwrap();
        if let Some(i) = names.iter().position(|n| n == name) {
            return VarId(i as u32);
        }
        names.push(name.to_string());
        VarId((names.len() - 1) as u32)
    }

    pub fn lookup(&self, name: &str) -> Option<VarId> {
        let names = self.names.read().unwrap();
        names.iter().position(|n| n == name).map(|i| VarId(i as u32))
    }

    /// The marker variable for degree-k flowers.
    pub fn xi(&self, k: usize) -> VarId {
        self.var(&format!("xi{k}"))
    }

    pub fn name(&self, id: VarId) -> String {
        self.names.read().unwrap()[id.0 as usize].clone()
    }

    pub fn len(&self) -> usize {
        self.names.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn names(&self) -> Vec<String> {
        self.names.read().unwrap().clone()
    }
}

/// Registries are compatible when identical, or when one's name list is a
/// prefix of the other's (same names registered in the same order).
pub fn compatible(a: &Reg, b: &Reg) -> bool {
    if Arc::ptr_eq(a, b) {
        return true;
    }
    let an = a.names.read().unwrap();
    let bn = b.names.read().unwrap();
    let k = an.len().min(bn.len());
    an[..k] == bn[..k]
}
