use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::CellLabel;

/// What a variable stands for.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VarMeaning {
    /// Grid cell `index` carries `label`.
    Cell { index: usize, label: CellLabel },
    /// Point `index` belongs to the set.
    Vertex { index: usize },
    /// Auxiliary variable introduced by an encoding.
    Aux { tag: String },
}

/// A CNF formula over variables `1..=var_count`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CnfFormula {
    var_count: u32,
    clauses: Vec<Vec<i32>>,
    registry: BTreeMap<u32, VarMeaning>,
}

/// Truth value of a literal under a model indexed by `var - 1`.
#[inline]
pub fn lit_value(model: &[bool], lit: i32) -> bool {
    let v = model[(lit.unsigned_abs() - 1) as usize];
    if lit > 0 {
        v
    } else {
        !v
    }
}

impl CnfFormula {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn var_count(&self) -> u32 {
        self.var_count
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    pub fn registry(&self) -> &BTreeMap<u32, VarMeaning> {
        &self.registry
    }

    pub fn meaning(&self, var: u32) -> Option<&VarMeaning> {
        self.registry.get(&var)
    }

    pub fn new_var(&mut self, meaning: VarMeaning) -> i32 {
        self.var_count += 1;
        self.registry.insert(self.var_count, meaning);
        self.var_count as i32
    }

    /// Registers `var` (growing the variable range if needed).
    pub fn register(&mut self, var: u32, meaning: VarMeaning) {
        self.var_count = self.var_count.max(var);
        self.registry.insert(var, meaning);
    }

    /// Grows the variable range without registering meanings.
    pub fn reserve_vars(&mut self, count: u32) {
        self.var_count = self.var_count.max(count);
    }

    pub fn add_clause(&mut self, lits: &[i32]) -> Result<()> {
        if lits.is_empty() {
            return Err(Error::InvalidArgument("empty clause".into()));
        }
        if let Some(&l) = lits
            .iter()
            .find(|&&l| l == 0 || l.unsigned_abs() > self.var_count)
        {
            return Err(Error::InvalidArgument(format!(
                "literal {l} outside [-{0}, {0}] \\ {{0}}",
                self.var_count
            )));
        }
        self.clauses.push(lits.to_vec());
        Ok(())
    }

    pub(crate) fn push_clause(&mut self, lits: Vec<i32>) {
        debug_assert!(!lits.is_empty());
        debug_assert!(lits
            .iter()
            .all(|l| *l != 0 && l.unsigned_abs() <= self.var_count));
        self.clauses.push(lits);
    }

    pub fn add_unit(&mut self, lit: i32) -> Result<()> {
        self.add_clause(&[lit])
    }

    /// Sorts literals inside each clause, drops repeated literals and removes
    /// clauses that already occurred. Returns the number of clauses removed.
    pub fn dedup(&mut self) -> usize {
        let before = self.clauses.len();
        let mut seen = HashSet::with_capacity(before);
        let mut out = Vec::with_capacity(before);
        for mut c in std::mem::take(&mut self.clauses) {
            c.sort_by_key(|l| (l.unsigned_abs(), *l < 0));
            c.dedup();
            if seen.insert(c.clone()) {
                out.push(c);
            }
        }
        self.clauses = out;
        before - self.clauses.len()
    }

    /// Index of the first clause falsified by `model`, if any.
    pub fn first_falsified(&self, model: &[bool]) -> Option<usize> {
        if model.len() < self.var_count as usize {
            return Some(0);
        }
        self.clauses
            .iter()
            .position(|c| !c.iter().any(|&l| lit_value(model, l)))
    }

    pub fn is_satisfied_by(&self, model: &[bool]) -> bool {
        self.first_falsified(model).is_none()
    }

    /// Variables registered with the given predicate, ascending.
    pub fn vars_where(&self, f: impl Fn(&VarMeaning) -> bool) -> Vec<i32> {
        self.registry
            .iter()
            .filter(|(_, m)| f(m))
            .map(|(&v, _)| v as i32)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_clauses() {
        let mut f = CnfFormula::new();
        f.reserve_vars(2);
        assert!(f.add_clause(&[]).is_err());
        assert!(f.add_clause(&[3]).is_err());
        assert!(f.add_clause(&[0]).is_err());
        assert!(f.add_clause(&[1, -2]).is_ok());
    }

    #[test]
    fn dedup_is_syntactic() {
        let mut f = CnfFormula::new();
        f.reserve_vars(3);
        f.add_clause(&[1, -2]).unwrap();
        f.add_clause(&[-2, 1]).unwrap();
        f.add_clause(&[3, 3]).unwrap();
        f.add_clause(&[3]).unwrap();
        assert_eq!(f.dedup(), 2);
        assert_eq!(f.clauses(), &[vec![1, -2], vec![3]]);
    }

    #[test]
    fn satisfaction() {
        let mut f = CnfFormula::new();
        f.reserve_vars(2);
        f.add_clause(&[1, 2]).unwrap();
        f.add_clause(&[-1]).unwrap();
        assert!(f.is_satisfied_by(&[false, true]));
        assert_eq!(f.first_falsified(&[true, true]), Some(1));
    }
}
