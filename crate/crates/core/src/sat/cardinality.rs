//! Sequential-counter cardinality constraints.

use super::cnf::{CnfFormula, VarMeaning};
use crate::error::{Error, Result};

fn check_lits(f: &CnfFormula, lits: &[i32]) -> Result<()> {
    if let Some(&l) = lits
        .iter()
        .find(|&&l| l == 0 || l.unsigned_abs() > f.var_count())
    {
        return Err(Error::InvalidArgument(format!(
            "literal {l} is not in the formula"
        )));
    }
    Ok(())
}

/// Adds "at most `k` of `lits` are true" using a sequential counter.
pub fn encode_cardinality_atmost(f: &mut CnfFormula, lits: &[i32], k: usize) -> Result<()> {
    check_lits(f, lits)?;
    let n = lits.len();
    if k >= n {
        return Ok(());
    }
    if k == 0 {
        for &l in lits {
            f.push_clause(vec![-l]);
        }
        return Ok(());
    }
    let aux = |f: &mut CnfFormula| {
        f.new_var(VarMeaning::Aux {
            tag: "counter".into(),
        })
    };
    // s[i][j] is true when at least j+1 of the first i+1 literals are true
    let mut prev: Vec<i32> = (0..k).map(|_| aux(f)).collect();
    f.push_clause(vec![-lits[0], prev[0]]);
    for &s in &prev[1..] {
        f.push_clause(vec![-s]);
    }
    for &x in &lits[1..n - 1] {
        let cur: Vec<i32> = (0..k).map(|_| aux(f)).collect();
        f.push_clause(vec![-x, cur[0]]);
        f.push_clause(vec![-prev[0], cur[0]]);
        for j in 1..k {
            f.push_clause(vec![-x, -prev[j - 1], cur[j]]);
            f.push_clause(vec![-prev[j], cur[j]]);
        }
        f.push_clause(vec![-x, -prev[k - 1]]);
        prev = cur;
    }
    f.push_clause(vec![-lits[n - 1], -prev[k - 1]]);
    Ok(())
}

/// Adds "at least `k` of `lits` are true" as at-most-`(|lits| - k)` over the
/// negations. `k > |lits|` adds an explicit contradiction.
pub fn encode_cardinality_atleast(f: &mut CnfFormula, lits: &[i32], k: usize) -> Result<()> {
    check_lits(f, lits)?;
    if k == 0 {
        return Ok(());
    }
    if k > lits.len() {
        let v = f.new_var(VarMeaning::Aux {
            tag: "contradiction".into(),
        });
        f.push_clause(vec![v]);
        f.push_clause(vec![-v]);
        return Ok(());
    }
    if k == lits.len() {
        for &l in lits {
            f.push_clause(vec![l]);
        }
        return Ok(());
    }
    let neg: Vec<i32> = lits.iter().map(|l| -l).collect();
    encode_cardinality_atmost(f, &neg, lits.len() - k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(n: u32) -> CnfFormula {
        let mut f = CnfFormula::new();
        for v in 0..n {
            f.new_var(VarMeaning::Vertex { index: v as usize });
        }
        f
    }

    #[test]
    fn trivial_bounds() {
        let mut f = base(3);
        encode_cardinality_atleast(&mut f, &[1, 2, 3], 0).unwrap();
        assert!(f.clauses().is_empty());
        encode_cardinality_atleast(&mut f, &[1, 2, 3], 3).unwrap();
        assert_eq!(f.clauses(), &[vec![1], vec![2], vec![3]]);
        let mut g = base(3);
        encode_cardinality_atleast(&mut g, &[1, 2, 3], 4).unwrap();
        assert_eq!(g.var_count(), 4);
        assert_eq!(g.clauses(), &[vec![4], vec![-4]]);
    }
}
