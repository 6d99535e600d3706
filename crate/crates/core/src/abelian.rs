//! Finite abelian groups given by a Cayley table, and their invariant
//! factors.

use crate::arith::factorize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl FiniteAbelianGroup {
    /// Validates the group axioms; the error names the failing elements.
    pub fn from_table(table: Vec<Vec<usize>>, identity: usize) -> Result<Self, String> {
        let n = table.len();
        if identity >= n.max(1) || table.iter().any(|row| row.len() != n || row.iter().any(|&v| v >= n)) {
            return Err("table is not a closed square table".into());
        }
        for a in 0..n {
            if table[a][identity] != a {
                return Err(format!("identity fails at {a}"));
            }
            if !(0..n).any(|b| table[a][b] == identity) {
                return Err(format!("{a} has no inverse"));
            }
            for b in 0..n {
                if table[a][b] != table[b][a] {
                    return Err(format!("not commutative at ({a},{b})"));
                }
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(format!("not associative at ({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(FiniteAbelianGroup { table, identity })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        (0..k).fold(self.identity, |acc, _| self.table[acc][a])
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.table[x][a];
            k += 1;
        }
        k
    }

    /// Invariant factors `d_1 | d_2 | ... | d_r`, all greater than 1; empty
    /// for the trivial group.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let n = self.order() as u64;
        // per prime: exponents of the cyclic p-parts, descending
        let mut parts: Vec<(u64, Vec<u32>)> = Vec::new();
        for (p, e) in factorize(n) {
            let mut counts = vec![1u64];
            for k in 1..=e {
                let q = p.pow(k);
                let c = (0..self.order()).filter(|&a| self.pow(a, q) == self.identity).count();
                counts.push(c as u64);
            }
            // number of cyclic factors of exponent >= k
            let at_least: Vec<u32> = (1..=e as usize)
                .map(|k| {
                    let ratio = counts[k] / counts[k - 1];
                    ratio.ilog(p)
                })
                .collect();
            let r = at_least.first().copied().unwrap_or(0);
            let exps: Vec<u32> = (0..r)
                .map(|j| at_least.iter().filter(|&&m| m > j).count() as u32)
                .collect();
            parts.push((p, exps));
        }
        let rank = parts.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
        let mut factors: Vec<u64> = (0..rank)
            .map(|j| {
                parts
                    .iter()
                    .map(|(p, e)| e.get(j).map_or(1, |&k| p.pow(k)))
                    .product()
            })
            .collect();
        factors.reverse();
        factors
    }
}

/// `Z/d_1 x Z/d_2 x ...`, or `0` for the trivial group.
pub fn describe(invariants: &[u64]) -> String {
    if invariants.is_empty() {
        "0".to_string()
    } else {
        invariants
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect::<Vec<_>>()
            .join(" x ")
    }
}
