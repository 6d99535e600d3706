//! Row Hermite normal form of integer lattices.

/// Echelon basis of the lattice spanned by `rows`: positive pivots, entries
/// above each pivot reduced into `[0, pivot)`, zero rows dropped.
pub fn row_hnf(rows: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<i128>> = rows.iter().filter(|r| r.iter().any(|&v| v != 0)).cloned().collect();
    let mut top = 0;
    for col in 0..ncols {
        loop {
            let nonzero: Vec<usize> = (top..m.len()).filter(|&r| m[r][col] != 0).collect();
            if nonzero.len() <= 1 {
                if let Some(&r) = nonzero.first() {
                    m.swap(top, r);
                }
                break;
            }
            let pivot = *nonzero.iter().min_by_key(|&&r| m[r][col].abs()).unwrap();
            for &r in &nonzero {
                if r != pivot {
                    let q = m[r][col].div_euclid(m[pivot][col]);
                    let (src, dst) = (m[pivot].clone(), &mut m[r]);
                    dst.iter_mut().zip(&src).for_each(|(d, s)| *d -= q * s);
                }
            }
        }
        if top >= m.len() || m[top][col] == 0 {
            continue;
        }
        if m[top][col] < 0 {
            m[top].iter_mut().for_each(|v| *v = -*v);
        }
        for r in 0..top {
            let q = m[r][col].div_euclid(m[top][col]);
            let src = m[top].clone();
            m[r].iter_mut().zip(&src).for_each(|(d, s)| *d -= q * s);
        }
        top += 1;
    }
    m.retain(|r| r.iter().any(|&v| v != 0));
    m
}

/// Whether `rows` span all of `Z^n`.
pub fn spans_full_lattice(rows: &[Vec<i128>], n: usize) -> bool {
    if n == 0 {
        return true;
    }
    let h = row_hnf(rows);
    h.len() == n && (0..n).all(|i| h[i][i] == 1)
}
