//! Dense exact linear algebra over Q(zeta_12).

use crate::exactnum::Cyclo12;

pub type Matrix = Vec<Vec<Cyclo12>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in c..cols {
                    let t = &factor * &m[r][j];
                    m[i][j] -= &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut m = m.clone();
    row_reduce(&mut m).len()
}

/// Basis of the right kernel `{v : m v = 0}`.
pub fn kernel(m: &Matrix, cols: usize) -> Vec<Vec<Cyclo12>> {
    let mut m = m.clone();
    let pivots = row_reduce(&mut m);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Cyclo12::zero(); cols];
        v[free] = Cyclo12::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -&m[r][free];
        }
        out.push(v);
    }
    out
}

/// Some solution of `a x = b` (free variables set to zero), or `None` if inconsistent.
pub fn solve(a: &Matrix, b: &[Cyclo12]) -> Option<Vec<Cyclo12>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Cyclo12::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| Cyclo12::from_int(x)).collect()).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 1);
        for row in &a {
            let dot = row.iter().zip(&k[0]).fold(Cyclo12::zero(), |acc, (x, y)| &acc + &(x * y));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let x = solve(&a, &[Cyclo12::from_int(3), Cyclo12::from_int(1)]).unwrap();
        assert_eq!(x, vec![Cyclo12::from_int(2), Cyclo12::from_int(1)]);
        let b = m(&[&[1, 1], &[2, 2]]);
        assert!(solve(&b, &[Cyclo12::from_int(1), Cyclo12::from_int(3)]).is_none());
    }

    #[test]
    fn complex_entries() {
        let i = Cyclo12::i();
        let a = vec![vec![i.clone(), Cyclo12::one()], vec![Cyclo12::one(), -&i]];
        // second row is -i times the first
        assert_eq!(rank(&a), 1);
    }
}
