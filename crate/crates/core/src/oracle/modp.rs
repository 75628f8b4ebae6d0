//! Dense linear algebra over a prime field GF(l) with `l < 2^32`.

use crate::numtheory::{inv_mod, mul_mod};

pub(crate) type Mat = Vec<Vec<u64>>;

pub(crate) fn inv(a: u64, l: u64) -> u64 {
    inv_mod(a, l).expect("nonzero residue modulo a prime")
}

/// Row-reduces in place, drops zero rows and returns the pivot columns.
pub(crate) fn rref(rows: &mut Mat, l: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, pr);
        let s = inv(rows[r][c], l);
        rows[r].iter_mut().for_each(|x| *x = mul_mod(*x, s, l));
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                let (pivot_row, row) = if i < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (x, &y) in row.iter_mut().zip(pivot_row.iter()) {
                    *x = (*x + l - mul_mod(f, y, l)) % l;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// A basis of `{x : A x = 0}` for a square or rectangular matrix.
pub(crate) fn nullspace(a: &Mat, l: u64) -> Mat {
    let ncols = a.first().map_or(0, Vec::len);
    let mut m = a.clone();
    let pivots = rref(&mut m, l);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = (l - row[f]) % l;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial det(xI - A), lowest degree first, via reduction
/// to upper Hessenberg form.
pub(crate) fn charpoly(a: &Mat, l: u64) -> Vec<u64> {
    let n = a.len();
    let mut h = a.clone();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else { continue };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let pinv = inv(h[m][m - 1], l);
        for j in m + 1..n {
            let u = mul_mod(h[j][m - 1], pinv, l);
            if u == 0 {
                continue;
            }
            for c in 0..n {
                let t = mul_mod(u, h[m][c], l);
                h[j][c] = (h[j][c] + l - t) % l;
            }
            for row in h.iter_mut() {
                let t = mul_mod(u, row[j], l);
                row[m] = (row[m] + t) % l;
            }
        }
    }
    // p[m] is the characteristic polynomial of the leading m x m block.
    let mut p: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let prev = &p[m - 1];
        let mut next = vec![0u64; m + 1];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % l;
            next[d] = (next[d] + l - mul_mod(h[m - 1][m - 1], c, l)) % l;
        }
        let mut t = 1u64;
        for i in (1..m).rev() {
            t = mul_mod(t, h[i][i - 1], l);
            let coef = mul_mod(t, h[i - 1][m - 1], l);
            if coef == 0 {
                continue;
            }
            for (d, &c) in p[i - 1].iter().enumerate() {
                next[d] = (next[d] + l - mul_mod(coef, c, l)) % l;
            }
        }
        p.push(next);
    }
    p.pop().unwrap()
}

pub(crate) fn eval(poly: &[u64], x: u64, l: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, l) + c) % l)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det(a: &Mat, l: u64) -> u64 {
        let n = a.len();
        let mut m = a.clone();
        let mut d = 1u64;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| m[i][c] != 0) else { return 0 };
            if p != c {
                m.swap(p, c);
                d = (l - d) % l;
            }
            d = mul_mod(d, m[c][c], l);
            let s = inv(m[c][c], l);
            for i in c + 1..n {
                let f = mul_mod(m[i][c], s, l);
                for j in c..n {
                    let t = mul_mod(f, m[c][j], l);
                    m[i][j] = (m[i][j] + l - t) % l;
                }
            }
        }
        d
    }

    #[test]
    fn charpoly_matches_determinants() {
        let l = 101;
        let a: Mat = vec![vec![3, 1, 4, 1], vec![5, 9, 2, 6], vec![5, 3, 5, 8], vec![9, 7, 9, 3]];
        let cp = charpoly(&a, l);
        assert_eq!(cp.len(), 5);
        assert_eq!(cp[4], 1);
        for x in 0..l {
            let mut shifted = a.clone();
            for (i, row) in shifted.iter_mut().enumerate() {
                for (j, v) in row.iter_mut().enumerate() {
                    let diag = if i == j { x } else { 0 };
                    *v = (diag + l - *v) % l;
                }
            }
            assert_eq!(eval(&cp, x, l), det(&shifted, l), "x = {x}");
        }
    }

    #[test]
    fn nullspace_is_annihilated() {
        let l = 7;
        let a: Mat = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        let ns = nullspace(&a, l);
        assert_eq!(ns.len(), 1);
        for row in &a {
            let s: u64 = row.iter().zip(&ns[0]).map(|(x, y)| x * y).sum();
            assert_eq!(s % l, 0);
        }
    }
}
