//! Exact feasibility of {x ≥ 0 : A x = b} by the two-phase simplex method
//! (phase I only), with Bland's rule so it cannot cycle.

use crate::exactlin::{Rational, Ring};

/// A nonnegative solution of `a·x = b`, or None if there is none.
/// `a` is given by rows; every row must have length `n`.
pub fn feasible(n: usize, a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.len();
    assert_eq!(b.len(), m, "rhs length");
    if m == 0 {
        return Some(vec![Rational::zero(); n]);
    }
    let width = n + m + 1;
    let rhs = width - 1;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for i in 0..m {
        assert_eq!(a[i].len(), n, "constraint row length");
        let flip = b[i].is_negative();
        let mut row = vec![Rational::zero(); width];
        for j in 0..n {
            row[j] = if flip { -a[i][j].clone() } else { a[i][j].clone() };
        }
        row[n + i] = Rational::one();
        row[rhs] = if flip { -b[i].clone() } else { b[i].clone() };
        t.push(row);
    }
    // Phase-I objective: the sum of the artificial variables, written as
    // the sum of the rows (coefficients are the decrease per unit entered).
    let mut obj = vec![Rational::zero(); width];
    for row in &t {
        for j in 0..n {
            if !row[j].is_zero() {
                obj[j] = obj[j].clone() + &row[j];
            }
        }
        obj[rhs] = obj[rhs].clone() + &row[rhs];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        let Some(enter) = (0..n).find(|&j| obj[j].is_positive()) else { break };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = t[i][rhs].clone() / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((pi, _)) = leave else { break };
        pivot(&mut t, &mut obj, pi, enter);
        basis[pi] = enter;
    }

    if !obj[rhs].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][rhs].clone();
        }
    }
    debug_assert!(check(a, b, &x));
    Some(x)
}

fn pivot(t: &mut [Vec<Rational>], obj: &mut [Rational], pi: usize, pj: usize) {
    let p = t[pi][pj].clone();
    for x in t[pi].iter_mut() {
        if !x.is_zero() {
            *x = x.clone() / &p;
        }
    }
    let prow = t[pi].clone();
    let eliminate = |row: &mut [Rational]| {
        let f = row[pj].clone();
        if f.is_zero() {
            return;
        }
        for (x, y) in row.iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x = x.clone() - &(f.clone() * y);
            }
        }
    };
    for (i, row) in t.iter_mut().enumerate() {
        if i != pi {
            eliminate(row);
        }
    }
    eliminate(obj);
}

fn check(a: &[Vec<Rational>], b: &[Rational], x: &[Rational]) -> bool {
    x.iter().all(|v| !v.is_negative())
        && a.iter().zip(b).all(|(row, bi)| {
            row.iter().zip(x).fold(Rational::zero(), |acc, (r, v)| acc + &(r.clone() * v)) == *bi
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::qv;

    #[test]
    fn simple_systems() {
        // x + y = 1, x - y = 0 → x = y = 1/2.
        let x = feasible(2, &[qv(&[1, 1]), qv(&[1, -1])], &qv(&[1, 0])).unwrap();
        assert_eq!(x, vec![Rational::new(1, 2), Rational::new(1, 2)]);
        // x + y = -1 has no nonnegative solution.
        assert!(feasible(2, &[qv(&[1, 1])], &qv(&[-1])).is_none());
        // Degenerate: 0·x = 0.
        assert!(feasible(1, &[qv(&[0])], &qv(&[0])).is_some());
    }
}
