//! Exact solves of pinned Laplacian systems.
//!
//! Every potential in this crate is the solution of the same kind of system:
//! a vertex function `f` whose value is prescribed on a non-empty set of
//! pinned vertices and whose principal divisor is prescribed everywhere else.
//! On a connected graph this reduced Laplacian is non-singular.

use num::{BigInt, BigRational, Integer, One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Solve for `f` with `f(v) = pins[v]` where a pin is given and
/// `div(f)_u = target[u]` at every unpinned vertex `u`.
pub(crate) fn solve_pinned(
    g: &Graph,
    pins: &[Option<BigRational>],
    target: &[BigRational],
) -> Result<Vec<BigRational>> {
    let n = g.num_vertices();
    assert_eq!(pins.len(), n);
    assert_eq!(target.len(), n);
    if pins.iter().all(Option::is_none) {
        return Err(Error::Internal("pinned system without pins".into()));
    }

    let free: Vec<usize> = (0..n).filter(|&v| pins[v].is_none()).collect();
    let mut slot = vec![usize::MAX; n];
    for (i, &v) in free.iter().enumerate() {
        slot[v] = i;
    }

    // div(f)_u = sum_w m(u,w) (f(w) - f(u)); move pinned terms to the right.
    let m = free.len();
    let mut rhs: Vec<BigRational> = Vec::with_capacity(m);
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(m);
    for &u in &free {
        let mut row = vec![BigInt::zero(); m];
        row[slot[u]] = -BigInt::from(g.valence_without_loops(u));
        let mut b = target[u].clone();
        for &(w, mult) in g.neighbors(u) {
            match &pins[w] {
                Some(value) => b -= value * BigRational::from_integer(BigInt::from(mult)),
                None => row[slot[w]] += BigInt::from(mult),
            }
        }
        rows.push(row);
        rhs.push(b);
    }

    let solution = solve_integer_system(rows, &rhs)?;
    let mut f = Vec::with_capacity(n);
    for v in 0..n {
        f.push(match &pins[v] {
            Some(value) => value.clone(),
            None => solution[slot[v]].clone(),
        });
    }
    Ok(f)
}

/// Solve `A x = b` for a square non-singular integer matrix `A` and rational
/// `b`, using Bareiss fraction-free elimination on `[A | L b]` where `L` is
/// the common denominator of `b`.
pub(crate) fn solve_integer_system(
    mut a: Vec<Vec<BigInt>>,
    b: &[BigRational],
) -> Result<Vec<BigRational>> {
    let m = a.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    let scale = b.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    for (row, x) in a.iter_mut().zip(b) {
        row.push(x.numer() * (&scale / x.denom()));
    }

    let mut prev = BigInt::one();
    for k in 0..m {
        let pivot = (k..m)
            .find(|&i| !a[i][k].is_zero())
            .ok_or_else(|| Error::Internal("singular Laplacian system".into()))?;
        a.swap(k, pivot);
        for i in k + 1..m {
            for j in k + 1..=m {
                let value = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = value / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }

    let mut x = vec![BigRational::zero(); m];
    for i in (0..m).rev() {
        let mut acc = BigRational::from_integer(a[i][m].clone());
        for j in i + 1..m {
            acc -= BigRational::from_integer(a[i][j].clone()) * &x[j];
        }
        x[i] = acc / BigRational::from_integer(a[i][i].clone());
    }
    let scale = BigRational::from_integer(scale);
    Ok(x.into_iter().map(|v| v / &scale).collect())
}

/// Some `f` with `div(f) = target`, pinned to `f(v0) = 0`. `target` must have
/// degree zero.
pub(crate) fn solve_potential(g: &Graph, target: &[BigRational]) -> Result<Vec<BigRational>> {
    let sum: BigRational = target.iter().sum();
    if !sum.is_zero() {
        return Err(Error::Internal("potential target has non-zero degree".into()));
    }
    let mut pins = vec![None; g.num_vertices()];
    pins[0] = Some(BigRational::zero());
    solve_pinned(g, &pins, target)
}

pub(crate) fn is_integral(x: &BigRational) -> bool {
    x.is_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_dense_system() {
        // 2x + y = 1/2, x + 3y = -1
        let a = vec![vec![2.into(), 1.into()], vec![1.into(), 3.into()]];
        let x = solve_integer_system(a, &[r(1, 2), r(-1, 1)]).unwrap();
        assert_eq!(x, vec![r(1, 2), r(-1, 2)]);
    }

    #[test]
    fn needs_pivoting() {
        let a = vec![vec![0.into(), 1.into()], vec![1.into(), 0.into()]];
        let x = solve_integer_system(a, &[r(3, 1), r(2, 5)]).unwrap();
        assert_eq!(x, vec![r(2, 5), r(3, 1)]);
    }

    #[test]
    fn singular_is_reported() {
        let a = vec![vec![1.into(), 1.into()], vec![2.into(), 2.into()]];
        assert!(solve_integer_system(a, &[r(1, 1), r(2, 1)]).is_err());
    }

    #[test]
    fn double_path_potential() {
        let g = Graph::unweighted(
            &["v1", "v2", "v3"],
            &[("v1", "v2"), ("v1", "v2"), ("v2", "v3"), ("v2", "v3")],
        )
        .unwrap();
        // div(f) = (3/2, -3/2, 0) is solved by (0, 3/4, 3/4).
        let f = solve_potential(&g, &[r(3, 2), r(-3, 2), r(0, 1)]).unwrap();
        assert_eq!(f, vec![r(0, 1), r(3, 4), r(3, 4)]);
    }
}
