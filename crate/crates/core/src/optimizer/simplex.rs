//! Dense two-phase simplex with Bland's rule, generic over [`Scalar`].
//!
//! Solves `maximize c·x` subject to `A x <= b`, `x >= 0`. With an exact
//! scalar type the optimum is exact.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram<T> {
    pub num_vars: usize,
    pub objective: Vec<T>,
    /// Rows `(a, b)` meaning `a·x <= b`.
    pub rows: Vec<(Vec<T>, T)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpOptimum<T> {
    pub x: Vec<T>,
    pub value: T,
}

struct Tableau<T> {
    /// `rows × (cols + 1)`; the last column is the right-hand side.
    a: Vec<Vec<T>>,
    basis: Vec<usize>,
    cols: usize,
}

impl<T: Scalar> Tableau<T> {
    fn pivot(&mut self, z: &mut [T], r: usize, c: usize) {
        let p = self.a[r][c].clone();
        for v in self.a[r].iter_mut() {
            if !v.is_zero() {
                *v = v.clone() / p.clone();
            }
        }
        let pivot_row = self.a[r].clone();
        for (i, row) in self.a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c].clone();
            if f.is_zero() {
                continue;
            }
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = v.clone() - f.clone() * pv.clone();
                }
            }
            row[c] = T::zero();
        }
        let f = z[c].clone();
        if !f.is_zero() {
            for (v, pv) in z.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = v.clone() - f.clone() * pv.clone();
                }
            }
            z[c] = T::zero();
        }
        self.basis[r] = c;
    }

    /// Maximizes with reduced-cost row `z` (entries are `-c_j` style: a
    /// negative entry means increasing that column improves the objective).
    fn optimize(&mut self, z: &mut [T], allowed: &dyn Fn(usize) -> bool) -> Result<()> {
        let tol = T::tolerance();
        let neg_tol = -tol.clone();
        for _ in 0..50_000 {
            let Some(c) = (0..self.cols).find(|&j| allowed(j) && z[j] < neg_tol) else {
                return Ok(());
            };
            let mut best: Option<(usize, T)> = None;
            for (i, row) in self.a.iter().enumerate() {
                if row[c] > tol {
                    let ratio = row[self.cols].clone() / row[c].clone();
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < br.clone() - tol.clone()
                                || (!(ratio > br.clone() + tol.clone())
                                    && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = best else {
                return Err(Error::LpUnbounded);
            };
            self.pivot(z, r, c);
        }
        Err(Error::Precondition("simplex iteration limit".into()))
    }
}

impl<T: Scalar> LinearProgram<T> {
    pub fn solve(&self) -> Result<LpOptimum<T>> {
        let n = self.num_vars;
        let m = self.rows.len();
        assert_eq!(self.objective.len(), n);
        let needs_art: Vec<bool> = self.rows.iter().map(|(_, b)| *b < T::zero()).collect();
        let n_art = needs_art.iter().filter(|x| **x).count();
        let cols = n + m + n_art;
        let mut a = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut art_idx = n + m;
        for (i, (coef, b)) in self.rows.iter().enumerate() {
            assert_eq!(coef.len(), n);
            let mut row = vec![T::zero(); cols + 1];
            let sign = if needs_art[i] { -T::one() } else { T::one() };
            for (j, c) in coef.iter().enumerate() {
                row[j] = c.clone() * sign.clone();
            }
            row[n + i] = sign.clone();
            row[cols] = b.clone() * sign;
            if needs_art[i] {
                row[art_idx] = T::one();
                basis.push(art_idx);
                art_idx += 1;
            } else {
                basis.push(n + i);
            }
            a.push(row);
        }
        let mut t = Tableau { a, basis, cols };
        let is_art = |j: usize| j >= n + m && j < cols;

        if n_art > 0 {
            // Phase 1: maximize -Σ artificials.
            let mut z = vec![T::zero(); cols + 1];
            for j in n + m..cols {
                z[j] = T::one();
            }
            for i in 0..m {
                if is_art(t.basis[i]) {
                    for (zj, v) in z.iter_mut().zip(&t.a[i]) {
                        *zj = zj.clone() - v.clone();
                    }
                }
            }
            t.optimize(&mut z, &|_| true)?;
            if z[cols] < -T::tolerance() {
                return Err(Error::LpInfeasible);
            }
            // Drive remaining zero-level artificials out of the basis.
            let mut i = 0;
            while i < t.a.len() {
                if is_art(t.basis[i]) {
                    match (0..n + m).find(|&j| !t.a[i][j].near_zero()) {
                        Some(j) => {
                            let mut dummy = vec![T::zero(); cols + 1];
                            t.pivot(&mut dummy, i, j);
                            i += 1;
                        }
                        None => {
                            t.a.remove(i);
                            t.basis.remove(i);
                        }
                    }
                } else {
                    i += 1;
                }
            }
        }

        // Phase 2.
        let mut z = vec![T::zero(); cols + 1];
        for j in 0..n {
            z[j] = -self.objective[j].clone();
        }
        for i in 0..t.a.len() {
            let bj = t.basis[i];
            let f = z[bj].clone();
            if !f.is_zero() {
                for (zj, v) in z.iter_mut().zip(&t.a[i]) {
                    *zj = zj.clone() - f.clone() * v.clone();
                }
            }
        }
        t.optimize(&mut z, &|j| !is_art(j))?;

        let mut x = vec![T::zero(); n];
        for (i, &bj) in t.basis.iter().enumerate() {
            if bj < n {
                x[bj] = t.a[i][cols].clone();
            }
        }
        let value = self
            .objective
            .iter()
            .zip(&x)
            .fold(T::zero(), |acc, (c, v)| acc + c.clone() * v.clone());
        Ok(LpOptimum { x, value })
    }
}
