//! Exact linear algebra over the rationals, sized for systems with few
//! unknowns and many equations.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::Rational;

/// A linear combination `sum y_i * (row i)` of the pushed equations whose
/// left-hand side vanishes but whose right-hand side does not.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub combination: Vec<(usize, Rational)>,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AffineSpace {
    pub particular: Vec<Rational>,
    /// Basis of the homogeneous solutions.
    pub kernel: Vec<Vec<Rational>>,
}

impl AffineSpace {
    pub fn dimension(&self) -> usize {
        self.kernel.len()
    }
}

#[derive(Clone, Debug)]
struct Pivot {
    col: usize,
    row: Vec<Rational>,
    rhs: Rational,
    combo: BTreeMap<usize, Rational>,
}

/// Incremental Gaussian elimination for `A x = b`.
///
/// Rows are reduced as they arrive, so only the (at most `ncols`) pivot rows
/// are stored. Each pivot remembers which input rows it combines, which
/// yields an inconsistency certificate for free.
#[derive(Clone, Debug)]
pub struct AffineSolver {
    ncols: usize,
    pushed: usize,
    pivots: Vec<Pivot>,
    conflict: Option<Certificate>,
}

impl AffineSolver {
    pub fn new(ncols: usize) -> Self {
        AffineSolver { ncols, pushed: 0, pivots: Vec::new(), conflict: None }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_consistent(&self) -> bool {
        self.conflict.is_none()
    }

    /// Adds the equation `sum row[j] x_j = rhs`.
    pub fn push(&mut self, row: Vec<Rational>, rhs: Rational) {
        assert_eq!(row.len(), self.ncols, "equation has the wrong number of unknowns");
        let index = self.pushed;
        self.pushed += 1;
        let mut row = row;
        let mut rhs = rhs;
        let mut combo = BTreeMap::from([(index, Rational::one())]);
        for p in &self.pivots {
            let f = row[p.col].clone();
            if f.is_zero() {
                continue;
            }
            for (j, v) in p.row.iter().enumerate() {
                if !v.is_zero() {
                    row[j] -= &f * v;
                }
            }
            rhs -= &f * &p.rhs;
            for (k, v) in &p.combo {
                let e = combo.entry(*k).or_insert_with(Rational::zero);
                *e -= &f * v;
            }
        }
        combo.retain(|_, v| !v.is_zero());
        match row.iter().position(|v| !v.is_zero()) {
            Some(col) => {
                let inv = row[col].recip();
                for v in row.iter_mut() {
                    *v *= &inv;
                }
                rhs *= &inv;
                for v in combo.values_mut() {
                    *v *= &inv;
                }
                // keep earlier pivots reduced in the new column
                for p in self.pivots.iter_mut() {
                    let f = p.row[col].clone();
                    if f.is_zero() {
                        continue;
                    }
                    for (j, v) in row.iter().enumerate() {
                        if !v.is_zero() {
                            p.row[j] -= &f * v;
                        }
                    }
                    p.rhs -= &f * &rhs;
                    for (k, v) in &combo {
                        let e = p.combo.entry(*k).or_insert_with(Rational::zero);
                        *e -= &f * v;
                    }
                    p.combo.retain(|_, v| !v.is_zero());
                }
                self.pivots.push(Pivot { col, row, rhs, combo });
            }
            None => {
                if !rhs.is_zero() && self.conflict.is_none() {
                    self.conflict = Some(Certificate { combination: combo.into_iter().collect(), rhs });
                }
            }
        }
    }

    /// The solution set, or a certificate that there is none.
    pub fn solve(&self) -> Result<AffineSpace, Certificate> {
        if let Some(c) = &self.conflict {
            return Err(c.clone());
        }
        let mut particular = vec![Rational::zero(); self.ncols];
        let mut is_pivot = vec![false; self.ncols];
        for p in &self.pivots {
            particular[p.col] = p.rhs.clone();
            is_pivot[p.col] = true;
        }
        let mut kernel = Vec::new();
        for free in (0..self.ncols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![Rational::zero(); self.ncols];
            v[free] = Rational::one();
            for p in &self.pivots {
                v[p.col] = -p.row[free].clone();
            }
            kernel.push(v);
        }
        Ok(AffineSpace { particular, kernel })
    }
}

/// Rank of a list of dense rows.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let mut s = AffineSolver::new(first.len());
    for r in rows {
        s.push(r.clone(), Rational::zero());
    }
    s.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn row(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    fn apply(rows: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
        rows.iter().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    #[test]
    fn solves_and_spans_kernel() {
        let a = vec![row(&[1, 2, 3]), row(&[2, 4, 6]), row(&[0, 1, 1])];
        let b = row(&[6, 12, 2]);
        let mut s = AffineSolver::new(3);
        for (r, c) in a.iter().zip(&b) {
            s.push(r.clone(), c.clone());
        }
        let sol = s.solve().unwrap();
        assert_eq!(sol.dimension(), 1);
        assert_eq!(apply(&a, &sol.particular), b);
        assert_eq!(apply(&a, &sol.kernel[0]), row(&[0, 0, 0]));
    }

    #[test]
    fn inconsistency_has_a_checkable_certificate() {
        let a = vec![row(&[1, 1]), row(&[2, 2]), row(&[1, -1])];
        let b = row(&[1, 3, 0]);
        let mut s = AffineSolver::new(2);
        for (r, c) in a.iter().zip(&b) {
            s.push(r.clone(), c.clone());
        }
        let cert = s.solve().unwrap_err();
        let mut lhs = vec![rat(0, 1); 2];
        let mut rhs = rat(0, 1);
        for (i, y) in &cert.combination {
            for j in 0..2 {
                lhs[j] += y * &a[*i][j];
            }
            rhs += y * &b[*i];
        }
        assert_eq!(lhs, row(&[0, 0]));
        assert_eq!(rhs, cert.rhs);
        assert!(!rhs.is_zero());
    }

    #[test]
    fn rank_of_dependent_rows() {
        assert_eq!(rank(&[row(&[1, 0, 1]), row(&[0, 1, 1]), row(&[1, 1, 2])]), 2);
        assert_eq!(rank(&[]), 0);
    }
}
