//! Degree-by-degree solution of the pentagon equation over the rationals.
//!
//! If `phi = exp(L)` solves the pentagon below degree `d`, every extension
//! is `exp(L + psi)` with `psi` a degree-`d` Lie element, and the degree-`d`
//! part of the pentagon is affine in `psi`: the defect of `exp(L)` plus the
//! linearised pentagon applied to `psi`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::assoc::pentagon::{pentagon_difference, require_x01, tsum};
use crate::braid::{inject, BraidAlgebra, BraidSeries};
use crate::error::{Error, Result};
use crate::linalg::{AffineSolver, AffineSpace, Certificate};
use crate::ncseries::lyndon::{lyndon_lie_basis, LieWord};
use crate::ncseries::{exp, group_like_residual, log, Alphabet, Series, TruncatedAlgebra, Word};
use crate::scalar::{rat, Rational};

/// Which pentagon solutions are sought.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    /// Linear and quadratic terms vanish: GRT1 elements.
    Grt1,
    /// Pentagon only; the quadratic coefficient is a free parameter.
    Free,
}

/// All degree-`d` extensions of a partial pentagon solution.
#[derive(Clone, Debug)]
pub struct Extension {
    pub degree: usize,
    /// Lyndon basis of the degree-`d` free Lie algebra; coordinates refer to it.
    pub basis: Vec<LieWord>,
    pub space: std::result::Result<AffineSpace, Certificate>,
    /// `log` of the partial solution, valid below degree `d`.
    base_log: Series<Rational>,
}

impl Extension {
    /// Dimension of the homogeneous solution space; `None` if inconsistent.
    pub fn dimension(&self) -> Option<usize> {
        self.space.as_ref().ok().map(AffineSpace::dimension)
    }

    /// The Lie element `sum coords[k] basis[k]`.
    pub fn lie_element(&self, coords: &[Rational]) -> Series<Rational> {
        let a = Alphabet::x01();
        let mut psi = Series::zero(&a, self.degree, &());
        for (b, c) in self.basis.iter().zip(coords) {
            if !c.is_zero() {
                psi = &psi + &b.bracket.to_series::<Rational>(&a, self.degree, &()).scale_rational(c);
            }
        }
        psi
    }

    /// `exp(log(phi_partial) + psi)` at truncation `d`.
    pub fn extend(&self, coords: &[Rational]) -> Result<Series<Rational>> {
        if coords.len() != self.basis.len() {
            return Err(Error::Precondition(format!(
                "expected {} coordinates, got {}",
                self.basis.len(),
                coords.len()
            )));
        }
        exp(&(&self.base_log + &self.lie_element(coords)))
    }

    /// Particular solution plus `sum t_k kernel[k]`.
    pub fn point(&self, params: &[Rational]) -> Result<Vec<Rational>> {
        let space = self.space.as_ref().map_err(|_| Error::Precondition("no solution in this degree".into()))?;
        if params.len() != space.kernel.len() {
            return Err(Error::Precondition(format!(
                "expected {} parameters, got {}",
                space.kernel.len(),
                params.len()
            )));
        }
        let mut v = space.particular.clone();
        for (t, k) in params.iter().zip(&space.kernel) {
            for (x, y) in v.iter_mut().zip(k) {
                *x += t * y;
            }
        }
        Ok(v)
    }
}

/// The five-term linearised pentagon applied to a homogeneous series.
fn linearised_pentagon(psi: &Series<Rational>) -> Result<BraidSeries<Rational>> {
    let a4 = BraidAlgebra::a4();
    let n = psi.truncation();
    let t = |pairs: &[(usize, usize)]| tsum::<Rational>(&a4, pairs, n, &());
    let l1 = inject(psi, &t(&[(1, 2)]), &t(&[(2, 3), (2, 4)]))?;
    let l2 = inject(psi, &t(&[(1, 3), (2, 3)]), &t(&[(3, 4)]))?;
    let r1 = inject(psi, &t(&[(2, 3)]), &t(&[(3, 4)]))?;
    let r2 = inject(psi, &t(&[(1, 2), (1, 3)]), &t(&[(2, 4), (3, 4)]))?;
    let r3 = inject(psi, &t(&[(1, 2)]), &t(&[(2, 3)]))?;
    Ok(l1.plus(&l2).minus(&r1).minus(&r2).minus(&r3))
}

/// All degree-`d` Lie extensions of `phi_partial` (read at truncation `d-1`)
/// that satisfy the pentagon through degree `d`.
pub fn pentagon_extend(phi_partial: &Series<Rational>, d: usize, normalization: Normalization) -> Result<Extension> {
    require_x01(phi_partial)?;
    if d == 0 {
        return Err(Error::Precondition("degree must be at least 1".into()));
    }
    if phi_partial.truncation() + 1 < d {
        return Err(Error::Precondition(format!(
            "partial solution is only known to degree {}, need {}",
            phi_partial.truncation(),
            d - 1
        )));
    }
    let base = phi_partial.truncated(d - 1);
    let gl = group_like_residual(&base);
    if gl.residual != 0.0 {
        return Err(Error::Precondition("partial solution is not group-like".into()));
    }
    if !pentagon_difference(&base)?.is_zero() {
        return Err(Error::Precondition(format!("partial solution fails the pentagon below degree {d}")));
    }
    if normalization == Normalization::Grt1 && base.terms().any(|(w, _)| matches!(w.len(), 1 | 2)) {
        return Err(Error::Precondition("GRT1 normalisation needs no linear or quadratic terms".into()));
    }
    let base_log = log(&base)?.with_truncation(d);
    let lifted = exp(&base_log)?;
    let defect = pentagon_difference(&lifted)?;

    let alphabet = Alphabet::x01();
    let basis = lyndon_lie_basis(&alphabet, d);
    let images: Vec<BraidSeries<Rational>> = basis
        .iter()
        .map(|b| linearised_pentagon(&b.bracket.to_series::<Rational>(&alphabet, d, &())))
        .collect::<Result<_>>()?;

    let mut words: BTreeSet<Word> = BTreeSet::new();
    for img in &images {
        words.extend(img.as_series().terms().map(|(w, _)| w.clone()));
    }
    let defect_d: BTreeMap<Word, Rational> =
        defect.as_series().terms().filter(|(w, _)| w.len() == d).map(|(w, c)| (w.clone(), c.clone())).collect();
    words.extend(defect_d.keys().cloned());

    let mut solver = AffineSolver::new(basis.len());
    for w in &words {
        let row: Vec<Rational> = images.iter().map(|img| img.coeff(w)).collect();
        let rhs = -defect_d.get(w).cloned().unwrap_or_else(Rational::zero);
        solver.push(row, rhs);
    }
    if normalization == Normalization::Grt1 && d <= 2 {
        for k in 0..basis.len() {
            let mut row = vec![rat(0, 1); basis.len()];
            row[k] = rat(1, 1);
            solver.push(row, rat(0, 1));
        }
    }
    Ok(Extension { degree: d, basis, space: solver.solve(), base_log })
}

/// Degree-by-degree pentagon solution from `phi = 1` up to `degree`.
/// `choose` picks the kernel parameters in each degree (it receives the
/// extension and returns as many rationals as the kernel dimension).
pub fn solve_pentagon(
    degree: usize,
    normalization: Normalization,
    mut choose: impl FnMut(&Extension) -> Vec<Rational>,
) -> Result<(Series<Rational>, Vec<Extension>)> {
    let mut phi = Series::one(&Alphabet::x01(), 0, &());
    let mut steps = Vec::new();
    for d in 1..=degree {
        let ext = pentagon_extend(&phi, d, normalization)?;
        let coords = match &ext.space {
            Ok(_) => {
                let params = choose(&ext);
                ext.point(&params)?
            }
            Err(c) => {
                return Err(Error::Precondition(format!(
                    "pentagon has no extension in degree {d} (certificate combines {} equations)",
                    c.combination.len()
                )))
            }
        };
        phi = ext.extend(&coords)?;
        steps.push(ext);
    }
    Ok((phi, steps))
}
