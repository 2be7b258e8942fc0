//! Quotient objects encoded internally as submetrics.
//!
//! A surjection `f: X ↠ Y` is recorded by its kernel metric
//! `κ_f(x, x') = d_Y(f x, f x')`; conversely every submetric `γ ≤ d_X`
//! yields the surjection onto `X/~γ`. The two assignments are mutually
//! inverse up to isomorphism and reverse order.

use crate::error::{Error, Result};
use crate::map::FinMap;
use crate::matrix::Matrix;
use crate::report::{Report, Violation};
use crate::space::{metric_violations, quotient_by_metric, FinSpace};

/// A (possibly non-separated) metric on the points of `base`, pointwise
/// below the base metric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submetric {
    base: FinSpace,
    gamma: Matrix,
}

/// Lists metric-axiom violations of `gamma` and every entry above `d_base`.
pub fn validate_submetric(base: &FinSpace, gamma: &Matrix) -> Result<Report> {
    if base.len() != gamma.size() {
        return Err(Error::DimensionMismatch {
            expected: base.len(),
            found: gamma.size(),
        });
    }
    let mut report = Report::new(base.labels().to_vec());
    metric_violations(gamma, &mut report);
    for x in 0..base.len() {
        for y in 0..base.len() {
            if gamma.get(x, y) > base.d(x, y) {
                report.push(Violation::AboveBase {
                    x,
                    y,
                    value: gamma.get(x, y).clone(),
                    bound: base.d(x, y).clone(),
                });
            }
        }
    }
    Ok(report)
}

impl Submetric {
    pub fn new(base: FinSpace, gamma: Matrix) -> Result<Self> {
        let report = validate_submetric(&base, &gamma)?;
        if !report.is_valid() {
            return Err(Error::InvalidSubmetric(report));
        }
        Ok(Submetric { base, gamma })
    }

    pub(crate) fn new_unchecked(base: FinSpace, gamma: Matrix) -> Self {
        Submetric { base, gamma }
    }

    pub fn base(&self) -> &FinSpace {
        &self.base
    }

    pub fn gamma(&self) -> &Matrix {
        &self.gamma
    }

    /// The surjection `X ↠ X/~γ` with `d([x], [y]) = γ(x, y)`.
    ///
    /// Classes are labelled `[least member label]` and ordered by their
    /// first member. The base must be separated.
    pub fn quotient(&self) -> Result<FinMap> {
        if !self.base.is_separated() {
            return Err(Error::NotSeparated("base"));
        }
        let (target, classes) = quotient_by_metric(self.base.labels(), &self.gamma);
        Ok(FinMap::new_unchecked(self.base.clone(), target, classes))
    }
}

/// `κ_f(x, x') = d_Y(f x, f x')`, a submetric of the source.
pub fn kernel_metric(f: &FinMap) -> Submetric {
    let n = f.source().len();
    let gamma = Matrix::from_fn(n, |x, y| f.target().d(f.apply(x), f.apply(y)).clone());
    Submetric::new_unchecked(f.source().clone(), gamma)
}

pub fn quotient_by_submetric(gamma: &Submetric) -> Result<FinMap> {
    gamma.quotient()
}

/// `f ≤ g` in the quotient preorder, i.e. some `h` has `h ∘ f = g`;
/// decided by the matrix test `κ_g ≤ κ_f`.
pub fn quotient_leq(f: &FinMap, g: &FinMap) -> Result<bool> {
    if f.source() != g.source() {
        return Err(Error::NoCommonBoundary("source"));
    }
    if !f.is_surjective() {
        return Err(Error::NotSurjective("first map"));
    }
    if !g.is_surjective() {
        return Err(Error::NotSurjective("second map"));
    }
    Ok(kernel_metric(g).gamma().pointwise_le(kernel_metric(f).gamma()))
}

/// The comparison `ε_f: X/~κ_f → Y` with `ε_f ∘ p = f`, checked to be an
/// isomorphism.
pub fn counit_iso(f: &FinMap) -> Result<FinMap> {
    if !f.is_surjective() {
        return Err(Error::NotSurjective("map"));
    }
    if !f.target().is_separated() {
        return Err(Error::NotSeparated("target"));
    }
    let p = kernel_metric(f).quotient()?;
    let mut assignment = vec![usize::MAX; p.target().len()];
    for x in 0..f.source().len() {
        assignment[p.apply(x)] = f.apply(x);
    }
    let eps = FinMap::new_unchecked(p.target().clone(), f.target().clone(), assignment);
    assert!(eps.is_isomorphism(), "counit is not an isomorphism");
    Ok(eps)
}
