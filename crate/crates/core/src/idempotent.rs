//! Min-plus idempotent cost matrices and idempotent boolean relations.
//!
//! An idempotent `ρ` (equal to its own min-plus square) on a finite
//! nonempty set factors through the points where `ρ(a, a) = 0`:
//! `ρ(x, y) = min_{a ∈ A} ρ(x, a) + ρ(a, y)`. The boolean version says an
//! idempotent relation `≺` admits, for each `x ≺ y`, some `a` with
//! `x ≺ a ≺ a ≺ y`.

use crate::error::{Error, Result};
use crate::ext::ExtValue;
use crate::matrix::{minplus_product, Matrix};

/// A square `[0, ∞]` matrix over a labelled point set, with no metric
/// axioms imposed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostMatrix {
    points: Vec<String>,
    rho: Matrix,
}

impl CostMatrix {
    pub fn new(points: Vec<String>, rho: Matrix) -> Result<Self> {
        if points.len() != rho.size() {
            return Err(Error::DimensionMismatch {
                expected: points.len(),
                found: rho.size(),
            });
        }
        Ok(CostMatrix { points, rho })
    }

    /// Points labelled `0, 1, …`.
    pub fn unlabelled(rho: Matrix) -> Self {
        let points = (0..rho.size()).map(|i| i.to_string()).collect();
        CostMatrix { points, rho }
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn rho(&self) -> &Matrix {
        &self.rho
    }

    fn nonempty(&self) -> Result<()> {
        if self.points.is_empty() {
            Err(Error::EmptyBase)
        } else {
            Ok(())
        }
    }

    /// `T(ρ)(x, y) = min_z ρ(x, z) + ρ(z, y)`.
    pub fn minplus_square(&self) -> Result<CostMatrix> {
        self.nonempty()?;
        Ok(CostMatrix {
            points: self.points.clone(),
            rho: minplus_product(&self.rho, &self.rho),
        })
    }

    pub fn is_idempotent(&self) -> Result<bool> {
        Ok(self.minplus_square()?.rho == self.rho)
    }

    /// `{x | ρ(x, x) = 0}`.
    pub fn zero_diagonal(&self) -> Vec<usize> {
        (0..self.points.len()).filter(|&x| self.rho.get(x, x).is_zero()).collect()
    }

    /// For every pair, the least-index `a` in the zero-diagonal set with
    /// `ρ(x, y) = ρ(x, a) + ρ(a, y)`.
    pub fn factor_through_zero_diagonal(&self) -> Result<FactorReport> {
        if !self.is_idempotent()? {
            return Err(Error::NotIdempotent);
        }
        let zero_set = self.zero_diagonal();
        let n = self.points.len();
        let mut pairs = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let target = self.rho.get(x, y);
                let best = zero_set.iter().map(|&a| self.rho.get(x, a) + self.rho.get(a, y)).min();
                let witness = if target.is_inf() {
                    match best {
                        None => PairFactor::Vacuous,
                        Some(v) if v.is_inf() => PairFactor::Vacuous,
                        Some(_) => PairFactor::Missing,
                    }
                } else {
                    zero_set
                        .iter()
                        .copied()
                        .find(|&a| &(self.rho.get(x, a) + self.rho.get(a, y)) == target)
                        .map_or(PairFactor::Missing, PairFactor::Witness)
                };
                pairs.push(((x, y), witness));
            }
        }
        Ok(FactorReport { zero_set, pairs })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairFactor {
    Witness(usize),
    /// `ρ(x, y) = inf` and so is the minimum through the zero set.
    Vacuous,
    Missing,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorReport {
    pub zero_set: Vec<usize>,
    pub pairs: Vec<((usize, usize), PairFactor)>,
}

impl FactorReport {
    pub fn full_coverage(&self) -> bool {
        self.pairs.iter().all(|(_, w)| *w != PairFactor::Missing)
    }

    pub fn witness(&self, x: usize, y: usize) -> Option<PairFactor> {
        self.pairs.iter().find(|(p, _)| *p == (x, y)).map(|(_, w)| *w)
    }
}

pub fn minplus_square(rho: &CostMatrix) -> Result<CostMatrix> {
    rho.minplus_square()
}

pub fn is_idempotent(rho: &CostMatrix) -> Result<bool> {
    rho.is_idempotent()
}

pub fn factor_through_zero_diagonal(rho: &CostMatrix) -> Result<FactorReport> {
    rho.factor_through_zero_diagonal()
}

/// `ρ(x, y) = min_{a ∈ A} d(x, a) + d(a, y)` for a metric `d`.
pub fn through_subset(dist: &Matrix, subset: &[usize]) -> Matrix {
    Matrix::from_fn(dist.size(), |x, y| {
        subset
            .iter()
            .map(|&a| dist.get(x, a) + dist.get(a, y))
            .min()
            .unwrap_or_else(ExtValue::inf)
    })
}

/// A boolean relation on a labelled point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoolRelation {
    points: Vec<String>,
    rel: Vec<Vec<bool>>,
}

impl BoolRelation {
    pub fn new(points: Vec<String>, rel: Vec<Vec<bool>>) -> Result<Self> {
        let n = points.len();
        if rel.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rel.len(),
            });
        }
        if let Some(row) = rel.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: row.len(),
            });
        }
        Ok(BoolRelation { points, rel })
    }

    pub fn unlabelled(rel: Vec<Vec<bool>>) -> Self {
        let points = (0..rel.len()).map(|i| i.to_string()).collect();
        BoolRelation { points, rel }
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn relates(&self, x: usize, y: usize) -> bool {
        self.rel[x][y]
    }

    pub fn relation(&self) -> &[Vec<bool>] {
        &self.rel
    }

    /// Existential composite: `x (R∘S) y` iff some `z` has `x R z` and `z S y`.
    pub fn compose(&self, other: &BoolRelation) -> BoolRelation {
        let n = self.points.len();
        let rel = (0..n)
            .map(|x| (0..n).map(|y| (0..n).any(|z| self.rel[x][z] && other.rel[z][y])).collect())
            .collect();
        BoolRelation {
            points: self.points.clone(),
            rel,
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.compose(self) == *self
    }

    /// The least-index `a` with `x R a`, `a R a` and `a R y`.
    pub fn density_witness(&self, x: usize, y: usize) -> Result<Option<usize>> {
        if !self.is_idempotent() {
            return Err(Error::RelationNotIdempotent);
        }
        if !self.rel[x][y] {
            return Err(Error::PairNotRelated(self.points[x].clone(), self.points[y].clone()));
        }
        Ok((0..self.points.len()).find(|&a| self.rel[x][a] && self.rel[a][a] && self.rel[a][y]))
    }
}

pub fn relation_density_witness(r: &BoolRelation, x: usize, y: usize) -> Result<Option<usize>> {
    r.density_witness(x, y)
}
