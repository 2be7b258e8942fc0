//! Non-expansive maps between finite spaces and the (surjection, embedding)
//! factorization.

use crate::error::{Error, Result};
use crate::report::{Report, Violation};
use crate::space::FinSpace;

/// A point assignment between finite spaces, stored by index.
///
/// Values built through [`FinMap::new`] are non-expansive:
/// `d_target(f x, f y) ≤ d_source(x, y)` for all `x, y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinMap {
    source: FinSpace,
    target: FinSpace,
    assignment: Vec<usize>,
}

impl FinMap {
    pub fn new(source: FinSpace, target: FinSpace, assignment: Vec<usize>) -> Result<Self> {
        let f = FinMap::candidate(source, target, assignment)?;
        let report = f.check_nonexpansive();
        if !report.is_valid() {
            return Err(Error::NotNonExpansive(report));
        }
        Ok(f)
    }

    /// A total assignment that has not been checked for non-expansiveness.
    pub fn candidate(source: FinSpace, target: FinSpace, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(Error::DimensionMismatch {
                expected: source.len(),
                found: assignment.len(),
            });
        }
        if let Some((index, &image)) = assignment.iter().enumerate().find(|(_, &t)| t >= target.len()) {
            return Err(Error::DanglingPoint {
                index,
                image,
                target_len: target.len(),
            });
        }
        Ok(FinMap {
            source,
            target,
            assignment,
        })
    }

    /// Builds a map from target labels listed in source order.
    pub fn from_labels(source: FinSpace, target: FinSpace, images: &[&str]) -> Result<Self> {
        let assignment = images
            .iter()
            .map(|l| target.index_of(l))
            .collect::<Result<Vec<_>>>()?;
        FinMap::new(source, target, assignment)
    }

    pub(crate) fn new_unchecked(source: FinSpace, target: FinSpace, assignment: Vec<usize>) -> Self {
        debug_assert_eq!(assignment.len(), source.len());
        FinMap {
            source,
            target,
            assignment,
        }
    }

    pub fn identity(space: &FinSpace) -> Self {
        FinMap::new_unchecked(space.clone(), space.clone(), (0..space.len()).collect())
    }

    /// The constant map onto `point` of `target`.
    pub fn constant(source: &FinSpace, target: &FinSpace, point: usize) -> Result<Self> {
        FinMap::new(source.clone(), target.clone(), vec![point; source.len()])
    }

    /// Inclusion of the subspace on `idx` (in that order).
    pub fn inclusion(space: &FinSpace, idx: &[usize]) -> Self {
        FinMap::new_unchecked(space.subspace(idx), space.clone(), idx.to_vec())
    }

    pub fn source(&self) -> &FinSpace {
        &self.source
    }

    pub fn target(&self) -> &FinSpace {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    /// Same assignment with a new target (used when a target is relabelled
    /// or rebuilt); not re-checked.
    pub(crate) fn with_target(&self, target: FinSpace) -> FinMap {
        FinMap::new_unchecked(self.source.clone(), target, self.assignment.clone())
    }

    /// Lists every pair `(x, y)` with `d'(f x, f y) > d(x, y)`.
    pub fn check_nonexpansive(&self) -> Report {
        let mut report = Report::new(self.source.labels().to_vec());
        let n = self.source.len();
        for x in 0..n {
            for y in 0..n {
                let target = self.target.d(self.assignment[x], self.assignment[y]);
                let source = self.source.d(x, y);
                if target > source {
                    report.push(Violation::Expanding {
                        x,
                        y,
                        source: source.clone(),
                        target: target.clone(),
                    });
                }
            }
        }
        report
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &FinMap) -> Result<FinMap> {
        if self.target != g.source {
            return Err(Error::BoundaryMismatch);
        }
        let assignment = self.assignment.iter().map(|&y| g.assignment[y]).collect();
        Ok(FinMap::new_unchecked(self.source.clone(), g.target.clone(), assignment))
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        self.assignment
            .iter()
            .all(|&y| !std::mem::replace(&mut hit[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        for &y in &self.assignment {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// Injective and distance-preserving.
    pub fn is_embedding(&self) -> bool {
        let n = self.source.len();
        self.is_injective()
            && (0..n).all(|x| {
                (0..n).all(|y| self.source.d(x, y) == self.target.d(self.assignment[x], self.assignment[y]))
            })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_embedding() && self.is_surjective()
    }

    /// Target indices hit by the map, ascending.
    pub fn image(&self) -> Vec<usize> {
        let mut img = self.assignment.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// Factors `self` as `i ∘ q` with `q` surjective onto the image
    /// subspace and `i` its inclusion. Both ends must be separated.
    pub fn factorize(&self) -> Result<Factorization> {
        if !self.source.is_separated() {
            return Err(Error::NotSeparated("source"));
        }
        if !self.target.is_separated() {
            return Err(Error::NotSeparated("target"));
        }
        let image = self.image();
        let embedding = FinMap::inclusion(&self.target, &image);
        let mut position = vec![usize::MAX; self.target.len()];
        for (k, &y) in image.iter().enumerate() {
            position[y] = k;
        }
        let surjection = FinMap::new_unchecked(
            self.source.clone(),
            embedding.source.clone(),
            self.assignment.iter().map(|&y| position[y]).collect(),
        );
        Ok(Factorization {
            surjection,
            embedding,
        })
    }
}

/// `f = embedding ∘ surjection`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub surjection: FinMap,
    pub embedding: FinMap,
}

pub fn check_nonexpansive(f: &FinMap) -> Report {
    f.check_nonexpansive()
}

/// `g ∘ f`.
pub fn compose(f: &FinMap, g: &FinMap) -> Result<FinMap> {
    f.then(g)
}

pub fn is_embedding(f: &FinMap) -> bool {
    f.is_embedding()
}

pub fn is_surjective(f: &FinMap) -> bool {
    f.is_surjective()
}

pub fn is_isomorphism(f: &FinMap) -> bool {
    f.is_isomorphism()
}

pub fn factorize(f: &FinMap) -> Result<Factorization> {
    f.factorize()
}
