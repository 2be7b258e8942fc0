//! Finite Lawvere metric spaces and finite preorders.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::ext::ExtValue;
use crate::map::FinMap;
use crate::matrix::Matrix;
use crate::report::{Report, Violation};

/// A finite set of labelled points with a Lawvere metric.
///
/// Two spaces are equal when they have the same labels in the same order
/// and the same distance matrix; label-independent comparison lives in
/// [`crate::harness::brute_iso_check`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinSpace {
    labels: Vec<String>,
    dist: Matrix,
}

fn check_labels(labels: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

/// Lists every diagonal and triangle violation of a candidate metric.
///
/// Triangle instances are reported for pairwise distinct triples; the
/// degenerate ones are implied by a zero diagonal.
pub fn validate_metric(labels: &[String], dist: &Matrix) -> Result<Report> {
    if labels.len() != dist.size() {
        return Err(Error::DimensionMismatch {
            expected: labels.len(),
            found: dist.size(),
        });
    }
    let mut report = Report::new(labels.to_vec());
    metric_violations(dist, &mut report);
    Ok(report)
}

pub(crate) fn metric_violations(dist: &Matrix, report: &mut Report) {
    let n = dist.size();
    for x in 0..n {
        if !dist.get(x, x).is_zero() {
            report.push(Violation::Diagonal {
                point: x,
                value: dist.get(x, x).clone(),
            });
        }
    }
    for x in 0..n {
        for y in 0..n {
            if y == x {
                continue;
            }
            for z in 0..n {
                if z == x || z == y {
                    continue;
                }
                let via = dist.get(x, y) + dist.get(y, z);
                if dist.get(x, z) > &via {
                    report.push(Violation::Triangle {
                        x,
                        y,
                        z,
                        direct: dist.get(x, z).clone(),
                        via,
                    });
                }
            }
        }
    }
}

impl FinSpace {
    pub fn new(labels: Vec<String>, dist: Matrix) -> Result<Self> {
        check_labels(&labels)?;
        let report = validate_metric(&labels, &dist)?;
        if !report.is_valid() {
            return Err(Error::InvalidMetric(report));
        }
        Ok(FinSpace { labels, dist })
    }

    /// Builds a space from string labels and rows of value tokens.
    ///
    /// Panics on malformed tokens; meant for fixtures and tests.
    pub fn parse(labels: &[&str], rows: &[&[&str]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| s.parse().expect("value token")).collect())
            .collect();
        FinSpace::new(
            labels.iter().map(|s| s.to_string()).collect(),
            Matrix::from_rows(rows)?,
        )
    }

    pub(crate) fn new_unchecked(labels: Vec<String>, dist: Matrix) -> Self {
        debug_assert_eq!(labels.len(), dist.size());
        FinSpace { labels, dist }
    }

    pub fn empty() -> Self {
        FinSpace::new_unchecked(Vec::new(), Matrix::filled(0, ExtValue::zero()))
    }

    pub fn singleton(label: &str) -> Self {
        FinSpace::new_unchecked(vec![label.to_string()], Matrix::filled(1, ExtValue::zero()))
    }

    /// The discrete space: every distinct pair at distance `inf`.
    pub fn discrete(labels: Vec<String>) -> Result<Self> {
        check_labels(&labels)?;
        let n = labels.len();
        let dist = Matrix::from_fn(n, |i, j| if i == j { ExtValue::zero() } else { ExtValue::inf() });
        Ok(FinSpace::new_unchecked(labels, dist))
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn dist(&self) -> &Matrix {
        &self.dist
    }

    pub fn d(&self, i: usize, j: usize) -> &ExtValue {
        self.dist.get(i, j)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// The subspace on `idx` (in that order) with the restricted metric.
    pub fn subspace(&self, idx: &[usize]) -> FinSpace {
        FinSpace::new_unchecked(
            idx.iter().map(|&i| self.labels[i].clone()).collect(),
            self.dist.restrict(idx),
        )
    }

    /// Same metric, new labels.
    pub fn relabel(&self, labels: Vec<String>) -> Result<FinSpace> {
        if labels.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: labels.len(),
            });
        }
        check_labels(&labels)?;
        Ok(FinSpace::new_unchecked(labels, self.dist.clone()))
    }

    /// True iff no two distinct points are at distance zero both ways.
    pub fn is_separated(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| {
            (x + 1..n).all(|y| !(self.d(x, y).is_zero() && self.d(y, x).is_zero()))
        })
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (0..n).all(|y| self.d(x, y) == self.d(y, x)))
    }

    /// Identifies points at distance zero both ways.
    ///
    /// The quotient keeps the original distances between representatives
    /// and labels each class `[least member label]`.
    pub fn sep_reflection(&self) -> (FinSpace, FinMap) {
        let (quotient, classes) = quotient_by_metric(&self.labels, &self.dist);
        let proj = FinMap::new_unchecked(self.clone(), quotient, classes);
        (proj.target().clone(), proj)
    }

    /// `d_s(x, y) = max(d(x, y), d(y, x))`.
    pub fn symmetrize(&self) -> FinSpace {
        let dist = Matrix::from_fn(self.len(), |i, j| self.d(i, j).max_with(self.d(j, i)));
        FinSpace::new_unchecked(self.labels.clone(), dist)
    }

    /// The specialization preorder: `x ≤ y` iff `d(x, y) = 0`.
    pub fn to_order(&self) -> FinPreorder {
        let n = self.len();
        let rel = (0..n)
            .map(|x| (0..n).map(|y| self.d(x, y).is_zero()).collect())
            .collect();
        FinPreorder {
            labels: self.labels.clone(),
            rel,
        }
    }
}

/// Quotient of a point set by a (possibly non-separated) metric `gamma`:
/// `x ~ y` iff `gamma(x, y) = gamma(y, x) = 0`, with `d([x], [y]) = gamma(x, y)`.
///
/// Classes are numbered by their first member; the second component maps
/// each point to its class.
pub(crate) fn quotient_by_metric(labels: &[String], gamma: &Matrix) -> (FinSpace, Vec<usize>) {
    let n = labels.len();
    let mut class_of = Vec::with_capacity(n);
    let mut reps: Vec<usize> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        let found = reps
            .iter()
            .position(|&r| gamma.get(x, r).is_zero() && gamma.get(r, x).is_zero());
        match found {
            Some(c) => {
                class_of.push(c);
                members[c].push(x);
            }
            None => {
                class_of.push(reps.len());
                reps.push(x);
                members.push(vec![x]);
            }
        }
    }
    let class_labels = members
        .iter()
        .map(|ms| {
            let least = ms.iter().map(|&i| labels[i].as_str()).min().unwrap_or("");
            format!("[{least}]")
        })
        .collect();
    let dist = gamma.restrict(&reps);
    (FinSpace::new_unchecked(class_labels, dist), class_of)
}

/// A finite preorder: `rel[x][y]` means `x ≤ y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinPreorder {
    labels: Vec<String>,
    rel: Vec<Vec<bool>>,
}

impl FinPreorder {
    pub fn new(labels: Vec<String>, rel: Vec<Vec<bool>>) -> Result<Self> {
        check_labels(&labels)?;
        let n = labels.len();
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
        if let Some(x) = (0..n).find(|&x| !rel[x][x]) {
            return Err(Error::NotPreorder(format!("not reflexive at {}", labels[x])));
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if rel[x][y] && rel[y][z] && !rel[x][z] {
                        return Err(Error::NotPreorder(format!(
                            "not transitive at ({}, {}, {})",
                            labels[x], labels[y], labels[z]
                        )));
                    }
                }
            }
        }
        Ok(FinPreorder { labels, rel })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.rel[x][y]
    }

    pub fn relation(&self) -> &[Vec<bool>] {
        &self.rel
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.labels.len();
        (0..n).all(|x| (0..n).all(|y| x == y || !(self.rel[x][y] && self.rel[y][x])))
    }

    /// `d(x, y) = 0` if `x ≤ y`, `inf` otherwise.
    pub fn to_metric(&self) -> FinSpace {
        let dist = Matrix::from_fn(self.labels.len(), |x, y| {
            if self.rel[x][y] {
                ExtValue::zero()
            } else {
                ExtValue::inf()
            }
        });
        FinSpace::new_unchecked(self.labels.clone(), dist)
    }
}

pub fn is_separated(m: &FinSpace) -> bool {
    m.is_separated()
}

pub fn sep_reflection(m: &FinSpace) -> (FinSpace, FinMap) {
    m.sep_reflection()
}

pub fn symmetrize(m: &FinSpace) -> FinSpace {
    m.symmetrize()
}

pub fn order_to_metric(p: &FinPreorder) -> FinSpace {
    p.to_metric()
}

pub fn metric_to_order(m: &FinSpace) -> FinPreorder {
    m.to_order()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{s1, x2};

    fn labels(ls: &[&str]) -> Vec<String> {
        ls.iter().map(|s| s.to_string()).collect()
    }

    fn rows(rs: &[&[&str]]) -> Matrix {
        Matrix::from_rows(rs.iter().map(|r| r.iter().map(|s| s.parse().unwrap()).collect()).collect())
            .unwrap()
    }

    /// Independent oracle: every (x, y, z), degenerate ones included.
    fn brute_triangle_failures(dist: &Matrix) -> Vec<(usize, usize, usize)> {
        let n = dist.size();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if dist.get(x, z) > &(dist.get(x, y) + dist.get(y, z)) {
                        out.push((x, y, z));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn validate_examples() {
        assert!(validate_metric(x2().labels(), x2().dist()).unwrap().is_valid());

        let bad_diag = rows(&[&["1", "0"], &["0", "0"]]);
        let r = validate_metric(&labels(&["a", "b"]), &bad_diag).unwrap();
        assert_eq!(
            r.violations,
            vec![Violation::Diagonal {
                point: 0,
                value: ExtValue::integer(1)
            }]
        );

        let bad_tri = rows(&[&["0", "1", "3"], &["3", "0", "1"], &["3", "3", "0"]]);
        let r = validate_metric(&labels(&["x", "y", "z"]), &bad_tri).unwrap();
        assert_eq!(brute_triangle_failures(&bad_tri), vec![(0, 1, 2)]);
        assert_eq!(
            r.violations,
            vec![Violation::Triangle {
                x: 0,
                y: 1,
                z: 2,
                direct: ExtValue::integer(3),
                via: ExtValue::integer(2)
            }]
        );
        assert_eq!(r.lines(), vec!["triangle: d(x,z) = 3 > 2 = d(x,y) + d(y,z)"]);
    }

    #[test]
    fn validate_reports_dimension_mismatch() {
        let err = validate_metric(&labels(&["a"]), &rows(&[&["0", "1"], &["1", "0"]])).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
        assert!(matches!(
            FinSpace::parse(&["a", "a"], &[&["0", "1"], &["1", "0"]]),
            Err(Error::DuplicateLabel(_))
        ));
    }

    #[test]
    fn separation_examples() {
        assert!(x2().is_separated());
        assert!(s1().is_separated());
        assert!(FinSpace::empty().is_separated());
        let uv = FinSpace::parse(&["u", "v"], &[&["0", "0"], &["0", "0"]]).unwrap();
        assert!(!uv.is_separated());
    }

    #[test]
    fn sep_reflection_examples() {
        let uv = FinSpace::parse(&["u", "v"], &[&["0", "0"], &["0", "0"]]).unwrap();
        let (q, p) = uv.sep_reflection();
        assert_eq!(q.len(), 1);
        assert_eq!(p.assignment(), &[0, 0]);

        let (q, p) = x2().sep_reflection();
        assert_eq!(q.dist(), x2().dist());
        assert_eq!(p.assignment(), &[0, 1]);
        assert!(p.is_isomorphism());

        let uvw = FinSpace::parse(
            &["u", "v", "w"],
            &[&["0", "0", "2"], &["0", "0", "2"], &["2", "2", "0"]],
        )
        .unwrap();
        let (q, p) = uvw.sep_reflection();
        assert_eq!(q.labels(), &["[u]", "[w]"]);
        assert_eq!(q.dist(), &rows(&[&["0", "2"], &["2", "0"]]));
        assert!(q.is_separated());
        assert!(p.is_surjective());
        assert!(p.check_nonexpansive().is_valid());
    }

    #[test]
    fn symmetrize_examples() {
        assert_eq!(x2().symmetrize(), x2());
        let pq = FinSpace::parse(&["p", "q"], &[&["0", "0"], &["inf", "0"]]).unwrap();
        assert_eq!(pq.symmetrize().dist(), &rows(&[&["0", "inf"], &["inf", "0"]]));
        let xy = FinSpace::parse(&["x", "y"], &[&["0", "1"], &["2", "0"]]).unwrap();
        assert_eq!(xy.symmetrize().dist(), &rows(&[&["0", "2"], &["2", "0"]]));
    }

    #[test]
    fn order_metric_bridge() {
        let discrete = FinPreorder::new(labels(&["a", "b"]), vec![vec![true, false], vec![false, true]]).unwrap();
        assert_eq!(discrete.to_metric().dist(), &rows(&[&["0", "inf"], &["inf", "0"]]));

        let chain = FinPreorder::new(labels(&["p", "q"]), vec![vec![true, true], vec![false, true]]).unwrap();
        let m = chain.to_metric();
        assert_eq!(m.dist(), &rows(&[&["0", "0"], &["inf", "0"]]));
        assert!(m.is_separated());
        assert_eq!(m.to_order(), chain);

        let total = FinPreorder::new(labels(&["u", "v"]), vec![vec![true; 2]; 2]).unwrap();
        assert_eq!(total.to_metric().dist(), &rows(&[&["0", "0"], &["0", "0"]]));
        assert!(!total.is_antisymmetric());
        assert!(!total.to_metric().is_separated());

        assert_eq!(x2().to_order(), discrete);
        let xy = FinSpace::parse(&["x", "y"], &[&["0", "0"], &["3", "0"]]).unwrap();
        assert_eq!(xy.to_order().relation(), &[vec![true, true], vec![false, true]]);
    }

    #[test]
    fn preorder_rejects_bad_relations() {
        let err = FinPreorder::new(labels(&["a", "b"]), vec![vec![false, false], vec![false, true]]);
        assert!(matches!(err, Err(Error::NotPreorder(_))));
        let r = vec![
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true],
        ];
        assert!(matches!(FinPreorder::new(labels(&["a", "b", "c"]), r), Err(Error::NotPreorder(_))));
    }
}
