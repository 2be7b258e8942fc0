//! Binary corelations on `X`, stored as submetrics of `X + X` split into
//! four `X`-indexed blocks `Γ_ij[x][y] = Γ((x,i), (y,j))`.

use std::fmt;

use crate::error::{Error, Result};
use crate::ext::ExtValue;
use crate::limits::coproduct;
use crate::map::FinMap;
use crate::matrix::{minplus_product, Matrix};
use crate::quotient::{kernel_metric, validate_submetric, Submetric};
use crate::report::Report;
use crate::space::FinSpace;

/// A point `(x, i)` of `X + X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockPoint {
    pub point: usize,
    pub side: usize,
}

impl BlockPoint {
    pub fn new(point: usize, side: usize) -> Self {
        BlockPoint { point, side }
    }

    /// `(x, i*)`.
    pub fn flipped(self) -> Self {
        BlockPoint::new(self.point, 1 - self.side)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMetric {
    base: FinSpace,
    blocks: [Matrix; 4],
}

/// `d(x, y) > Γ((x,i), (y,j))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflexivityViolation {
    pub from: BlockPoint,
    pub to: BlockPoint,
    pub value: ExtValue,
    pub bound: ExtValue,
}

/// `Γ((x,i), (y,j)) ≠ Γ((x,i*), (y,j*))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryViolation {
    pub from: BlockPoint,
    pub to: BlockPoint,
    pub value: ExtValue,
    pub mirrored: ExtValue,
}

/// `Γ((x,i), (y,i*)) ≠ min_z Γ((x,i), (z,i*)) + Γ((z,i), (y,i*))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitivityViolation {
    pub side: usize,
    pub x: usize,
    pub y: usize,
    pub value: ExtValue,
    pub composite: ExtValue,
}

impl BlockMetric {
    /// Assembles four blocks without checking the submetric axioms.
    pub fn from_blocks(base: FinSpace, g00: Matrix, g01: Matrix, g10: Matrix, g11: Matrix) -> Result<Self> {
        let blocks = [g00, g01, g10, g11];
        if let Some(b) = blocks.iter().find(|b| b.size() != base.len()) {
            return Err(Error::DimensionMismatch {
                expected: base.len(),
                found: b.size(),
            });
        }
        Ok(BlockMetric { base, blocks })
    }

    /// Assembles and validates against the coproduct metric of `X + X`.
    pub fn new(base: FinSpace, g00: Matrix, g01: Matrix, g10: Matrix, g11: Matrix) -> Result<Self> {
        let g = BlockMetric::from_blocks(base, g00, g01, g10, g11)?;
        let report = g.validate();
        if !report.is_valid() {
            return Err(Error::InvalidSubmetric(report));
        }
        Ok(g)
    }

    /// Splits a submetric on `X + X` (summand order `0`, `1`).
    pub fn from_matrix(base: FinSpace, whole: &Matrix) -> Result<Self> {
        let n = base.len();
        if whole.size() != 2 * n {
            return Err(Error::DimensionMismatch {
                expected: 2 * n,
                found: whole.size(),
            });
        }
        let block = |i: usize, j: usize| Matrix::from_fn(n, |x, y| whole.get(i * n + x, j * n + y).clone());
        BlockMetric::from_blocks(base, block(0, 0), block(0, 1), block(1, 0), block(1, 1))
    }

    pub fn base(&self) -> &FinSpace {
        &self.base
    }

    pub fn block(&self, i: usize, j: usize) -> &Matrix {
        &self.blocks[2 * i + j]
    }

    pub fn get(&self, from: BlockPoint, to: BlockPoint) -> &ExtValue {
        self.block(from.side, to.side).get(from.point, to.point)
    }

    /// The whole matrix on `X + X`, summand `0` first.
    pub fn to_matrix(&self) -> Matrix {
        let n = self.base.len();
        Matrix::from_fn(2 * n, |s, t| self.block(s / n.max(1), t / n.max(1)).get(s % n, t % n).clone())
    }

    /// `(x,i)` labels in `X + X` order.
    pub fn point_labels(&self) -> Vec<String> {
        (0..2)
            .flat_map(|i| self.base.labels().iter().map(move |l| format!("({l},{i})")))
            .collect()
    }

    pub fn describe_point(&self, p: BlockPoint) -> String {
        format!("({},{})", self.base.label(p.point), p.side)
    }

    /// Metric-axiom and below-`d_{X+X}` violations, labelled `(x,i)`.
    pub fn validate(&self) -> Report {
        let (sum, _, _) = coproduct(&self.base, &self.base);
        let mut report = validate_submetric(&sum, &self.to_matrix()).expect("square by construction");
        report.labels = self.point_labels();
        report
    }

    pub fn to_submetric(&self) -> Result<Submetric> {
        let (sum, _, _) = coproduct(&self.base, &self.base);
        Submetric::new(sum, self.to_matrix())
    }

    fn all_pairs(&self) -> impl Iterator<Item = (BlockPoint, BlockPoint)> {
        let n = self.base.len();
        (0..2).flat_map(move |i| {
            (0..n).flat_map(move |x| {
                (0..2).flat_map(move |j| (0..n).map(move |y| (BlockPoint::new(x, i), BlockPoint::new(y, j))))
            })
        })
    }

    /// First pair with `d(x, y) > Γ((x,i), (y,j))`.
    pub fn reflexivity_violation(&self) -> Option<ReflexivityViolation> {
        self.all_pairs().find_map(|(s, t)| {
            let value = self.get(s, t);
            let bound = self.base.d(s.point, t.point);
            (bound > value).then(|| ReflexivityViolation {
                from: s,
                to: t,
                value: value.clone(),
                bound: bound.clone(),
            })
        })
    }

    pub fn is_reflexive(&self) -> bool {
        self.reflexivity_violation().is_none()
    }

    pub fn symmetry_violation(&self) -> Option<SymmetryViolation> {
        self.all_pairs().find_map(|(s, t)| {
            let value = self.get(s, t);
            let mirrored = self.get(s.flipped(), t.flipped());
            (value != mirrored).then(|| SymmetryViolation {
                from: s,
                to: t,
                value: value.clone(),
                mirrored: mirrored.clone(),
            })
        })
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetry_violation().is_none()
    }

    /// Transitivity is only characterized for reflexive corelations; other
    /// inputs are an error.
    pub fn transitivity_violation(&self) -> Result<Option<TransitivityViolation>> {
        if !self.is_reflexive() {
            return Err(Error::NotReflexive);
        }
        for side in 0..2 {
            let cross = self.block(side, 1 - side);
            let composite = minplus_product(cross, cross);
            for x in 0..self.base.len() {
                for y in 0..self.base.len() {
                    if cross.get(x, y) != composite.get(x, y) {
                        return Ok(Some(TransitivityViolation {
                            side,
                            x,
                            y,
                            value: cross.get(x, y).clone(),
                            composite: composite.get(x, y).clone(),
                        }));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn is_transitive(&self) -> Result<bool> {
        Ok(self.transitivity_violation()?.is_none())
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_reflexive() && self.is_symmetric() && self.is_transitive().unwrap_or(false)
    }

    /// Points whose cross self-distance vanishes.
    pub fn zero_locus(&self) -> Result<Vec<usize>> {
        if !self.is_equivalence() {
            return Err(Error::NotEquivalence);
        }
        let locus = |i: usize, j: usize| -> Vec<usize> {
            (0..self.base.len()).filter(|&a| self.block(i, j).get(a, a).is_zero()).collect()
        };
        let a = locus(0, 1);
        assert_eq!(a, locus(1, 0), "zero locus differs between cross blocks");
        Ok(a)
    }

    /// Effective iff the corelation equals `γ^A` for its own zero locus `A`.
    pub fn is_effective(&self) -> Result<bool> {
        let a = self.zero_locus()?;
        let expected = gamma_from_subset_unchecked(&self.base, &a);
        Ok(&expected == self)
    }

    pub fn describe_reflexivity(&self, v: &ReflexivityViolation) -> String {
        format!(
            "d({},{}) = {} > {} = G({},{})",
            self.base.label(v.from.point),
            self.base.label(v.to.point),
            v.bound,
            v.value,
            self.describe_point(v.from),
            self.describe_point(v.to)
        )
    }

    pub fn describe_symmetry(&self, v: &SymmetryViolation) -> String {
        format!(
            "G({},{}) = {} != {} = G({},{})",
            self.describe_point(v.from),
            self.describe_point(v.to),
            v.value,
            v.mirrored,
            self.describe_point(v.from.flipped()),
            self.describe_point(v.to.flipped())
        )
    }

    pub fn describe_transitivity(&self, v: &TransitivityViolation) -> String {
        let (x, y) = (self.base.label(v.x), self.base.label(v.y));
        let (i, j) = (v.side, 1 - v.side);
        format!("G(({x},{i}),({y},{j})) = {} != {} = min_z G(({x},{i}),(z,{j})) + G((z,{i}),({y},{j}))", v.value, v.composite)
    }
}

impl fmt::Display for BlockMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, (i, j)) in [("g00", (0, 0)), ("g01", (0, 1)), ("g10", (1, 0)), ("g11", (1, 1))] {
            writeln!(f, "{name}:")?;
            write!(f, "{}", self.block(i, j))?;
        }
        Ok(())
    }
}

fn gamma_from_subset_unchecked(x: &FinSpace, subset: &[usize]) -> BlockMetric {
    let n = x.len();
    let cross = Matrix::from_fn(n, |p, q| {
        subset
            .iter()
            .map(|&a| x.d(p, a) + x.d(a, q))
            .min()
            .unwrap_or_else(ExtValue::inf)
    });
    BlockMetric {
        base: x.clone(),
        blocks: [x.dist().clone(), cross.clone(), cross, x.dist().clone()],
    }
}

/// `γ^A`: diagonal blocks `d`, cross blocks `min_{a ∈ A} d(x, a) + d(a, y)`.
pub fn gamma_from_subset(x: &FinSpace, subset: &[usize]) -> Result<BlockMetric> {
    if !x.is_separated() {
        return Err(Error::NotSeparated("base"));
    }
    if let Some(&bad) = subset.iter().find(|&&a| a >= x.len()) {
        return Err(Error::UnknownLabel(format!("#{bad}")));
    }
    let mut a = subset.to_vec();
    a.sort_unstable();
    a.dedup();
    Ok(gamma_from_subset_unchecked(x, &a))
}

/// [`gamma_from_subset`] with the subset given by labels.
pub fn gamma_from_labels(x: &FinSpace, labels: &[&str]) -> Result<BlockMetric> {
    let idx = labels.iter().map(|l| x.index_of(l)).collect::<Result<Vec<_>>>()?;
    gamma_from_subset(x, &idx)
}

/// The kernel metric of the copairing `X + X → S` of `q0, q1: X → S`.
pub fn corelation_from_cospan(q0: &FinMap, q1: &FinMap) -> Result<BlockMetric> {
    if q0.source() != q1.source() || q0.target() != q1.target() {
        return Err(Error::NotParallel);
    }
    let x = q0.source();
    let (sum, _, _) = coproduct(x, x);
    let assignment = q0.assignment().iter().chain(q1.assignment()).copied().collect();
    let copair = FinMap::new(sum, q0.target().clone(), assignment)?;
    if !copair.is_surjective() {
        return Err(Error::NotJointlySurjective);
    }
    BlockMetric::from_matrix(x.clone(), kernel_metric(&copair).gamma())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{singleton_corelation, two_point_closed, two_point_literal, x2};
    use crate::pushout::cokernel_pair;
    use crate::report::Violation;

    fn sym_block(base: &FinSpace, cross: Matrix) -> BlockMetric {
        BlockMetric::new(base.clone(), base.dist().clone(), cross.clone(), cross, base.dist().clone()).unwrap()
    }

    #[test]
    fn from_cospan_examples() {
        let id = FinMap::identity(&x2());
        let g = corelation_from_cospan(&id, &id).unwrap();
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert_eq!(g.block(i, j), x2().dist());
        }

        let (sum, j0, j1) = coproduct(&x2(), &x2());
        let g = corelation_from_cospan(&j0, &j1).unwrap();
        assert_eq!(g.to_matrix(), *sum.dist());

        let cp = cokernel_pair(&FinMap::inclusion(&x2(), &[0])).unwrap();
        let g = corelation_from_cospan(&cp.q0, &cp.q1).unwrap();
        let x = x2();
        for p in 0..2 {
            for q in 0..2 {
                assert_eq!(g.block(0, 1).get(p, q), &(x.d(p, 0) + x.d(0, q)));
            }
        }

        let a = FinMap::inclusion(&x2(), &[0]);
        let pick = FinMap::identity(a.source());
        assert!(matches!(corelation_from_cospan(&pick, &a), Err(Error::NotParallel)));
        let c = FinMap::constant(&x2(), &x2(), 0).unwrap();
        assert!(matches!(corelation_from_cospan(&c, &c), Err(Error::NotJointlySurjective)));
    }

    #[test]
    fn reflexive_examples() {
        let id = FinMap::identity(&x2());
        assert!(corelation_from_cospan(&id, &id).unwrap().is_reflexive());
        let (_, j0, j1) = coproduct(&x2(), &x2());
        assert!(corelation_from_cospan(&j0, &j1).unwrap().is_reflexive());

        let half = ExtValue::ratio(1, 2);
        let mut g00 = x2().dist().clone();
        g00.set(0, 1, half.clone());
        let inf = Matrix::from_fn(2, |_, _| ExtValue::inf());
        let g = BlockMetric::new(x2(), g00, inf.clone(), inf, x2().dist().clone()).unwrap();
        let v = g.reflexivity_violation().unwrap();
        assert_eq!((v.from, v.to), (BlockPoint::new(0, 0), BlockPoint::new(1, 0)));
        assert_eq!(v.value, half);
    }

    #[test]
    fn symmetric_examples() {
        let g = singleton_corelation();
        assert!(g.validate().is_valid());
        assert!(g.is_reflexive());
        assert!(!g.is_symmetric());
        let v = g.symmetry_violation().unwrap();
        assert_eq!(g.describe_symmetry(&v), "G((*,0),(*,1)) = 0 != inf = G((*,1),(*,0))");

        assert!(gamma_from_labels(&x2(), &["a"]).unwrap().is_symmetric());
        let (_, j0, j1) = coproduct(&x2(), &x2());
        assert!(corelation_from_cospan(&j0, &j1).unwrap().is_symmetric());
    }

    #[test]
    fn transitive_examples() {
        assert!(gamma_from_labels(&x2(), &["a"]).unwrap().is_transitive().unwrap());

        let three = Matrix::filled(2, ExtValue::integer(3));
        let g = sym_block(&x2(), three);
        let v = g.transitivity_violation().unwrap().unwrap();
        assert_eq!(v.value, ExtValue::integer(3));
        assert_eq!(v.composite, ExtValue::integer(6));

        let id = FinMap::identity(&x2());
        assert!(corelation_from_cospan(&id, &id).unwrap().is_transitive().unwrap());

        let mut g00 = x2().dist().clone();
        g00.set(0, 1, ExtValue::ratio(1, 2));
        let inf = Matrix::filled(2, ExtValue::inf());
        let not_refl = BlockMetric::new(x2(), g00, inf.clone(), inf, x2().dist().clone()).unwrap();
        assert!(matches!(not_refl.is_transitive(), Err(Error::NotReflexive)));
    }

    #[test]
    fn two_point_fixtures() {
        let literal = two_point_literal();
        let report = literal.validate();
        let a0_b0 = Violation::AboveBase {
            x: 0,
            y: 1,
            value: ExtValue::inf(),
            bound: ExtValue::integer(1),
        };
        assert!(report.violations.contains(&a0_b0));
        assert_eq!(report.describe(&a0_b0), "above base: gamma((a,0),(b,0)) = inf > 1 = d((a,0),(b,0))");

        let closed = two_point_closed();
        assert!(closed.validate().is_valid());
        assert!(closed.is_reflexive());
        assert!(!closed.is_symmetric());
        assert!(!closed.is_transitive().unwrap());
        assert!(!closed.is_equivalence());

        // the closed fixture is the min-plus closure of the literal arcs over d-blocks
        let mut costs = literal.to_matrix();
        for (s, t, v) in [(0, 1, "1"), (1, 0, "1"), (2, 3, "1"), (3, 2, "1")] {
            costs.set(s, t, v.parse().unwrap());
        }
        assert_eq!(crate::matrix::minplus_closure(&costs), closed.to_matrix());
    }

    #[test]
    fn gamma_from_subset_examples() {
        let x = x2();
        let full = gamma_from_labels(&x, &["a", "b"]).unwrap();
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert_eq!(full.block(i, j), x.dist());
        }
        let none = gamma_from_subset(&x, &[]).unwrap();
        assert_eq!(none.block(0, 1), &Matrix::filled(2, ExtValue::inf()));

        let at_a = gamma_from_labels(&x, &["a"]).unwrap();
        let expect: Vec<Vec<ExtValue>> = vec![
            vec![ExtValue::zero(), ExtValue::integer(1)],
            vec![ExtValue::integer(1), ExtValue::integer(2)],
        ];
        assert_eq!(at_a.block(0, 1).to_rows(), expect);
        assert!(at_a.validate().is_valid());
        assert!(matches!(gamma_from_labels(&x, &["c"]), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn zero_locus_and_effectiveness() {
        let x = x2();
        assert_eq!(gamma_from_labels(&x, &["a"]).unwrap().zero_locus().unwrap(), vec![0]);
        assert_eq!(gamma_from_labels(&x, &["a", "b"]).unwrap().zero_locus().unwrap(), vec![0, 1]);
        assert_eq!(gamma_from_subset(&x, &[]).unwrap().zero_locus().unwrap(), Vec::<usize>::new());

        for subset in [vec![], vec![0], vec![1], vec![0, 1]] {
            assert!(gamma_from_subset(&x, &subset).unwrap().is_effective().unwrap());
        }
        let cp = cokernel_pair(&FinMap::inclusion(&x, &[1])).unwrap();
        assert!(corelation_from_cospan(&cp.q0, &cp.q1).unwrap().is_effective().unwrap());

        assert!(matches!(singleton_corelation().is_effective(), Err(Error::NotEquivalence)));
        assert!(matches!(two_point_closed().zero_locus(), Err(Error::NotEquivalence)));
    }
}
