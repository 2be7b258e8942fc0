//! Seeded generators and exhaustive oracles for tests and self-test suites.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corelation::{gamma_from_subset, BlockMetric};
use crate::error::{Error, Result};
use crate::ext::ExtValue;
use crate::map::FinMap;
use crate::matrix::{minplus_closure, Matrix};
use crate::pushout::PushoutResult;
use crate::quotient::Submetric;
use crate::space::FinSpace;

pub const MEDIATOR_CAP: u128 = 4096;
pub const ISO_MAX_POINTS: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    pub max_points: usize,
    pub value_grid: Vec<ExtValue>,
    pub trials: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            max_points: 6,
            value_grid: default_grid(),
            trials: 100,
        }
    }
}

/// `{0, 1/2, 1, 2, inf}`.
pub fn default_grid() -> Vec<ExtValue> {
    vec![
        ExtValue::zero(),
        ExtValue::ratio(1, 2),
        ExtValue::integer(1),
        ExtValue::integer(2),
        ExtValue::inf(),
    ]
}

impl GenConfig {
    pub fn with_seed(seed: u64) -> Self {
        GenConfig {
            seed,
            ..GenConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.value_grid.is_empty() {
            return Err(Error::InvalidConfig("value grid is empty"));
        }
        if !self.value_grid.iter().any(ExtValue::is_zero) {
            return Err(Error::InvalidConfig("value grid does not contain 0"));
        }
        Ok(())
    }
}

/// A stream of random objects driven by one ChaCha8 generator.
#[derive(Debug, Clone)]
pub struct Generator {
    cfg: GenConfig,
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(cfg: GenConfig) -> Self {
        let rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        Generator { cfg, rng }
    }

    pub fn config(&self) -> &GenConfig {
        &self.cfg
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A point count in `1..=max_points`, or 0 when `max_points` is 0.
    pub fn point_count(&mut self) -> usize {
        match self.cfg.max_points {
            0 => 0,
            m => self.rng.gen_range(1..=m),
        }
    }

    pub fn value(&mut self) -> ExtValue {
        self.cfg.value_grid.choose(&mut self.rng).cloned().unwrap_or_else(ExtValue::zero)
    }

    /// An `n × n` grid matrix with zero diagonal.
    pub fn cost_matrix(&mut self, n: usize) -> Matrix {
        Matrix::from_fn(n, |i, j| if i == j { ExtValue::zero() } else { self.value() })
    }

    /// A separated metric on at most `max_points` points, labelled `p0, p1, …`.
    pub fn metric(&mut self) -> FinSpace {
        let n = self.point_count();
        self.metric_on(n)
    }

    /// As [`Generator::metric`] starting from exactly `n` points; separation
    /// may merge some of them.
    pub fn metric_on(&mut self, n: usize) -> FinSpace {
        let costs = self.cost_matrix(n);
        let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        let raw = FinSpace::new_unchecked(labels, minplus_closure(&costs));
        let (sep, _) = raw.sep_reflection();
        let labels = (0..sep.len()).map(|i| format!("p{i}")).collect();
        sep.relabel(labels).expect("fresh labels are distinct")
    }

    /// Grid samples capped by `d_X`, zero diagonal, closed.
    pub fn submetric(&mut self, x: &FinSpace) -> Submetric {
        let n = x.len();
        let costs = Matrix::from_fn(n, |i, j| {
            if i == j {
                ExtValue::zero()
            } else {
                self.value().min_with(x.d(i, j))
            }
        });
        Submetric::new_unchecked(x.clone(), minplus_closure(&costs))
    }

    /// Each point kept with probability 1/2, in increasing order.
    pub fn subset(&mut self, n: usize) -> Vec<usize> {
        (0..n).filter(|_| self.rng.gen_bool(0.5)).collect()
    }

    /// `γ^A` for a random `A ⊆ X`. `X` must be separated.
    pub fn equivalence(&mut self, x: &FinSpace) -> BlockMetric {
        let a = self.subset(x.len());
        gamma_from_subset(x, &a).expect("generated spaces are separated")
    }

    /// The quotient map of a random submetric of `X`.
    pub fn surjection(&mut self, x: &FinSpace) -> FinMap {
        self.submetric(x).quotient().expect("generated spaces are separated")
    }

    /// A random non-expansive map, by rejection with a constant-map
    /// fallback. `None` only when the target is empty and the source is not.
    pub fn map(&mut self, source: &FinSpace, target: &FinSpace) -> Option<FinMap> {
        if target.is_empty() {
            return FinMap::new(source.clone(), target.clone(), vec![]).ok();
        }
        for _ in 0..64 {
            let assignment = (0..source.len()).map(|_| self.rng.gen_range(0..target.len())).collect();
            if let Ok(f) = FinMap::new(source.clone(), target.clone(), assignment) {
                return Some(f);
            }
        }
        let c = self.rng.gen_range(0..target.len());
        FinMap::constant(source, target, c).ok()
    }

    /// A random subspace inclusion `A ↪ X`.
    pub fn embedding_into(&mut self, x: &FinSpace) -> FinMap {
        let a = self.subset(x.len());
        FinMap::inclusion(x, &a)
    }
}

pub fn gen_metric(cfg: &GenConfig) -> FinSpace {
    Generator::new(cfg.clone()).metric()
}

pub fn gen_submetric(x: &FinSpace, cfg: &GenConfig) -> Submetric {
    Generator::new(cfg.clone()).submetric(x)
}

pub fn gen_equivalence(x: &FinSpace, cfg: &GenConfig) -> BlockMetric {
    Generator::new(cfg.clone()).equivalence(x)
}

fn candidate_count(source: usize, target: usize) -> u128 {
    (0..source).try_fold(1u128, |acc, _| acc.checked_mul(target as u128)).unwrap_or(u128::MAX)
}

/// Every non-expansive `u: source → target` whose assignment satisfies
/// `accept`, by exhaustive search over all `|target|^|source|` functions.
pub fn enumerate_mediators<F>(source: &FinSpace, target: &FinSpace, accept: F) -> Result<Vec<FinMap>>
where
    F: Fn(&[usize]) -> bool,
{
    let candidates = candidate_count(source.len(), target.len());
    if candidates > MEDIATOR_CAP {
        return Err(Error::CapExceeded {
            candidates,
            cap: MEDIATOR_CAP,
        });
    }
    let (n, m) = (source.len(), target.len());
    let mut found = Vec::new();
    let mut assignment = vec![0usize; n];
    for _ in 0..candidates {
        let expands = (0..n).any(|x| (0..n).any(|y| target.d(assignment[x], assignment[y]) > source.d(x, y)));
        if !expands && accept(&assignment) {
            found.push(FinMap::new_unchecked(source.clone(), target.clone(), assignment.clone()));
        }
        for slot in assignment.iter_mut() {
            *slot += 1;
            if *slot < m {
                break;
            }
            *slot = 0;
        }
    }
    Ok(found)
}

fn factors(leg: &FinMap, u: &[usize], expected: &FinMap) -> bool {
    (0..leg.source().len()).all(|s| u[leg.apply(s)] == expected.apply(s))
}

fn through(u: &[usize], first: &FinMap, leg: &FinMap, expected: &FinMap) -> bool {
    (0..first.source().len()).all(|s| leg.apply(u[first.apply(s)]) == expected.apply(s))
}

/// Mediators `u: W → P` with `π_k ∘ u = c_k` for a product `(P, π1, π2)`.
pub fn product_mediators(
    pi1: &FinMap,
    pi2: &FinMap,
    c1: &FinMap,
    c2: &FinMap,
) -> Result<Vec<FinMap>> {
    let w = c1.source();
    enumerate_mediators(w, pi1.source(), |u| {
        (0..w.len()).all(|s| pi1.apply(u[s]) == c1.apply(s) && pi2.apply(u[s]) == c2.apply(s))
    })
}

/// Mediators `u: M1 + M2 → T` with `u ∘ ι_k = c_k`.
pub fn coproduct_mediators(
    iota1: &FinMap,
    iota2: &FinMap,
    c1: &FinMap,
    c2: &FinMap,
) -> Result<Vec<FinMap>> {
    enumerate_mediators(iota1.target(), c1.target(), |u| factors(iota1, u, c1) && factors(iota2, u, c2))
}

/// Mediators `u: W → E` with `e ∘ u = h`.
pub fn equalizer_mediators(e: &FinMap, h: &FinMap) -> Result<Vec<FinMap>> {
    let w = h.source();
    enumerate_mediators(w, e.source(), |u| (0..w.len()).all(|s| e.apply(u[s]) == h.apply(s)))
}

/// Mediators `u: P → T` with `u ∘ into_x = g` and `u ∘ into_b = j`.
pub fn pushout_mediators(result: &PushoutResult, g: &FinMap, j: &FinMap) -> Result<Vec<FinMap>> {
    enumerate_mediators(result.apex(), g.target(), |u| {
        factors(&result.into_x, u, g) && factors(&result.into_b, u, j)
    })
}

/// Fillers `w: B → C` of the square `i ∘ u = v ∘ q` with `w ∘ q = u` and
/// `i ∘ w = v`, for `q: A → B`, `i: C → D`, `u: A → C`, `v: B → D`.
pub fn diagonal_fillers(q: &FinMap, i: &FinMap, u: &FinMap, v: &FinMap) -> Result<Vec<FinMap>> {
    let b = q.target();
    enumerate_mediators(b, i.source(), |w| {
        through(w, q, &FinMap::identity(i.source()), u) && (0..b.len()).all(|s| i.apply(w[s]) == v.apply(s))
    })
}

/// True iff some bijection preserves every distance exactly.
pub fn brute_iso_check(m1: &FinSpace, m2: &FinSpace) -> Result<bool> {
    let n = m1.len().max(m2.len());
    if n > ISO_MAX_POINTS {
        let candidates = (1..=n as u128).product();
        return Err(Error::CapExceeded {
            candidates,
            cap: (1..=ISO_MAX_POINTS as u128).product(),
        });
    }
    if m1.len() != m2.len() {
        return Ok(false);
    }
    Ok((0..n).permutations(n).any(|p| {
        (0..n).all(|x| (0..n).all(|y| m2.d(p[x], p[y]) == m1.d(x, y)))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{s1, x2};
    use crate::limits::{coproduct, equalizer, product};
    use crate::quotient::validate_submetric;
    use crate::space::validate_metric;

    #[test]
    fn metric_sizes() {
        let cfg = |m| GenConfig {
            max_points: m,
            ..GenConfig::default()
        };
        assert!(gen_metric(&cfg(0)).is_empty());
        let one = gen_metric(&cfg(1));
        assert!(brute_iso_check(&one, &s1()).unwrap());
        assert_eq!(one.labels(), &["p0"]);
    }

    #[test]
    fn generated_metrics_validate() {
        let mut g = Generator::new(GenConfig::with_seed(11));
        for _ in 0..200 {
            let x = g.metric();
            assert!(validate_metric(x.labels(), x.dist()).unwrap().is_valid());
            assert!(x.is_separated());
            assert!(x.len() <= 6);
        }
    }

    #[test]
    fn determinism() {
        let cfg = GenConfig::with_seed(5);
        let mut a = Generator::new(cfg.clone());
        let mut b = Generator::new(cfg);
        for _ in 0..20 {
            let (x, y) = (a.metric(), b.metric());
            assert_eq!(x, y);
            assert_eq!(a.submetric(&x), b.submetric(&y));
            assert_eq!(a.equivalence(&x), b.equivalence(&y));
        }
    }

    #[test]
    fn submetric_examples() {
        let zero_grid = GenConfig {
            value_grid: vec![ExtValue::zero()],
            ..GenConfig::default()
        };
        assert_eq!(gen_submetric(&x2(), &zero_grid).gamma(), &Matrix::filled(2, ExtValue::zero()));
        let inf_grid = GenConfig {
            value_grid: vec![ExtValue::zero(), ExtValue::inf()],
            ..GenConfig::default()
        };
        let mut g = Generator::new(inf_grid);
        // capping at d everywhere reproduces d
        let gammas: Vec<_> = (0..20).map(|_| g.submetric(&x2())).collect();
        assert!(gammas.iter().any(|s| s.gamma() == x2().dist()));

        let mut g = Generator::new(GenConfig::with_seed(3));
        for _ in 0..100 {
            let x = g.metric();
            let s = g.submetric(&x);
            assert!(validate_submetric(s.base(), s.gamma()).unwrap().is_valid());
        }
    }

    #[test]
    fn equivalence_is_gamma_of_a_subset() {
        let mut g = Generator::new(GenConfig::with_seed(9));
        for _ in 0..50 {
            let x = g.metric();
            let e = g.equivalence(&x);
            assert!(e.is_equivalence());
        }
    }

    #[test]
    fn config_validation() {
        assert!(GenConfig::default().validate().is_ok());
        let empty = GenConfig {
            value_grid: vec![],
            ..GenConfig::default()
        };
        assert!(empty.validate().is_err());
        let no_zero = GenConfig {
            value_grid: vec![ExtValue::integer(1)],
            ..GenConfig::default()
        };
        assert!(no_zero.validate().is_err());
    }

    #[test]
    fn product_cone_has_one_mediator() {
        let (p, pi1, pi2) = product(&x2(), &x2());
        let c1 = FinMap::identity(&x2());
        let c2 = FinMap::constant(&x2(), &x2(), 1).unwrap();
        assert_eq!(product_mediators(&pi1, &pi2, &c1, &c2).unwrap().len(), 1);
        // duplicate legs
        assert_eq!(product_mediators(&pi1, &pi2, &c1, &c1).unwrap().len(), 1);
        // corrupted cone: legs that jointly expand d
        let far = FinSpace::parse(&["u", "v"], &[&["0", "1/2"], &["1/2", "0"]]).unwrap();
        let f1 = FinMap::candidate(far.clone(), x2(), vec![0, 1]).unwrap();
        assert!(product_mediators(&pi1, &pi2, &f1, &f1).unwrap().is_empty());
        assert_eq!(p.len(), 4);
    }

    #[test]
    fn coproduct_and_equalizer_mediators() {
        let (_, i1, i2) = coproduct(&x2(), &s1());
        let c1 = FinMap::identity(&x2());
        let c2 = FinMap::constant(&s1(), &x2(), 0).unwrap();
        assert_eq!(coproduct_mediators(&i1, &i2, &c1, &c2).unwrap().len(), 1);

        let id = FinMap::identity(&x2());
        let swap = FinMap::new(x2(), x2(), vec![1, 0]).unwrap();
        let e = equalizer(&id, &swap).unwrap();
        assert!(e.source().is_empty());
        let h = FinMap::new(FinSpace::empty(), x2(), vec![]).unwrap();
        assert_eq!(equalizer_mediators(&e, &h).unwrap().len(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let big = FinSpace::discrete((0..7).map(|i| i.to_string()).collect()).unwrap();
        assert!(matches!(
            enumerate_mediators(&big, &big, |_| true),
            Err(Error::CapExceeded { .. })
        ));
        let huge = FinSpace::discrete((0..8).map(|i| i.to_string()).collect()).unwrap();
        assert!(matches!(brute_iso_check(&huge, &huge), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn iso_examples() {
        assert!(brute_iso_check(&x2(), &x2()).unwrap());
        assert!(!brute_iso_check(&s1(), &x2()).unwrap());
        let relabelled = x2().relabel(vec!["u".into(), "v".into()]).unwrap();
        assert!(brute_iso_check(&x2(), &relabelled).unwrap());
        let skew = FinSpace::parse(&["a", "b"], &[&["0", "1"], &["2", "0"]]).unwrap();
        let flipped = FinSpace::parse(&["a", "b"], &[&["0", "2"], &["1", "0"]]).unwrap();
        assert!(brute_iso_check(&skew, &flipped).unwrap());
        assert!(!brute_iso_check(&skew, &x2()).unwrap());
    }

    #[test]
    fn filler_of_identity_square() {
        let q = FinMap::identity(&x2());
        let i = FinMap::identity(&x2());
        assert_eq!(diagonal_fillers(&q, &i, &q, &i).unwrap().len(), 1);
    }
}
