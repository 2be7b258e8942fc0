//! Pushouts along embeddings.
//!
//! For an embedding `i: A ↪ X` and any `f: A → B`, the pushout is the
//! quotient of `B + X` by the submetric
//!
//! ```text
//! γ(b, b')  = d_B(b, b')
//! γ(x, x')  = min(d_X(x, x'), min_{a,a'} d_X(x, i a) + d_B(f a, f a') + d_X(i a', x'))
//! γ(b, x)   = min_a d_B(b, f a) + d_X(i a, x)
//! γ(x, b)   = min_a d_X(x, i a) + d_B(f a, b)
//! ```
//!
//! [`pushout_closure_oracle`] computes the same matrix as a shortest-path
//! closure of the coproduct metric with zero-cost gluing arcs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ext::ExtValue;
use crate::harness::{GenConfig, Generator};
use crate::limits::{coproduct, Square};
use crate::map::FinMap;
use crate::matrix::{minplus_closure, Matrix};
use crate::quotient::Submetric;
use crate::space::FinSpace;

/// A pushout square
///
/// ```text
///   A --embedding--> X
///   |                |
///  along           into_x
///   v                v
///   B ----into_b---> P
/// ```
///
/// together with the submetric on `B + X` that `P` is the quotient of.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PushoutResult {
    pub embedding: FinMap,
    pub along: FinMap,
    pub into_b: FinMap,
    pub into_x: FinMap,
    pub gamma: Submetric,
}

impl PushoutResult {
    pub fn apex(&self) -> &FinSpace {
        self.into_b.target()
    }

    pub fn commutes(&self) -> bool {
        let a = self.embedding.source().len();
        (0..a).all(|p| self.into_b.apply(self.along.apply(p)) == self.into_x.apply(self.embedding.apply(p)))
    }

    /// The square with apex `A`, as input to
    /// [`crate::limits::is_pullback_square`].
    pub fn square(&self) -> Square {
        Square {
            p0: self.along.clone(),
            p1: self.embedding.clone(),
            f: self.into_b.clone(),
            g: self.into_x.clone(),
        }
    }

    fn from_gamma(embedding: &FinMap, along: &FinMap, gamma: Submetric) -> Result<Self> {
        let p = gamma.quotient()?;
        let nb = along.target().len();
        let nx = embedding.target().len();
        let into_b = FinMap::new_unchecked(along.target().clone(), p.target().clone(), (0..nb).map(|b| p.apply(b)).collect());
        let into_x = FinMap::new_unchecked(
            embedding.target().clone(),
            p.target().clone(),
            (0..nx).map(|x| p.apply(nb + x)).collect(),
        );
        let result = PushoutResult {
            embedding: embedding.clone(),
            along: along.clone(),
            into_b,
            into_x,
            gamma,
        };
        debug_assert!(result.commutes());
        Ok(result)
    }
}

fn check_span(i: &FinMap, f: &FinMap) -> Result<()> {
    if i.source() != f.source() {
        return Err(Error::NoCommonBoundary("source"));
    }
    if !i.is_embedding() {
        return Err(Error::NotEmbedding("i"));
    }
    for (space, name) in [(i.source(), "A"), (i.target(), "X"), (f.target(), "B")] {
        if !space.is_separated() {
            return Err(Error::NotSeparated(name));
        }
    }
    Ok(())
}

fn min_over<I: Iterator<Item = ExtValue>>(it: I) -> ExtValue {
    it.min().unwrap_or_else(ExtValue::inf)
}

/// The glued submetric on `B + X`, evaluated clause by clause.
pub fn pushout_gamma(i: &FinMap, f: &FinMap) -> Result<Submetric> {
    check_span(i, f)?;
    let (a, x, b) = (i.source(), i.target(), f.target());
    let (sum, _, _) = coproduct(b, x);
    let nb = b.len();
    let gamma = Matrix::from_fn(sum.len(), |s, t| match (s < nb, t < nb) {
        (true, true) => b.d(s, t).clone(),
        (true, false) => {
            let xt = t - nb;
            min_over((0..a.len()).map(|p| b.d(s, f.apply(p)) + x.d(i.apply(p), xt)))
        }
        (false, true) => {
            let xs = s - nb;
            min_over((0..a.len()).map(|p| x.d(xs, i.apply(p)) + b.d(f.apply(p), t)))
        }
        (false, false) => {
            let (xs, xt) = (s - nb, t - nb);
            let through_b = min_over((0..a.len()).flat_map(|p| {
                (0..a.len()).map(move |q| {
                    &(x.d(xs, i.apply(p)) + b.d(f.apply(p), f.apply(q))) + x.d(i.apply(q), xt)
                })
            }));
            x.d(xs, xt).min_with(&through_b)
        }
    });
    Ok(Submetric::new_unchecked(sum, gamma))
}

/// Pushout of `f: A → B` along the embedding `i: A ↪ X`.
pub fn pushout_along_embedding(i: &FinMap, f: &FinMap) -> Result<PushoutResult> {
    let gamma = pushout_gamma(i, f)?;
    PushoutResult::from_gamma(i, f, gamma)
}

/// Independent route to the glued submetric: start from the coproduct
/// metric on `B + X`, add zero-cost arcs `f a ↔ i a` for each `a ∈ A`, and
/// take the min-plus closure.
pub fn pushout_closure_oracle(i: &FinMap, f: &FinMap) -> Result<Submetric> {
    check_span(i, f)?;
    let (sum, _, _) = coproduct(f.target(), i.target());
    let nb = f.target().len();
    let mut costs = sum.dist().clone();
    for p in 0..i.source().len() {
        let (s, t) = (f.apply(p), nb + i.apply(p));
        costs.set(s, t, ExtValue::zero());
        costs.set(t, s, ExtValue::zero());
    }
    let gamma = minplus_closure(&costs);
    Ok(Submetric::new_unchecked(sum, gamma))
}

/// Pushout of two embeddings `f0: X ↪ Y0`, `f1: X ↪ Y1`, built on
/// `Y0 + Y1` with
///
/// ```text
/// d_P(λ_i u, λ_j v) = d_{Y_i}(u, v)                               if i = j
///                   = min_x d_{Y_i}(u, f_i x) + d_{Y_j}(f_j x, v)  otherwise
/// ```
///
/// The result records `f1` as the embedding and `f0` as the map pushed
/// along, so `into_b = λ_0` and `into_x = λ_1`.
pub fn pushout_of_embeddings(f0: &FinMap, f1: &FinMap) -> Result<PushoutResult> {
    if f0.source() != f1.source() {
        return Err(Error::NoCommonBoundary("source"));
    }
    if !f0.is_embedding() {
        return Err(Error::NotEmbedding("f0"));
    }
    if !f1.is_embedding() {
        return Err(Error::NotEmbedding("f1"));
    }
    check_span(f1, f0)?;
    let (y0, y1) = (f0.target(), f1.target());
    let n0 = y0.len();
    let legs = [f0, f1];
    let spaces = [y0, y1];
    let split = |s: usize| if s < n0 { (0, s) } else { (1, s - n0) };
    let (sum, _, _) = coproduct(y0, y1);
    let gamma = Matrix::from_fn(sum.len(), |s, t| {
        let ((i, u), (j, v)) = (split(s), split(t));
        if i == j {
            spaces[i].d(u, v).clone()
        } else {
            min_over(
                (0..f0.source().len())
                    .map(|x| spaces[i].d(u, legs[i].apply(x)) + spaces[j].d(legs[j].apply(x), v)),
            )
        }
    });
    PushoutResult::from_gamma(f1, f0, Submetric::new_unchecked(sum, gamma))
}

/// The two legs `q0, q1: X → S` of the pushout of an embedding along itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CokernelPair {
    pub q0: FinMap,
    pub q1: FinMap,
}

impl CokernelPair {
    pub fn apex(&self) -> &FinSpace {
        self.q0.target()
    }
}

pub fn cokernel_pair(i: &FinMap) -> Result<CokernelPair> {
    let po = pushout_of_embeddings(i, i)?;
    Ok(CokernelPair {
        q0: po.into_b,
        q1: po.into_x,
    })
}

/// Why a sampled cocone refutes a purported pushout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoconeFailure {
    /// Two legs send points of the same class of `P` to different points.
    NotWellDefined { class: usize },
    /// A point of `P` is hit by neither leg, so a mediator is not unique.
    NotUnique { class: usize },
    /// The induced map `P → T` expands some distance.
    Expanding { from: usize, to: usize },
    /// The induced map does not reproduce a leg.
    TriangleFails,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub target: FinSpace,
    /// `g: X → T`.
    pub g: FinMap,
    /// `j: B → T`.
    pub j: FinMap,
    pub failure: CoconeFailure,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalCheck {
    pub cocones_tested: usize,
    pub counterexample: Option<Counterexample>,
}

impl UniversalCheck {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks a single cocone `(g: X → T, j: B → T)` against the square's apex,
/// returning the unique mediator on success.
pub fn mediate_cocone(result: &PushoutResult, g: &FinMap, j: &FinMap) -> std::result::Result<FinMap, CoconeFailure> {
    let p = result.apex();
    let mut u: Vec<Option<usize>> = vec![None; p.len()];
    let legs = [(&result.into_x, g), (&result.into_b, j)];
    for (lambda, leg) in legs {
        for s in 0..lambda.source().len() {
            let class = lambda.apply(s);
            match u[class] {
                None => u[class] = Some(leg.apply(s)),
                Some(t) if t != leg.apply(s) => return Err(CoconeFailure::NotWellDefined { class }),
                Some(_) => {}
            }
        }
    }
    let mut assignment = Vec::with_capacity(p.len());
    for (class, image) in u.into_iter().enumerate() {
        match image {
            Some(t) => assignment.push(t),
            None => return Err(CoconeFailure::NotUnique { class }),
        }
    }
    let target = g.target();
    for c in 0..p.len() {
        for e in 0..p.len() {
            if target.d(assignment[c], assignment[e]) > p.d(c, e) {
                return Err(CoconeFailure::Expanding { from: c, to: e });
            }
        }
    }
    let u = FinMap::new_unchecked(p.clone(), target.clone(), assignment);
    let ok_x = result.into_x.then(&u).map(|m| m.assignment() == g.assignment()).unwrap_or(false);
    let ok_b = result.into_b.then(&u).map(|m| m.assignment() == j.assignment()).unwrap_or(false);
    if ok_x && ok_b {
        Ok(u)
    } else {
        Err(CoconeFailure::TriangleFails)
    }
}

/// Samples commuting cocones over random spaces with at most four points
/// and checks each induces a unique non-expansive mediator from the apex.
///
/// Deterministic for a given seed. `j: B → T` is drawn uniformly; `g` is
/// forced on the image of the embedding and uniform elsewhere; candidates
/// that expand a distance are rejected, up to a fixed attempt budget.
pub fn verify_pushout_universal(result: &PushoutResult, trials: usize, seed: u64) -> UniversalCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (x, b) = (result.embedding.target(), result.along.target());
    let mut tested = 0;
    let budget = trials.saturating_mul(50).max(1);
    let mut attempts = 0;
    let cfg = GenConfig {
        max_points: 4,
        ..GenConfig::default()
    };
    while tested < trials && attempts < budget {
        attempts += 1;
        let target = Generator::new(GenConfig { seed: rng.gen(), ..cfg.clone() }).metric();
        if target.is_empty() {
            continue;
        }
        let nt = target.len();
        let j: Vec<usize> = (0..b.len()).map(|_| rng.gen_range(0..nt)).collect();
        let mut g: Vec<Option<usize>> = vec![None; x.len()];
        for p in 0..result.embedding.source().len() {
            g[result.embedding.apply(p)] = Some(j[result.along.apply(p)]);
        }
        let g: Vec<usize> = g.into_iter().map(|v| v.unwrap_or_else(|| rng.gen_range(0..nt))).collect();
        let (Ok(g), Ok(j)) = (
            FinMap::new(x.clone(), target.clone(), g),
            FinMap::new(b.clone(), target.clone(), j),
        ) else {
            continue;
        };
        tested += 1;
        if let Err(failure) = mediate_cocone(result, &g, &j) {
            return UniversalCheck {
                cocones_tested: tested,
                counterexample: Some(Counterexample { target, g, j, failure }),
            };
        }
    }
    UniversalCheck {
        cocones_tested: tested,
        counterexample: None,
    }
}

/// Lowers one positive distance of the apex to zero and re-closes, keeping
/// the legs. Used to build refutable squares.
pub fn corrupt_lower_distance(result: &PushoutResult, seed: u64) -> Option<PushoutResult> {
    let p = result.apex();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates: Vec<(usize, usize)> = (0..p.len())
        .flat_map(|c| (0..p.len()).map(move |e| (c, e)))
        .filter(|&(c, e)| c != e && !p.d(c, e).is_zero())
        .collect();
    candidates.shuffle(&mut rng);
    let &(c, e) = candidates.first()?;
    let mut costs = p.dist().clone();
    costs.set(c, e, ExtValue::zero());
    let lowered = FinSpace::new_unchecked(p.labels().to_vec(), minplus_closure(&costs));
    Some(PushoutResult {
        into_b: result.into_b.with_target(lowered.clone()),
        into_x: result.into_x.with_target(lowered),
        ..result.clone()
    })
}

/// Merges two classes of the apex into one point, composing the legs with
/// the merge.
pub fn corrupt_merge_classes(result: &PushoutResult, seed: u64) -> Option<PushoutResult> {
    let p = result.apex();
    if p.len() < 2 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = rng.gen_range(0..p.len());
    let e = (c + rng.gen_range(1..p.len())) % p.len();
    let mut costs = p.dist().clone();
    costs.set(c, e, ExtValue::zero());
    costs.set(e, c, ExtValue::zero());
    let merged = Submetric::new_unchecked(p.clone(), minplus_closure(&costs));
    let q = merged.quotient().ok()?;
    Some(PushoutResult {
        into_b: result.into_b.then(&q).ok()?,
        into_x: result.into_x.then(&q).ok()?,
        ..result.clone()
    })
}
