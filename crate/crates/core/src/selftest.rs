//! Named property suites. Each suite is deterministic for a seed and
//! compares library results against generators and exhaustive oracles with
//! exact equality.

use std::fmt;

use rand::Rng;
use rayon::prelude::*;

use crate::corelation::{corelation_from_cospan, gamma_from_subset, BlockMetric};
use crate::error::{Error, Result};
use crate::ext::ExtValue;
use crate::fixtures::{gluing_gamma, gluing_span, singleton_corelation, two_point_closed, two_point_literal, x2};
use crate::harness::{default_grid, diagonal_fillers, enumerate_mediators, pushout_mediators, brute_iso_check, GenConfig, Generator};
use crate::idempotent::{through_subset, BoolRelation, CostMatrix};
use crate::limits::{equalizer, is_pullback_square};
use crate::map::FinMap;
use crate::matrix::{minplus_closure, Matrix};
use crate::pushout::{
    cokernel_pair, corrupt_lower_distance, corrupt_merge_classes, pushout_along_embedding, pushout_closure_oracle,
    pushout_gamma, pushout_of_embeddings, verify_pushout_universal, PushoutResult,
};
use crate::quotient::{counit_iso, kernel_metric, quotient_leq, validate_submetric};
use crate::report::Violation;
use crate::space::validate_metric;

pub const SUITES: [(u8, &str); 11] = [
    (1, "metric-laws"),
    (2, "factorization"),
    (3, "duality"),
    (4, "pushout-oracle"),
    (5, "pushout-universal"),
    (6, "embedding-stability"),
    (7, "pullback"),
    (8, "gamma-subset"),
    (9, "effective-exhaustive"),
    (10, "idempotence-exhaustive"),
    (11, "fixtures"),
];

const MAX_RECORDED: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub id: u8,
    pub name: &'static str,
    pub checks: u64,
    pub failed: u64,
    /// The first few failure descriptions.
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "[{verdict}] {:>2} {}: {} checks, {} failed",
            self.id, self.name, self.checks, self.failed
        )?;
        for note in &self.notes {
            write!(f, "\n    {note}")?;
        }
        for failure in &self.failures {
            write!(f, "\n    failure: {failure}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Default)]
struct Tally {
    checks: u64,
    failed: u64,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_RECORDED {
                self.failures.push(what());
            }
        }
    }

    fn note(&mut self, note: String) {
        self.notes.push(note);
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checks += other.checks;
        self.failed += other.failed;
        let room = MAX_RECORDED.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
        self.notes.extend(other.notes);
        self
    }
}

fn generator(seed: u64, id: u8, max_points: usize) -> Generator {
    Generator::new(GenConfig {
        seed: seed ^ u64::from(id).wrapping_mul(0x9e37_79b9_7f4a_7c15),
        max_points,
        ..GenConfig::default()
    })
}

/// Runs a suite by name or number.
pub fn run_suite(name: &str, seed: u64) -> Result<SuiteOutcome> {
    let &(id, canonical) = SUITES
        .iter()
        .find(|(id, n)| *n == name || id.to_string() == name)
        .ok_or_else(|| Error::UnknownSuite(name.to_string()))?;
    let tally = match id {
        1 => metric_laws(seed),
        2 => factorization(seed),
        3 => duality(seed),
        4 => pushout_oracle(seed),
        5 => pushout_universal(seed),
        6 => embedding_stability(seed),
        7 => pullback_property(seed),
        8 => gamma_subset(seed),
        9 => effective_exhaustive(),
        10 => idempotence_exhaustive(seed),
        _ => fixtures(),
    };
    Ok(SuiteOutcome {
        id,
        name: canonical,
        checks: tally.checks,
        failed: tally.failed,
        failures: tally.failures,
        notes: tally.notes,
    })
}

pub fn run_all(seed: u64) -> Vec<SuiteOutcome> {
    SUITES
        .iter()
        .map(|(_, name)| run_suite(name, seed).expect("listed suite"))
        .collect()
}

fn triangle_holds(m: &Matrix) -> bool {
    let n = m.size();
    (0..n).all(|x| {
        m.get(x, x).is_zero()
            && (0..n).all(|y| (0..n).all(|z| m.get(x, z) <= &(m.get(x, y) + m.get(y, z))))
    })
}

fn metric_laws(seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut g = generator(seed, 1, 6);
    for k in 0..500 {
        let x = g.metric();
        let report = validate_metric(x.labels(), x.dist()).expect("square");
        t.check(report.is_valid() && x.is_separated() && x.len() <= 6, || {
            format!("space {k}: {report}")
        });
        t.check(triangle_holds(x.dist()), || format!("space {k}: triangle oracle"));

        let n = g.point_count();
        let costs = g.cost_matrix(n);
        let once = minplus_closure(&costs);
        t.check(minplus_closure(&once) == once, || format!("costs {k}: closure not idempotent"));
        t.check(once.pointwise_le(&costs) && triangle_holds(&once), || {
            format!("costs {k}: closure is not a metric below the costs")
        });
    }
    t
}

fn factorization(seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut g = generator(seed, 2, 5);
    let mut done = 0;
    while done < 300 {
        let (x, y) = (g.metric(), g.metric());
        let Some(f) = g.map(&x, &y) else { continue };
        done += 1;
        let fac = f.factorize().expect("generated spaces are separated");
        let (q, i) = (&fac.surjection, &fac.embedding);
        let pointwise = (0..x.len()).all(|s| i.apply(q.apply(s)) == f.apply(s));
        t.check(pointwise, || format!("morphism {done}: f != i . q"));
        t.check(q.is_surjective() && q.check_nonexpansive().is_valid(), || {
            format!("morphism {done}: q is not a surjective morphism")
        });
        t.check(i.is_embedding(), || format!("morphism {done}: i is not an embedding"));
    }

    let mut g = generator(seed, 2, 3);
    let mut squares = 0;
    while squares < 100 {
        let a = g.metric();
        let q = g.surjection(&a);
        let d = g.metric();
        let i = g.embedding_into(&d);
        let us = enumerate_mediators(&a, i.source(), |_| true).expect("small");
        let vs = enumerate_mediators(q.target(), &d, |_| true).expect("small");
        let commuting: Vec<(&FinMap, &FinMap)> = us
            .iter()
            .flat_map(|u| vs.iter().map(move |v| (u, v)))
            .filter(|(u, v)| (0..a.len()).all(|s| i.apply(u.apply(s)) == v.apply(q.apply(s))))
            .collect();
        if commuting.is_empty() {
            continue;
        }
        let (u, v) = commuting[g.rng().gen_range(0..commuting.len())];
        squares += 1;
        let fillers = diagonal_fillers(&q, &i, u, v).expect("small");
        t.check(fillers.len() == 1, || {
            format!("square {squares}: {} diagonal fillers", fillers.len())
        });
    }
    t
}

fn duality(seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut g = generator(seed, 3, 5);
    for k in 0..300 {
        let x = g.metric();
        let gamma = g.submetric(&x);
        let valid = validate_submetric(&x, gamma.gamma()).expect("square").is_valid();
        t.check(valid, || format!("submetric {k}: generator output invalid"));
        let p = gamma.quotient().expect("separated");
        t.check(kernel_metric(&p) == gamma, || format!("submetric {k}: kernel of quotient differs"));
    }
    for k in 0..300 {
        let x = g.metric();
        let f = g.surjection(&x);
        let ok = counit_iso(&f).map(|e| e.is_isomorphism()).unwrap_or(false);
        t.check(ok, || format!("surjection {k}: counit is not an isomorphism"));
    }

    let mut g = generator(seed, 3, 4);
    let mut related = 0;
    for k in 0..200 {
        let x = g.metric();
        let f = g.surjection(&x);
        let h = if g.rng().gen_bool(0.5) {
            f.then(&g.surjection(f.target())).expect("composable")
        } else {
            g.surjection(&x)
        };
        let library = quotient_leq(&f, &h).expect("surjections on one source");
        let (kf, kh) = (kernel_metric(&f), kernel_metric(&h));
        let n = x.len();
        let matrix = (0..n).all(|s| (0..n).all(|r| kh.gamma().get(s, r) <= kf.gamma().get(s, r)));
        let brute = !enumerate_mediators(f.target(), h.target(), |m| (0..n).all(|s| m[f.apply(s)] == h.apply(s)))
            .expect("small")
            .is_empty();
        related += usize::from(brute);
        t.check(library == matrix && matrix == brute, || {
            format!("pair {k}: quotient_leq {library}, kernel test {matrix}, brute force {brute}")
        });
    }
    t.note(format!("{related} of 200 surjection pairs are related"));
    t
}

/// `(i: A ↪ X, f: A → B)` with `|X|, |B| ≤ max_points`.
fn pushout_span(g: &mut Generator) -> (FinMap, FinMap) {
    loop {
        let x = g.metric();
        let i = g.embedding_into(&x);
        let b = g.metric();
        if let Some(f) = g.map(i.source(), &b) {
            return (i, f);
        }
    }
}

fn pushout_oracle(seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut g = generator(seed, 4, 5);
    for k in 0..300 {
        let (i, f) = pushout_span(&mut g);
        let formula = pushout_gamma(&i, &f).expect("valid span");
        let oracle = pushout_closure_oracle(&i, &f).expect("valid span");
        t.check(formula == oracle, || format!("span {k}: formula and closure disagree"));
        let valid = validate_submetric(formula.base(), formula.gamma()).expect("square").is_valid();
        t.check(valid, || format!("span {k}: glued matrix is not a submetric"));
    }
    let (i, f) = gluing_span();
    let po = pushout_along_embedding(&i, &f).expect("fixture");
    t.check(po.gamma.gamma() == &gluing_gamma(), || "gluing fixture matrix differs".to_string());
    t
}

fn embedding_stability(seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut g = generator(seed, 4, 5);
    for k in 0..300 {
        let (i, f) = pushout_span(&mut g);
        let po = pushout_along_embedding(&i, &f).expect("valid span");
        t.check(po.into_b.is_embedding(), || format!("span {k}: B -> P is not an embedding"));
    }
    t
}

fn forced_cocone(g: &mut Generator, po: &PushoutResult) -> Option<(FinMap, FinMap)> {
    let target = g.metric();
    if target.is_empty() {
        return None;
    }
    let nt = target.len();
    let (x, b) = (po.embedding.target(), po.along.target());
    let j: Vec<usize> = (0..b.len()).map(|_| g.rng().gen_range(0..nt)).collect();
    let mut gx: Vec<Option<usize>> = vec![None; x.len()];
    for a in 0..po.embedding.source().len() {
        gx[po.embedding.apply(a)] = Some(j[po.along.apply(a)]);
    }
    let gx = gx.into_iter().map(|v| v.unwrap_or_else(|| g.rng().gen_range(0..nt))).collect();
    let gmap = FinMap::new(x.clone(), target.clone(), gx).ok()?;
    let jmap = FinMap::new(b.clone(), target, j).ok()?;
    Some((gmap, jmap))
}

fn pushout_universal(seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut g = generator(seed, 5, 3);
    let mut cocone_gen = generator(seed, 105, 3);
    for k in 0..50u64 {
        let (i, f) = pushout_span(&mut g);
        let po = pushout_along_embedding(&i, &f).expect("valid span");
        let check = verify_pushout_universal(&po, 100, seed.wrapping_add(k));
        t.check(check.passed() && check.cocones_tested == 100, || {
            format!(
                "square {k}: {} cocones tested, counterexample {:?}",
                check.cocones_tested,
                check.counterexample.as_ref().map(|c| &c.failure)
            )
        });
        let mut brute = 0;
        for _ in 0..200 {
            if brute == 20 {
                break;
            }
            let Some((gm, jm)) = forced_cocone(&mut cocone_gen, &po) else { continue };
            brute += 1;
            let count = pushout_mediators(&po, &gm, &jm).map(|m| m.len());
            t.check(count == Ok(1), || format!("square {k}: brute-force mediators {count:?}"));
        }
    }

    let mut refuted = 0;
    let mut k = 0u64;
    while refuted < 20 {
        k += 1;
        let (i, f) = pushout_span(&mut g);
        let po = pushout_along_embedding(&i, &f).expect("valid span");
        let corrupted = if k.is_multiple_of(2) {
            corrupt_lower_distance(&po, k)
        } else {
            corrupt_merge_classes(&po, k)
        };
        let Some(bad) = corrupted else { continue };
        refuted += 1;
        let check = verify_pushout_universal(&bad, 500, seed.wrapping_add(k));
        t.check(!check.passed(), || format!("corrupted square {refuted}: not refuted"));
    }
    t
}

fn pullback_property(seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut g = generator(seed, 7, 6);
    for k in 0..300 {
        let z = g.metric();
        let s0 = g.subset(z.len());
        let s1 = g.subset(z.len());
        let common: Vec<usize> = s0.iter().copied().filter(|p| s1.contains(p)).collect();
        let (y0, y1, a) = (z.subspace(&s0), z.subspace(&s1), z.subspace(&common));
        let pos = |s: &[usize]| common.iter().map(|p| s.iter().position(|q| q == p).expect("subset")).collect();
        let f0 = FinMap::new(a.clone(), y0, pos(&s0)).expect("subspace inclusion");
        let f1 = FinMap::new(a.clone(), y1, pos(&s1)).expect("subspace inclusion");
        let po = pushout_of_embeddings(&f0, &f1).expect("embeddings");
        let pb = is_pullback_square(&po.square());
        t.check(pb == Ok(true), || format!("pair {k}: pushout square is not a pullback ({pb:?})"));

        let cp = cokernel_pair(&f0).expect("embedding");
        let e = equalizer(&cp.q0, &cp.q1).expect("parallel");
        let iso = brute_iso_check(e.source(), &a);
        t.check(iso == Ok(true) && e.image() == f0.image(), || {
            format!("pair {k}: equalizer of the cokernel pair is not A")
        });
    }
    t
}

fn gamma_subset(seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut g = generator(seed, 8, 6);
    for k in 0..300 {
        let x = g.metric();
        let a = g.subset(x.len());
        let gm = gamma_from_subset(&x, &a).expect("separated");
        t.check(gm.validate().is_valid(), || format!("pair {k}: not a submetric"));
        t.check(gm.is_equivalence(), || format!("pair {k}: not an equivalence"));
        t.check(gm.is_effective() == Ok(true), || format!("pair {k}: not effective"));
        t.check(gm.zero_locus().as_deref() == Ok(&a[..]), || format!("pair {k}: zero locus differs from A"));
        let incl = FinMap::inclusion(&x, &a);
        let from_cp = cokernel_pair(&incl).and_then(|cp| corelation_from_cospan(&cp.q0, &cp.q1));
        t.check(from_cp.as_ref() == Ok(&gm), || format!("pair {k}: cokernel-pair corelation differs"));
    }
    t
}

fn effective_exhaustive() -> Tally {
    let mut t = Tally::default();
    let x = x2();
    let grid = default_grid();
    let d = x.dist().clone();
    let mut survivors: Vec<BlockMetric> = Vec::new();
    let g = grid.len();
    for code in 0..g.pow(4) {
        let cell = |k: usize| grid[(code / g.pow(k as u32)) % g].clone();
        let cross = Matrix::from_rows(vec![vec![cell(0), cell(1)], vec![cell(2), cell(3)]]).expect("2x2");
        let bm = BlockMetric::from_blocks(x.clone(), d.clone(), cross.clone(), cross.transpose(), d.clone()).expect("shape");
        if bm.validate().is_valid() && bm.is_equivalence() {
            t.check(bm.is_effective() == Ok(true), || format!("candidate {code}: not effective\n{bm}"));
            survivors.push(bm);
        }
    }
    t.note(format!("{} of {} candidates are equivalences", survivors.len(), g.pow(4)));
    let named: Vec<BlockMetric> = [vec![], vec![0], vec![0, 1]]
        .iter()
        .map(|a| gamma_from_subset(&x, a).expect("separated"))
        .collect();
    t.check(survivors.len() >= 3, || format!("only {} survivors", survivors.len()));
    let distinct = named[0] != named[1] && named[1] != named[2] && named[0] != named[2];
    t.check(distinct && named.iter().all(|n| survivors.contains(n)), || {
        "gamma for {}, {a}, {a,b} missing or not distinct".to_string()
    });
    t
}

fn exhaustive_costs(n: usize, values: &[ExtValue]) -> Tally {
    let cells = n * n;
    let base = values.len();
    let total = base.pow(cells as u32);
    (0..total)
        .into_par_iter()
        .fold(Tally::default, |mut t, code| {
            let mut c = code;
            let rho = Matrix::from_fn(n, |_, _| {
                let v = values[c % base].clone();
                c /= base;
                v
            });
            let m = CostMatrix::unlabelled(rho);
            if m.is_idempotent().expect("nonempty") {
                let covered = m.factor_through_zero_diagonal().map(|r| r.full_coverage());
                t.check(covered == Ok(true), || format!("{n}-point matrix {code}: witness coverage fails"));
            }
            t
        })
        .reduce(Tally::default, Tally::merge)
}

fn exhaustive_relations(n: usize) -> Tally {
    let mut t = Tally::default();
    let cells = n * n;
    let mut idempotent = 0;
    for code in 0u32..(1 << cells) {
        let rel = (0..n).map(|x| (0..n).map(|y| code >> (x * n + y) & 1 == 1).collect()).collect();
        let r = BoolRelation::unlabelled(rel);
        if !r.is_idempotent() {
            continue;
        }
        idempotent += 1;
        for x in 0..n {
            for y in 0..n {
                if r.relates(x, y) {
                    let w = r.density_witness(x, y);
                    t.check(matches!(w, Ok(Some(_))), || format!("{n}-point relation {code}: no witness for ({x},{y})"));
                }
            }
        }
    }
    t.note(format!("{idempotent} idempotent relations on {n} points"));
    t
}

fn idempotence_exhaustive(seed: u64) -> Tally {
    let values = [ExtValue::zero(), ExtValue::integer(1), ExtValue::integer(2), ExtValue::inf()];
    let mut t = Tally::default();
    for n in 1..=3 {
        t = t.merge(exhaustive_costs(n, &values));
    }
    let mut g = generator(seed, 10, 6);
    let mut done = 0;
    while done < 200 {
        let x = g.metric();
        let a = g.subset(x.len());
        if a.is_empty() {
            continue;
        }
        done += 1;
        let m = CostMatrix::unlabelled(through_subset(x.dist(), &a));
        t.check(m.is_idempotent() == Ok(true), || format!("generated {done}: not idempotent"));
        t.check(m.zero_diagonal() == a, || format!("generated {done}: zero set differs from A"));
        let covered = m.factor_through_zero_diagonal().map(|r| r.full_coverage());
        t.check(covered == Ok(true), || format!("generated {done}: witness coverage fails"));
    }
    for n in 1..=4 {
        t = t.merge(exhaustive_relations(n));
    }
    t
}

fn fixtures() -> Tally {
    let mut t = Tally::default();
    let s = singleton_corelation();
    t.check(s.is_reflexive(), || "singleton: not reflexive".to_string());
    t.check(!s.is_symmetric(), || "singleton: symmetric".to_string());

    let literal = two_point_literal();
    let report = literal.validate();
    let witness = report
        .violations
        .iter()
        .any(|v| matches!(v, Violation::AboveBase { x: 0, y: 1, .. }));
    t.check(!report.is_valid() && witness, || format!("literal two-point matrix: {report}"));

    let closed = two_point_closed();
    t.check(closed.validate().is_valid(), || "closed two-point matrix is not a submetric".to_string());
    t.check(closed.is_reflexive(), || "closed two-point: not reflexive".to_string());
    t.check(!closed.is_symmetric(), || "closed two-point: symmetric".to_string());
    t.check(closed.is_transitive() == Ok(false), || "closed two-point: transitive".to_string());
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::FinSpace;

    #[test]
    fn fixture_suite_passes() {
        let out = run_suite("fixtures", 0).unwrap();
        assert!(out.passed(), "{out}");
        assert_eq!(out.id, 11);
        assert_eq!(run_suite("11", 0).unwrap(), out);
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("nope", 0), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn relation_enumeration_counts() {
        // on one point both relations are idempotent
        let t = exhaustive_relations(1);
        assert_eq!(t.notes, vec!["2 idempotent relations on 1 points".to_string()]);
        // on two points, brute count of R with R.R = R
        let mut expected = 0;
        for code in 0u32..16 {
            let r = |x: usize, y: usize| code >> (x * 2 + y) & 1 == 1;
            let sq = |x: usize, y: usize| (0..2).any(|z| r(x, z) && r(z, y));
            if (0..2).all(|x| (0..2).all(|y| r(x, y) == sq(x, y))) {
                expected += 1;
            }
        }
        assert_eq!(exhaustive_relations(2).notes, vec![format!("{expected} idempotent relations on 2 points")]);
    }

    #[test]
    fn tally_records_failures() {
        let mut t = Tally::default();
        t.check(true, || unreachable!());
        t.check(false, || "bad".to_string());
        assert_eq!((t.checks, t.failed), (2, 1));
        assert_eq!(t.failures, vec!["bad".to_string()]);
    }

    #[test]
    fn small_exhaustive_costs() {
        let values = [ExtValue::zero(), ExtValue::integer(1), ExtValue::inf()];
        let t = exhaustive_costs(2, &values);
        assert_eq!(t.failed, 0);
        assert!(t.checks > 0);
    }

    #[test]
    fn space_sizes_are_bounded() {
        let mut g = generator(0, 1, 3);
        for _ in 0..20 {
            let x: FinSpace = g.metric();
            assert!(x.len() <= 3);
        }
    }
}
