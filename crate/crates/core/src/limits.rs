//! Binary products (sup-metric), binary coproducts, equalizers and pullbacks.

use crate::error::{Error, Result};
use crate::ext::ExtValue;
use crate::map::FinMap;
use crate::matrix::Matrix;
use crate::space::FinSpace;

/// A commuting square
///
/// ```text
///   W --p1--> V
///   |         |
///   p0        g
///   v         v
///   U ---f--> Z
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Square {
    pub p0: FinMap,
    pub p1: FinMap,
    pub f: FinMap,
    pub g: FinMap,
}

impl Square {
    pub fn new(p0: FinMap, p1: FinMap, f: FinMap, g: FinMap) -> Result<Self> {
        let sq = Square { p0, p1, f, g };
        if sq.p0.source() != sq.p1.source()
            || sq.p0.target() != sq.f.source()
            || sq.p1.target() != sq.g.source()
            || sq.f.target() != sq.g.target()
        {
            return Err(Error::BoundaryMismatch);
        }
        if !sq.commutes() {
            return Err(Error::NotCommuting);
        }
        Ok(sq)
    }

    pub fn apex(&self) -> &FinSpace {
        self.p0.source()
    }

    pub fn commutes(&self) -> bool {
        (0..self.apex().len()).all(|w| self.f.apply(self.p0.apply(w)) == self.g.apply(self.p1.apply(w)))
    }
}

/// `M1 × M2` with `d((x,y),(x',y')) = max(d1(x,x'), d2(y,y'))`; points
/// `(x,y)` in row-major order.
pub fn product(m1: &FinSpace, m2: &FinSpace) -> (FinSpace, FinMap, FinMap) {
    let (n1, n2) = (m1.len(), m2.len());
    let labels = (0..n1 * n2)
        .map(|k| format!("({},{})", m1.label(k / n2), m2.label(k % n2)))
        .collect();
    let dist = Matrix::from_fn(n1 * n2, |a, b| {
        m1.d(a / n2, b / n2).max_with(m2.d(a % n2, b % n2))
    });
    let prod = FinSpace::new_unchecked(labels, dist);
    let p1 = FinMap::new_unchecked(prod.clone(), m1.clone(), (0..n1 * n2).map(|k| k / n2).collect());
    let p2 = FinMap::new_unchecked(prod, m2.clone(), (0..n1 * n2).map(|k| k % n2).collect());
    (p1.source().clone(), p1, p2)
}

/// `M1 + M2`: disjoint union labelled `0:x` / `1:y`, with distance `inf`
/// across summands.
pub fn coproduct(m1: &FinSpace, m2: &FinSpace) -> (FinSpace, FinMap, FinMap) {
    let (n1, n2) = (m1.len(), m2.len());
    let labels = m1
        .labels()
        .iter()
        .map(|l| format!("0:{l}"))
        .chain(m2.labels().iter().map(|l| format!("1:{l}")))
        .collect();
    let dist = Matrix::from_fn(n1 + n2, |a, b| match (a < n1, b < n1) {
        (true, true) => m1.d(a, b).clone(),
        (false, false) => m2.d(a - n1, b - n1).clone(),
        _ => ExtValue::inf(),
    });
    let sum = FinSpace::new_unchecked(labels, dist);
    let j1 = FinMap::new_unchecked(m1.clone(), sum.clone(), (0..n1).collect());
    let j2 = FinMap::new_unchecked(m2.clone(), sum.clone(), (n1..n1 + n2).collect());
    (sum, j1, j2)
}

/// The subspace of the common source on which `f` and `g` agree, as an
/// embedding.
pub fn equalizer(f: &FinMap, g: &FinMap) -> Result<FinMap> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(Error::NotParallel);
    }
    let idx: Vec<usize> = (0..f.source().len()).filter(|&x| f.apply(x) == g.apply(x)).collect();
    Ok(FinMap::inclusion(f.source(), &idx))
}

/// The pullback of `f: U → Z` and `g: V → Z`: the subspace
/// `{(u, v) | f u = g v}` of `U × V` with its two projections.
pub fn pullback(f: &FinMap, g: &FinMap) -> Result<Square> {
    if f.target() != g.target() {
        return Err(Error::NoCommonBoundary("target"));
    }
    let (u, v) = (f.source(), g.source());
    let (prod, p0, p1) = product(u, v);
    let nv = v.len();
    let idx: Vec<usize> = (0..prod.len())
        .filter(|&k| f.apply(k / nv) == g.apply(k % nv))
        .collect();
    let apex = prod.subspace(&idx);
    let p0 = FinMap::new_unchecked(apex.clone(), p0.target().clone(), idx.iter().map(|&k| p0.apply(k)).collect());
    let p1 = FinMap::new_unchecked(apex, p1.target().clone(), idx.iter().map(|&k| p1.apply(k)).collect());
    Ok(Square {
        p0,
        p1,
        f: f.clone(),
        g: g.clone(),
    })
}

/// True iff the comparison map from the square's apex to the computed
/// pullback of its cospan is an isomorphism.
pub fn is_pullback_square(sq: &Square) -> Result<bool> {
    if !sq.commutes() {
        return Err(Error::NotCommuting);
    }
    let pb = pullback(&sq.f, &sq.g)?;
    let nv = sq.g.source().len();
    // pullback points are listed in product order, so look them up by pair
    let pair_index: std::collections::HashMap<usize, usize> = (0..pb.apex().len())
        .map(|k| (pb.p0.apply(k) * nv + pb.p1.apply(k), k))
        .collect();
    let assignment: Vec<usize> = (0..sq.apex().len())
        .map(|w| pair_index[&(sq.p0.apply(w) * nv + sq.p1.apply(w))])
        .collect();
    let comparison = FinMap::new_unchecked(sq.apex().clone(), pb.apex().clone(), assignment);
    Ok(comparison.is_isomorphism())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{s1, x2};
    use crate::harness::brute_iso_check;

    fn chain_pq() -> FinSpace {
        FinSpace::parse(&["p", "q"], &[&["0", "0"], &["inf", "0"]]).unwrap()
    }

    #[test]
    fn product_examples() {
        let (p, p1, _) = product(&x2(), &s1());
        assert!(brute_iso_check(&p, &x2()).unwrap());
        assert!(p1.is_isomorphism());

        let (xx, _, _) = product(&x2(), &x2());
        let aa = xx.index_of("(a,a)").unwrap();
        let bb = xx.index_of("(b,b)").unwrap();
        assert_eq!(xx.d(aa, bb), &ExtValue::integer(1));

        let (xp, p1, p2) = product(&x2(), &chain_pq());
        let ap = xp.index_of("(a,p)").unwrap();
        let bq = xp.index_of("(b,q)").unwrap();
        // oracle: pairwise max of the factor distances
        let oracle = |s: usize, t: usize| x2().d(s / 2, t / 2).max_with(chain_pq().d(s % 2, t % 2));
        assert_eq!(xp.d(ap, bq), &oracle(ap, bq));
        assert_eq!(xp.d(ap, bq), &ExtValue::integer(1));
        assert_eq!(xp.d(bq, ap), &ExtValue::inf());
        assert!(p1.check_nonexpansive().is_valid() && p2.check_nonexpansive().is_valid());
        assert!(FinSpace::new(xp.labels().to_vec(), xp.dist().clone()).is_ok());
    }

    #[test]
    fn coproduct_examples() {
        let (two, j1, j2) = coproduct(&s1(), &s1());
        assert_eq!(two.labels(), &["0:*", "1:*"]);
        assert!(two.d(0, 1).is_inf() && two.d(1, 0).is_inf());
        assert!(j1.is_embedding() && j2.is_embedding());

        let (m, _, _) = coproduct(&x2(), &FinSpace::empty());
        assert!(brute_iso_check(&m, &x2()).unwrap());

        let (four, _, _) = coproduct(&x2(), &x2());
        assert_eq!(four.len(), 4);
        assert_eq!(four.d(0, 1), &ExtValue::integer(1));
        assert_eq!(four.d(2, 3), &ExtValue::integer(1));
        assert!(four.d(0, 3).is_inf() && four.d(3, 0).is_inf());
    }

    #[test]
    fn equalizer_examples() {
        let id = FinMap::identity(&x2());
        let e = equalizer(&id, &id).unwrap();
        assert!(e.is_isomorphism());

        let swap = FinMap::new(x2(), x2(), vec![1, 0]).unwrap();
        let e = equalizer(&id, &swap).unwrap();
        assert!(e.source().is_empty());
        assert!(e.is_embedding());

        let other = FinMap::constant(&x2(), &s1(), 0).unwrap();
        assert!(matches!(equalizer(&id, &other), Err(Error::NotParallel)));
    }

    #[test]
    fn pullback_examples() {
        let id = FinMap::identity(&x2());
        let pb = pullback(&id, &id).unwrap();
        assert!(brute_iso_check(pb.apex(), &x2()).unwrap());
        assert!(is_pullback_square(&pb).unwrap());

        let a = FinMap::inclusion(&x2(), &[0]);
        let b = FinMap::inclusion(&x2(), &[1]);
        assert!(pullback(&a, &b).unwrap().apex().is_empty());

        let c = FinMap::constant(&x2(), &s1(), 0).unwrap();
        let pb = pullback(&c, &c).unwrap();
        let (xx, _, _) = product(&x2(), &x2());
        assert_eq!(pb.apex(), &xx);

        assert!(matches!(pullback(&id, &c), Err(Error::NoCommonBoundary("target"))));
    }

    #[test]
    fn non_pullback_square() {
        let id = FinMap::identity(&x2());
        let c = FinMap::constant(&x2(), &s1(), 0).unwrap();
        let sq = Square::new(id.clone(), id, c.clone(), c).unwrap();
        // set-level pullback of the two constant maps has 4 points; the apex has 2
        assert!(!is_pullback_square(&sq).unwrap());
    }

    #[test]
    fn non_commuting_square_rejected() {
        let a = FinMap::inclusion(&x2(), &[0]);
        let to_b = FinMap::new(a.source().clone(), x2(), vec![1]).unwrap();
        let single = FinMap::identity(a.source());
        let bad = Square { p0: single.clone(), p1: single.clone(), f: a.clone(), g: to_b.clone() };
        assert!(matches!(is_pullback_square(&bad), Err(Error::NotCommuting)));
        assert!(matches!(Square::new(single.clone(), single, a, to_b), Err(Error::NotCommuting)));
    }
}
