//! Named small spaces and corelations used throughout tests, suites and the
//! CLI fixture set.

use crate::corelation::BlockMetric;
use crate::ext::ExtValue;
use crate::map::FinMap;
use crate::matrix::Matrix;
use crate::space::FinSpace;

fn m(rows: &[&[&str]]) -> Matrix {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|s| s.parse::<ExtValue>().expect("token")).collect())
            .collect(),
    )
    .expect("square")
}

/// The one-point space `{*}`.
pub fn s1() -> FinSpace {
    FinSpace::singleton("*")
}

/// `{a, b}` at mutual distance 1.
pub fn x2() -> FinSpace {
    FinSpace::parse(&["a", "b"], &[&["0", "1"], &["1", "0"]]).expect("X2")
}

/// The gluing example: `S1 ↪ X = {p, x}` at `p`, and `S1 → B = {q, b}` at `q`.
pub fn gluing_span() -> (FinMap, FinMap) {
    let x = FinSpace::parse(&["p", "x"], &[&["0", "1"], &["1", "0"]]).expect("X");
    let b = FinSpace::parse(&["q", "b"], &[&["0", "2"], &["2", "0"]]).expect("B");
    let i = FinMap::new(s1(), x, vec![0]).expect("embedding");
    let f = FinMap::new(s1(), b, vec![0]).expect("map");
    (i, f)
}

/// The expected glued submetric on `B + X = {q, b, p, x}` for
/// [`gluing_span`].
pub fn gluing_gamma() -> Matrix {
    m(&[
        &["0", "2", "0", "1"],
        &["2", "0", "2", "3"],
        &["0", "2", "0", "1"],
        &["1", "3", "1", "0"],
    ])
}

/// The reflexive, non-symmetric corelation on a single point:
/// `(*,0) → (*,1)` at 0 and `(*,1) → (*,0)` at `inf`.
pub fn singleton_corelation() -> BlockMetric {
    BlockMetric::from_blocks(
        s1(),
        m(&[&["0"]]),
        m(&[&["0"]]),
        m(&[&["inf"]]),
        m(&[&["0"]]),
    )
    .expect("shape")
}

/// The two-point corelation read literally: self-distances 0, everything
/// else `inf` except `(a,0) ↔ (b,1)` at 1. It is not below `d_{X+X}`.
pub fn two_point_literal() -> BlockMetric {
    BlockMetric::from_blocks(
        x2(),
        m(&[&["0", "inf"], &["inf", "0"]]),
        m(&[&["inf", "1"], &["inf", "inf"]]),
        m(&[&["inf", "inf"], &["1", "inf"]]),
        m(&[&["0", "inf"], &["inf", "0"]]),
    )
    .expect("shape")
}

/// Min-plus closure of the arcs `(a,0) ↔ (b,1)` at 1 over diagonal blocks
/// equal to `d` on `X2`: reflexive, neither symmetric nor transitive.
pub fn two_point_closed() -> BlockMetric {
    BlockMetric::from_blocks(
        x2(),
        m(&[&["0", "1"], &["1", "0"]]),
        m(&[&["2", "1"], &["3", "2"]]),
        m(&[&["2", "3"], &["1", "2"]]),
        m(&[&["0", "1"], &["1", "0"]]),
    )
    .expect("shape")
}
