//! Rank computation for matrices over the rational-function field.
//!
//! Every homology dimension in this crate reduces to a matrix rank. Two
//! backends are provided: an exact one (fraction-free Bareiss elimination
//! after clearing denominators row by row) and a randomized one that
//! evaluates the matrix at random points of a prime field of size 2^61 - 1
//! and eliminates there. The randomized rank never exceeds the exact rank,
//! and equals it with high probability per trial (Schwartz–Zippel).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::ring::{modp, Exponents, LaurentPoly, RationalFunction};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    ShapeError(String),
    #[error("randomized rank failed: persistent evaluation poles after {0} resamples")]
    RandomizedRankFailure(u32),
}

/// Dense matrix over the rational-function field in a fixed number of
/// variables. Immutable once built; all rank computations are pure.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    data: Vec<RationalFunction>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        let data = vec![RationalFunction::zero(nvars); rows * cols];
        Matrix {
            rows,
            cols,
            nvars,
            data,
        }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = Self::zeros(n, n, nvars);
        for i in 0..n {
            m.set(i, i, RationalFunction::one(nvars));
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        nvars: usize,
        mut f: impl FnMut(usize, usize) -> RationalFunction,
    ) -> Self {
        let mut m = Self::zeros(rows, cols, nvars);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                assert_eq!(v.nvars(), nvars, "entry variable count mismatch");
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<RationalFunction>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut m = Self::zeros(r, c, nvars);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                assert_eq!(v.nvars(), nvars, "entry variable count mismatch");
                m.set(i, j, v);
            }
        }
        m
    }

    /// Build a matrix whose columns are the given vectors.
    pub fn from_columns(nvars: usize, rows: usize, columns: &[Vec<RationalFunction>]) -> Self {
        assert!(
            columns.iter().all(|c| c.len() == rows),
            "column length mismatch"
        );
        Self::from_fn(rows, columns.len(), nvars, |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalFunction {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RationalFunction) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[RationalFunction] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Concatenate columns: `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::ShapeError(format!(
                "cannot stack {}x{} beside {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        Ok(Matrix::from_fn(
            self.rows,
            self.cols + other.cols,
            self.nvars,
            |i, j| {
                if j < self.cols {
                    self.get(i, j).clone()
                } else {
                    other.get(i, j - self.cols).clone()
                }
            },
        ))
    }

    /// Matrix product; used for small chain-condition checks.
    pub fn matmul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows);
        Matrix::from_fn(self.rows, rhs.cols, self.nvars, |i, j| {
            let mut acc = RationalFunction::zero(self.nvars);
            for k in 0..self.cols {
                acc = &acc + &(self.get(i, k) * rhs.get(k, j));
            }
            acc
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RationalFunction::is_zero)
    }
}

impl std::fmt::Display for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Polynomial with integer coefficients, the working type of the elimination
/// core. Rational coefficients are cleared row by row before elimination, so
/// the Bareiss recurrence runs entirely over `BigInt` terms.
#[derive(Debug, Clone, PartialEq, Eq)]
struct IntPoly {
    terms: BTreeMap<Exponents, BigInt>,
}

impl IntPoly {
    fn zero() -> Self {
        IntPoly {
            terms: BTreeMap::new(),
        }
    }

    fn one(nvars: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Exponents::zero(nvars), BigInt::one());
        IntPoly { terms }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn leading(&self) -> Option<(&Exponents, &BigInt)> {
        self.terms.iter().next_back()
    }

    fn total_degree(&self) -> i64 {
        self.leading().map_or(0, |(e, _)| e.total_degree())
    }

    fn insert(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn mul(&self, rhs: &IntPoly) -> IntPoly {
        let (short, long) = if self.term_count() <= rhs.term_count() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = IntPoly::zero();
        for (e1, c1) in &short.terms {
            for (e2, c2) in &long.terms {
                out.insert(e1.plus(e2), c1 * c2);
            }
        }
        out
    }

    /// `a * b - c * d`, the Bareiss cross-multiplication.
    fn cross(a: &IntPoly, b: &IntPoly, c: &IntPoly, d: &IntPoly) -> IntPoly {
        let mut out = a.mul(b);
        for (e1, c1) in &c.terms {
            for (e2, c2) in &d.terms {
                out.insert(e1.plus(e2), -(c1 * c2));
            }
        }
        out
    }

    /// Exact division; the quotient exists in the integer polynomial ring by
    /// the Sylvester identity whenever this is called.
    fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let (de, dc) = divisor.leading()?;
        let mut rem = self.clone();
        let mut quot = IntPoly::zero();
        let mut budget = 1_000_000usize;
        while !rem.is_zero() {
            if budget == 0 {
                return None;
            }
            budget -= 1;
            let (re, rc) = {
                let (e, c) = rem
                    .leading()
                    .expect("nonzero polynomial has a leading term");
                (e.clone(), c.clone())
            };
            let (qc, carry) = rc.div_rem(dc);
            if !carry.is_zero() {
                return None;
            }
            let qe = re.minus(de);
            for (e, c) in &divisor.terms {
                rem.insert(e.plus(&qe), -(c * &qc));
            }
            quot.insert(qe, qc);
        }
        Some(quot)
    }
}

/// Clear denominators (both the polynomial denominators of the fractions and
/// the rational coefficient denominators) and monomial content row by row,
/// producing an integer polynomial matrix of the same rank.
fn clear_rows(m: &Matrix) -> Vec<Vec<IntPoly>> {
    let mut out = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut row: Vec<LaurentPoly> = Vec::with_capacity(m.cols());
        for j in 0..m.cols() {
            let mut e = m.get(i, j).numer().clone();
            for j2 in 0..m.cols() {
                if j2 != j {
                    e = &e * m.get(i, j2).denom();
                }
            }
            row.push(e);
        }
        // Shift out the common monomial content of the whole row (a unit
        // scaling, so the rank is unchanged).
        let mut content: Option<Exponents> = None;
        for e in row.iter() {
            if let Some(c) = e.content() {
                if let Some(acc) = content.as_mut() {
                    acc.min_with(&c);
                } else {
                    content = Some(c);
                }
            }
        }
        if let Some(c) = content {
            if !c.is_zero() {
                let inv = c.negated();
                for e in row.iter_mut() {
                    *e = e.shift(&inv);
                }
            }
        }
        // Scale by the lcm of the coefficient denominators.
        let mut lcm = BigInt::one();
        for e in &row {
            for (_, c) in e.terms() {
                lcm = lcm.lcm(c.denom());
            }
        }
        let int_row = row
            .iter()
            .map(|e| {
                let mut p = IntPoly::zero();
                let lcm_ratio = num_rational::BigRational::from_integer(lcm.clone());
                for (exps, c) in e.terms() {
                    let scaled = c * &lcm_ratio;
                    debug_assert!(scaled.is_integer());
                    p.insert(exps.clone(), scaled.to_integer());
                }
                p
            })
            .collect();
        out.push(int_row);
    }
    out
}

/// Exact rank by fraction-free Bareiss elimination with full pivoting.
///
/// The pivot is the nonzero entry with the fewest terms, ties broken by
/// lowest total degree and then position, which keeps intermediate
/// expression swell down and makes the elimination deterministic.
pub fn rank_exact(m: &Matrix) -> usize {
    let rows = m.rows();
    let cols = m.cols();
    if rows == 0 || cols == 0 {
        return 0;
    }
    let mut a = clear_rows(m);
    let mut prev = IntPoly::one(m.nvars());
    let mut rank = 0;
    for step in 0..rows.min(cols) {
        let mut pivot: Option<(usize, usize, usize, i64)> = None;
        for i in step..rows {
            for j in step..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                let terms = a[i][j].term_count();
                let deg = a[i][j].total_degree();
                let better = match pivot {
                    None => true,
                    Some((_, _, pt, pd)) => (terms, deg) < (pt, pd),
                };
                if better {
                    pivot = Some((i, j, terms, deg));
                }
            }
        }
        let Some((pi, pj, _, _)) = pivot else { break };
        a.swap(step, pi);
        for row in a.iter_mut() {
            row.swap(step, pj);
        }
        for i in step + 1..rows {
            for j in step + 1..cols {
                let t = IntPoly::cross(&a[step][step], &a[i][j], &a[i][step], &a[step][j]);
                a[i][j] = t
                    .div_exact(&prev)
                    .expect("Bareiss division is exact by the Sylvester identity");
            }
            a[i][step] = IntPoly::zero();
        }
        prev = a[step][step].clone();
        rank += 1;
    }
    rank
}

const RESAMPLE_LIMIT: u32 = 32;

fn rank_mod_p(mut a: Vec<Vec<u64>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut col = 0;
    while rank < rows && col < cols {
        let Some(pivot_row) = (rank..rows).find(|&i| a[i][col] != 0) else {
            col += 1;
            continue;
        };
        a.swap(rank, pivot_row);
        let inv = modp::inv(a[rank][col]);
        for i in rank + 1..rows {
            if a[i][col] == 0 {
                continue;
            }
            let factor = modp::mul(a[i][col], inv);
            for j in col..cols {
                let delta = modp::mul(factor, a[rank][j]);
                a[i][j] = modp::sub(a[i][j], delta);
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

fn one_trial(m: &Matrix, rng: &mut ChaCha8Rng) -> Result<usize, LinalgError> {
    for _ in 0..RESAMPLE_LIMIT {
        // All coordinates nonzero so negative Laurent exponents stay invertible.
        let point: Vec<u64> = (0..m.nvars()).map(|_| rng.gen_range(1..modp::P)).collect();
        let mut evaluated = Vec::with_capacity(m.rows());
        let mut ok = true;
        'rows: for i in 0..m.rows() {
            let mut row = Vec::with_capacity(m.cols());
            for j in 0..m.cols() {
                match m.get(i, j).eval_mod(&point) {
                    Some(v) => row.push(v),
                    None => {
                        ok = false;
                        break 'rows;
                    }
                }
            }
            evaluated.push(row);
        }
        if ok {
            return Ok(rank_mod_p(evaluated));
        }
    }
    Err(LinalgError::RandomizedRankFailure(RESAMPLE_LIMIT))
}

/// Per-trial ranks at independent random points, deterministic in `seed`.
pub fn rank_randomized_trials(
    m: &Matrix,
    trials: u32,
    seed: u64,
) -> Result<Vec<usize>, LinalgError> {
    assert!(trials >= 1, "at least one trial required");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).map(|_| one_trial(m, &mut rng)).collect()
}

/// Randomized rank: the maximum rank over `trials` evaluations at random
/// points. Always a lower bound for [`rank_exact`].
pub fn rank_randomized(m: &Matrix, trials: u32, seed: u64) -> Result<usize, LinalgError> {
    Ok(rank_randomized_trials(m, trials, seed)?
        .into_iter()
        .max()
        .unwrap_or(0))
}

/// Which rank backend to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankBackend {
    Exact,
    Randomized { trials: u32, seed: u64 },
}

/// Outcome of a rank computation, including enough detail to report
/// randomized/exact disagreements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankReport {
    pub value: usize,
    pub trial_values: Vec<usize>,
    /// True when randomized trials disagreed and the exact backend decided.
    pub escalated: bool,
}

/// Rank engine carrying the backend choice. The randomized backend
/// escalates to the exact one whenever its trials disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ranker {
    pub backend: RankBackend,
}

impl Default for Ranker {
    fn default() -> Self {
        Ranker::randomized(2, 0)
    }
}

impl Ranker {
    pub fn exact() -> Self {
        Ranker {
            backend: RankBackend::Exact,
        }
    }

    pub fn randomized(trials: u32, seed: u64) -> Self {
        Ranker {
            backend: RankBackend::Randomized { trials, seed },
        }
    }

    pub fn rank(&self, m: &Matrix) -> Result<usize, LinalgError> {
        self.rank_report(m).map(|r| r.value)
    }

    pub fn rank_report(&self, m: &Matrix) -> Result<RankReport, LinalgError> {
        match self.backend {
            RankBackend::Exact => Ok(RankReport {
                value: rank_exact(m),
                trial_values: vec![],
                escalated: false,
            }),
            RankBackend::Randomized { trials, seed } => {
                let values = rank_randomized_trials(m, trials, seed)?;
                let first = values[0];
                if values.iter().all(|&v| v == first) {
                    Ok(RankReport {
                        value: first,
                        trial_values: values,
                        escalated: false,
                    })
                } else {
                    Ok(RankReport {
                        value: rank_exact(m),
                        trial_values: values,
                        escalated: true,
                    })
                }
            }
        }
    }

    /// Dimension of the image of the cycle span in the quotient by the
    /// boundary image: `rank([boundary | cycles]) - rank(boundary)`.
    pub fn quotient_dim(&self, boundary: &Matrix, cycles: &Matrix) -> Result<usize, LinalgError> {
        let stacked = boundary.hstack(cycles)?;
        Ok(self.rank(&stacked)? - self.rank(boundary)?)
    }
}
