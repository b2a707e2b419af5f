//! Twisted chain complexes of abelian covers and their homology dimensions.
//!
//! For a presentation with `m` generators and `k` relators and a twisting
//! homomorphism onto `Z^n`, the cover's cellular chain complex tensored up to
//! the fraction field has boundary matrices `d1` (1 x m, entry `j` equal to
//! the generator monomial minus one) and `d2` (m x k, Fox derivatives of the
//! relators). Every dimension statement reduces to ranks of these matrices.

use std::fmt;

use thiserror::Error;

use crate::linalg::{LinalgError, Matrix, RankReport, Ranker};
use crate::ring::RationalFunction;
use crate::words::{fox_derivative, Presentation, Twist, Word};

#[derive(Debug, Error)]
pub enum HomologyError {
    #[error("homomorphism does not vanish on relator {0}")]
    InvalidHom(usize),
    #[error("word does not lift to a loop: its image in the lattice is {0:?}")]
    NotALoopUpstairs(Vec<i64>),
    #[error("inclusion matrix does not have full column rank")]
    InvalidInclusion,
    #[error("parameters out of range: {0}")]
    DomainError(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The boundary matrices of the cover's chain complex over the fraction
/// field. Satisfies `d1 * d2 = 0`, which is checked at construction.
#[derive(Debug, Clone)]
pub struct TwistedComplex {
    d1: Matrix,
    d2: Matrix,
    gens: usize,
    relators: usize,
}

impl TwistedComplex {
    pub fn d1(&self) -> &Matrix {
        &self.d1
    }

    pub fn d2(&self) -> &Matrix {
        &self.d2
    }

    pub fn generator_count(&self) -> usize {
        self.gens
    }

    pub fn relator_count(&self) -> usize {
        self.relators
    }

    pub fn nvars(&self) -> usize {
        self.d1.nvars()
    }
}

/// Build the twisted complex of a presentation under a twisting homomorphism.
pub fn build_complex(p: &Presentation, twist: &Twist) -> Result<TwistedComplex, HomologyError> {
    assert_eq!(
        twist.generator_count(),
        p.generator_count(),
        "twist defined on a different generator set"
    );
    for (i, r) in p.relators().iter().enumerate() {
        if !twist.kills(r) {
            return Err(HomologyError::InvalidHom(i));
        }
    }
    let n = twist.rank();
    let m = p.generator_count();
    let k = p.relators().len();
    let one = RationalFunction::one(n);
    let d1 = Matrix::from_fn(1, m, n, |_, j| {
        &RationalFunction::from_poly(twist.monomial(&Word::generator(j))) - &one
    });
    let d2 = Matrix::from_fn(m, k, n, |j, i| fox_derivative(&p.relators()[i], j, twist));
    let chain = d1.matmul(&d2);
    assert!(chain.is_zero(), "chain condition d1*d2 = 0 violated");
    Ok(TwistedComplex {
        d1,
        d2,
        gens: m,
        relators: k,
    })
}

/// Homology dimensions by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiVector(pub Vec<usize>);

impl BettiVector {
    pub fn dims(&self) -> &[usize] {
        &self.0
    }

    /// Dimension in the given degree; zero beyond the stored range.
    pub fn get(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn alternating_sum(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    /// Betti vector of complex projective space of complex dimension `r - 1`:
    /// one in every even degree up to `2r - 2`.
    pub fn projective_space(r: usize) -> BettiVector {
        BettiVector((0..2 * r - 1).map(|i| usize::from(i % 2 == 0)).collect())
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|b| b.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Twisted Betti dimensions of the presentation complex:
/// `b0 = 1 - rank d1`, `b1 = (m - rank d1) - rank d2`, `b2 = k - rank d2`.
/// The degree-2 entry is reported only when the presentation has relators.
pub fn twisted_betti(
    p: &Presentation,
    twist: &Twist,
    ranker: &Ranker,
) -> Result<BettiVector, HomologyError> {
    let c = build_complex(p, twist)?;
    betti_of_complex(&c, ranker)
}

pub fn betti_of_complex(c: &TwistedComplex, ranker: &Ranker) -> Result<BettiVector, HomologyError> {
    betti_of_complex_with_reports(c, ranker).map(|(b, _)| b)
}

/// Like [`betti_of_complex`], also returning the per-matrix rank reports so
/// callers can surface randomized/exact escalations.
pub fn betti_of_complex_with_reports(
    c: &TwistedComplex,
    ranker: &Ranker,
) -> Result<(BettiVector, Vec<RankReport>), HomologyError> {
    let rep1 = ranker.rank_report(c.d1())?;
    let rep2 = ranker.rank_report(c.d2())?;
    let (r1, r2) = (rep1.value, rep2.value);
    let b0 = 1 - r1;
    let b1 = (c.gens - r1) - r2;
    let betti = if c.relators == 0 {
        BettiVector(vec![b0, b1])
    } else {
        BettiVector(vec![b0, b1, c.relators - r2])
    };
    Ok((betti, vec![rep1, rep2]))
}

/// A 1-cycle of the twisted complex: a vector in the kernel of `d1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleVector {
    entries: Vec<RationalFunction>,
    nvars: usize,
}

impl CycleVector {
    pub fn new(nvars: usize, entries: Vec<RationalFunction>) -> Self {
        assert!(entries.iter().all(|e| e.nvars() == nvars));
        CycleVector { entries, nvars }
    }

    pub fn entries(&self) -> &[RationalFunction] {
        &self.entries
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RationalFunction::is_zero)
    }

    pub fn scaled(&self, by: &RationalFunction) -> CycleVector {
        CycleVector {
            entries: self.entries.iter().map(|e| e * by).collect(),
            nvars: self.nvars,
        }
    }

    /// The cycle as a single-column matrix.
    pub fn as_column(&self) -> Matrix {
        Matrix::from_columns(
            self.nvars,
            self.entries.len(),
            std::slice::from_ref(&self.entries),
        )
    }
}

/// Build a matrix whose columns are the given cycles.
pub fn cycles_matrix(rows: usize, nvars: usize, cycles: &[CycleVector]) -> Matrix {
    let cols: Vec<Vec<RationalFunction>> = cycles.iter().map(|c| c.entries().to_vec()).collect();
    for c in &cols {
        assert_eq!(c.len(), rows);
    }
    Matrix::from_columns(nvars, rows, &cols)
}

/// The 1-cycle carried by a loop that lifts to the cover (its image in the
/// lattice must vanish): entry `j` is the Fox derivative of the word with
/// respect to generator `j`, pushed through the twist.
pub fn loop_cycle(
    w: &Word,
    twist: &Twist,
    c: &TwistedComplex,
) -> Result<CycleVector, HomologyError> {
    let image = twist.of_word(w);
    if image.iter().any(|&v| v != 0) {
        return Err(HomologyError::NotALoopUpstairs(image));
    }
    let entries: Vec<RationalFunction> = (0..c.generator_count())
        .map(|j| fox_derivative(w, j, twist))
        .collect();
    let cycle = CycleVector::new(twist.rank(), entries);
    debug_assert!(
        c.d1().matmul(&cycle.as_column()).is_zero(),
        "loop cycle not in ker d1"
    );
    Ok(cycle)
}

/// Whether the cycle's class in degree-1 homology is nonzero, i.e. it lies
/// outside the image of `d2`.
pub fn class_is_nonzero(
    cycle: &CycleVector,
    c: &TwistedComplex,
    ranker: &Ranker,
) -> Result<bool, HomologyError> {
    let dim = ranker.quotient_dim(c.d2(), &cycle.as_column())?;
    Ok(dim == 1)
}

/// Exact rank of a small integer matrix (over the rationals), by fraction-free
/// elimination in 128-bit arithmetic.
fn int_matrix_rank(rows: &[Vec<i64>]) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let mut rank = 0;
    let mut prev: i128 = 1;
    for step in 0..nrows.min(ncols) {
        let mut pivot = None;
        'search: for i in step..nrows {
            for j in step..ncols {
                if a[i][j] != 0 {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(step, pi);
        for row in a.iter_mut() {
            row.swap(step, pj);
        }
        for i in step + 1..nrows {
            for j in step + 1..ncols {
                a[i][j] = (a[step][step] * a[i][j] - a[i][step] * a[step][j]) / prev;
            }
            a[i][step] = 0;
        }
        prev = a[step][step];
        rank += 1;
    }
    rank
}

/// Check the reduction property: composing a twist with an injective lattice
/// inclusion leaves every twisted Betti number unchanged.
pub fn reduction_check(
    p: &Presentation,
    inner: &Twist,
    inclusion: &[Vec<i64>],
    ranker: &Ranker,
) -> Result<bool, HomologyError> {
    let ncols = inner.rank();
    if inclusion.iter().any(|r| r.len() != ncols) {
        return Err(HomologyError::InvalidInclusion);
    }
    if int_matrix_rank(inclusion) != ncols {
        return Err(HomologyError::InvalidInclusion);
    }
    let composed = inner.composed_with(inclusion);
    let before = twisted_betti(p, inner, ranker)?;
    let after = twisted_betti(p, &composed, ranker)?;
    Ok(before == after)
}

/// Degreewise convolution `dims[i] = sum_{j+k=i} x[j] * y[k]`, the Künneth
/// formula for a product with an untwisted factor.
pub fn kunneth_convolve(x: &BettiVector, y: &BettiVector) -> BettiVector {
    if x.0.is_empty() || y.0.is_empty() {
        return BettiVector(vec![]);
    }
    let mut out = vec![0usize; x.0.len() + y.0.len() - 1];
    for (j, &a) in x.0.iter().enumerate() {
        for (k, &b) in y.0.iter().enumerate() {
            out[j + k] += a * b;
        }
    }
    BettiVector(out)
}

/// Betti numbers of the rank-r one-vortex moduli space over a genus-g
/// surface: `2g - 2` in each odd degree up to `2r - 1`, zero elsewhere.
pub fn vortex_betti(genus: usize, rank: usize) -> Result<BettiVector, HomologyError> {
    if genus < 2 || rank < 1 {
        return Err(HomologyError::DomainError(format!(
            "vortex moduli need genus >= 2 and rank >= 1, got ({genus}, {rank})"
        )));
    }
    let surface = BettiVector(vec![0, 2 * genus - 2, 0]);
    Ok(kunneth_convolve(
        &BettiVector::projective_space(rank),
        &surface,
    ))
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Betti numbers of the space of k identical vortices on a genus-g surface:
/// `binomial(2g-2, k)` in degree k, zero elsewhere.
pub fn symk_betti(genus: usize, k: usize) -> Result<BettiVector, HomologyError> {
    if genus < 2 || k < 1 {
        return Err(HomologyError::DomainError(format!(
            "multivortex formula needs genus >= 2 and k >= 1, got ({genus}, {k})"
        )));
    }
    let mut dims = vec![0usize; k + 1];
    dims[k] = binomial(2 * genus - 2, k);
    Ok(BettiVector(dims))
}
