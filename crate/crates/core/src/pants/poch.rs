//! Pochhammer vectors of a decorated decomposition and the sewing rank of
//! any sub-collection of pants.

use crate::homology::{cycles_matrix, loop_cycle, CycleVector, TwistedComplex};
use crate::linalg::Ranker;
use crate::words::{Twist, Word};

use super::{PantsError, PantsGraph};

/// The per-pants Pochhammer cycles: for each pants with designated boundary
/// words `(u, v)`, the cycle of the commutator `[u, v]` in the twisted
/// complex. Requires a fashionable decomposition decorated on every pants.
pub fn pochhammer_vectors(
    pg: &PantsGraph,
    twist: &Twist,
    complex: &TwistedComplex,
) -> Result<Vec<CycleVector>, PantsError> {
    if !pg.is_fashionable()? {
        return Err(PantsError::NotFashionable);
    }
    let mut out = Vec::with_capacity(pg.pants_count());
    for p in 0..pg.pants_count() {
        let Some((u, v)) = pg.pants_words(p) else {
            return Err(PantsError::UndecoratedGraph(p));
        };
        let commutator = Word::commutator(u, v);
        out.push(loop_cycle(&commutator, twist, complex)?);
    }
    Ok(out)
}

/// Dimension of the span of the selected Pochhammer vectors in the quotient
/// by the boundary image. For a fashionable decomposition this equals the
/// size of the subset.
pub fn sewing_rank(
    vectors: &[CycleVector],
    subset: &[usize],
    complex: &TwistedComplex,
    ranker: &Ranker,
) -> Result<usize, PantsError> {
    let mut selected = Vec::with_capacity(subset.len());
    for &j in subset {
        let v = vectors.get(j).ok_or(PantsError::KeyError(j))?;
        selected.push(v.clone());
    }
    let cycles = cycles_matrix(complex.generator_count(), complex.nvars(), &selected);
    Ok(ranker.quotient_dim(complex.d2(), &cycles)?)
}
