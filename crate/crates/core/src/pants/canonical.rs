//! Fixed decorated decompositions: a canonical fashionable decomposition for
//! every closed genus, and the two-pants decomposition along a separating
//! curve that exhibits the failure of the sewing property.

use crate::words::{Presentation, Word};

use super::{PantsError, PantsGraph};

fn ab(word: &Word, n: usize) -> Vec<i64> {
    let mut acc = vec![0i64; n];
    for l in word.letters() {
        acc[l.gen] += if l.inverse { -1 } else { 1 };
    }
    acc
}

/// Canonical fashionable decomposition of the closed genus-g surface:
/// `2g - 2` pants in a cycle joined by curves `D_1 … D_{2g-2}`, with `g - 1`
/// chord curves `H_j` doubling the odd cycle edges. The designated boundary
/// words come from a graph-of-groups model of the decomposition whose
/// relator is exactly the standard surface relator, so each pants' pair is
/// an honest pair of boundary circles based at a common point, and their
/// commutator cycles realize the sewing property.
pub fn canonical_decomposition(genus: usize) -> Result<PantsGraph, PantsError> {
    if genus < 2 {
        return Err(PantsError::DomainError(format!(
            "canonical decomposition needs a closed surface of genus >= 2, got {genus}"
        )));
    }
    let g = genus;
    let count = 2 * g - 2;
    let n = 2 * g;
    let idx_a = |j: usize| 2 * (j - 1);
    let idx_b = |j: usize| 2 * j - 1;

    // x_i: the chord boundary word of the i-th pants (1-based).
    let x = |i: usize| -> Word {
        if i % 2 == 1 {
            let j = i.div_ceil(2);
            Word::generator(idx_a(j))
        } else {
            let j = i / 2;
            let a = Word::generator(idx_a(j));
            let b = Word::generator(idx_b(j));
            b.concat(&a.inverse()).concat(&b.inverse())
        }
    };
    // y_i = x_{i+1} x_{i+2} … x_{2g-2} a_g: the cycle-edge boundary word.
    let mut y = vec![Word::identity(); count + 1];
    y[count] = Word::generator(idx_a(g));
    for i in (1..count).rev() {
        y[i] = x(i + 1).concat(&y[i + 1]);
    }

    let mut pg = PantsGraph::new(g, 0, count);
    // Cycle curves D_1 … D_{2g-2}; D_i runs from pants i to pants i+1 (mod).
    for i in 1..=count {
        let p0 = i - 1;
        let p1 = i % count;
        let word = y[i].clone();
        let label = ab(&word, n);
        pg.add_curve(p0, p1, label, Some(word));
    }
    // Chords H_1 … H_{g-1}; H_j doubles the edge between pants 2j-1 and 2j.
    for j in 1..g {
        let word = x(2 * j - 1);
        let label = ab(&word, n);
        pg.add_curve(2 * j - 2, 2 * j - 1, label, Some(word));
    }
    for i in 1..=count {
        pg.set_pants_words(i - 1, x(i), y[i].clone());
    }
    debug_assert!(pg.validate().is_empty(), "{:?}", pg.validate());
    Ok(pg)
}

/// The decorated two-pants decomposition of the closed genus-2 surface along
/// a separating curve `S`: each pants is a one-holed torus cut along its
/// handle curve (a self-loop). Unfashionable; the two Pochhammer classes
/// span the same line in twisted homology.
pub fn dumbbell() -> PantsGraph {
    let p = Presentation::surface(2, 0).expect("genus 2 exists");
    let w = |text: &str| p.parse_word(text).expect("fixed decoration parses");
    let mut pg = PantsGraph::new(2, 0, 2);
    pg.add_curve(0, 0, vec![1, 0, 0, 0], Some(w("a1")));
    pg.add_curve(1, 1, vec![0, 0, 1, 0], Some(w("a2")));
    // The separating curve bounds the first one-holed torus; seen from
    // pants 0 its word is the inverted commutator of that handle pair.
    pg.add_curve(0, 1, vec![0, 0, 0, 0], Some(w("[b1,a1]")));
    pg.set_curve_name(2, "S");
    pg.set_pants_words(0, w("a1"), w("b1 a1^-1 b1^-1"));
    pg.set_pants_words(1, w("a2"), w("b2 a2^-1 b2^-1"));
    debug_assert!(pg.validate().is_empty(), "{:?}", pg.validate());
    pg
}
