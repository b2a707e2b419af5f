//! Pair-of-pants decompositions of surfaces as decorated trivalent
//! multigraphs.
//!
//! Vertices are pants, edges are the cut curves (with a stub "leg" per
//! boundary/puncture circle). Each oriented edge-end carries the first
//! homology class of the curve as seen from its pants, with the two ends of
//! an edge opposite and the three classes at each pants summing to zero.
//! Curves may carry a boundary word in the surface presentation, and each
//! pants may designate two boundary words whose commutator is its Pochhammer
//! curve.

mod canonical;
mod dot;
mod fashion;
mod flip;
mod poch;

pub use canonical::{canonical_decomposition, dumbbell};
pub use dot::{export_dot, import_dot};
pub use fashion::make_fashionable;
pub use flip::{tshirt_flip, FlipSpec};
pub use poch::{pochhammer_vectors, sewing_rank};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homology::HomologyError;
use crate::words::{Letter, Presentation, Word, WordError};

#[derive(Debug, Error)]
pub enum PantsError {
    #[error("invalid pants graph:\n{}", format_violations(.0))]
    ValidationError(Vec<Violation>),
    #[error("unknown curve {0}")]
    UnknownCurve(usize),
    #[error("curve {0} is a self-loop and cannot be flipped")]
    FlipUnsupported(usize),
    #[error("invalid flip spec: {0}")]
    InvalidFlipSpec(String),
    #[error("fashion obstruction: {0}")]
    FashionObstruction(String),
    #[error("pants {0} carries no designated boundary words")]
    UndecoratedGraph(usize),
    #[error("decomposition is not fashionable")]
    NotFashionable,
    #[error("parameters out of range: {0}")]
    DomainError(String),
    #[error("index {0} out of range")]
    KeyError(usize),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Linalg(#[from] crate::linalg::LinalgError),
    #[error(transparent)]
    Word(#[from] WordError),
}

fn format_violations(vs: &[Violation]) -> String {
    vs.iter()
        .map(|v| format!("  {v}"))
        .collect::<Vec<_>>()
        .join("\n")
}

/// A reference to one boundary circle of a pants: an oriented edge-end or a
/// leg stub.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryRef {
    CurveEnd { curve: usize, end: usize },
    Leg { leg: usize },
}

impl fmt::Display for BoundaryRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryRef::CurveEnd { curve, end } => write!(f, "curve {curve} end {end}"),
            BoundaryRef::Leg { leg } => write!(f, "leg {leg}"),
        }
    }
}

/// One end of a cut curve: the pants it bounds and its class there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveEnd {
    pub pants: usize,
    pub label: Vec<i64>,
}

/// A cut curve. The optional word is the boundary word as seen from the
/// pants at end 0; the end-1 side uses its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    pub ends: [CurveEnd; 2],
    pub word: Option<Word>,
    pub name: Option<String>,
}

/// A boundary/puncture circle of the surface, attached to one pants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leg {
    pub pants: usize,
    pub label: Vec<i64>,
    pub word: Option<Word>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationRule {
    Reference,
    Degree,
    VertexCount,
    CurveCount,
    LabelRank,
    Orientation,
    LabelSum,
    Connectivity,
    GraphBetti,
    WordLabel,
    PantsWords,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: ViolationRule,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.rule, self.message)
    }
}

/// A pair-of-pants decomposition of the surface of the given genus with the
/// given number of punctures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PantsGraph {
    genus: usize,
    punctures: usize,
    pants_count: usize,
    curves: Vec<Curve>,
    legs: Vec<Leg>,
    pants_words: Vec<Option<(Word, Word)>>,
}

impl PantsGraph {
    pub fn new(genus: usize, punctures: usize, pants_count: usize) -> Self {
        PantsGraph {
            genus,
            punctures,
            pants_count,
            curves: Vec::new(),
            legs: Vec::new(),
            pants_words: vec![None; pants_count],
        }
    }

    /// Add a curve between two pants. The label is the class at `pants0`;
    /// the other end carries its negation. Returns the curve id.
    pub fn add_curve(
        &mut self,
        pants0: usize,
        pants1: usize,
        label: Vec<i64>,
        word: Option<Word>,
    ) -> usize {
        let neg = label.iter().map(|v| -v).collect();
        self.curves.push(Curve {
            ends: [
                CurveEnd {
                    pants: pants0,
                    label,
                },
                CurveEnd {
                    pants: pants1,
                    label: neg,
                },
            ],
            word,
            name: None,
        });
        self.curves.len() - 1
    }

    pub fn add_leg(&mut self, pants: usize, label: Vec<i64>, word: Option<Word>) -> usize {
        self.legs.push(Leg { pants, label, word });
        self.legs.len() - 1
    }

    pub fn set_curve_name(&mut self, curve: usize, name: impl Into<String>) {
        self.curves[curve].name = Some(name.into());
    }

    pub fn set_pants_words(&mut self, pants: usize, u: Word, v: Word) {
        self.pants_words[pants] = Some((u, v));
    }

    pub fn clear_pants_words(&mut self, pants: usize) {
        self.pants_words[pants] = None;
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn punctures(&self) -> usize {
        self.punctures
    }

    pub fn pants_count(&self) -> usize {
        self.pants_count
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    pub fn pants_words(&self, pants: usize) -> Option<&(Word, Word)> {
        self.pants_words.get(pants).and_then(Option::as_ref)
    }

    pub fn curve_name(&self, curve: usize) -> String {
        self.curves[curve]
            .name
            .clone()
            .unwrap_or_else(|| format!("c{curve}"))
    }

    /// Rank of the first homology lattice the labels live in.
    pub fn h1_rank(&self) -> usize {
        2 * self.genus + self.punctures.saturating_sub(1)
    }

    /// The standard presentation of the underlying surface group.
    pub fn surface_presentation(&self) -> Result<Presentation, WordError> {
        Presentation::surface(self.genus, self.punctures)
    }

    pub(crate) fn curves_mut(&mut self) -> &mut Vec<Curve> {
        &mut self.curves
    }

    pub(crate) fn legs_mut(&mut self) -> &mut Vec<Leg> {
        &mut self.legs
    }

    pub(crate) fn pants_words_mut(&mut self) -> &mut Vec<Option<(Word, Word)>> {
        &mut self.pants_words
    }

    /// Boundary circles of a pants, in a fixed deterministic order: curve
    /// ends by (curve, end), then legs.
    pub fn boundary_circles(&self, pants: usize) -> Vec<BoundaryRef> {
        let mut out = Vec::new();
        for (ci, c) in self.curves.iter().enumerate() {
            for (ei, e) in c.ends.iter().enumerate() {
                if e.pants == pants {
                    out.push(BoundaryRef::CurveEnd { curve: ci, end: ei });
                }
            }
        }
        for (li, l) in self.legs.iter().enumerate() {
            if l.pants == pants {
                out.push(BoundaryRef::Leg { leg: li });
            }
        }
        out
    }

    pub fn label_of(&self, r: BoundaryRef) -> &[i64] {
        match r {
            BoundaryRef::CurveEnd { curve, end } => &self.curves[curve].ends[end].label,
            BoundaryRef::Leg { leg } => &self.legs[leg].label,
        }
    }

    /// The boundary word of a circle as seen from its own pants; end 1 of a
    /// curve sees the inverse of the stored word.
    pub fn word_of(&self, r: BoundaryRef) -> Option<Word> {
        match r {
            BoundaryRef::CurveEnd { curve, end } => {
                let w = self.curves[curve].word.as_ref()?;
                Some(if end == 0 { w.clone() } else { w.inverse() })
            }
            BoundaryRef::Leg { leg } => self.legs[leg].word.clone(),
        }
    }

    pub fn pants_of(&self, r: BoundaryRef) -> usize {
        match r {
            BoundaryRef::CurveEnd { curve, end } => self.curves[curve].ends[end].pants,
            BoundaryRef::Leg { leg } => self.legs[leg].pants,
        }
    }

    /// Signed generator count of a word: its class in the homology lattice
    /// under the abelianization map.
    pub fn abelianized(&self, w: &Word) -> Option<Vec<i64>> {
        let n = self.h1_rank();
        let mut acc = vec![0i64; n];
        for &Letter { gen, inverse } in w.letters() {
            if gen >= n {
                return None;
            }
            acc[gen] += if inverse { -1 } else { 1 };
        }
        Some(acc)
    }

    fn components_excluding(&self, skip_curve: Option<usize>) -> usize {
        if self.pants_count == 0 {
            return 0;
        }
        let mut seen = vec![false; self.pants_count];
        let mut components = 0;
        for start in 0..self.pants_count {
            if seen[start] {
                continue;
            }
            components += 1;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                for (ci, c) in self.curves.iter().enumerate() {
                    if Some(ci) == skip_curve {
                        continue;
                    }
                    let (a, b) = (c.ends[0].pants, c.ends[1].pants);
                    let next = if a == v {
                        b
                    } else if b == v {
                        a
                    } else {
                        continue;
                    };
                    if next < self.pants_count && !seen[next] {
                        seen[next] = true;
                        stack.push(next);
                    }
                }
            }
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.components_excluding(None) <= 1
    }

    /// First Betti number of the underlying multigraph.
    pub fn graph_betti(&self) -> usize {
        self.curves.len() + self.components_excluding(None) - self.pants_count
    }

    /// The two sides of a curve after deleting it: membership vectors over
    /// pants. For a non-separating curve both ends land in the same side.
    pub(crate) fn sides_of(&self, curve: usize) -> (Vec<bool>, Vec<bool>) {
        let reach = |start: usize| {
            let mut seen = vec![false; self.pants_count];
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                for (ci, c) in self.curves.iter().enumerate() {
                    if ci == curve {
                        continue;
                    }
                    let (a, b) = (c.ends[0].pants, c.ends[1].pants);
                    let next = if a == v {
                        b
                    } else if b == v {
                        a
                    } else {
                        continue;
                    };
                    if !seen[next] {
                        seen[next] = true;
                        stack.push(next);
                    }
                }
            }
            seen
        };
        let a = reach(self.curves[curve].ends[0].pants);
        let b = reach(self.curves[curve].ends[1].pants);
        (a, b)
    }

    /// Whether deleting the curve disconnects the graph. Self-loops never
    /// separate.
    pub fn curve_is_separating(&self, curve: usize) -> Result<bool, PantsError> {
        let c = self
            .curves
            .get(curve)
            .ok_or(PantsError::UnknownCurve(curve))?;
        if c.ends[0].pants == c.ends[1].pants {
            return Ok(false);
        }
        let (side, _) = self.sides_of(curve);
        Ok(!side[c.ends[1].pants])
    }

    pub fn curve_label_is_zero(&self, curve: usize) -> bool {
        self.curves[curve].ends[0].label.iter().all(|&v| v == 0)
    }

    pub fn zero_labeled_curves(&self) -> Vec<usize> {
        (0..self.curves.len())
            .filter(|&c| self.curve_label_is_zero(c))
            .collect()
    }

    /// The label of a curve in the homology of the capped surface, obtained
    /// by killing the puncture classes. Diagnostic for the duality criterion
    /// on punctured surfaces; on closed surfaces it is the label itself.
    pub fn capped_label(&self, curve: usize) -> Vec<i64> {
        self.curves[curve].ends[0].label[..2 * self.genus].to_vec()
    }

    /// Check all structural invariants; an empty list means the graph is
    /// valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let push = |out: &mut Vec<Violation>, rule, message: String| {
            out.push(Violation { rule, message });
        };

        let mut refs_ok = true;
        for (ci, c) in self.curves.iter().enumerate() {
            for e in &c.ends {
                if e.pants >= self.pants_count {
                    push(
                        &mut out,
                        ViolationRule::Reference,
                        format!("curve {ci}: pants {} does not exist", e.pants),
                    );
                    refs_ok = false;
                }
            }
        }
        for (li, l) in self.legs.iter().enumerate() {
            if l.pants >= self.pants_count {
                push(
                    &mut out,
                    ViolationRule::Reference,
                    format!("leg {li}: pants {} does not exist", l.pants),
                );
                refs_ok = false;
            }
        }
        if !refs_ok {
            return out;
        }

        if 2 - 2 * self.genus as i64 - self.punctures as i64 >= 0 {
            push(
                &mut out,
                ViolationRule::VertexCount,
                format!(
                    "surface (genus {}, punctures {}) has nonnegative Euler characteristic",
                    self.genus, self.punctures
                ),
            );
            return out;
        }

        let want_pants = 2 * self.genus as i64 - 2 + self.punctures as i64;
        if self.pants_count as i64 != want_pants {
            push(
                &mut out,
                ViolationRule::VertexCount,
                format!("{} pants, expected {want_pants}", self.pants_count),
            );
        }
        let want_curves = 3 * self.genus as i64 - 3 + self.punctures as i64;
        if self.curves.len() as i64 != want_curves {
            push(
                &mut out,
                ViolationRule::CurveCount,
                format!("{} curves, expected {want_curves}", self.curves.len()),
            );
        }
        if self.legs.len() != self.punctures {
            push(
                &mut out,
                ViolationRule::CurveCount,
                format!("{} legs, expected {}", self.legs.len(), self.punctures),
            );
        }

        let n = self.h1_rank();
        for (ci, c) in self.curves.iter().enumerate() {
            if c.ends.iter().any(|e| e.label.len() != n) {
                push(
                    &mut out,
                    ViolationRule::LabelRank,
                    format!("curve {ci}: label length differs from h1 rank {n}"),
                );
                continue;
            }
            let opposite = c.ends[0]
                .label
                .iter()
                .zip(&c.ends[1].label)
                .all(|(a, b)| *a == -*b);
            if !opposite {
                push(
                    &mut out,
                    ViolationRule::Orientation,
                    format!("curve {ci}: end labels are not opposite"),
                );
            }
        }
        for (li, l) in self.legs.iter().enumerate() {
            if l.label.len() != n {
                push(
                    &mut out,
                    ViolationRule::LabelRank,
                    format!("leg {li}: label length differs from h1 rank {n}"),
                );
            }
        }
        if out.iter().any(|v| v.rule == ViolationRule::LabelRank) {
            return out;
        }

        for p in 0..self.pants_count {
            let circles = self.boundary_circles(p);
            if circles.len() != 3 {
                push(
                    &mut out,
                    ViolationRule::Degree,
                    format!("pants {p}: degree {} (expected 3)", circles.len()),
                );
                continue;
            }
            let mut sum = vec![0i64; n];
            for r in &circles {
                for (s, v) in sum.iter_mut().zip(self.label_of(*r)) {
                    *s += v;
                }
            }
            if sum.iter().any(|&v| v != 0) {
                push(
                    &mut out,
                    ViolationRule::LabelSum,
                    format!("pants {p}: incident labels sum to {sum:?}, not zero"),
                );
            }
        }

        if !self.is_connected() {
            push(
                &mut out,
                ViolationRule::Connectivity,
                "graph is not connected".to_string(),
            );
        } else if self.graph_betti() != self.genus {
            push(
                &mut out,
                ViolationRule::GraphBetti,
                format!(
                    "graph first Betti number {} differs from genus {}",
                    self.graph_betti(),
                    self.genus
                ),
            );
        }

        for (ci, c) in self.curves.iter().enumerate() {
            if let Some(w) = &c.word {
                match self.abelianized(w) {
                    Some(ab) if ab == c.ends[0].label => {}
                    Some(ab) => push(
                        &mut out,
                        ViolationRule::WordLabel,
                        format!(
                            "curve {ci}: word abelianizes to {ab:?}, label is {:?}",
                            c.ends[0].label
                        ),
                    ),
                    None => push(
                        &mut out,
                        ViolationRule::WordLabel,
                        format!("curve {ci}: word uses a generator out of range"),
                    ),
                }
            }
        }
        for (li, l) in self.legs.iter().enumerate() {
            if let Some(w) = &l.word {
                match self.abelianized(w) {
                    Some(ab) if ab == l.label => {}
                    Some(ab) => push(
                        &mut out,
                        ViolationRule::WordLabel,
                        format!(
                            "leg {li}: word abelianizes to {ab:?}, label is {:?}",
                            l.label
                        ),
                    ),
                    None => push(
                        &mut out,
                        ViolationRule::WordLabel,
                        format!("leg {li}: word uses a generator out of range"),
                    ),
                }
            }
        }

        for (p, pair) in self.pants_words.iter().enumerate() {
            let Some((u, v)) = pair else { continue };
            let circles = self.boundary_circles(p);
            if circles.len() != 3 {
                continue; // degree violation already recorded
            }
            let labels: Vec<&[i64]> = circles.iter().map(|r| self.label_of(*r)).collect();
            let mut remaining = labels.clone();
            let mut ok = true;
            for w in [u, v] {
                match self.abelianized(w) {
                    Some(ab) => {
                        if let Some(pos) = remaining.iter().position(|l| *l == ab.as_slice()) {
                            remaining.remove(pos);
                        } else {
                            ok = false;
                        }
                    }
                    None => ok = false,
                }
            }
            if !ok {
                push(
                    &mut out,
                    ViolationRule::PantsWords,
                    format!("pants {p}: designated words do not match two incident labels"),
                );
            }
        }

        out
    }

    /// Fashionability: every cut curve is nonzero in the homology of the
    /// surface. For closed surfaces this coincides with no curve separating;
    /// the direction forced by label consistency (separating curves carry the
    /// zero class) is asserted.
    pub fn is_fashionable(&self) -> Result<bool, PantsError> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(PantsError::ValidationError(violations));
        }
        let fashionable = self.zero_labeled_curves().is_empty();
        if self.punctures == 0 {
            for ci in 0..self.curves.len() {
                if self.curve_is_separating(ci)? {
                    assert!(
                        self.curve_label_is_zero(ci),
                        "separating curve {ci} must carry the zero class"
                    );
                }
            }
        }
        Ok(fashionable)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Theta graph on the closed genus-2 surface: two pants joined by three
    /// curves in classes e1, e2, -(e1+e2).
    fn theta() -> PantsGraph {
        let mut g = PantsGraph::new(2, 0, 2);
        g.add_curve(0, 1, vec![1, 0, 0, 0], None);
        g.add_curve(0, 1, vec![0, 0, 1, 0], None);
        g.add_curve(0, 1, vec![-1, 0, -1, 0], None);
        g
    }

    /// Dumbbell: two one-holed tori joined along a separating (zero-class)
    /// curve; each side's pants has a self-loop.
    fn plain_dumbbell() -> PantsGraph {
        let mut g = PantsGraph::new(2, 0, 2);
        g.add_curve(0, 0, vec![1, 0, 0, 0], None);
        g.add_curve(1, 1, vec![0, 0, 1, 0], None);
        g.add_curve(0, 1, vec![0, 0, 0, 0], None);
        g.set_curve_name(2, "S");
        g
    }

    #[test]
    fn theta_is_valid_and_fashionable() {
        let g = theta();
        assert!(g.validate().is_empty());
        assert!(g.is_fashionable().unwrap());
        for c in 0..3 {
            assert!(!g.curve_is_separating(c).unwrap());
        }
        assert_eq!(g.graph_betti(), 2);
    }

    #[test]
    fn dumbbell_is_valid_but_unfashionable() {
        let g = plain_dumbbell();
        assert!(g.validate().is_empty());
        assert!(!g.is_fashionable().unwrap());
        assert!(g.curve_is_separating(2).unwrap());
        assert!(
            !g.curve_is_separating(0).unwrap(),
            "self-loops never separate"
        );
        assert_eq!(g.zero_labeled_curves(), vec![2]);
        assert!(matches!(
            g.curve_is_separating(9),
            Err(PantsError::UnknownCurve(9))
        ));
    }

    #[test]
    fn degree_violation_detected() {
        let mut g = theta();
        // Fourth curve at pants 0 breaks trivalence (and counts).
        g.add_curve(0, 1, vec![0, 0, 0, 0], None);
        let vs = g.validate();
        assert!(vs.iter().any(|v| v.rule == ViolationRule::Degree));
        assert!(vs.iter().any(|v| v.rule == ViolationRule::CurveCount));
    }

    #[test]
    fn orientation_violation_detected() {
        let mut g = theta();
        g.curves_mut()[1].ends[1].label = vec![0, 0, 1, 0];
        let vs = g.validate();
        assert!(vs.iter().any(|v| v.rule == ViolationRule::Orientation));
    }

    #[test]
    fn label_sum_violation_detected() {
        let mut g = theta();
        g.curves_mut()[0].ends[0].label = vec![2, 0, 0, 0];
        g.curves_mut()[0].ends[1].label = vec![-2, 0, 0, 0];
        let vs = g.validate();
        assert!(vs.iter().any(|v| v.rule == ViolationRule::LabelSum));
    }

    #[test]
    fn word_label_mismatch_detected() {
        let mut g = theta();
        let p = g.surface_presentation().unwrap();
        g.curves_mut()[0].word = Some(p.parse_word("a2").unwrap());
        let vs = g.validate();
        assert!(vs.iter().any(|v| v.rule == ViolationRule::WordLabel));
        g.curves_mut()[0].word = Some(p.parse_word("a1").unwrap());
        assert!(g.validate().is_empty());
    }

    #[test]
    fn capped_label_projects_out_punctures() {
        // Genus 1 with 2 punctures: labels live in Z^3 (a1, b1, c1).
        let mut g = PantsGraph::new(1, 2, 2);
        g.add_curve(0, 1, vec![1, 0, 0], None);
        g.add_curve(0, 1, vec![-1, 0, -1], None);
        g.add_leg(0, vec![0, 0, 1], None);
        g.add_leg(1, vec![0, 0, -1], None);
        assert!(g.validate().is_empty(), "{:?}", g.validate());
        assert_eq!(g.capped_label(1), vec![-1, 0]);
        assert!(g.is_fashionable().unwrap());
    }
}
