//! T-shirt flips: replacing one cut curve of a four-holed sphere formed by
//! two adjacent pants, regrouping the four outer boundary circles so that two
//! chosen sleeves end up on opposite sides of the new curve.

use serde::{Deserialize, Serialize};

use crate::words::Word;

use super::{BoundaryRef, PantsError, PantsGraph};

/// A flip request: the curve to replace and one sleeve on each adjacent
/// pants. The sleeves stay separated by the new curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipSpec {
    pub curve: usize,
    pub sleeve1: BoundaryRef,
    pub sleeve2: BoundaryRef,
}

fn add_labels(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn neg_labels(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

/// The two boundary circles of `pants` other than the given end of `curve`.
fn other_circles(
    pg: &PantsGraph,
    pants: usize,
    curve: usize,
    end: usize,
) -> Result<[BoundaryRef; 2], PantsError> {
    let circles: Vec<BoundaryRef> = pg
        .boundary_circles(pants)
        .into_iter()
        .filter(|r| !matches!(r, BoundaryRef::CurveEnd { curve: c, end: e } if *c == curve && *e == end))
        .collect();
    <[BoundaryRef; 2]>::try_from(circles).map_err(|c| {
        PantsError::InvalidFlipSpec(format!(
            "pants {pants} has {} boundary circles besides the flipped curve, expected 2",
            c.len()
        ))
    })
}

fn move_circle(pg: &mut PantsGraph, r: BoundaryRef, to: usize) {
    match r {
        BoundaryRef::CurveEnd { curve, end } => pg.curves_mut()[curve].ends[end].pants = to,
        BoundaryRef::Leg { leg } => pg.legs_mut()[leg].pants = to,
    }
}

/// Perform a T-shirt flip. The new curve's class at the sleeve-2 side is the
/// sum of the two classes grouped with sleeve 1 (the stored end labels stay
/// opposite); the new boundary word, when both constituent circles carry
/// words, is their product as seen from the sleeve-1 side.
pub fn tshirt_flip(pg: &PantsGraph, spec: &FlipSpec) -> Result<PantsGraph, PantsError> {
    let curve = pg
        .curves()
        .get(spec.curve)
        .ok_or(PantsError::UnknownCurve(spec.curve))?;
    let (pa, pb) = (curve.ends[0].pants, curve.ends[1].pants);
    if pa == pb {
        return Err(PantsError::FlipUnsupported(spec.curve));
    }

    let touches_curve =
        |r: BoundaryRef| matches!(r, BoundaryRef::CurveEnd { curve: c, .. } if c == spec.curve);
    if touches_curve(spec.sleeve1) || touches_curve(spec.sleeve2) {
        return Err(PantsError::InvalidFlipSpec(
            "sleeves must be distinct from the flipped curve".to_string(),
        ));
    }
    if spec.sleeve1 == spec.sleeve2 {
        return Err(PantsError::InvalidFlipSpec(
            "sleeves must be distinct".to_string(),
        ));
    }

    // Normalize so sleeve1 sits on the end-0 pants.
    let (s1, s2) = match (pg.pants_of(spec.sleeve1), pg.pants_of(spec.sleeve2)) {
        (p, q) if p == pa && q == pb => (spec.sleeve1, spec.sleeve2),
        (p, q) if p == pb && q == pa => (spec.sleeve2, spec.sleeve1),
        (p, q) if p == q => {
            return Err(PantsError::InvalidFlipSpec(
                "sleeves requested on the same side".to_string(),
            ))
        }
        _ => {
            return Err(PantsError::InvalidFlipSpec(
                "sleeves must bound the two pants adjacent to the curve".to_string(),
            ))
        }
    };

    let [oa1, oa2] = other_circles(pg, pa, spec.curve, 0)?;
    let [ob1, ob2] = other_circles(pg, pb, spec.curve, 1)?;
    let partner_a = if s1 == oa1 {
        oa2
    } else if s1 == oa2 {
        oa1
    } else {
        unreachable!()
    };
    let partner_b = if s2 == ob1 {
        ob2
    } else if s2 == ob2 {
        ob1
    } else {
        unreachable!()
    };

    // Labels and words, read before any surgery.
    let grouped_label = add_labels(pg.label_of(s1), pg.label_of(partner_b));
    let word_s1 = pg.word_of(s1);
    let word_pb = pg.word_of(partner_b);
    let word_pa = pg.word_of(partner_a);
    let word_s2 = pg.word_of(s2);

    let mut out = pg.clone();
    move_circle(&mut out, partner_a, pb);
    move_circle(&mut out, partner_b, pa);

    // New curve data: end 0 on the sleeve-2 side carries the sum of the
    // classes grouped with sleeve 1, end 1 its negation.
    let new_word: Option<Word> = match (&word_s1, &word_pb) {
        (Some(u), Some(v)) => Some(u.concat(v)),
        _ => None,
    };
    {
        let c = &mut out.curves_mut()[spec.curve];
        c.ends[0].pants = pb;
        c.ends[0].label = grouped_label.clone();
        c.ends[1].pants = pa;
        c.ends[1].label = neg_labels(&grouped_label);
        c.word = new_word;
    }

    // Designated pants words follow the regrouped circles.
    out.pants_words_mut()[pa] = match (&word_s1, &word_pb) {
        (Some(u), Some(v)) => Some((u.clone(), v.clone())),
        _ => None,
    };
    out.pants_words_mut()[pb] = match (&word_pa, &word_s2) {
        (Some(u), Some(v)) => Some((u.clone(), v.clone())),
        _ => None,
    };

    Ok(out)
}
