//! JSON file schema (format tag `pochhammer/1`) for pants decompositions and
//! twist matrices, shared by the CLI and the test fixtures.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pants::PantsGraph;
use crate::words::{Presentation, WordError};

pub const FORMAT: &str = "pochhammer/1";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema: {0}")]
    Schema(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SurfaceSection {
    pub genus: usize,
    pub punctures: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PantsSection {
    pub id: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub words: Option<[String; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveSection {
    pub id: usize,
    /// The two pants the curve bounds; the label is its class at the first.
    pub ends: [usize; 2],
    pub label: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LegSection {
    pub pants: usize,
    pub label: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
}

/// The on-disk form of a [`PantsGraph`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PantsFile {
    pub format: String,
    pub surface: SurfaceSection,
    pub pants: Vec<PantsSection>,
    pub curves: Vec<CurveSection>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub legs: Vec<LegSection>,
}

impl PantsFile {
    pub fn from_graph(pg: &PantsGraph) -> Result<Self, IoError> {
        let p = Presentation::surface(pg.genus(), pg.punctures())?;
        let pants = (0..pg.pants_count())
            .map(|id| PantsSection {
                id,
                words: pg
                    .pants_words(id)
                    .map(|(u, v)| [p.format_word(u), p.format_word(v)]),
            })
            .collect();
        let curves = pg
            .curves()
            .iter()
            .enumerate()
            .map(|(id, c)| CurveSection {
                id,
                ends: [c.ends[0].pants, c.ends[1].pants],
                label: c.ends[0].label.clone(),
                word: c.word.as_ref().map(|w| p.format_word(w)),
                name: c.name.clone(),
            })
            .collect();
        let legs = pg
            .legs()
            .iter()
            .map(|l| LegSection {
                pants: l.pants,
                label: l.label.clone(),
                word: l.word.as_ref().map(|w| p.format_word(w)),
            })
            .collect();
        Ok(PantsFile {
            format: FORMAT.to_string(),
            surface: SurfaceSection {
                genus: pg.genus(),
                punctures: pg.punctures(),
            },
            pants,
            curves,
            legs,
        })
    }

    pub fn to_graph(&self) -> Result<PantsGraph, IoError> {
        if self.format != FORMAT {
            return Err(IoError::Schema(format!(
                "unsupported format {:?}, expected {FORMAT:?}",
                self.format
            )));
        }
        let p = Presentation::surface(self.surface.genus, self.surface.punctures)?;
        let mut pg = PantsGraph::new(self.surface.genus, self.surface.punctures, self.pants.len());
        let mut sorted: Vec<&CurveSection> = self.curves.iter().collect();
        sorted.sort_by_key(|c| c.id);
        for (pos, c) in sorted.iter().enumerate() {
            if c.id != pos {
                return Err(IoError::Schema(format!(
                    "curve ids must be 0..{} without gaps",
                    self.curves.len()
                )));
            }
            let word = c.word.as_deref().map(|t| p.parse_word(t)).transpose()?;
            let ci = pg.add_curve(c.ends[0], c.ends[1], c.label.clone(), word);
            if let Some(name) = &c.name {
                pg.set_curve_name(ci, name.clone());
            }
        }
        for l in &self.legs {
            let word = l.word.as_deref().map(|t| p.parse_word(t)).transpose()?;
            pg.add_leg(l.pants, l.label.clone(), word);
        }
        for section in &self.pants {
            if section.id >= self.pants.len() {
                return Err(IoError::Schema(format!(
                    "pants id {} out of range",
                    section.id
                )));
            }
            if let Some([u, v]) = &section.words {
                pg.set_pants_words(section.id, p.parse_word(u)?, p.parse_word(v)?);
            }
        }
        Ok(pg)
    }
}

pub fn graph_to_json(pg: &PantsGraph) -> Result<String, IoError> {
    let file = PantsFile::from_graph(pg)?;
    Ok(serde_json::to_string_pretty(&file)?)
}

pub fn graph_from_json(text: &str) -> Result<PantsGraph, IoError> {
    let file: PantsFile = serde_json::from_str(text)?;
    file.to_graph()
}

/// A twist matrix file: either `{"alpha": [[…]]}` or a bare row-major array.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlphaFile {
    pub alpha: Vec<Vec<i64>>,
}

pub fn alpha_from_json(text: &str) -> Result<Vec<Vec<i64>>, IoError> {
    if let Ok(f) = serde_json::from_str::<AlphaFile>(text) {
        return Ok(f.alpha);
    }
    Ok(serde_json::from_str::<Vec<Vec<i64>>>(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pants::{canonical_decomposition, dumbbell};

    fn one_holed_torus() -> PantsGraph {
        let p = Presentation::surface(1, 1).unwrap();
        let w = |text: &str| p.parse_word(text).unwrap();
        let mut pg = PantsGraph::new(1, 1, 1);
        pg.add_curve(0, 0, vec![1, 0], Some(w("a1")));
        pg.add_leg(0, vec![0, 0], Some(w("[b1,a1]")));
        pg.set_pants_words(0, w("a1"), w("b1 a1^-1 b1^-1"));
        pg
    }

    #[test]
    fn json_round_trip() {
        for pg in [
            canonical_decomposition(2).unwrap(),
            canonical_decomposition(4).unwrap(),
            dumbbell(),
            one_holed_torus(),
        ] {
            let text = graph_to_json(&pg).unwrap();
            let back = graph_from_json(&text).unwrap();
            assert_eq!(back, pg);
        }
    }

    #[test]
    fn format_tag_is_checked() {
        let pg = dumbbell();
        let mut file = PantsFile::from_graph(&pg).unwrap();
        file.format = "pochhammer/2".to_string();
        assert!(matches!(file.to_graph(), Err(IoError::Schema(_))));
    }

    #[test]
    fn curve_id_gaps_are_rejected() {
        let mut file = PantsFile::from_graph(&dumbbell()).unwrap();
        file.curves[1].id = 5;
        assert!(matches!(file.to_graph(), Err(IoError::Schema(_))));
    }

    #[test]
    fn alpha_file_forms() {
        assert_eq!(
            alpha_from_json("[[1,0],[0,1]]").unwrap(),
            vec![vec![1, 0], vec![0, 1]]
        );
        assert_eq!(
            alpha_from_json("{\"alpha\": [[2]]}").unwrap(),
            vec![vec![2]]
        );
        assert!(alpha_from_json("{\"alpha\": 3}").is_err());
    }
}
