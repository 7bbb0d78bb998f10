//! The small named Hoffman graphs: the family parts `H1 … H9` and the fat
//! graphs `F1 … F9` used in the forbidden-subgraph case analysis.
//!
//! Each figure ships as a text file under `data/` (compiled in as a
//! fallback) and can also be loaded from a directory at runtime. `H4` and
//! `H6`–`H9` are not part of the family used here and have no data file.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{GraphError, HoffmanGraph};

#[derive(Debug, Error)]
pub enum FigureError {
    #[error("no transcription available for {0}")]
    TranscriptionMissing(Figure),
    #[error("unknown figure name {0:?}")]
    UnknownName(String),
    #[error("figure {figure}: {source}")]
    Invalid { figure: Figure, source: GraphError },
    #[error("reading {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Figure {
    H(u8),
    F(u8),
}

impl Figure {
    pub const ALL: [Figure; 18] = [
        Figure::H(1),
        Figure::H(2),
        Figure::H(3),
        Figure::H(4),
        Figure::H(5),
        Figure::H(6),
        Figure::H(7),
        Figure::H(8),
        Figure::H(9),
        Figure::F(1),
        Figure::F(2),
        Figure::F(3),
        Figure::F(4),
        Figure::F(5),
        Figure::F(6),
        Figure::F(7),
        Figure::F(8),
        Figure::F(9),
    ];

    pub fn file_name(self) -> String {
        format!("{}.hg", self.to_string().to_lowercase())
    }

    fn builtin_text(self) -> Option<&'static str> {
        Some(match self {
            Figure::H(1) => include_str!("../../../data/h1.hg"),
            Figure::H(2) => include_str!("../../../data/h2.hg"),
            Figure::H(3) => include_str!("../../../data/h3.hg"),
            Figure::H(5) => include_str!("../../../data/h5.hg"),
            Figure::F(1) => include_str!("../../../data/f1.hg"),
            Figure::F(2) => include_str!("../../../data/f2.hg"),
            Figure::F(3) => include_str!("../../../data/f3.hg"),
            Figure::F(4) => include_str!("../../../data/f4.hg"),
            Figure::F(5) => include_str!("../../../data/f5.hg"),
            Figure::F(6) => include_str!("../../../data/f6.hg"),
            Figure::F(7) => include_str!("../../../data/f7.hg"),
            Figure::F(8) => include_str!("../../../data/f8.hg"),
            Figure::F(9) => include_str!("../../../data/f9.hg"),
            _ => return None,
        })
    }

    /// The compiled-in transcription.
    pub fn builtin(self) -> Result<HoffmanGraph, FigureError> {
        let text = self.builtin_text().ok_or(FigureError::TranscriptionMissing(self))?;
        HoffmanGraph::from_text(text).map_err(|source| FigureError::Invalid { figure: self, source })
    }

    /// Loads `<dir>/<name>.hg`; a missing file is `TranscriptionMissing`.
    pub fn load(self, dir: &Path) -> Result<HoffmanGraph, FigureError> {
        let path = dir.join(self.file_name());
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
                return Err(FigureError::TranscriptionMissing(self))
            }
            Err(source) => return Err(FigureError::Io { path: path.display().to_string(), source }),
        };
        HoffmanGraph::from_text(&text).map_err(|source| FigureError::Invalid { figure: self, source })
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Figure::H(i) => write!(f, "H{i}"),
            Figure::F(i) => write!(f, "F{i}"),
        }
    }
}

impl FromStr for Figure {
    type Err = FigureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FigureError::UnknownName(s.to_string());
        let (kind, num) = s.split_at(s.len().min(1));
        let i: u8 = num.parse().map_err(|_| bad())?;
        if !(1..=9).contains(&i) {
            return Err(bad());
        }
        match kind {
            "H" | "h" => Ok(Figure::H(i)),
            "F" | "f" => Ok(Figure::F(i)),
            _ => Err(bad()),
        }
    }
}

/// Where figures come from: the compiled-in copies or a data directory.
#[derive(Clone, Debug, Default)]
pub enum FigureSource {
    #[default]
    Builtin,
    Dir(std::path::PathBuf),
}

impl FigureSource {
    pub fn get(&self, fig: Figure) -> Result<HoffmanGraph, FigureError> {
        match self {
            FigureSource::Builtin => fig.builtin(),
            FigureSource::Dir(d) => fig.load(d),
        }
    }
}

fn fixed(fig: Figure) -> HoffmanGraph {
    fig.builtin().expect("compiled-in figure is valid")
}

/// One slim vertex with one fat neighbour.
pub fn h1() -> HoffmanGraph {
    fixed(Figure::H(1))
}

/// One slim vertex with two fat neighbours.
pub fn h2() -> HoffmanGraph {
    fixed(Figure::H(2))
}

/// Two non-adjacent slim vertices sharing one fat neighbour.
pub fn h3() -> HoffmanGraph {
    fixed(Figure::H(3))
}

/// Three slim vertices with a single edge among them, all on one fat vertex.
pub fn h5() -> HoffmanGraph {
    fixed(Figure::H(5))
}

/// Parts of the family the recognition works with.
pub fn family() -> [HoffmanGraph; 3] {
    [h2(), h3(), h5()]
}

pub fn f(i: u8) -> HoffmanGraph {
    fixed(Figure::F(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_figures_are_valid() {
        for fig in Figure::ALL {
            match fig.builtin() {
                Ok(g) => assert!(g.fat_count() > 0, "{fig}"),
                Err(FigureError::TranscriptionMissing(_)) => {
                    assert!(matches!(fig, Figure::H(4) | Figure::H(6..=9)), "{fig}")
                }
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn shapes() {
        assert_eq!((h1().slim_count(), h1().fat_count()), (1, 1));
        assert_eq!((h2().slim_count(), h2().fat_count()), (1, 2));
        let h3 = h3();
        assert_eq!((h3.slim_count(), h3.fat_count()), (2, 1));
        assert!(!h3.adjacent(0, 1));
        let h5 = h5();
        assert_eq!((h5.slim_count(), h5.fat_count()), (3, 1));
        assert_eq!(h5.slim_subgraph().edge_count(), 1);
    }

    #[test]
    fn names_round_trip() {
        for fig in Figure::ALL {
            assert_eq!(fig.to_string().parse::<Figure>().unwrap(), fig);
        }
        assert!("H0".parse::<Figure>().is_err());
        assert!("G1".parse::<Figure>().is_err());
        assert!("".parse::<Figure>().is_err());
    }

    #[test]
    fn data_dir_matches_builtin() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
        for fig in Figure::ALL {
            match (fig.load(&dir), fig.builtin()) {
                (Ok(a), Ok(b)) => assert_eq!(a, b),
                (Err(FigureError::TranscriptionMissing(_)), Err(FigureError::TranscriptionMissing(_))) => {}
                (a, b) => panic!("{fig}: {a:?} vs {b:?}"),
            }
        }
    }
}
