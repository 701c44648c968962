//! Rectangular pixel boards, the original Paintbucket setting.
//!
//! Pixels are 4-connected: two pixels touch when they share an edge.
//! Pixel `(row, col)` becomes vertex `row * cols + col` in the graph form.

use std::fmt;
use std::str::FromStr;

use crate::color::{Color, VertexId};
use crate::error::GameError;
use crate::graph::ColoredGraph;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GridPosition {
    rows: usize,
    cols: usize,
    pixels: Vec<Color>,
}

impl GridPosition {
    /// Builds a grid from row-major pixels.
    pub fn new(rows: usize, cols: usize, pixels: Vec<Color>) -> Result<Self, GameError> {
        if rows == 0 || cols == 0 {
            return Err(GameError::EmptyGrid);
        }
        if pixels.len() != rows * cols {
            return Err(GameError::RaggedRow {
                row: pixels.len() / cols,
                expected: cols,
                found: pixels.len() % cols,
            });
        }
        Ok(GridPosition { rows, cols, pixels })
    }

    pub fn from_rows(rows: &[Vec<Color>]) -> Result<Self, GameError> {
        let cols = rows.first().map(Vec::len).ok_or(GameError::EmptyGrid)?;
        for (row, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(GameError::RaggedRow { row, expected: cols, found: r.len() });
            }
        }
        GridPosition::new(rows.len(), cols, rows.concat())
    }

    /// Parses the text format: one line per row made of `B` and `W`.
    pub fn parse(text: &str) -> Result<Self, GameError> {
        let body = text.strip_suffix('\n').unwrap_or(text);
        if body.is_empty() {
            return Err(GameError::EmptyGrid);
        }
        let mut rows = Vec::new();
        for (row, line) in body.split('\n').enumerate() {
            let mut r = Vec::with_capacity(line.len());
            for (col, ch) in line.chars().enumerate() {
                let color = Color::from_char(ch).ok_or(GameError::InvalidPixel { row, col, found: ch })?;
                r.push(color);
            }
            if r.is_empty() {
                return Err(GameError::RaggedRow { row, expected: rows.first().map_or(1, Vec::len), found: 0 });
            }
            rows.push(r);
        }
        GridPosition::from_rows(&rows)
    }

    /// Newline-terminated text form, the inverse of [`GridPosition::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.rows * (self.cols + 1));
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.push(self.get(r, c).as_char());
            }
            out.push('\n');
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pixels(&self) -> &[Color] {
        &self.pixels
    }

    pub fn get(&self, row: usize, col: usize) -> Color {
        self.pixels[row * self.cols + col]
    }

    pub fn pixel_id(&self, row: usize, col: usize) -> VertexId {
        VertexId((row * self.cols + col) as u32)
    }

    pub fn pixel_of(&self, id: VertexId) -> (usize, usize) {
        let i = id.0 as usize;
        (i / self.cols, i % self.cols)
    }

    pub fn is_monochromatic(&self) -> bool {
        self.pixels.windows(2).all(|w| w[0] == w[1])
    }

    /// One vertex per pixel, edges between 4-neighbors.
    pub fn to_colored_graph(&self) -> ColoredGraph {
        let vertices = (0..self.rows * self.cols).map(|i| (VertexId(i as u32), self.pixels[i]));
        let mut edges = Vec::with_capacity(2 * self.rows * self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c + 1 < self.cols {
                    edges.push((self.pixel_id(r, c), self.pixel_id(r, c + 1)));
                }
                if r + 1 < self.rows {
                    edges.push((self.pixel_id(r, c), self.pixel_id(r + 1, c)));
                }
            }
        }
        ColoredGraph::new(vertices, edges).expect("grid lattice is a simple graph")
    }

    /// `player` fills the opponent group containing pixel `(row, col)`.
    pub fn flip_group(&self, row: usize, col: usize, player: Color) -> Result<GridPosition, GameError> {
        if row >= self.rows || col >= self.cols {
            return Err(GameError::PixelOutOfRange { row, col });
        }
        let flipped = self.to_colored_graph().flip_group(self.pixel_id(row, col), player)?;
        let pixels = flipped.vertices().map(|(_, c)| c).collect();
        GridPosition::new(self.rows, self.cols, pixels)
    }
}

impl FromStr for GridPosition {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GridPosition::parse(s)
    }
}

impl fmt::Display for GridPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints() {
        let g = GridPosition::parse("BWB\nWBW\n").unwrap();
        assert_eq!((g.rows(), g.cols()), (2, 3));
        assert_eq!(g.get(1, 1), Color::Black);
        assert_eq!(g.to_text(), "BWB\nWBW\n");
        // final newline is optional on input
        assert_eq!(GridPosition::parse("BWB\nWBW").unwrap(), g);
    }

    #[test]
    fn rejects_ragged_rows_and_bad_chars() {
        assert!(matches!(GridPosition::parse("BW\nB\n"), Err(GameError::RaggedRow { row: 1, .. })));
        assert!(matches!(
            GridPosition::parse("BX\n"),
            Err(GameError::InvalidPixel { row: 0, col: 1, found: 'X' })
        ));
        assert!(matches!(GridPosition::parse("BW\r\nWB\r\n"), Err(GameError::InvalidPixel { .. })));
        assert_eq!(GridPosition::parse(""), Err(GameError::EmptyGrid));
        assert!(GridPosition::parse("BW\n\nWB\n").is_err());
    }

    #[test]
    fn single_pixel_graph() {
        let g = GridPosition::parse("B\n").unwrap().to_colored_graph();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.color(VertexId(0)), Some(Color::Black));
    }

    #[test]
    fn two_by_two_lattice() {
        let g = GridPosition::parse("BB\nBB\n").unwrap().to_colored_graph();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 4);
    }

    #[test]
    fn x_pattern_lattice() {
        let grid = GridPosition::parse("WBW\nBWB\nWBW\n").unwrap();
        let g = grid.to_colored_graph();
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.edge_count(), 12);
        for (id, color) in g.vertices() {
            if color == Color::Black {
                assert_eq!(g.neighbors(id).len(), 3, "edge-center pixel {id}");
            }
        }
    }

    #[test]
    fn flip_group_fills_component() {
        let grid = GridPosition::parse("WBW\nBWB\nWBW\n").unwrap();
        let next = grid.flip_group(2, 2, Color::Black).unwrap();
        assert_eq!(next.to_text(), "WBW\nBWB\nWBB\n");
        assert!(grid.flip_group(0, 1, Color::Black).is_err());
        assert!(grid.flip_group(3, 0, Color::Black).is_err());
    }
}
