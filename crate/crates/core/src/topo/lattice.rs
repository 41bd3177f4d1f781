//! Regular lattices with open boundaries.
//!
//! Node `(row, col)` has id `row * cols + col`. Links are emitted in
//! ascending `(min id, max id)` order with their parallel bonds adjacent,
//! which lets the protocol code group links without sorting.

use super::{Edge, QuantumNetwork, Sublattice, TopoError, Topology};

fn check_min(what: &'static str, got: usize, min: usize) -> Result<(), TopoError> {
    if got < min {
        Err(TopoError::TooSmall { what, min, got })
    } else {
        Ok(())
    }
}

fn push_link(edges: &mut Vec<Edge>, u: usize, v: usize, bonds: usize) {
    for _ in 0..bonds {
        edges.push(Edge::new(u, v, 0.0));
    }
}

fn grid_coords(rows: usize, cols: usize) -> Vec<(i64, i64)> {
    (0..rows)
        .flat_map(|r| (0..cols).map(move |c| (r as i64, c as i64)))
        .collect()
}

/// `side_length x side_length` square lattice, `2 L (L - 1)` links.
pub fn make_square(side_length: usize, bonds_per_link: usize) -> Result<QuantumNetwork, TopoError> {
    check_min("side_length", side_length, 2)?;
    check_min("bonds_per_link", bonds_per_link, 1)?;
    let l = side_length;
    let mut edges = Vec::with_capacity(2 * l * (l - 1) * bonds_per_link);
    for r in 0..l {
        for c in 0..l {
            let id = r * l + c;
            if c + 1 < l {
                push_link(&mut edges, id, id + 1, bonds_per_link);
            }
            if r + 1 < l {
                push_link(&mut edges, id, id + l, bonds_per_link);
            }
        }
    }
    QuantumNetwork::from_parts(l * l, edges, Topology::Square, bonds_per_link).with_coords(grid_coords(l, l))
}

/// Rows and columns of the brick-wall grid used for a honeycomb with
/// `cells_per_side` hexagons along each direction.
pub fn honeycomb_dims(cells_per_side: usize) -> (usize, usize) {
    (cells_per_side + 1, 2 * cells_per_side + 2)
}

/// Honeycomb lattice embedded as a brick wall.
///
/// Every node links to its horizontal neighbours; node `(r, c)` with `r + c`
/// even also links down to `(r + 1, c)`. Those nodes form sublattice A (links
/// left, right, down) and the rest sublattice B (links left, right, up), so
/// every interior node has three neighbours and the graph is bipartite. The
/// grid has `cells + 1` rows and `2 cells + 2` columns, which holds
/// `cells x cells` hexagons.
pub fn make_honeycomb(cells_per_side: usize, bonds_per_link: usize) -> Result<QuantumNetwork, TopoError> {
    check_min("cells_per_side", cells_per_side, 2)?;
    check_min("bonds_per_link", bonds_per_link, 1)?;
    let (rows, cols) = honeycomb_dims(cells_per_side);
    let mut edges = Vec::new();
    let mut labels = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let id = r * cols + c;
            let a_site = (r + c) % 2 == 0;
            labels.push(if a_site { Sublattice::A } else { Sublattice::B });
            if c + 1 < cols {
                push_link(&mut edges, id, id + 1, bonds_per_link);
            }
            if a_site && r + 1 < rows {
                push_link(&mut edges, id, id + cols, bonds_per_link);
            }
        }
    }
    QuantumNetwork::from_parts(rows * cols, edges, Topology::Honeycomb, bonds_per_link)
        .with_coords(grid_coords(rows, cols))?
        .with_sublattice(labels)
}

/// Triangular lattice on an `L x L` rhombus: right, down and down-right
/// neighbours, interior degree six.
pub fn make_triangular(side_length: usize) -> Result<QuantumNetwork, TopoError> {
    check_min("side_length", side_length, 2)?;
    let l = side_length;
    let mut edges = Vec::with_capacity(3 * l * l);
    for r in 0..l {
        for c in 0..l {
            let id = r * l + c;
            if c + 1 < l {
                push_link(&mut edges, id, id + 1, 1);
            }
            if r + 1 < l {
                push_link(&mut edges, id, id + l, 1);
                if c + 1 < l {
                    push_link(&mut edges, id, id + l + 1, 1);
                }
            }
        }
    }
    QuantumNetwork::from_parts(l * l, edges, Topology::Triangular, 1).with_coords(grid_coords(l, l))
}
