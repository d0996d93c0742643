//! Independent cellular-homology oracle for small-cover manifolds.
//!
//! The manifold of a characteristic coloring is assembled from one cell
//! per (face of P, coset) pair: a face f contributes the cosets of
//! H_f = span{colors of the facets containing f}. The boundary of
//! (f, g + H_f) is the mod-2 sum of (f', g + H_{f'}) over codimension-1
//! subfaces f', well defined because H_{f'} contains H_f. Betti numbers
//! come from GF(2) rank computations on the boundary matrices, with no
//! input from the h-vector route they are checked against.

use std::collections::HashMap;

use crate::cover::{self, Coloring};
use crate::error::Result;
use crate::gf2::Gf2Matrix;
use crate::hvector;
use crate::polytope::Polytope;

/// A face of the polytope, graded by dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FaceRef {
    Vertex(usize),
    Edge(usize),
    Facet(usize),
    Body,
}

/// One cell of the quotient complex: a face of P together with the
/// minimum representative of its coset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cell {
    pub face: FaceRef,
    pub coset_rep: u8,
}

/// Cell complex of the small-cover manifold with GF(2) boundary maps.
pub struct QuotientComplex {
    n: usize,
    cells: Vec<Vec<Cell>>,
    /// boundaries[d] maps chains in dimension d to dimension d-1;
    /// boundaries[0] is the empty map out of the vertices.
    boundaries: Vec<Gf2Matrix>,
}

/// Mod-2 Betti numbers `(b_0, ..., b_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiVector(pub Vec<usize>);

impl BettiVector {
    pub fn b(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Subgroup of GF(2)^n spanned by the given vectors, as a sorted
/// element list.
fn span(generators: impl Iterator<Item = u8>) -> Vec<u8> {
    let mut elements = vec![0u8];
    for g in generators {
        if !elements.contains(&g) {
            let translated: Vec<u8> = elements.iter().map(|&e| e ^ g).collect();
            elements.extend(translated);
        }
    }
    elements.sort_unstable();
    elements
}

fn coset_rep(g: u8, subgroup: &[u8]) -> u8 {
    subgroup.iter().map(|&h| g ^ h).min().unwrap()
}

impl QuotientComplex {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn cells(&self, d: usize) -> &[Cell] {
        &self.cells[d]
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.len()).collect()
    }

    pub fn boundary(&self, d: usize) -> &Gf2Matrix {
        &self.boundaries[d]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(d, c)| {
                let sign = if d % 2 == 0 { 1 } else { -1 };
                sign * c.len() as i64
            })
            .sum()
    }

    /// Exact check that consecutive boundary maps compose to zero.
    pub fn boundary_square_is_zero(&self) -> bool {
        (2..=self.n).all(|d| self.boundaries[d - 1].mul(&self.boundaries[d]).is_zero())
    }

    /// `b_d = dim C_d - rank ∂_d - rank ∂_{d+1}` by GF(2) elimination.
    pub fn betti(&self) -> BettiVector {
        let ranks: Vec<usize> = self.boundaries.iter().map(|m| m.rank()).collect();
        let mut b = Vec::with_capacity(self.n + 1);
        for d in 0..=self.n {
            let above = if d + 1 <= self.n { ranks[d + 1] } else { 0 };
            b.push(self.cells[d].len() - ranks[d] - above);
        }
        BettiVector(b)
    }
}

/// Build the quotient complex of a characteristic coloring.
pub fn build_quotient_complex(p: &Polytope, c: &Coloring) -> Result<QuotientComplex> {
    p.require_valid()?;
    cover::require_characteristic(p, c)?;
    let n = p.dim();
    let full: u8 = ((1u16 << n) - 1) as u8;

    // faces per dimension, with their subgroups
    let mut faces_by_dim: Vec<Vec<(FaceRef, Vec<u8>)>> = Vec::with_capacity(n + 1);
    let vertex_faces: Vec<(FaceRef, Vec<u8>)> = (0..p.vertex_count())
        .map(|v| {
            let sub = span(p.vertex_facet_ids(v).iter().map(|&f| c.colors()[f]));
            (FaceRef::Vertex(v), sub)
        })
        .collect();
    faces_by_dim.push(vertex_faces);
    if n == 3 {
        let edge_faces: Vec<(FaceRef, Vec<u8>)> = (0..p.edge_count())
            .map(|e| {
                let sub = span(p.edge_facet_ids(e).iter().map(|&f| c.colors()[f]));
                (FaceRef::Edge(e), sub)
            })
            .collect();
        faces_by_dim.push(edge_faces);
    }
    let facet_faces: Vec<(FaceRef, Vec<u8>)> = (0..p.facet_count())
        .map(|f| (FaceRef::Facet(f), span(std::iter::once(c.colors()[f]))))
        .collect();
    faces_by_dim.push(facet_faces);
    faces_by_dim.push(vec![(FaceRef::Body, vec![0u8])]);

    // cells and index lookup
    let mut cells: Vec<Vec<Cell>> = Vec::with_capacity(n + 1);
    let mut index: Vec<HashMap<(FaceRef, u8), usize>> = Vec::with_capacity(n + 1);
    for faces in &faces_by_dim {
        let mut layer = Vec::new();
        let mut map = HashMap::new();
        for (face, sub) in faces {
            for g in 0..=full {
                if coset_rep(g, sub) == g {
                    map.insert((*face, g), layer.len());
                    layer.push(Cell {
                        face: *face,
                        coset_rep: g,
                    });
                }
            }
        }
        cells.push(layer);
        index.push(map);
    }

    // subgroup lookup for rep computation in dimension d-1
    let sub_of: Vec<HashMap<FaceRef, &Vec<u8>>> = faces_by_dim
        .iter()
        .map(|faces| faces.iter().map(|(face, sub)| (*face, sub)).collect())
        .collect();

    let subfaces = |face: FaceRef| -> Vec<FaceRef> {
        match face {
            FaceRef::Body => (0..p.facet_count()).map(FaceRef::Facet).collect(),
            FaceRef::Facet(f) if n == 3 => {
                let cycle = &p.facets()[f];
                (0..cycle.len())
                    .map(|i| {
                        let a = cycle[i];
                        let b = cycle[(i + 1) % cycle.len()];
                        FaceRef::Edge(p.edge_id(a, b).unwrap())
                    })
                    .collect()
            }
            FaceRef::Facet(f) => p.facets()[f].iter().map(|&v| FaceRef::Vertex(v)).collect(),
            FaceRef::Edge(e) => {
                let (a, b) = p.edge_ends(e);
                vec![FaceRef::Vertex(a), FaceRef::Vertex(b)]
            }
            FaceRef::Vertex(_) => Vec::new(),
        }
    };

    let mut boundaries = Vec::with_capacity(n + 1);
    boundaries.push(Gf2Matrix::zero(0, cells[0].len()));
    for d in 1..=n {
        let mut m = Gf2Matrix::zero(cells[d - 1].len(), cells[d].len());
        for (col, cell) in cells[d].iter().enumerate() {
            for sub in subfaces(cell.face) {
                let rep = coset_rep(cell.coset_rep, sub_of[d - 1][&sub]);
                let row = index[d - 1][&(sub, rep)];
                m.toggle(row, col);
            }
        }
        boundaries.push(m);
    }

    Ok(QuotientComplex {
        n,
        cells,
        boundaries,
    })
}

/// Mod-2 Betti numbers of the small cover, via the cell complex.
pub fn betti_mod2(p: &Polytope, c: &Coloring) -> Result<BettiVector> {
    Ok(build_quotient_complex(p, c)?.betti())
}

/// True iff the complex's Betti numbers equal the h-vector of the base
/// polytope, the two quantities computed by independent routes.
pub fn verify_betti_equals_h(p: &Polytope, c: &Coloring) -> Result<bool> {
    let betti = betti_mod2(p, c)?;
    let h = hvector::h_vector(p)?;
    Ok(betti.as_slice().len() == h.len()
        && betti
            .as_slice()
            .iter()
            .zip(h.as_slice())
            .all(|(&b, &h)| b as i64 == h))
}

/// Sign-consistency check on top cells, independent of the
/// homomorphism criterion in [`cover::is_orientable`]: the 2^n top
/// cells are glued in pairs g <-> g ^ color across every facet, and we
/// ask for a ±1 labeling with opposite signs across each gluing. This
/// is a graph 2-coloring of the gluing graph.
pub fn top_cells_admit_alternating_signs(p: &Polytope, c: &Coloring) -> Result<bool> {
    p.require_valid()?;
    cover::require_characteristic(p, c)?;
    let n = p.dim();
    let size = 1usize << n;
    let mut sign = vec![0i8; size];
    sign[0] = 1;
    let mut stack = vec![0usize];
    while let Some(g) = stack.pop() {
        for &col in c.colors() {
            let h = g ^ col as usize;
            if sign[h] == 0 {
                sign[h] = -sign[g];
                stack.push(h);
            } else if sign[h] != -sign[g] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::polytope::builtin;

    fn cube_t3() -> (Polytope, Coloring) {
        (
            builtin("cube").unwrap(),
            Coloring::new(3, vec![1, 1, 2, 2, 4, 4]).unwrap(),
        )
    }

    #[test]
    fn cube_torus_cell_counts() {
        let (p, c) = cube_t3();
        let qc = build_quotient_complex(&p, &c).unwrap();
        // 2^3/|H_f| per face: vertices 8/8, edges 8/4, facets 8/2, body 8
        assert_eq!(qc.cell_counts(), vec![8, 24, 24, 8]);
        assert!(qc.boundary_square_is_zero());
        assert_eq!(qc.euler_characteristic(), 0);
    }

    #[test]
    fn cube_torus_betti() {
        let (p, c) = cube_t3();
        assert_eq!(betti_mod2(&p, &c).unwrap().as_slice(), &[1, 3, 3, 1]);
        assert!(verify_betti_equals_h(&p, &c).unwrap());
    }

    #[test]
    fn square_torus_and_klein() {
        let square = builtin("square").unwrap();
        let torus = Coloring::new(2, vec![1, 2, 1, 2]).unwrap();
        let qc = build_quotient_complex(&square, &torus).unwrap();
        assert_eq!(qc.cell_counts(), vec![4, 8, 4]);
        assert_eq!(qc.betti().as_slice(), &[1, 2, 1]);

        let klein = Coloring::new(2, vec![1, 2, 3, 2]).unwrap();
        let qc = build_quotient_complex(&square, &klein).unwrap();
        assert_eq!(qc.euler_characteristic(), 0);
        // mod-2 homology does not distinguish the two covers
        assert_eq!(qc.betti().as_slice(), &[1, 2, 1]);
        assert!(verify_betti_equals_h(&square, &klein).unwrap());
    }

    #[test]
    fn rejects_non_characteristic() {
        let cube = builtin("cube").unwrap();
        let bad = Coloring::new(3, vec![1; 6]).unwrap();
        assert!(matches!(
            build_quotient_complex(&cube, &bad),
            Err(Error::NotCharacteristic { .. })
        ));
    }

    #[test]
    fn orientation_signs_match_examples() {
        let (cube, t3) = cube_t3();
        assert!(top_cells_admit_alternating_signs(&cube, &t3).unwrap());
        let square = builtin("square").unwrap();
        let klein = Coloring::new(2, vec![1, 2, 3, 2]).unwrap();
        assert!(!top_cells_admit_alternating_signs(&square, &klein).unwrap());
        let torus = Coloring::new(2, vec![1, 2, 1, 2]).unwrap();
        assert!(top_cells_admit_alternating_signs(&square, &torus).unwrap());
    }
}
