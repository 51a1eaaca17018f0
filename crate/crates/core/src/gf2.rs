//! Symmetric matrices over GF(2) and the delta-matroids they represent.
//!
//! A symmetric binary matrix is the adjacency matrix of a looped simple
//! graph: the diagonal entry of a vertex marks a loop and an off-diagonal
//! entry marks an edge. The represented delta-matroid has as feasible sets
//! exactly those `X` whose principal submatrix `A[X]` is nonsingular, with
//! the empty submatrix counted as nonsingular.

use std::fmt;

use crate::dm::DeltaMatroid;
use crate::error::{Error, Result};
use crate::subset::{ElementId, Family, Subset, MAX_ELEMENTS};

/// A symmetric `n × n` matrix over GF(2), one row bitmask per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymMatrixGf2 {
    rows: Vec<Subset>,
}

impl SymMatrixGf2 {
    pub fn new(rows: Vec<Subset>) -> Result<Self> {
        let n = rows.len();
        if n > MAX_ELEMENTS {
            return Err(Error::CapacityExceeded { size: n, limit: MAX_ELEMENTS });
        }
        for (i, row) in rows.iter().enumerate() {
            if !row.fits(n) {
                return Err(Error::SubsetOutOfRange { subset: *row, n });
            }
            for j in row.elements() {
                if !rows[j].contains(i) {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(SymMatrixGf2 { rows })
    }

    pub fn zero(n: usize) -> Self {
        SymMatrixGf2 { rows: vec![Subset::EMPTY; n] }
    }

    pub fn identity(n: usize) -> Self {
        SymMatrixGf2 { rows: (0..n).map(Subset::singleton).collect() }
    }

    /// Adjacency matrix of the loopless complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        SymMatrixGf2 { rows: (0..n).map(|i| Subset::full(n).without(i)).collect() }
    }

    /// Builds the matrix of a looped simple graph from 0-based vertices.
    pub fn from_graph(n: usize, loops: &[ElementId], edges: &[(ElementId, ElementId)]) -> Result<Self> {
        if n > MAX_ELEMENTS {
            return Err(Error::CapacityExceeded { size: n, limit: MAX_ELEMENTS });
        }
        let mut a = SymMatrixGf2::zero(n);
        for &v in loops {
            if v >= n {
                return Err(Error::ElementOutOfRange { element: v, n });
            }
            a.set(v, v, true);
        }
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::ElementOutOfRange { element: u.max(v), n });
            }
            a.set(u, v, true);
        }
        Ok(a)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Subset] {
        &self.rows
    }

    #[inline]
    pub fn get(&self, i: ElementId, j: ElementId) -> bool {
        self.rows[i].contains(j)
    }

    /// Sets entries `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: ElementId, j: ElementId, value: bool) {
        if value {
            self.rows[i] = self.rows[i].with(j);
            self.rows[j] = self.rows[j].with(i);
        } else {
            self.rows[i] = self.rows[i].without(j);
            self.rows[j] = self.rows[j].without(i);
        }
    }

    /// Looped vertices.
    pub fn loops(&self) -> Subset {
        Subset::from_elements((0..self.n()).filter(|&i| self.get(i, i)))
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(ElementId, ElementId)> {
        (0..self.n()).flat_map(|i| self.rows[i].elements().filter(move |&j| j > i).map(move |j| (i, j))).collect()
    }

    /// `A[x]`: the rows and columns indexed by `x`, in increasing order.
    pub fn principal_submatrix(&self, x: Subset) -> SymMatrixGf2 {
        SymMatrixGf2 { rows: x.elements().map(|i| self.rows[i].compress(x)).collect() }
    }

    /// Rank over GF(2) by forward elimination on row bitmasks.
    pub fn rank(&self) -> usize {
        rank_of_rows(self.rows.iter().map(|r| r.bits()))
    }

    /// Whether the matrix has full rank. The 0 × 0 matrix is nonsingular.
    pub fn is_nonsingular(&self) -> bool {
        self.rank() == self.n()
    }

    /// Whether `A[x]` is nonsingular, without materializing the submatrix.
    pub fn is_principal_nonsingular(&self, x: Subset) -> bool {
        let mask = x.bits();
        rank_of_rows(x.elements().map(|i| self.rows[i].bits() & mask)) == x.len()
    }

    /// The delta-matroid of nonsingular principal submatrices. Always normal.
    pub fn delta_matroid(&self) -> DeltaMatroid {
        let n = self.n();
        let mut family = Family::empty(n).expect("dimension checked at construction");
        for m in 0..(1u32 << n) {
            let x = Subset::from_bits(m);
            if self.is_principal_nonsingular(x) {
                family.insert(x);
            }
        }
        DeltaMatroid::from_family_trusted(family)
    }

    /// Block-diagonal sum; `other`'s vertices are shifted up by `self.n()`.
    pub fn direct_sum(&self, other: &SymMatrixGf2) -> Result<SymMatrixGf2> {
        let n = self.n() + other.n();
        if n > MAX_ELEMENTS {
            return Err(Error::CapacityExceeded { size: n, limit: MAX_ELEMENTS });
        }
        let shift = self.n();
        let rows = self.rows.iter().copied().chain(other.rows.iter().map(|r| Subset::from_bits(r.bits() << shift))).collect();
        Ok(SymMatrixGf2 { rows })
    }

    /// Connected components of the graph, ignoring loops, ordered by their
    /// smallest vertex.
    pub fn components(&self) -> Vec<Subset> {
        let mut seen = Subset::EMPTY;
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = Subset::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let reach = frontier.elements().fold(Subset::EMPTY, |acc, v| acc | self.rows[v]);
                frontier = reach & !comp;
                comp = comp | frontier;
            }
            seen = seen | comp;
            out.push(comp);
        }
        out
    }

    /// Shape of a connected component. A loopless isolated vertex counts as
    /// the odd complete graph `K_1`.
    pub fn classify_component(&self, comp: Subset) -> ComponentShape {
        let order = comp.len();
        let looped = comp.elements().filter(|&v| self.get(v, v)).count();
        let complete = comp.elements().all(|v| (self.rows[v] & comp).without(v) == comp.without(v));
        let kind = if order == 1 && looped == 1 {
            ComponentKind::LoopedVertex
        } else if looped == 0 && complete && order % 2 == 1 {
            ComponentKind::OddComplete(order)
        } else {
            ComponentKind::Other
        };
        ComponentShape { kind, vertices: comp }
    }
}

fn rank_of_rows(rows: impl Iterator<Item = u32>) -> usize {
    // Basis indexed by leading bit.
    let mut basis = [0u32; 32];
    let mut rank = 0;
    for mut row in rows {
        while row != 0 {
            let lead = 31 - row.leading_zeros() as usize;
            if basis[lead] == 0 {
                basis[lead] = row;
                rank += 1;
                break;
            }
            row ^= basis[lead];
        }
    }
    rank
}

impl fmt::Debug for SymMatrixGf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        f.write_str("[")?;
        for i in 0..n {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..n {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    /// Loopless complete graph on an odd number of vertices.
    OddComplete(usize),
    /// A single vertex carrying a loop.
    LoopedVertex,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ComponentShape {
    pub kind: ComponentKind,
    pub vertices: Subset,
}
