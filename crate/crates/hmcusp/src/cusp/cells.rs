//! Cell complexes of the toroidal boundary and of the Borel–Serre link.
//!
//! The boundary complex is assembled as a union of products: each cell of
//! the quotient cone complex carries the cells of its torus fiber. Over a
//! ray orbit the fiber is a circle with one 0-cell and one 1-cell; over a
//! 2-cone it is a point, and the circle collapses onto it.

use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::field::{FieldElement, IntElement, QuadraticField};

use super::fan::CuspFan;
use super::snf::{smith_normal_form, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub dim: usize,
    pub label: String,
}

/// A finite CW complex given by its cells and integer boundary matrices.
/// `boundaries[k]` maps C_k to C_{k−1}; rows index cells of dimension k − 1.
#[derive(Clone, Debug)]
pub struct CellComplex {
    pub cells: Vec<Vec<Cell>>,
    pub boundaries: Vec<IntMatrix>,
}

impl CellComplex {
    pub fn empty() -> Self {
        CellComplex {
            cells: Vec::new(),
            boundaries: Vec::new(),
        }
    }

    pub fn top_dim(&self) -> Option<usize> {
        self.cells.len().checked_sub(1)
    }

    pub fn count(&self, k: usize) -> usize {
        self.cells.get(k).map_or(0, |c| c.len())
    }

    /// ∂_k as a (count(k−1) × count(k)) matrix; zero outside the range.
    pub fn boundary(&self, k: usize) -> IntMatrix {
        if k == 0 || k >= self.cells.len() {
            return IntMatrix::zeros(if k == 0 { 0 } else { self.count(k - 1) }, self.count(k));
        }
        self.boundaries[k].clone()
    }

    /// ∂_{k−1}∘∂_k = 0 for all k.
    pub fn is_chain_complex(&self) -> bool {
        (2..self.cells.len()).all(|k| self.boundary(k - 1).mul(&self.boundary(k)).is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<i128>,
}

/// Integral homology in every dimension of the complex.
pub fn homology(complex: &CellComplex) -> Vec<HomologyGroup> {
    let n = complex.cells.len();
    let ranks: Vec<usize> = (0..=n)
        .map(|k| smith_normal_form(&complex.boundary(k)).rank)
        .collect();
    (0..n)
        .map(|k| {
            let next = smith_normal_form(&complex.boundary(k + 1));
            HomologyGroup {
                rank: complex.count(k) - ranks[k] - next.rank,
                torsion: next.torsion(),
            }
        })
        .collect()
}

/// Coordinates of a k-cycle in H_k: free coordinates followed by torsion
/// residues with their orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyClass {
    pub free: Vec<i128>,
    pub torsion: Vec<(i128, i128)>,
}

pub fn homology_class(complex: &CellComplex, k: usize, chain: &[i128]) -> Result<HomologyClass> {
    let a = smith_normal_form(&complex.boundary(k));
    let y = a.v_inv.mul_vec(chain);
    if y[..a.rank].iter().any(|&c| c != 0) {
        return Err(Error::InvalidArgument("chain is not a cycle".into()));
    }
    let z = &y[a.rank..];
    let img = a.v_inv.mul(&complex.boundary(k + 1)).rows_from(a.rank);
    let b = smith_normal_form(&img);
    let w = b.u.mul_vec(z);
    let mut free = Vec::new();
    let mut torsion = Vec::new();
    for (i, &c) in w.iter().enumerate() {
        let d = b.diag.get(i).copied().unwrap_or(0);
        match d {
            0 => free.push(c),
            1 => {}
            _ => torsion.push((c.rem_euclid(d), d)),
        }
    }
    Ok(HomologyClass { free, torsion })
}

/// The fiber over a base cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Fiber {
    Point,
    /// One 0-cell and one 1-cell with zero boundary.
    Circle,
}

impl Fiber {
    fn dims(&self) -> &'static [usize] {
        match self {
            Fiber::Point => &[0],
            Fiber::Circle => &[0, 1],
        }
    }

    /// Collapse map from this fiber onto the fiber of a face.
    fn collapse(&self, cell: usize, to: Fiber) -> Option<usize> {
        match (self, to) {
            (Fiber::Circle, Fiber::Point) => (cell == 0).then_some(0),
            (a, b) if *a == b => Some(cell),
            _ => None,
        }
    }
}

struct BaseCell {
    dim: usize,
    label: String,
    faces: Vec<(usize, i128)>,
    fiber: Fiber,
}

/// Assembles product cells σ × τ with
/// ∂(σ × τ) = Σ [σ:ρ]·(ρ × collapse(τ)) + (−1)^{dim σ}·σ × ∂τ.
/// The fibers used here have zero cellular boundary.
fn product_complex(base: &[BaseCell]) -> CellComplex {
    let mut index = Vec::new();
    let mut cells: Vec<Vec<Cell>> = Vec::new();
    for (bi, b) in base.iter().enumerate() {
        for (fi, &fd) in b.fiber.dims().iter().enumerate() {
            let dim = b.dim + fd;
            while cells.len() <= dim {
                cells.push(Vec::new());
            }
            let label = match (b.fiber, fd) {
                (Fiber::Point, _) => b.label.clone(),
                (_, 0) => format!("{}×pt", b.label),
                _ => format!("{}×S1", b.label),
            };
            index.push(((bi, fi), (dim, cells[dim].len())));
            cells[dim].push(Cell { dim, label });
        }
    }
    let lookup = |bi: usize, fi: usize| index.iter().find(|(k, _)| *k == (bi, fi)).map(|(_, v)| *v);
    let mut boundaries: Vec<IntMatrix> = (0..cells.len())
        .map(|k| IntMatrix::zeros(if k == 0 { 0 } else { cells[k - 1].len() }, cells[k].len()))
        .collect();
    for (bi, b) in base.iter().enumerate() {
        for fi in 0..b.fiber.dims().len() {
            let (dim, col) = lookup(bi, fi).expect("indexed above");
            for &(face, coeff) in &b.faces {
                if let Some(ffi) = b.fiber.collapse(fi, base[face].fiber) {
                    let (fdim, row) = lookup(face, ffi).expect("indexed above");
                    if fdim + 1 == dim {
                        boundaries[dim][(row, col)] += coeff;
                    }
                }
            }
        }
    }
    CellComplex { cells, boundaries }
}

/// The quotient cell complex of the toroidal boundary: n vertices (2-cone
/// orbits), n edges and n 2-cells (ray orbits times the fiber cells).
pub fn boundary_complex(fan: &CuspFan) -> CellComplex {
    let n = fan.period_len();
    let mut base = Vec::with_capacity(2 * n);
    for k in 0..n {
        base.push(BaseCell {
            dim: 0,
            label: format!("v{k}"),
            faces: Vec::new(),
            fiber: Fiber::Point,
        });
    }
    for k in 0..n {
        // ray k lies between the cones σ_{k−1} and σ_k
        let prev = (k + n - 1) % n;
        base.push(BaseCell {
            dim: 1,
            label: format!("D{k}"),
            faces: vec![(k, 1), (prev, -1)],
            fiber: Fiber::Circle,
        });
    }
    product_complex(&base)
}

/// Mapping torus of a cellular self-map f of a complex whose boundaries
/// vanish: cells c and c × I with ∂(c × I) = (−1)^{dim c + 1}(f(c) − c).
pub fn mapping_torus(complex: &CellComplex, maps: &[IntMatrix]) -> CellComplex {
    let top = complex.cells.len();
    let mut cells: Vec<Vec<Cell>> = vec![Vec::new(); top + 1];
    for (k, level) in complex.cells.iter().enumerate() {
        cells[k].extend(level.iter().cloned());
    }
    for (k, level) in complex.cells.iter().enumerate() {
        for c in level {
            cells[k + 1].push(Cell {
                dim: k + 1,
                label: format!("{}×I", c.label),
            });
        }
    }
    let mut boundaries: Vec<IntMatrix> = (0..=top)
        .map(|k| IntMatrix::zeros(if k == 0 { 0 } else { cells[k - 1].len() }, cells[k].len()))
        .collect();
    for k in 1..=top {
        let own = complex.count(k);
        // old cells of dimension k keep their boundary
        if k < top {
            let b = complex.boundary(k);
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    boundaries[k][(i, j)] = b[(i, j)];
                }
            }
        }
        // c × I for c of dimension k − 1
        let sign = if k % 2 == 0 { -1 } else { 1 };
        let f = &maps[k - 1];
        for j in 0..complex.count(k - 1) {
            for i in 0..complex.count(k - 1) {
                let delta = f[(i, j)] - if i == j { 1 } else { 0 };
                boundaries[k][(i, own + j)] += sign * delta;
            }
        }
    }
    CellComplex { cells, boundaries }
}

/// Minimal torus: one cell in dimensions 0 and 2, two in dimension 1.
fn minimal_torus() -> CellComplex {
    let cell = |dim: usize, label: &str| Cell {
        dim,
        label: label.into(),
    };
    CellComplex {
        cells: vec![
            vec![cell(0, "pt")],
            vec![cell(1, "a"), cell(1, "b")],
            vec![cell(2, "F")],
        ],
        boundaries: vec![
            IntMatrix::zeros(0, 1),
            IntMatrix::zeros(1, 2),
            IntMatrix::zeros(2, 1),
        ],
    }
}

/// Matrix of multiplication by u on 𝒪 in the basis {1, ω}.
pub fn multiplication_matrix(field: &QuadraticField, u: &IntElement) -> IntMatrix {
    let c1 = field.mul_int(u, &IntElement::ONE);
    let c2 = field.mul_int(u, &IntElement::new(0, 1));
    IntMatrix::from_rows(&[vec![c1.a, c2.a], vec![c1.b, c2.b]])
}

#[derive(Clone, Debug)]
pub struct LinkHomology {
    pub monodromy: IntMatrix,
    pub groups: Vec<HomologyGroup>,
    /// rank H_i = binom(d − 1, i − d) for i = d, …, 2d − 1 at d = 2, and
    /// rank H_1 = 1.
    pub ranks_match: bool,
}

/// Homology of the mapping torus of multiplication by ε² on 𝒪 ≅ Z².
pub fn link_homology(field: &QuadraticField) -> LinkHomology {
    let e = field.fund_unit_int();
    let m = multiplication_matrix(field, &field.mul_int(&e, &e));
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let maps = vec![
        IntMatrix::identity(1),
        m.clone(),
        IntMatrix::from_rows(&[vec![det]]),
    ];
    let torus = mapping_torus(&minimal_torus(), &maps);
    let groups = homology(&torus);
    let d = 2u64;
    let ranks_match = groups.len() == 4
        && (d..2 * d).all(|i| groups[i as usize].rank as u64 == binomial(d - 1, i - d))
        && groups[1].rank == 1;
    LinkHomology {
        monodromy: m,
        groups,
        ranks_match,
    }
}

/// A loop of boundary 1-cells representing a power of the fan unit.
#[derive(Clone, Debug)]
pub struct Circle {
    pub exponent: i64,
    /// (edge index, orientation) in traversal order.
    pub edges: Vec<(usize, i64)>,
    pub chain: Vec<i128>,
    pub class: HomologyClass,
}

/// The loop D_{σ_0}, …, D_{σ_{kn−1}} for u = unit_action^k.
pub fn extract_circle(fan: &CuspFan, u: &FieldElement) -> Result<Circle> {
    let f = &fan.field;
    let base = fan.unit_action.to_field();
    let exponent = if *u == FieldElement::one() {
        0
    } else {
        let (u1, _) = f.embed(u);
        let (b1, _) = f.embed(&base);
        let guess = (u1.abs().ln() / b1.abs().ln()).round();
        if !guess.is_finite() || guess == 0.0 {
            return Err(Error::NotAUnitPower);
        }
        let k = guess as i64;
        if f.pow(&base, k).as_ref() != Some(u) {
            return Err(Error::NotAUnitPower);
        }
        k
    };
    let complex = boundary_complex(fan);
    let n = fan.period_len();
    let mut edges = Vec::new();
    let mut chain = vec![0i128; complex.count(1)];
    let steps = exponent.unsigned_abs() as usize * n;
    for j in 0..steps {
        let (e, o) = if exponent > 0 {
            (j % n, 1)
        } else {
            ((n - 1 - j % n) % n, -1)
        };
        edges.push((e, o));
        chain[edge_cell(&complex, e)] += o as i128;
    }
    let class = homology_class(&complex, 1, &chain)?;
    Ok(Circle {
        exponent,
        edges,
        chain,
        class,
    })
}

/// Position of the edge D_k × pt among the 1-cells.
fn edge_cell(complex: &CellComplex, k: usize) -> usize {
    let label = format!("D{k}×pt");
    complex.cells[1]
        .iter()
        .position(|c| c.label == label)
        .expect("edge exists")
}
