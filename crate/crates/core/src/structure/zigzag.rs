use std::sync::Arc;

use super::barcode::Barcode;
use super::blocks::block_decompose;
use crate::decomp::decompose;
use crate::error::{Error, Result};
use crate::hom::indecomposables_isomorphic;
use crate::linalg::{Matrix, Subspace};
use crate::module::PersistenceModule;
use crate::poset::{region_split, FinitePoset, Interval, Region, Shape, Window, ZigzagPath};

/// Window grid id of every fence element, in path order.
pub fn fence_window_ids(path: &ZigzagPath) -> Vec<usize> {
    let w = path.window();
    path.points().into_iter().map(|q| w.grid_id(q)).collect()
}

/// How the value of `E` at a window point was built.
enum Local {
    /// The fence element with this id.
    Path(usize),
    /// Kernel of `E_up ⊕ E_right → E_diag`; columns span it, the first
    /// `usize` rows belong to `E_up`.
    Kernel(Matrix, usize),
    /// Cokernel of `E_diag → E_below ⊕ E_left` as a quotient map; the first
    /// `usize` columns belong to `E_below`.
    Cokernel(Matrix, usize),
}

struct Builder<'a> {
    m: &'a PersistenceModule,
    window: Window,
    dims: Vec<usize>,
    local: Vec<Option<Local>>,
}

impl Builder<'_> {
    fn id(&self, q: (i64, i64)) -> usize {
        self.window.grid_id(q)
    }

    /// `E(a → b)` for a grid cover; `b` is one step up (`b = a + 1`) or right.
    fn map(&self, a: usize, b: usize) -> Matrix {
        let up = b == a + 1;
        if let Some(Local::Cokernel(q, d_below)) = &self.local[b] {
            let cols = if up { 0..*d_below } else { *d_below..q.cols() };
            return q.submatrix(0..q.rows(), cols);
        }
        if let Some(Local::Kernel(k, d_up)) = &self.local[a] {
            let rows = if up { 0..*d_up } else { *d_up..k.rows() };
            return k.submatrix(rows, 0..k.cols());
        }
        match (&self.local[a], &self.local[b]) {
            (Some(Local::Path(i)), Some(Local::Path(j))) => {
                self.m.map_between(*i, *j).expect("consecutive fence points are comparable")
            }
            _ => unreachable!("grid cover {a}->{b} leaves the lower region upwards"),
        }
    }
}

/// Extend a fence module to the grid of its path's window.
///
/// On the path `E = M`. Below the path, points are filled in by decreasing
/// `s + t` with `E(s,t) = Ker(E(s,t+1) ⊕ E(s+1,t) → E(s+1,t+1))`, using
/// `(E_up, −E_right)`; above it, by increasing `s + t` with
/// `E(s,t) = Coker(E(s−1,t−1) → E(s,t−1) ⊕ E(s−1,t))`. Structure maps are
/// the kernel projections and cokernel quotients. The result is middle
/// exact and restricts to `M` on the path.
pub fn extend_zigzag(m: &PersistenceModule) -> Result<PersistenceModule> {
    let Shape::ZigzagFence(path) = m.poset().shape() else {
        return Err(Error::NotAZigzagFence(m.poset().shape().to_string()));
    };
    let w = path.window();
    let regions = region_split(path);
    let size = w.width() * w.height();
    let mut b = Builder { m, window: w, dims: vec![0; size], local: (0..size).map(|_| None).collect() };
    for (k, g) in fence_window_ids(path).into_iter().enumerate() {
        b.dims[g] = m.dim(k);
        b.local[g] = Some(Local::Path(k));
    }

    let mut lower: Vec<usize> = (0..size).filter(|&g| regions[g] == Region::Lower).collect();
    lower.sort_by_key(|&g| {
        let (x, y) = w.point(g);
        std::cmp::Reverse(x + y)
    });
    for g in lower {
        let (s, t) = w.point(g);
        let (up, right, diag) = (b.id((s, t + 1)), b.id((s + 1, t)), b.id((s + 1, t + 1)));
        let joint = b.map(up, diag).hstack(&b.map(right, diag).neg());
        let kernel = joint.kernel_basis().basis_columns();
        b.dims[g] = kernel.cols();
        b.local[g] = Some(Local::Kernel(kernel, b.dims[up]));
    }

    let mut upper: Vec<usize> = (0..size).filter(|&g| regions[g] == Region::Upper).collect();
    upper.sort_by_key(|&g| {
        let (x, y) = w.point(g);
        x + y
    });
    for g in upper {
        let (s, t) = w.point(g);
        let (below, left, diag) = (b.id((s, t - 1)), b.id((s - 1, t)), b.id((s - 1, t - 1)));
        let joint = b.map(diag, below).vstack(&b.map(diag, left).neg());
        let quotient = Subspace::from_spanning_columns(&joint).quotient_map();
        b.dims[g] = quotient.rows();
        b.local[g] = Some(Local::Cokernel(quotient, b.dims[below]));
    }

    let grid = Arc::new(FinitePoset::grid(w.width(), w.height())?);
    let maps = grid.covers().iter().map(|&(x, y)| b.map(x, y)).collect();
    PersistenceModule::new_unchecked(grid, m.field(), b.dims, maps)
}

/// Barcode of a fence module, computed along two independent routes that
/// must agree: decomposing `M` directly, and decomposing the extension into
/// blocks and intersecting each block with the path.
pub fn zigzag_barcode(m: &PersistenceModule, seed: u64) -> Result<Barcode> {
    let Shape::ZigzagFence(path) = m.poset().shape() else {
        return Err(Error::NotAZigzagFence(m.poset().shape().to_string()));
    };
    let p = m.poset();

    let generic = {
        let d = decompose(m, seed);
        let mut carriers = Vec::with_capacity(d.len());
        for s in &d.summands {
            let support = s.support();
            let carrier = Interval::new(p, &support)
                .map_err(|_| Error::Counterexample(format!("fence summand with support {support:?} is not an interval")))?;
            let model = PersistenceModule::interval_module(p, m.field(), &carrier);
            if indecomposables_isomorphic(&s.module, &model)?.is_none() {
                return Err(Error::Counterexample(format!(
                    "fence summand on {support:?} is not an interval module"
                )));
            }
            carriers.push(carrier);
        }
        Barcode::from_carriers(carriers)
    };

    let extension = {
        let e = extend_zigzag(m)?;
        let blocks = block_decompose(&e, seed)?;
        let ids = fence_window_ids(path);
        let mut carriers = Vec::new();
        for block in &blocks.blocks {
            let trace: Vec<usize> = (0..ids.len()).filter(|&k| block.carrier.contains(ids[k])).collect();
            if trace.is_empty() {
                continue;
            }
            let carrier = Interval::new(p, &trace).map_err(|_| {
                Error::Counterexample(format!("block trace {trace:?} on the path is not an interval"))
            })?;
            carriers.extend(std::iter::repeat_n(carrier, block.multiplicity));
        }
        Barcode::from_carriers(carriers)
    };

    if generic != extension {
        return Err(Error::RouteDisagreement { generic: generic.to_string(), extension: extension.to_string() });
    }
    Ok(generic)
}
