//! Persistence modules over finite posets.
//!
//! A module stores one dimension per element and one matrix per cover arrow;
//! the map along any other relation `x ≤ y` is the composite along
//! [`FinitePoset::canonical_path`]. Validation makes every path give the
//! same composite.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Subspace};
use crate::poset::{FinitePoset, Interval, Shape};

/// Two cover paths from `bottom` to `top` with different composites.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiamondViolation {
    pub bottom: usize,
    pub top: usize,
    /// First steps of the two disagreeing paths.
    pub via: (usize, usize),
}

impl fmt::Display for DiamondViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "paths {}->{}->…->{} and {}->{}->…->{} disagree",
            self.bottom, self.via.0, self.top, self.bottom, self.via.1, self.top
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PersistenceModule {
    poset: Arc<FinitePoset>,
    field: Field,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

/// A family of matrices `f_x`, one per poset element.
///
/// Which modules it connects is not stored; use [`Morphism::is_morphism`]
/// to check it against a source and target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    components: Vec<Matrix>,
}

/// A subspace of `M_x` for every element `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubmoduleFamily {
    spaces: Vec<Subspace>,
}

/// Canonical inclusions and projections of a direct sum `M ⊕ N`.
#[derive(Clone, Debug)]
pub struct DirectSumMaps {
    pub embed_left: Morphism,
    pub embed_right: Morphism,
    pub project_left: Morphism,
    pub project_right: Morphism,
}

/// The four directional submodules of a grid module.
#[derive(Clone, Debug)]
pub struct DirectionalSubmodules {
    /// Images of the horizontal maps from the left edge.
    pub im_left: SubmoduleFamily,
    /// Images of the vertical maps from the bottom edge.
    pub im_down: SubmoduleFamily,
    /// Kernels of the horizontal maps to the right edge.
    pub ker_right: SubmoduleFamily,
    /// Kernels of the vertical maps to the top edge.
    pub ker_up: SubmoduleFamily,
}

impl PersistenceModule {
    /// Build and validate a module. `maps` is indexed like `poset.covers()`.
    pub fn new(poset: Arc<FinitePoset>, field: Field, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let m = Self::new_unchecked(poset, field, dims, maps)?;
        m.validate()?;
        Ok(m)
    }

    /// Check shapes only; commutativity is left to [`validate`](Self::validate).
    pub fn new_unchecked(
        poset: Arc<FinitePoset>,
        field: Field,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<Self> {
        if dims.len() != poset.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} dimensions for {} elements",
                dims.len(),
                poset.len()
            )));
        }
        if maps.len() != poset.covers().len() {
            return Err(Error::ShapeMismatch(format!(
                "{} maps for {} covers",
                maps.len(),
                poset.covers().len()
            )));
        }
        for (&(x, y), m) in poset.covers().iter().zip(&maps) {
            if m.shape() != (dims[y], dims[x]) {
                return Err(Error::ShapeMismatch(format!(
                    "map {x}->{y} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dims[y],
                    dims[x]
                )));
            }
            if m.field() != field {
                return Err(Error::ShapeMismatch(format!("map {x}->{y} lives over {}", m.field())));
            }
        }
        Ok(PersistenceModule { poset, field, dims, maps })
    }

    pub fn zero(poset: &Arc<FinitePoset>, field: Field) -> Self {
        let maps = poset.covers().iter().map(|_| Matrix::zeros(field, 0, 0)).collect();
        PersistenceModule { poset: poset.clone(), field, dims: vec![0; poset.len()], maps }
    }

    /// The interval module `k_I`: one-dimensional on the carrier with identity
    /// maps inside it, zero elsewhere.
    pub fn interval(poset: &Arc<FinitePoset>, field: Field, carrier: &[usize]) -> Result<Self> {
        let interval = Interval::new(poset, carrier)?;
        Ok(Self::interval_module(poset, field, &interval))
    }

    pub fn interval_module(poset: &Arc<FinitePoset>, field: Field, interval: &Interval) -> Self {
        let dims: Vec<usize> = poset.elements().map(|x| usize::from(interval.contains(x))).collect();
        let maps = poset
            .covers()
            .iter()
            .map(|&(x, y)| {
                if dims[x] == 1 && dims[y] == 1 {
                    Matrix::identity(field, 1)
                } else {
                    Matrix::zeros(field, dims[y], dims[x])
                }
            })
            .collect();
        PersistenceModule { poset: poset.clone(), field, dims, maps }
    }

    pub fn poset(&self) -> &Arc<FinitePoset> {
        &self.poset
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, x: usize) -> usize {
        self.dims[x]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Elements where the module is non-zero.
    pub fn support(&self) -> Vec<usize> {
        self.poset.elements().filter(|&x| self.dims[x] > 0).collect()
    }

    /// Matrix on the cover with the given index.
    pub fn cover_map(&self, cover: usize) -> &Matrix {
        &self.maps[cover]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// `M(x ≤ y)`, or `None` when `x ≰ y`.
    pub fn map_between(&self, x: usize, y: usize) -> Option<Matrix> {
        let path = self.poset.canonical_path(x, y)?;
        Some(self.compose_path(x, &path))
    }

    fn compose_path(&self, x: usize, path: &[usize]) -> Matrix {
        path.iter().fold(Matrix::identity(self.field, self.dims[x]), |acc, &c| self.maps[c].mul(&acc))
    }

    fn same_base(&self, other: &PersistenceModule) -> Result<()> {
        if self.field != other.field || !(Arc::ptr_eq(&self.poset, &other.poset) || self.poset == other.poset) {
            return Err(Error::PosetMismatch);
        }
        Ok(())
    }

    /// Check that all cover paths between two elements compose to the same map.
    ///
    /// For every `x < y` and every cover `x → w` with `w ≤ y`, the map
    /// `M(w ≤ y) · M(x → w)` must equal `M(x ≤ y)`. By induction on path
    /// length this makes all paths agree. Pairs are visited by increasing
    /// interval size so the first report is a minimal diamond.
    pub fn validate(&self) -> Result<()> {
        let p = &self.poset;
        let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
        for x in p.elements() {
            for y in p.elements() {
                if p.lt(x, y) && p.up_covers(x).len() > 1 {
                    let size = p.elements().filter(|&z| p.leq(x, z) && p.leq(z, y)).count();
                    pairs.push((size, x, y));
                }
            }
        }
        pairs.sort_unstable();
        for (_, x, y) in pairs {
            let canonical = p.canonical_path(x, y).unwrap();
            let first = p.covers()[canonical[0]].1;
            let reference = self.compose_path(x, &canonical);
            for &c in p.up_covers(x) {
                let w = p.covers()[c].1;
                if w == first || !p.leq(w, y) {
                    continue;
                }
                let rest = p.canonical_path(w, y).unwrap();
                let other = self.compose_path(w, &rest).mul(&self.maps[c]);
                if other != reference {
                    return Err(Error::Validation(DiamondViolation { bottom: x, top: y, via: (first, w) }));
                }
            }
        }
        Ok(())
    }

    /// `M ⊕ N` with its canonical inclusions and projections.
    pub fn direct_sum(&self, other: &PersistenceModule) -> Result<(PersistenceModule, DirectSumMaps)> {
        self.same_base(other)?;
        let f = self.field;
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.block_diag(b)).collect();
        let sum = PersistenceModule { poset: self.poset.clone(), field: f, dims, maps };
        let (mut el, mut er, mut pl, mut pr) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for x in self.poset.elements() {
            let (a, b) = (self.dims[x], other.dims[x]);
            let id_a = Matrix::identity(f, a);
            let id_b = Matrix::identity(f, b);
            el.push(id_a.vstack(&Matrix::zeros(f, b, a)));
            er.push(Matrix::zeros(f, a, b).vstack(&id_b));
            pl.push(id_a.hstack(&Matrix::zeros(f, a, b)));
            pr.push(Matrix::zeros(f, b, a).hstack(&id_b));
        }
        let maps = DirectSumMaps {
            embed_left: Morphism::new(el),
            embed_right: Morphism::new(er),
            project_left: Morphism::new(pl),
            project_right: Morphism::new(pr),
        };
        Ok((sum, maps))
    }

    /// Direct sum of several modules over the same poset.
    pub fn direct_sum_all<'a, I>(poset: &Arc<FinitePoset>, field: Field, parts: I) -> Result<PersistenceModule>
    where
        I: IntoIterator<Item = &'a PersistenceModule>,
    {
        let mut acc = PersistenceModule::zero(poset, field);
        for part in parts {
            acc = acc.direct_sum(part)?.0;
        }
        Ok(acc)
    }

    /// Present the restriction of `self` along an order embedding.
    ///
    /// `embedding[t]` is the element of `self`'s poset that target element
    /// `t` stands for; the target order must be the induced one.
    pub fn restrict_onto(&self, target: Arc<FinitePoset>, embedding: &[usize]) -> Result<PersistenceModule> {
        if embedding.len() != target.len() {
            return Err(Error::ShapeMismatch(format!(
                "embedding has {} entries for {} elements",
                embedding.len(),
                target.len()
            )));
        }
        if let Some(&bad) = embedding.iter().find(|&&x| x >= self.poset.len()) {
            return Err(Error::CarrierNotSubset(bad));
        }
        for a in target.elements() {
            for b in target.elements() {
                if target.leq(a, b) != self.poset.leq(embedding[a], embedding[b]) {
                    return Err(Error::PosetMismatch);
                }
            }
        }
        let dims = embedding.iter().map(|&x| self.dims[x]).collect();
        let maps = target
            .covers()
            .iter()
            .map(|&(a, b)| self.map_between(embedding[a], embedding[b]).unwrap())
            .collect();
        Ok(PersistenceModule { poset: target, field: self.field, dims, maps })
    }

    /// Restriction to a subset of elements, with the induced order.
    ///
    /// Elements keep their relative order; the new poset is a chain when
    /// the subset is totally ordered in id order, and custom otherwise.
    pub fn restrict(&self, subset: &[usize]) -> Result<(PersistenceModule, Vec<usize>)> {
        let mut elems = subset.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if let Some(&bad) = elems.iter().find(|&&x| x >= self.poset.len()) {
            return Err(Error::CarrierNotSubset(bad));
        }
        if elems.is_empty() {
            return Err(Error::ShapeMismatch("restriction to the empty set".into()));
        }
        let is_chain = elems.windows(2).all(|w| self.poset.leq(w[0], w[1]));
        let sub = if is_chain {
            FinitePoset::chain(elems.len())?
        } else {
            let mut rel = Vec::new();
            for (a, &x) in elems.iter().enumerate() {
                for (b, &y) in elems.iter().enumerate() {
                    if self.poset.lt(x, y) {
                        rel.push((a, b));
                    }
                }
            }
            FinitePoset::custom(elems.len(), &rel)?
        };
        let m = self.restrict_onto(Arc::new(sub), &elems)?;
        Ok((m, elems))
    }

    /// The dual module over the opposite poset: same dimensions, transposed maps.
    pub fn dualize(&self) -> PersistenceModule {
        let op = Arc::new(self.poset.opposite());
        let maps = op
            .covers()
            .iter()
            .map(|&(a, b)| {
                let c = self.poset.cover_index(b, a).expect("opposite cover");
                self.maps[c].transpose()
            })
            .collect();
        PersistenceModule { poset: op, field: self.field, dims: self.dims.clone(), maps }
    }

    /// For a module over `Grid(m, n)`: its dual, transported back onto
    /// `Grid(m, n)` by the reversal `(i, j) ↦ (m−1−i, n−1−j)`.
    pub fn dualize_on_grid(&self) -> Result<PersistenceModule> {
        let Shape::Grid(m, n) = *self.poset.shape() else {
            return Err(Error::NotAGrid(self.poset.shape().to_string()));
        };
        let dual = self.dualize();
        let grid = Arc::new(FinitePoset::grid(m, n)?);
        let embedding: Vec<usize> = grid.elements().map(|x| m * n - 1 - x).collect();
        dual.restrict_onto(grid, &embedding)
    }

    /// Transport along an isomorphism given by invertible `conjugators[x]`:
    /// the new maps are `Q_y M_α Q_x^{-1}`.
    pub fn conjugate(&self, conjugators: &[Matrix]) -> Result<PersistenceModule> {
        let inverses: Vec<Matrix> = conjugators
            .iter()
            .map(|q| q.inverse().ok_or_else(|| Error::ShapeMismatch("conjugator is not invertible".into())))
            .collect::<Result<_>>()?;
        let maps = self
            .poset
            .covers()
            .iter()
            .zip(&self.maps)
            .map(|(&(x, y), m)| conjugators[y].mul(m).mul(&inverses[x]))
            .collect();
        PersistenceModule::new_unchecked(self.poset.clone(), self.field, self.dims.clone(), maps)
    }

    /// Submodule induced on a compatible family of subspaces, with its
    /// inclusion into `self` and a projection from `self`.
    ///
    /// `complement` must be a compatible family too, with `family ⊕
    /// complement = M` pointwise; the projection kills it.
    pub fn split_along(
        &self,
        family: &SubmoduleFamily,
        complement: &SubmoduleFamily,
    ) -> Result<(PersistenceModule, Morphism, Morphism)> {
        let f = self.field;
        let mut embeds = Vec::with_capacity(self.poset.len());
        let mut projs = Vec::with_capacity(self.poset.len());
        for x in self.poset.elements() {
            let a = family.spaces[x].basis_columns();
            let b = complement.spaces[x].basis_columns();
            if a.cols() + b.cols() != self.dims[x] {
                return Err(Error::ShapeMismatch(format!("families are not complementary at {x}")));
            }
            let inv = a
                .hstack(&b)
                .inverse()
                .ok_or_else(|| Error::ShapeMismatch(format!("families are not complementary at {x}")))?;
            projs.push(inv.submatrix(0..a.cols(), 0..self.dims[x]));
            embeds.push(a);
        }
        let dims: Vec<usize> = embeds.iter().map(|e| e.cols()).collect();
        let maps = self
            .poset
            .covers()
            .iter()
            .zip(&self.maps)
            .map(|(&(x, y), m)| projs[y].mul(m).mul(&embeds[x]))
            .collect();
        let sub = PersistenceModule { poset: self.poset.clone(), field: f, dims, maps };
        Ok((sub, Morphism::new(embeds), Morphism::new(projs)))
    }

    /// Directional submodules of a grid module. On a finite grid the
    /// intersections of images and unions of kernels along a row or column
    /// are attained at the extreme arrow.
    pub fn directional_submodules(&self) -> Result<DirectionalSubmodules> {
        let Shape::Grid(m, n) = *self.poset.shape() else {
            return Err(Error::NotAGrid(self.poset.shape().to_string()));
        };
        let id = |i: usize, j: usize| i * n + j;
        let mut im_left = Vec::new();
        let mut im_down = Vec::new();
        let mut ker_right = Vec::new();
        let mut ker_up = Vec::new();
        for i in 0..m {
            for j in 0..n {
                let x = id(i, j);
                im_left.push(self.map_between(id(0, j), x).unwrap().image_basis());
                im_down.push(self.map_between(id(i, 0), x).unwrap().image_basis());
                ker_right.push(self.map_between(x, id(m - 1, j)).unwrap().kernel_basis());
                ker_up.push(self.map_between(x, id(i, n - 1)).unwrap().kernel_basis());
            }
        }
        Ok(DirectionalSubmodules {
            im_left: SubmoduleFamily::new(im_left),
            im_down: SubmoduleFamily::new(im_down),
            ker_right: SubmoduleFamily::new(ker_right),
            ker_up: SubmoduleFamily::new(ker_up),
        })
    }
}

impl Morphism {
    pub fn new(components: Vec<Matrix>) -> Self {
        Morphism { components }
    }

    pub fn zero_between(source: &PersistenceModule, target: &PersistenceModule) -> Self {
        let f = source.field();
        Morphism {
            components: source
                .poset()
                .elements()
                .map(|x| Matrix::zeros(f, target.dim(x), source.dim(x)))
                .collect(),
        }
    }

    pub fn identity(module: &PersistenceModule) -> Self {
        let f = module.field();
        Morphism { components: module.dims().iter().map(|&d| Matrix::identity(f, d)).collect() }
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    pub fn component(&self, x: usize) -> &Matrix {
        &self.components[x]
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &Morphism) -> Morphism {
        Morphism { components: self.components.iter().zip(&first.components).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        Morphism { components: self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &Morphism) -> Morphism {
        Morphism { components: self.components.iter().zip(&other.components).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, s: u32) -> Morphism {
        Morphism { components: self.components.iter().map(|a| a.scale(s)).collect() }
    }

    /// `self − λ·id` for an endomorphism.
    pub fn shift(&self, lambda: u32) -> Morphism {
        Morphism {
            components: self
                .components
                .iter()
                .map(|a| a.sub(&Matrix::scalar(a.field(), a.rows(), lambda)))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    /// Components have the right shapes and commute with every cover map.
    pub fn is_morphism(&self, source: &PersistenceModule, target: &PersistenceModule) -> bool {
        let p = source.poset();
        if self.components.len() != p.len() || target.poset().len() != p.len() {
            return false;
        }
        if p.elements().any(|x| self.components[x].shape() != (target.dim(x), source.dim(x))) {
            return false;
        }
        p.covers().iter().enumerate().all(|(c, &(x, y))| {
            target.cover_map(c).mul(&self.components[x]) == self.components[y].mul(source.cover_map(c))
        })
    }

    pub fn is_mono(&self) -> bool {
        self.first_non_injective().is_none()
    }

    pub fn first_non_injective(&self) -> Option<usize> {
        self.components.iter().position(|m| m.rank() != m.cols())
    }

    pub fn is_epi(&self) -> bool {
        self.components.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.components.iter().all(Matrix::is_invertible)
    }

    pub fn inverse(&self) -> Option<Morphism> {
        self.components.iter().map(Matrix::inverse).collect::<Option<Vec<_>>>().map(Morphism::new)
    }

    /// Coordinates of all components, concatenated row-major.
    pub fn flatten(&self) -> Vec<u32> {
        self.components.iter().flat_map(|m| m.data().iter().copied()).collect()
    }
}

impl SubmoduleFamily {
    pub fn new(spaces: Vec<Subspace>) -> Self {
        SubmoduleFamily { spaces }
    }

    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }

    pub fn at(&self, x: usize) -> &Subspace {
        &self.spaces[x]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(Subspace::dim).collect()
    }

    /// Every cover map carries the subspace at its source into the one at its target.
    pub fn is_submodule_of(&self, module: &PersistenceModule) -> bool {
        self.spaces.len() == module.poset().len()
            && self.spaces.iter().zip(module.dims()).all(|(s, &d)| s.ambient() == d)
            && module
                .poset()
                .covers()
                .iter()
                .enumerate()
                .all(|(c, &(x, y))| self.spaces[y].contains(&self.spaces[x].image_under(module.cover_map(c))))
    }

    pub fn meet(&self, other: &SubmoduleFamily) -> Result<SubmoduleFamily> {
        let spaces = self.spaces.iter().zip(&other.spaces).map(|(a, b)| a.meet(b)).collect::<Result<_>>()?;
        Ok(SubmoduleFamily { spaces })
    }

    pub fn join(&self, other: &SubmoduleFamily) -> Result<SubmoduleFamily> {
        let spaces = self.spaces.iter().zip(&other.spaces).map(|(a, b)| a.join(b)).collect::<Result<_>>()?;
        Ok(SubmoduleFamily { spaces })
    }

    pub fn is_zero(&self) -> bool {
        self.spaces.iter().all(Subspace::is_zero)
    }

    pub fn is_everything(&self) -> bool {
        self.spaces.iter().all(Subspace::is_full)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        Field::new(5).unwrap()
    }

    fn grid_module(maps: [i64; 4]) -> Result<PersistenceModule> {
        let g = Arc::new(FinitePoset::grid(2, 2).unwrap());
        let f = f5();
        let maps = maps.iter().map(|&v| Matrix::from_i64(f, &[&[v]])).collect();
        PersistenceModule::new(g, f, vec![1; 4], maps)
    }

    #[test]
    fn chain_modules_always_validate() {
        let c = Arc::new(FinitePoset::chain(3).unwrap());
        let f = f5();
        let m = PersistenceModule::new(
            c,
            f,
            vec![1, 2, 1],
            vec![Matrix::from_i64(f, &[&[1], &[3]]), Matrix::from_i64(f, &[&[2, 4]])],
        );
        assert!(m.is_ok());
    }

    #[test]
    fn identity_square_commutes() {
        assert!(grid_module([1, 1, 1, 1]).is_ok());
    }

    #[test]
    fn broken_diamond_is_reported() {
        // covers of Grid(2,2): (0,1) (0,2) (1,3) (2,3)
        let err = grid_module([1, 1, 1, 2]).unwrap_err();
        match err {
            Error::Validation(v) => {
                assert_eq!((v.bottom, v.top), (0, 3));
                assert_eq!(v.via, (1, 2));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn interval_modules() {
        let c = Arc::new(FinitePoset::chain(3).unwrap());
        let full = PersistenceModule::interval(&c, f5(), &[0, 1, 2]).unwrap();
        assert!(full.maps().iter().all(Matrix::is_identity));
        let simple = PersistenceModule::interval(&c, f5(), &[1]).unwrap();
        assert_eq!(simple.dims(), &[0, 1, 0]);
        let g = Arc::new(FinitePoset::grid(2, 2).unwrap());
        assert!(matches!(PersistenceModule::interval(&g, f5(), &[0, 3]), Err(Error::NotAnInterval(_))));
    }

    #[test]
    fn direct_sum_with_canonical_maps() {
        let c = Arc::new(FinitePoset::chain(3).unwrap());
        let a = PersistenceModule::interval(&c, f5(), &[0, 1]).unwrap();
        let b = PersistenceModule::interval(&c, f5(), &[1, 2]).unwrap();
        let (s, maps) = a.direct_sum(&b).unwrap();
        assert_eq!(s.dims(), &[1, 2, 1]);
        s.validate().unwrap();
        assert!(maps.embed_left.is_morphism(&a, &s));
        assert!(maps.project_right.is_morphism(&s, &b));
        assert_eq!(maps.project_left.compose(&maps.embed_left), Morphism::identity(&a));
        assert!(maps.project_left.compose(&maps.embed_right).is_zero());
        let z = PersistenceModule::zero(&c, f5());
        assert_eq!(a.direct_sum(&z).unwrap().0, a);
        let other = Arc::new(FinitePoset::chain(4).unwrap());
        let d = PersistenceModule::interval(&other, f5(), &[0]).unwrap();
        assert!(matches!(a.direct_sum(&d), Err(Error::PosetMismatch)));
    }

    #[test]
    fn restriction_examples() {
        let g = Arc::new(FinitePoset::grid(2, 2).unwrap());
        let f = f5();
        let maps = [2, 3, 3, 2].iter().map(|&v| Matrix::from_i64(f, &[&[v]])).collect();
        let m = PersistenceModule::new(g.clone(), f, vec![1; 4], maps).unwrap();
        let (full, _) = m.restrict(&[0, 1, 2, 3]).unwrap();
        assert_eq!(full.dims(), m.dims());
        assert_eq!(full.maps(), m.maps());
        // row j = 0: (0,0) -> (1,0) is cover index 1
        let (row, ids) = m.restrict(&[0, 2]).unwrap();
        assert_eq!(ids, vec![0, 2]);
        assert_eq!(row.poset().shape(), &Shape::Chain(2));
        assert_eq!(row.cover_map(0), m.cover_map(1));
        // diagonal restriction composes across the removed element
        let (diag, _) = m.restrict(&[0, 3]).unwrap();
        assert_eq!(diag.cover_map(0), &Matrix::from_i64(f, &[&[1]]));

        let k = PersistenceModule::interval(&g, f, &[1, 3]).unwrap();
        let (r, _) = k.restrict(&[1, 2, 3]).unwrap();
        assert_eq!(r.dims(), &[1, 0, 1]);
    }

    #[test]
    fn dual_of_interval_module() {
        let g = Arc::new(FinitePoset::grid(2, 3).unwrap());
        let k = PersistenceModule::interval(&g, f5(), &[0, 1, 3]).unwrap();
        let d = k.dualize();
        assert_eq!(d.dims(), k.dims());
        let expected = PersistenceModule::interval(d.poset(), f5(), &[0, 1, 3]).unwrap();
        assert_eq!(d, expected);
        assert_eq!(d.dualize(), k);
    }

    #[test]
    fn directional_submodules_examples() {
        let g = Arc::new(FinitePoset::grid(2, 2).unwrap());
        let full = PersistenceModule::interval(&g, f5(), &[0, 1, 2, 3]).unwrap();
        let d = full.directional_submodules().unwrap();
        assert!(d.im_left.is_everything());
        assert!(d.ker_right.is_zero());
        let corner = PersistenceModule::interval(&g, f5(), &[0]).unwrap();
        let d = corner.directional_submodules().unwrap();
        assert!(d.ker_right.at(0).is_full());
        for fam in [&d.im_left, &d.im_down, &d.ker_right, &d.ker_up] {
            assert!(fam.is_submodule_of(&corner));
        }
        let c = Arc::new(FinitePoset::chain(2).unwrap());
        let m = PersistenceModule::zero(&c, f5());
        assert!(matches!(m.directional_submodules(), Err(Error::NotAGrid(_))));
    }
}
