use serde::{Deserialize, Serialize};

use super::{Field, Matrix};
use crate::error::{Error, Result};

/// A linear subspace of `F_p^n`, stored by its reduced row echelon basis.
///
/// The basis is canonical, so two subspaces are equal exactly when their
/// stored bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
}

/// Solution set `particular + Ker(A)` (applied column by column) of `A X = B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Matrix,
    pub kernel: Subspace,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { basis: Matrix::zeros(field, 0, ambient) }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace { basis: Matrix::identity(field, ambient) }
    }

    /// Row span of `rows`.
    pub fn from_spanning_rows(rows: Matrix) -> Self {
        let (r, pivots) = rows.rref();
        let rank = pivots.len();
        Subspace { basis: r.submatrix(0..rank, 0..rows.cols()) }
    }

    /// Column span of `cols`.
    pub fn from_spanning_columns(cols: &Matrix) -> Self {
        Self::from_spanning_rows(cols.transpose())
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient()
    }

    /// Basis vectors as rows, in reduced echelon form.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Basis vectors as the columns of an `ambient × dim` matrix.
    pub fn basis_columns(&self) -> Matrix {
        self.basis.transpose()
    }

    /// Pivot coordinate of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|r| self.basis.row(r).iter().position(|&v| v != 0).expect("zero basis row"))
            .collect()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient() != other.ambient() {
            return Err(Error::AmbientMismatch(self.ambient(), other.ambient()));
        }
        Ok(())
    }

    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Self::from_spanning_rows(self.basis.vstack(&other.basis)))
    }

    /// Intersection via the Zassenhaus construction.
    pub fn meet(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let n = self.ambient();
        let top = self.basis.hstack(&self.basis);
        let bottom = other.basis.hstack(&Matrix::zeros(self.field(), other.dim(), n));
        let (r, pivots) = top.vstack(&bottom).rref();
        let rows: Vec<usize> = pivots
            .iter()
            .enumerate()
            .filter(|(_, &c)| c >= n)
            .map(|(i, _)| i)
            .collect();
        let inter = r.select_rows(&rows).submatrix(0..rows.len(), n..2 * n);
        Ok(Self::from_spanning_rows(inter))
    }

    /// Meet and join in one call.
    pub fn meet_join(&self, other: &Subspace) -> Result<(Subspace, Subspace)> {
        Ok((self.meet(other)?, self.join(other)?))
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient());
        let reduced = self.reduce(v);
        reduced.iter().all(|&x| x == 0)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.ambient() == self.ambient()
            && (0..other.dim()).all(|r| self.contains_vector(other.basis.row(r)))
    }

    /// Reduce `v` modulo the subspace: eliminate every pivot coordinate.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut out = v.to_vec();
        for (r, pc) in self.pivots().into_iter().enumerate() {
            let c = out[pc];
            if c == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.basis.row(r)) {
                *o = f.sub(*o, f.mul(c, b));
            }
        }
        out
    }

    /// Image of the subspace under `map` (a matrix with `ambient` columns).
    pub fn image_under(&self, map: &Matrix) -> Subspace {
        Subspace::from_spanning_columns(&map.mul(&self.basis_columns()))
    }

    /// Standard coordinates not among the pivots; the matching unit vectors
    /// span a canonical complement.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        let piv = self.pivots();
        (0..self.ambient()).filter(|c| !piv.contains(c)).collect()
    }

    /// Quotient map `F^n → F^n / U` expressed in the canonical complement
    /// coordinates, as an `(n − dim) × n` matrix.
    pub fn quotient_map(&self) -> Matrix {
        let f = self.field();
        let n = self.ambient();
        let free = self.complement_coordinates();
        let mut q = Matrix::zeros(f, free.len(), n);
        for (j, &c) in free.iter().enumerate() {
            q.set(j, c, 1);
        }
        for (r, pc) in self.pivots().into_iter().enumerate() {
            for (j, &c) in free.iter().enumerate() {
                q.set(j, pc, f.neg(self.basis.get(r, c)));
            }
        }
        q
    }
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            ambient: usize,
            basis: Vec<Vec<i64>>,
        }
        Repr { ambient: self.ambient(), basis: self.basis.to_rows() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: serde::Deserializer<'de>>(_: D) -> std::result::Result<Self, D::Error> {
        Err(serde::de::Error::custom("subspaces are not deserialized without a field"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(p: u32) -> Field {
        Field::new(p).unwrap()
    }

    #[test]
    fn equal_subspaces_meet_join() {
        let f = k(5);
        let u = Subspace::from_spanning_rows(Matrix::from_i64(f, &[&[1, 2, 0], &[0, 1, 1]]));
        let (m, j) = u.meet_join(&u).unwrap();
        assert_eq!(m, u);
        assert_eq!(j, u);
    }

    #[test]
    fn complementary_lines() {
        let f = k(5);
        let u = Subspace::from_spanning_rows(Matrix::from_i64(f, &[&[1, 1]]));
        let v = Subspace::from_spanning_rows(Matrix::from_i64(f, &[&[1, 4]]));
        let (m, j) = u.meet_join(&v).unwrap();
        assert!(m.is_zero());
        assert!(j.is_full());
    }

    #[test]
    fn ambient_mismatch() {
        let f = k(5);
        let u = Subspace::full(f, 2);
        let v = Subspace::full(f, 3);
        assert!(matches!(u.meet(&v), Err(Error::AmbientMismatch(2, 3))));
    }

    #[test]
    fn canonical_bases() {
        let f = k(7);
        let a = Subspace::from_spanning_rows(Matrix::from_i64(f, &[&[1, 2, 3], &[2, 4, 1]]));
        let b = Subspace::from_spanning_rows(Matrix::from_i64(f, &[&[3, 6, 4], &[0, 0, 5]]));
        assert_eq!(a, b);
    }

    #[test]
    fn quotient_kills_subspace() {
        let f = k(7);
        let u = Subspace::from_spanning_rows(Matrix::from_i64(f, &[&[1, 2, 3, 0], &[0, 1, 5, 6]]));
        let q = u.quotient_map();
        assert_eq!(q.shape(), (2, 4));
        assert!(q.mul(&u.basis_columns()).is_zero());
        assert_eq!(q.rank(), 2);
        // complement vectors map to unit vectors
        for (j, c) in u.complement_coordinates().into_iter().enumerate() {
            let mut e = vec![0; 4];
            e[c] = 1;
            let img = q.mul(&Matrix::column_vector(f, &e));
            assert_eq!(img.column(0), (0..2).map(|i| u32::from(i == j)).collect::<Vec<_>>());
        }
    }
}
