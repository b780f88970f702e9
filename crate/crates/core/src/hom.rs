//! Morphism spaces between modules over the same poset.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::decomp::{decompose, krs_match};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::{Morphism, PersistenceModule};

/// Random linear combinations tried by [`are_isomorphic`] before falling
/// back to comparing decompositions.
pub const ISO_RANDOM_TRIALS: usize = 64;

/// Basis of `Hom(M, N)`.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub basis: Vec<Morphism>,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// `Σ c_i · basis_i`
    pub fn combine(&self, coeffs: &[u32]) -> Option<Morphism> {
        let mut it = self.basis.iter().zip(coeffs);
        let (first, &c0) = it.next()?;
        Some(it.fold(first.scale(c0), |acc, (b, &c)| if c == 0 { acc } else { acc.add(&b.scale(c)) }))
    }
}

/// Basis of the solution space of `N_α f_x = f_y M_α` over all covers `α: x → y`.
///
/// The unknowns are the entries of every `f_x`; the basis is read off the
/// reduced echelon form of the stacked constraint system, so its order is
/// deterministic.
pub fn hom_basis(source: &PersistenceModule, target: &PersistenceModule) -> Result<HomBasis> {
    if source.field() != target.field() || source.poset() != target.poset() {
        return Err(Error::PosetMismatch);
    }
    let f = source.field();
    let p = source.poset();
    let dm = source.dims();
    let dn = target.dims();
    let mut offsets = Vec::with_capacity(p.len() + 1);
    let mut total = 0;
    for x in p.elements() {
        offsets.push(total);
        total += dn[x] * dm[x];
    }
    if total == 0 {
        return Ok(HomBasis { basis: Vec::new() });
    }
    let rows: usize = p.covers().iter().map(|&(x, y)| dn[y] * dm[x]).sum();
    let mut system = Matrix::zeros(f, rows, total);
    let mut row = 0;
    for (c, &(x, y)) in p.covers().iter().enumerate() {
        let nmap = target.cover_map(c);
        let mmap = source.cover_map(c);
        for r in 0..dn[y] {
            for col in 0..dm[x] {
                // Σ_k N[r][k] f_x[k][col] − Σ_k f_y[r][k] M[k][col]
                for k in 0..dn[x] {
                    let v = nmap.get(r, k);
                    if v != 0 {
                        let idx = offsets[x] + k * dm[x] + col;
                        system.set(row, idx, f.add(system.get(row, idx), v));
                    }
                }
                for k in 0..dm[y] {
                    let v = mmap.get(k, col);
                    if v != 0 {
                        let idx = offsets[y] + r * dm[y] + k;
                        system.set(row, idx, f.sub(system.get(row, idx), v));
                    }
                }
                row += 1;
            }
        }
    }
    let kernel = system.kernel_basis();
    let basis = (0..kernel.dim())
        .map(|i| {
            let v = kernel.basis().row(i);
            Morphism::new(
                p.elements()
                    .map(|x| {
                        let start = offsets[x];
                        Matrix::from_vec(f, dn[x], dm[x], v[start..start + dn[x] * dm[x]].to_vec())
                    })
                    .collect(),
            )
        })
        .collect();
    Ok(HomBasis { basis })
}

/// A left inverse `g` of a monomorphism `f: K → M` (so `g ∘ f = id_K`), or
/// `None` when `f` does not split.
///
/// Every split is a combination of a `Hom(M, K)` basis, so the search is a
/// single linear solve. When `K = k_I` for a directed ideal `I`, `k_I` is
/// injective and a `None` result is a counterexample.
pub fn retraction(
    source: &PersistenceModule,
    target: &PersistenceModule,
    f: &Morphism,
) -> Result<Option<Morphism>> {
    if !f.is_morphism(source, target) {
        return Err(Error::NotMorphism);
    }
    if let Some(x) = f.first_non_injective() {
        return Err(Error::NotMono(x));
    }
    let back = hom_basis(target, source)?;
    let fld = source.field();
    let identity = Morphism::identity(source).flatten();
    if identity.is_empty() {
        return Ok(Some(Morphism::zero_between(target, source)));
    }
    if back.is_empty() {
        return Ok(None);
    }
    // columns: flattened g_i ∘ f
    let cols: Vec<Vec<u32>> = back.basis.iter().map(|g| g.compose(f).flatten()).collect();
    let n = identity.len();
    let mut a = Matrix::zeros(fld, n, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            a.set(i, j, v);
        }
    }
    let b = Matrix::column_vector(fld, &identity);
    Ok(a.solve(&b).map(|coeffs| back.combine(&coeffs.column(0)).expect("non-empty basis")))
}

/// Isomorphism test between modules that are both known to be indecomposable.
///
/// For an indecomposable `M`, `End(M)` is local, so the non-invertible maps
/// `M → N` form a proper subspace of `Hom(M, N)` whenever `M ≅ N`. Some
/// basis element then lies outside it, so sweeping the basis decides the
/// question without randomness.
pub fn indecomposables_isomorphic(a: &PersistenceModule, b: &PersistenceModule) -> Result<Option<Morphism>> {
    if a.dims() != b.dims() {
        return Ok(None);
    }
    let hom = hom_basis(a, b)?;
    Ok(hom.basis.into_iter().find(Morphism::is_iso))
}

/// Decide `M ≅ N`, returning an isomorphism `M → N` as witness.
///
/// Dimensions are compared first; then each basis element of `Hom(M, N)`
/// and up to [`ISO_RANDOM_TRIALS`] seeded random combinations are tested for
/// invertibility. If all fail, both modules are decomposed and their
/// summands matched, which makes the answer exact.
pub fn are_isomorphic(a: &PersistenceModule, b: &PersistenceModule, seed: u64) -> Result<Option<Morphism>> {
    if a.field() != b.field() || a.poset() != b.poset() {
        return Err(Error::PosetMismatch);
    }
    if a.dims() != b.dims() {
        return Ok(None);
    }
    if a.is_zero() {
        return Ok(Some(Morphism::identity(a)));
    }
    let hom = hom_basis(a, b)?;
    if let Some(iso) = hom.basis.iter().find(|m| m.is_iso()) {
        return Ok(Some(iso.clone()));
    }
    if hom.is_empty() {
        return Ok(None);
    }
    let f = a.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ISO_RANDOM_TRIALS {
        let coeffs: Vec<u32> = (0..hom.dim()).map(|_| f.random(&mut rng)).collect();
        let m = hom.combine(&coeffs).unwrap();
        if m.is_iso() {
            return Ok(Some(m));
        }
    }

    let da = decompose(a, seed);
    let db = decompose(b, seed);
    match krs_match(&da, &db) {
        Ok(matching) => {
            // Σ e^B_σ(i) ∘ φ_i ∘ p^A_i
            let mut total = Morphism::zero_between(a, b);
            for pair in &matching.pairs {
                let sa = &da.summands[pair.left];
                let sb = &db.summands[pair.right];
                let piece = sb.embedding.compose(&pair.iso).compose(&sa.projection);
                total = total.add(&piece);
            }
            debug_assert!(total.is_iso() && total.is_morphism(a, b));
            Ok(Some(total))
        }
        Err(_) => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::linalg::Field;
    use crate::poset::FinitePoset;

    fn chain3() -> Arc<FinitePoset> {
        Arc::new(FinitePoset::chain(3).unwrap())
    }

    #[test]
    fn endomorphisms_contain_identity() {
        let c = chain3();
        let f = Field::default();
        let a = PersistenceModule::interval(&c, f, &[0, 1]).unwrap();
        let b = PersistenceModule::interval(&c, f, &[1, 2]).unwrap();
        let (m, _) = a.direct_sum(&b).unwrap();
        let end = hom_basis(&m, &m).unwrap();
        for g in &end.basis {
            assert!(g.is_morphism(&m, &m));
        }
        // identity is in the span
        let id = Morphism::identity(&m).flatten();
        let mut sys = Matrix::zeros(f, id.len(), end.dim());
        for (j, g) in end.basis.iter().enumerate() {
            for (i, v) in g.flatten().into_iter().enumerate() {
                sys.set(i, j, v);
            }
        }
        assert!(sys.solve(&Matrix::column_vector(f, &id)).is_some());
    }

    #[test]
    fn hom_between_staggered_intervals() {
        let c = chain3();
        let f = Field::default();
        let a = PersistenceModule::interval(&c, f, &[0, 1]).unwrap();
        let b = PersistenceModule::interval(&c, f, &[1, 2]).unwrap();
        assert_eq!(hom_basis(&a, &b).unwrap().dim(), 0);
        assert_eq!(hom_basis(&b, &a).unwrap().dim(), 1);
    }

    #[test]
    fn retraction_of_identity_and_canonical_inclusion() {
        let g = Arc::new(FinitePoset::grid(2, 2).unwrap());
        let f = Field::default();
        let k = PersistenceModule::interval(&g, f, &[0]).unwrap();
        let id = Morphism::identity(&k);
        assert_eq!(retraction(&k, &k, &id).unwrap(), Some(id.clone()));

        let n = PersistenceModule::interval(&g, f, &[0, 1, 2, 3]).unwrap();
        let (s, maps) = k.direct_sum(&n).unwrap();
        let r = retraction(&k, &s, &maps.embed_left).unwrap().unwrap();
        assert_eq!(r.compose(&maps.embed_left), id);
    }

    #[test]
    fn retraction_rejects_non_mono() {
        let c = chain3();
        let f = Field::default();
        let k = PersistenceModule::interval(&c, f, &[0, 1]).unwrap();
        let zero = Morphism::zero_between(&k, &k);
        assert!(matches!(retraction(&k, &k, &zero), Err(Error::NotMono(0))));
    }

    #[test]
    fn non_split_mono_has_no_retraction() {
        // k_[1,2] ↪ k_[0,2] on a chain: k_[1,2] is not injective there
        let c = chain3();
        let f = Field::default();
        let small = PersistenceModule::interval(&c, f, &[1, 2]).unwrap();
        let big = PersistenceModule::interval(&c, f, &[0, 1, 2]).unwrap();
        let inc = hom_basis(&small, &big).unwrap().basis.remove(0);
        assert!(inc.is_mono());
        assert_eq!(retraction(&small, &big, &inc).unwrap(), None);
    }

    #[test]
    fn isomorphism_examples() {
        let c = chain3();
        let f = Field::default();
        let a = PersistenceModule::interval(&c, f, &[0, 1]).unwrap();
        let b = PersistenceModule::interval(&c, f, &[1, 2]).unwrap();
        let (m, _) = a.direct_sum(&b).unwrap();
        let w = are_isomorphic(&m, &m, 0).unwrap().unwrap();
        assert!(w.is_iso() && w.is_morphism(&m, &m));
        assert!(are_isomorphic(&a, &b, 0).unwrap().is_none());

        let q = vec![
            Matrix::identity(f, 1),
            Matrix::from_i64(f, &[&[3, 5], &[7, 11]]),
            Matrix::from_i64(f, &[&[9]]),
        ];
        let scrambled = m.conjugate(&q).unwrap();
        scrambled.validate().unwrap();
        let w = are_isomorphic(&m, &scrambled, 1).unwrap().unwrap();
        assert!(w.is_iso() && w.is_morphism(&m, &scrambled));
    }
}
