//! Decomposition into indecomposable summands via Fitting's lemma, and
//! matching of two decompositions up to isomorphism.

use std::collections::BTreeSet;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hom::{hom_basis, indecomposables_isomorphic};
use crate::linalg::{charpoly, roots};
use crate::module::{Morphism, PersistenceModule, SubmoduleFamily};

/// Random endomorphisms tried after the basis sweep before a summand is
/// declared indecomposable.
pub const RANDOM_TRIALS: usize = 32;

/// Why a summand is believed indecomposable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Certificate {
    /// `End = k·id`, which is local: a proof.
    EndDimOne,
    /// No splitting endomorphism was found among `trials` candidates.
    HeuristicExhausted { trials: usize },
}

impl Certificate {
    pub fn is_proof(&self) -> bool {
        matches!(self, Certificate::EndDimOne)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::EndDimOne => write!(f, "End dimension 1"),
            Certificate::HeuristicExhausted { trials } => write!(f, "no split in {trials} trials"),
        }
    }
}

/// One summand `S` of `M` with `e: S → M` and `p: M → S`.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: PersistenceModule,
    pub embedding: Morphism,
    pub projection: Morphism,
    pub certificate: Certificate,
}

impl Summand {
    pub fn support(&self) -> Vec<usize> {
        self.module.support()
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub original: PersistenceModule,
    pub summands: Vec<Summand>,
}

impl Decomposition {
    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Supports of all summands, sorted.
    pub fn supports(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self.summands.iter().map(Summand::support).collect();
        out.sort();
        out
    }

    /// `Σ e_i ∘ p_i = id_M`.
    pub fn reconstructs(&self) -> bool {
        let mut total = Morphism::zero_between(&self.original, &self.original);
        for s in &self.summands {
            total = total.add(&s.embedding.compose(&s.projection));
        }
        total == Morphism::identity(&self.original)
    }

    /// `p_i ∘ e_j = δ_ij·id`, and every `e_i`, `p_i` is a morphism.
    pub fn is_orthogonal(&self) -> bool {
        self.summands.iter().enumerate().all(|(i, si)| {
            si.embedding.is_morphism(&si.module, &self.original)
                && si.projection.is_morphism(&self.original, &si.module)
                && self.summands.iter().enumerate().all(|(j, sj)| {
                    let c = si.projection.compose(&sj.embedding);
                    if i == j {
                        c == Morphism::identity(&si.module)
                    } else {
                        c.is_zero()
                    }
                })
        })
    }

    /// Pointwise dimensions of the summands add up to those of the original.
    pub fn dims_add_up(&self) -> bool {
        let mut dims = vec![0; self.original.poset().len()];
        for s in &self.summands {
            for (d, &e) in dims.iter_mut().zip(s.module.dims()) {
                *d += e;
            }
        }
        dims == self.original.dims()
    }

    pub fn all_certified(&self) -> bool {
        self.summands.iter().all(|s| s.certificate.is_proof())
    }
}

/// `M = M' ⊕ M''` for an endomorphism `θ`, with `M' = Im θ^n` and `M'' = Ker θ^n`.
#[derive(Clone, Debug)]
pub struct FittingSplit {
    pub exponent: usize,
    pub image: SubmoduleFamily,
    pub kernel: SubmoduleFamily,
    /// `M'` with its inclusion and projection.
    pub image_part: (PersistenceModule, Morphism, Morphism),
    /// `M''` with its inclusion and projection.
    pub kernel_part: (PersistenceModule, Morphism, Morphism),
}

impl FittingSplit {
    /// Both parts nonzero.
    pub fn is_nontrivial(&self) -> bool {
        !self.image.is_zero() && !self.kernel.is_zero()
    }
}

fn fitting_exponent(m: &PersistenceModule) -> usize {
    m.dims().iter().copied().max().unwrap_or(0).max(1)
}

/// Split `M` along the eventual image and kernel of `θ`.
///
/// The exponent is the largest pointwise dimension; past it, images and
/// kernels of `θ_x^j` no longer change.
pub fn fitting_split(m: &PersistenceModule, theta: &Morphism) -> Result<FittingSplit> {
    if !theta.is_morphism(m, m) {
        return Err(Error::NotEndomorphism);
    }
    let n = fitting_exponent(m);
    let mut images = Vec::with_capacity(m.poset().len());
    let mut kernels = Vec::with_capacity(m.poset().len());
    for c in theta.components() {
        let power = c.pow(n as u64);
        images.push(power.image_basis());
        kernels.push(power.kernel_basis());
    }
    let image = SubmoduleFamily::new(images);
    let kernel = SubmoduleFamily::new(kernels);
    let image_part = m.split_along(&image, &kernel)?;
    let kernel_part = m.split_along(&kernel, &image)?;
    Ok(FittingSplit { exponent: n, image, kernel, image_part, kernel_part })
}

/// `Σ_x rank(θ_x^n)` lies strictly between 0 and the total dimension.
fn splits(m: &PersistenceModule, theta: &Morphism) -> bool {
    let n = fitting_exponent(m) as u64;
    let r: usize = theta.components().iter().map(|c| c.pow(n).rank()).sum();
    r > 0 && r < m.total_dim()
}

/// Eigenvalues in `F_p` of `⊕_x θ_x`, ascending.
fn eigenvalues(theta: &Morphism) -> Vec<u32> {
    let mut all = BTreeSet::new();
    for c in theta.components() {
        if c.rows() > 0 {
            all.extend(roots(c.field(), &charpoly(c)));
        }
    }
    all.into_iter().collect()
}

enum Attempt {
    Split(Box<FittingSplit>),
    Indecomposable(Certificate),
}

fn find_split(m: &PersistenceModule, rng: &mut ChaCha8Rng) -> Attempt {
    let end = hom_basis(m, m).expect("module against itself");
    if end.dim() <= 1 {
        return Attempt::Indecomposable(Certificate::EndDimOne);
    }
    let mut trials = 0;
    let attempt = |theta: &Morphism, trials: &mut usize| -> Option<FittingSplit> {
        for lambda in eigenvalues(theta) {
            *trials += 1;
            let shifted = theta.shift(lambda);
            if splits(m, &shifted) {
                return Some(fitting_split(m, &shifted).expect("endomorphism"));
            }
        }
        None
    };
    for theta in &end.basis {
        if let Some(s) = attempt(theta, &mut trials) {
            return Attempt::Split(Box::new(s));
        }
    }
    let f = m.field();
    for _ in 0..RANDOM_TRIALS {
        let coeffs: Vec<u32> = (0..end.dim()).map(|_| f.random(rng)).collect();
        let theta = end.combine(&coeffs).unwrap();
        if let Some(s) = attempt(&theta, &mut trials) {
            return Attempt::Split(Box::new(s));
        }
    }
    Attempt::Indecomposable(Certificate::HeuristicExhausted { trials: trials.max(RANDOM_TRIALS) })
}

fn decompose_into(m: &PersistenceModule, rng: &mut ChaCha8Rng, out: &mut Vec<Summand>) {
    if m.is_zero() {
        return;
    }
    match find_split(m, rng) {
        Attempt::Indecomposable(certificate) => out.push(Summand {
            module: m.clone(),
            embedding: Morphism::identity(m),
            projection: Morphism::identity(m),
            certificate,
        }),
        Attempt::Split(split) => {
            let FittingSplit { image_part, kernel_part, .. } = *split;
            for (part, e, p) in [image_part, kernel_part] {
                let mut inner = Vec::new();
                decompose_into(&part, rng, &mut inner);
                out.extend(inner.into_iter().map(|s| Summand {
                    embedding: e.compose(&s.embedding),
                    projection: s.projection.compose(&p),
                    ..s
                }));
            }
        }
    }
}

/// Decompose `M` into summands, each with a [`Certificate`].
///
/// The basis of `End(M)` is swept first: for every basis element `θ` and
/// every eigenvalue `λ ∈ F_p`, `θ − λ·id` is tried as a Fitting splitter.
/// Then [`RANDOM_TRIALS`] seeded random combinations are tried the same
/// way. Nontrivial splits are decomposed recursively. The result depends
/// only on `M` and `seed`.
pub fn decompose(m: &PersistenceModule, seed: u64) -> Decomposition {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summands = Vec::new();
    decompose_into(m, &mut rng, &mut summands);
    Decomposition { original: m.clone(), summands }
}

/// A summand of the left decomposition paired with one of the right.
#[derive(Clone, Debug)]
pub struct MatchedPair {
    pub left: usize,
    pub right: usize,
    /// Isomorphism from the left summand to the right one.
    pub iso: Morphism,
}

#[derive(Clone, Debug)]
pub struct Matching {
    pub pairs: Vec<MatchedPair>,
}

impl Matching {
    /// `sigma[i]` is the right summand paired with left summand `i`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut sigma = vec![0; self.pairs.len()];
        for p in &self.pairs {
            sigma[p.left] = p.right;
        }
        sigma
    }
}

/// The first isomorphism class whose multiplicities differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MismatchReport {
    /// Support of a representative of the class.
    pub support: Vec<usize>,
    pub dims: Vec<usize>,
    pub left_multiplicity: usize,
    pub right_multiplicity: usize,
}

impl fmt::Display for MismatchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "summand class with support {:?} occurs {} times on the left and {} times on the right",
            self.support, self.left_multiplicity, self.right_multiplicity
        )
    }
}

fn iso(a: &PersistenceModule, b: &PersistenceModule) -> Option<Morphism> {
    if a.poset() != b.poset() || a.field() != b.field() {
        return None;
    }
    indecomposables_isomorphic(a, b).ok().flatten()
}

fn class_counts(rep: &PersistenceModule, a: &Decomposition, b: &Decomposition) -> MismatchReport {
    let count = |d: &Decomposition| d.summands.iter().filter(|s| iso(rep, &s.module).is_some()).count();
    MismatchReport {
        support: rep.support(),
        dims: rep.dims().to_vec(),
        left_multiplicity: count(a),
        right_multiplicity: count(b),
    }
}

/// Pair the summands of two decompositions by isomorphism.
///
/// Greedy matching is exact here: isomorphism is an equivalence relation on
/// indecomposables, so any unmatched summand witnesses a class whose
/// multiplicities differ.
pub fn krs_match(a: &Decomposition, b: &Decomposition) -> std::result::Result<Matching, MismatchReport> {
    let mut used = vec![false; b.summands.len()];
    let mut pairs = Vec::with_capacity(a.summands.len());
    for (i, sa) in a.summands.iter().enumerate() {
        let found = b
            .summands
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .find_map(|(j, sb)| iso(&sa.module, &sb.module).map(|w| (j, w)));
        match found {
            Some((j, w)) => {
                used[j] = true;
                pairs.push(MatchedPair { left: i, right: j, iso: w });
            }
            None => return Err(class_counts(&sa.module, a, b)),
        }
    }
    if let Some(j) = used.iter().position(|u| !u) {
        return Err(class_counts(&b.summands[j].module, a, b));
    }
    Ok(Matching { pairs })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::linalg::{Field, Matrix};
    use crate::poset::FinitePoset;

    fn chain(n: usize) -> Arc<FinitePoset> {
        Arc::new(FinitePoset::chain(n).unwrap())
    }

    fn staggered() -> PersistenceModule {
        let c = chain(3);
        let f = Field::default();
        let a = PersistenceModule::interval(&c, f, &[0, 1]).unwrap();
        let b = PersistenceModule::interval(&c, f, &[1, 2]).unwrap();
        a.direct_sum(&b).unwrap().0
    }

    #[test]
    fn fitting_trivial_endomorphisms() {
        let m = staggered();
        let zero = Morphism::zero_between(&m, &m);
        let s = fitting_split(&m, &zero).unwrap();
        assert!(s.image.is_zero() && s.kernel.is_everything());
        let s = fitting_split(&m, &Morphism::identity(&m)).unwrap();
        assert!(s.image.is_everything() && s.kernel.is_zero());
    }

    #[test]
    fn fitting_idempotent_recovers_summands() {
        let c = chain(3);
        let f = Field::default();
        let a = PersistenceModule::interval(&c, f, &[0, 1]).unwrap();
        let b = PersistenceModule::interval(&c, f, &[1, 2]).unwrap();
        let (m, maps) = a.direct_sum(&b).unwrap();
        let e = maps.embed_left.compose(&maps.project_left);
        let s = fitting_split(&m, &e).unwrap();
        assert_eq!(s.image_part.0, a);
        assert_eq!(s.kernel_part.0, b);
    }

    #[test]
    fn fitting_rejects_non_endomorphism() {
        let m = staggered();
        let bad = Morphism::new(m.dims().iter().map(|&d| Matrix::zeros(Field::default(), d, d + 1)).collect());
        assert!(matches!(fitting_split(&m, &bad), Err(Error::NotEndomorphism)));
    }

    #[test]
    fn interval_is_certified() {
        let g = Arc::new(FinitePoset::grid(3, 3).unwrap());
        let m = PersistenceModule::interval(&g, Field::default(), &[1, 2, 4, 5]).unwrap();
        let d = decompose(&m, 0);
        assert_eq!(d.len(), 1);
        assert_eq!(d.summands[0].certificate, Certificate::EndDimOne);
    }

    #[test]
    fn zero_module_has_no_summands() {
        let c = chain(4);
        let d = decompose(&PersistenceModule::zero(&c, Field::default()), 0);
        assert!(d.is_empty());
        assert!(d.reconstructs());
    }

    #[test]
    fn scrambled_chain_sum() {
        let c = chain(3);
        let f = Field::default();
        let parts = [vec![0], vec![0, 1], vec![1, 2]];
        let mods: Vec<_> = parts.iter().map(|p| PersistenceModule::interval(&c, f, p).unwrap()).collect();
        let m = PersistenceModule::direct_sum_all(&c, f, &mods).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let q: Vec<_> = m.dims().iter().map(|&d| Matrix::random_invertible(f, d, &mut rng)).collect();
        let m = m.conjugate(&q).unwrap();
        let d = decompose(&m, 11);
        assert!(d.reconstructs() && d.is_orthogonal() && d.all_certified());
        assert_eq!(d.supports(), vec![vec![0], vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let m = staggered();
        let a = decompose(&m, 3);
        let b = decompose(&m, 3);
        for (x, y) in a.summands.iter().zip(&b.summands) {
            assert_eq!(x.embedding, y.embedding);
        }
    }

    /// A crown `a, b < c, d` with `k^2` everywhere and maps `I, I, I, J`,
    /// `J^2 = −1`. Endomorphisms are the centraliser `k[J]`, which over `F_7`
    /// is the field `F_49`: indecomposable, yet `End` has dimension 2.
    #[test]
    fn quadratic_extension_endomorphisms_exhaust_heuristic() {
        let f = Field::new(7).unwrap();
        let p = Arc::new(FinitePoset::custom(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap());
        let i = Matrix::identity(f, 2);
        let j = Matrix::from_i64(f, &[&[0, -1], &[1, 0]]);
        let m = PersistenceModule::new(p, f, vec![2; 4], vec![i.clone(), i.clone(), i, j]).unwrap();
        assert_eq!(hom_basis(&m, &m).unwrap().dim(), 2);
        let d = decompose(&m, 0);
        assert_eq!(d.len(), 1);
        assert!(matches!(d.summands[0].certificate, Certificate::HeuristicExhausted { .. }));
        assert!(d.reconstructs());
    }

    #[test]
    fn matching_examples() {
        let c = chain(3);
        let f = Field::default();
        let a = PersistenceModule::interval(&c, f, &[0, 1]).unwrap();
        let b = PersistenceModule::interval(&c, f, &[1, 2]).unwrap();
        let (m, _) = a.direct_sum(&b).unwrap();
        let d = decompose(&m, 0);
        let sigma = krs_match(&d, &d).unwrap().permutation();
        assert_eq!(sigma, vec![0, 1]);

        let other = PersistenceModule::interval(&c, f, &[2]).unwrap();
        let (corrupt, _) = a.direct_sum(&other).unwrap();
        let report = krs_match(&d, &decompose(&corrupt, 0)).unwrap_err();
        assert_eq!(report.left_multiplicity, 1);
        assert_eq!(report.right_multiplicity, 0);
    }
}
