//! Modules from data: `H_0` of sublevel and interlevel sets of sampled
//! piecewise-linear functions, and seeded random direct sums of interval
//! modules with their decompositions kept as ground truth.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::decomp::{Certificate, Decomposition, Summand};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::module::{Morphism, PersistenceModule};
use crate::poset::{FinitePoset, Interval, ShapeDescriptor};
use crate::structure::{check_middle_exact, Barcode};

/// An exact rational, written in files as an integer or a `"p/q"` string.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(pub Rational64);

impl Rat {
    pub fn int(n: i64) -> Self {
        Rat(Rational64::from_integer(n))
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::int(n)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            s.serialize_i64(*self.0.numer())
        } else {
            s.serialize_str(&self.0.to_string())
        }
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Rat::int(n)),
            Raw::Text(t) => Rational64::from_str(t.trim())
                .map(Rat)
                .map_err(|_| serde::de::Error::custom(format!("{t:?} is not a rational number"))),
        }
    }
}

/// Samples `f(x_0), …, f(x_{n−1})` of a piecewise-linear function with
/// threshold grids. Sublevel sets use `t`; interlevel sets `{s < f < t}`
/// use both.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampledFunction {
    pub values: Vec<Rat>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub s: Vec<Rat>,
    pub t: Vec<Rat>,
}

fn strictly_sorted(name: &str, xs: &[Rat]) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::InvalidSamples(format!("threshold grid {name} is empty")));
    }
    if xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidSamples(format!("threshold grid {name} is not strictly increasing")));
    }
    Ok(())
}

impl SampledFunction {
    pub fn sublevel(values: Vec<Rat>, t: Vec<Rat>) -> Self {
        SampledFunction { values, s: Vec::new(), t }
    }

    pub fn interlevel(values: Vec<Rat>, s: Vec<Rat>, t: Vec<Rat>) -> Self {
        SampledFunction { values, s, t }
    }

    fn check_values(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::InvalidSamples("no samples".into()));
        }
        strictly_sorted("t", &self.t)
    }
}

/// One generator per connected piece, stored as the node range it covers.
fn runs(present: impl Iterator<Item = bool>) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = None;
    let mut len = 0;
    for (i, p) in present.enumerate() {
        match (p, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                out.push((s, i - 1));
                start = None;
            }
            _ => {}
        }
        len = i + 1;
    }
    if let Some(s) = start {
        out.push((s, len - 1));
    }
    out
}

/// Matrix sending each piece of `small` to the piece of `large` containing it.
fn inclusion(field: Field, small: &[(usize, usize)], large: &[(usize, usize)]) -> Matrix {
    let mut m = Matrix::zeros(field, large.len(), small.len());
    for (c, &(a, _)) in small.iter().enumerate() {
        let r = large.iter().position(|&(lo, hi)| lo <= a && a <= hi).expect("pieces grow with the threshold");
        m.set(r, c, 1);
    }
    m
}

/// Order pieces by the elder rule: lowest minimum first, then lowest index.
fn elder_order(pieces: &mut [(usize, usize)], node_min: impl Fn(usize) -> (Rat, usize)) {
    pieces.sort_by_key(|&(lo, hi)| (lo..=hi).map(&node_min).min().unwrap());
}

/// `H_0` of the sublevel sets `{f ≤ t_j}` as a module over `Chain(#t)`.
///
/// Consecutive samples are joined when both lie below the threshold, which
/// is exactly when the linear segment between them does. Components are
/// ordered by their lowest sample, ties by position.
pub fn sublevel_h0(f: &SampledFunction, field: Field) -> Result<PersistenceModule> {
    f.check_values()?;
    let v = &f.values;
    let levels: Vec<Vec<(usize, usize)>> = f
        .t
        .iter()
        .map(|t| {
            let mut pieces = runs(v.iter().map(|x| x <= t));
            elder_order(&mut pieces, |k| (v[k], k));
            pieces
        })
        .collect();
    let chain = Arc::new(FinitePoset::chain(f.t.len())?);
    let dims = levels.iter().map(Vec::len).collect();
    let maps = levels.windows(2).map(|w| inclusion(field, &w[0], &w[1])).collect();
    PersistenceModule::new(chain, field, dims, maps)
}

/// `H_0` of the interlevel sets `{s_i < f < t_j}` over `Grid(#s, #t)`.
///
/// The first axis runs through `s` in decreasing order so that both axes
/// enlarge the set. Points of the piecewise-linear function are tracked as
/// the sequence sample, open segment, sample, …: a sample is present when
/// its value is strictly between the thresholds, an open segment when its
/// range of values meets `(s, t)`. Components are maximal runs of present
/// nodes. Requires `max s < min t`; the result is checked to be middle exact.
pub fn interlevel_h0(f: &SampledFunction, field: Field) -> Result<PersistenceModule> {
    f.check_values()?;
    strictly_sorted("s", &f.s)?;
    if f.s.last().unwrap() >= f.t.first().unwrap() {
        return Err(Error::OverlapConditionViolated);
    }
    let v = &f.values;
    let n = v.len();
    let node_count = 2 * n - 1;
    let present = |k: usize, s: Rat, t: Rat| -> bool {
        if k.is_multiple_of(2) {
            let x = v[k / 2];
            s < x && x < t
        } else {
            let (a, b) = (v[k / 2], v[k / 2 + 1]);
            let (lo, hi) = (a.min(b), a.max(b));
            if lo == hi {
                s < lo && lo < t
            } else {
                hi > s && lo < t
            }
        }
    };
    // node minimum for the elder order: samples by value, segments by their lower end
    let node_min = |k: usize| -> (Rat, usize) {
        if k.is_multiple_of(2) {
            (v[k / 2], k)
        } else {
            (v[k / 2].min(v[k / 2 + 1]), k)
        }
    };
    let s_desc: Vec<Rat> = f.s.iter().rev().copied().collect();
    let (ms, nt) = (s_desc.len(), f.t.len());
    let grid = Arc::new(FinitePoset::grid(ms, nt)?);
    let mut levels = Vec::with_capacity(ms * nt);
    for &s in &s_desc {
        for &t in &f.t {
            let mut pieces = runs((0..node_count).map(|k| present(k, s, t)));
            elder_order(&mut pieces, node_min);
            levels.push(pieces);
        }
    }
    let dims = levels.iter().map(Vec::len).collect();
    let maps = grid.covers().iter().map(|&(a, b)| inclusion(field, &levels[a], &levels[b])).collect();
    let m = PersistenceModule::new(grid, field, dims, maps)?;
    if let Some(bad) = check_middle_exact(&m)?.first_failure() {
        return Err(Error::Counterexample(format!("interlevel module fails exactness at {bad}")));
    }
    Ok(m)
}

/// A requested summand of a generated module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CarrierSpec {
    pub elements: Vec<usize>,
    #[serde(default = "one")]
    pub multiplicity: usize,
}

fn one() -> usize {
    1
}

/// Direct sum of interval modules, optionally scrambled by random
/// pointwise changes of basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub poset: ShapeDescriptor,
    pub carriers: Vec<CarrierSpec>,
    #[serde(default)]
    pub scramble: bool,
    #[serde(default)]
    pub seed: u64,
}

/// A generated module with everything needed to check a decomposition of it.
#[derive(Clone, Debug)]
pub struct GeneratedModule {
    pub module: PersistenceModule,
    /// The requested summands, carried through the change of basis.
    pub ground_truth: Decomposition,
    pub barcode: Barcode,
    /// `Q_x` with `module = Q · (⊕ k_I) · Q^{-1}`.
    pub conjugators: Vec<Matrix>,
}

/// Build the module described by `spec`. Output depends only on the spec.
pub fn random_module(spec: &GeneratorSpec, field: Field) -> Result<GeneratedModule> {
    let poset = Arc::new(FinitePoset::build(&spec.poset)?);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let carriers: Vec<Interval> = spec
        .carriers
        .iter()
        .map(|c| Interval::new(&poset, &c.elements).map_err(|e| Error::InvalidCarrier(e.to_string())))
        .collect::<Result<_>>()?;
    let expanded: Vec<&Interval> = carriers
        .iter()
        .zip(&spec.carriers)
        .flat_map(|(i, c)| std::iter::repeat_n(i, c.multiplicity))
        .collect();
    generate(&poset, field, &expanded, spec.scramble, &mut rng)
}

/// Scrambled direct sum of the given interval modules, drawing randomness from `rng`.
pub fn generate<R: Rng + ?Sized>(
    poset: &Arc<FinitePoset>,
    field: Field,
    carriers: &[&Interval],
    scramble: bool,
    rng: &mut R,
) -> Result<GeneratedModule> {
    let parts: Vec<PersistenceModule> =
        carriers.iter().map(|c| PersistenceModule::interval_module(poset, field, c)).collect();
    let plain = PersistenceModule::direct_sum_all(poset, field, &parts)?;
    let conjugators: Vec<Matrix> = if scramble {
        plain.dims().iter().map(|&d| Matrix::random_invertible(field, d, rng)).collect()
    } else {
        plain.dims().iter().map(|&d| Matrix::identity(field, d)).collect()
    };
    let inverses: Vec<Matrix> = conjugators.iter().map(|q| q.inverse().expect("invertible")).collect();
    let module = plain.conjugate(&conjugators)?;

    let mut offsets = vec![0usize; poset.len()];
    let mut summands = Vec::with_capacity(parts.len());
    for part in parts {
        let mut embeds = Vec::with_capacity(poset.len());
        let mut projs = Vec::with_capacity(poset.len());
        for x in poset.elements() {
            let d = plain.dim(x);
            let k = part.dim(x);
            let mut e = Matrix::zeros(field, d, k);
            let mut p = Matrix::zeros(field, k, d);
            if k == 1 {
                e.set(offsets[x], 0, 1);
                p.set(0, offsets[x], 1);
                offsets[x] += 1;
            }
            embeds.push(conjugators[x].mul(&e));
            projs.push(p.mul(&inverses[x]));
        }
        summands.push(Summand {
            module: part,
            embedding: Morphism::new(embeds),
            projection: Morphism::new(projs),
            certificate: Certificate::EndDimOne,
        });
    }
    let barcode = Barcode::from_carriers(carriers.iter().map(|c| (*c).clone()));
    Ok(GeneratedModule {
        ground_truth: Decomposition { original: module.clone(), summands },
        module,
        barcode,
        conjugators,
    })
}

/// A random segment `[a, b]` of a chain or fence, as ids `a..=b`.
pub fn random_segment<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<usize> {
    let a = rng.gen_range(0..len);
    let b = rng.gen_range(a..len);
    (a..=b).collect()
}

/// A random block of `Grid(m, n)` of a random type.
pub fn random_block<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> Vec<usize> {
    let span = |len: usize, rng: &mut R| {
        let a = rng.gen_range(0..len);
        let b = rng.gen_range(a..len);
        (a, b)
    };
    let ((x0, x1), (y0, y1)) = match rng.gen_range(0..4) {
        0 => ((0, rng.gen_range(0..m)), (0, rng.gen_range(0..n))),
        1 => ((rng.gen_range(0..m), m - 1), (rng.gen_range(0..n), n - 1)),
        2 => (span(m, rng), (0, n - 1)),
        _ => ((0, m - 1), span(n, rng)),
    };
    (x0..=x1).flat_map(|i| (y0..=y1).map(move |j| i * n + j)).collect()
}

/// A random interval of `poset`: elements above one of a few random lower
/// generators and below one of a few upper ones, retried until convex and
/// connected.
pub fn random_interval<R: Rng + ?Sized>(poset: &FinitePoset, rng: &mut R) -> Interval {
    let elems: Vec<usize> = poset.elements().collect();
    loop {
        let lows: Vec<usize> = (0..rng.gen_range(1..=2)).map(|_| *elems.choose(rng).unwrap()).collect();
        let highs: Vec<usize> = (0..rng.gen_range(1..=2)).map(|_| *elems.choose(rng).unwrap()).collect();
        let set: Vec<usize> = poset
            .elements()
            .filter(|&x| lows.iter().any(|&l| poset.leq(l, x)) && highs.iter().any(|&h| poset.leq(x, h)))
            .collect();
        if let Ok(i) = Interval::new(poset, &set) {
            return i;
        }
    }
}
