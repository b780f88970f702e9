#![allow(dead_code)]

use std::sync::Arc;

use num_rational::Rational64;
use persmod::ingest::{generate, random_block, random_interval, random_segment, GeneratedModule, Rat, SampledFunction};
use persmod::linalg::{Field, Matrix};
use persmod::module::PersistenceModule;
use persmod::poset::{FinitePoset, Interval, Step, ZigzagPath};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const P: u32 = 32003;

pub fn field() -> Field {
    Field::new(P).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random staircase with `points` lattice points using both step kinds when
/// there is room for it.
pub fn random_path<R: Rng>(points: usize, rng: &mut R) -> ZigzagPath {
    let len = points.max(1) - 1;
    loop {
        let steps: Vec<Step> =
            (0..len).map(|_| if rng.gen_bool(0.5) { Step::Right } else { Step::Down }).collect();
        let mixed = steps.contains(&Step::Right) && steps.contains(&Step::Down);
        if len < 2 || mixed {
            return ZigzagPath::from_steps(steps);
        }
    }
}

/// Pick carriers with `pick` until about `count` summands or `budget` total dimension.
fn fill<R: Rng>(
    poset: &Arc<FinitePoset>,
    count: usize,
    budget: usize,
    rng: &mut R,
    mut pick: impl FnMut(&mut R) -> Interval,
) -> Vec<Interval> {
    let mut out: Vec<Interval> = Vec::new();
    let mut used = 0;
    while out.len() < count {
        let c = if !out.is_empty() && rng.gen_bool(0.2) { out.choose(rng).unwrap().clone() } else { pick(rng) };
        if used + c.len() > budget {
            break;
        }
        used += c.len();
        out.push(c);
    }
    if out.is_empty() {
        out.push(Interval::new(poset, &[0]).unwrap());
    }
    out
}

fn build<R: Rng>(poset: &Arc<FinitePoset>, field: Field, carriers: &[Interval], rng: &mut R) -> GeneratedModule {
    let refs: Vec<&Interval> = carriers.iter().collect();
    generate(poset, field, &refs, true, rng).unwrap()
}

pub fn chain_module<R: Rng>(field: Field, max_len: usize, budget: usize, rng: &mut R) -> GeneratedModule {
    let n = rng.gen_range(1..=max_len);
    let poset = Arc::new(FinitePoset::chain(n).unwrap());
    let count = rng.gen_range(1..=6);
    let carriers = fill(&poset, count, budget, rng, |r| Interval::new(&poset, &random_segment(n, r)).unwrap());
    build(&poset, field, &carriers, rng)
}

pub fn grid_module<R: Rng>(field: Field, max_side: usize, budget: usize, rng: &mut R) -> GeneratedModule {
    let (m, n) = (rng.gen_range(1..=max_side), rng.gen_range(1..=max_side));
    let poset = Arc::new(FinitePoset::grid(m, n).unwrap());
    let count = rng.gen_range(1..=5);
    let carriers = fill(&poset, count, budget, rng, |r| random_interval(&poset, r));
    build(&poset, field, &carriers, rng)
}

pub fn fence_module<R: Rng>(field: Field, max_points: usize, budget: usize, rng: &mut R) -> GeneratedModule {
    let path = random_path(rng.gen_range(1..=max_points), rng);
    let poset = Arc::new(FinitePoset::zigzag(path).unwrap());
    let n = poset.len();
    let count = rng.gen_range(1..=6);
    let carriers = fill(&poset, count, budget, rng, |r| Interval::new(&poset, &random_segment(n, r)).unwrap());
    build(&poset, field, &carriers, rng)
}

/// Scrambled sum of random blocks over `Grid(m, n)`.
pub fn block_module<R: Rng>(field: Field, m: usize, n: usize, budget: usize, rng: &mut R) -> GeneratedModule {
    let poset = Arc::new(FinitePoset::grid(m, n).unwrap());
    let count = rng.gen_range(1..=5);
    let carriers = fill(&poset, count, budget, rng, |r| Interval::new(&poset, &random_block(m, n, r)).unwrap());
    build(&poset, field, &carriers, rng)
}

/// Scrambled sum of full-height and full-width strips, whose unit squares
/// are all short exact.
pub fn strip_module<R: Rng>(field: Field, m: usize, n: usize, rng: &mut R) -> GeneratedModule {
    let poset = Arc::new(FinitePoset::grid(m, n).unwrap());
    let count = rng.gen_range(1..=4);
    let carriers: Vec<Interval> = (0..count)
        .map(|_| {
            let ids: Vec<usize> = if rng.gen_bool(0.5) {
                let a = rng.gen_range(0..m);
                let b = rng.gen_range(a..m);
                (a..=b).flat_map(|i| (0..n).map(move |j| i * n + j)).collect()
            } else {
                let a = rng.gen_range(0..n);
                let b = rng.gen_range(a..n);
                (0..m).flat_map(|i| (a..=b).map(move |j| i * n + j)).collect()
            };
            Interval::new(&poset, &ids).unwrap()
        })
        .collect();
    build(&poset, field, &carriers, rng)
}

/// Fence module with random dimensions in `0..=max_dim` and random maps.
pub fn random_fence_module<R: Rng>(field: Field, max_points: usize, max_dim: usize, rng: &mut R) -> PersistenceModule {
    let path = random_path(rng.gen_range(2..=max_points), rng);
    let poset = Arc::new(FinitePoset::zigzag(path).unwrap());
    let dims: Vec<usize> = poset.elements().map(|_| rng.gen_range(0..=max_dim)).collect();
    let maps = poset.covers().iter().map(|&(a, b)| Matrix::random(field, dims[b], dims[a], rng)).collect();
    PersistenceModule::new(poset, field, dims, maps).unwrap()
}

fn half(n: i64) -> Rat {
    Rat(Rational64::new(n, 2))
}

/// Random piecewise-linear function with `ms × nt` threshold grid and `max s < min t`.
pub fn random_pl_function<R: Rng>(ms: usize, nt: usize, rng: &mut R) -> SampledFunction {
    let len = rng.gen_range(2..=8);
    let values: Vec<Rat> = (0..len).map(|_| Rat::int(rng.gen_range(0..=10))).collect();
    let mut lows: Vec<i64> = (-2..10).collect();
    lows.shuffle(rng);
    let mut s: Vec<i64> = lows[..ms].to_vec();
    s.sort_unstable();
    let mut highs: Vec<i64> = (10..22).collect();
    highs.shuffle(rng);
    let mut t: Vec<i64> = highs[..nt].to_vec();
    t.sort_unstable();
    SampledFunction::interlevel(values, s.into_iter().map(half).collect(), t.into_iter().map(half).collect())
}
