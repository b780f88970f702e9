use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Field;
use crate::module::PersistenceModule;
use crate::poset::{FinitePoset, Interval, Shape};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bar {
    pub carrier: Interval,
    pub multiplicity: usize,
}

impl Bar {
    /// Smallest id in the carrier.
    pub fn birth(&self) -> usize {
        self.carrier.elements()[0]
    }

    /// Largest id in the carrier.
    pub fn death(&self) -> usize {
        *self.carrier.elements().last().unwrap()
    }
}

/// Multiset of interval supports, sorted by carrier.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Barcode {
    pub bars: Vec<Bar>,
}

impl Barcode {
    /// Collect carriers into a sorted multiset.
    pub fn from_carriers<I: IntoIterator<Item = Interval>>(carriers: I) -> Self {
        let mut counts: BTreeMap<Interval, usize> = BTreeMap::new();
        for c in carriers {
            *counts.entry(c).or_default() += 1;
        }
        Barcode { bars: counts.into_iter().map(|(carrier, multiplicity)| Bar { carrier, multiplicity }).collect() }
    }

    /// Number of distinct bars.
    pub fn len(&self) -> usize {
        self.bars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    /// Number of bars counted with multiplicity.
    pub fn total(&self) -> usize {
        self.bars.iter().map(|b| b.multiplicity).sum()
    }

    /// `Σ multiplicity · [x ∈ I]` for every element.
    pub fn pointwise_dims(&self, size: usize) -> Vec<usize> {
        let mut dims = vec![0; size];
        for b in &self.bars {
            for &x in b.carrier.elements() {
                dims[x] += b.multiplicity;
            }
        }
        dims
    }

    pub fn matches_dims(&self, module: &PersistenceModule) -> bool {
        self.pointwise_dims(module.poset().len()) == module.dims()
    }

    /// The direct sum of the interval modules of all bars.
    pub fn to_module(&self, poset: &std::sync::Arc<FinitePoset>, field: Field) -> Result<PersistenceModule> {
        let parts: Vec<PersistenceModule> = self
            .bars
            .iter()
            .flat_map(|b| std::iter::repeat_n(&b.carrier, b.multiplicity))
            .map(|c| PersistenceModule::interval_module(poset, field, c))
            .collect();
        PersistenceModule::direct_sum_all(poset, field, &parts)
    }
}

impl fmt::Display for Barcode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bars.is_empty() {
            return write!(f, "(empty)");
        }
        for (i, b) in self.bars.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", b.carrier.elements())?;
            if b.multiplicity > 1 {
                write!(f, "x{}", b.multiplicity)?;
            }
        }
        Ok(())
    }
}

/// Row-reduced vectors kept in insertion order, each with a leading 1.
pub(crate) struct Echelon {
    field: Field,
    rows: Vec<(usize, Vec<u32>)>,
}

impl Echelon {
    pub(crate) fn new(field: Field) -> Self {
        Echelon { field, rows: Vec::new() }
    }

    /// Add `v` if it is independent of the rows so far.
    pub(crate) fn insert(&mut self, mut v: Vec<u32>) -> bool {
        let f = self.field;
        for (piv, r) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                for (a, &b) in v.iter_mut().zip(r) {
                    *a = f.sub(*a, f.mul(c, b));
                }
            }
        }
        let Some(piv) = v.iter().position(|&x| x != 0) else { return false };
        let inv = f.inv(v[piv]);
        for a in v.iter_mut() {
            *a = f.mul(*a, inv);
        }
        self.rows.push((piv, v));
        true
    }
}

/// Barcode of a module over a chain by left-to-right reduction.
///
/// A basis of each `M_i` is kept with a birth index per vector, oldest
/// first. Pushing it through `M_i → M_{i+1}`, a vector whose image depends
/// on the images of older vectors dies at `i`; the surviving images are
/// completed to a basis of `M_{i+1}` by new vectors born at `i + 1`.
pub fn barcode_chain(m: &PersistenceModule) -> Result<Barcode> {
    let p = m.poset();
    let Shape::Chain(n) = *p.shape() else {
        return Err(Error::NotAChain(p.shape().to_string()));
    };
    let f = m.field();
    let unit = |d: usize, k: usize| {
        let mut v = vec![0u32; d];
        v[k] = 1;
        v
    };
    let mut bars = Vec::new();
    let mut alive: Vec<(usize, Vec<u32>)> = (0..m.dim(0)).map(|k| (0, unit(m.dim(0), k))).collect();
    for i in 0..n {
        if i + 1 == n {
            bars.extend(alive.drain(..).map(|(b, _)| (b, i)));
            break;
        }
        let a = m.cover_map(p.cover_index(i, i + 1).expect("chain cover"));
        let d = m.dim(i + 1);
        let mut ech = Echelon::new(f);
        let mut next = Vec::with_capacity(d);
        for (birth, v) in alive.drain(..) {
            let w: Vec<u32> = (0..d)
                .map(|r| a.row(r).iter().zip(&v).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y))))
                .collect();
            if ech.insert(w.clone()) {
                next.push((birth, w));
            } else {
                bars.push((birth, i));
            }
        }
        for k in 0..d {
            let e = unit(d, k);
            if ech.insert(e.clone()) {
                next.push((i + 1, e));
            }
        }
        alive = next;
    }
    Ok(Barcode::from_carriers(bars.into_iter().map(|(b, dth)| {
        Interval::new(p, &(b..=dth).collect::<Vec<_>>()).expect("chain segments are intervals")
    })))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::linalg::Matrix;

    fn chain(n: usize) -> Arc<FinitePoset> {
        Arc::new(FinitePoset::chain(n).unwrap())
    }

    fn bars(b: &Barcode) -> Vec<(Vec<usize>, usize)> {
        b.bars.iter().map(|b| (b.carrier.elements().to_vec(), b.multiplicity)).collect()
    }

    #[test]
    fn interval_module_has_one_bar() {
        let c = chain(5);
        let m = PersistenceModule::interval(&c, Field::default(), &[1, 2, 3]).unwrap();
        assert_eq!(bars(&barcode_chain(&m).unwrap()), vec![(vec![1, 2, 3], 1)]);
    }

    #[test]
    fn staggered_bars_through_zero_composite() {
        let f = Field::new(5).unwrap();
        let maps = vec![Matrix::from_i64(f, &[&[1], &[0]]), Matrix::from_i64(f, &[&[0, 1]])];
        let m = PersistenceModule::new(chain(3), f, vec![1, 2, 1], maps).unwrap();
        let b = barcode_chain(&m).unwrap();
        assert_eq!(bars(&b), vec![(vec![0, 1], 1), (vec![1, 2], 1)]);
        assert!(b.matches_dims(&m));
    }

    #[test]
    fn zero_map_splits_into_points() {
        let f = Field::default();
        let m = PersistenceModule::new(chain(2), f, vec![1, 1], vec![Matrix::zeros(f, 1, 1)]).unwrap();
        assert_eq!(bars(&barcode_chain(&m).unwrap()), vec![(vec![0], 1), (vec![1], 1)]);
    }

    #[test]
    fn rejects_non_chain() {
        let g = Arc::new(FinitePoset::grid(2, 2).unwrap());
        let m = PersistenceModule::zero(&g, Field::default());
        assert!(matches!(barcode_chain(&m), Err(Error::NotAChain(_))));
    }

    #[test]
    fn elder_rule_keeps_oldest() {
        // two bars born at 0 and 1 merge at 2: the younger one dies
        let f = Field::default();
        let maps = vec![Matrix::from_i64(f, &[&[1], &[0]]), Matrix::from_i64(f, &[&[1, 1]])];
        let m = PersistenceModule::new(chain(3), f, vec![1, 2, 1], maps).unwrap();
        assert_eq!(bars(&barcode_chain(&m).unwrap()), vec![(vec![0, 1, 2], 1), (vec![1], 1)]);
    }
}
