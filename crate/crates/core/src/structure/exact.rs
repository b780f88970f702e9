use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::module::PersistenceModule;
use crate::poset::FinitePoset;

/// Exactness of `M_a → M_b ⊕ M_c → M_d` for a rectangle with corners
/// `a = (i, j)`, `b = (i, j')`, `c = (i', j)`, `d = (i', j')`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareReport {
    /// Element ids of the four corners.
    pub ids: [usize; 4],
    /// Lattice coordinates of `a` and `d`.
    pub lower: (i64, i64),
    pub upper: (i64, i64),
    pub middle_exact: bool,
    /// Middle exact, injective into the middle and surjective out of it.
    pub short_exact: bool,
}

impl fmt::Display for SquareReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if !self.middle_exact {
            "not middle exact"
        } else if !self.short_exact {
            "middle exact, not short exact"
        } else {
            "short exact"
        };
        write!(
            f,
            "square ({}, {})-({}, {}) [ids {:?}]: {kind}",
            self.lower.0, self.lower.1, self.upper.0, self.upper.1, self.ids
        )
    }
}

/// Reports for every unit square of a grid-like module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MiddleExactness {
    pub squares: Vec<SquareReport>,
}

impl MiddleExactness {
    pub fn is_middle_exact(&self) -> bool {
        self.squares.iter().all(|s| s.middle_exact)
    }

    pub fn is_short_exact(&self) -> bool {
        self.squares.iter().all(|s| s.short_exact)
    }

    pub fn first_failure(&self) -> Option<&SquareReport> {
        self.squares.iter().find(|s| !s.middle_exact)
    }

    /// `Err(NotMiddleExact)` with the first failing square.
    pub fn require(&self) -> Result<()> {
        match self.first_failure() {
            Some(s) => Err(Error::NotMiddleExact(s.clone())),
            None => Ok(()),
        }
    }
}

/// Lower-left corners `(i, j)` of all unit squares inside the poset, in id order.
pub fn unit_squares(poset: &FinitePoset) -> Result<Vec<[usize; 4]>> {
    if poset.grid_dims().is_none() {
        return Err(Error::NotGridLike(poset.shape().to_string()));
    }
    let mut out = Vec::new();
    for a in poset.elements() {
        let (i, j) = poset.coords(a).unwrap();
        let ids = [(i, j + 1), (i + 1, j), (i + 1, j + 1)].map(|q| poset.id_at(q));
        if let [Some(b), Some(c), Some(d)] = ids {
            out.push([a, b, c, d]);
        }
    }
    Ok(out)
}

fn report(m: &PersistenceModule, [a, b, c, d]: [usize; 4]) -> SquareReport {
    let p = m.poset();
    let ab = m.map_between(a, b).expect("a ≤ b");
    let ac = m.map_between(a, c).expect("a ≤ c");
    let bd = m.map_between(b, d).expect("b ≤ d");
    let cd = m.map_between(c, d).expect("c ≤ d");
    let into = ab.vstack(&ac);
    let out = bd.hstack(&cd.neg());
    let (da, db, dc, dd) = (m.dim(a), m.dim(b), m.dim(c), m.dim(d));
    let ra = into.rank();
    let rb = out.rank();
    let composite_zero = out.mul(&into).is_zero();
    let middle_exact = composite_zero && ra + rb == db + dc;
    let short_exact = middle_exact && ra == da && rb == dd;
    SquareReport {
        ids: [a, b, c, d],
        lower: p.coords(a).unwrap(),
        upper: p.coords(d).unwrap(),
        middle_exact,
        short_exact,
    }
}

/// Check exactness at the middle term of every unit square.
///
/// Exactness on unit squares implies it on every rectangle; see
/// [`check_rectangle`] for testing larger ones directly.
pub fn check_middle_exact(m: &PersistenceModule) -> Result<MiddleExactness> {
    let squares = unit_squares(m.poset())?.into_iter().map(|s| report(m, s)).collect();
    Ok(MiddleExactness { squares })
}

/// Exactness for the rectangle spanned by `lower ≤ upper`.
pub fn check_rectangle(m: &PersistenceModule, lower: (i64, i64), upper: (i64, i64)) -> Result<SquareReport> {
    let p = m.poset();
    if p.grid_dims().is_none() {
        return Err(Error::NotGridLike(p.shape().to_string()));
    }
    let corners = [lower, (lower.0, upper.1), (upper.0, lower.1), upper];
    let mut ids = [0; 4];
    for (slot, q) in ids.iter_mut().zip(corners) {
        *slot = p
            .id_at(q)
            .ok_or_else(|| Error::ShapeMismatch(format!("rectangle corner {q:?} is not in the poset")))?;
    }
    if lower.0 > upper.0 || lower.1 > upper.1 {
        return Err(Error::ShapeMismatch(format!("{lower:?} is not below {upper:?}")));
    }
    Ok(report(m, ids))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::linalg::Field;

    fn grid22() -> Arc<FinitePoset> {
        Arc::new(FinitePoset::grid(2, 2).unwrap())
    }

    #[test]
    fn full_grid_is_short_exact() {
        let g = Arc::new(FinitePoset::grid(3, 4).unwrap());
        let m = PersistenceModule::interval(&g, Field::default(), &(0..12).collect::<Vec<_>>()).unwrap();
        let r = check_middle_exact(&m).unwrap();
        assert_eq!(r.squares.len(), 6);
        assert!(r.is_short_exact());
    }

    #[test]
    fn top_corner_is_middle_exact() {
        let m = PersistenceModule::interval(&grid22(), Field::default(), &[3]).unwrap();
        assert!(check_middle_exact(&m).unwrap().is_middle_exact());
    }

    #[test]
    fn off_corner_point_is_not_middle_exact() {
        let m = PersistenceModule::interval(&grid22(), Field::default(), &[1]).unwrap();
        let r = check_middle_exact(&m).unwrap();
        let bad = r.first_failure().unwrap();
        assert_eq!(bad.lower, (0, 0));
        assert_eq!(bad.upper, (1, 1));
        assert!(matches!(r.require(), Err(Error::NotMiddleExact(_))));
    }

    #[test]
    fn chain_is_not_grid_like() {
        let c = Arc::new(FinitePoset::chain(3).unwrap());
        assert!(matches!(
            check_middle_exact(&PersistenceModule::zero(&c, Field::default())),
            Err(Error::NotGridLike(_))
        ));
    }

    #[test]
    fn triangle_squares_stay_inside() {
        let t = Arc::new(FinitePoset::triangle(3, 3, 1).unwrap());
        let squares = unit_squares(&t).unwrap();
        // lower corners (i, j) with i + j ≥ 2 and i, j ≤ 1: only (1, 1)
        assert_eq!(squares.len(), 1);
    }
}
