//! Finite posets, their Hasse diagrams, and the special subsets the
//! decomposition theorems talk about: intervals, ideals, filters, blocks and
//! the regions cut out by a zigzag path.
//!
//! Elements are dense ids `0..len`. Lattice shapes number their points
//! row-major: point `(i, j)` of `Grid(m, n)` has id `i * n + j`, and a
//! triangular region keeps the same order restricted to its points.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Lattice step of a zigzag path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    /// `+(1, 0)`
    Right,
    /// `−(0, 1)`
    Down,
}

/// Orientation of the arrow between consecutive fence elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `x_i ≤ x_{i+1}`
    Forward,
    /// `x_i ≥ x_{i+1}`
    Backward,
}

/// Closed lattice rectangle `[x0, x1] × [y0, y1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub x0: i64,
    pub x1: i64,
    pub y0: i64,
    pub y1: i64,
}

impl Window {
    pub fn width(&self) -> usize {
        (self.x1 - self.x0 + 1) as usize
    }

    pub fn height(&self) -> usize {
        (self.y1 - self.y0 + 1) as usize
    }

    pub fn contains(&self, (x, y): (i64, i64)) -> bool {
        (self.x0..=self.x1).contains(&x) && (self.y0..=self.y1).contains(&y)
    }

    /// Row-major id of a point inside the window grid.
    pub fn grid_id(&self, (x, y): (i64, i64)) -> usize {
        debug_assert!(self.contains((x, y)));
        (x - self.x0) as usize * self.height() + (y - self.y0) as usize
    }

    pub fn point(&self, id: usize) -> (i64, i64) {
        let h = self.height();
        (self.x0 + (id / h) as i64, self.y0 + (id % h) as i64)
    }
}

/// A finite right/down staircase crossing its window from the top-left
/// corner `(x0, y1)` to the bottom-right corner `(x1, y0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZigzagPath {
    start: (i64, i64),
    steps: Vec<Step>,
    window: Window,
}

impl ZigzagPath {
    pub fn new(start: (i64, i64), steps: Vec<Step>, window: Window) -> Result<Self> {
        if window.x1 < window.x0 || window.y1 < window.y0 {
            return Err(Error::MalformedShape { field: "window", reason: "empty window".into() });
        }
        if start != (window.x0, window.y1) {
            return Err(Error::MalformedShape {
                field: "start",
                reason: format!(
                    "path must enter at the top-left corner ({}, {}), got {:?}",
                    window.x0, window.y1, start
                ),
            });
        }
        let rights = steps.iter().filter(|s| **s == Step::Right).count() as i64;
        let downs = steps.len() as i64 - rights;
        if rights != window.x1 - window.x0 || downs != window.y1 - window.y0 {
            return Err(Error::MalformedShape {
                field: "steps",
                reason: format!(
                    "path ends at ({}, {}) instead of the bottom-right corner ({}, {})",
                    start.0 + rights,
                    start.1 - downs,
                    window.x1,
                    window.y0
                ),
            });
        }
        Ok(ZigzagPath { start, steps, window })
    }

    /// Path with the given steps in the smallest window, anchored so that
    /// the bottom-left window corner is the origin.
    pub fn from_steps(steps: Vec<Step>) -> Self {
        let rights = steps.iter().filter(|s| **s == Step::Right).count() as i64;
        let downs = steps.len() as i64 - rights;
        let window = Window { x0: 0, x1: rights, y0: 0, y1: downs };
        ZigzagPath::new((0, downs), steps, window).expect("steps determine their own window")
    }

    /// Fence with the given arrow orientations (forward arrows become right steps).
    pub fn from_orientations(orientations: &[Orientation]) -> Self {
        Self::from_steps(
            orientations
                .iter()
                .map(|o| match o {
                    Orientation::Forward => Step::Right,
                    Orientation::Backward => Step::Down,
                })
                .collect(),
        )
    }

    /// Parse a step string of `R` and `D` characters.
    pub fn parse_steps(s: &str) -> Result<Vec<Step>> {
        s.chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| match c.to_ascii_uppercase() {
                'R' => Ok(Step::Right),
                'D' => Ok(Step::Down),
                other => Err(Error::MalformedShape {
                    field: "steps",
                    reason: format!("unknown step {other:?}, expected R or D"),
                }),
            })
            .collect()
    }

    pub fn steps_string(&self) -> String {
        self.steps.iter().map(|s| if *s == Step::Right { 'R' } else { 'D' }).collect()
    }

    pub fn start(&self) -> (i64, i64) {
        self.start
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn window(&self) -> Window {
        self.window
    }

    /// Lattice points of the path in path order.
    pub fn points(&self) -> Vec<(i64, i64)> {
        let mut pts = Vec::with_capacity(self.steps.len() + 1);
        let mut cur = self.start;
        pts.push(cur);
        for s in &self.steps {
            cur = match s {
                Step::Right => (cur.0 + 1, cur.1),
                Step::Down => (cur.0, cur.1 - 1),
            };
            pts.push(cur);
        }
        pts
    }
}

/// Position of a window point relative to a zigzag path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    /// On the path.
    Path,
    /// Strictly above/right of the path (`R_U`).
    Upper,
    /// Strictly below/left of the path (`R_L`).
    Lower,
}

/// Label every point of the path's window, indexed by window grid id.
pub fn region_split(path: &ZigzagPath) -> Vec<Region> {
    let w = path.window();
    let pts = path.points();
    (0..w.width() * w.height())
        .map(|id| {
            let q = w.point(id);
            if pts.contains(&q) {
                return Region::Path;
            }
            let above = pts.iter().any(|p| p.0 <= q.0 && p.1 <= q.1);
            let below = pts.iter().any(|p| q.0 <= p.0 && q.1 <= p.1);
            match (above, below) {
                (true, false) => Region::Upper,
                (false, true) => Region::Lower,
                _ => unreachable!("window point {q:?} both above and below a staircase"),
            }
        })
        .collect()
}

/// Named shape of a finite poset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    Chain(usize),
    /// Product order on `{0..m} × {0..n}`.
    Grid(usize, usize),
    ZigzagFence(ZigzagPath),
    /// Points `(i, j)` of `Grid(m, n)` with `i + j > cutoff`.
    TriangleRegion { m: usize, n: usize, cutoff: i64 },
    Opposite(Box<Shape>),
    Custom,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Chain(n) => write!(f, "Chain({n})"),
            Shape::Grid(m, n) => write!(f, "Grid({m}, {n})"),
            Shape::ZigzagFence(p) => write!(f, "ZigzagFence({})", p.steps_string()),
            Shape::TriangleRegion { m, n, cutoff } => write!(f, "TriangleRegion({m}, {n}, {cutoff})"),
            Shape::Opposite(s) => write!(f, "Opposite({s})"),
            Shape::Custom => write!(f, "Custom"),
        }
    }
}

/// Serializable description of a poset, as used by module files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ShapeDescriptor {
    Chain { length: usize },
    Grid { m: usize, n: usize },
    Zigzag { start: [i64; 2], steps: String, window: [[i64; 2]; 2] },
    Triangle { m: usize, n: usize, cutoff: i64 },
    Opposite(Box<ShapeDescriptor>),
    Custom { size: usize, covers: Vec<[usize; 2]> },
}

/// A finite poset with its cover relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    shape: Shape,
    size: usize,
    leq: Vec<bool>,
    covers: Vec<(usize, usize)>,
    coords: Vec<(i64, i64)>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
}

impl FinitePoset {
    fn from_leq(shape: Shape, size: usize, leq: Vec<bool>, coords: Vec<(i64, i64)>) -> Result<Self> {
        for x in 0..size {
            if !leq[x * size + x] {
                return Err(Error::MalformedShape { field: "leq", reason: format!("{x} ≰ {x}") });
            }
            for y in 0..size {
                if x != y && leq[x * size + y] && leq[y * size + x] {
                    return Err(Error::MalformedShape {
                        field: "covers",
                        reason: format!("cycle through {x} and {y}"),
                    });
                }
                if leq[x * size + y] {
                    for z in 0..size {
                        if leq[y * size + z] && !leq[x * size + z] {
                            return Err(Error::MalformedShape {
                                field: "leq",
                                reason: format!("not transitive at {x} ≤ {y} ≤ {z}"),
                            });
                        }
                    }
                }
            }
        }
        let lt = |a: usize, b: usize| a != b && leq[a * size + b];
        let mut covers = Vec::new();
        for x in 0..size {
            for y in 0..size {
                if lt(x, y) && !(0..size).any(|z| lt(x, z) && lt(z, y)) {
                    covers.push((x, y));
                }
            }
        }
        let mut up = vec![Vec::new(); size];
        let mut down = vec![Vec::new(); size];
        for (i, &(x, y)) in covers.iter().enumerate() {
            up[x].push(i);
            down[y].push(i);
        }
        Ok(FinitePoset { shape, size, leq, covers, coords, up, down })
    }

    fn from_points(shape: Shape, points: Vec<(i64, i64)>) -> Result<Self> {
        let size = points.len();
        let mut leq = vec![false; size * size];
        for (a, p) in points.iter().enumerate() {
            for (b, q) in points.iter().enumerate() {
                leq[a * size + b] = p.0 <= q.0 && p.1 <= q.1;
            }
        }
        Self::from_leq(shape, size, leq, points)
    }

    pub fn chain(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::MalformedShape { field: "length", reason: "must be ≥ 1".into() });
        }
        Self::from_points(Shape::Chain(n), (0..n as i64).map(|i| (i, 0)).collect())
    }

    pub fn grid(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::MalformedShape { field: "grid", reason: "dimensions must be ≥ 1".into() });
        }
        let pts = (0..m as i64).flat_map(|i| (0..n as i64).map(move |j| (i, j))).collect();
        Self::from_points(Shape::Grid(m, n), pts)
    }

    pub fn triangle(m: usize, n: usize, cutoff: i64) -> Result<Self> {
        let pts: Vec<(i64, i64)> = (0..m as i64)
            .flat_map(|i| (0..n as i64).map(move |j| (i, j)))
            .filter(|&(i, j)| i + j > cutoff)
            .collect();
        if pts.is_empty() {
            return Err(Error::MalformedShape { field: "cutoff", reason: "region is empty".into() });
        }
        Self::from_points(Shape::TriangleRegion { m, n, cutoff }, pts)
    }

    pub fn zigzag(path: ZigzagPath) -> Result<Self> {
        let pts = path.points();
        Self::from_points(Shape::ZigzagFence(path), pts)
    }

    /// Poset generated by the given relations (each pair means `a ≤ b`).
    pub fn custom(size: usize, relations: &[(usize, usize)]) -> Result<Self> {
        if size == 0 {
            return Err(Error::MalformedShape { field: "size", reason: "must be ≥ 1".into() });
        }
        let mut leq = vec![false; size * size];
        for x in 0..size {
            leq[x * size + x] = true;
        }
        for &(a, b) in relations {
            if a >= size || b >= size {
                return Err(Error::MalformedShape {
                    field: "covers",
                    reason: format!("relation {a}->{b} out of range"),
                });
            }
            leq[a * size + b] = true;
        }
        // Warshall closure
        for k in 0..size {
            for i in 0..size {
                if leq[i * size + k] {
                    for j in 0..size {
                        if leq[k * size + j] {
                            leq[i * size + j] = true;
                        }
                    }
                }
            }
        }
        Self::from_leq(Shape::Custom, size, leq, Vec::new())
    }

    /// The opposite poset on the same ids; `opposite(opposite(P)) == P`.
    pub fn opposite(&self) -> Self {
        let n = self.size;
        let mut leq = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                leq[x * n + y] = self.leq[y * n + x];
            }
        }
        let (shape, coords) = match &self.shape {
            Shape::Opposite(inner) => ((**inner).clone(), self.coords_of_inner()),
            s => (Shape::Opposite(Box::new(s.clone())), Vec::new()),
        };
        Self::from_leq(shape, n, leq, coords).expect("opposite of a poset is a poset")
    }

    fn coords_of_inner(&self) -> Vec<(i64, i64)> {
        match &self.shape {
            Shape::Opposite(inner) => match **inner {
                Shape::Grid(_, n) => (0..self.size as i64).map(|id| (id / n as i64, id % n as i64)).collect(),
                Shape::Chain(_) => (0..self.size as i64).map(|i| (i, 0)).collect(),
                Shape::ZigzagFence(ref p) => p.points(),
                Shape::TriangleRegion { m, n, cutoff } => (0..m as i64)
                    .flat_map(|i| (0..n as i64).map(move |j| (i, j)))
                    .filter(|&(i, j)| i + j > cutoff)
                    .collect(),
                _ => Vec::new(),
            },
            _ => Vec::new(),
        }
    }

    pub fn build(descriptor: &ShapeDescriptor) -> Result<Self> {
        match descriptor {
            ShapeDescriptor::Chain { length } => Self::chain(*length),
            ShapeDescriptor::Grid { m, n } => Self::grid(*m, *n),
            ShapeDescriptor::Triangle { m, n, cutoff } => Self::triangle(*m, *n, *cutoff),
            ShapeDescriptor::Zigzag { start, steps, window } => {
                let w = Window { x0: window[0][0], x1: window[0][1], y0: window[1][0], y1: window[1][1] };
                let path = ZigzagPath::new((start[0], start[1]), ZigzagPath::parse_steps(steps)?, w)?;
                Self::zigzag(path)
            }
            ShapeDescriptor::Opposite(inner) => Ok(Self::build(inner)?.opposite()),
            ShapeDescriptor::Custom { size, covers } => {
                let rel: Vec<(usize, usize)> = covers.iter().map(|c| (c[0], c[1])).collect();
                let p = Self::custom(*size, &rel)?;
                Ok(p)
            }
        }
    }

    pub fn descriptor(&self) -> ShapeDescriptor {
        fn of_shape(shape: &Shape, poset: &FinitePoset) -> ShapeDescriptor {
            match shape {
                Shape::Chain(n) => ShapeDescriptor::Chain { length: *n },
                Shape::Grid(m, n) => ShapeDescriptor::Grid { m: *m, n: *n },
                Shape::TriangleRegion { m, n, cutoff } => {
                    ShapeDescriptor::Triangle { m: *m, n: *n, cutoff: *cutoff }
                }
                Shape::ZigzagFence(p) => {
                    let w = p.window();
                    ShapeDescriptor::Zigzag {
                        start: [p.start().0, p.start().1],
                        steps: p.steps_string(),
                        window: [[w.x0, w.x1], [w.y0, w.y1]],
                    }
                }
                Shape::Opposite(inner) => {
                    let base = poset.opposite();
                    ShapeDescriptor::Opposite(Box::new(of_shape(inner, &base)))
                }
                Shape::Custom => ShapeDescriptor::Custom {
                    size: poset.size,
                    covers: poset.covers.iter().map(|&(a, b)| [a, b]).collect(),
                },
            }
        }
        of_shape(&self.shape, self)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.size + y]
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// Cover arrows `(src, dst)`, sorted lexicographically.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn cover_index(&self, src: usize, dst: usize) -> Option<usize> {
        self.covers.binary_search(&(src, dst)).ok()
    }

    /// Indices of covers leaving `x`.
    pub fn up_covers(&self, x: usize) -> &[usize] {
        &self.up[x]
    }

    /// Indices of covers entering `x`.
    pub fn down_covers(&self, x: usize) -> &[usize] {
        &self.down[x]
    }

    /// Lattice coordinates for chains, grids, fences and triangular regions.
    pub fn coords(&self, x: usize) -> Option<(i64, i64)> {
        self.coords.get(x).copied()
    }

    pub fn id_at(&self, point: (i64, i64)) -> Option<usize> {
        match &self.shape {
            Shape::Grid(m, n) => {
                let (i, j) = point;
                (i >= 0 && j >= 0 && (i as usize) < *m && (j as usize) < *n)
                    .then(|| i as usize * n + j as usize)
            }
            _ => self.coords.iter().position(|&c| c == point),
        }
    }

    /// `(m, n)` for grids and triangular regions.
    pub fn grid_dims(&self) -> Option<(usize, usize)> {
        match self.shape {
            Shape::Grid(m, n) | Shape::TriangleRegion { m, n, .. } => Some((m, n)),
            _ => None,
        }
    }

    pub fn is_total(&self) -> bool {
        (0..self.size).all(|x| (0..self.size).all(|y| self.comparable(x, y)))
    }

    /// Covers along a fixed path from `x` to `y`: always take the first cover
    /// that stays below `y`.
    pub fn canonical_path(&self, x: usize, y: usize) -> Option<Vec<usize>> {
        if !self.leq(x, y) {
            return None;
        }
        let mut path = Vec::new();
        let mut cur = x;
        while cur != y {
            let &c = self.up[cur]
                .iter()
                .find(|&&c| self.leq(self.covers[c].1, y))
                .expect("a cover towards y exists below y");
            path.push(c);
            cur = self.covers[c].1;
        }
        Some(path)
    }

    fn membership(&self, set: &[usize]) -> Result<Vec<bool>> {
        let mut inside = vec![false; self.size];
        for &x in set {
            if x >= self.size {
                return Err(Error::CarrierNotSubset(x));
            }
            inside[x] = true;
        }
        Ok(inside)
    }

    pub fn is_convex(&self, set: &[usize]) -> bool {
        let Ok(inside) = self.membership(set) else { return false };
        set.iter().all(|&p| {
            set.iter().all(|&r| {
                !self.leq(p, r) || (0..self.size).all(|q| inside[q] || !(self.leq(p, q) && self.leq(q, r)))
            })
        })
    }

    /// Connected through chains of comparable elements inside the set.
    pub fn is_connected(&self, set: &[usize]) -> bool {
        let Some(&first) = set.first() else { return false };
        let Ok(inside) = self.membership(set) else { return false };
        let mut seen = vec![false; self.size];
        seen[first] = true;
        let mut queue = VecDeque::from([first]);
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for &y in set {
                if inside[y] && !seen[y] && self.comparable(x, y) {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        let distinct = inside.iter().filter(|&&b| b).count();
        count == distinct
    }

    pub fn is_interval(&self, set: &[usize]) -> bool {
        !set.is_empty() && self.is_convex(set) && self.is_connected(set)
    }

    pub fn is_ideal(&self, set: &[usize]) -> bool {
        let Ok(inside) = self.membership(set) else { return false };
        set.iter().all(|&p| (0..self.size).all(|q| inside[q] || !self.leq(q, p)))
    }

    pub fn is_filter(&self, set: &[usize]) -> bool {
        let Ok(inside) = self.membership(set) else { return false };
        set.iter().all(|&p| (0..self.size).all(|q| inside[q] || !self.leq(p, q)))
    }

    /// Every pair has an upper bound inside the set.
    pub fn is_directed(&self, set: &[usize]) -> bool {
        !set.is_empty()
            && set.iter().all(|&p| {
                set.iter().all(|&q| set.iter().any(|&c| self.leq(p, c) && self.leq(q, c)))
            })
    }

    /// Maximal elements of a subset.
    pub fn maximal(&self, set: &[usize]) -> Vec<usize> {
        set.iter().copied().filter(|&x| !set.iter().any(|&y| self.lt(x, y))).collect()
    }
}

/// A non-empty, convex and connected subset of a poset, sorted by id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Interval {
    elements: Vec<usize>,
}

impl Interval {
    pub fn new(poset: &FinitePoset, elements: &[usize]) -> Result<Self> {
        let mut elements = elements.to_vec();
        elements.sort_unstable();
        elements.dedup();
        if let Some(&bad) = elements.iter().find(|&&x| x >= poset.len()) {
            return Err(Error::CarrierNotSubset(bad));
        }
        if elements.is_empty() {
            return Err(Error::NotAnInterval("empty carrier".into()));
        }
        if !poset.is_convex(&elements) {
            return Err(Error::NotAnInterval(format!("{elements:?} is not convex")));
        }
        if !poset.is_connected(&elements) {
            return Err(Error::NotAnInterval(format!("{elements:?} is not connected")));
        }
        Ok(Interval { elements })
    }

    pub fn full(poset: &FinitePoset) -> Self {
        Interval { elements: poset.elements().collect() }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Block types of a two-parameter carrier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockType {
    /// ideal × ideal
    Db,
    /// filter × filter
    Bb,
    /// interval × everything
    Vb,
    /// everything × interval
    Hb,
}

impl BlockType {
    pub const ALL: [BlockType; 4] = [BlockType::Db, BlockType::Bb, BlockType::Vb, BlockType::Hb];

    pub fn tag(self) -> &'static str {
        match self {
            BlockType::Db => "db",
            BlockType::Bb => "bb",
            BlockType::Vb => "vb",
            BlockType::Hb => "hb",
        }
    }

    /// The type a block becomes under coordinate reversal.
    pub fn reversed(self) -> BlockType {
        match self {
            BlockType::Db => BlockType::Bb,
            BlockType::Bb => BlockType::Db,
            t => t,
        }
    }
}

impl fmt::Display for BlockType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Block types of `carrier`, or `None` if it is not a block (on a triangular
/// region: not the intersection of a block of the ambient grid with the region).
///
/// For each type the smallest block of that type containing the carrier is
/// unique, and any larger one meets the region in a superset, so it suffices
/// to test that one candidate per type.
pub fn classify_block(carrier: &[usize], poset: &FinitePoset) -> Result<Option<BTreeSet<BlockType>>> {
    let Some((m, n)) = poset.grid_dims() else {
        return Err(Error::NotGridLike(poset.shape().to_string()));
    };
    let mut inside = vec![false; poset.len()];
    for &x in carrier {
        if x >= poset.len() {
            return Err(Error::CarrierNotSubset(x));
        }
        inside[x] = true;
    }
    if carrier.is_empty() {
        return Ok(None);
    }
    let pts: Vec<(i64, i64)> = carrier.iter().map(|&x| poset.coords(x).unwrap()).collect();
    let xmin = pts.iter().map(|p| p.0).min().unwrap();
    let xmax = pts.iter().map(|p| p.0).max().unwrap();
    let ymin = pts.iter().map(|p| p.1).min().unwrap();
    let ymax = pts.iter().map(|p| p.1).max().unwrap();
    let (mx, ny) = (m as i64 - 1, n as i64 - 1);

    let matches = |x0: i64, x1: i64, y0: i64, y1: i64| {
        poset.elements().all(|e| {
            let (i, j) = poset.coords(e).unwrap();
            let in_box = (x0..=x1).contains(&i) && (y0..=y1).contains(&j);
            in_box == inside[e]
        })
    };

    let mut types = BTreeSet::new();
    if matches(0, xmax, 0, ymax) {
        types.insert(BlockType::Db);
    }
    if matches(xmin, mx, ymin, ny) {
        types.insert(BlockType::Bb);
    }
    if matches(xmin, xmax, 0, ny) {
        types.insert(BlockType::Vb);
    }
    if matches(0, mx, ymin, ymax) {
        types.insert(BlockType::Hb);
    }
    Ok((!types.is_empty()).then_some(types))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closure_of_covers(p: &FinitePoset) -> Vec<bool> {
        let n = p.len();
        let mut reach = vec![false; n * n];
        for x in 0..n {
            reach[x * n + x] = true;
            let mut stack = vec![x];
            while let Some(z) = stack.pop() {
                for &c in p.up_covers(z) {
                    let y = p.covers()[c].1;
                    if !reach[x * n + y] {
                        reach[x * n + y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        reach
    }

    fn assert_closure(p: &FinitePoset) {
        let reach = closure_of_covers(p);
        for x in p.elements() {
            for y in p.elements() {
                assert_eq!(reach[x * p.len() + y], p.leq(x, y), "{x} {y}");
            }
        }
    }

    #[test]
    fn chain_has_n_minus_one_covers() {
        let c = FinitePoset::chain(3).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.covers(), &[(0, 1), (1, 2)]);
        assert!(c.is_total());
        assert_closure(&c);
    }

    #[test]
    fn grid_cover_count() {
        let g = FinitePoset::grid(2, 2).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g.covers().len(), 4);
        for (m, n) in [(1, 1), (1, 5), (3, 4), (6, 6)] {
            let g = FinitePoset::grid(m, n).unwrap();
            assert_eq!(g.covers().len(), m * (n - 1) + n * (m - 1));
            assert_closure(&g);
        }
        let g = FinitePoset::grid(3, 4).unwrap();
        assert_eq!(g.coords(7), Some((1, 3)));
        assert_eq!(g.id_at((2, 1)), Some(9));
    }

    #[test]
    fn zigzag_fence_right_down_right() {
        let path = ZigzagPath::new(
            (0, 1),
            vec![Step::Right, Step::Down, Step::Right],
            Window { x0: 0, x1: 2, y0: 0, y1: 1 },
        )
        .unwrap();
        let z = FinitePoset::zigzag(path).unwrap();
        assert_eq!(z.len(), 4);
        // x1 ≤ x2 ≥ x3 ≤ x4 and nothing else
        assert!(z.lt(0, 1) && z.lt(2, 1) && z.lt(2, 3));
        assert!(!z.comparable(0, 2) && !z.comparable(0, 3) && !z.comparable(1, 3));
        assert_eq!(z.covers(), &[(0, 1), (2, 1), (2, 3)]);
    }

    #[test]
    fn zigzag_path_must_cross_window() {
        let w = Window { x0: 0, x1: 3, y0: 0, y1: 2 };
        let err = ZigzagPath::new((0, 2), vec![Step::Right, Step::Down, Step::Right], w).unwrap_err();
        assert!(matches!(err, Error::MalformedShape { field: "steps", .. }));
        let err = ZigzagPath::new((0, 1), vec![Step::Right; 3], w).unwrap_err();
        assert!(matches!(err, Error::MalformedShape { field: "start", .. }));
    }

    #[test]
    fn region_labels() {
        // RDRRD in a 4×3 window: (0,2) (1,2) (1,1) (2,1) (3,1) (3,0)
        let w = Window { x0: 0, x1: 3, y0: 0, y1: 2 };
        let path = ZigzagPath::new((0, 2), ZigzagPath::parse_steps("RDRRD").unwrap(), w).unwrap();
        let labels = region_split(&path);
        let at = |x, y| labels[w.grid_id((x, y))];
        assert_eq!(at(1, 2), Region::Path);
        assert_eq!(at(3, 2), Region::Upper);
        assert_eq!(at(2, 2), Region::Upper);
        assert_eq!(at(0, 0), Region::Lower);
        // oracle: independent pointwise comparison against all path points
        let pts = path.points();
        for id in 0..12 {
            let q = w.point(id);
            let expected = if pts.contains(&q) {
                Region::Path
            } else if pts.iter().any(|p| p.0 <= q.0 && p.1 <= q.1) {
                Region::Upper
            } else {
                Region::Lower
            };
            assert_eq!(labels[id], expected);
        }
        let table: String = (0..3)
            .rev()
            .map(|y| {
                (0..4)
                    .map(|x| match at(x, y) {
                        Region::Path => 'Z',
                        Region::Upper => 'U',
                        Region::Lower => 'L',
                    })
                    .collect::<String>()
            })
            .collect::<Vec<_>>()
            .join("/");
        assert_eq!(table, "ZZUU/LZZZ/LLLZ");
    }

    #[test]
    fn opposite_is_involutive() {
        for p in [
            FinitePoset::grid(3, 2).unwrap(),
            FinitePoset::chain(4).unwrap(),
            FinitePoset::custom(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap(),
        ] {
            let op = p.opposite();
            assert!(matches!(op.shape(), Shape::Opposite(_)));
            assert_closure(&op);
            assert_eq!(op.opposite(), p);
        }
    }

    #[test]
    fn custom_poset_reduces_redundant_relations() {
        let p = FinitePoset::custom(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
        assert!(FinitePoset::custom(2, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn interval_checks() {
        let g = FinitePoset::grid(2, 2).unwrap();
        // {(0,0), (1,1)} skips (0,1)
        assert!(matches!(Interval::new(&g, &[0, 3]), Err(Error::NotAnInterval(_))));
        assert!(Interval::new(&g, &[0, 1]).is_ok());
        assert!(Interval::new(&g, &[0, 1, 3]).is_err());
        // (0,1) and (1,0) are incomparable
        assert!(Interval::new(&g, &[1, 2]).is_err());
        assert!(matches!(Interval::new(&g, &[]), Err(Error::NotAnInterval(_))));
        assert!(matches!(Interval::new(&g, &[9]), Err(Error::CarrierNotSubset(9))));
    }

    #[test]
    fn classify_examples() {
        let g = FinitePoset::grid(2, 2).unwrap();
        let all: BTreeSet<_> = BlockType::ALL.into_iter().collect();
        assert_eq!(classify_block(&[0, 1, 2, 3], &g).unwrap(), Some(all));
        assert_eq!(classify_block(&[0], &g).unwrap(), Some(BTreeSet::from([BlockType::Db])));
        assert_eq!(classify_block(&[3], &g).unwrap(), Some(BTreeSet::from([BlockType::Bb])));
        assert_eq!(classify_block(&[1], &g).unwrap(), None);
        assert!(matches!(classify_block(&[7], &g), Err(Error::CarrierNotSubset(7))));
        let c = FinitePoset::chain(3).unwrap();
        assert!(matches!(classify_block(&[0], &c), Err(Error::NotGridLike(_))));
    }

    #[test]
    fn classify_on_triangle() {
        // 3×3 with i + j > 1
        let t = FinitePoset::triangle(3, 3, 1).unwrap();
        assert_eq!(t.len(), 6);
        // db block [0,1]×[0,1] meets the region in {(1,1)}
        let c = [t.id_at((1, 1)).unwrap()];
        let types = classify_block(&c, &t).unwrap().unwrap();
        assert!(types.contains(&BlockType::Db));
        // (0,2) and (1,1) are incomparable, so the pair is not even connected
        let c = [t.id_at((0, 2)).unwrap(), t.id_at((1, 1)).unwrap()];
        assert_eq!(classify_block(&c, &t).unwrap(), None);
    }

    /// Every block carrier on grids up to 6×6 is an interval.
    #[test]
    fn block_carriers_are_intervals() {
        for m in 1..=6 {
            for n in 1..=6 {
                let g = FinitePoset::grid(m, n).unwrap();
                for a in 0..m {
                    for b in a..m {
                        for c in 0..n {
                            for d in c..n {
                                let carrier: Vec<usize> =
                                    (a..=b).flat_map(|i| (c..=d).map(move |j| i * n + j)).collect();
                                if classify_block(&carrier, &g).unwrap().is_some() {
                                    assert!(g.is_interval(&carrier));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn db_reverses_to_bb() {
        let (m, n) = (4, 3);
        let g = FinitePoset::grid(m, n).unwrap();
        let rev = |x: usize| {
            let (i, j) = g.coords(x).unwrap();
            g.id_at((m as i64 - 1 - i, n as i64 - 1 - j)).unwrap()
        };
        for a in 0..m {
            for b in a..m {
                for c in 0..n {
                    for d in c..n {
                        let carrier: Vec<usize> =
                            (a..=b).flat_map(|i| (c..=d).map(move |j| i * n + j)).collect();
                        let mirrored: Vec<usize> = carrier.iter().map(|&x| rev(x)).collect();
                        let t = classify_block(&carrier, &g).unwrap().unwrap_or_default();
                        let u = classify_block(&mirrored, &g).unwrap().unwrap_or_default();
                        let t_rev: BTreeSet<_> = t.iter().map(|b| b.reversed()).collect();
                        assert_eq!(t_rev, u);
                    }
                }
            }
        }
    }

    #[test]
    fn descriptor_roundtrip() {
        for d in [
            ShapeDescriptor::Chain { length: 4 },
            ShapeDescriptor::Grid { m: 2, n: 3 },
            ShapeDescriptor::Triangle { m: 3, n: 3, cutoff: 1 },
            ShapeDescriptor::Zigzag { start: [0, 1], steps: "RDR".into(), window: [[0, 2], [0, 1]] },
            ShapeDescriptor::Opposite(Box::new(ShapeDescriptor::Grid { m: 2, n: 2 })),
            ShapeDescriptor::Custom { size: 3, covers: vec![[0, 2], [1, 2]] },
        ] {
            let p = FinitePoset::build(&d).unwrap();
            assert_eq!(p.descriptor(), d);
        }
    }
}
