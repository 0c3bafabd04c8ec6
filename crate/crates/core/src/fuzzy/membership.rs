//! Piecewise-linear membership functions and the discretized universes they live on.

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// Closed interval `[lo, hi]` sampled at `resolution` evenly spaced points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Universe<T> {
    pub lo: T,
    pub hi: T,
    pub resolution: usize,
}

/// Sample count used for output universes when none is given.
pub const DEFAULT_RESOLUTION: usize = 1001;

impl<T: Scalar> Universe<T> {
    pub fn new(lo: T, hi: T, resolution: usize) -> Self {
        Self { lo, hi, resolution }
    }

    pub fn with_default_resolution(lo: T, hi: T) -> Self {
        Self::new(lo, hi, DEFAULT_RESOLUTION)
    }

    /// `lo < hi`, finite bounds, `resolution >= 3` and odd.
    pub fn is_well_formed(&self) -> bool {
        self.lo.is_finite()
            && self.hi.is_finite()
            && self.lo < self.hi
            && self.resolution >= 3
            && self.resolution % 2 == 1
    }

    pub fn step(&self) -> T {
        (self.hi - self.lo) / T::of((self.resolution - 1) as f64)
    }

    /// The `i`-th sample point. The last sample is exactly `hi`.
    pub fn sample(&self, i: usize) -> T {
        if i + 1 == self.resolution {
            return self.hi;
        }
        let frac = T::of(i as f64) / T::of((self.resolution - 1) as f64);
        self.lo + (self.hi - self.lo) * frac
    }

    pub fn samples(&self) -> impl Iterator<Item = T> + '_ {
        (0..self.resolution).map(move |i| self.sample(i))
    }

    pub fn contains(&self, x: T) -> bool {
        x >= self.lo && x <= self.hi
    }

    pub fn clamp(&self, x: T) -> T {
        x.max(self.lo).min(self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeKind {
    Triangle,
    Trapezoid,
}

impl ShapeKind {
    pub fn breakpoint_count(self) -> usize {
        match self {
            ShapeKind::Triangle => 3,
            ShapeKind::Trapezoid => 4,
        }
    }
}

/// Triangle `(a, b, c)` or trapezoid `(a, b, c, d)`.
///
/// Both are stored as a trapezoid; a triangle has its plateau collapsed to the
/// single point `b`. Degenerate ramps (`a == b` or `c == d`) give shoulders.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipFunction<T> {
    kind: ShapeKind,
    points: [T; 4],
}

impl<T: Scalar> MembershipFunction<T> {
    pub fn triangle(a: T, b: T, c: T) -> Self {
        Self {
            kind: ShapeKind::Triangle,
            points: [a, b, b, c],
        }
    }

    pub fn trapezoid(a: T, b: T, c: T, d: T) -> Self {
        Self {
            kind: ShapeKind::Trapezoid,
            points: [a, b, c, d],
        }
    }

    /// Builds a shape from its kind and a breakpoint slice of the matching length.
    pub fn from_breakpoints(kind: ShapeKind, bp: &[T]) -> Option<Self> {
        match (kind, bp) {
            (ShapeKind::Triangle, &[a, b, c]) => Some(Self::triangle(a, b, c)),
            (ShapeKind::Trapezoid, &[a, b, c, d]) => Some(Self::trapezoid(a, b, c, d)),
            _ => None,
        }
    }

    pub fn kind(&self) -> ShapeKind {
        self.kind
    }

    /// Breakpoints as declared (3 for a triangle, 4 for a trapezoid).
    pub fn breakpoints(&self) -> Vec<T> {
        match self.kind {
            ShapeKind::Triangle => vec![self.points[0], self.points[1], self.points[3]],
            ShapeKind::Trapezoid => self.points.to_vec(),
        }
    }

    pub fn is_ordered(&self) -> bool {
        self.points.iter().all(|p| p.is_finite()) && self.points.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn support_start(&self) -> T {
        self.points[0]
    }

    pub fn support_end(&self) -> T {
        self.points[3]
    }

    /// `[b, c]`, where the degree is exactly one.
    pub fn core(&self) -> (T, T) {
        (self.points[1], self.points[2])
    }

    /// Degree of membership of `x`. Total: zero outside the support, including NaN.
    pub fn eval(&self, x: T) -> T {
        let [a, b, c, d] = self.points;
        if !(x >= a && x <= d) {
            return T::zero();
        }
        if x >= b && x <= c {
            return T::one();
        }
        if x < b {
            (x - a) / (b - a)
        } else {
            (d - x) / (d - c)
        }
    }

    /// Largest slope magnitude of the shape, i.e. its Lipschitz constant.
    pub fn lipschitz(&self) -> T {
        let [a, b, c, d] = self.points;
        let rise = if b > a { T::one() / (b - a) } else { T::zero() };
        let fall = if d > c { T::one() / (d - c) } else { T::zero() };
        rise.max(fall)
    }

    /// Where the degree is positive, as `(left, left_closed, right, right_closed)`.
    pub(crate) fn positive_interval(&self) -> (T, bool, T, bool) {
        let [a, b, c, d] = self.points;
        (a, a == b, d, c == d)
    }
}

/// Anything that assigns a degree to a point of a universe.
pub trait FuzzySet<T> {
    fn degree(&self, x: T) -> T;
}

impl<T: Scalar> FuzzySet<T> for MembershipFunction<T> {
    fn degree(&self, x: T) -> T {
        self.eval(x)
    }
}

impl<T, F: Fn(T) -> T> FuzzySet<T> for F {
    fn degree(&self, x: T) -> T {
        self(x)
    }
}

/// A consequent term truncated at a rule's firing strength.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClippedSet<T> {
    pub base: MembershipFunction<T>,
    pub height: T,
}

impl<T: Scalar> ClippedSet<T> {
    pub fn new(base: MembershipFunction<T>, height: T) -> Self {
        let height = height.max(T::zero()).min(T::one());
        Self { base, height }
    }
}

impl<T: Scalar> FuzzySet<T> for ClippedSet<T> {
    fn degree(&self, x: T) -> T {
        self.base.eval(x).min(self.height)
    }
}

/// Pointwise maximum of several clipped sets.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Aggregate<T> {
    pub parts: Vec<ClippedSet<T>>,
}

impl<T: Scalar> FuzzySet<T> for Aggregate<T> {
    fn degree(&self, x: T) -> T {
        self.parts
            .iter()
            .fold(T::zero(), |acc, p| acc.max(p.degree(x)))
    }
}
