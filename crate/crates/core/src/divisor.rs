//! Divisors, vertex functions and chip-firing.

use std::ops::{Add, Index, Neg, Sub};

use num::{BigInt, BigRational, FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::linalg;

macro_rules! vertex_values {
    ($(#[$meta:meta])* $name:ident, $elem:ty) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(pub(crate) Vec<$elem>);

        impl $name {
            pub fn new(values: Vec<$elem>) -> Self {
                $name(values)
            }

            pub fn zero(n: usize) -> Self {
                $name(vec![<$elem>::zero(); n])
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn values(&self) -> &[$elem] {
                &self.0
            }

            pub fn into_values(self) -> Vec<$elem> {
                self.0
            }

            pub fn iter(&self) -> std::slice::Iter<'_, $elem> {
                self.0.iter()
            }

            /// Sum of all values.
            pub fn total(&self) -> $elem {
                self.0.iter().sum()
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|x| x.is_zero())
            }
        }

        impl Index<usize> for $name {
            type Output = $elem;

            fn index(&self, v: usize) -> &$elem {
                &self.0[v]
            }
        }

        impl From<Vec<$elem>> for $name {
            fn from(values: Vec<$elem>) -> Self {
                $name(values)
            }
        }

        impl Add for &$name {
            type Output = $name;

            fn add(self, rhs: &$name) -> $name {
                assert_eq!(self.len(), rhs.len(), "vertex count mismatch");
                $name(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
            }
        }

        impl Sub for &$name {
            type Output = $name;

            fn sub(self, rhs: &$name) -> $name {
                assert_eq!(self.len(), rhs.len(), "vertex count mismatch");
                $name(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
            }
        }

        impl Neg for &$name {
            type Output = $name;

            fn neg(self) -> $name {
                $name(self.0.iter().map(|a| -a).collect())
            }
        }
    };
}

vertex_values!(
    /// An integer divisor: a number of chips on every vertex.
    Divisor, BigInt
);
vertex_values!(
    /// A divisor with exact rational values.
    RDivisor, BigRational
);
vertex_values!(
    /// An integer-valued vertex function.
    FiringScript, BigInt
);
vertex_values!(
    /// A rational-valued vertex function.
    RFunction, BigRational
);

impl Divisor {
    pub fn from_i64s(values: &[i64]) -> Self {
        Divisor(values.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn degree(&self) -> BigInt {
        self.total()
    }

    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    pub fn is_effective_away_from(&self, set: &VertexSet) -> bool {
        self.0.iter().enumerate().all(|(v, x)| set.contains(v) || !x.is_negative())
    }

    /// Vertices carrying a negative value.
    pub fn negative_support(&self) -> VertexSet {
        (0..self.len()).filter(|&v| self.0[v].is_negative()).collect()
    }

    pub fn support(&self) -> VertexSet {
        (0..self.len()).filter(|&v| !self.0[v].is_zero()).collect()
    }

    pub fn to_rational(&self) -> RDivisor {
        RDivisor(self.0.iter().cloned().map(BigRational::from_integer).collect())
    }

    /// `self + div(f)`.
    pub fn apply(&self, g: &Graph, f: &FiringScript) -> Divisor {
        self + &principal_divisor(g, f)
    }
}

impl RDivisor {
    pub fn from_ratios(values: &[(i64, i64)]) -> Self {
        RDivisor(values.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect())
    }

    pub fn from_i64s(values: &[i64]) -> Self {
        RDivisor(values.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn degree(&self) -> BigRational {
        self.total()
    }

    pub fn support(&self) -> VertexSet {
        (0..self.len()).filter(|&v| !self.0[v].is_zero()).collect()
    }

    pub fn is_effective_away_from(&self, set: &VertexSet) -> bool {
        self.0.iter().enumerate().all(|(v, x)| set.contains(v) || !x.is_negative())
    }
}

impl From<&Divisor> for RDivisor {
    fn from(d: &Divisor) -> Self {
        d.to_rational()
    }
}

impl FiringScript {
    pub fn from_i64s(values: &[i64]) -> Self {
        FiringScript(values.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// The characteristic function of `set`.
    pub fn indicator(n: usize, set: &VertexSet) -> Self {
        FiringScript((0..n).map(|v| if set.contains(v) { BigInt::one() } else { BigInt::zero() }).collect())
    }

    pub fn min_value(&self) -> Option<&BigInt> {
        self.0.iter().min()
    }

    pub fn max_value(&self) -> Option<&BigInt> {
        self.0.iter().max()
    }

    /// Shift so that the smallest value is 0. The principal divisor is unchanged.
    pub fn normalize_min_zero(&self) -> FiringScript {
        match self.min_value() {
            Some(m) => FiringScript(self.0.iter().map(|x| x - m).collect()),
            None => self.clone(),
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.min_value().map_or(true, Zero::is_zero)
    }

    /// The superlevel sets `F_i = {v : f(v) >= i}` for `i = 1..=max f`.
    ///
    /// Firing them one after another from `d` yields `d + div(f)`.
    pub fn level_sets(&self) -> Result<Vec<VertexSet>> {
        if !self.is_normalized() {
            return Err(Error::NotNormalized);
        }
        let top = self
            .max_value()
            .map(|m| m.to_u64().expect("firing script too large to expand into level sets"))
            .unwrap_or(0);
        Ok((1..=top)
            .map(|i| {
                let i = BigInt::from(i);
                (0..self.len()).filter(|&v| self.0[v] >= i).collect()
            })
            .collect())
    }

    pub fn to_rational(&self) -> RFunction {
        RFunction(self.0.iter().cloned().map(BigRational::from_integer).collect())
    }
}

impl RFunction {
    pub fn from_ratios(values: &[(i64, i64)]) -> Self {
        RFunction(values.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect())
    }

    pub fn min_value(&self) -> Option<&BigRational> {
        self.0.iter().min()
    }

    pub fn normalize_min_zero(&self) -> RFunction {
        match self.min_value() {
            Some(m) => RFunction(self.0.iter().map(|x| x - m).collect()),
            None => self.clone(),
        }
    }

    /// `U_0(f)`: the vertices where `f` vanishes.
    pub fn zero_set(&self) -> VertexSet {
        (0..self.len()).filter(|&v| self.0[v].is_zero()).collect()
    }

    pub fn scale(&self, k: &BigRational) -> RFunction {
        RFunction(self.0.iter().map(|x| x * k).collect())
    }

    pub fn shift(&self, k: &BigRational) -> RFunction {
        RFunction(self.0.iter().map(|x| x + k).collect())
    }
}

fn principal<T>(g: &Graph, f: &[T]) -> Vec<T>
where
    T: Clone + Zero + FromPrimitive,
    for<'a> &'a T: Sub<&'a T, Output = T>,
    for<'a> T: std::ops::AddAssign<T> + std::ops::Mul<T, Output = T>,
{
    assert_eq!(f.len(), g.num_vertices(), "vertex count mismatch");
    (0..g.num_vertices())
        .map(|v| {
            let mut acc = T::zero();
            for &(w, m) in g.neighbors(v) {
                acc += T::from_u32(m).expect("multiplicity fits") * (&f[w] - &f[v]);
            }
            acc
        })
        .collect()
}

/// `div(f)_v = sum over edges vw of f(w) - f(v)`. Loops contribute nothing.
pub fn principal_divisor(g: &Graph, f: &FiringScript) -> Divisor {
    Divisor(principal(g, &f.0))
}

pub fn principal_rdivisor(g: &Graph, f: &RFunction) -> RDivisor {
    RDivisor(principal(g, &f.0))
}

/// Chip-firing move along `set`: `d + div(1_set)`.
pub fn fire_set(g: &Graph, d: &Divisor, set: &VertexSet) -> Result<Divisor> {
    g.check_set(set)?;
    Ok(fire_unchecked(g, d, set))
}

pub(crate) fn fire_unchecked(g: &Graph, d: &Divisor, set: &VertexSet) -> Divisor {
    let mut out = d.clone();
    for v in 0..g.num_vertices() {
        if set.contains(v) {
            let outside: u64 = g
                .neighbors(v)
                .iter()
                .filter(|(w, _)| !set.contains(*w))
                .map(|&(_, m)| u64::from(m))
                .sum();
            out.0[v] -= outside;
        } else {
            out.0[v] += g.edges_into(v, set);
        }
    }
    out
}

/// A script `f` with minimum 0 and `e = d + div(f)`, or `None` when the two
/// divisors are not linearly equivalent.
///
/// Solves `div(f) = e - d` over the rationals with `f` pinned to 0 at the
/// first vertex; the divisors are equivalent exactly when that solution is
/// integral.
pub fn linear_equivalence_witness(g: &Graph, d: &Divisor, e: &Divisor) -> Option<FiringScript> {
    if d.degree() != e.degree() {
        return None;
    }
    let target = (e - d).to_rational();
    let f = linalg::solve_potential(g, target.values()).expect("connected graph gives a non-singular system");
    if !f.iter().all(linalg::is_integral) {
        return None;
    }
    Some(FiringScript(f.into_iter().map(|x| x.to_integer()).collect()).normalize_min_zero())
}

pub fn linearly_equivalent(g: &Graph, d: &Divisor, e: &Divisor) -> bool {
    linear_equivalence_witness(g, d, e).is_some()
}

/// `k_v = 2 g_v - 2 + val(v)`.
pub fn canonical_divisor(g: &Graph) -> Divisor {
    Divisor(
        (0..g.num_vertices())
            .map(|v| BigInt::from(2 * g.weight(v) + g.valence(v)) - 2)
            .collect(),
    )
}

/// `k - d`.
pub fn residual(g: &Graph, d: &Divisor) -> Divisor {
    &canonical_divisor(g) - d
}
