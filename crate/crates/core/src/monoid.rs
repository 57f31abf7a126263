//! The finite cyclic monoid `C_{m,q}` of index `m` and period `q`, with
//! elements stored as their representatives `0..m+q`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("period must be at least 1")]
    ZeroPeriod,
    #[error("index + period must be at least 2, got C_{{{m},{q}}}")]
    TooSmall { m: usize, q: usize },
    #[error("element {0} is not a canonical representative")]
    NotCanonical(usize),
    #[error("arrows are not composable: {0} does not end where {1} starts")]
    NotComposable(Arrow, Arrow),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CyclicMonoid {
    m: usize,
    q: usize,
}

impl CyclicMonoid {
    pub fn new(index: usize, period: usize) -> Result<Self, MonoidError> {
        if period == 0 {
            return Err(MonoidError::ZeroPeriod);
        }
        if index + period < 2 {
            return Err(MonoidError::TooSmall {
                m: index,
                q: period,
            });
        }
        Ok(CyclicMonoid {
            m: index,
            q: period,
        })
    }

    pub fn index(&self) -> usize {
        self.m
    }

    pub fn period(&self) -> usize {
        self.q
    }

    /// Number of elements, `m + q`.
    pub fn order(&self) -> usize {
        self.m + self.q
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn is_element(&self, x: usize) -> bool {
        x < self.order()
    }

    /// The projection `℘` from the naturals onto representatives.
    pub fn project(&self, x: usize) -> usize {
        if x < self.order() {
            x
        } else {
            self.m + (x - self.m) % self.q
        }
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        debug_assert!(self.is_element(x) && self.is_element(y));
        self.project(x + y)
    }

    /// `r·x`, computed without overflow for any `r`.
    pub fn scalar(&self, r: usize, x: usize) -> usize {
        debug_assert!(self.is_element(x));
        let p = r as u128 * x as u128;
        if p < self.order() as u128 {
            p as usize
        } else {
            let (m, q) = (self.m as u128, self.q as u128);
            (m + (p - m) % q) as usize
        }
    }

    /// The composite `g ∘ f` in the factorization category.
    pub fn compose_arrows(&self, g: Arrow, f: Arrow) -> Result<Arrow, MonoidError> {
        for a in [g, f] {
            for c in [a.left, a.center, a.right] {
                if !self.is_element(c) {
                    return Err(MonoidError::NotCanonical(c));
                }
            }
        }
        if g.center != self.codomain(f) {
            return Err(MonoidError::NotComposable(g, f));
        }
        Ok(Arrow {
            left: self.add(g.left, f.left),
            center: f.center,
            right: self.add(f.right, g.right),
        })
    }

    pub fn codomain(&self, a: Arrow) -> usize {
        self.add(self.add(a.left, a.center), a.right)
    }

    /// `2q / gcd(m, q)`.
    pub fn cohomological_period(&self) -> usize {
        2 * self.q / gcd(self.m, self.q)
    }
}

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl fmt::Display for CyclicMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C_{{{},{}}}", self.m, self.q)
    }
}

/// The arrow `(u, y, v): y → u ⊕ y ⊕ v`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Arrow {
    pub left: usize,
    pub center: usize,
    pub right: usize,
}

impl Arrow {
    pub fn new(left: usize, center: usize, right: usize) -> Self {
        Arrow {
            left,
            center,
            right,
        }
    }

    pub fn identity(x: usize) -> Self {
        Arrow {
            left: 0,
            center: x,
            right: 0,
        }
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.left, self.center, self.right)
    }
}
