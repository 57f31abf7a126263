use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{Int, IntMatrix};
use super::AlgebraError;

/// A finitely generated abelian group `Z^r ⊕ Z/d₁ ⊕ … ⊕ Z/d_k` in normal
/// form: every `dᵢ ≥ 2` and `d₁ | d₂ | … | d_k`.
///
/// Coordinates are ordered free first, then torsion in the listed order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct AbGroup {
    free_rank: usize,
    torsion: Vec<Int>,
}

/// The canonical answer type for every computed (co)homology group.
pub type GroupDecomposition = AbGroup;

impl AbGroup {
    pub fn new(free_rank: usize, torsion: Vec<Int>) -> Result<Self, AlgebraError> {
        let two = Int::from(2);
        if let Some(d) = torsion.iter().find(|d| **d < two) {
            return Err(AlgebraError::NotCanonical(format!(
                "torsion order {d} is below 2"
            )));
        }
        if let Some(w) = torsion.windows(2).find(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(AlgebraError::NotCanonical(format!(
                "{} does not divide {}",
                w[0], w[1]
            )));
        }
        Ok(AbGroup { free_rank, torsion })
    }

    /// Convenience constructor from machine integers; panics when not canonical.
    pub fn from_parts(free_rank: usize, torsion: &[u64]) -> Self {
        Self::new(free_rank, torsion.iter().map(|&d| Int::from(d)).collect())
            .expect("non-canonical torsion list")
    }

    pub fn trivial() -> Self {
        AbGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        AbGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn integers() -> Self {
        Self::free(1)
    }

    /// `Z/n`; `Z/0 = Z` and `Z/1 = 0`.
    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => Self::integers(),
            1 => Self::trivial(),
            _ => AbGroup {
                free_rank: 0,
                torsion: vec![Int::from(n)],
            },
        }
    }

    /// Canonical form of `Z^r ⊕ Z/o₁ ⊕ …` for arbitrary orders `oᵢ ≥ 0`.
    pub fn from_orders(free_rank: usize, orders: &[Int]) -> Self {
        let k = free_rank + orders.len();
        let mut diag = vec![Int::zero(); free_rank];
        diag.extend(orders.iter().map(Signed::abs));
        let relations = IntMatrix::diagonal(k, k, &diag);
        super::lattice::cokernel(&relations, k).expect("square relation matrix")
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[Int] {
        &self.torsion
    }

    /// Number of coordinates (free plus torsion generators).
    pub fn ngens(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.ngens() == 0
    }

    /// Order of coordinate `i`: `0` for a free coordinate.
    pub fn coord_order(&self, i: usize) -> Int {
        if i < self.free_rank {
            Int::zero()
        } else {
            self.torsion[i - self.free_rank].clone()
        }
    }

    /// Orders of all coordinates, `0` for free ones.
    pub fn coord_orders(&self) -> Vec<Int> {
        (0..self.ngens()).map(|i| self.coord_order(i)).collect()
    }

    /// Reduces a coordinate vector into canonical residues.
    pub fn reduce(&self, v: &mut [Int]) {
        debug_assert_eq!(v.len(), self.ngens());
        for (i, d) in self.torsion.iter().enumerate() {
            let e = &mut v[self.free_rank + i];
            *e = e.mod_floor(d);
        }
    }

    pub fn is_zero_element(&self, v: &[Int]) -> bool {
        v.iter().enumerate().all(|(i, x)| {
            let d = self.coord_order(i);
            if d.is_zero() {
                x.is_zero()
            } else {
                x.is_multiple_of(&d)
            }
        })
    }

    /// Direct sum, put back into canonical form.
    pub fn direct_sum(&self, other: &AbGroup) -> AbGroup {
        let orders: Vec<Int> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        Self::from_orders(self.free_rank + other.free_rank, &orders)
    }

    /// Total order when the group is finite.
    pub fn order(&self) -> Option<Int> {
        (self.free_rank == 0).then(|| self.torsion.iter().fold(Int::one(), |acc, d| acc * d))
    }
}

/// Structure theorem: canonical forms are equal iff the groups are isomorphic.
pub fn groups_isomorphic(g: &GroupDecomposition, h: &GroupDecomposition) -> bool {
    g == h
}

impl fmt::Display for AbGroup {
    /// `Z^r + Z/d1 + …`, with `0` for the trivial group.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_broken_chains() {
        assert!(AbGroup::new(0, vec![Int::from(4), Int::from(6)]).is_err());
        assert!(AbGroup::new(0, vec![Int::from(1)]).is_err());
        assert!(AbGroup::new(1, vec![Int::from(2), Int::from(4)]).is_ok());
    }

    #[test]
    fn isomorphism_is_canonical_equality() {
        let a = AbGroup::from_parts(1, &[2]);
        assert!(groups_isomorphic(&a, &AbGroup::from_parts(1, &[2])));
        assert!(!groups_isomorphic(
            &AbGroup::cyclic(4),
            &AbGroup::from_parts(0, &[2, 2])
        ));
        assert!(groups_isomorphic(&AbGroup::cyclic(6), &AbGroup::cyclic(6)));
    }

    #[test]
    fn direct_sum_recombines_coprime_parts() {
        let s = AbGroup::cyclic(2).direct_sum(&AbGroup::cyclic(3));
        assert_eq!(s, AbGroup::cyclic(6));
        let s = AbGroup::cyclic(4).direct_sum(&AbGroup::cyclic(6));
        assert_eq!(s, AbGroup::from_parts(0, &[2, 12]));
    }

    #[test]
    fn rendering() {
        assert_eq!(AbGroup::trivial().to_string(), "0");
        assert_eq!(
            AbGroup::from_parts(2, &[3, 9]).to_string(),
            "Z^2 + Z/3 + Z/9"
        );
        assert_eq!(AbGroup::integers().to_string(), "Z");
    }
}
