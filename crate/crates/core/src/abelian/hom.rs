use num_integer::Integer;
use num_traits::{One, Zero};

use super::group::AbGroup;
use super::matrix::{Int, IntMatrix};
use super::AlgebraError;

/// A homomorphism between canonical groups, as a matrix in target × source
/// coordinates. Rows of torsion target coordinates hold residues in `[0, e)`,
/// so two homomorphisms are equal iff their matrices are.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AbHom {
    source: AbGroup,
    target: AbGroup,
    matrix: IntMatrix,
}

impl AbHom {
    pub fn new(source: AbGroup, target: AbGroup, matrix: IntMatrix) -> Result<Self, AlgebraError> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.ngens(),
                source.ngens()
            )));
        }
        let f = Self::new_unchecked(source, target, matrix);
        f.check_well_defined()?;
        Ok(f)
    }

    /// Reduces entries but skips the well-definedness check.
    pub(crate) fn new_unchecked(source: AbGroup, target: AbGroup, mut matrix: IntMatrix) -> Self {
        debug_assert!(matrix.rows() == target.ngens() && matrix.cols() == source.ngens());
        for i in target.free_rank()..target.ngens() {
            let e = target.coord_order(i);
            for j in 0..matrix.cols() {
                let v = matrix[(i, j)].mod_floor(&e);
                matrix[(i, j)] = v;
            }
        }
        AbHom {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(g: &AbGroup) -> Self {
        AbHom {
            source: g.clone(),
            target: g.clone(),
            matrix: IntMatrix::identity(g.ngens()),
        }
    }

    pub fn zero(source: &AbGroup, target: &AbGroup) -> Self {
        AbHom {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.ngens(), source.ngens()),
        }
    }

    /// Multiplication by `c` on `g`.
    pub fn scalar(g: &AbGroup, c: &Int) -> Self {
        Self::identity(g).scalar_mul(c)
    }

    pub fn source(&self) -> &AbGroup {
        &self.source
    }

    pub fn target(&self) -> &AbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// First violated coordinate pair `(i, j)` of the well-definedness rule.
    fn check_well_defined(&self) -> Result<(), AlgebraError> {
        for j in self.source.free_rank()..self.source.ngens() {
            let d = self.source.coord_order(j);
            for i in 0..self.target.ngens() {
                let a = &self.matrix[(i, j)];
                let e = self.target.coord_order(i);
                let ok = if e.is_zero() {
                    a.is_zero()
                } else {
                    (&d * a).is_multiple_of(&e)
                };
                if !ok {
                    return Err(AlgebraError::NotWellDefined(format!(
                        "generator {j} of order {d} maps to {a} in coordinate {i} of order {e}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_well_defined(&self) -> bool {
        self.check_well_defined().is_ok()
    }

    /// `self ∘ f`
    pub fn compose(&self, f: &AbHom) -> Result<AbHom, AlgebraError> {
        if f.target != self.source {
            return Err(AlgebraError::DimensionMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source, self.target, f.source, f.target
            )));
        }
        let m = self.matrix.mul(&f.matrix)?;
        Ok(Self::new_unchecked(
            f.source.clone(),
            self.target.clone(),
            m,
        ))
    }

    pub fn add(&self, other: &AbHom) -> Result<AbHom, AlgebraError> {
        self.check_parallel(other)?;
        let m = self.matrix.add(&other.matrix)?;
        Ok(Self::new_unchecked(
            self.source.clone(),
            self.target.clone(),
            m,
        ))
    }

    pub fn sub(&self, other: &AbHom) -> Result<AbHom, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AbHom {
        self.scalar_mul(&-Int::one())
    }

    pub fn scalar_mul(&self, c: &Int) -> AbHom {
        Self::new_unchecked(
            self.source.clone(),
            self.target.clone(),
            self.matrix.scale(c),
        )
    }

    /// Image of a source coordinate vector, in canonical residues.
    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        let mut out = self.matrix.mul_vec(v);
        self.target.reduce(&mut out);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Injective and surjective.
    pub fn is_isomorphism(&self) -> bool {
        let zero_in = AbHom::zero(&AbGroup::trivial(), &self.source);
        let zero_out = AbHom::zero(&self.target, &AbGroup::trivial());
        let ker = super::subquotient(self, &zero_in).expect("composite with zero");
        let coker = super::subquotient(&zero_out, self).expect("composite with zero");
        ker.is_trivial() && coker.is_trivial()
    }

    fn check_parallel(&self, other: &AbHom) -> Result<(), AlgebraError> {
        if self.source != other.source || self.target != other.target {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} -> {} vs {} -> {}",
                self.source, self.target, other.source, other.target
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> Int {
        Int::from(n)
    }

    #[test]
    fn entries_are_reduced() {
        let g = AbGroup::cyclic(4);
        let f = AbHom::new(
            g.clone(),
            g.clone(),
            IntMatrix::from_rows(&[vec![7]]).unwrap(),
        )
        .unwrap();
        assert_eq!(f.matrix()[(0, 0)], z(3));
        assert_eq!(f.apply(&[z(3)]), vec![z(1)]);
    }

    #[test]
    fn ill_defined_maps_rejected() {
        // Z/4 -> Z/6 sending 1 to 1 is not well defined
        let f = AbHom::new(
            AbGroup::cyclic(4),
            AbGroup::cyclic(6),
            IntMatrix::from_rows(&[vec![1]]).unwrap(),
        );
        assert!(f.is_err());
        let f = AbHom::new(
            AbGroup::cyclic(4),
            AbGroup::cyclic(6),
            IntMatrix::from_rows(&[vec![3]]).unwrap(),
        );
        assert!(f.is_ok());
        let f = AbHom::new(
            AbGroup::cyclic(2),
            AbGroup::integers(),
            IntMatrix::from_rows(&[vec![1]]).unwrap(),
        );
        assert!(f.is_err());
    }

    #[test]
    fn arithmetic() {
        let g = AbGroup::cyclic(4);
        let two = AbHom::scalar(&g, &z(2));
        assert!(two.compose(&two).unwrap().is_zero());
        let f = AbHom::new(
            AbGroup::from_parts(1, &[2]),
            AbGroup::free(1),
            IntMatrix::from_rows(&[vec![3, 0]]).unwrap(),
        )
        .unwrap();
        assert_eq!(AbHom::identity(f.target()).compose(&f).unwrap(), f);
        assert!(f.add(&f.scalar_mul(&z(-1))).unwrap().is_zero());
        assert!(f.sub(&f).unwrap().is_zero());
    }

    #[test]
    fn isomorphism_detection() {
        let g = AbGroup::cyclic(5);
        assert!(AbHom::scalar(&g, &z(2)).is_isomorphism());
        assert!(!AbHom::scalar(&g, &z(5)).is_isomorphism());
        assert!(!AbHom::scalar(&AbGroup::integers(), &z(2)).is_isomorphism());
        assert!(AbHom::scalar(&AbGroup::integers(), &z(-1)).is_isomorphism());
    }
}
