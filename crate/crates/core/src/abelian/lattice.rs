//! Subquotients `L / N` of an ambient group `Z^k / D`, where `D` is diagonal
//! (one order per coordinate, `0` for free), `L` is either everything or the
//! kernel of a map into another such group, and `N ⊆ L` is generated by given
//! vectors together with `D`.

use num_integer::Integer;
use num_traits::{One, Zero};

use super::group::{AbGroup, GroupDecomposition};
use super::hom::AbHom;
use super::matrix::{Int, IntMatrix};
use super::smith::{decompose, SparseMatrix};
use super::AlgebraError;

fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Int::zero(), |acc, (x, y)| acc + x * y)
}

fn reduce_by(orders: &[Int], v: &mut [Int]) {
    for (x, d) in v.iter_mut().zip(orders) {
        if !d.is_zero() {
            *x = x.mod_floor(d);
        }
    }
}

/// The lattice `L ⊆ Z^k` with a basis and a coordinate map.
#[derive(Clone, Debug)]
enum Lattice {
    Full(usize),
    /// `L = {y : M y ∈ diag(target orders)}`, the projection of the
    /// nullspace of `[M | E]` where `E` holds the target torsion orders.
    Kernel {
        map: SparseMatrix,
        target_orders: Vec<Int>,
        /// Target rows with nonzero order, in column order of `E`.
        torsion_rows: Vec<usize>,
        basis: Vec<Vec<Int>>,
        /// Rows of `V⁻¹` for the nullspace coordinates, over `(y, c)`.
        coord_rows: Vec<Vec<Int>>,
    },
}

impl Lattice {
    fn kernel(map: SparseMatrix, target_orders: Vec<Int>) -> Self {
        let k = map.ncols();
        let torsion_rows: Vec<usize> = (0..map.nrows())
            .filter(|&i| !target_orders[i].is_zero())
            .collect();
        let mut aug = SparseMatrix::new(map.nrows(), k + torsion_rows.len());
        for i in 0..map.nrows() {
            for (j, v) in map.row_entries(i) {
                aug.add_to(i, j, v);
            }
        }
        for (c, &i) in torsion_rows.iter().enumerate() {
            aug.add_to(i, k + c, &target_orders[i]);
        }
        let dec = decompose(&aug);
        let width = aug.ncols();
        let free_dirs = dec.rank()..width;
        let basis = free_dirs
            .clone()
            .map(|j| {
                let mut col = dec.v.column(j);
                col.truncate(k);
                col
            })
            .collect();
        let coord_rows = free_dirs.map(|j| dec.v.inverse_row(j)).collect();
        Lattice::Kernel {
            map,
            target_orders,
            torsion_rows,
            basis,
            coord_rows,
        }
    }

    fn dim(&self) -> usize {
        match self {
            Lattice::Full(k) => *k,
            Lattice::Kernel { basis, .. } => basis.len(),
        }
    }

    /// Coordinates of `y` in the basis of `L`.
    fn coords(&self, y: &[Int]) -> Result<Vec<Int>, AlgebraError> {
        match self {
            Lattice::Full(_) => Ok(y.to_vec()),
            Lattice::Kernel {
                map,
                target_orders,
                torsion_rows,
                coord_rows,
                ..
            } => {
                let my = map.mul_vec(y);
                let mut ext = y.to_vec();
                let mut t = 0;
                for (i, v) in my.iter().enumerate() {
                    let e = &target_orders[i];
                    if torsion_rows.get(t) == Some(&i) {
                        let (q, r) = v.div_rem(e);
                        if !r.is_zero() {
                            return Err(AlgebraError::NotInKernel);
                        }
                        ext.push(-q);
                        t += 1;
                    } else if !v.is_zero() {
                        return Err(AlgebraError::NotInKernel);
                    }
                }
                Ok(coord_rows.iter().map(|r| dot(r, &ext)).collect())
            }
        }
    }

    /// The ambient vector with the given `L` coordinates.
    fn embed(&self, l: &[Int]) -> Vec<Int> {
        match self {
            Lattice::Full(_) => l.to_vec(),
            Lattice::Kernel { map, basis, .. } => {
                let mut out = vec![Int::zero(); map.ncols()];
                for (c, b) in l.iter().zip(basis) {
                    if c.is_zero() {
                        continue;
                    }
                    for (o, x) in out.iter_mut().zip(b) {
                        *o += c * x;
                    }
                }
                out
            }
        }
    }
}

/// A computed subquotient `L / N` with explicit comparison maps to its
/// canonical form.
#[derive(Clone, Debug)]
pub struct Subquotient {
    group: AbGroup,
    ambient_orders: Vec<Int>,
    lattice: Lattice,
    /// Row `i` maps `L` coordinates to canonical coordinate `i`.
    reduce_rows: Vec<Vec<Int>>,
    /// Ambient representative of canonical generator `i`.
    lift_cols: Vec<Vec<Int>>,
}

impl Subquotient {
    /// `ker(map) / ⟨image, D⟩` inside `Z^k / D` with `D = diag(ambient_orders)`.
    /// `map` is given against coordinates of a target with the listed orders.
    pub(crate) fn build(
        ambient_orders: &[Int],
        kernel_of: Option<(SparseMatrix, Vec<Int>)>,
        image: &[Vec<Int>],
    ) -> Result<Self, AlgebraError> {
        let k = ambient_orders.len();
        if let Some((map, target_orders)) = &kernel_of {
            if map.ncols() != k || map.nrows() != target_orders.len() {
                return Err(AlgebraError::DimensionMismatch(format!(
                    "kernel map is {}x{} over an ambient of rank {k} and a target of rank {}",
                    map.nrows(),
                    map.ncols(),
                    target_orders.len()
                )));
            }
        }
        if let Some(g) = image.iter().find(|g| g.len() != k) {
            return Err(AlgebraError::DimensionMismatch(format!(
                "image generator of length {} in ambient of rank {k}",
                g.len()
            )));
        }
        let lattice = match kernel_of {
            None => Lattice::Full(k),
            Some((map, orders)) => Lattice::kernel(map, orders),
        };
        let s = lattice.dim();

        let relations = ambient_orders
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| {
                let mut e = vec![Int::zero(); k];
                e[i] = d.clone();
                e
            });
        let mut ncoords = Vec::new();
        for g in image.iter().cloned().chain(relations) {
            match lattice.coords(&g) {
                Ok(c) => ncoords.push(c),
                Err(AlgebraError::NotInKernel) => return Err(AlgebraError::CompositionNotZero),
                Err(e) => return Err(e),
            }
        }
        let mut n = SparseMatrix::new(s, ncoords.len());
        for (j, c) in ncoords.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                n.add_to(i, j, v);
            }
        }
        let dec = decompose(&n);
        let rank = dec.rank();

        let mut kept: Vec<(usize, Int)> = (rank..s).map(|i| (i, Int::zero())).collect();
        kept.extend(
            dec.diag
                .iter()
                .enumerate()
                .filter(|(_, d)| !d.is_one())
                .map(|(i, d)| (i, d.clone())),
        );
        let free_rank = s - rank;
        let torsion = kept[free_rank..].iter().map(|(_, d)| d.clone()).collect();
        let group = AbGroup::new(free_rank, torsion)?;

        let reduce_rows = kept.iter().map(|(i, _)| dec.u.row(*i)).collect();
        let lift_cols = kept
            .iter()
            .map(|(i, _)| {
                let mut v = lattice.embed(&dec.u.inverse_column(*i));
                reduce_by(ambient_orders, &mut v);
                v
            })
            .collect();
        Ok(Subquotient {
            group,
            ambient_orders: ambient_orders.to_vec(),
            lattice,
            reduce_rows,
            lift_cols,
        })
    }

    /// `ker g / im f` for `A --f--> B --g--> C`.
    pub fn of(g: &AbHom, f: &AbHom) -> Result<Self, AlgebraError> {
        if f.target() != g.source() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} is not the source {} of the outgoing map",
                f.target(),
                g.source()
            )));
        }
        let map = SparseMatrix::from_dense(g.matrix());
        let image = f.matrix().columns();
        Self::build(
            &g.source().coord_orders(),
            Some((map, g.target().coord_orders())),
            &image,
        )
    }

    pub fn group(&self) -> &GroupDecomposition {
        &self.group
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_orders.len()
    }

    /// Canonical coordinates of the class of `y`; `y` must lie in `L`.
    pub fn reduce(&self, y: &[Int]) -> Result<Vec<Int>, AlgebraError> {
        if y.len() != self.ambient_dim() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "vector of length {} in ambient of rank {}",
                y.len(),
                self.ambient_dim()
            )));
        }
        let l = self.lattice.coords(y)?;
        let mut out: Vec<Int> = self.reduce_rows.iter().map(|r| dot(r, &l)).collect();
        self.group.reduce(&mut out);
        Ok(out)
    }

    /// An ambient representative of the class with canonical coordinates `h`.
    pub fn lift(&self, h: &[Int]) -> Vec<Int> {
        assert_eq!(h.len(), self.group.ngens(), "coordinate vector length");
        let mut out = vec![Int::zero(); self.ambient_dim()];
        for (c, col) in h.iter().zip(&self.lift_cols) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(col) {
                *o += c * x;
            }
        }
        reduce_by(&self.ambient_orders, &mut out);
        out
    }

    /// Ambient representatives of the canonical generators.
    pub fn generators(&self) -> &[Vec<Int>] {
        &self.lift_cols
    }
}

/// `Z^ambient_rank / column-span(M)` in canonical form.
pub fn cokernel(m: &IntMatrix, ambient_rank: usize) -> Result<GroupDecomposition, AlgebraError> {
    if m.rows() != ambient_rank && m.cols() > 0 {
        return Err(AlgebraError::DimensionMismatch(format!(
            "relation matrix has {} rows, ambient rank is {ambient_rank}",
            m.rows()
        )));
    }
    let orders = vec![Int::zero(); ambient_rank];
    Ok(Subquotient::build(&orders, None, &m.columns())?.group)
}

/// Generators of `ker f`, as source coordinate vectors in canonical residues.
pub fn kernel_basis(f: &AbHom) -> Vec<Vec<Int>> {
    let lattice = Lattice::kernel(
        SparseMatrix::from_dense(f.matrix()),
        f.target().coord_orders(),
    );
    let Lattice::Kernel { basis, .. } = lattice else {
        unreachable!()
    };
    basis
        .into_iter()
        .map(|mut v| {
            f.source().reduce(&mut v);
            v
        })
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect()
}

/// Canonical form of `ker g / im f`; fails unless `g ∘ f = 0`.
pub fn subquotient(g: &AbHom, f: &AbHom) -> Result<GroupDecomposition, AlgebraError> {
    Ok(Subquotient::of(g, f)?.group)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> Int {
        Int::from(n)
    }

    fn hom(src: AbGroup, tgt: AbGroup, rows: &[Vec<i64>]) -> AbHom {
        let m = if rows.is_empty() {
            IntMatrix::zeros(tgt.ngens(), src.ngens())
        } else {
            IntMatrix::from_rows(rows).unwrap()
        };
        AbHom::new(src, tgt, m).unwrap()
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(
            cokernel(&IntMatrix::from_rows(&[vec![5]]).unwrap(), 1).unwrap(),
            AbGroup::cyclic(5)
        );
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 0]]).unwrap();
        assert_eq!(cokernel(&m, 2).unwrap(), AbGroup::from_parts(1, &[2]));
        assert_eq!(
            cokernel(&IntMatrix::zeros(2, 0), 2).unwrap(),
            AbGroup::free(2)
        );
        assert!(cokernel(&IntMatrix::zeros(3, 1), 2).is_err());
    }

    #[test]
    fn kernel_of_four_on_z6() {
        let g = AbGroup::cyclic(6);
        let f = AbHom::scalar(&g, &z(4));
        let basis = kernel_basis(&f);
        assert_eq!(basis, vec![vec![z(3)]]);
        assert!(kernel_basis(&AbHom::identity(&AbGroup::free(2))).is_empty());
    }

    #[test]
    fn subquotient_examples() {
        let zz = AbGroup::integers();
        let five = AbHom::scalar(&zz, &z(5));
        let zero = AbHom::zero(&zz, &zz);
        assert_eq!(subquotient(&zero, &five).unwrap(), AbGroup::cyclic(5));
        assert_eq!(
            subquotient(&zero, &AbHom::identity(&zz)).unwrap(),
            AbGroup::trivial()
        );
        let g = AbGroup::from_parts(1, &[2, 4]);
        let zg = AbHom::zero(&g, &g);
        assert_eq!(subquotient(&zg, &zg).unwrap(), g);
        assert_eq!(
            subquotient(&five, &five),
            Err(AlgebraError::CompositionNotZero)
        );
    }

    #[test]
    fn reduce_and_lift_are_inverse() {
        let src = AbGroup::from_parts(2, &[6]);
        let tgt = AbGroup::from_parts(0, &[4]);
        let g = hom(src.clone(), tgt, &[vec![1, 2, 2]]);
        let f = hom(AbGroup::integers(), src, &[vec![2], vec![1], vec![0]]);
        let sq = Subquotient::of(&g, &f).unwrap();
        for (i, gen) in sq.generators().iter().enumerate() {
            let mut e = vec![Int::zero(); sq.group().ngens()];
            e[i] = Int::one();
            assert_eq!(sq.reduce(gen).unwrap(), e);
        }
        assert_eq!(
            sq.reduce(&[z(1), z(0), z(0)]),
            Err(AlgebraError::NotInKernel)
        );
        let zero = sq.reduce(&[z(4), z(2), z(6)]).unwrap();
        assert!(sq.group().is_zero_element(&zero));
    }
}
