//! Smith normal form over the integers.
//!
//! Elimination runs on a sparse copy of the matrix. The unimodular factors are
//! never stored densely while reducing; instead every elementary operation is
//! appended to a log, and `U`, `U⁻¹`, `V`, `V⁻¹` are applied to vectors by
//! replaying that log. The matrices met in this crate are large and very
//! sparse with mostly unit pivots, so this is much cheaper than dense
//! bookkeeping.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{Int, IntMatrix};

/// An elementary unimodular operation on rows (or columns).
#[derive(Clone, Debug)]
enum Op {
    /// `target += k * source`
    AddMul {
        target: usize,
        source: usize,
        k: Int,
    },
    Swap(usize, usize),
    Negate(usize),
    /// `(a, b) <- (m0*a + m1*b, m2*a + m3*b)`, determinant one.
    Mix {
        a: usize,
        b: usize,
        m: [Int; 4],
    },
}

/// Product of logged row operations: `U = E_t ⋯ E_1`.
#[derive(Clone, Debug)]
pub(crate) struct RowTransform {
    dim: usize,
    ops: Vec<Op>,
}

/// Product of logged column operations: `V = E_1 ⋯ E_t`.
#[derive(Clone, Debug)]
pub(crate) struct ColTransform {
    dim: usize,
    ops: Vec<Op>,
}

fn add_scaled(v: &mut [Int], target: usize, source: usize, k: &Int) {
    if !v[source].is_zero() {
        let delta = &v[source] * k;
        v[target] += delta;
    }
}

fn mix(v: &mut [Int], a: usize, b: usize, m: [&Int; 4]) {
    let (x, y) = (v[a].clone(), v[b].clone());
    v[a] = m[0] * &x + m[1] * &y;
    v[b] = m[2] * &x + m[3] * &y;
}

impl RowTransform {
    fn new(dim: usize) -> Self {
        RowTransform {
            dim,
            ops: Vec::new(),
        }
    }

    /// `y <- U y`
    pub(crate) fn apply(&self, y: &mut [Int]) {
        debug_assert_eq!(y.len(), self.dim);
        for op in &self.ops {
            match op {
                Op::AddMul { target, source, k } => add_scaled(y, *target, *source, k),
                Op::Swap(a, b) => y.swap(*a, *b),
                Op::Negate(a) => y[*a] = -&y[*a],
                Op::Mix { a, b, m } => mix(y, *a, *b, [&m[0], &m[1], &m[2], &m[3]]),
            }
        }
    }

    /// `y <- U⁻¹ y`
    pub(crate) fn apply_inverse(&self, y: &mut [Int]) {
        debug_assert_eq!(y.len(), self.dim);
        for op in self.ops.iter().rev() {
            match op {
                Op::AddMul { target, source, k } => add_scaled(y, *target, *source, &-k),
                Op::Swap(a, b) => y.swap(*a, *b),
                Op::Negate(a) => y[*a] = -&y[*a],
                Op::Mix { a, b, m } => {
                    let (n1, n2) = (-&m[1], -&m[2]);
                    mix(y, *a, *b, [&m[3], &n1, &n2, &m[0]])
                }
            }
        }
    }

    /// Row `i` of `U`, i.e. `e_iᵀ U`.
    pub(crate) fn row(&self, i: usize) -> Vec<Int> {
        let mut r = unit(self.dim, i);
        for op in self.ops.iter().rev() {
            match op {
                Op::AddMul { target, source, k } => add_scaled(&mut r, *source, *target, k),
                Op::Swap(a, b) => r.swap(*a, *b),
                Op::Negate(a) => r[*a] = -&r[*a],
                Op::Mix { a, b, m } => mix(&mut r, *a, *b, [&m[0], &m[2], &m[1], &m[3]]),
            }
        }
        r
    }

    /// Column `i` of `U⁻¹`.
    pub(crate) fn inverse_column(&self, i: usize) -> Vec<Int> {
        let mut e = unit(self.dim, i);
        self.apply_inverse(&mut e);
        e
    }

    pub(crate) fn to_matrix(&self) -> IntMatrix {
        let cols: Vec<Vec<Int>> = (0..self.dim)
            .map(|j| {
                let mut e = unit(self.dim, j);
                self.apply(&mut e);
                e
            })
            .collect();
        IntMatrix::from_columns(self.dim, &cols)
    }
}

impl ColTransform {
    fn new(dim: usize) -> Self {
        ColTransform {
            dim,
            ops: Vec::new(),
        }
    }

    /// `z <- V z`
    pub(crate) fn apply(&self, z: &mut [Int]) {
        debug_assert_eq!(z.len(), self.dim);
        for op in self.ops.iter().rev() {
            match op {
                // column op col_t += k col_s is right multiplication by I + k e_s e_tᵀ
                Op::AddMul { target, source, k } => add_scaled(z, *source, *target, k),
                Op::Swap(a, b) => z.swap(*a, *b),
                Op::Negate(a) => z[*a] = -&z[*a],
                Op::Mix { a, b, m } => mix(z, *a, *b, [&m[0], &m[2], &m[1], &m[3]]),
            }
        }
    }

    /// `z <- V⁻¹ z`
    #[cfg(test)]
    pub(crate) fn apply_inverse(&self, z: &mut [Int]) {
        debug_assert_eq!(z.len(), self.dim);
        for op in &self.ops {
            match op {
                Op::AddMul { target, source, k } => add_scaled(z, *source, *target, &-k),
                Op::Swap(a, b) => z.swap(*a, *b),
                Op::Negate(a) => z[*a] = -&z[*a],
                Op::Mix { a, b, m } => {
                    let (n1, n2) = (-&m[1], -&m[2]);
                    mix(z, *a, *b, [&m[3], &n2, &n1, &m[0]])
                }
            }
        }
    }

    /// Column `j` of `V`.
    pub(crate) fn column(&self, j: usize) -> Vec<Int> {
        let mut e = unit(self.dim, j);
        self.apply(&mut e);
        e
    }

    /// Row `j` of `V⁻¹`, i.e. `e_jᵀ V⁻¹`.
    pub(crate) fn inverse_row(&self, j: usize) -> Vec<Int> {
        let mut r = unit(self.dim, j);
        for op in self.ops.iter().rev() {
            match op {
                Op::AddMul { target, source, k } => add_scaled(&mut r, *target, *source, &-k),
                Op::Swap(a, b) => r.swap(*a, *b),
                Op::Negate(a) => r[*a] = -&r[*a],
                Op::Mix { a, b, m } => {
                    let (n1, n2) = (-&m[1], -&m[2]);
                    mix(&mut r, *a, *b, [&m[3], &n1, &n2, &m[0]])
                }
            }
        }
        r
    }

    pub(crate) fn to_matrix(&self) -> IntMatrix {
        let cols: Vec<Vec<Int>> = (0..self.dim)
            .map(|j| {
                let mut e = unit(self.dim, j);
                self.apply(&mut e);
                e
            })
            .collect();
        IntMatrix::from_columns(self.dim, &cols)
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<Int> {
    let mut e = vec![Int::zero(); n];
    e[i] = Int::one();
    e
}

/// Sparse integer matrix used as elimination workspace.
#[derive(Clone, Debug)]
pub(crate) struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<BTreeMap<usize, Int>>,
    cols: Vec<BTreeSet<usize>>,
}

impl SparseMatrix {
    pub(crate) fn new(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            ncols,
            rows: vec![BTreeMap::new(); nrows],
            cols: vec![BTreeSet::new(); ncols],
        }
    }

    pub(crate) fn from_dense(m: &IntMatrix) -> Self {
        let mut s = Self::new(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if !m[(i, j)].is_zero() {
                    s.add_to(i, j, &m[(i, j)]);
                }
            }
        }
        s
    }

    pub(crate) fn nrows(&self) -> usize {
        self.nrows
    }

    pub(crate) fn ncols(&self) -> usize {
        self.ncols
    }

    /// `self[i][j] += v`
    pub(crate) fn add_to(&mut self, i: usize, j: usize, v: &Int) {
        if v.is_zero() {
            return;
        }
        let row = &mut self.rows[i];
        match row.get_mut(&j) {
            Some(e) => {
                *e += v;
                if e.is_zero() {
                    row.remove(&j);
                    self.cols[j].remove(&i);
                }
            }
            None => {
                row.insert(j, v.clone());
                self.cols[j].insert(i);
            }
        }
    }

    pub(crate) fn row_entries(&self, i: usize) -> impl Iterator<Item = (usize, &Int)> {
        self.rows[i].iter().map(|(j, v)| (*j, v))
    }

    /// `y = self · x`
    pub(crate) fn mul_vec(&self, x: &[Int]) -> Vec<Int> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|(j, _)| !x[**j].is_zero())
                    .fold(Int::zero(), |acc, (j, v)| acc + v * &x[*j])
            })
            .collect()
    }

    fn row_addmul(&mut self, target: usize, source: usize, k: &Int) {
        let src: Vec<(usize, Int)> = self.rows[source].iter().map(|(j, v)| (*j, v * k)).collect();
        for (j, v) in src {
            self.add_to(target, j, &v);
        }
    }

    fn col_addmul(&mut self, target: usize, source: usize, k: &Int) {
        let src: Vec<(usize, Int)> = self.cols[source]
            .iter()
            .map(|&i| (i, &self.rows[i][&source] * k))
            .collect();
        for (i, v) in src {
            self.add_to(i, target, &v);
        }
    }
}

/// Result of a logged Smith reduction.
#[derive(Clone, Debug)]
pub(crate) struct SmithDecomposition {
    /// Nonzero invariant factors `d_1 | d_2 | … | d_rank`, all positive.
    pub diag: Vec<Int>,
    pub u: RowTransform,
    pub v: ColTransform,
}

impl SmithDecomposition {
    pub(crate) fn rank(&self) -> usize {
        self.diag.len()
    }
}

/// Pivot ordering: smallest magnitude first, then smallest fill estimate,
/// then row-major position.
type PivotKey<'a> = (&'a BigUint, usize, usize, usize);

fn pivot_key<'a>(m: &SparseMatrix, i: usize, j: usize, v: &'a Int) -> PivotKey<'a> {
    let fill = (m.rows[i].len() - 1) * (m.cols[j].len() - 1);
    (v.magnitude(), fill, i, j)
}

pub(crate) fn decompose(matrix: &SparseMatrix) -> SmithDecomposition {
    let mut m = matrix.clone();
    let mut u = RowTransform::new(m.nrows);
    let mut v = ColTransform::new(m.ncols);
    let mut row_done = vec![false; m.nrows];
    let mut pivots: Vec<(usize, usize, Int)> = Vec::new();

    loop {
        let mut best: Option<(PivotKey, usize, usize)> = None;
        'scan: for i in (0..m.nrows).filter(|&i| !row_done[i]) {
            for (j, val) in m.rows[i].iter() {
                let key = pivot_key(&m, i, *j, val);
                if best.as_ref().is_none_or(|(b, _, _)| key < *b) {
                    let ideal = key.0.is_one() && key.1 == 0;
                    best = Some((key, i, *j));
                    if ideal {
                        break 'scan;
                    }
                }
            }
        }
        let best = best.map(|(_, i, j)| (i, j));
        let Some((mut r, mut c)) = best else { break };

        loop {
            let p = m.rows[r][&c].clone();
            let mut dirty = false;
            let others: Vec<usize> = m.cols[c].iter().copied().filter(|&i| i != r).collect();
            for i in others {
                let (q, rem) = m.rows[i][&c].div_mod_floor(&p);
                if !q.is_zero() {
                    let k = -q;
                    m.row_addmul(i, r, &k);
                    u.ops.push(Op::AddMul {
                        target: i,
                        source: r,
                        k,
                    });
                }
                dirty |= !rem.is_zero();
            }
            let others: Vec<usize> = m.rows[r].keys().copied().filter(|&j| j != c).collect();
            for j in others {
                let (q, rem) = m.rows[r][&j].div_mod_floor(&p);
                if !q.is_zero() {
                    let k = -q;
                    m.col_addmul(j, c, &k);
                    v.ops.push(Op::AddMul {
                        target: j,
                        source: c,
                        k,
                    });
                }
                dirty |= !rem.is_zero();
            }
            if !dirty {
                pivots.push((r, c, p));
                break;
            }
            // a remainder survived: it becomes the new, strictly smaller pivot
            let in_col = m.cols[c]
                .iter()
                .filter(|&&i| i != r)
                .map(|&i| (m.rows[i][&c].abs(), i, c));
            let in_row = m.rows[r]
                .iter()
                .filter(|(j, _)| **j != c)
                .map(|(j, val)| (val.abs(), r, *j));
            let (_, nr, nc) = in_col
                .chain(in_row)
                .min()
                .expect("dirty pivot has a remainder");
            r = nr;
            c = nc;
        }
        row_done[r] = true;
    }

    // Move pivot (r_k, c_k) to (k, k).
    let rank = pivots.len();
    let mut row_at: Vec<usize> = (0..m.nrows).collect();
    let mut row_pos: Vec<usize> = (0..m.nrows).collect();
    let mut col_at: Vec<usize> = (0..m.ncols).collect();
    let mut col_pos: Vec<usize> = (0..m.ncols).collect();
    let mut diag = Vec::with_capacity(rank);
    for (k, (r, c, p)) in pivots.into_iter().enumerate() {
        let pr = row_pos[r];
        if pr != k {
            u.ops.push(Op::Swap(k, pr));
            let (a, b) = (row_at[k], row_at[pr]);
            row_at.swap(k, pr);
            row_pos[a] = pr;
            row_pos[b] = k;
        }
        let pc = col_pos[c];
        if pc != k {
            v.ops.push(Op::Swap(k, pc));
            let (a, b) = (col_at[k], col_at[pc]);
            col_at.swap(k, pc);
            col_pos[a] = pc;
            col_pos[b] = k;
        }
        diag.push(p);
    }

    // Enforce the divisibility chain with 2×2 unimodular mixes.
    for i in 0..rank {
        for j in i + 1..rank {
            let (a, b) = (diag[i].clone(), diag[j].clone());
            if b.is_multiple_of(&a) {
                continue;
            }
            let egcd = a.extended_gcd(&b);
            let (g, s, t) = (egcd.gcd, egcd.x, egcd.y);
            let (ag, bg) = (&a / &g, &b / &g);
            u.ops.push(Op::Mix {
                a: i,
                b: j,
                m: [s.clone(), t.clone(), -&bg, ag.clone()],
            });
            v.ops.push(Op::Mix {
                a: i,
                b: j,
                m: [Int::one(), Int::one(), -(&t * &bg), &s * &ag],
            });
            diag[i] = g;
            diag[j] = &a * &bg;
        }
    }
    for (i, d) in diag.iter_mut().enumerate() {
        if d.is_negative() {
            u.ops.push(Op::Negate(i));
            *d = -&*d;
        }
    }

    SmithDecomposition { diag, u, v }
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal with a
/// nonnegative divisibility chain on its diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithNormalForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithNormalForm {
    /// The nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<Int> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .filter(|d| !d.is_zero())
            .collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithNormalForm {
    let dec = decompose(&SparseMatrix::from_dense(m));
    SmithNormalForm {
        u: dec.u.to_matrix(),
        d: IntMatrix::diagonal(m.rows(), m.cols(), &dec.diag),
        v: dec.v.to_matrix(),
    }
}
