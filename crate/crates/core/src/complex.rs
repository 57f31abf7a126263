//! The cochain complex `Hom(F_•, A)` and the chain complex `B ⊗ F_•`, each
//! built twice: a fast path with spot `n` equal to the module at the
//! generator position `π_n` and `S`, `T` as differentials, and an oracle path
//! computed from first principles (natural transformations as the solutions
//! of a constraint system; the tensor product as a quotient by coend
//! relations).

use std::collections::HashMap;

use num_traits::Zero;
use thiserror::Error;

use crate::abelian::smith::SparseMatrix;
use crate::abelian::{
    AbGroup, AbHom, AlgebraError, GroupDecomposition, Int, IntMatrix, Subquotient,
};
use crate::module::{LeechModule, Side};
use crate::report::{check_equal, ValidationReport, Violation};
use crate::resolution::Resolution;
use crate::trace::{s_map, trace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("degree {n} is not an interior spot of a complex built up to degree {top}")]
    SpotOutOfRange { n: usize, top: usize },
    #[error("consecutive differentials at degree {0} do not compose to zero")]
    NotAComplex(usize),
    #[error("differential {0} does not connect the neighbouring spots")]
    Shape(usize),
    #[error("expected a {expected} module")]
    WrongSide { expected: Side },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Direction {
    /// Differentials lower the degree.
    Chain,
    /// Differentials raise the degree.
    Cochain,
}

/// Spots `0..=top`; `differential(n)` joins spots `n` and `n+1`, pointing up
/// for a cochain complex and down for a chain complex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbComplex {
    direction: Direction,
    spots: Vec<AbGroup>,
    diffs: Vec<AbHom>,
}

impl AbComplex {
    pub fn new(
        direction: Direction,
        spots: Vec<AbGroup>,
        diffs: Vec<AbHom>,
    ) -> Result<Self, ComplexError> {
        if spots.is_empty() || diffs.len() + 1 != spots.len() {
            return Err(ComplexError::Shape(diffs.len()));
        }
        for (n, d) in diffs.iter().enumerate() {
            let (s, t) = match direction {
                Direction::Cochain => (&spots[n], &spots[n + 1]),
                Direction::Chain => (&spots[n + 1], &spots[n]),
            };
            if d.source() != s || d.target() != t {
                return Err(ComplexError::Shape(n));
            }
        }
        for n in 1..diffs.len() {
            let composite = match direction {
                Direction::Cochain => diffs[n].compose(&diffs[n - 1])?,
                Direction::Chain => diffs[n - 1].compose(&diffs[n])?,
            };
            if !composite.is_zero() {
                return Err(ComplexError::NotAComplex(n));
            }
        }
        Ok(AbComplex {
            direction,
            spots,
            diffs,
        })
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn top_degree(&self) -> usize {
        self.spots.len() - 1
    }

    pub fn spot(&self, n: usize) -> &AbGroup {
        &self.spots[n]
    }

    pub fn spots(&self) -> &[AbGroup] {
        &self.spots
    }

    pub fn differential(&self, n: usize) -> &AbHom {
        &self.diffs[n]
    }

    /// Homology at spot `n`: the map out of `n` modulo the map into `n`,
    /// with an implicit zero map at the open end below degree 0.
    pub fn homology(&self, n: usize) -> Result<Subquotient, ComplexError> {
        if n >= self.top_degree() {
            return Err(ComplexError::SpotOutOfRange {
                n,
                top: self.top_degree(),
            });
        }
        let spot = &self.spots[n];
        let zero_in = || AbHom::zero(&AbGroup::trivial(), spot);
        let zero_out = || AbHom::zero(spot, &AbGroup::trivial());
        let (out, inc) = match self.direction {
            Direction::Cochain => {
                let inc = if n == 0 {
                    zero_in()
                } else {
                    self.diffs[n - 1].clone()
                };
                (self.diffs[n].clone(), inc)
            }
            Direction::Chain => {
                let out = if n == 0 {
                    zero_out()
                } else {
                    self.diffs[n - 1].clone()
                };
                (out, self.diffs[n].clone())
            }
        };
        Ok(Subquotient::of(&out, &inc)?)
    }
}

pub fn complex_homology(c: &AbComplex, n: usize) -> Result<GroupDecomposition, ComplexError> {
    Ok(c.homology(n)?.group().clone())
}

fn require(a: &LeechModule, side: Side) -> Result<(), ComplexError> {
    if a.side() == side {
        Ok(())
    } else {
        Err(ComplexError::WrongSide { expected: side })
    }
}

/// Spots `A(π_n)`, differentials `S` at `r·m` and `T` at `r·m ⊕ 1`.
pub fn hom_complex_fast(a: &LeechModule, max_degree: usize) -> Result<AbComplex, ComplexError> {
    require(a, Side::Left)?;
    fast_complex(a, max_degree, Direction::Cochain)
}

/// Spots `B(π_n)`, differentials `S` at `r·m` and `T` at `r·m ⊕ 1`.
pub fn tensor_complex_fast(b: &LeechModule, max_degree: usize) -> Result<AbComplex, ComplexError> {
    require(b, Side::Right)?;
    fast_complex(b, max_degree, Direction::Chain)
}

fn fast_complex(
    a: &LeechModule,
    max_degree: usize,
    direction: Direction,
) -> Result<AbComplex, ComplexError> {
    let res = Resolution::new(a.monoid());
    let spots = (0..=max_degree + 1)
        .map(|n| a.group(res.generator_position(n)).clone())
        .collect();
    let diffs = (0..=max_degree)
        .map(|n| {
            let p = res.generator_position(n);
            if n % 2 == 0 {
                s_map(a, p)
            } else {
                trace(a, p)
            }
        })
        .collect();
    AbComplex::new(direction, spots, diffs)
}

/// Block layout of `⊕_x ⊕_{b ∈ basis F_n(x)} M(x)`.
struct Blocks {
    offsets: HashMap<(usize, (usize, usize)), usize>,
    orders: Vec<Int>,
}

impl Blocks {
    fn new(res: &Resolution, a: &LeechModule, n: usize) -> Self {
        let mut offsets = HashMap::new();
        let mut orders = Vec::new();
        for x in a.monoid().elements() {
            let g = a.group(x);
            for b in res.basis(n, x) {
                offsets.insert((x, b), orders.len());
                orders.extend(g.coord_orders());
            }
        }
        Blocks { offsets, orders }
    }

    fn dim(&self) -> usize {
        self.orders.len()
    }

    fn at(&self, x: usize, b: (usize, usize)) -> usize {
        self.offsets[&(x, b)]
    }
}

/// Writes `coef · f` into rows starting at `row`, columns starting at `col`.
fn put_block(m: &mut SparseMatrix, row: usize, col: usize, f: &IntMatrix, coef: &Int) {
    for i in 0..f.rows() {
        for j in 0..f.cols() {
            let v = &f[(i, j)];
            if !v.is_zero() {
                m.add_to(row + i, col + j, &(v * coef));
            }
        }
    }
}

/// An oracle complex together with its comparison maps to the fast spots.
#[derive(Clone, Debug)]
pub struct OracleComplex {
    pub complex: AbComplex,
    /// `comparison[n]`: oracle spot `n` → fast spot `n`.
    pub comparison: Vec<AbHom>,
}

/// One action of an arrow on both sides of a naturality constraint: the
/// basis shift `(u, v) ↦ (a ⊕ u, v ⊕ c)` and the module map it must match.
struct ArrowAction {
    from: usize,
    to: usize,
    shift: (usize, usize),
    map: AbHom,
}

/// Left modules pair `1_*` with the shift of `u`; right modules pair `1_*`
/// with the shift of `v` (`1_* β ⊗ b = β ⊗ 1^* b`).
fn generating_actions(a: &LeechModule) -> Vec<ArrowAction> {
    let c = a.monoid();
    let (push_shift, pull_shift) = match a.side() {
        Side::Left => ((1, 0), (0, 1)),
        Side::Right => ((0, 1), (1, 0)),
    };
    let mut out = Vec::new();
    for x in c.elements() {
        let x1 = c.add(x, 1);
        out.push(ArrowAction {
            from: x,
            to: x1,
            shift: push_shift,
            map: a.push1(x).clone(),
        });
        out.push(ArrowAction {
            from: x,
            to: x1,
            shift: pull_shift,
            map: a.pull1(x).clone(),
        });
    }
    out
}

/// Every arrow `(l, y, r)`: left module map `l_* r^*: A(y) → A(l⊕y⊕r)`;
/// right module map `l^* r_*: B(l⊕y⊕r) → B(y)`.
fn all_actions(a: &LeechModule) -> Vec<ArrowAction> {
    let c = a.monoid();
    let mut out = Vec::new();
    for l in c.elements() {
        for y in c.elements() {
            for r in c.elements() {
                let to = c.add(c.add(l, y), r);
                let map = match a.side() {
                    Side::Left => a.push(l, c.add(y, r)).compose(&a.pull(r, y)),
                    Side::Right => a.pull(l, y).compose(&a.push(r, c.add(y, l))),
                }
                .expect("composable");
                out.push(ArrowAction {
                    from: y,
                    to,
                    shift: (l, r),
                    map,
                });
            }
        }
    }
    out
}

fn hom_spot(
    res: &Resolution,
    a: &LeechModule,
    n: usize,
    actions: &[ArrowAction],
) -> Result<(Blocks, Subquotient), ComplexError> {
    let c = a.monoid();
    let blocks = Blocks::new(res, a, n);
    let mut rows_orders: Vec<Int> = Vec::new();
    let mut entries: Vec<(usize, usize, IntMatrix, Int)> = Vec::new();
    for act in actions {
        let tgt = a.group(act.to);
        for b in res.basis(n, act.from) {
            let shifted = (c.add(act.shift.0, b.0), c.add(b.1, act.shift.1));
            let row = rows_orders.len();
            rows_orders.extend(tgt.coord_orders());
            // f_to(shifted) − map · f_from(b) = 0
            entries.push((
                row,
                blocks.at(act.to, shifted),
                IntMatrix::identity(tgt.ngens()),
                Int::from(1),
            ));
            entries.push((
                row,
                blocks.at(act.from, b),
                act.map.matrix().clone(),
                Int::from(-1),
            ));
        }
    }
    let mut m = SparseMatrix::new(rows_orders.len(), blocks.dim());
    for (row, col, f, coef) in &entries {
        put_block(&mut m, *row, *col, f, coef);
    }
    let sq = Subquotient::build(&blocks.orders, Some((m, rows_orders)), &[])?;
    Ok((blocks, sq))
}

fn tensor_spot(
    res: &Resolution,
    b: &LeechModule,
    n: usize,
    actions: &[ArrowAction],
) -> Result<(Blocks, Subquotient), ComplexError> {
    let c = b.monoid();
    let blocks = Blocks::new(res, b, n);
    let mut relations = Vec::new();
    for act in actions {
        let src = b.group(act.to);
        for basis_el in res.basis(n, act.from) {
            let shifted = (
                c.add(act.shift.0, basis_el.0),
                c.add(basis_el.1, act.shift.1),
            );
            let (here, there) = (blocks.at(act.from, basis_el), blocks.at(act.to, shifted));
            // (map β) ⊗ b − β ⊗ (arrow · b), β over generators of B(to)
            for k in 0..src.ngens() {
                let mut rel = vec![Int::zero(); blocks.dim()];
                for (i, v) in act.map.matrix().column(k).into_iter().enumerate() {
                    rel[here + i] += v;
                }
                rel[there + k] -= Int::from(1);
                relations.push(rel);
            }
        }
    }
    let sq = Subquotient::build(&blocks.orders, None, &relations)?;
    Ok((blocks, sq))
}

/// Canonical map between two subquotient spots induced by an ambient map.
fn induced(
    src: &Subquotient,
    tgt: &Subquotient,
    ambient: impl Fn(&[Int]) -> Vec<Int>,
) -> Result<AbHom, ComplexError> {
    let cols: Vec<Vec<Int>> = src
        .generators()
        .iter()
        .map(|g| tgt.reduce(&ambient(g)))
        .collect::<Result<_, _>>()?;
    let m = IntMatrix::from_columns(tgt.group().ngens(), &cols);
    Ok(AbHom::new(src.group().clone(), tgt.group().clone(), m)?)
}

/// `y ↦ Σ` over basis pairs: the ambient action of `∂_{n+1}` between the
/// block layouts of degrees `n+1` (`upper`) and `n` (`lower`). With
/// `pull_back`, blocks of `lower` are read and blocks of `upper` written
/// (precomposition); otherwise the reverse (`id ⊗ ∂`).
fn ambient_differential(
    res: &Resolution,
    a: &LeechModule,
    n: usize,
    upper: &Blocks,
    lower: &Blocks,
    pull_back: bool,
) -> impl Fn(&[Int]) -> Vec<Int> {
    let mut terms: Vec<(usize, usize, usize, Int)> = Vec::new();
    for x in a.monoid().elements() {
        let width = a.group(x).ngens();
        let d = res.differential(n + 1, x);
        let (hi, lo) = (res.basis(n + 1, x), res.basis(n, x));
        for (j, bj) in hi.iter().enumerate() {
            for (i, bi) in lo.iter().enumerate() {
                let coef = &d.matrix()[(i, j)];
                if !coef.is_zero() {
                    terms.push((upper.at(x, *bj), lower.at(x, *bi), width, coef.clone()));
                }
            }
        }
    }
    let out_dim = if pull_back { upper.dim() } else { lower.dim() };
    move |y: &[Int]| {
        let mut out = vec![Int::zero(); out_dim];
        for (hi, lo, width, coef) in &terms {
            let (from, to) = if pull_back { (*lo, *hi) } else { (*hi, *lo) };
            for k in 0..*width {
                if !y[from + k].is_zero() {
                    out[to + k] += coef * &y[from + k];
                }
            }
        }
        out
    }
}

/// Reads one block of an ambient vector as an element of `M(x)`.
fn read_block(y: &[Int], offset: usize, width: usize) -> Vec<Int> {
    y[offset..offset + width].to_vec()
}

fn oracle_complex(
    a: &LeechModule,
    max_degree: usize,
    all_arrows: bool,
) -> Result<OracleComplex, ComplexError> {
    let res = Resolution::new(a.monoid());
    let actions = if all_arrows {
        all_actions(a)
    } else {
        generating_actions(a)
    };
    let left = a.side() == Side::Left;
    let spots: Vec<(Blocks, Subquotient)> = (0..=max_degree + 1)
        .map(|n| {
            if left {
                hom_spot(&res, a, n, &actions)
            } else {
                tensor_spot(&res, a, n, &actions)
            }
        })
        .collect::<Result<_, _>>()?;
    let mut diffs = Vec::new();
    for n in 0..=max_degree {
        let (lower, upper) = (&spots[n], &spots[n + 1]);
        let amb = ambient_differential(&res, a, n, &upper.0, &lower.0, left);
        diffs.push(if left {
            induced(&lower.1, &upper.1, amb)?
        } else {
            induced(&upper.1, &lower.1, amb)?
        });
    }
    let mut comparison = Vec::new();
    for (n, (blocks, sq)) in spots.iter().enumerate() {
        let p = res.generator_position(n);
        let target = a.group(p);
        let cols: Vec<Vec<Int>> = sq
            .generators()
            .iter()
            .map(|g| {
                if left {
                    evaluate_at_generator(a, blocks, g, p)
                } else {
                    collapse_tensor(&res, a, n, blocks, g, p)
                }
            })
            .collect();
        let m = IntMatrix::from_columns(target.ngens(), &cols);
        let phi = AbHom::new(sq.group().clone(), target.clone(), m)?;
        // id ⊗ ∂ on odd degrees induces 1^* − 1_* = −S; twisting by
        // (−1)^⌈n/2⌉ makes the collapse maps a chain map onto the fast complex
        let twist = !left && n.div_ceil(2) % 2 == 1;
        comparison.push(if twist { phi.neg() } else { phi });
    }
    let groups = spots.iter().map(|(_, sq)| sq.group().clone()).collect();
    let direction = if left {
        Direction::Cochain
    } else {
        Direction::Chain
    };
    Ok(OracleComplex {
        complex: AbComplex::new(direction, groups, diffs)?,
        comparison,
    })
}

/// `f ↦ f_π((0, 0))`.
fn evaluate_at_generator(a: &LeechModule, blocks: &Blocks, f: &[Int], p: usize) -> Vec<Int> {
    let g = a.group(p);
    let mut v = read_block(f, blocks.at(p, (0, 0)), g.ngens());
    g.reduce(&mut v);
    v
}

/// `Σ β ⊗ (u, v) ↦ Σ u^* v_* β ∈ B(π)`.
fn collapse_tensor(
    res: &Resolution,
    b: &LeechModule,
    n: usize,
    blocks: &Blocks,
    y: &[Int],
    p: usize,
) -> Vec<Int> {
    let c = b.monoid();
    let g = b.group(p);
    let mut out = vec![Int::zero(); g.ngens()];
    for x in c.elements() {
        let width = b.group(x).ngens();
        for (u, v) in res.basis(n, x) {
            let beta = read_block(y, blocks.at(x, (u, v)), width);
            if beta.iter().all(Zero::is_zero) {
                continue;
            }
            let map = b
                .pull(u, p)
                .compose(&b.push(v, c.add(u, p)))
                .expect("composable");
            for (o, z) in out.iter_mut().zip(map.apply(&beta)) {
                *o += z;
            }
        }
    }
    g.reduce(&mut out);
    out
}

/// Natural transformations `F_n → A` as solutions of the naturality
/// constraints for the generating arrows; differential is precomposition
/// with `∂`. Comparison maps evaluate at the generator.
pub fn hom_complex_oracle(
    a: &LeechModule,
    max_degree: usize,
) -> Result<OracleComplex, ComplexError> {
    require(a, Side::Left)?;
    oracle_complex(a, max_degree, false)
}

/// `⊕_x B(x) ⊗ F_n(x)` modulo the coend relations of the generating
/// arrows; differential is `id ⊗ ∂`. Comparison maps send
/// `β ⊗ (u, v)` to `±u^* v_* β`, with sign `(−1)^⌈n/2⌉` in degree `n`.
pub fn tensor_complex_oracle(
    b: &LeechModule,
    max_degree: usize,
) -> Result<OracleComplex, ComplexError> {
    require(b, Side::Right)?;
    oracle_complex(b, max_degree, false)
}

/// The oracle complex built from the constraints of every arrow rather
/// than the two generating ones.
pub fn oracle_complex_all_arrows(
    a: &LeechModule,
    max_degree: usize,
) -> Result<OracleComplex, ComplexError> {
    oracle_complex(a, max_degree, true)
}

/// Checks that every comparison map is an isomorphism and that they
/// commute with the differentials of the oracle and fast complexes.
pub fn comparison_report(fast: &AbComplex, oracle: &OracleComplex) -> ValidationReport {
    let mut report = ValidationReport::new();
    let top = fast.top_degree().min(oracle.complex.top_degree());
    for n in 0..=top {
        let phi = &oracle.comparison[n];
        report.record(phi.is_isomorphism(), || Violation {
            check: "comparison-isomorphism".into(),
            element: None,
            degree: Some(n),
            witness: Vec::new(),
            detail: format!("{} -> {} is not invertible", phi.source(), phi.target()),
        });
    }
    for n in 0..top {
        let (lo, hi) = (&oracle.comparison[n], &oracle.comparison[n + 1]);
        let (d_fast, d_oracle) = (fast.differential(n), oracle.complex.differential(n));
        let (lhs, rhs) = match fast.direction() {
            Direction::Cochain => (d_fast.compose(lo), hi.compose(d_oracle)),
            Direction::Chain => (d_fast.compose(hi), lo.compose(d_oracle)),
        };
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => {
                check_equal(&mut report, "comparison-commutes", None, Some(n), &l, &r)
            }
            _ => report.record(false, || Violation {
                check: "comparison-commutes".into(),
                element: None,
                degree: Some(n),
                witness: Vec::new(),
                detail: "comparison maps do not connect the differentials".into(),
            }),
        }
    }
    report
}

/// Checks that the spot groups obtained from the generating arrows agree
/// with those obtained from every arrow.
pub fn generating_arrows_report(
    a: &LeechModule,
    max_degree: usize,
) -> Result<ValidationReport, ComplexError> {
    let narrow = oracle_complex(a, max_degree, false)?;
    let wide = oracle_complex(a, max_degree, true)?;
    let mut report = ValidationReport::new();
    for n in 0..=max_degree {
        let (g, h) = (narrow.complex.spot(n), wide.complex.spot(n));
        report.record(g == h, || Violation {
            check: "generating-arrows-suffice".into(),
            element: None,
            degree: Some(n),
            witness: Vec::new(),
            detail: format!("generating arrows give {g}, all arrows give {h}"),
        });
    }
    Ok(report)
}

/// Homology of a complex at every degree up to `max_degree`.
pub fn homology_table(
    c: &AbComplex,
    max_degree: usize,
) -> Result<Vec<GroupDecomposition>, ComplexError> {
    (0..=max_degree).map(|n| complex_homology(c, n)).collect()
}
