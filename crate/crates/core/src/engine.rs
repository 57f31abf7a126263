//! Closed-form (co)homology of `C_{m,q}`.
//!
//! For a left module, with `s = 1_* − 1^*` and `T` the trace,
//! `H^0 = ker s(0)`, `H^{2r+1} = ker T(r·m⊕1) / im s(r·m)` and
//! `H^{2r+2} = ker s((r+1)·m) / im T(r·m⊕1)`. For a right module the arrows
//! reverse: `H_0 = B(0) / im s(0)`, `H_{2r+1} = ker s(r·m) / im T(r·m⊕1)`,
//! `H_{2r+2} = ker T(r·m⊕1) / im s((r+1)·m)`.

use std::ops::RangeInclusive;

use thiserror::Error;

use crate::abelian::{subquotient, AbGroup, AbHom, AlgebraError, GroupDecomposition, Int};
use crate::complex::{complex_homology, hom_complex_oracle, tensor_complex_oracle, ComplexError};
use crate::module::{power, LeechModule, Side};
use crate::monoid::{CyclicMonoid, MonoidError};
use crate::report::{ValidationReport, Violation};
use crate::trace::{s_map, trace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("expected a {expected} module")]
    WrongSide { expected: Side },
    #[error("the module is not an embedded ordinary module")]
    NotOrdinary,
    #[error("the module is not symmetric")]
    NotSymmetric,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

fn require(a: &LeechModule, side: Side) -> Result<(), EngineError> {
    if a.side() == side {
        Ok(())
    } else {
        Err(EngineError::WrongSide { expected: side })
    }
}

/// `(r·m, r·m ⊕ 1, (r+1)·m)` for the degree-`n` formulas, `n ≥ 1`.
fn positions(c: CyclicMonoid, n: usize) -> (usize, usize, usize) {
    let r = (n - 1) / 2;
    let rm = c.scalar(r, c.index());
    (rm, c.add(rm, 1), c.scalar(r + 1, c.index()))
}

/// `ker g / im f` for `f, g` maps in the given degree's shape; the zero map
/// stands in for a missing end.
fn homology_of(
    out: Option<&AbHom>,
    inc: Option<&AbHom>,
    spot: &AbGroup,
) -> Result<GroupDecomposition, EngineError> {
    let zero_out = AbHom::zero(spot, &AbGroup::trivial());
    let zero_in = AbHom::zero(&AbGroup::trivial(), spot);
    Ok(subquotient(
        out.unwrap_or(&zero_out),
        inc.unwrap_or(&zero_in),
    )?)
}

pub fn cohomology(a: &LeechModule, n: usize) -> Result<GroupDecomposition, EngineError> {
    require(a, Side::Left)?;
    let c = a.monoid();
    if n == 0 {
        return homology_of(Some(&s_map(a, 0)), None, a.group(0));
    }
    let (rm, rm1, next) = positions(c, n);
    let t = trace(a, rm1);
    if n % 2 == 1 {
        homology_of(Some(&t), Some(&s_map(a, rm)), a.group(rm1))
    } else {
        homology_of(Some(&s_map(a, next)), Some(&t), a.group(next))
    }
}

pub fn homology(b: &LeechModule, n: usize) -> Result<GroupDecomposition, EngineError> {
    require(b, Side::Right)?;
    let c = b.monoid();
    if n == 0 {
        return homology_of(None, Some(&s_map(b, 0)), b.group(0));
    }
    let (rm, rm1, next) = positions(c, n);
    let t = trace(b, rm1);
    if n % 2 == 1 {
        homology_of(Some(&s_map(b, rm)), Some(&t), b.group(rm1))
    } else {
        homology_of(Some(&t), Some(&s_map(b, next)), b.group(next))
    }
}

/// `H^n` for left modules, `H_n` for right modules.
pub fn closed_form(a: &LeechModule, n: usize) -> Result<GroupDecomposition, EngineError> {
    match a.side() {
        Side::Left => cohomology(a, n),
        Side::Right => homology(a, n),
    }
}

/// `(s, T)` of an embedded ordinary module as endomorphisms of its group:
/// left `s = P − I`, `T = P^m Σ_{t<q} P^t`; right `s = I − P`,
/// `T = (Σ_{t<q} P^t) P^m`.
pub fn ordinary_maps(a: &LeechModule) -> Result<(AbHom, AbHom), EngineError> {
    let p = a.ordinary_action().ok_or(EngineError::NotOrdinary)?;
    let c = a.monoid();
    let id = AbHom::identity(p.source());
    let mut sum = AbHom::zero(p.source(), p.source());
    for t in 0..c.period() {
        sum = sum.add(&power(p, t))?;
    }
    let pm = power(p, c.index());
    Ok(match a.side() {
        Side::Left => (p.sub(&id)?, pm.compose(&sum)?),
        Side::Right => (id.sub(p)?, sum.compose(&pm)?),
    })
}

fn ordinary(a: &LeechModule, n: usize) -> Result<GroupDecomposition, EngineError> {
    let (s, t) = ordinary_maps(a)?;
    let g = s.source().clone();
    let (out, inc) = match (a.side(), n) {
        (Side::Left, 0) => (Some(&s), None),
        (Side::Right, 0) => (None, Some(&s)),
        (Side::Left, n) if n % 2 == 1 => (Some(&t), Some(&s)),
        (Side::Left, _) => (Some(&s), Some(&t)),
        (Side::Right, n) if n % 2 == 1 => (Some(&s), Some(&t)),
        (Side::Right, _) => (Some(&t), Some(&s)),
    };
    homology_of(out, inc, &g)
}

/// `H^n` of an embedded ordinary left module, from the action alone.
pub fn cohomology_ordinary(a: &LeechModule, n: usize) -> Result<GroupDecomposition, EngineError> {
    require(a, Side::Left)?;
    ordinary(a, n)
}

/// `H_n` of an embedded ordinary right module, from the action alone.
pub fn homology_ordinary(b: &LeechModule, n: usize) -> Result<GroupDecomposition, EngineError> {
    require(b, Side::Right)?;
    ordinary(b, n)
}

/// The trace of a symmetric module at `x ≥ 1`:
/// `(m+q)·(m+q−1)_* − m·(m−1)_*`, the second term absent when `m = 0`.
pub fn symmetric_trace(a: &LeechModule, x: usize) -> Result<AbHom, EngineError> {
    if !a.is_symmetric() {
        return Err(EngineError::NotSymmetric);
    }
    let c = a.monoid();
    let (m, n) = (c.index(), c.order());
    let mut t = a.push(n - 1, x).scalar_mul(&Int::from(n));
    if m > 0 {
        t = t.sub(&a.push(m - 1, x).scalar_mul(&Int::from(m)))?;
    }
    Ok(t)
}

fn symmetric(a: &LeechModule, n: usize) -> Result<GroupDecomposition, EngineError> {
    let c = a.monoid();
    if n == 0 {
        if !a.is_symmetric() {
            return Err(EngineError::NotSymmetric);
        }
        return Ok(a.group(0).clone());
    }
    let (_, rm1, next) = positions(c, n);
    let t = symmetric_trace(a, rm1)?;
    let kernel_side = (a.side() == Side::Left) == (n % 2 == 1);
    if kernel_side {
        let spot = t.source().clone();
        homology_of(Some(&t), None, &spot)
    } else {
        let spot = a
            .group(if a.side() == Side::Left { next } else { rm1 })
            .clone();
        homology_of(None, Some(&t), &spot)
    }
}

/// `H^n` of a symmetric left module: `A(0)`, then `ker T`, `A/im T`.
pub fn cohomology_symmetric(a: &LeechModule, n: usize) -> Result<GroupDecomposition, EngineError> {
    require(a, Side::Left)?;
    symmetric(a, n)
}

/// `H_n` of a symmetric right module: `B(0)`, then `B/im T`, `ker T`.
pub fn homology_symmetric(b: &LeechModule, n: usize) -> Result<GroupDecomposition, EngineError> {
    require(b, Side::Right)?;
    symmetric(b, n)
}

/// For `p, n ≥ 3` in `degrees` with `p ≡ n` modulo `2q / gcd(m, q)`, the
/// groups agree; for `m = 1` also `H(n) = H(2)` whenever `n ≡ 2 mod 2q`.
pub fn periodicity_check(
    a: &LeechModule,
    degrees: RangeInclusive<usize>,
) -> Result<ValidationReport, EngineError> {
    let c = a.monoid();
    let period = c.cohomological_period();
    let mut report = ValidationReport::new();
    let window: Vec<usize> = degrees.filter(|&n| n >= 2).collect();
    let table: Vec<(usize, GroupDecomposition)> = window
        .iter()
        .map(|&n| closed_form(a, n).map(|g| (n, g)))
        .collect::<Result<_, _>>()?;
    let h2 = closed_form(a, 2)?;
    for (i, (p, gp)) in table.iter().enumerate() {
        for (n, gn) in &table[i + 1..] {
            if *p >= 3 && (n - p) % period == 0 {
                report.record(gp == gn, || Violation {
                    check: "periodicity".into(),
                    element: None,
                    degree: Some(*n),
                    witness: Vec::new(),
                    detail: format!("degree {p} gives {gp}, degree {n} gives {gn}"),
                });
            }
        }
        if c.index() == 1 && *p % (2 * c.period()) == 2 {
            report.record(*gp == h2, || Violation {
                check: "index-one-periodicity".into(),
                element: None,
                degree: Some(*p),
                witness: Vec::new(),
                detail: format!("degree 2 gives {h2}, degree {p} gives {gp}"),
            });
        }
    }
    Ok(report)
}

/// With the trivial action on `group`, the cohomology and homology of
/// `C_{m,q}` agree degree by degree with those of the smallest admissible
/// index (`C_{0,q}`, or `C_{1,1}` when `q = 1`) for every listed `m`.
pub fn index_independence_check(
    group: &AbGroup,
    period: usize,
    indices: &[usize],
    max_degree: usize,
) -> Result<ValidationReport, EngineError> {
    let reference = CyclicMonoid::new(usize::from(period == 1), period)?;
    let table =
        |c: CyclicMonoid| -> Result<Vec<(GroupDecomposition, GroupDecomposition)>, EngineError> {
            let left = LeechModule::trivial(c, Side::Left, group);
            let right = LeechModule::trivial(c, Side::Right, group);
            (0..=max_degree)
                .map(|n| Ok((cohomology(&left, n)?, homology(&right, n)?)))
                .collect()
        };
    let expected = table(reference)?;
    let mut report = ValidationReport::new();
    for &m in indices {
        let Ok(c) = CyclicMonoid::new(m, period) else {
            continue;
        };
        for (n, (got, want)) in table(c)?.iter().zip(&expected).enumerate() {
            report.record(got == want, || Violation {
                check: "index-independence".into(),
                element: None,
                degree: Some(n),
                witness: Vec::new(),
                detail: format!(
                    "{c} gives ({}, {}), {reference} gives ({}, {})",
                    got.0, got.1, want.0, want.1
                ),
            });
        }
    }
    Ok(report)
}

/// Compares the closed form against the homology of the oracle complex in
/// every degree up to `max_degree`.
pub fn oracle_check(a: &LeechModule, max_degree: usize) -> Result<ValidationReport, EngineError> {
    let oracle = match a.side() {
        Side::Left => hom_complex_oracle(a, max_degree)?,
        Side::Right => tensor_complex_oracle(a, max_degree)?,
    };
    let mut report = ValidationReport::new();
    for n in 0..=max_degree {
        let closed = closed_form(a, n)?;
        let from_oracle = complex_homology(&oracle.complex, n)?;
        report.record(closed == from_oracle, || Violation {
            check: "closed-form-vs-oracle".into(),
            element: None,
            degree: Some(n),
            witness: Vec::new(),
            detail: format!("closed form {closed}, oracle {from_oracle}"),
        });
    }
    Ok(report)
}
