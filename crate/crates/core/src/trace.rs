//! The trace map `T` and the difference map `S = 1_* − 1^*`.
//!
//! With `n = m + q`, the left trace at `x` is
//! `Σ_{t<n} t^* (n−t−1)_* − Σ_{s<m} s^* (m−s−1)_*`, a map
//! `A(x) → A(x ⊕ (n−1))`; the right trace is its mirror
//! `B(x ⊕ (n−1)) → B(x)`. For `x ≥ 1`, `x ⊕ (n−1) = m ⊕ (x−1)`.

use thiserror::Error;

use crate::abelian::AbHom;
use crate::module::{LeechModule, Side};
use crate::report::{check_equal, check_zero, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("the trace map is only defined at x >= 1 when the index is positive")]
    XMustBePositive,
    #[error("expected a {expected} module")]
    WrongSide { expected: Side },
}

/// `T` is defined at every `x ≥ 1`, and also at `0` when `m = 0` (there the
/// subtracted sum is empty and the formula needs no `x − 1`).
pub fn trace_defined_at(a: &LeechModule, x: usize) -> bool {
    x >= 1 || a.monoid().index() == 0
}

fn require(a: &LeechModule, side: Side) -> Result<(), TraceError> {
    if a.side() == side {
        Ok(())
    } else {
        Err(TraceError::WrongSide { expected: side })
    }
}

pub fn trace_left(a: &LeechModule, x: usize) -> Result<AbHom, TraceError> {
    require(a, Side::Left)?;
    if !trace_defined_at(a, x) {
        return Err(TraceError::XMustBePositive);
    }
    Ok(trace(a, x))
}

pub fn trace_right(b: &LeechModule, x: usize) -> Result<AbHom, TraceError> {
    require(b, Side::Right)?;
    if !trace_defined_at(b, x) {
        return Err(TraceError::XMustBePositive);
    }
    Ok(trace(b, x))
}

/// `1_* − 1^*: A(x) → A(x⊕1)`.
pub fn s_left(a: &LeechModule, x: usize) -> Result<AbHom, TraceError> {
    require(a, Side::Left)?;
    Ok(s_map(a, x))
}

/// `1_* − 1^*: B(x⊕1) → B(x)`.
pub fn s_right(b: &LeechModule, x: usize) -> Result<AbHom, TraceError> {
    require(b, Side::Right)?;
    Ok(s_map(b, x))
}

pub(crate) fn s_map(a: &LeechModule, x: usize) -> AbHom {
    a.push1(x).sub(a.pull1(x)).expect("parallel maps")
}

/// The trace of either side, at an `x` where it is defined.
pub(crate) fn trace(a: &LeechModule, x: usize) -> AbHom {
    let c = a.monoid();
    let (m, n) = (c.index(), c.order());
    let term = |t: usize, total: usize| -> AbHom {
        // t^* (total−t−1)_*, composed in the order the side dictates
        let k = total - t - 1;
        match a.side() {
            Side::Left => a.pull(t, c.add(x, k)).compose(&a.push(k, x)),
            Side::Right => a.pull(t, x).compose(&a.push(k, c.add(x, t))),
        }
        .expect("composable")
    };
    let mut total = term(0, n);
    for t in 1..n {
        total = total.add(&term(t, n)).expect("parallel");
    }
    for s in 0..m {
        total = total.sub(&term(s, m)).expect("parallel");
    }
    total
}

/// Target (left) or source (right) element of the trace at `x`.
pub fn trace_far_end(a: &LeechModule, x: usize) -> usize {
    let c = a.monoid();
    c.add(x, c.order() - 1)
}

/// Checks, at every element where the maps exist, that `T S = 0`, `S T = 0`,
/// that `T` does not distinguish `1_*` from `1^*`, and that `T` commutes with
/// both translations.
pub fn lemma_report(a: &LeechModule) -> ValidationReport {
    let c = a.monoid();
    let mut report = ValidationReport::new();
    let traces: Vec<Option<AbHom>> = c
        .elements()
        .map(|x| trace_defined_at(a, x).then(|| trace(a, x)))
        .collect();
    let compose = |g: &AbHom, f: &AbHom| g.compose(f).expect("composable");
    for x in c.elements() {
        let x1 = c.add(x, 1);
        let s = s_map(a, x);
        match a.side() {
            Side::Left => {
                if let Some(t1) = &traces[x1] {
                    check_zero(&mut report, "T-after-S", Some(x), None, &compose(t1, &s));
                    check_equal(
                        &mut report,
                        "T-kills-push-minus-pull",
                        Some(x),
                        None,
                        &compose(t1, a.push1(x)),
                        &compose(t1, a.pull1(x)),
                    );
                    if let Some(t) = &traces[x] {
                        let y = trace_far_end(a, x);
                        check_equal(
                            &mut report,
                            "pull-square",
                            Some(x),
                            None,
                            &compose(a.pull1(y), t),
                            &compose(t1, a.pull1(x)),
                        );
                        check_equal(
                            &mut report,
                            "push-square",
                            Some(x),
                            None,
                            &compose(a.push1(y), t),
                            &compose(t1, a.push1(x)),
                        );
                    }
                }
                if let Some(t) = &traces[x] {
                    let y = trace_far_end(a, x);
                    check_zero(
                        &mut report,
                        "S-after-T",
                        Some(x),
                        None,
                        &compose(&s_map(a, y), t),
                    );
                }
            }
            Side::Right => {
                if let Some(t1) = &traces[x1] {
                    check_zero(&mut report, "S-after-T", Some(x), None, &compose(&s, t1));
                    check_equal(
                        &mut report,
                        "T-kills-push-minus-pull",
                        Some(x),
                        None,
                        &compose(a.push1(x), t1),
                        &compose(a.pull1(x), t1),
                    );
                    if let Some(t) = &traces[x] {
                        let y = trace_far_end(a, x);
                        check_equal(
                            &mut report,
                            "pull-square",
                            Some(x),
                            None,
                            &compose(t, a.pull1(y)),
                            &compose(a.pull1(x), t1),
                        );
                        check_equal(
                            &mut report,
                            "push-square",
                            Some(x),
                            None,
                            &compose(t, a.push1(y)),
                            &compose(a.push1(x), t1),
                        );
                    }
                }
                if let Some(t) = &traces[x] {
                    let y = trace_far_end(a, x);
                    check_zero(
                        &mut report,
                        "T-after-S",
                        Some(x),
                        None,
                        &compose(t, &s_map(a, y)),
                    );
                }
            }
        }
    }
    report
}
