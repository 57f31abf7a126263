//! Verification reports shared by every checker.

use std::fmt;

use crate::abelian::Int;

/// One failed identity, with enough context to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Short identifier of the identity, e.g. `"axiom-A-push"`.
    pub check: String,
    pub element: Option<usize>,
    pub degree: Option<usize>,
    /// Source coordinates of an element on which the identity fails.
    pub witness: Vec<Int>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.check)?;
        if let Some(x) = self.element {
            write!(f, " at x={x}")?;
        }
        if let Some(n) = self.degree {
            write!(f, " in degree {n}")?;
        }
        if !self.witness.is_empty() {
            let w: Vec<String> = self.witness.iter().map(ToString::to_string).collect();
            write!(f, " witness [{}]", w.join(", "))?;
        }
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

/// `passed()` iff no violation was recorded.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    checks: usize,
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    /// Number of identities checked, passing or not.
    pub fn checks(&self) -> usize {
        self.checks
    }

    pub(crate) fn record(&mut self, ok: bool, violation: impl FnOnce() -> Violation) {
        self.checks += 1;
        if !ok {
            self.violations.push(violation());
        }
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.checks += other.checks;
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "passed ({} checks)", self.checks);
        }
        writeln!(
            f,
            "FAILED: {} of {} checks",
            self.violations.len(),
            self.checks
        )?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

fn render(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// Records whether `f = g`; on failure the witness is the first source
/// generator whose images differ.
pub(crate) fn check_equal(
    report: &mut ValidationReport,
    check: &str,
    element: Option<usize>,
    degree: Option<usize>,
    f: &crate::abelian::AbHom,
    g: &crate::abelian::AbHom,
) {
    let differing = if f.source() != g.source() || f.target() != g.target() {
        Some((
            Vec::new(),
            format!(
                "maps have different shapes: {} -> {} vs {} -> {}",
                f.source(),
                f.target(),
                g.source(),
                g.target()
            ),
        ))
    } else {
        (0..f.source().ngens()).find_map(|j| {
            let (a, b) = (f.matrix().column(j), g.matrix().column(j));
            (a != b).then(|| {
                let mut e = vec![Int::from(0); f.source().ngens()];
                e[j] = Int::from(1);
                (e, format!("images {} vs {}", render(&a), render(&b)))
            })
        })
    };
    let ok = differing.is_none();
    report.record(ok, || {
        let (witness, detail) = differing.expect("failure has a witness");
        Violation {
            check: check.to_string(),
            element,
            degree,
            witness,
            detail,
        }
    });
}

/// Records whether `f = 0`.
pub(crate) fn check_zero(
    report: &mut ValidationReport,
    check: &str,
    element: Option<usize>,
    degree: Option<usize>,
    f: &crate::abelian::AbHom,
) {
    let zero = crate::abelian::AbHom::zero(f.source(), f.target());
    check_equal(report, check, element, degree, f, &zero);
}
