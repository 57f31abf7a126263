//! The periodic free resolution `F_• → Z` of the constant module.
//!
//! `F_n` is free on one generator: `v_r` in degree `2r` sitting at `π = r·m`,
//! `w_r` in degree `2r+1` at `π = r·m ⊕ 1`. A basis of `F_n(x)` is the set of
//! pairs `(u, v)` with `u ⊕ π ⊕ v = x`, in lexicographic order. Odd
//! differentials are `S`, even ones are `T`, and `φ`, `Φ` form a contracting
//! homotopy.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_traits::One;

use crate::abelian::{subquotient, AbGroup, AbHom, Int, IntMatrix};
use crate::monoid::CyclicMonoid;
use crate::report::{check_equal, check_zero, ValidationReport, Violation};

type Pair = (usize, usize);

/// Differentials are built once per `(n, x)`; the cache is shared between
/// threads and only ever stores the pure value.
#[derive(Debug)]
pub struct Resolution {
    monoid: CyclicMonoid,
    differentials: RwLock<HashMap<(usize, usize), Arc<AbHom>>>,
}

impl Clone for Resolution {
    fn clone(&self) -> Self {
        Resolution::new(self.monoid)
    }
}

impl Resolution {
    pub fn new(monoid: CyclicMonoid) -> Self {
        Resolution {
            monoid,
            differentials: RwLock::new(HashMap::new()),
        }
    }

    pub fn monoid(&self) -> CyclicMonoid {
        self.monoid
    }

    /// The element `π` at which the degree-`n` generator sits.
    pub fn generator_position(&self, n: usize) -> usize {
        let c = self.monoid;
        let rm = c.scalar(n / 2, c.index());
        if n.is_multiple_of(2) {
            rm
        } else {
            c.add(rm, 1)
        }
    }

    pub fn basis(&self, n: usize, x: usize) -> Vec<Pair> {
        let c = self.monoid;
        let p = self.generator_position(n);
        let mut out = Vec::new();
        for u in c.elements() {
            for v in c.elements() {
                if c.add(c.add(u, p), v) == x {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn rank(&self, n: usize, x: usize) -> usize {
        self.basis(n, x).len()
    }

    pub fn group(&self, n: usize, x: usize) -> AbGroup {
        AbGroup::free(self.rank(n, x))
    }

    /// `∂_n: F_n(x) → F_{n−1}(x)` for `n ≥ 1`.
    pub fn differential(&self, n: usize, x: usize) -> AbHom {
        assert!(n >= 1, "no differential out of degree 0");
        if let Some(d) = self.differentials.read().expect("cache lock").get(&(n, x)) {
            return (**d).clone();
        }
        let d = self.build_differential(n, x);
        self.differentials
            .write()
            .expect("cache lock")
            .insert((n, x), Arc::new(d.clone()));
        d
    }

    fn build_differential(&self, n: usize, x: usize) -> AbHom {
        let c = self.monoid;
        let (m, total) = (c.index(), c.order());
        let src = self.basis(n, x);
        let images = |(u, v): Pair| -> Vec<(Pair, i64)> {
            if n % 2 == 1 {
                vec![((c.add(u, 1), v), 1), ((u, c.add(v, 1)), -1)]
            } else {
                let plus = (0..total).map(|t| ((c.add(u, total - t - 1), c.add(t, v)), 1));
                let minus = (0..m).map(|s| ((c.add(u, m - s - 1), c.add(s, v)), -1));
                plus.chain(minus).collect()
            }
        };
        self.matrix_between(n, n - 1, x, &src, images)
    }

    /// Matrix of the map sending each source basis pair to a formal sum of
    /// target pairs; coincident targets accumulate.
    fn matrix_between(
        &self,
        n_src: usize,
        n_tgt: usize,
        x: usize,
        src: &[Pair],
        images: impl Fn(Pair) -> Vec<(Pair, i64)>,
    ) -> AbHom {
        let tgt = self.basis(n_tgt, x);
        let index: HashMap<Pair, usize> = tgt.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let mut mat = IntMatrix::zeros(tgt.len(), src.len());
        for (j, b) in src.iter().enumerate() {
            for (p, k) in images(*b) {
                let i = *index
                    .get(&p)
                    .unwrap_or_else(|| panic!("{p:?} is not a basis pair of F_{n_tgt}({x})"));
                mat[(i, j)] += Int::from(k);
            }
        }
        AbHom::new(self.group(n_src, x), self.group(n_tgt, x), mat).expect("free groups")
    }

    /// `ε: F_0(x) → Z`, every basis pair to `1`.
    pub fn augmentation(&self, x: usize) -> AbHom {
        let r = self.rank(0, x);
        let m = IntMatrix::from_fn(1, r, |_, _| Int::one());
        AbHom::new(self.group(0, x), AbGroup::integers(), m).expect("free groups")
    }

    /// `φ: Z → F_0(x)`, `1 ↦ (0, x)`.
    pub fn homotopy_phi(&self, x: usize) -> AbHom {
        let basis = self.basis(0, x);
        let i = basis
            .iter()
            .position(|&p| p == (0, x))
            .expect("(0, x) is a basis pair");
        let mut m = IntMatrix::zeros(basis.len(), 1);
        m[(i, 0)] = Int::one();
        AbHom::new(AbGroup::integers(), self.group(0, x), m).expect("free groups")
    }

    /// `Φ: F_n(x) → F_{n+1}(x)`.
    pub fn homotopy_big_phi(&self, n: usize, x: usize) -> AbHom {
        let c = self.monoid;
        let last = c.order() - 1;
        let src = self.basis(n, x);
        let images = |(u, v): Pair| -> Vec<(Pair, i64)> {
            if n % 2 == 1 {
                if u == last {
                    vec![((0, v), 1)]
                } else {
                    Vec::new()
                }
            } else {
                (0..u).map(|t| ((t, c.add(v, u - t - 1)), 1)).collect()
            }
        };
        self.matrix_between(n, n + 1, x, &src, images)
    }

    /// `∂² = 0`, `ε ∂ = 0`, the contracting-homotopy identities, and, by
    /// Smith normal form, `ker ∂_n = im ∂_{n+1}` and `ker ε = im ∂_1`, for
    /// every element and `n ≤ max_degree`.
    pub fn verify_exactness(&self, max_degree: usize) -> ValidationReport {
        let mut report = ValidationReport::new();
        let z = AbGroup::integers();
        let compose = |g: &AbHom, f: &AbHom| g.compose(f).expect("composable");
        for x in self.monoid.elements() {
            let eps = self.augmentation(x);
            let phi = self.homotopy_phi(x);
            check_equal(
                &mut report,
                "eps-phi",
                Some(x),
                Some(0),
                &compose(&eps, &phi),
                &AbHom::identity(&z),
            );
            let d1 = self.differential(1, x);
            check_zero(&mut report, "eps-d", Some(x), Some(0), &compose(&eps, &d1));
            let lhs = compose(&phi, &eps)
                .add(&compose(&d1, &self.homotopy_big_phi(0, x)))
                .expect("parallel");
            check_equal(
                &mut report,
                "homotopy",
                Some(x),
                Some(0),
                &lhs,
                &AbHom::identity(&self.group(0, x)),
            );
            let coker =
                subquotient(&AbHom::zero(&z, &AbGroup::trivial()), &eps).expect("zero composite");
            report.record(coker.is_trivial(), || Violation {
                check: "eps-surjective".into(),
                element: Some(x),
                degree: Some(0),
                witness: Vec::new(),
                detail: format!("cokernel of augmentation is {coker}"),
            });
            self.record_exact_spot(&mut report, &eps, &d1, x, 0);
            for n in 1..=max_degree {
                let dn = self.differential(n, x);
                let dn1 = self.differential(n + 1, x);
                check_zero(
                    &mut report,
                    "d-squared",
                    Some(x),
                    Some(n),
                    &compose(&dn, &dn1),
                );
                let lhs = compose(&self.homotopy_big_phi(n - 1, x), &dn)
                    .add(&compose(&dn1, &self.homotopy_big_phi(n, x)))
                    .expect("parallel");
                check_equal(
                    &mut report,
                    "homotopy",
                    Some(x),
                    Some(n),
                    &lhs,
                    &AbHom::identity(&self.group(n, x)),
                );
                self.record_exact_spot(&mut report, &dn, &dn1, x, n);
            }
        }
        report
    }

    fn record_exact_spot(
        &self,
        report: &mut ValidationReport,
        out: &AbHom,
        inc: &AbHom,
        x: usize,
        n: usize,
    ) {
        let h = subquotient(out, inc);
        let ok = matches!(&h, Ok(g) if g.is_trivial());
        report.record(ok, || Violation {
            check: "kernel-equals-image".into(),
            element: Some(x),
            degree: Some(n),
            witness: Vec::new(),
            detail: match h {
                Ok(g) => format!("homology {g}"),
                Err(e) => e.to_string(),
            },
        });
    }
}
