//! Left and right modules over the factorization category of `C_{m,q}`.
//!
//! Only the generating maps `1_*` (push) and `1^*` (pull) are stored; every
//! `x_*`, `x^*` is an iterate. A left module has `push1[x], pull1[x]:
//! A(x) → A(x⊕1)`; a right module has `push1[x], pull1[x]: B(x⊕1) → B(x)`.

mod random;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::abelian::{AbGroup, AbHom, AlgebraError, Int, IntMatrix, Subquotient};
use crate::monoid::{CyclicMonoid, MonoidError};
use crate::report::{check_equal, ValidationReport, Violation};

pub use random::{random_module, SizeBounds};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("malformed module: {0}")]
    Shape(String),
    #[error("action violates the congruence: P^m (P^q - I) is not zero")]
    ActionViolatesCongruence,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LeechModule {
    monoid: CyclicMonoid,
    side: Side,
    groups: Vec<AbGroup>,
    push1: Vec<AbHom>,
    pull1: Vec<AbHom>,
}

impl LeechModule {
    /// Assembles a module from raw matrices. Only shapes are checked here;
    /// the axioms, including well-definedness of each matrix, are the job of
    /// [`LeechModule::validate`].
    pub fn new(
        monoid: CyclicMonoid,
        side: Side,
        groups: Vec<AbGroup>,
        push1: Vec<IntMatrix>,
        pull1: Vec<IntMatrix>,
    ) -> Result<Self, ModuleError> {
        let n = monoid.order();
        for (what, len) in [
            ("groups", groups.len()),
            ("push1", push1.len()),
            ("pull1", pull1.len()),
        ] {
            if len != n {
                return Err(ModuleError::Shape(format!(
                    "{what} has {len} entries, expected {n}"
                )));
            }
        }
        let wrap = |name: &str, maps: Vec<IntMatrix>| -> Result<Vec<AbHom>, ModuleError> {
            maps.into_iter()
                .enumerate()
                .map(|(x, m)| {
                    let (s, t) = endpoints(monoid, side, x);
                    let (src, tgt) = (&groups[s], &groups[t]);
                    if m.rows() != tgt.ngens() || m.cols() != src.ngens() {
                        return Err(ModuleError::Shape(format!(
                            "{name}[{x}] is {}x{}, expected {}x{} for {src} -> {tgt}",
                            m.rows(),
                            m.cols(),
                            tgt.ngens(),
                            src.ngens()
                        )));
                    }
                    Ok(AbHom::new_unchecked(src.clone(), tgt.clone(), m))
                })
                .collect()
        };
        let push1 = wrap("push1", push1)?;
        let pull1 = wrap("pull1", pull1)?;
        Ok(LeechModule {
            monoid,
            side,
            groups,
            push1,
            pull1,
        })
    }

    /// Assembles a module from homomorphisms with matching endpoints.
    pub fn from_homs(
        monoid: CyclicMonoid,
        side: Side,
        groups: Vec<AbGroup>,
        push1: Vec<AbHom>,
        pull1: Vec<AbHom>,
    ) -> Result<Self, ModuleError> {
        let n = monoid.order();
        if groups.len() != n || push1.len() != n || pull1.len() != n {
            return Err(ModuleError::Shape(format!("expected {n} groups and maps")));
        }
        for (name, maps) in [("push1", &push1), ("pull1", &pull1)] {
            for (x, f) in maps.iter().enumerate() {
                let (s, t) = endpoints(monoid, side, x);
                if f.source() != &groups[s] || f.target() != &groups[t] {
                    return Err(ModuleError::Shape(format!(
                        "{name}[{x}] is {} -> {}, expected {} -> {}",
                        f.source(),
                        f.target(),
                        groups[s],
                        groups[t]
                    )));
                }
            }
        }
        Ok(LeechModule {
            monoid,
            side,
            groups,
            push1,
            pull1,
        })
    }

    pub fn monoid(&self) -> CyclicMonoid {
        self.monoid
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn group(&self, x: usize) -> &AbGroup {
        &self.groups[x]
    }

    pub fn groups(&self) -> &[AbGroup] {
        &self.groups
    }

    pub fn push1(&self, x: usize) -> &AbHom {
        &self.push1[x]
    }

    pub fn pull1(&self, x: usize) -> &AbHom {
        &self.pull1[x]
    }

    /// `k_*`. Left: `A(y) → A(y⊕k)`. Right: `B(y⊕k) → B(y)`.
    pub fn push(&self, k: usize, y: usize) -> AbHom {
        self.iterate(&self.push1, k, y)
    }

    /// `k^*`, with the same variance as [`LeechModule::push`].
    pub fn pull(&self, k: usize, y: usize) -> AbHom {
        self.iterate(&self.pull1, k, y)
    }

    fn iterate(&self, gens: &[AbHom], k: usize, y: usize) -> AbHom {
        let c = self.monoid;
        let mut f = AbHom::identity(&self.groups[y]);
        let mut cur = y;
        for _ in 0..k {
            f = match self.side {
                Side::Left => gens[cur].compose(&f),
                Side::Right => f.compose(&gens[cur]),
            }
            .expect("module maps are composable");
            cur = c.add(cur, 1);
        }
        f
    }

    /// Checks well-definedness of every matrix, the iterate-stability axiom
    /// `(m+q)_* = m_*`, `(m+q)^* = m^*`, and commutation of `1_*` with `1^*`.
    pub fn validate(&self) -> ValidationReport {
        let c = self.monoid;
        let (m, n) = (c.index(), c.order());
        let mut report = ValidationReport::new();
        for (name, maps) in [("push1", &self.push1), ("pull1", &self.pull1)] {
            for (x, f) in maps.iter().enumerate() {
                report.record(f.is_well_defined(), || Violation {
                    check: "axiom-C".into(),
                    element: Some(x),
                    degree: None,
                    witness: Vec::new(),
                    detail: format!(
                        "{name}[{x}] is not a well-defined homomorphism {} -> {}",
                        f.source(),
                        f.target()
                    ),
                });
            }
        }
        for y in c.elements() {
            check_equal(
                &mut report,
                "axiom-A-push",
                Some(y),
                None,
                &self.push(n, y),
                &self.push(m, y),
            );
            check_equal(
                &mut report,
                "axiom-A-pull",
                Some(y),
                None,
                &self.pull(n, y),
                &self.pull(m, y),
            );
        }
        for x in c.elements() {
            let x1 = c.add(x, 1);
            let (lhs, rhs) = match self.side {
                Side::Left => (
                    self.push1[x1].compose(&self.pull1[x]),
                    self.pull1[x1].compose(&self.push1[x]),
                ),
                Side::Right => (
                    self.push1[x].compose(&self.pull1[x1]),
                    self.pull1[x].compose(&self.push1[x1]),
                ),
            };
            match (lhs, rhs) {
                (Ok(l), Ok(r)) => check_equal(&mut report, "axiom-B", Some(x), None, &l, &r),
                _ => report.record(false, || Violation {
                    check: "axiom-B".into(),
                    element: Some(x),
                    degree: None,
                    witness: Vec::new(),
                    detail: "maps are not composable".into(),
                }),
            }
        }
        report
    }

    /// `1_* = 1^*` at every element.
    pub fn is_symmetric(&self) -> bool {
        self.push1 == self.pull1
    }

    /// The action `P` when the module is an embedded ordinary module: one
    /// group everywhere, the translation opposite to the action trivial, and
    /// the same action map at every element.
    pub fn ordinary_action(&self) -> Option<&AbHom> {
        let g = &self.groups[0];
        if self.groups.iter().any(|h| h != g) {
            return None;
        }
        let (action, trivial) = match self.side {
            Side::Left => (&self.push1, &self.pull1),
            Side::Right => (&self.pull1, &self.push1),
        };
        let id = AbHom::identity(g);
        (trivial.iter().all(|f| *f == id) && action.iter().all(|f| *f == action[0]))
            .then(|| &action[0])
    }

    /// Every group `Z`, every translation the identity.
    pub fn constant_z(monoid: CyclicMonoid, side: Side) -> Self {
        Self::trivial(monoid, side, &AbGroup::integers())
    }

    /// The constant module `A` with identity translations.
    pub fn trivial(monoid: CyclicMonoid, side: Side, group: &AbGroup) -> Self {
        Self::from_ordinary(monoid, side, group, &AbHom::identity(group))
            .expect("identity action is lawful")
    }

    /// Embeds an ordinary module: left `x_* = P^x, x^* = id`; right
    /// `x^* = P^x, x_* = id`.
    pub fn from_ordinary(
        monoid: CyclicMonoid,
        side: Side,
        group: &AbGroup,
        action: &AbHom,
    ) -> Result<Self, ModuleError> {
        if action.source() != group || action.target() != group {
            return Err(ModuleError::Shape(format!(
                "action {} -> {} is not an endomorphism of {group}",
                action.source(),
                action.target()
            )));
        }
        if !action.is_well_defined() {
            return Err(AlgebraError::NotWellDefined("action".into()).into());
        }
        let pm = power(action, monoid.index());
        let pq = power(action, monoid.period());
        let defect = pm.compose(&pq.sub(&AbHom::identity(group))?)?;
        if !defect.is_zero() {
            return Err(ModuleError::ActionViolatesCongruence);
        }
        let n = monoid.order();
        let groups = vec![group.clone(); n];
        let id = vec![AbHom::identity(group); n];
        let act = vec![action.clone(); n];
        let (push1, pull1) = match side {
            Side::Left => (act, id),
            Side::Right => (id, act),
        };
        Self::from_homs(monoid, side, groups, push1, pull1)
    }

    /// The free module on generators at the given elements. Left: basis of
    /// `A(x)` is `{(u, s, v) : u ⊕ π_s ⊕ v = x}`; right: basis of `B(x)` is
    /// `{(u, s, v) : u ⊕ x ⊕ v = π_s}`. Both in lexicographic `(u, s, v)`
    /// order, `s` indexing `points`.
    pub fn free(monoid: CyclicMonoid, side: Side, points: &[usize]) -> Result<Self, ModuleError> {
        if let Some(&p) = points.iter().find(|&&p| !monoid.is_element(p)) {
            return Err(MonoidError::NotCanonical(p).into());
        }
        let c = monoid;
        let bases: Vec<Vec<(usize, usize, usize)>> = c
            .elements()
            .map(|x| free_basis(c, side, points, x))
            .collect();
        let index: Vec<BTreeMap<(usize, usize, usize), usize>> = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, t)| (*t, i)).collect())
            .collect();
        let groups: Vec<AbGroup> = bases.iter().map(|b| AbGroup::free(b.len())).collect();
        // left: 1_* (u,s,v) = (1⊕u, s, v), 1^* (u,s,v) = (u, s, v⊕1)
        // right: 1^* (u,s,v) = (u⊕1, s, v), 1_* (u,s,v) = (u, s, 1⊕v)
        let shift_u = |(u, s, v): (usize, usize, usize)| (c.add(u, 1), s, v);
        let shift_v = |(u, s, v): (usize, usize, usize)| (u, s, c.add(v, 1));
        let build = |x: usize, f: &dyn Fn((usize, usize, usize)) -> (usize, usize, usize)| {
            let (src, tgt) = endpoints(c, side, x);
            let mut m = IntMatrix::zeros(bases[tgt].len(), bases[src].len());
            for (j, b) in bases[src].iter().enumerate() {
                m[(index[tgt][&f(*b)], j)] += Int::one();
            }
            AbHom::new_unchecked(groups[src].clone(), groups[tgt].clone(), m)
        };
        let (push1, pull1): (Vec<AbHom>, Vec<AbHom>) = match side {
            Side::Left => c
                .elements()
                .map(|x| (build(x, &shift_u), build(x, &shift_v)))
                .unzip(),
            Side::Right => c
                .elements()
                .map(|x| (build(x, &shift_v), build(x, &shift_u)))
                .unzip(),
        };
        Self::from_homs(monoid, side, groups, push1, pull1)
    }

    /// Direct sum, with every group put back into canonical form.
    pub fn direct_sum(&self, other: &LeechModule) -> Result<Self, ModuleError> {
        if self.monoid != other.monoid || self.side != other.side {
            return Err(ModuleError::Shape(
                "summands live over different monoids or sides".into(),
            ));
        }
        let (a, b) = (RawModule::from_module(self), RawModule::from_module(other));
        RawModule::block_sum(&[a, b]).canonicalize()
    }
}

/// `(source, target)` elements of the generating maps indexed by `x`.
pub(crate) fn endpoints(c: CyclicMonoid, side: Side, x: usize) -> (usize, usize) {
    let x1 = c.add(x, 1);
    match side {
        Side::Left => (x, x1),
        Side::Right => (x1, x),
    }
}

/// Basis triples `(u, s, v)` of a free module at `x`, in lexicographic order.
pub fn free_basis(
    c: CyclicMonoid,
    side: Side,
    points: &[usize],
    x: usize,
) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for u in c.elements() {
        for (s, &p) in points.iter().enumerate() {
            for v in c.elements() {
                let hit = match side {
                    Side::Left => c.add(c.add(u, p), v) == x,
                    Side::Right => c.add(c.add(u, x), v) == p,
                };
                if hit {
                    out.push((u, s, v));
                }
            }
        }
    }
    out
}

pub(crate) fn power(f: &AbHom, k: usize) -> AbHom {
    (0..k).fold(AbHom::identity(f.source()), |acc, _| {
        f.compose(&acc).expect("endomorphism")
    })
}

/// A module presented on `Z^{rank(x)}` modulo arbitrary relation vectors,
/// with maps given in those ambient coordinates.
#[derive(Clone, Debug)]
pub(crate) struct RawModule {
    pub monoid: CyclicMonoid,
    pub side: Side,
    pub ranks: Vec<usize>,
    pub relations: Vec<Vec<Vec<Int>>>,
    pub push1: Vec<IntMatrix>,
    pub pull1: Vec<IntMatrix>,
}

impl RawModule {
    pub fn from_module(a: &LeechModule) -> Self {
        let relations = a
            .groups
            .iter()
            .map(|g| {
                (g.free_rank()..g.ngens())
                    .map(|i| {
                        let mut e = vec![Int::zero(); g.ngens()];
                        e[i] = g.coord_order(i);
                        e
                    })
                    .collect()
            })
            .collect();
        RawModule {
            monoid: a.monoid,
            side: a.side,
            ranks: a.groups.iter().map(AbGroup::ngens).collect(),
            relations,
            push1: a.push1.iter().map(|f| f.matrix().clone()).collect(),
            pull1: a.pull1.iter().map(|f| f.matrix().clone()).collect(),
        }
    }

    pub fn block_sum(parts: &[RawModule]) -> Self {
        let first = &parts[0];
        let n = first.monoid.order();
        let mut out = RawModule {
            monoid: first.monoid,
            side: first.side,
            ranks: vec![0; n],
            relations: vec![Vec::new(); n],
            push1: Vec::new(),
            pull1: Vec::new(),
        };
        for x in 0..n {
            let total: usize = parts.iter().map(|p| p.ranks[x]).sum();
            out.ranks[x] = total;
            let mut offset = 0;
            for p in parts {
                for r in &p.relations[x] {
                    let mut e = vec![Int::zero(); total];
                    e[offset..offset + r.len()].clone_from_slice(r);
                    out.relations[x].push(e);
                }
                offset += p.ranks[x];
            }
        }
        let diag = |pick: &dyn Fn(&RawModule) -> &Vec<IntMatrix>| -> Vec<IntMatrix> {
            (0..n)
                .map(|x| {
                    let blocks: Vec<&IntMatrix> = parts.iter().map(|p| &pick(p)[x]).collect();
                    block_diagonal(&blocks)
                })
                .collect()
        };
        out.push1 = diag(&|p| &p.push1);
        out.pull1 = diag(&|p| &p.pull1);
        out
    }

    /// Rewrites every group in canonical form, transporting the maps.
    pub fn canonicalize(self) -> Result<LeechModule, ModuleError> {
        let c = self.monoid;
        let sqs: Vec<Subquotient> = c
            .elements()
            .map(|x| {
                Subquotient::build(&vec![Int::zero(); self.ranks[x]], None, &self.relations[x])
            })
            .collect::<Result<_, _>>()?;
        let transport = |x: usize, raw: &IntMatrix| -> Result<AbHom, ModuleError> {
            let (s, t) = endpoints(c, self.side, x);
            let cols: Vec<Vec<Int>> = sqs[s]
                .generators()
                .iter()
                .map(|g| sqs[t].reduce(&raw.mul_vec(g)))
                .collect::<Result<_, _>>()?;
            let m = IntMatrix::from_columns(sqs[t].group().ngens(), &cols);
            Ok(AbHom::new(
                sqs[s].group().clone(),
                sqs[t].group().clone(),
                m,
            )?)
        };
        let push1 = (0..c.order())
            .map(|x| transport(x, &self.push1[x]))
            .collect::<Result<_, _>>()?;
        let pull1 = (0..c.order())
            .map(|x| transport(x, &self.pull1[x]))
            .collect::<Result<_, _>>()?;
        let groups = sqs.iter().map(|s| s.group().clone()).collect();
        LeechModule::from_homs(c, self.side, groups, push1, pull1)
    }
}

fn block_diagonal(blocks: &[&IntMatrix]) -> IntMatrix {
    let rows = blocks.iter().map(|b| b.rows()).sum();
    let cols = blocks.iter().map(|b| b.cols()).sum();
    let mut m = IntMatrix::zeros(rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                m[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
        r0 += b.rows();
        c0 += b.cols();
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(m: usize, q: usize) -> CyclicMonoid {
        CyclicMonoid::new(m, q).unwrap()
    }

    #[test]
    fn constant_z_is_lawful_and_symmetric() {
        for side in [Side::Left, Side::Right] {
            let a = LeechModule::constant_z(mono(2, 9), side);
            assert!(a.validate().passed());
            assert!(a.is_symmetric());
            assert_eq!(a.push(0, 3), AbHom::identity(&AbGroup::integers()));
            assert_eq!(a.push(5, 3), AbHom::identity(&AbGroup::integers()));
        }
    }

    #[test]
    fn free_module_on_c12() {
        let c = mono(1, 2);
        let f = LeechModule::free(c, Side::Left, &[0]).unwrap();
        assert_eq!(free_basis(c, Side::Left, &[0], 0), vec![(0, 0, 0)]);
        assert_eq!(f.group(0), &AbGroup::free(1));
        assert!(f.validate().passed());
        assert!(!f.is_symmetric());
        let r = LeechModule::free(c, Side::Right, &[2, 0]).unwrap();
        assert!(r.validate().passed());
    }

    #[test]
    fn unlawful_actions_rejected() {
        let g = AbGroup::integers();
        let two = AbHom::scalar(&g, &Int::from(2));
        assert_eq!(
            LeechModule::from_ordinary(mono(0, 3), Side::Left, &g, &two),
            Err(ModuleError::ActionViolatesCongruence)
        );
        let zero = AbHom::zero(&g, &g);
        assert!(
            LeechModule::from_ordinary(mono(2, 5), Side::Left, &g, &zero)
                .unwrap()
                .validate()
                .passed()
        );
    }

    #[test]
    fn infinite_order_push_fails_axiom_a() {
        // push1 = multiplication by 2 on Z, m = 0: (m+q)_* = 2^q ≠ id = 0_*
        let c = mono(0, 2);
        let two = IntMatrix::from_rows(&[vec![2]]).unwrap();
        let id = IntMatrix::identity(1);
        let a = LeechModule::new(
            c,
            Side::Left,
            vec![AbGroup::integers(); 2],
            vec![two.clone(), two],
            vec![id.clone(), id],
        )
        .unwrap();
        let report = a.validate();
        assert!(!report.passed());
        assert!(report
            .violations()
            .iter()
            .any(|v| v.check == "axiom-A-push"));
    }

    #[test]
    fn ill_defined_matrix_reported() {
        let c = mono(1, 1);
        let g = AbGroup::cyclic(4);
        let h = AbGroup::cyclic(6);
        let one = IntMatrix::identity(1);
        let a = LeechModule::new(
            c,
            Side::Left,
            vec![g, h],
            vec![one.clone(), one.clone()],
            vec![one.clone(), one],
        )
        .unwrap();
        assert!(a
            .validate()
            .violations()
            .iter()
            .any(|v| v.check == "axiom-C"));
    }

    #[test]
    fn direct_sum_recanonicalizes() {
        let c = mono(1, 2);
        let a = LeechModule::trivial(c, Side::Left, &AbGroup::cyclic(2));
        let b = LeechModule::trivial(c, Side::Left, &AbGroup::cyclic(3));
        let s = a.direct_sum(&b).unwrap();
        assert_eq!(s.group(0), &AbGroup::cyclic(6));
        assert!(s.validate().passed());
        assert!(s.is_symmetric());
    }
}
