//! Seeded random modules, lawful by construction: a direct sum of blocks that
//! satisfy the axioms on their own, re-expressed at every element in a random
//! unimodular basis and then put back into canonical form.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{endpoints, LeechModule, RawModule, Side};
use crate::abelian::{Int, IntMatrix};
use crate::monoid::CyclicMonoid;

/// Limits on the building blocks of a random module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeBounds {
    /// Rank of the free part of an action block.
    pub max_free_rank: usize,
    /// Number of cyclic summands of a torsion block.
    pub max_torsion_coords: usize,
    /// Torsion orders are drawn from `2..=max_torsion_order`.
    pub max_torsion_order: u64,
    /// Number of direct summands.
    pub max_blocks: usize,
    /// Cap on the number of generators of every `A(x)`; blocks that would
    /// exceed it are redrawn.
    pub max_group_rank: Option<usize>,
}

impl Default for SizeBounds {
    fn default() -> Self {
        SizeBounds {
            max_free_rank: 2,
            max_torsion_coords: 2,
            max_torsion_order: 6,
            max_blocks: 3,
            max_group_rank: None,
        }
    }
}

/// A random lawful module; identical output for identical arguments.
pub fn random_module(
    monoid: CyclicMonoid,
    side: Side,
    seed: u64,
    bounds: &SizeBounds,
) -> LeechModule {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nblocks = rng.gen_range(1..=bounds.max_blocks.max(1));
    let cap = bounds.max_group_rank.unwrap_or(usize::MAX);
    let mut load = vec![0usize; monoid.order()];
    let mut blocks = Vec::new();
    for _ in 0..nblocks {
        for _attempt in 0..8 {
            let block = random_block(&mut rng, monoid, side, bounds);
            if load.iter().zip(&block.ranks).all(|(l, r)| l + r <= cap) {
                load.iter_mut().zip(&block.ranks).for_each(|(l, r)| *l += r);
                blocks.push(block);
                break;
            }
        }
    }
    if blocks.is_empty() {
        let carrier = Carrier {
            rank: cap.min(1),
            order: bounds.max_torsion_order.max(2),
        };
        let id = IntMatrix::identity(carrier.rank);
        blocks.push(constant_block(monoid, side, carrier, &id, &id));
    }
    let mut raw = RawModule::block_sum(&blocks);
    scramble(&mut rng, &mut raw);
    raw.canonicalize().expect("random blocks are lawful")
}

/// The group on which a block lives: `Z^r` or `(Z/d)^r`.
#[derive(Clone, Copy, Debug)]
struct Carrier {
    rank: usize,
    order: u64,
}

impl Carrier {
    fn relations(&self) -> Vec<Vec<Int>> {
        if self.order == 0 {
            return Vec::new();
        }
        (0..self.rank)
            .map(|i| {
                let mut e = vec![Int::zero(); self.rank];
                e[i] = Int::from(self.order);
                e
            })
            .collect()
    }
}

fn random_carrier(rng: &mut ChaCha8Rng, bounds: &SizeBounds) -> Carrier {
    if bounds.max_torsion_order >= 2 && bounds.max_torsion_coords > 0 && rng.gen_bool(0.5) {
        Carrier {
            rank: rng.gen_range(1..=bounds.max_torsion_coords),
            order: rng.gen_range(2..=bounds.max_torsion_order),
        }
    } else {
        Carrier {
            rank: rng.gen_range(1..=bounds.max_free_rank.max(1)),
            order: 0,
        }
    }
}

fn random_block(
    rng: &mut ChaCha8Rng,
    c: CyclicMonoid,
    side: Side,
    bounds: &SizeBounds,
) -> RawModule {
    match rng.gen_range(0..4) {
        0 => {
            let point = rng.gen_range(0..c.order());
            let free = LeechModule::free(c, side, &[point]).expect("point is an element");
            RawModule::from_module(&free)
        }
        1 => action_block(rng, c, side, bounds),
        2 if c.index() > 0 => support_block(rng, c, side, bounds),
        _ => {
            let carrier = Carrier {
                rank: 1,
                order: rng.gen_range(2..=bounds.max_torsion_order.max(2)),
            };
            constant_block(
                c,
                side,
                carrier,
                &IntMatrix::identity(1),
                &IntMatrix::identity(1),
            )
        }
    }
}

fn constant_block(
    c: CyclicMonoid,
    side: Side,
    carrier: Carrier,
    push: &IntMatrix,
    pull: &IntMatrix,
) -> RawModule {
    let n = c.order();
    RawModule {
        monoid: c,
        side,
        ranks: vec![carrier.rank; n],
        relations: vec![carrier.relations(); n],
        push1: vec![push.clone(); n],
        pull1: vec![pull.clone(); n],
    }
}

/// An endomorphism `P` of the carrier with `P^m (P^q - I) = 0`: either of
/// finite order dividing `q`, or nilpotent of index at most `m`.
fn random_action(rng: &mut ChaCha8Rng, c: CyclicMonoid, carrier: Carrier) -> IntMatrix {
    let (m, q) = (c.index(), c.period());
    let r = carrier.rank;
    let kind = if m > 0 {
        rng.gen_range(0..3)
    } else {
        rng.gen_range(0..2)
    };
    match kind {
        0 => {
            // permutation whose cycle lengths divide q
            let mut perm: Vec<usize> = (0..r).collect();
            if q % 2 == 0 && r >= 2 && rng.gen_bool(0.5) {
                perm.swap(0, 1);
            }
            IntMatrix::from_fn(r, r, |i, j| {
                if perm[j] == i {
                    Int::one()
                } else {
                    Int::zero()
                }
            })
        }
        1 => {
            // a unit scalar whose order divides q
            let units: Vec<i64> = match carrier.order {
                0 => [1i64, -1]
                    .into_iter()
                    .filter(|&u| u == 1 || q % 2 == 0)
                    .collect(),
                d => (1..d as i64)
                    .filter(|&u| unit_order_divides(u, d as i64, q))
                    .collect(),
            };
            let u = *units.choose(rng).expect("1 is always admissible");
            IntMatrix::identity(r).scale(&Int::from(u))
        }
        _ => {
            // strictly upper triangular, so P^r = 0; needs r ≤ m
            if r <= m {
                IntMatrix::from_fn(r, r, |i, j| {
                    if j > i {
                        Int::from(rng.gen_range(-2i64..=2))
                    } else {
                        Int::zero()
                    }
                })
            } else {
                IntMatrix::zeros(r, r)
            }
        }
    }
}

fn unit_order_divides(u: i64, d: i64, q: usize) -> bool {
    let mut p = 1i64;
    for _ in 0..q {
        p = (p * u).rem_euclid(d);
    }
    p == 1 % d
}

fn matrix_power(p: &IntMatrix, k: usize) -> IntMatrix {
    (0..k).fold(IntMatrix::identity(p.rows()), |acc, _| {
        p.mul(&acc).expect("square")
    })
}

/// `1_* = P^a, 1^* = P^b` for a random admissible action `P`; powers of one
/// map commute, so every choice of `(a, b)` is lawful.
fn action_block(
    rng: &mut ChaCha8Rng,
    c: CyclicMonoid,
    side: Side,
    bounds: &SizeBounds,
) -> RawModule {
    let carrier = random_carrier(rng, bounds);
    let p = random_action(rng, c, carrier);
    let (a, b) = match rng.gen_range(0..3) {
        0 => (1, 0),
        1 => (0, 1),
        _ => (rng.gen_range(0..=2), rng.gen_range(0..=2)),
    };
    constant_block(c, side, carrier, &matrix_power(&p, a), &matrix_power(&p, b))
}

/// A constant group supported on `{x ≥ k}` or `{x < k}` for `1 ≤ k ≤ m`,
/// identity maps inside the support. Left modules need an upward-closed
/// support for a submodule of the constant module, right modules a
/// downward-closed one; the complement gives the matching quotient.
fn support_block(
    rng: &mut ChaCha8Rng,
    c: CyclicMonoid,
    side: Side,
    bounds: &SizeBounds,
) -> RawModule {
    let carrier = random_carrier(rng, bounds);
    let k = rng.gen_range(1..=c.index());
    let upper = rng.gen_bool(0.5);
    let inside = |x: usize| (x >= k) == upper;
    let n = c.order();
    let ranks: Vec<usize> = (0..n)
        .map(|x| if inside(x) { carrier.rank } else { 0 })
        .collect();
    let relations = (0..n)
        .map(|x| {
            if inside(x) {
                carrier.relations()
            } else {
                Vec::new()
            }
        })
        .collect();
    let maps: Vec<IntMatrix> = (0..n)
        .map(|x| {
            let (s, t) = endpoints(c, side, x);
            if inside(s) && inside(t) {
                IntMatrix::identity(carrier.rank)
            } else {
                IntMatrix::zeros(ranks[t], ranks[s])
            }
        })
        .collect();
    RawModule {
        monoid: c,
        side,
        ranks,
        relations,
        push1: maps.clone(),
        pull1: maps,
    }
}

/// A random unimodular `W` together with `W⁻¹`.
fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> (IntMatrix, IntMatrix) {
    let mut w = IntMatrix::identity(n);
    let mut winv = IntMatrix::identity(n);
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            w[(0, 0)] = -Int::one();
            winv[(0, 0)] = -Int::one();
        }
        return (w, winv);
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let k = Int::from(*[-2i64, -1, 1, 2].choose(rng).expect("nonempty"));
        // W <- E W with E = I + k e_i e_jᵀ, and W⁻¹ <- W⁻¹ E⁻¹
        for col in 0..n {
            let v = &w[(j, col)] * &k;
            w[(i, col)] += v;
        }
        for row in 0..n {
            let v = &winv[(row, i)] * &k;
            winv[(row, j)] -= v;
        }
    }
    (w, winv)
}

fn scramble(rng: &mut ChaCha8Rng, raw: &mut RawModule) {
    let c = raw.monoid;
    let changes: Vec<(IntMatrix, IntMatrix)> = raw
        .ranks
        .iter()
        .map(|&r| random_unimodular(rng, r))
        .collect();
    for (x, (w, _)) in changes.iter().enumerate() {
        for rel in &mut raw.relations[x] {
            *rel = w.mul_vec(rel);
        }
    }
    for x in c.elements() {
        let (s, t) = endpoints(c, raw.side, x);
        for maps in [&mut raw.push1, &mut raw.pull1] {
            let f = &maps[x];
            maps[x] = changes[t]
                .0
                .mul(f)
                .and_then(|g| g.mul(&changes[s].1))
                .expect("conforming shapes");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbGroup;

    #[test]
    fn unimodular_pairs_are_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 0..5 {
            let (w, winv) = random_unimodular(&mut rng, n);
            assert_eq!(w.mul(&winv).unwrap(), IntMatrix::identity(n));
        }
    }

    #[test]
    fn random_modules_validate_and_are_reproducible() {
        let bounds = SizeBounds::default();
        for (m, q) in [(0, 2), (1, 2), (2, 3), (0, 4), (3, 1)] {
            let c = CyclicMonoid::new(m, q).unwrap();
            for side in [Side::Left, Side::Right] {
                for seed in 0..20 {
                    let a = random_module(c, side, seed, &bounds);
                    let report = a.validate();
                    assert!(
                        report.passed(),
                        "C_{{{m},{q}}} {side} seed {seed}: {report}"
                    );
                    assert_eq!(a, random_module(c, side, seed, &bounds));
                }
            }
        }
    }

    #[test]
    fn group_rank_cap_is_respected() {
        let bounds = SizeBounds {
            max_group_rank: Some(2),
            ..SizeBounds::default()
        };
        for (m, q) in [(0, 5), (2, 3), (1, 1)] {
            let c = CyclicMonoid::new(m, q).unwrap();
            for seed in 0..30 {
                let a = random_module(c, Side::Left, seed, &bounds);
                assert!(a.groups().iter().all(|g| g.ngens() <= 2));
                assert!(a.validate().passed());
            }
        }
        let none = SizeBounds {
            max_group_rank: Some(0),
            ..SizeBounds::default()
        };
        let a = random_module(CyclicMonoid::new(1, 2).unwrap(), Side::Right, 3, &none);
        assert!(a.groups().iter().all(AbGroup::is_trivial));
    }
}
