use leech_core::monoid::{Arrow, CyclicMonoid, MonoidError};
use proptest::prelude::*;

fn all_monoids(max_order: usize) -> impl Iterator<Item = CyclicMonoid> {
    (2..=max_order).flat_map(|n| (0..n).map(move |m| CyclicMonoid::new(m, n - m).unwrap()))
}

/// `℘` by repeatedly stepping back one period, never by a remainder.
fn project_slowly(c: CyclicMonoid, mut x: usize) -> usize {
    while x >= c.order() {
        x -= c.period();
    }
    x
}

#[test]
fn projection_is_idempotent_and_congruent() {
    for c in all_monoids(12) {
        for x in 0..60 {
            let p = c.project(x);
            assert_eq!(p, project_slowly(c, x), "{c} x={x}");
            assert_eq!(c.project(p), p);
            if x >= c.index() {
                assert_eq!((x - p) % c.period(), 0);
            }
        }
    }
}

#[test]
fn addition_is_a_commutative_monoid() {
    for c in all_monoids(12) {
        for x in c.elements() {
            assert_eq!(c.add(0, x), x);
            for y in c.elements() {
                assert_eq!(c.add(x, y), c.add(y, x));
                for z in c.elements() {
                    assert_eq!(
                        c.add(c.add(x, y), z),
                        c.add(x, c.add(y, z)),
                        "{c} ({x},{y},{z})"
                    );
                }
            }
        }
    }
}

#[test]
fn scalar_depends_only_on_the_congruence_class() {
    for c in all_monoids(8) {
        for x in c.elements() {
            let mut acc = 0;
            for r in 0..40usize {
                assert_eq!(c.scalar(r, x), acc, "{c} {r}·{x}");
                assert_eq!(c.scalar(r, x), project_slowly(c, r * x));
                acc = c.add(acc, x);
            }
            for r in 0..20usize {
                for s in 0..20usize {
                    if project_slowly(c, r * x) == project_slowly(c, s * x) {
                        assert_eq!(c.scalar(r, x), c.scalar(s, x));
                    }
                }
            }
        }
    }
}

#[test]
fn arrows_form_a_category() {
    for c in all_monoids(5) {
        let arrows: Vec<Arrow> = c
            .elements()
            .flat_map(|u| {
                c.elements()
                    .flat_map(move |y| c.elements().map(move |v| Arrow::new(u, y, v)))
            })
            .collect();
        for &f in &arrows {
            assert_eq!(
                c.compose_arrows(Arrow::identity(c.codomain(f)), f).unwrap(),
                f
            );
            assert_eq!(c.compose_arrows(f, Arrow::identity(f.center)).unwrap(), f);
            for &g in arrows.iter().filter(|g| g.center == c.codomain(f)) {
                let gf = c.compose_arrows(g, f).unwrap();
                assert_eq!(c.codomain(gf), c.codomain(g));
                for &h in arrows.iter().filter(|h| h.center == c.codomain(g)) {
                    let left = c.compose_arrows(h, gf).unwrap();
                    let right = c
                        .compose_arrows(c.compose_arrows(h, g).unwrap(), f)
                        .unwrap();
                    assert_eq!(left, right, "{c}: {h} {g} {f}");
                }
            }
        }
    }
}

#[test]
fn documented_values() {
    let c = CyclicMonoid::new(2, 9).unwrap();
    assert_eq!(c.project(5), 5);
    assert_eq!(c.project(16), 7);
    assert_eq!(c.add(8, 8), 7);
    assert_eq!(c.scalar(2, 8), 7);
    assert_eq!(
        c.elements().collect::<Vec<_>>(),
        (0..11).collect::<Vec<_>>()
    );
    assert_eq!(CyclicMonoid::new(1, 2).unwrap().add(2, 2), 2);
    assert_eq!(CyclicMonoid::new(3, 4).unwrap().scalar(5, 3), 3);
    assert_eq!(
        CyclicMonoid::new(0, 1),
        Err(MonoidError::TooSmall { m: 0, q: 1 })
    );
    assert_eq!(
        CyclicMonoid::new(1, 1)
            .unwrap()
            .elements()
            .collect::<Vec<_>>(),
        vec![0, 1]
    );
    assert_eq!(c.cohomological_period(), 18);
    assert_eq!(CyclicMonoid::new(2, 4).unwrap().cohomological_period(), 4);
}

proptest! {
    #[test]
    fn three_composable_arrows_associate(u in 0usize..5, y in 0usize..5, v in 0usize..5, a in 0usize..5, b in 0usize..5, d in 0usize..5, e in 0usize..5) {
        let c = CyclicMonoid::new(2, 3).unwrap();
        let f = Arrow::new(u, y, v);
        let g = Arrow::new(a, c.codomain(f), b);
        let h = Arrow::new(d, c.codomain(g), e);
        let left = c.compose_arrows(h, c.compose_arrows(g, f).unwrap()).unwrap();
        let right = c.compose_arrows(c.compose_arrows(h, g).unwrap(), f).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn huge_scalars_stay_canonical(m in 0usize..20, q in 1usize..20, r in any::<usize>(), x in 0usize..39) {
        prop_assume!(m + q >= 2 && x < m + q);
        let c = CyclicMonoid::new(m, q).unwrap();
        let s = c.scalar(r, x);
        prop_assert!(c.is_element(s));
        let exact = r as u128 * x as u128;
        if exact >= m as u128 {
            prop_assert_eq!((exact - s as u128) % q as u128, 0);
        }
    }
}
