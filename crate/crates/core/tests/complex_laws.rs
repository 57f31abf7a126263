use leech_core::abelian::{groups_isomorphic, AbGroup, AbHom, Int};
use leech_core::complex::{
    comparison_report, complex_homology, generating_arrows_report, hom_complex_fast,
    hom_complex_oracle, homology_table, tensor_complex_fast, tensor_complex_oracle, AbComplex,
    ComplexError, Direction, OracleComplex,
};
use leech_core::engine::closed_form;
use leech_core::module::{random_module, LeechModule, Side, SizeBounds};
use leech_core::monoid::CyclicMonoid;
use proptest::prelude::*;

fn all_monoids(max_order: usize) -> impl Iterator<Item = CyclicMonoid> {
    (2..=max_order).flat_map(|n| (0..n).map(move |m| CyclicMonoid::new(m, n - m).unwrap()))
}

fn small() -> SizeBounds {
    SizeBounds {
        max_free_rank: 2,
        max_torsion_coords: 2,
        max_torsion_order: 6,
        max_blocks: 2,
        max_group_rank: Some(2),
    }
}

fn fast_and_oracle(a: &LeechModule, degree: usize) -> (AbComplex, OracleComplex) {
    match a.side() {
        Side::Left => (
            hom_complex_fast(a, degree).unwrap(),
            hom_complex_oracle(a, degree).unwrap(),
        ),
        Side::Right => (
            tensor_complex_fast(a, degree).unwrap(),
            tensor_complex_oracle(a, degree).unwrap(),
        ),
    }
}

#[test]
fn fast_spots_match_oracle_spots() {
    for c in all_monoids(5) {
        for side in [Side::Left, Side::Right] {
            for seed in 0..3 {
                let a = random_module(c, side, 40_000 + seed, &small());
                let (fast, oracle) = fast_and_oracle(&a, 4);
                for n in 0..=5 {
                    assert!(
                        groups_isomorphic(fast.spot(n), oracle.complex.spot(n)),
                        "{c} {side} seed {seed} spot {n}"
                    );
                }
                let report = comparison_report(&fast, &oracle);
                assert!(report.passed(), "{c} {side} seed {seed}: {report}");
            }
        }
    }
}

#[test]
fn fast_complex_homology_is_the_closed_form() {
    for c in all_monoids(5) {
        for side in [Side::Left, Side::Right] {
            for seed in 0..5 {
                let a = random_module(c, side, 50_000 + seed, &SizeBounds::default());
                let fast = match side {
                    Side::Left => hom_complex_fast(&a, 6).unwrap(),
                    Side::Right => tensor_complex_fast(&a, 6).unwrap(),
                };
                for n in 0..=6 {
                    assert_eq!(
                        complex_homology(&fast, n).unwrap(),
                        closed_form(&a, n).unwrap(),
                        "{c} {side} seed {seed} degree {n}"
                    );
                }
            }
        }
    }
}

#[test]
fn generating_arrows_suffice_on_tiny_monoids() {
    for c in all_monoids(3) {
        for side in [Side::Left, Side::Right] {
            for seed in 0..4 {
                let a = random_module(c, side, 60_000 + seed, &small());
                let report = generating_arrows_report(&a, 3).unwrap();
                assert!(report.passed(), "{c} {side} seed {seed}: {report}");
            }
            let report = generating_arrows_report(&LeechModule::constant_z(c, side), 3).unwrap();
            assert!(report.passed());
        }
    }
}

#[test]
fn wrong_side_is_rejected() {
    let c = CyclicMonoid::new(1, 2).unwrap();
    let a = LeechModule::constant_z(c, Side::Left);
    let b = LeechModule::constant_z(c, Side::Right);
    assert!(matches!(
        tensor_complex_fast(&a, 2),
        Err(ComplexError::WrongSide {
            expected: Side::Right
        })
    ));
    assert!(matches!(
        hom_complex_oracle(&b, 2),
        Err(ComplexError::WrongSide {
            expected: Side::Left
        })
    ));
}

#[test]
fn hand_built_complexes() {
    // 0 → Z --2--> Z --0--> Z/4
    let z = AbGroup::integers();
    let z4 = AbGroup::cyclic(4);
    let two = AbHom::scalar(&z, &Int::from(2));
    let c = AbComplex::new(
        Direction::Cochain,
        vec![z.clone(), z.clone(), z4.clone()],
        vec![two.clone(), AbHom::zero(&z, &z4)],
    )
    .unwrap();
    assert_eq!(
        homology_table(&c, 1).unwrap(),
        vec![AbGroup::trivial(), AbGroup::cyclic(2)]
    );
    assert_eq!(
        c.homology(2).unwrap_err(),
        ComplexError::SpotOutOfRange { n: 2, top: 2 }
    );

    // Z/4 --2--> Z/4 --2--> Z/4 as a chain complex: homology Z/2 in degree 1
    let twice = AbHom::scalar(&z4, &Int::from(2));
    let chain = AbComplex::new(
        Direction::Chain,
        vec![z4.clone(); 3],
        vec![twice.clone(), twice.clone()],
    )
    .unwrap();
    assert_eq!(complex_homology(&chain, 0).unwrap(), AbGroup::cyclic(2));
    assert_eq!(complex_homology(&chain, 1).unwrap(), AbGroup::trivial());

    let identity = AbHom::identity(&z);
    assert_eq!(
        AbComplex::new(
            Direction::Chain,
            vec![z.clone(); 3],
            vec![identity.clone(), identity]
        )
        .unwrap_err(),
        ComplexError::NotAComplex(1)
    );
    assert_eq!(
        AbComplex::new(Direction::Cochain, vec![z.clone(), z4], vec![two]).unwrap_err(),
        ComplexError::Shape(0)
    );
    assert!(AbComplex::new(Direction::Cochain, vec![z], vec![]).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracle_homology_agrees_with_fast_homology(m in 0usize..3, q in 1usize..3, seed in 0u64..10_000, left in any::<bool>()) {
        prop_assume!(m + q >= 2);
        let c = CyclicMonoid::new(m, q).unwrap();
        let side = if left { Side::Left } else { Side::Right };
        let a = random_module(c, side, seed, &small());
        let (fast, oracle) = fast_and_oracle(&a, 4);
        for n in 0..=4 {
            prop_assert!(groups_isomorphic(&complex_homology(&fast, n).unwrap(), &complex_homology(&oracle.complex, n).unwrap()));
        }
    }
}
