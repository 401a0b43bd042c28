mod common;

use kdom_core::bounds::within_sparsity_bound;
use kdom_core::generators::{diameter_gate, generate, permute_ids, Family, GeneratorSpec, SplitMix64};
use kdom_core::graph::diameter;
use kdom_core::oracle::has_k2t_minor;
use kdom_core::{Diameter, Graph};

#[test]
fn every_family_is_certified_minor_free_up_to_fourteen_vertices() {
    for family in Family::ALL {
        let t = family.certified_t();
        for n in family.min_n().max(1)..=14 {
            for seed in 0..20 {
                let g = generate(&GeneratorSpec::new(family, n, seed)).unwrap();
                assert!(!has_k2t_minor(&g, t).unwrap(), "{family} n={n} seed={seed}");
            }
        }
    }
}

#[test]
fn every_family_meets_its_edge_ceiling_and_is_connected() {
    for family in Family::ALL {
        for n in [family.min_n(), 10, 30, 100, 300] {
            for seed in 0..5 {
                let g = generate(&GeneratorSpec::new(family, n, seed)).unwrap();
                assert_eq!(g.n(), n);
                assert!(g.is_connected(), "{family} n={n}");
                assert!(
                    within_sparsity_bound(g.n(), g.m(), family.certified_t()),
                    "{family} n={n}"
                );
                assert_eq!(g.ids(), (1..=n as u64).collect::<Vec<_>>().as_slice());
            }
        }
    }
}

#[test]
fn family_shapes() {
    for n in 3..40 {
        for seed in 0..3 {
            let mop = generate(&GeneratorSpec::new(Family::MaximalOuterplanar, n, seed)).unwrap();
            assert_eq!(mop.m(), 2 * n - 3);
            let tree = generate(&GeneratorSpec::new(Family::RandomTree, n, seed)).unwrap();
            assert_eq!(tree.m(), n - 1);
        }
    }
    let p5 = generate(&GeneratorSpec::new(Family::Path, 5, 77)).unwrap();
    assert_eq!(p5, Graph::from_edges([(1, 2), (2, 3), (3, 4), (4, 5)]).unwrap());
    let fan = generate(&GeneratorSpec::new(Family::Fan, 6, 0)).unwrap();
    assert_eq!(fan.degree(fan.index_of(6).unwrap()), 5);
    for seed in 0..10 {
        let cactus = generate(&GeneratorSpec::new(Family::Cactus, 12, seed)).unwrap();
        assert!(!has_k2t_minor(&cactus, 3).unwrap());
    }
}

#[test]
fn invalid_specs_are_rejected() {
    assert!(generate(&GeneratorSpec::new(Family::Cycle, 2, 0)).is_err());
    assert!(generate(&GeneratorSpec::new(Family::Path, 0, 0)).is_err());
    assert!(generate(&GeneratorSpec::new(Family::MaximalOuterplanar, 2, 0)).is_err());
}

#[test]
fn same_spec_same_graph() {
    for family in Family::ALL {
        let spec = GeneratorSpec::new(family, 57, 0xDEAD_BEEF);
        assert_eq!(generate(&spec).unwrap().to_json(), generate(&spec).unwrap().to_json());
    }
    let a = generate(&GeneratorSpec::new(Family::Cactus, 40, 1)).unwrap();
    let b = generate(&GeneratorSpec::new(Family::Cactus, 40, 2)).unwrap();
    assert_ne!(a, b);
}

#[test]
fn reference_stream() {
    // published SplitMix64 outputs for seed 1234567
    let mut rng = SplitMix64::new(1234567);
    let got: Vec<u64> = (0..3).map(|_| rng.next_u64()).collect();
    assert_eq!(got, [6457827717110365317, 3203168211198807973, 9817491932198370423]);
}

#[test]
fn diameter_gate_examples() {
    let p20 = generate(&GeneratorSpec::new(Family::Path, 20, 0)).unwrap();
    assert!(diameter_gate(&p20, 2).unwrap());
    let k4 = Graph::from_edges([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    assert!(!diameter_gate(&k4, 1).unwrap());
    let c16 = generate(&GeneratorSpec::new(Family::Cycle, 16, 0)).unwrap();
    assert!(diameter_gate(&c16, 2).unwrap());
    assert!(!diameter_gate(&c16, 3).unwrap());
    let split = Graph::new(0..4, [(0, 1), (2, 3)]).unwrap();
    assert!(diameter_gate(&split, 1).is_err());
}

#[test]
fn permuted_ids_keep_the_shape() {
    let g = generate(&GeneratorSpec::new(Family::MaximalOuterplanar, 25, 4)).unwrap();
    let h = permute_ids(&g, 99);
    assert_eq!((h.n(), h.m()), (g.n(), g.m()));
    assert_eq!(diameter(&g).unwrap(), diameter(&h).unwrap());
    assert!(matches!(diameter(&h).unwrap(), Diameter::Finite(_)));
    assert_ne!(g, h);
}
