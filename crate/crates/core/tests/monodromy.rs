use num_bigint::BigUint;
use quiltkit::dessin::build_dessin;
use quiltkit::farey::iguanodon_symbol;
use quiltkit::permgroup::{group_from_dessin, AltSym};

fn factorial(n: u32) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

fn iguanodon_group(n: u64) -> quiltkit::permgroup::PermutationGroup {
    group_from_dessin(&build_dessin(&iguanodon_symbol(n).unwrap()).unwrap())
}

#[test]
fn tabulated_orders_and_recognition() {
    let half = |n| factorial(n) / BigUint::from(2u8);
    let expected = [
        (2, BigUint::from(168u32), AltSym::Other),
        (3, BigUint::from(95040u32), AltSym::Other),
        (4, half(16), AltSym::Alt),
        (5, BigUint::from(244823040u32), AltSym::Other),
        (6, half(28), AltSym::Alt),
    ];
    for (n, order, kind) in expected {
        let g = iguanodon_group(n);
        assert_eq!(g.order(), order, "n = {n}");
        assert_eq!(g.alt_sym(), kind, "n = {n}");
        assert!(g.is_transitive());
        assert!(g.is_2transitive().unwrap(), "n = {n}");
    }
}

#[test]
fn orders_do_not_depend_on_seed() {
    for seed in [1u64, 7, 0xdead_beef] {
        let g = iguanodon_group(3).with_seed(seed);
        assert_eq!(g.order(), BigUint::from(95040u32));
    }
}

#[test]
fn class_counts() {
    let c2 = iguanodon_group(2).conjugacy_classes(10_000_000).unwrap();
    assert_eq!(c2.len(), 6);
    let c3 = iguanodon_group(3).conjugacy_classes(10_000_000).unwrap();
    assert_eq!(c3.len(), 15);
    assert_eq!(c3.sizes().iter().map(|&s| s).sum::<u64>(), 95040);
}

#[test]
fn character_tables_of_small_iguanodon_groups() {
    use quiltkit::reptheory::{decompose_two_transitive, decompose_with_table, CharacterTable};
    for (n, degrees) in [(2u64, vec![1u64, 3, 3, 6, 7, 8]), (3, vec![])] {
        let d = build_dessin(&iguanodon_symbol(n).unwrap()).unwrap();
        let g = group_from_dessin(&d);
        let t = std::time::Instant::now();
        let table = CharacterTable::compute(&g, 10_000_000).unwrap();
        eprintln!(
            "n = {n}: table in {:?}, degrees {:?}, p = {}",
            t.elapsed(),
            table.degrees(),
            table.prime()
        );
        if !degrees.is_empty() {
            assert_eq!(table.degrees(), &degrees[..]);
        }
        let full = decompose_with_table(&table, &d).unwrap();
        assert_eq!(full.signature(), decompose_two_transitive(&d).signature());
    }
}
