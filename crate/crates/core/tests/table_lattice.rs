mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use sylowtab::corpus;
use sylowtab::exactnum::Cyc;
use sylowtab::oracle::DEFAULT_CAP;
use sylowtab::table::{CharTable, ClassData, ClassSet, NormalSet};

fn orders(sets: &[NormalSet]) -> Vec<u64> {
    let mut v: Vec<u64> = sets.iter().map(|n| n.order).collect();
    v.sort();
    v
}

fn class_of_order(t: &CharTable, o: u64) -> usize {
    (0..t.k()).find(|&c| t.element_order(c) == o).unwrap()
}

fn sorted_degrees(t: &CharTable) -> Vec<u64> {
    let mut d = t.degrees();
    d.sort();
    d
}

#[test]
fn validation_catches_broken_tables() {
    let s3 = common::table(&corpus::symmetric(3));
    assert!(s3.validate().is_empty());

    let mut chars = s3.chars().to_vec();
    chars[2][1] = &chars[2][1] + &Cyc::one();
    let bumped = CharTable::from_parts(None, 6, s3.classes().to_vec(), s3.power_maps().clone(), chars).unwrap();
    assert!(!bumped.validate().is_empty());

    let mut classes: Vec<ClassData> = s3.classes().to_vec();
    classes[1].size -= 1;
    let short = CharTable::from_parts(None, 6, classes, s3.power_maps().clone(), s3.chars().to_vec()).unwrap();
    assert!(!short.validate().is_empty());
}

#[test]
fn centralizer_orders() {
    let s3 = common::table(&corpus::symmetric(3));
    assert_eq!(s3.centralizer_order(0).unwrap(), 6);
    assert_eq!(s3.centralizer_order(class_of_order(&s3, 2)).unwrap(), 2);
    let s4 = common::table(&corpus::symmetric(4));
    let transposition = (0..s4.k()).find(|&c| s4.element_order(c) == 2 && s4.class_size(c) == 6).unwrap();
    assert_eq!(s4.centralizer_order(transposition).unwrap(), 4);
}

#[test]
fn kernels() {
    let s4 = common::table(&corpus::symmetric(4));
    assert_eq!(s4.kernel_of(0), s4.whole_group());
    let sign = (1..s4.k()).find(|&i| s4.degree(i) == 1).unwrap();
    assert_eq!(s4.kernel_of(sign).order, 12);
    let faithful = (0..s4.k()).filter(|&i| s4.degree(i) == 3).collect::<Vec<_>>();
    assert!(faithful.iter().all(|&i| s4.kernel_of(i).is_trivial()));
}

#[test]
fn lattices() {
    let a5 = common::table(&corpus::alternating(5));
    assert_eq!(orders(a5.normal_lattice()), vec![1, 60]);
    let s4 = common::table(&corpus::symmetric(4));
    assert_eq!(orders(s4.normal_lattice()), vec![1, 4, 12, 24]);
    let q8 = common::table(&corpus::quaternion8());
    assert_eq!(q8.normal_lattice().len(), 6);
}

#[test]
fn quotients() {
    let s4 = common::table(&corpus::symmetric(4));
    let same = s4.quotient_table(&s4.trivial_subgroup()).unwrap();
    assert_eq!(sorted_degrees(&same), sorted_degrees(&s4));
    let v4 = s4.minimal_normals()[0];
    let s3 = s4.quotient_table(&v4).unwrap();
    assert!(s3.validate().is_empty());
    assert_eq!(sorted_degrees(&s3), vec![1, 1, 2]);
    assert_eq!(s3.group_order(), 6);
}

#[test]
fn core_subgroups() {
    let s4 = common::table(&corpus::symmetric(4));
    let c = s4.core_subgroups(2).unwrap();
    assert_eq!((c.o_pprime.order, c.o_p.order, c.o_upper_pprime.order), (1, 4, 24));

    let s3c5 = common::table(&corpus::direct_product(&corpus::symmetric(3), &corpus::cyclic(5)));
    let c = s3c5.core_subgroups(2).unwrap();
    assert_eq!((c.o_pprime.order, c.o_p.order, c.o_upper_pprime.order), (15, 1, 6));

    let a5 = common::table(&corpus::alternating(5));
    for p in [2, 3, 5] {
        let c = a5.core_subgroups(p).unwrap();
        assert_eq!((c.o_pprime.order, c.o_p.order, c.o_upper_pprime.order), (1, 1, 60));
    }
}

#[test]
fn derived_and_center() {
    let c6 = common::table(&corpus::cyclic(6));
    assert!(c6.derived_subgroup().is_trivial());
    assert_eq!(c6.center_classes(), c6.whole_group());
    assert_eq!(common::table(&corpus::symmetric(4)).derived_subgroup().order, 12);
    assert_eq!(common::table(&corpus::quaternion8()).derived_subgroup().order, 2);
    assert!(common::table(&corpus::symmetric(3)).center_classes().is_trivial());
    assert_eq!(common::table(&corpus::special_linear2(5)).center_classes().order, 2);
}

#[test]
fn p_elements_and_minimal_normals() {
    let c6 = common::table(&corpus::cyclic(6));
    assert!(c6.is_p_element(0, 5).unwrap());
    assert!(!c6.is_p_element(class_of_order(&c6, 6), 2).unwrap());
    let q8 = common::table(&corpus::quaternion8());
    assert!((0..q8.k()).all(|c| q8.is_p_element(c, 2).unwrap()));

    assert_eq!(orders(&common::table(&corpus::symmetric(4)).minimal_normals()), vec![4]);
    assert_eq!(orders(&common::table(&corpus::alternating(6)).minimal_normals()), vec![360]);
    let v4 = common::table(&corpus::direct_product(&corpus::cyclic(2), &corpus::cyclic(2)));
    assert_eq!(orders(&v4.minimal_normals()), vec![2, 2, 2]);
}

#[test]
fn nilpotent_normals_and_cyclic_sylows() {
    let s4 = common::table(&corpus::symmetric(4));
    let cores = s4.core_subgroups(2).unwrap();
    assert!(s4.is_nilpotent_normal(&cores.o_p));
    assert!(!s4.is_nilpotent_normal(&s4.derived_subgroup()));
    let a4c3 = common::table(&corpus::direct_product(&corpus::alternating(4), &corpus::cyclic(3)));
    let twelve: Vec<&NormalSet> = a4c3.normal_lattice().iter().filter(|n| n.order == 12).collect();
    assert_eq!(twelve.len(), 4);
    assert_eq!(twelve.iter().filter(|n| a4c3.is_nilpotent_normal(n)).count(), 1);

    let s3 = common::table(&corpus::symmetric(3));
    assert!(s3.has_cyclic_sylow(3));
    assert!(s3.has_cyclic_sylow(7));
    assert!(!s4.has_cyclic_sylow(2));
}

/// Normal closures of single classes agree with the subgroup generated by
/// the class in the enumerated group.
#[test]
fn normal_closures_match_enumeration() {
    for doc in [corpus::symmetric(4), corpus::special_linear2(3), corpus::direct_product(&corpus::dihedral8(), &corpus::cyclic(3))] {
        let (g, t) = common::build(&doc);
        let cls = g.conjugacy_data();
        for (c, class) in cls.classes.iter().enumerate() {
            let generated = g.subgroup_closure(&class.members).len() as u64;
            assert_eq!(t.normal_closure(&ClassSet::single(c)).order, generated, "{} class {c}", doc.name);
        }
    }
}

fn lattice_tables() -> Vec<CharTable> {
    [
        corpus::symmetric(4),
        corpus::special_linear2(3),
        corpus::general_linear2(3),
        corpus::direct_product(&corpus::dihedral8(), &corpus::cyclic(3)),
        corpus::direct_product(&corpus::alternating(4), &corpus::cyclic(3)),
        corpus::quaternion16(),
    ]
    .iter()
    .map(|d| {
        let g = d.enumerate(DEFAULT_CAP).unwrap();
        sylowtab::oracle::dixon_table(&g, Some(&d.name)).unwrap()
    })
    .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quotients_are_valid_tables(which in 0usize..6, pick in any::<prop::sample::Index>()) {
        let tables = lattice_tables();
        let t = &tables[which];
        let lattice = t.normal_lattice();
        let n = lattice[pick.index(lattice.len())];
        let q = t.quotient(&n).unwrap();
        prop_assert!(q.table.validate().is_empty());
        prop_assert_eq!(q.table.group_order() * n.order, t.group_order());
        prop_assert_eq!(q.characters.len(), q.table.k());
        let images: BTreeSet<usize> = n.classes.iter().map(|c| q.class_map[c]).collect();
        prop_assert_eq!(images, BTreeSet::from([0]));
    }

    #[test]
    fn lattice_is_closed_under_meet_and_join(which in 0usize..6, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let tables = lattice_tables();
        let t = &tables[which];
        let lattice = t.normal_lattice();
        let (a, b) = (lattice[i.index(lattice.len())], lattice[j.index(lattice.len())]);
        let meet = t.meet(&a, &b);
        let join = t.join(&a, &b);
        prop_assert!(lattice.contains(&meet) && lattice.contains(&join));
        prop_assert_eq!(meet.order * join.order, a.order * b.order);
    }
}
