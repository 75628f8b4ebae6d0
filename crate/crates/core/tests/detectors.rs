mod common;

use sylowtab::corpus;
use sylowtab::detect::{
    almost_simple_commutator, compute_k, detect_center_index_p2, detect_commutator_index_p2, detect_normal_p_abelian,
    Answer, ReasonCode, ReductionKind,
};
use sylowtab::numtheory::valuation;
use sylowtab::simplerec::almost_simple_socle;
use sylowtab::table::CharTable;

fn answers(t: &CharTable, p: u64) -> (Answer, Answer) {
    (detect_commutator_index_p2(t, p).answer, detect_center_index_p2(t, p).answer)
}

#[test]
fn k_subgroup() {
    let a5 = common::table(&corpus::alternating(5));
    assert!(compute_k(&a5, 2).is_trivial());
    assert!(compute_k(&a5, 7).is_trivial());
    let sl29 = common::table(&corpus::special_linear2(9));
    let k = compute_k(&sl29, 2);
    assert_eq!(k.order, 2);
    assert_eq!(k, sl29.center_classes());
}

#[test]
fn normal_p_subgroup_abelian_test() {
    let s4 = common::table(&corpus::symmetric(4));
    let v4 = s4.minimal_normals()[0];
    assert!(detect_normal_p_abelian(&s4, &v4, 2).unwrap());
    assert!(detect_normal_p_abelian(&s4, &s4.trivial_subgroup(), 2).is_err());
    let s3 = common::table(&corpus::symmetric(3));
    assert!(detect_normal_p_abelian(&s3, &s3.trivial_subgroup(), 2).unwrap());
    assert!(detect_normal_p_abelian(&s4, &s4.derived_subgroup(), 2).is_err());

    let sl23 = common::table(&corpus::special_linear2(3));
    let q8 = sl23.core_subgroups(2).unwrap().o_p;
    assert_eq!(q8.order, 8);
    assert!(!detect_normal_p_abelian(&sl23, &q8, 2).unwrap());

    let d8c3 = common::table(&corpus::direct_product(&corpus::dihedral8(), &corpus::cyclic(3)));
    let c3 = d8c3.core_subgroups(3).unwrap().o_p;
    assert!(detect_normal_p_abelian(&d8c3, &c3, 3).unwrap());
}

#[test]
fn commutator_examples() {
    let s4 = common::table(&corpus::symmetric(4));
    let v = detect_commutator_index_p2(&s4, 2);
    assert_eq!((v.answer, v.code), (Answer::Yes, ReasonCode::CentralizerCriterion));
    assert!(!v.trace.is_empty());

    let sl29 = common::table(&corpus::special_linear2(9));
    let v = detect_commutator_index_p2(&sl29, 2);
    assert_eq!((v.answer, v.code), (Answer::Yes, ReasonCode::SocleLookup));
    assert_eq!(v.reductions.len(), 1);
    assert_eq!((v.reductions[0].kind, v.reductions[0].removed), (ReductionKind::PPrimeKernels, 2));

    let s9 = common::table(&corpus::symmetric(9));
    assert_eq!(detect_commutator_index_p2(&s9, 3).answer, Answer::Yes);

    let a5 = common::table(&corpus::alternating(5));
    let v = detect_commutator_index_p2(&a5, 5);
    assert_eq!((v.answer, v.code), (Answer::No, ReasonCode::SylowTooSmall));
    let v = detect_commutator_index_p2(&a5, 4);
    assert_eq!((v.answer, v.code), (Answer::Unknown, ReasonCode::InvalidPrime));
}

#[test]
fn almost_simple_branch() {
    for (doc, code) in [
        (corpus::alternating(6), ReasonCode::SocleLookup),
        (corpus::symmetric(5), ReasonCode::ExtensionLookup),
        (corpus::symmetric(6), ReasonCode::ExtensionLookup),
        (corpus::mathieu10(), ReasonCode::ExtensionLookup),
        (corpus::projective_general_linear2(9), ReasonCode::ExtensionLookup),
    ] {
        let t = common::table(&doc);
        let (socle, set) = almost_simple_socle(&t).unwrap().unwrap();
        let v = almost_simple_commutator(&t, 2, socle, &set);
        let truth = sylowtab::oracle::ground_truth(&doc.enumerate(1 << 20).unwrap(), 2).unwrap();
        assert_eq!(v.code, code, "{}", doc.name);
        assert_eq!(v.answer.as_bool(), Some(truth.commutator_index_is_p2()), "{}", doc.name);
    }
}

#[test]
fn center_examples() {
    for (doc, answer, code) in [
        (corpus::symmetric(4), Answer::Yes, ReasonCode::CaseC),
        (corpus::special_linear2(5), Answer::Yes, ReasonCode::CaseB),
        (corpus::symmetric(7), Answer::Yes, ReasonCode::CaseD),
        (corpus::general_linear2(3), Answer::No, ReasonCode::NoCaseMatches),
        (corpus::alternating(5), Answer::No, ReasonCode::AbelianSylow),
    ] {
        let v = detect_center_index_p2(&common::table(&doc), 2);
        assert_eq!((v.answer, v.code), (answer, code), "{}", doc.name);
    }
}

/// Quotients by normal p'-subgroups keep the Sylow subgroup, so both
/// verdicts must survive them.
#[test]
fn verdicts_survive_p_prime_quotients() {
    for doc in [
        corpus::direct_product(&corpus::dihedral8(), &corpus::cyclic(3)),
        corpus::direct_product(&corpus::symmetric(3), &corpus::cyclic(5)),
        corpus::direct_product(&corpus::alternating(4), &corpus::cyclic(3)),
        corpus::direct_product(&corpus::alternating(5), &corpus::quaternion8()),
        corpus::special_linear2(3),
        corpus::general_linear2(3),
    ] {
        let t = common::table(&doc);
        for p in t.primes() {
            let base = answers(&t, p);
            for n in t.normal_lattice().iter().filter(|n| valuation(n.order, p) == 0 && !n.is_trivial()) {
                let q = t.quotient_table(n).unwrap();
                assert_eq!(answers(&q, p), base, "{} p={p} mod {}", doc.name, n.order);
            }
        }
    }
}

#[test]
fn verdicts_serialize_with_codes() {
    let v = detect_center_index_p2(&common::table(&corpus::symmetric(4)), 2);
    let json = serde_json::to_value(&v).unwrap();
    assert_eq!(json["answer"], "Yes");
    assert_eq!(json["code"], "CASE_C");
}
