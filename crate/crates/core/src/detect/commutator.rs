use std::collections::BTreeSet;

use super::{ReasonCode, Reduction, ReductionKind, Verdict};
use crate::blocks::abelian_sylow_test;
use crate::numtheory::{divisors, is_prime, moebius, prime_power, valuation};
use crate::simplerec::{almost_simple_socle, extension_sylow_lookup, socle_sylow_lookup, Family, SimpleId};
use crate::table::{CharTable, ClassSet, NormalSet, TableError};

/// Intersection of the kernels of the irreducible characters of p'-degree.
pub fn compute_k(t: &CharTable, p: u64) -> NormalSet {
    let classes = (0..t.k())
        .filter(|&i| !t.degree(i).is_multiple_of(p))
        .fold(ClassSet::full(t.k()), |acc, i| acc.intersection(&t.kernel_of(i).classes));
    t.normal_set(classes)
}

/// Repeatedly factors out O_p' and the p'-degree kernel intersection until
/// both are trivial.
pub(crate) fn reduce(
    t: &CharTable,
    p: u64,
    trace: &mut Vec<String>,
    reductions: &mut Vec<Reduction>,
) -> Result<CharTable, TableError> {
    let mut cur = t.clone();
    loop {
        let o = cur.core_subgroups(p)?.o_pprime;
        let (kind, n) = if !o.is_trivial() {
            (ReductionKind::OpPrime, o)
        } else {
            let k = compute_k(&cur, p);
            if k.is_trivial() {
                return Ok(cur);
            }
            (ReductionKind::PPrimeKernels, k)
        };
        cur = cur.quotient_table(&n)?;
        trace.push(match kind {
            ReductionKind::OpPrime => format!("factor out O_p' of order {}", n.order),
            ReductionKind::PPrimeKernels => format!("factor out K of order {}", n.order),
        });
        reductions.push(Reduction { kind, removed: n.order, result_order: cur.group_order() });
    }
}

/// Factors out O_p' once; the result has O_p' = 1 and the same Sylow subgroups.
pub(crate) fn reduce_op_prime(
    t: &CharTable,
    p: u64,
    trace: &mut Vec<String>,
    reductions: &mut Vec<Reduction>,
) -> Result<CharTable, TableError> {
    let o = t.core_subgroups(p)?.o_pprime;
    if o.is_trivial() {
        return Ok(t.clone());
    }
    let q = t.quotient_table(&o)?;
    trace.push(format!("factor out O_p' of order {}", o.order));
    reductions.push(Reduction { kind: ReductionKind::OpPrime, removed: o.order, result_order: q.group_order() });
    Ok(q)
}

/// p-element classes whose centralizer has p-part exactly p².
pub(crate) fn p2_centralizer_classes(t: &CharTable, p: u64) -> Result<Vec<usize>, TableError> {
    let mut out = Vec::new();
    for c in 0..t.k() {
        if t.is_p_element(c, p)? && valuation(t.centralizer_order(c)?, p) == 2 {
            out.push(c);
        }
    }
    Ok(out)
}

fn inconsistent(e: TableError) -> Verdict {
    Verdict::unknown(ReasonCode::TableInconsistent, vec![e.to_string()])
}

pub fn detect_commutator_index_p2(t: &CharTable, p: u64) -> Verdict {
    if !is_prime(p) {
        return Verdict::unknown(ReasonCode::InvalidPrime, vec![format!("{p} is not a prime")]);
    }
    let a = t.sylow_exponent(p);
    if a < 2 {
        return Verdict::decided(false, ReasonCode::SylowTooSmall, vec![format!("|G|_p = {p}^{a}")]);
    }
    let mut trace = Vec::new();
    let mut reductions = Vec::new();
    let verdict = match reduce(t, p, &mut trace, &mut reductions) {
        Ok(reduced) => decide_reduced(&reduced, p),
        Err(e) => inconsistent(e),
    };
    verdict.with_history(trace, reductions)
}

fn decide_reduced(t: &CharTable, p: u64) -> Verdict {
    let a = t.sylow_exponent(p);
    match abelian_sylow_test(t, p) {
        Ok(true) => {
            return Verdict::decided(a == 2, ReasonCode::AbelianSylow, vec![format!("abelian Sylow of order {p}^{a}")]);
        }
        Ok(false) => {}
        Err(e) => return inconsistent(e),
    }
    let certificate = match p2_centralizer_classes(t, p) {
        Ok(c) => c,
        Err(e) => return inconsistent(e),
    };
    match almost_simple_socle(t) {
        Ok(Some((socle, set))) => {
            let mut v = almost_simple_commutator(t, p, socle, &set);
            v.trace.insert(0, format!("reduced group of order {} is almost simple", t.group_order()));
            v
        }
        Ok(None) => Verdict::decided(
            !certificate.is_empty(),
            ReasonCode::CentralizerCriterion,
            vec![format!(
                "reduced group of order {} is not almost simple; p-element classes with |C|_p = p^2: {:?}",
                t.group_order(),
                certificate
            )],
        ),
        Err(e) if !certificate.is_empty() => Verdict::decided(
            true,
            ReasonCode::CentralizerCertificate,
            vec![e.to_string(), format!("class {} has |C|_p = p^2", certificate[0])],
        ),
        Err(e) => Verdict::unknown(ReasonCode::RecognitionFailed, vec![e.to_string()]),
    }
}

/// The almost simple branch, for a table whose unique minimal normal
/// subgroup `socle_set` is simple of type `socle`.
pub fn almost_simple_commutator(t: &CharTable, p: u64, socle: SimpleId, socle_set: &NormalSet) -> Verdict {
    let a = t.sylow_exponent(p);
    let s_log = valuation(socle_set.order, p);
    let out_p = p.pow(a - s_log);
    let index = t.group_order() / socle_set.order;
    let mut trace = vec![format!("socle {socle}, |G:S| = {index}, |G:S|_p = {out_p}")];
    let finish = |v: Verdict, mut trace: Vec<String>| {
        trace.extend(v.trace.iter().cloned());
        Verdict { trace, ..v }
    };
    if out_p == 1 {
        match socle_sylow_lookup(&socle, p) {
            Ok(f) => match f.commutator_index_p2 {
                Some(b) => {
                    trace.push(format!("Sylow inside the socle: {:?}, order {p}^{}", f.tag, f.log_order));
                    return Verdict::decided(b, ReasonCode::SocleLookup, trace);
                }
                None => trace.push(format!("socle data for {socle} at {p} lacks the commutator index")),
            },
            Err(e) => trace.push(e.to_string()),
        }
    } else {
        if p > 2 && out_p == p {
            match linear_group_criterion(t, p, &socle, socle_set) {
                Ok(Some(v)) => return finish(v, trace),
                Ok(None) => {}
                Err(e) => return finish(inconsistent(e), trace),
            }
        }
        if p == 3 && out_p == 3 && is_d4_or_e6(&socle) {
            return finish(lie_degree_pattern(t, &socle, index), trace);
        }
        let outside: BTreeSet<u64> =
            (0..t.k()).filter(|&c| !socle_set.contains_class(c)).map(|c| t.element_order(c)).collect();
        match extension_sylow_lookup(&socle, p, out_p, &outside) {
            Ok(f) => {
                trace.push(format!("extension data, element orders outside the socle {outside:?}"));
                return Verdict::decided(f.commutator_index_p2, ReasonCode::ExtensionLookup, trace);
            }
            Err(e) => trace.push(e.to_string()),
        }
    }
    match p2_centralizer_classes(t, p) {
        Ok(c) if !c.is_empty() => {
            trace.push(format!("class {} has |C|_p = p^2", c[0]));
            Verdict::decided(true, ReasonCode::CentralizerCertificate, trace)
        }
        Ok(_) => Verdict::unknown(ReasonCode::SocleDataMissing, trace),
        Err(e) => finish(inconsistent(e), trace),
    }
}

/// PSL^ε(k, q^f) with p | gcd(k, q^f − ε, f) and |G:S|_p = p: the answer is
/// yes iff k = p and some r-element of S (r the characteristic) has
/// centralizer order prime to p.
fn linear_group_criterion(
    t: &CharTable,
    p: u64,
    socle: &SimpleId,
    socle_set: &NormalSet,
) -> Result<Option<Verdict>, TableError> {
    let q = socle.q;
    let q_minus_eps = match socle.family {
        Family::Linear => q - 1,
        Family::Unitary => q + 1,
        _ => return Ok(None),
    };
    let Some((r, f)) = prime_power(q) else { return Ok(None) };
    let k = socle.n as u64;
    if !k.is_multiple_of(p) || q_minus_eps % p != 0 || !(f as u64).is_multiple_of(p) {
        return Ok(None);
    }
    if k != p {
        return Ok(Some(Verdict::decided(
            false,
            ReasonCode::LinearGroupCriterion,
            vec![format!("dimension {k} differs from p = {p}")],
        )));
    }
    let mut witness = None;
    for c in socle_set.classes.iter() {
        let is_r_element = prime_power(t.element_order(c)).is_some_and(|(b, _)| b == r);
        if is_r_element && t.centralizer_order(c)? % p != 0 {
            witness = Some(c);
            break;
        }
    }
    let line = match witness {
        Some(c) => format!("{r}-element class {c} in the socle has centralizer order prime to {p}"),
        None => format!("every {r}-element of the socle has centralizer order divisible by {p}"),
    };
    Ok(Some(Verdict::decided(witness.is_some(), ReasonCode::LinearGroupCriterion, vec![line])))
}

fn is_d4_or_e6(s: &SimpleId) -> bool {
    matches!(s.family, Family::E6 | Family::TwistedE6) || (s.family == Family::OrthogonalPlus && s.n == 4)
}

fn cyclotomic_value(n: u64, q: u64) -> Option<u128> {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for d in divisors(n) {
        let term = (q as u128).checked_pow(d as u32)? - 1;
        match moebius(n / d) {
            1 => num = num.checked_mul(term)?,
            -1 => den = den.checked_mul(term)?,
            _ => {}
        }
    }
    Some(num / den)
}

fn product(q: u64, q_exp: u32, factors: &[u64]) -> Option<u128> {
    factors
        .iter()
        .try_fold((q as u128).checked_pow(q_exp)?, |acc, &n| acc.checked_mul(cyclotomic_value(n, q)?))
}

/// Socles D4(q), E6(q), ²E6(q) at p = 3 with |G:S|_3 = 3. A degree b·D with
/// 3 ∤ b dividing |G:S| marks a field automorphism; otherwise |P:P'| > 9.
fn lie_degree_pattern(t: &CharTable, socle: &SimpleId, index: u64) -> Verdict {
    let q = socle.q;
    let Some((r, f)) = prime_power(q) else {
        return Verdict::unknown(ReasonCode::RecognitionFailed, vec![format!("{socle}: field size not a prime power")]);
    };
    let untested = "degree-pattern branch (not exercised on any available table)".to_string();
    let base = match socle.family {
        Family::OrthogonalPlus => {
            if r == 3 {
                return Verdict::decided(
                    false,
                    ReasonCode::LieDegreePattern,
                    vec![untested, "defining characteristic 3: |P:P'| > 9".into()],
                );
            }
            product(q, 6, &[3, 6])
        }
        family => {
            let twisted = family == Family::TwistedE6;
            let q_minus_eps = if twisted { q + 1 } else { q - 1 };
            if q_minus_eps % 3 != 0 || f % 3 != 0 {
                return Verdict::unknown(
                    ReasonCode::LieDegreePatternUntested,
                    vec![untested, "Sylow type fixed by the automorphism class but not tabulated".into()],
                );
            }
            let cyc: &[u64] = if twisted { &[6, 6, 10, 3, 8, 18, 12] } else { &[3, 3, 5, 6, 8, 9, 12] };
            product(q, 9, cyc).map(|v| v / 3)
        }
    };
    let field_case = base.is_some_and(|base| {
        t.degrees().iter().any(|&d| {
            let d = d as u128;
            d.is_multiple_of(base) && {
                let b = d / base;
                !b.is_multiple_of(3) && (index as u128).is_multiple_of(b)
            }
        })
    });
    if field_case {
        Verdict::unknown(
            ReasonCode::LieDegreePatternUntested,
            vec![untested, "degree pattern of a field automorphism; Sylow type not tabulated".into()],
        )
    } else {
        Verdict::decided(
            false,
            ReasonCode::LieDegreePattern,
            vec![untested, "no field-automorphism degree pattern: |P:P'| > 9".into()],
        )
    }
}
