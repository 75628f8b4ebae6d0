use super::commutator::reduce_op_prime;
use super::{ReasonCode, Reduction, Verdict};
use crate::blocks::abelian_sylow_test;
use crate::exactnum::{Cyc, Rat};
use crate::numtheory::{is_prime, prime_power, valuation};
use crate::simplerec::{recognize_minimal_normal, Family, MinimalNormalType, SimpleId};
use crate::table::{CharTable, NormalSet, TableError};

fn precondition(msg: String) -> TableError {
    TableError::Invalid(vec![msg])
}

/// Whether the normal p-subgroup `n` is abelian, for tables where G/N has
/// cyclic Sylow p-subgroups.
///
/// Characters are grouped by nonzero inner products of their restrictions to
/// N; N is abelian iff the minimal degrees of the groups add up to |N|.
pub fn detect_normal_p_abelian(t: &CharTable, n: &NormalSet, p: u64) -> Result<bool, TableError> {
    if !is_prime(p) {
        return Err(precondition(format!("{p} is not a prime")));
    }
    t.check_normal(n)?;
    if n.order != 1 && prime_power(n.order).is_none_or(|(r, _)| r != p) {
        return Err(precondition(format!("normal subgroup of order {} is not a {p}-group", n.order)));
    }
    if !t.quotient_table(n)?.has_cyclic_sylow(p) {
        return Err(precondition(format!("G/N has non-cyclic Sylow {p}-subgroups")));
    }
    let classes: Vec<usize> = n.classes.iter().collect();
    let k = t.k();
    let weighted: Vec<Vec<Cyc>> = (0..k)
        .map(|i| classes.iter().map(|&c| t.value(i, c).scale(&Rat::from_integer(t.class_size(c).into()))).collect())
        .collect();
    let conj: Vec<Vec<Cyc>> = (0..k).map(|j| classes.iter().map(|&c| t.value(j, c).conj()).collect()).collect();
    let linked = |i: usize, j: usize| -> bool {
        let s: Cyc = weighted[i].iter().zip(&conj[j]).map(|(a, b)| a * b).sum();
        !s.is_zero()
    };
    let mut part = vec![usize::MAX; k];
    let mut total = 0u64;
    for start in 0..k {
        if part[start] != usize::MAX {
            continue;
        }
        part[start] = start;
        let mut stack = vec![start];
        let mut min_degree = t.degree(start);
        while let Some(i) = stack.pop() {
            for j in 0..k {
                if part[j] == usize::MAX && linked(i, j) {
                    part[j] = start;
                    min_degree = min_degree.min(t.degree(j));
                    stack.push(j);
                }
            }
        }
        total += min_degree;
    }
    Ok(total == n.order)
}

struct SimpleFactor {
    set: NormalSet,
    simple: SimpleId,
    copies: u32,
    abelian: Option<bool>,
}

/// Lattice picture of F*(G) for a table with O_p'(G) = 1.
struct Layer {
    o_p: NormalSet,
    upper: NormalSet,
    simples: Vec<SimpleFactor>,
    /// Perfect normal subgroups R with |R ∩ O_p| = p and R/(R ∩ O_p) simple.
    quasi: Vec<NormalSet>,
    /// Nonabelian chief factors above O_p not explained by the above.
    unexplained: Vec<String>,
}

enum Outcome {
    Match(String),
    Fail(String),
    Ambiguous(ReasonCode, String),
}

fn build_layer(t: &CharTable, p: u64) -> Result<Layer, Verdict> {
    let table_err = |e: TableError| Verdict::unknown(ReasonCode::TableInconsistent, vec![e.to_string()]);
    let cores = t.core_subgroups(p).map_err(table_err)?;
    let o_p = cores.o_p;
    let mut simples = Vec::new();
    for m in t.minimal_normals() {
        if prime_power(m.order).is_some() {
            continue;
        }
        match recognize_minimal_normal(t, &m) {
            Ok(MinimalNormalType::Nonabelian(f)) => {
                let abelian = f.sylow_at(p).and_then(|s| s.abelian);
                simples.push(SimpleFactor { set: m, simple: f.simple, copies: f.copies, abelian });
            }
            Ok(MinimalNormalType::ElementaryAbelian { .. }) => {}
            Err(e) => return Err(Verdict::unknown(ReasonCode::RecognitionFailed, vec![e.to_string()])),
        }
    }
    let mut quasi = Vec::new();
    let mut unexplained = Vec::new();
    if !o_p.is_trivial() {
        let q = t.quotient(&o_p).map_err(table_err)?;
        let images: Vec<NormalSet> = simples.iter().map(|s| q.image(&s.set)).collect();
        for y in q.table.minimal_normals() {
            if prime_power(y.order).is_some() || images.contains(&y) {
                continue;
            }
            let hat = q.preimage(t, &y.classes);
            let covers: Vec<&NormalSet> = t
                .normal_lattice()
                .iter()
                .filter(|r| r.is_subgroup_of(&hat) && t.join(r, &o_p) == hat)
                .collect();
            let smallest = covers.iter().map(|r| r.order).min().expect("the preimage covers itself");
            let minimal: Vec<&&NormalSet> = covers.iter().filter(|r| r.order == smallest).collect();
            let simple_image = matches!(
                recognize_minimal_normal(&q.table, &y),
                Ok(MinimalNormalType::Nonabelian(ref f)) if f.copies == 1
            );
            match minimal.as_slice() {
                [r] if t.meet(r, &o_p).order == p && t.is_perfect_normal(r) && simple_image => quasi.push(***r),
                _ => unexplained.push(format!(
                    "chief factor of order {} above O_p has no quasisimple cover with center of order {p}",
                    y.order
                )),
            }
        }
    }
    Ok(Layer { o_p, upper: cores.o_upper_pprime, simples, quasi, unexplained })
}

fn join_all(t: &CharTable, parts: &[NormalSet]) -> NormalSet {
    t.join_all(parts.iter())
}

/// Splits the simple factors into an abelian-Sylow part, failing on a
/// nonabelian one and flagging missing data.
fn abelian_simples(
    layer: &Layer,
    skip: Option<&NormalSet>,
) -> Result<Vec<NormalSet>, Outcome> {
    let mut out = Vec::new();
    for s in layer.simples.iter().filter(|s| Some(&s.set) != skip) {
        match s.abelian {
            Some(true) => out.push(s.set),
            Some(false) => {
                return Err(Outcome::Fail(format!("{}^{} has nonabelian Sylow subgroups", s.simple, s.copies)));
            }
            None => {
                return Err(Outcome::Ambiguous(
                    ReasonCode::SocleDataMissing,
                    format!("Sylow data missing for {}", s.simple),
                ));
            }
        }
    }
    Ok(out)
}

fn o_p_central_in_sylow(t: &CharTable, o_p: &NormalSet, p: u64) -> Result<bool, TableError> {
    let a = t.sylow_exponent(p);
    for c in o_p.classes.iter() {
        if valuation(t.centralizer_order(c)?, p) != a {
            return Ok(false);
        }
    }
    Ok(true)
}

fn case_a(t: &CharTable, p: u64, layer: &Layer) -> Result<Outcome, TableError> {
    if !layer.quasi.is_empty() {
        return Ok(Outcome::Fail("quasisimple component with nontrivial center".into()));
    }
    let s_parts = match abelian_simples(layer, None) {
        Ok(v) => v,
        Err(o) => return Ok(o),
    };
    let s = join_all(t, &s_parts);
    let o = layer.o_p;
    if t.join(&o, &s) != layer.upper || o.order * s.order != layer.upper.order {
        return Ok(Outcome::Fail(format!("O^p' of order {} is not O_p x S", layer.upper.order)));
    }
    let qs = t.quotient_table(&s)?;
    let a = qs.sylow_exponent(p);
    let mut central = 0u64;
    for c in 0..qs.k() {
        if qs.is_p_element(c, p)? && valuation(qs.centralizer_order(c)?, p) == a {
            central += qs.class_size(c);
        }
    }
    let line = format!("O^p' = O_p x S with |O_p| = {}, |Z(O_p)| = {central}", o.order);
    Ok(if central * p * p == o.order { Outcome::Match(line) } else { Outcome::Fail(line) })
}

fn case_b(t: &CharTable, p: u64, layer: &Layer) -> Result<Outcome, TableError> {
    let mut candidates: Vec<NormalSet> =
        layer.quasi.iter().filter(|c| valuation(c.order, p) == 3).copied().collect();
    let mut ambiguous = None;
    for s in &layer.simples {
        if s.copies == 1 && valuation(s.set.order, p) == 3 {
            match s.abelian {
                Some(false) => candidates.push(s.set),
                Some(true) => {}
                None => ambiguous = Some(format!("Sylow data missing for {}", s.simple)),
            }
        }
    }
    if candidates.is_empty() {
        return Ok(match ambiguous {
            Some(m) => Outcome::Ambiguous(ReasonCode::SocleDataMissing, m),
            None => Outcome::Fail("no quasisimple normal subgroup with Sylow order p^3".into()),
        });
    }
    let o = layer.o_p;
    let mut last = Outcome::Fail(String::new());
    for c in candidates {
        if layer.quasi.iter().any(|r| *r != c) {
            last = Outcome::Fail("more than one quasisimple component with center".into());
            continue;
        }
        let s_parts = match abelian_simples(layer, Some(&c)) {
            Ok(v) => v,
            Err(outcome) => {
                last = outcome;
                continue;
            }
        };
        let s = join_all(t, &s_parts);
        let z = t.meet(&o, &c);
        let oc = t.join(&o, &c);
        if z.order > p || oc.order != o.order * c.order / z.order {
            last = Outcome::Fail("O_p and C do not form a central product".into());
            continue;
        }
        if t.join(&oc, &s) != layer.upper || oc.order * s.order != layer.upper.order {
            last = Outcome::Fail(format!("O^p' of order {} is not (O_p * C) x S", layer.upper.order));
            continue;
        }
        let line = format!("O^p' = (O_p * C) x S with |C| = {}, |O_p| = {}", c.order, o.order);
        if o_p_central_in_sylow(t, &o, p)? {
            return Ok(Outcome::Match(line));
        }
        last = Outcome::Fail(format!("{line}, O_p nonabelian"));
    }
    Ok(last)
}

/// O_p abelian, tested in G/S where the quotient by O_p has cyclic Sylow subgroups.
fn o_p_abelian_mod(t: &CharTable, p: u64, o: &NormalSet, s: &NormalSet) -> Result<bool, TableError> {
    if s.is_trivial() {
        return detect_normal_p_abelian(t, o, p);
    }
    let q = t.quotient(s)?;
    detect_normal_p_abelian(&q.table, &q.image(o), p)
}

fn case_c(t: &CharTable, p: u64, layer: &Layer) -> Result<Outcome, TableError> {
    if !layer.quasi.is_empty() {
        return Ok(Outcome::Fail("quasisimple component with nontrivial center".into()));
    }
    let s_parts = match abelian_simples(layer, None) {
        Ok(v) => v,
        Err(o) => return Ok(o),
    };
    let s = join_all(t, &s_parts);
    let o = layer.o_p;
    let f = t.join(&o, &s);
    let a = t.sylow_exponent(p);
    if valuation(f.order, p) + 1 != a {
        return Ok(Outcome::Fail(format!("|G:F*|_p != p for F* of order {}", f.order)));
    }
    if !o_p_abelian_mod(t, p, &o, &s)? {
        return Ok(Outcome::Fail("O_p nonabelian".into()));
    }
    for c in 0..t.k() {
        if !f.contains_class(c) && t.is_p_element(c, p)? && valuation(t.centralizer_order(c)?, p) + 1 == a {
            let line = format!("F* = O_p x S of order {}, class {c} outside with |G:C|_p = p", f.order);
            return Ok(match layer.unexplained.first() {
                Some(u) => Outcome::Ambiguous(ReasonCode::LayerAmbiguous, format!("{line}; {u}")),
                None => Outcome::Match(line),
            });
        }
    }
    Ok(Outcome::Fail("no p-element outside F* with |G:C|_p = p".into()))
}

fn is_case_d_component(s: &SimpleId) -> bool {
    if *s == SimpleId::alternating(7) || *s == SimpleId::alternating(6) {
        return true;
    }
    s.family == Family::Linear
        && s.n == 2
        && s.q % 16 == 9
        && prime_power(s.q).is_some_and(|(r, e)| r % 2 == 1 && e % 2 == 0)
}

fn case_d(t: &CharTable, p: u64, layer: &Layer) -> Result<Outcome, TableError> {
    if p != 2 {
        return Ok(Outcome::Fail("p is odd".into()));
    }
    if !layer.quasi.is_empty() {
        return Ok(Outcome::Fail("quasisimple component with nontrivial center".into()));
    }
    let candidates: Vec<&SimpleFactor> =
        layer.simples.iter().filter(|s| s.copies == 1 && is_case_d_component(&s.simple)).collect();
    let o = layer.o_p;
    let a = t.sylow_exponent(p);
    let mut last = Outcome::Fail("no component A7 or PSL(2, q^2) with q^2 = 9 mod 16".into());
    for cand in candidates {
        let s_parts = match abelian_simples(layer, Some(&cand.set)) {
            Ok(v) => v,
            Err(outcome) => {
                last = outcome;
                continue;
            }
        };
        let s = join_all(t, &s_parts);
        let st = t.join(&s, &cand.set);
        let f = t.join(&o, &st);
        if f.order != o.order * s.order * cand.set.order {
            last = Outcome::Fail("F* is not a direct product".into());
            continue;
        }
        if layer.upper.order != 2 * f.order || !f.is_subgroup_of(&layer.upper) {
            last = Outcome::Fail(format!("O^2' has order {}, not 2|F*| = {}", layer.upper.order, 2 * f.order));
            continue;
        }
        if !o_p_abelian_mod(t, p, &o, &st)? {
            last = Outcome::Fail("O_2 nonabelian".into());
            continue;
        }
        let mut witness = None;
        for c in 0..t.k() {
            if !f.contains_class(c) && t.is_p_element(c, p)? && valuation(t.centralizer_order(c)?, p) == a {
                witness = Some(c);
                break;
            }
        }
        match witness {
            Some(c) => {
                let line = format!("T = {}, class {c} outside F* centralizes a Sylow 2-subgroup", cand.simple);
                return Ok(match layer.unexplained.first() {
                    Some(u) => Outcome::Ambiguous(ReasonCode::LayerAmbiguous, format!("{line}; {u}")),
                    None => Outcome::Match(line),
                });
            }
            None => last = Outcome::Fail(format!("T = {}, no 2-element outside F* with full centralizer", cand.simple)),
        }
    }
    Ok(last)
}

pub fn detect_center_index_p2(t: &CharTable, p: u64) -> Verdict {
    if !is_prime(p) {
        return Verdict::unknown(ReasonCode::InvalidPrime, vec![format!("{p} is not a prime")]);
    }
    let mut trace = Vec::new();
    let mut reductions: Vec<Reduction> = Vec::new();
    let verdict = match reduce_op_prime(t, p, &mut trace, &mut reductions) {
        Ok(reduced) => decide_cases(&reduced, p),
        Err(e) => Verdict::unknown(ReasonCode::TableInconsistent, vec![e.to_string()]),
    };
    verdict.with_history(trace, reductions)
}

fn decide_cases(t: &CharTable, p: u64) -> Verdict {
    match abelian_sylow_test(t, p) {
        Ok(true) => return Verdict::decided(false, ReasonCode::AbelianSylow, vec!["abelian Sylow subgroup".into()]),
        Ok(false) => {}
        Err(e) => return Verdict::unknown(ReasonCode::TableInconsistent, vec![e.to_string()]),
    }
    let layer = match build_layer(t, p) {
        Ok(l) => l,
        Err(v) => return v,
    };
    let cases: [(ReasonCode, fn(&CharTable, u64, &Layer) -> Result<Outcome, TableError>); 4] = [
        (ReasonCode::CaseA, case_a),
        (ReasonCode::CaseB, case_b),
        (ReasonCode::CaseC, case_c),
        (ReasonCode::CaseD, case_d),
    ];
    let mut trace = Vec::new();
    let mut ambiguous = None;
    for (code, case) in cases {
        match case(t, p, &layer) {
            Ok(Outcome::Match(line)) => {
                trace.push(format!("{code}: {line}"));
                return Verdict::decided(true, code, trace);
            }
            Ok(Outcome::Fail(line)) => trace.push(format!("{code} fails: {line}")),
            Ok(Outcome::Ambiguous(reason, line)) => {
                trace.push(format!("{code} inconclusive: {line}"));
                ambiguous.get_or_insert(reason);
            }
            Err(e) => {
                trace.push(format!("{code}: {e}"));
                ambiguous.get_or_insert(ReasonCode::TableInconsistent);
            }
        }
    }
    match ambiguous {
        Some(code) => Verdict::unknown(code, trace),
        None => Verdict::decided(false, ReasonCode::NoCaseMatches, trace),
    }
}
