//! Permutation-group constructions for the embedded corpus.
//!
//! Every builder returns a [`GroupDocument`] whose `expected_order` pins the
//! generators, so a wrong construction fails at enumeration time.

use std::collections::HashMap;

use crate::exactnum::FieldCtx;
use crate::io::{GroupDocument, TableDocument};
use crate::numtheory::prime_power;
use crate::oracle::Perm;

/// Addition and multiplication tables of GF(q), elements numbered by the
/// base-p digits of their coefficient vectors (0 and 1 are the field's 0 and 1).
struct SmallField {
    q: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    basis: Vec<usize>,
}

impl SmallField {
    fn new(q: u64) -> Self {
        let (p, m) = prime_power(q).expect("field order must be a prime power");
        let ctx = FieldCtx::new(p, m as usize).expect("prime characteristic");
        let elems: Vec<_> = (0..q).map(|t| ctx.element(t)).collect();
        let index: HashMap<_, usize> = elems.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let table = |f: &dyn Fn(usize, usize) -> crate::exactnum::FFElem| -> Vec<Vec<usize>> {
            (0..q as usize).map(|a| (0..q as usize).map(|b| index[&f(a, b)]).collect()).collect()
        };
        let add = table(&|a, b| elems[a].add(&elems[b]));
        let mul = table(&|a, b| elems[a].mul(&elems[b]));
        let x = ctx.generator_poly();
        let mut basis = Vec::new();
        let mut cur = ctx.one();
        for _ in 0..m {
            basis.push(index[&cur]);
            cur = cur.mul(&x);
        }
        SmallField { q: q as usize, add, mul, basis }
    }

    fn neg(&self, a: usize) -> usize {
        (0..self.q).find(|&b| self.add[a][b] == 0).unwrap()
    }

    fn inv(&self, a: usize) -> usize {
        (0..self.q).find(|&b| self.mul[a][b] == 1).unwrap()
    }

    fn mat_vec(&self, m: &[Vec<usize>], v: &[usize]) -> Vec<usize> {
        m.iter()
            .map(|row| row.iter().zip(v).fold(0, |acc, (&a, &b)| self.add[acc][self.mul[a][b]]))
            .collect()
    }

    fn vectors(&self, dim: usize) -> Vec<Vec<usize>> {
        let total = self.q.pow(dim as u32);
        (0..total)
            .map(|mut t| {
                (0..dim)
                    .map(|_| {
                        let d = t % self.q;
                        t /= self.q;
                        d
                    })
                    .collect()
            })
            .collect()
    }

    /// Scales a nonzero vector so that its first nonzero entry is 1.
    fn normalize(&self, v: &[usize]) -> Vec<usize> {
        let lead = *v.iter().find(|&&x| x != 0).expect("nonzero vector");
        let s = self.inv(lead);
        v.iter().map(|&x| self.mul[s][x]).collect()
    }

    /// The elementary matrices `1 + t·E_ij` for i ≠ j and t in an additive basis.
    fn transvections(&self, dim: usize) -> Vec<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                if i == j {
                    continue;
                }
                for &t in &self.basis {
                    let mut m: Vec<Vec<usize>> = (0..dim).map(|r| (0..dim).map(|c| usize::from(r == c)).collect()).collect();
                    m[i][j] = t;
                    out.push(m);
                }
            }
        }
        out
    }
}

fn perm_of(points: &[Vec<usize>], f: impl Fn(&[usize]) -> Vec<usize>) -> Perm {
    let index: HashMap<&[usize], usize> = points.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
    let images: Vec<usize> = points.iter().map(|v| index[f(v).as_slice()]).collect();
    Perm::from_images(&images).expect("matrix action permutes the points")
}

fn cycle(degree: usize, points: &[usize]) -> Perm {
    Perm::from_cycles(degree, &[points]).expect("valid cycle")
}

pub fn cyclic(n: usize) -> GroupDocument {
    let points: Vec<usize> = (0..n).collect();
    GroupDocument::new(format!("C{n}"), n, vec![cycle(n, &points)], Some(n as u64))
}

pub fn symmetric(n: usize) -> GroupDocument {
    let all: Vec<usize> = (0..n).collect();
    let gens = vec![cycle(n, &[0, 1]), cycle(n, &all)];
    GroupDocument::new(format!("S{n}"), n, gens, Some((1..=n as u64).product()))
}

pub fn alternating(n: usize) -> GroupDocument {
    assert!(n >= 3);
    let long: Vec<usize> = if n % 2 == 1 { (0..n).collect() } else { (1..n).collect() };
    let gens = vec![cycle(n, &[0, 1, 2]), cycle(n, &long)];
    GroupDocument::new(format!("A{n}"), n, gens, Some((1..=n as u64).product::<u64>() / 2))
}

/// The group `<a, b | a^n, b^2 = a^s, b a b^-1 = a^r>` in its regular action.
pub fn metacyclic(name: &str, n: usize, r: usize, s: usize) -> GroupDocument {
    let index = |i: usize, j: usize| i % n + n * j;
    let a: Vec<usize> = (0..2 * n).map(|x| index(x % n + 1, x / n)).collect();
    let b: Vec<usize> = (0..2 * n)
        .map(|x| {
            let (i, j) = (x % n, x / n);
            if j == 0 {
                index(r * i, 1)
            } else {
                index(r * i + s, 0)
            }
        })
        .collect();
    let gens = vec![Perm::from_images(&a).unwrap(), Perm::from_images(&b).unwrap()];
    GroupDocument::new(name, 2 * n, gens, Some(2 * n as u64))
}

pub fn dihedral8() -> GroupDocument {
    metacyclic("D8", 4, 3, 0)
}

pub fn quaternion8() -> GroupDocument {
    metacyclic("Q8", 4, 3, 2)
}

pub fn quaternion16() -> GroupDocument {
    metacyclic("Q16", 8, 7, 4)
}

pub fn semidihedral16() -> GroupDocument {
    metacyclic("SD16", 8, 3, 0)
}

/// C3 wr C3 acting on nine points.
pub fn wreath_c3_c3() -> GroupDocument {
    let gens = vec![cycle(9, &[0, 1, 2]), Perm::from_cycles(9, &[&[0, 3, 6], &[1, 4, 7], &[2, 5, 8]]).unwrap()];
    GroupDocument::new("C3wrC3", 9, gens, Some(81))
}

/// SL(2,q) acting on the nonzero vectors of GF(q)^2.
pub fn special_linear2(q: u64) -> GroupDocument {
    let f = SmallField::new(q);
    let points: Vec<Vec<usize>> = f.vectors(2).into_iter().filter(|v| v.iter().any(|&x| x != 0)).collect();
    let gens = f.transvections(2).iter().map(|m| perm_of(&points, |v| f.mat_vec(m, v))).collect();
    GroupDocument::new(format!("SL(2,{q})"), points.len(), gens, Some(q * (q * q - 1)))
}

/// GL(2,q) acting on the nonzero vectors of GF(q)^2.
pub fn general_linear2(q: u64) -> GroupDocument {
    let f = SmallField::new(q);
    let points: Vec<Vec<usize>> = f.vectors(2).into_iter().filter(|v| v.iter().any(|&x| x != 0)).collect();
    let mut mats = f.transvections(2);
    let primitive = (2..f.q)
        .find(|&a| {
            let mut cur = a;
            (1..f.q - 1).all(|_| {
                let ok = cur != 1;
                cur = f.mul[cur][a];
                ok
            })
        })
        .unwrap_or_else(|| f.neg(1));
    mats.push(vec![vec![primitive, 0], vec![0, 1]]);
    let gens = mats.iter().map(|m| perm_of(&points, |v| f.mat_vec(m, v))).collect();
    GroupDocument::new(format!("GL(2,{q})"), points.len(), gens, Some(q * (q * q - 1) * (q - 1)))
}

/// PSL(n,q) acting on the points of the projective space of dimension n-1.
pub fn projective_special_linear(n: usize, q: u64) -> GroupDocument {
    let f = SmallField::new(q);
    let points: Vec<Vec<usize>> = f
        .vectors(n)
        .into_iter()
        .filter(|v| v.iter().any(|&x| x != 0))
        .map(|v| f.normalize(&v))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let gens = f.transvections(n).iter().map(|m| perm_of(&points, |v| f.normalize(&f.mat_vec(m, v)))).collect();
    let mut order: u64 = q.pow((n * (n - 1) / 2) as u32);
    for i in 2..=n as u32 {
        order *= q.pow(i) - 1;
    }
    order /= num_integer::gcd(n as u64, q - 1);
    GroupDocument::new(format!("PSL({n},{q})"), points.len(), gens, Some(order))
}

/// PGL(2,q) acting on the q+1 points of the projective line.
pub fn projective_general_linear2(q: u64) -> GroupDocument {
    let f = SmallField::new(q);
    let points: Vec<Vec<usize>> = f
        .vectors(2)
        .into_iter()
        .filter(|v| v.iter().any(|&x| x != 0))
        .map(|v| f.normalize(&v))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let primitive = (2..f.q)
        .find(|&a| {
            let mut cur = a;
            (1..f.q - 1).all(|_| {
                let ok = cur != 1;
                cur = f.mul[cur][a];
                ok
            })
        })
        .unwrap_or_else(|| f.neg(1));
    let mut mats = f.transvections(2);
    mats.push(vec![vec![primitive, 0], vec![0, 1]]);
    let gens = mats.iter().map(|m| perm_of(&points, |v| f.normalize(&f.mat_vec(m, v)))).collect();
    GroupDocument::new(format!("PGL(2,{q})"), points.len(), gens, Some(q * (q * q - 1)))
}

/// Direct product acting on the disjoint union of the two point sets.
pub fn direct_product(a: &GroupDocument, b: &GroupDocument) -> GroupDocument {
    let degree = a.degree + b.degree;
    let mut gens = Vec::new();
    for g in &a.generators {
        gens.push(g.iter().copied().chain(a.degree..degree).collect());
    }
    for g in &b.generators {
        gens.push((0..a.degree).chain(g.iter().map(|&x| x + a.degree)).collect());
    }
    GroupDocument {
        name: format!("{}x{}", a.name, b.name),
        degree,
        generators: gens,
        expected_order: a.expected_order.zip(b.expected_order).map(|(x, y)| x * y),
    }
}

/// M11 on eleven points.
pub fn mathieu11() -> GroupDocument {
    let a: Vec<usize> = (0..11).collect();
    let b = Perm::from_cycles(11, &[&[2, 6, 10, 7], &[3, 9, 4, 5]]).unwrap();
    GroupDocument::new("M11", 11, vec![cycle(11, &a), b], Some(7920))
}

/// M10, the point stabilizer in M11, on the remaining ten points.
pub fn mathieu10() -> GroupDocument {
    let a = Perm::from_cycles(10, &[&[0, 2, 6, 9, 5, 3, 7, 8], &[1, 4]]).unwrap();
    let b = Perm::from_cycles(10, &[&[0, 6, 5, 4], &[1, 2, 7, 9]]).unwrap();
    GroupDocument::new("M10", 10, vec![a, b], Some(720))
}

/// Where a corpus entry's table comes from.
#[derive(Debug, Clone)]
pub enum CorpusSource {
    /// Enumerated and tabulated by the oracle.
    Group(GroupDocument),
    /// A stored character table; no oracle truth is available.
    Table(TableDocument),
}

/// Pinned Sylow invariants for regression checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pin {
    pub p: u64,
    pub commutator_index: u64,
    pub center_index: u64,
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub source: CorpusSource,
    /// Empty means every prime dividing the order.
    pub primes: Vec<u64>,
    pub pins: Vec<Pin>,
}

impl CorpusEntry {
    pub fn group(doc: GroupDocument) -> Self {
        CorpusEntry { name: doc.name.clone(), source: CorpusSource::Group(doc), primes: Vec::new(), pins: Vec::new() }
    }

    pub fn pinned(mut self, p: u64, commutator_index: u64, center_index: u64) -> Self {
        self.pins.push(Pin { p, commutator_index, center_index });
        self
    }

    pub fn pin(&self, p: u64) -> Option<&Pin> {
        self.pins.iter().find(|pin| pin.p == p)
    }
}

/// The embedded corpus, in report order.
pub fn entries() -> Vec<CorpusEntry> {
    let g = CorpusEntry::group;
    vec![
        g(cyclic(4)).pinned(2, 4, 1),
        g(cyclic(6)),
        g(cyclic(8)).pinned(2, 8, 1),
        g(cyclic(9)).pinned(3, 9, 1),
        g(direct_product(&cyclic(2), &cyclic(2))),
        g(dihedral8()).pinned(2, 4, 4),
        g(quaternion8()).pinned(2, 4, 4),
        g(quaternion16()).pinned(2, 4, 8),
        g(semidihedral16()).pinned(2, 4, 8),
        g(wreath_c3_c3()).pinned(3, 9, 27),
        g(symmetric(3)),
        g(symmetric(4)).pinned(2, 4, 4).pinned(3, 3, 1),
        g(symmetric(5)).pinned(2, 4, 4),
        g(symmetric(6)).pinned(2, 8, 4),
        g(symmetric(7)).pinned(2, 8, 4),
        g(symmetric(8)),
        g(symmetric(9)).pinned(3, 9, 27),
        g(alternating(4)),
        g(alternating(5)).pinned(2, 4, 1),
        g(alternating(6)).pinned(2, 4, 4),
        g(alternating(7)).pinned(2, 4, 4),
        g(alternating(8)),
        g(special_linear2(3)).pinned(2, 4, 4),
        g(special_linear2(5)).pinned(2, 4, 4),
        g(special_linear2(7)).pinned(2, 4, 8),
        g(special_linear2(9)).pinned(2, 4, 8),
        g(general_linear2(3)).pinned(2, 4, 8),
        g(projective_special_linear(2, 7)).pinned(2, 4, 4),
        g(projective_special_linear(2, 11)),
        g(projective_special_linear(2, 13)),
        g(projective_special_linear(3, 2)),
        g(projective_special_linear(3, 4)),
        g(projective_general_linear2(9)),
        g(mathieu10()),
        g(mathieu11()).pinned(2, 4, 8),
        g(direct_product(&alternating(5), &quaternion8())).pinned(2, 16, 4),
        g(direct_product(&dihedral8(), &cyclic(3))).pinned(2, 4, 4),
        g(direct_product(&symmetric(3), &cyclic(5))),
        g(direct_product(&alternating(4), &cyclic(3))),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        for doc in [
            cyclic(6),
            symmetric(4),
            alternating(6),
            dihedral8(),
            quaternion8(),
            semidihedral16(),
            wreath_c3_c3(),
            special_linear2(3),
            general_linear2(3),
            projective_special_linear(2, 7),
            projective_special_linear(3, 2),
            direct_product(&alternating(4), &cyclic(3)),
            projective_general_linear2(9),
            mathieu10(),
        ] {
            let g = doc.enumerate(1 << 20).unwrap();
            assert_eq!(Some(g.order()), doc.expected_order, "{}", doc.name);
        }
    }
}
