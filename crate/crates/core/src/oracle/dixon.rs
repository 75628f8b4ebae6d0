use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::modp::{self, Mat};
use super::{ConjugacyData, Group, OracleError};
use crate::exactnum::Cyc;
use crate::numtheory::{factorize, is_prime, isqrt, mul_mod, pow_mod};
use crate::table::{CharTable, ClassData};

#[derive(Debug, Clone, Copy)]
pub struct DixonOptions {
    pub seed: u64,
    /// Random combinations tried per prime before moving to the next prime.
    pub max_rounds: usize,
    /// Number of primes tried before giving up.
    pub max_primes: usize,
}

impl Default for DixonOptions {
    fn default() -> Self {
        DixonOptions { seed: 0x5eed, max_rounds: 200, max_primes: 6 }
    }
}

#[derive(Debug, Clone)]
pub struct DixonOutcome {
    pub table: CharTable,
    /// The prime l used for the modular computation.
    pub modulus: u64,
    /// Exponent of the group.
    pub exponent: u64,
}

/// Character table of an enumerated group with default options.
pub fn dixon_table(g: &Group, name: Option<&str>) -> Result<CharTable, OracleError> {
    let cls = g.conjugacy_data();
    Ok(dixon_with(g, &cls, name, DixonOptions::default())?.table)
}

/// Class-multiplication coefficients: `m[j][i][k]` counts x in class j with
/// x^-1 z in class i, for a fixed z in class k.
pub fn class_matrices(g: &Group, cls: &ConjugacyData) -> Vec<Vec<Vec<u32>>> {
    let k = cls.k();
    let reps: Vec<_> = cls.classes.iter().map(|c| g.element(c.representative).clone()).collect();
    (0..k)
        .into_par_iter()
        .map(|j| {
            let jstar = cls.inverse_class(g, j);
            let mut m = vec![vec![0u32; k]; k];
            for &u in &cls.classes[jstar].members {
                let x = g.element(u);
                for (kk, z) in reps.iter().enumerate() {
                    let y = g.index_of(&x.then(z)).expect("closed under products");
                    m[cls.class_of[y as usize] as usize][kk] += 1;
                }
            }
            m
        })
        .collect()
}

fn next_prime_1_mod(e: u64, above: u64) -> u64 {
    let mut r = above / e + 1;
    loop {
        let l = e * r + 1;
        if l > above && is_prime(l) {
            return l;
        }
        r += 1;
    }
}

fn primitive_root(l: u64) -> u64 {
    let factors = factorize(l - 1);
    (2..l)
        .find(|&g| factors.iter().all(|&(q, _)| pow_mod(g, (l - 1) / q, l) != 1))
        .expect("a prime field has a primitive root")
}

pub fn dixon_with(
    g: &Group,
    cls: &ConjugacyData,
    name: Option<&str>,
    opts: DixonOptions,
) -> Result<DixonOutcome, OracleError> {
    let order = g.order();
    let exponent = cls.classes.iter().fold(1, |acc, c| num_integer::lcm(acc, c.element_order));
    let mats = class_matrices(g, cls);
    let power_classes: Vec<Vec<usize>> = cls
        .classes
        .iter()
        .map(|c| {
            let x = g.element(c.representative);
            let mut cur = crate::oracle::Perm::identity(g.degree());
            (0..c.element_order)
                .map(|_| {
                    let idx = cls.class_of[g.index_of(&cur).unwrap() as usize] as usize;
                    cur = cur.then(x);
                    idx
                })
                .collect()
        })
        .collect();
    // l > 2 sqrt|G|
    let mut bound = 2 * isqrt(order) + 1;
    let mut last_error = String::new();
    for attempt in 0..opts.max_primes {
        let l = next_prime_1_mod(exponent, bound);
        bound = l;
        match attempt_with_prime(g, cls, &mats, &power_classes, exponent, l, opts, attempt as u64, name) {
            Ok(table) => return Ok(DixonOutcome { table, modulus: l, exponent }),
            Err(e) => last_error = e,
        }
    }
    Err(OracleError::Dixon(last_error))
}

#[allow(clippy::too_many_arguments)]
fn attempt_with_prime(
    g: &Group,
    cls: &ConjugacyData,
    mats: &[Vec<Vec<u32>>],
    power_classes: &[Vec<usize>],
    exponent: u64,
    l: u64,
    opts: DixonOptions,
    attempt: u64,
    name: Option<&str>,
) -> Result<CharTable, String> {
    let k = cls.k();
    let order = g.order();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ attempt.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut spaces: Vec<Mat> = vec![(0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect()];
    let mut done: Vec<Vec<u64>> = Vec::new();
    let mut rounds = 0;
    while let Some(space) = spaces.pop() {
        if space.len() == 1 {
            done.push(space.into_iter().next().unwrap());
            continue;
        }
        rounds += 1;
        if rounds > opts.max_rounds {
            return Err(format!("eigenspace splitting did not finish modulo {l}"));
        }
        let coeffs: Vec<u64> = (0..k).map(|_| rng.random_range(0..l)).collect();
        let mut a = vec![vec![0u64; k]; k];
        for (j, m) in mats.iter().enumerate() {
            let r = coeffs[j];
            for i in 0..k {
                for kk in 0..k {
                    if m[i][kk] != 0 {
                        a[i][kk] = (a[i][kk] + mul_mod(r, m[i][kk] as u64, l)) % l;
                    }
                }
            }
        }
        let parts = split_space(&a, &space, l)?;
        if parts.len() == 1 {
            spaces.push(space);
        } else {
            spaces.extend(parts);
        }
    }
    if done.len() != k {
        return Err(format!("found {} eigenvectors for {k} classes", done.len()));
    }
    let sizes: Vec<u64> = cls.classes.iter().map(|c| c.size % l).collect();
    let inverse: Vec<usize> = (0..k).map(|c| cls.inverse_class(g, c)).collect();
    let z = pow_mod(primitive_root(l), (l - 1) / exponent, l);
    let mut rows: Vec<(u64, bool, Vec<Cyc>)> = Vec::with_capacity(k);
    for v in &done {
        if v[0] != 1 {
            return Err("eigenvector vanishes on the identity class".into());
        }
        let mut s = 0u64;
        for i in 0..k {
            let t = mul_mod(mul_mod(v[i], v[inverse[i]], l), modp::inv(sizes[i], l), l);
            s = (s + t) % l;
        }
        if s == 0 {
            return Err("degenerate degree equation".into());
        }
        let target = mul_mod(order % l, modp::inv(s, l), l);
        let d = (1..=isqrt(order))
            .find(|&d| mul_mod(d, d, l) == target)
            .ok_or_else(|| "no integral degree".to_string())?;
        let values_mod: Vec<u64> = (0..k)
            .map(|i| mul_mod(mul_mod(d % l, v[i], l), modp::inv(sizes[i], l), l))
            .collect();
        let trivial = (0..k).all(|i| v[i] == sizes[i]);
        let mut row = Vec::with_capacity(k);
        for (i, c) in cls.classes.iter().enumerate() {
            let o = c.element_order;
            let zo = pow_mod(z, exponent / o, l);
            let zo_inv = modp::inv(zo, l);
            let o_inv = modp::inv(o % l, l);
            let mut mu = Vec::with_capacity(o as usize);
            for s in 0..o {
                let step = pow_mod(zo_inv, s, l);
                let mut acc = 0u64;
                let mut w = 1u64;
                for m in 0..o as usize {
                    acc = (acc + mul_mod(values_mod[power_classes[i][m]], w, l)) % l;
                    w = mul_mod(w, step, l);
                }
                let mu_s = mul_mod(acc, o_inv, l);
                if mu_s > d {
                    return Err(format!("eigenvalue multiplicity {mu_s} exceeds degree {d}"));
                }
                mu.push(mu_s as i64);
            }
            row.push(Cyc::from_int_exponents(o, &mu).map_err(|e| e.to_string())?);
        }
        rows.push((d, trivial, row));
    }
    rows.sort_by_key(|(d, trivial, _)| (!*trivial, *d));
    let classes = cls
        .classes
        .iter()
        .map(|c| ClassData { size: c.size, element_order: c.element_order, name: Some(c.name.clone()) })
        .collect();
    let chars = rows.into_iter().map(|(_, _, r)| r).collect();
    CharTable::new(name.map(str::to_string), order, classes, cls.power_maps.clone(), chars).map_err(|e| e.to_string())
}

/// Splits `space` (rows in reduced echelon form, invariant under `a`) into
/// the eigenspaces of `a` restricted to it.
fn split_space(a: &Mat, space: &Mat, l: u64) -> Result<Vec<Mat>, String> {
    let d = space.len();
    let k = a.len();
    let pivots: Vec<usize> = space.iter().map(|b| b.iter().position(|&x| x != 0).unwrap()).collect();
    let images: Vec<Vec<u64>> = space
        .iter()
        .map(|b| {
            (0..k)
                .map(|i| a[i].iter().zip(b).fold(0u64, |acc, (&x, &y)| (acc + mul_mod(x, y, l)) % l))
                .collect()
        })
        .collect();
    // restricted[i][j]: coordinate j of a·b_i; eigenvectors are left eigenvectors.
    let rt: Mat = (0..d).map(|j| (0..d).map(|i| images[i][pivots[j]]).collect()).collect();
    let cp = modp::charpoly(&rt, l);
    let roots: Vec<u64> = (0..l).filter(|&x| modp::eval(&cp, x, l) == 0).collect();
    let mut parts = Vec::new();
    let mut total = 0;
    for lambda in roots {
        let mut shifted = rt.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] = (row[i] + l - lambda) % l;
        }
        let ns = modp::nullspace(&shifted, l);
        total += ns.len();
        let mut vectors: Mat = ns
            .iter()
            .map(|c| {
                (0..k)
                    .map(|col| c.iter().zip(space).fold(0u64, |acc, (&ci, b)| (acc + mul_mod(ci, b[col], l)) % l))
                    .collect()
            })
            .collect();
        modp::rref(&mut vectors, l);
        parts.push(vectors);
    }
    if total != d {
        return Err(format!("restricted class matrix is not diagonalizable modulo {l}"));
    }
    Ok(parts)
}
