//! Import of character tables written in the `MOT(...)` layout used by the
//! GAP character table library.
//!
//! Supported subset:
//! - `MOT(name, text, centralizers, powermaps, irreducibles, ...)`; further
//!   arguments and any other top-level calls (`ALF`, `ARC`, ...) are ignored;
//! - power maps as a list indexed by prime, with holes (`[,[1,1,2],[1,2,1]]`);
//! - character values built from integers, `E(n)`, `ER(n)`, `EI(n)`, `EB(n)`,
//!   `+ - * /`, `^` with integer exponents and parentheses;
//! - rows given as `[GALOIS,[i,k]]` or `[TENSOR,[i,j]]` (1-based references).
//!
//! Element orders are reconstructed from the power maps.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::IoError;
use crate::exactnum::{cyc_root, Cyc, Rat};
use crate::numtheory::{divisors, factorize, is_prime};
use crate::table::{CharTable, ClassData};

#[derive(Debug, Clone)]
enum Value {
    Str(String),
    List(Vec<Option<Value>>),
    Num(Cyc),
    Ident(String),
    /// A permutation such as `(4,5)(6,7)`; read and discarded.
    Perm,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { src: text.as_bytes(), pos: 0 }
    }

    fn line(&self) -> usize {
        self.src[..self.pos.min(self.src.len())].iter().filter(|&&b| b == b'\n').count() + 1
    }

    fn err(&self, msg: impl Into<String>) -> IoError {
        IoError::Parse { location: format!("line {}", self.line()), message: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() {
            match self.src[self.pos] {
                b' ' | b'\t' | b'\n' | b'\r' => self.pos += 1,
                b'#' => {
                    while self.pos < self.src.len() && self.src[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                b'\\' if self.src.get(self.pos + 1) == Some(&b'\n') => self.pos += 2,
                _ => break,
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<(), IoError> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", b as char)))
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn integer(&mut self) -> Result<BigInt, IoError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().unwrap())
    }

    fn signed_integer(&mut self) -> Result<i64, IoError> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let v = self.integer()?.to_i64().ok_or_else(|| self.err("integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn string(&mut self) -> Result<String, IoError> {
        self.expect(b'"')?;
        let mut out = Vec::new();
        while self.pos < self.src.len() {
            let b = self.src[self.pos];
            self.pos += 1;
            match b {
                b'"' => return Ok(String::from_utf8_lossy(&out).into_owned()),
                b'\\' => {
                    if let Some(&next) = self.src.get(self.pos) {
                        self.pos += 1;
                        match next {
                            b'\n' => {}
                            b'n' => out.push(b'\n'),
                            other => out.push(other),
                        }
                    }
                }
                other => out.push(other),
            }
        }
        Err(self.err("unterminated string"))
    }

    fn value(&mut self) -> Result<Value, IoError> {
        match self.peek() {
            Some(b'"') => Ok(Value::Str(self.string()?)),
            Some(b'[') => self.list(),
            Some(b'(') if self.permutation() => Ok(Value::Perm),
            Some(c) if c.is_ascii_alphabetic() => {
                let save = self.pos;
                let id = self.ident();
                if matches!(id.as_str(), "GALOIS" | "TENSOR") {
                    return Ok(Value::Ident(id));
                }
                self.pos = save;
                Ok(Value::Num(self.expr()?))
            }
            Some(_) => Ok(Value::Num(self.expr()?)),
            None => Err(self.err("unexpected end of input")),
        }
    }

    /// Consumes a permutation in cycle notation if one starts here. Cycles
    /// have at least two points, which keeps `(3)` an expression.
    fn permutation(&mut self) -> bool {
        let save = self.pos;
        let mut cycles = 0;
        while self.peek() == Some(b'(') {
            self.pos += 1;
            let mut points = 0;
            while self.integer().is_ok() {
                points += 1;
                if self.peek() != Some(b',') {
                    break;
                }
                self.pos += 1;
            }
            let closed = self.peek() == Some(b')');
            if !closed || points == 1 || (points == 0 && cycles > 0) {
                self.pos = save;
                return false;
            }
            self.pos += 1;
            cycles += 1;
        }
        if matches!(self.peek(), Some(b',' | b']' | b')') | None) {
            true
        } else {
            self.pos = save;
            false
        }
    }

    fn list(&mut self) -> Result<Value, IoError> {
        self.expect(b'[')?;
        let mut items = Vec::new();
        if self.peek() == Some(b']') {
            self.pos += 1;
            return Ok(Value::List(items));
        }
        loop {
            match self.peek() {
                Some(b',') => {
                    self.pos += 1;
                    items.push(None);
                    continue;
                }
                Some(b']') => {
                    self.pos += 1;
                    items.push(None);
                    return Ok(Value::List(items));
                }
                _ => {}
            }
            items.push(Some(self.value()?));
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b']') => {
                    self.pos += 1;
                    return Ok(Value::List(items));
                }
                _ => return Err(self.err("expected ',' or ']' in list")),
            }
        }
    }

    fn expr(&mut self) -> Result<Cyc, IoError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Cyc, IoError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.factor()?;
                    acc = acc.checked_div(&d).map_err(|e| self.err(e.to_string()))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Cyc, IoError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                return Ok(-self.factor()?);
            }
            Some(b'+') => {
                self.pos += 1;
                return self.factor();
            }
            _ => {}
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.signed_integer()?;
            return if e >= 0 {
                Ok(base.pow(e as u32))
            } else {
                let inv = base.inverse().map_err(|e| self.err(e.to_string()))?;
                Ok(inv.pow((-e) as u32))
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Cyc, IoError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(Cyc::from_bigint(self.integer()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let id = self.ident();
                self.expect(b'(')?;
                let n = self.signed_integer()?;
                self.expect(b')')?;
                let wrap = |r: Result<Cyc, String>| r.map_err(|m| self.err(m));
                match id.as_str() {
                    "E" if n > 0 => wrap(cyc_root(n as u64, 1).map_err(|e| e.to_string())),
                    "ER" => wrap(sqrt_int(n)),
                    "EI" => wrap(sqrt_int(-n)),
                    "EB" => wrap(eb(n)),
                    _ => Err(self.err(format!("unsupported irrationality {id}({n})"))),
                }
            }
            _ => Err(self.err("expected a number or expression")),
        }
    }
}

/// sqrt(q) for a positive prime q, as the suitably normalized Gauss sum.
fn sqrt_prime(q: u64) -> Result<Cyc, String> {
    if q == 2 {
        let z = |k| cyc_root(8, k).map_err(|e| e.to_string());
        return Ok(&z(1)? - &z(3)?);
    }
    let qi = q as i64;
    let mut coeffs = vec![0i64; q as usize];
    for a in 1..qi {
        let legendre = crate::numtheory::pow_mod(a as u64, (q - 1) / 2, q);
        coeffs[a as usize] = if legendre == 1 { 1 } else { -1 };
    }
    let gauss = Cyc::from_int_exponents(q, &coeffs).map_err(|e| e.to_string())?;
    if q % 4 == 1 {
        Ok(gauss)
    } else {
        Ok(-(&gauss * &cyc_root(4, 1).unwrap()))
    }
}

/// The square root of an integer: positive for n > 0, `i·sqrt(-n)` for n < 0.
fn sqrt_int(n: i64) -> Result<Cyc, String> {
    if n == 0 {
        return Ok(Cyc::zero());
    }
    let mut result = Cyc::one();
    let mut square_part = 1i64;
    for (q, e) in factorize(n.unsigned_abs()) {
        square_part *= (q as i64).pow(e / 2);
        if e % 2 == 1 {
            result = &result * &sqrt_prime(q)?;
        }
    }
    if n < 0 {
        result = &result * &cyc_root(4, 1).unwrap();
    }
    Ok(result.scale(&Rat::from_integer(square_part.into())))
}

/// `(1/2) Σ_{j=1}^{n-1} E(n)^{j^2}` for odd n.
fn eb(n: i64) -> Result<Cyc, String> {
    if n < 3 || n % 2 == 0 {
        return Err(format!("EB({n}) needs an odd argument above 1"));
    }
    let mut coeffs = vec![0i64; n as usize];
    for j in 1..n {
        coeffs[((j * j) % n) as usize] += 1;
    }
    let sum = Cyc::from_int_exponents(n as u64, &coeffs).map_err(|e| e.to_string())?;
    Ok(sum.scale(&Rat::new(1.into(), 2.into())))
}

fn as_list(v: &Value, what: &str) -> Result<Vec<Option<Value>>, IoError> {
    match v {
        Value::List(items) => Ok(items.clone()),
        _ => Err(IoError::field(what, "expected a list")),
    }
}

fn as_index(v: &Option<Value>, what: &str) -> Result<usize, IoError> {
    match v {
        Some(Value::Num(c)) => c
            .to_i64()
            .filter(|&i| i >= 1)
            .map(|i| i as usize - 1)
            .ok_or_else(|| IoError::field(what, "expected a positive integer")),
        _ => Err(IoError::field(what, "expected a positive integer")),
    }
}

fn as_int(v: &Option<Value>, what: &str) -> Result<i64, IoError> {
    match v {
        Some(Value::Num(c)) => c.to_i64().ok_or_else(|| IoError::field(what, "expected an integer")),
        _ => Err(IoError::field(what, "expected an integer")),
    }
}

/// Converts the first `MOT(...)` table in `text` and validates it.
pub fn convert_gap_mot(text: &str) -> Result<CharTable, IoError> {
    let start = text.find("MOT(").ok_or_else(|| IoError::Parse {
        location: "line 1".into(),
        message: "no MOT( call found".into(),
    })?;
    let mut p = Parser::new(text);
    p.pos = start + 4;
    let mut args = Vec::new();
    loop {
        args.push(p.value()?);
        match p.peek() {
            Some(b',') => p.pos += 1,
            Some(b')') => break,
            _ => return Err(p.err("expected ',' or ')' after MOT argument")),
        }
    }
    if args.len() < 5 {
        return Err(p.err("MOT needs at least five arguments"));
    }
    let name = match &args[0] {
        Value::Str(s) => s.clone(),
        _ => return Err(IoError::field("MOT[1]", "table name must be a string")),
    };
    let cents: Vec<u64> = as_list(&args[2], "centralizers")?
        .iter()
        .enumerate()
        .map(|(i, v)| as_int(v, &format!("centralizers[{}]", i + 1)).map(|x| x as u64))
        .collect::<Result<_, _>>()?;
    let k = cents.len();
    if k == 0 {
        return Err(IoError::field("centralizers", "empty"));
    }
    let order = cents[0];
    let mut power_maps = BTreeMap::new();
    for (i, entry) in as_list(&args[3], "powermaps")?.iter().enumerate() {
        let Some(map) = entry else { continue };
        let prime = i as u64 + 1;
        if !is_prime(prime) {
            return Err(IoError::field(format!("powermaps[{prime}]"), "power maps must sit at prime positions"));
        }
        let items = as_list(map, &format!("powermaps[{prime}]"))?;
        let imgs = items
            .iter()
            .enumerate()
            .map(|(c, v)| as_index(v, &format!("powermaps[{prime}][{}]", c + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        power_maps.insert(prime, imgs);
    }
    let mut rows: Vec<Vec<Cyc>> = Vec::new();
    for (i, entry) in as_list(&args[4], "irreducibles")?.iter().enumerate() {
        let at = format!("irreducibles[{}]", i + 1);
        let items = as_list(entry.as_ref().ok_or_else(|| IoError::field(&at, "hole in character list"))?, &at)?;
        let row = match items.first() {
            Some(Some(Value::Ident(kind))) => {
                let refs = as_list(items.get(1).and_then(|v| v.as_ref()).ok_or_else(|| IoError::field(&at, "missing arguments"))?, &at)?;
                let a = as_index(&refs[0], &at)?;
                let src = rows.get(a).ok_or_else(|| IoError::field(&at, "refers to a later character"))?.clone();
                match kind.as_str() {
                    "GALOIS" => {
                        let j = as_int(&refs[1], &at)?;
                        src.iter()
                            .map(|v| v.galois(j).map_err(|e| IoError::field(&at, e.to_string())))
                            .collect::<Result<Vec<_>, _>>()?
                    }
                    _ => {
                        let b = as_index(&refs[1], &at)?;
                        let other = rows.get(b).ok_or_else(|| IoError::field(&at, "refers to a later character"))?;
                        src.iter().zip(other).map(|(x, y)| x * y).collect()
                    }
                }
            }
            _ => items
                .iter()
                .enumerate()
                .map(|(c, v)| match v {
                    Some(Value::Num(x)) => Ok(x.clone()),
                    _ => Err(IoError::field(format!("{at}[{}]", c + 1), "expected a character value")),
                })
                .collect::<Result<Vec<_>, _>>()?,
        };
        rows.push(row);
    }
    let power_class = |c: usize, n: u64| -> Option<usize> {
        let mut cur = c;
        for (r, e) in factorize(n) {
            let map = power_maps.get(&r)?;
            for _ in 0..e {
                cur = *map.get(cur)?;
            }
        }
        Some(cur)
    };
    let mut classes = Vec::with_capacity(k);
    for (c, &cent) in cents.iter().enumerate() {
        if cent == 0 || !order.is_multiple_of(cent) {
            return Err(IoError::field(format!("centralizers[{}]", c + 1), "must divide the group order"));
        }
        let element_order = if c == 0 {
            1
        } else {
            divisors(order)
                .into_iter()
                .skip(1)
                .find(|&n| power_class(c, n) == Some(0))
                .ok_or(IoError::MissingPowerMaps)?
        };
        classes.push(ClassData { size: order / cent, element_order, name: None });
    }
    let table = CharTable::from_parts(Some(name), order, classes, power_maps, rows)?;
    let violations = table.validate();
    if violations.is_empty() {
        Ok(table)
    } else {
        Err(IoError::Invalid(violations))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{Signed, Zero};

    #[test]
    fn square_roots() {
        for n in [-11i64, -7, -3, -2, -1, 2, 3, 5, 6, 8, 12, 13] {
            let r = sqrt_int(n).unwrap();
            assert_eq!(&r * &r, Cyc::from_int(n), "n = {n}");
        }
        let s5 = sqrt_int(5).unwrap();
        let gap = Parser::new("E(5)-E(5)^2-E(5)^3+E(5)^4").expr().unwrap();
        assert_eq!(s5, gap);
        let s3 = Parser::new("-E(12)^7+E(12)^11").expr().unwrap();
        assert_eq!(sqrt_int(3).unwrap(), s3);
        let b5 = eb(5).unwrap();
        assert_eq!(b5, (&s5 - &Cyc::one()).scale(&Rat::new(1.into(), 2.into())));
        assert!(b5.to_rat().is_err());
        assert!(Rat::new(BigInt::from(-1), BigInt::from(2)).is_negative());
        assert!(!Cyc::zero().numerators()[0].is_positive() && Cyc::zero().numerators()[0].is_zero());
    }

    #[test]
    fn expressions() {
        let v = Parser::new("-3/2*E(3)^2 + (1 - E(3))").expr().unwrap();
        assert!(matches!(Parser::new("[(1,2)(3,4,5),()]").value().unwrap(), Value::List(l) if l.len() == 2));
        assert!(matches!(Parser::new("(2)*3").value().unwrap(), Value::Num(_)));
        let z3 = cyc_root(3, 1).unwrap();
        let expected = &(&Cyc::one() - &z3) - &z3.pow(2).scale(&Rat::new(3.into(), 2.into()));
        assert_eq!(v, expected);
    }
}
