use std::fmt;

use super::OracleError;

/// A permutation of `{0, ..., d-1}` stored by images.
///
/// Products compose left to right: `a.then(&b)` applies `a` first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Box<[u16]>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u16).collect())
    }

    pub fn from_images(images: &[usize]) -> Result<Self, OracleError> {
        let d = images.len();
        if d > u16::MAX as usize {
            return Err(OracleError::InvalidPermutation(format!("degree {d} is too large")));
        }
        let mut seen = vec![false; d];
        for &i in images {
            if i >= d || std::mem::replace(&mut seen[i], true) {
                return Err(OracleError::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Perm(images.iter().map(|&i| i as u16).collect()))
    }

    /// Builds a permutation of degree `degree` from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, OracleError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (j, &a) in cycle.iter().enumerate() {
                let b = cycle[(j + 1) % cycle.len()];
                if a >= degree || b >= degree || std::mem::replace(&mut touched[a], true) {
                    return Err(OracleError::InvalidPermutation(format!("bad cycle {cycle:?}")));
                }
                images[a] = b;
            }
        }
        Perm::from_images(&images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u16] {
        &self.0
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0u16; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u16;
        }
        Perm(out.into())
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut result = Perm::identity(self.degree());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        result
    }

    /// `g^-1 · self · g`.
    pub fn conjugate_by(&self, g: &Perm, g_inv: &Perm) -> Perm {
        g_inv.then(self).then(g)
    }

    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut ord = 1u64;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize;
                len += 1;
            }
            ord = num_integer::lcm(ord, len);
        }
        ord
    }

    /// Disjoint cycles of length at least two.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.image(i);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_left_to_right() {
        let a = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        let ab = a.then(&b);
        assert_eq!(ab.image(0), 2);
        assert_eq!(ab.order(), 3);
        assert!(ab.then(&ab.inverse()).is_identity());
        assert_eq!(format!("{ab:?}"), "(0,2,1)");
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(&[0, 0]).is_err());
        assert!(Perm::from_images(&[1, 2]).is_err());
        assert!(Perm::from_cycles(3, &[&[0, 1], &[1, 2]]).is_err());
    }

    #[test]
    fn powers_and_orders() {
        let c = Perm::from_cycles(6, &[&[0, 1, 2], &[3, 4]]).unwrap();
        assert_eq!(c.order(), 6);
        assert!(c.pow(6).is_identity());
        assert_eq!(c.pow(3).order(), 2);
    }
}
