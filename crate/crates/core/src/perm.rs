//! Permutations on `0..degree`, composed left to right.
//!
//! `a * b` applies `a` first and then `b`, so `(a * b).apply(i) == b.apply(a.apply(i))`.
//! Conjugation follows the same convention: `x.conj(g) == g⁻¹ x g`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Box<[u16]>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm { images: (0..degree as u16).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > u16::MAX as usize {
            return Err(Error::InvalidPermutation(format!("degree {n} too large")));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Perm { images: images.into_iter().map(|i| i as u16).collect() })
    }

    /// Builds a permutation from disjoint cycles, e.g. `[[0, 1, 2], [3, 4]]`.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= degree {
                    return Err(Error::InvalidPermutation(format!("point {a} out of range for degree {degree}")));
                }
                if touched[a] {
                    return Err(Error::InvalidPermutation(format!("point {a} appears in more than one cycle")));
                }
                touched[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Perm { images: inv.into_boxed_slice() }
    }

    /// `g⁻¹ · self · g`
    pub fn conj(&self, g: &Perm) -> Perm {
        let mut out = vec![0u16; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[j as usize];
        }
        Perm { images: out.into_boxed_slice() }
    }

    /// `self⁻¹ · other⁻¹ · self · other`
    pub fn commutator(&self, other: &Perm) -> Perm {
        &(&self.inverse() * &other.inverse()) * &(self * other)
    }

    pub fn pow(&self, mut e: i64) -> Perm {
        let mut base = if e < 0 {
            e = -e;
            self.inverse()
        } else {
            self.clone()
        };
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// The `p`-part of `self`: the unique power of `p`-power order whose
    /// cofactor has order prime to `p`.
    pub fn p_part(&self, p: u64) -> Perm {
        let o = self.order();
        let op = crate::arith::p_part(o, p);
        self.pow(crate::arith::crt_pair(1, op, 0, o / op) as i64)
    }

    /// The `p'`-part, so that `g = g_p · g_{p'}` with commuting factors.
    pub fn p_regular_part(&self, p: u64) -> Perm {
        &self.p_part(p).inverse() * self
    }

    /// Order as the lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.images.len()];
        let mut ord = 1u64;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i] as usize;
                len += 1;
            }
            ord = num_integer::lcm(ord, len);
        }
        ord
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut i = self.apply(start);
            while i != start {
                seen[i] = true;
                cycle.push(i);
                i = self.apply(i);
            }
            out.push(cycle);
        }
        out
    }

    /// Disjoint-cycle notation; the identity prints as `()`.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|i| i.to_string()).collect();
                format!("({})", inner.join(" "))
            })
            .collect()
    }
}

impl<'a> std::ops::Mul<&'a Perm> for &'a Perm {
    type Output = Perm;

    fn mul(self, rhs: &'a Perm) -> Perm {
        debug_assert_eq!(self.degree(), rhs.degree());
        let images: Box<[u16]> = self.images.iter().map(|&i| rhs.images[i as usize]).collect();
        Perm { images }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}
