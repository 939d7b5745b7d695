use std::fmt;

use serde::{Deserialize, Serialize};

use super::GroupError;

/// A permutation of `{0, .., n-1}` acting on the right: `i^(pq) = (i^p)^q`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm { images: (0..n as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Perm, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(GroupError::NotAPermutation);
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    /// Parses cycle notation such as `"(0 1)(2 3)"`; `"()"` is the identity.
    pub fn parse_cycles(s: &str, degree: usize) -> Result<Perm, GroupError> {
        let bad = || GroupError::BadCycles(s.to_string());
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        let mut rest = s.trim();
        while !rest.is_empty() {
            let rest_open = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = rest_open.find(')').ok_or_else(bad)?;
            let body = &rest_open[..close];
            rest = rest_open[close + 1..].trim_start();
            let pts: Vec<usize> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_, _>>()?;
            for (k, &p) in pts.iter().enumerate() {
                if p >= degree || seen[p] {
                    return Err(bad());
                }
                seen[p] = true;
                images[p] = pts[(k + 1) % pts.len()] as u32;
            }
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.images.len()];
        let mut ord = 1usize;
        for s in 0..self.images.len() {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
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
        for s in 0..self.images.len() {
            if seen[s] || self.images[s] as usize == s {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i);
                i = self.images[i] as usize;
            }
            out.push(cyc);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_round_trip() {
        let p = Perm::parse_cycles("(0 1)(2 3 4)", 5).unwrap();
        assert_eq!(p.to_string(), "(0 1)(2 3 4)");
        assert_eq!(p.order(), 6);
        assert_eq!(Perm::parse_cycles("()", 3).unwrap(), Perm::identity(3));
    }

    #[test]
    fn rejects_bad_cycles() {
        assert!(Perm::parse_cycles("(0 0)", 3).is_err());
        assert!(Perm::parse_cycles("(0 5)", 3).is_err());
        assert!(Perm::parse_cycles("0 1", 3).is_err());
        assert!(Perm::from_images(vec![0, 0]).is_err());
    }

    #[test]
    fn right_action_convention() {
        let a = Perm::parse_cycles("(0 1)", 3).unwrap();
        let b = Perm::parse_cycles("(1 2)", 3).unwrap();
        // 0 -> 1 under a, then 1 -> 2 under b.
        assert_eq!(a.then(&b).apply(0), 2);
        assert!(a.then(&a.inverse()).is_identity());
    }
}
