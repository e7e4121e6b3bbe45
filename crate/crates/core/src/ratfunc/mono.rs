use core::cmp::Ordering;

use smallvec::SmallVec;

/// Exponent vector indexed by registry position, trailing zeros trimmed.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of the lowest-index variable that differs.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono {
    deg: u32,
    exps: SmallVec<[u16; 8]>,
}

impl Mono {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: usize, e: u16) -> Self {
        if e == 0 {
            return Self::one();
        }
        let mut exps = SmallVec::from_elem(0, v + 1);
        exps[v] = e;
        Mono {
            deg: e as u32,
            exps,
        }
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        let mut m = Mono {
            deg: exps.iter().map(|&e| e as u32).sum(),
            exps: SmallVec::from_slice(exps),
        };
        m.trim();
        m
    }

    fn trim(&mut self) {
        while self.exps.last() == Some(&0) {
            self.exps.pop();
        }
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exp(&self, v: usize) -> u16 {
        self.exps.get(v).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    /// Number of exponent slots in use (one past the highest variable present).
    pub fn width(&self) -> usize {
        self.exps.len()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let (long, short) = if self.exps.len() >= other.exps.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut exps = long.exps.clone();
        for (slot, &e) in exps.iter_mut().zip(short.exps.iter()) {
            *slot = slot.checked_add(e).expect("exponent overflow");
        }
        Mono {
            deg: self.deg + other.deg,
            exps,
        }
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        if other.exps.len() > self.exps.len() || other.deg > self.deg {
            return None;
        }
        let mut exps = self.exps.clone();
        for (slot, &e) in exps.iter_mut().zip(other.exps.iter()) {
            if *slot < e {
                return None;
            }
            *slot -= e;
        }
        let mut m = Mono {
            deg: self.deg - other.deg,
            exps,
        };
        m.trim();
        Some(m)
    }

    /// Splits off variable `v`: returns its exponent and the remaining monomial.
    pub fn split_var(&self, v: usize) -> (u16, Mono) {
        let e = self.exp(v);
        if e == 0 {
            return (0, self.clone());
        }
        let mut rest = self.clone();
        rest.exps[v] = 0;
        rest.deg -= e as u32;
        rest.trim();
        (e, rest)
    }

    /// Halves every exponent, if all are even.
    pub fn sqrt(&self) -> Option<Mono> {
        if self.exps.iter().any(|e| e % 2 != 0) {
            return None;
        }
        Some(Mono {
            deg: self.deg / 2,
            exps: self.exps.iter().map(|e| e / 2).collect(),
        })
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.deg.cmp(&other.deg) {
            Ordering::Equal => {}
            o => return o,
        }
        let n = self.exps.len().max(other.exps.len());
        for i in 0..n {
            match self.exp(i).cmp(&other.exp(i)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let x = Mono::var(0, 1);
        let y = Mono::var(1, 1);
        let x2 = Mono::var(0, 2);
        let xy = x.mul(&y);
        assert!(x > y);
        assert!(x2 > xy);
        assert!(xy > Mono::var(1, 2));
        assert!(y > Mono::one());
    }

    #[test]
    fn div_and_split() {
        let m = Mono::from_exponents(&[2, 1, 3]);
        let d = Mono::from_exponents(&[1, 0, 3]);
        assert_eq!(m.div(&d), Some(Mono::from_exponents(&[1, 1])));
        assert_eq!(d.div(&m), None);
        let (e, rest) = m.split_var(2);
        assert_eq!(e, 3);
        assert_eq!(rest, Mono::from_exponents(&[2, 1]));
        assert_eq!(rest.width(), 2);
    }
}
