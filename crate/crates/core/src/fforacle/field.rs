use serde::Serialize;

use crate::error::{Error, Result};

/// `F_q` for `q` in {2, 3, 5}. Elements are stored as `u8` in `0..q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct PrimeField {
    q: u8,
}

impl PrimeField {
    pub fn new(q: u32) -> Result<Self> {
        match q {
            2 | 3 | 5 => Ok(PrimeField { q: q as u8 }),
            _ => Err(Error::UnsupportedField(q)),
        }
    }

    pub fn q(self) -> u32 {
        u32::from(self.q)
    }

    pub fn add(self, a: u8, b: u8) -> u8 {
        (a + b) % self.q
    }

    pub fn sub(self, a: u8, b: u8) -> u8 {
        (a + self.q - b) % self.q
    }

    pub fn mul(self, a: u8, b: u8) -> u8 {
        (a * b) % self.q
    }

    pub fn neg(self, a: u8) -> u8 {
        (self.q - a) % self.q
    }

    pub fn inv(self, a: u8) -> u8 {
        assert!(!a.is_multiple_of(self.q), "zero has no inverse");
        (1..self.q)
            .find(|&b| self.mul(a, b) == 1)
            .expect("prime field")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn supported_sizes() {
        for q in [2, 3, 5] {
            let f = PrimeField::new(q).unwrap();
            for a in 1..q as u8 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
                assert_eq!(f.add(a, f.neg(a)), 0);
            }
        }
        assert_eq!(PrimeField::new(4), Err(Error::UnsupportedField(4)));
        assert_eq!(PrimeField::new(7), Err(Error::UnsupportedField(7)));
    }
}
