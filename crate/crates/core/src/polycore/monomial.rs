use std::fmt;

use super::PolyError;

/// Bits reserved for one exponent inside a packed key.
pub const EXP_BITS: u32 = 5;
/// Largest exponent a packed key can hold.
pub const MAX_EXP: u32 = (1 << EXP_BITS) - 1;
/// Largest number of ambient variables.
pub const MAX_VARS: usize = (u64::BITS / EXP_BITS) as usize;

const FIELD_MASK: u64 = MAX_EXP as u64;

/// Position of the exponent of variable `var` (0-based) in a packed key.
///
/// The first variable occupies the most significant field, so comparing two
/// keys as integers is the lexicographic order on exponent vectors.
#[inline]
pub(crate) fn shift(nvars: usize, var: usize) -> u32 {
    EXP_BITS * (nvars - 1 - var) as u32
}

#[inline]
pub(crate) fn unit(nvars: usize, var: usize) -> u64 {
    1u64 << shift(nvars, var)
}

#[inline]
pub(crate) fn exponent(key: u64, nvars: usize, var: usize) -> u32 {
    ((key >> shift(nvars, var)) & FIELD_MASK) as u32
}

pub(crate) fn check_nvars(nvars: usize) -> Result<(), PolyError> {
    if nvars == 0 || nvars > MAX_VARS {
        return Err(PolyError::BadVariableCount { nvars, max: MAX_VARS });
    }
    Ok(())
}

pub(crate) fn pack(exps: &[u32]) -> Result<u64, PolyError> {
    let nvars = exps.len();
    check_nvars(nvars)?;
    let mut key = 0u64;
    for (r, &e) in exps.iter().enumerate() {
        if e > MAX_EXP {
            return Err(PolyError::ExponentOverflow { var: r + 1, max: MAX_EXP });
        }
        key |= (e as u64) << shift(nvars, r);
    }
    Ok(key)
}

pub(crate) fn unpack(key: u64, nvars: usize) -> Vec<u32> {
    (0..nvars).map(|r| exponent(key, nvars, r)).collect()
}

pub(crate) fn degree(key: u64, nvars: usize) -> u32 {
    (0..nvars).map(|r| exponent(key, nvars, r)).sum()
}

/// A monomial `x_1^{e_1} ... x_n^{e_n}` over a fixed number of variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    nvars: u8,
    key: u64,
}

impl Monomial {
    pub fn new(exps: &[u32]) -> Result<Self, PolyError> {
        let key = pack(exps)?;
        Ok(Monomial { nvars: exps.len() as u8, key })
    }

    pub fn one(nvars: usize) -> Result<Self, PolyError> {
        check_nvars(nvars)?;
        Ok(Monomial { nvars: nvars as u8, key: 0 })
    }

    pub(crate) fn from_key(key: u64, nvars: usize) -> Self {
        Monomial { nvars: nvars as u8, key }
    }

    pub(crate) fn key(&self) -> u64 {
        self.key
    }

    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    /// Exponent of the 1-based variable `x_var`.
    pub fn exponent(&self, var: usize) -> u32 {
        exponent(self.key, self.nvars(), var - 1)
    }

    pub fn exponents(&self) -> Vec<u32> {
        unpack(self.key, self.nvars())
    }

    pub fn total_degree(&self) -> u32 {
        degree(self.key, self.nvars())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({:?})", self.exponents())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (r, e) in self.exponents().into_iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", r + 1)?;
            } else {
                write!(f, "x{}^{}", r + 1, e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_order_is_lex() {
        let a = Monomial::new(&[2, 0, 0]).unwrap();
        let b = Monomial::new(&[1, 5, 5]).unwrap();
        let c = Monomial::new(&[1, 5, 6]).unwrap();
        assert!(b < c && c < a);
    }

    #[test]
    fn roundtrip_and_limits() {
        let m = Monomial::new(&[0, 31, 7, 1]).unwrap();
        assert_eq!(m.exponents(), vec![0, 31, 7, 1]);
        assert_eq!(m.total_degree(), 39);
        assert_eq!(m.exponent(2), 31);
        assert!(Monomial::new(&[32]).is_err());
        assert!(Monomial::new(&[]).is_err());
        assert!(Monomial::new(&[0; MAX_VARS + 1]).is_err());
        assert_eq!(Monomial::new(&[0, 2, 1]).unwrap().to_string(), "x2^2*x3");
    }
}
