use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::monomial::{check_nvars, exponent, unit, MAX_EXP};
use super::{check_index, Coeff, PolyError, Polynomial, TermLimit};

/// A linear form `Σ c_r x_r` with small integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    nvars: usize,
    // (0-based variable, coefficient), sorted by variable, nonzero
    terms: Vec<(usize, i64)>,
}

impl LinearForm {
    pub fn new(nvars: usize, terms: impl IntoIterator<Item = (usize, i64)>) -> Result<Self, PolyError> {
        check_nvars(nvars)?;
        let mut acc = vec![0i64; nvars];
        for (var, c) in terms {
            check_index(var, nvars)?;
            acc[var - 1] += c;
        }
        let terms = acc.into_iter().enumerate().filter(|(_, c)| *c != 0).collect();
        Ok(LinearForm { nvars, terms })
    }

    /// `x_a + ... + x_b` (1-based, inclusive).
    pub fn interval(nvars: usize, a: usize, b: usize) -> Result<Self, PolyError> {
        check_nvars(nvars)?;
        check_index(a, nvars)?;
        check_index(b, nvars)?;
        if a > b {
            return Err(PolyError::IndexOutOfRange { index: a, nvars: b });
        }
        Self::new(nvars, (a..=b).map(|v| (v, 1)))
    }

    /// `x_hi - x_lo` (1-based).
    pub fn difference(nvars: usize, hi: usize, lo: usize) -> Result<Self, PolyError> {
        Self::new(nvars, [(hi, 1), (lo, -1)])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether the 1-based variable `x_var` occurs with nonzero coefficient.
    pub fn contains(&self, var: usize) -> bool {
        self.terms.iter().any(|(v, _)| *v + 1 == var)
    }

    /// Support as 1-based variable indices.
    pub fn variables(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.iter().map(|(v, _)| v + 1)
    }

    /// Sets the listed 1-based variables to zero.
    pub fn without(&self, vars: &[usize]) -> LinearForm {
        let terms = self.terms.iter().copied().filter(|(v, _)| !vars.contains(&(v + 1))).collect();
        LinearForm { nvars: self.nvars, terms }
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .rev()
            .map(|&(v, c)| (unit(self.nvars, v), Coeff::Small(c)))
            .collect();
        Polynomial::from_sorted(self.nvars, terms)
    }
}

/// Size bookkeeping for one multiplication step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StepStats {
    pub input_terms: usize,
    pub output_terms: usize,
}

impl Polynomial {
    /// Multiplies by a linear form, keeping only terms `m` with
    /// `floors[r] <= deg_r(m) <= caps[r]` for every variable.
    ///
    /// The caps implement the quotient by a monomial ideal. The floors are a
    /// reachability filter used when only one target coefficient is wanted:
    /// a term that can no longer reach the target's exponent in some variable
    /// through the remaining factors is dropped. Inputs are assumed to already
    /// satisfy the caps.
    pub fn mul_linear_bounded(
        &self,
        form: &LinearForm,
        caps: &[u32],
        floors: &[u32],
        limit: TermLimit,
    ) -> Result<(Polynomial, StepStats), PolyError> {
        let n = self.nvars;
        if form.nvars != n {
            return Err(PolyError::VariableCountMismatch { left: n, right: form.nvars });
        }
        if caps.len() != n || floors.len() != n {
            return Err(PolyError::VariableCountMismatch { left: n, right: caps.len().min(floors.len()) });
        }
        if let Some(r) = caps.iter().position(|&c| c > MAX_EXP) {
            return Err(PolyError::ExponentOverflow { var: r + 1, max: MAX_EXP });
        }
        let input = &self.terms;
        let streams: Vec<(usize, u64, i64)> =
            form.terms.iter().map(|&(v, c)| (v, unit(n, v), c)).collect();
        assert!(streams.len() <= 32, "linear form too long");

        // Bitmask of the streams each input term feeds.
        let floor_vars: Vec<(usize, u32)> =
            floors.iter().copied().enumerate().filter(|(_, f)| *f > 0).collect();
        let masks: Vec<u32> = input
            .iter()
            .map(|(key, _)| {
                let mut short = None;
                for &(v, f) in &floor_vars {
                    let e = exponent(*key, n, v);
                    if e < f {
                        if e + 1 < f || short.is_some() {
                            return 0;
                        }
                        short = Some(v);
                    }
                }
                let mut mask = 0u32;
                for (s, &(v, _, _)) in streams.iter().enumerate() {
                    if short.map_or(true, |w| w == v) && exponent(*key, n, v) < caps[v] {
                        mask |= 1 << s;
                    }
                }
                mask
            })
            .collect();

        let next_from = |s: usize, mut pos: usize| -> Option<usize> {
            while pos < input.len() {
                if masks[pos] & (1 << s) != 0 {
                    return Some(pos);
                }
                pos += 1;
            }
            None
        };

        let mut heap = BinaryHeap::with_capacity(streams.len());
        let mut cursor = vec![0usize; streams.len()];
        for s in 0..streams.len() {
            if let Some(p) = next_from(s, 0) {
                cursor[s] = p;
                heap.push(Reverse((input[p].0 + streams[s].1, s)));
            }
        }

        let mut out: Vec<(u64, Coeff)> = Vec::new();
        let mut current: Option<(u64, Coeff)> = None;
        while let Some(Reverse((key, s))) = heap.pop() {
            let p = cursor[s];
            let contrib = input[p].1.mul_small(streams[s].2);
            match &mut current {
                Some((k, c)) if *k == key => c.add_assign(&contrib),
                _ => {
                    if let Some((k, c)) = current.take() {
                        if !c.is_zero() {
                            out.push((k, c));
                        }
                    }
                    current = Some((key, contrib));
                    if out.len() > limit.0 {
                        return Err(PolyError::TermLimitExceeded { limit: limit.0 });
                    }
                }
            }
            if let Some(np) = next_from(s, p + 1) {
                cursor[s] = np;
                heap.push(Reverse((input[np].0 + streams[s].1, s)));
            }
        }
        if let Some((k, c)) = current {
            if !c.is_zero() {
                out.push((k, c));
            }
        }
        limit.check(out.len())?;
        let stats = StepStats { input_terms: input.len(), output_terms: out.len() };
        Ok((Polynomial::from_sorted(n, out), stats))
    }
}
