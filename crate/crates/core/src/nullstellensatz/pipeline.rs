//! Target-directed evaluation of one coefficient of a product of linear
//! forms.
//!
//! The product is accumulated one linear factor at a time. After each step a
//! term survives only if it lies inside the target's caps (the quotient by the
//! cap ideal) and can still reach the target: its exponent in every variable,
//! plus the number of remaining factors mentioning that variable, must be at
//! least the target exponent. Variables capped at zero are substituted by zero
//! up front.

use num_bigint::BigInt;

use crate::polycore::{LinearForm, Monomial, PolyError, Polynomial, TermLimit};

/// Outcome of one pipeline run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineResult {
    pub value: BigInt,
    pub peak_terms: usize,
    pub steps: usize,
}

/// Coefficient of `target` in `∏ factors`.
pub fn target_coefficient(
    factors: &[LinearForm],
    target: &Monomial,
    limit: TermLimit,
) -> Result<PipelineResult, PolyError> {
    let n = target.nvars();
    let caps = target.exponents();
    let zeroed: Vec<usize> = (1..=n).filter(|&v| caps[v - 1] == 0).collect();
    let forms: Vec<LinearForm> = factors.iter().map(|f| f.without(&zeroed)).collect();
    if let Some(f) = forms.iter().find(|f| f.nvars() != n) {
        return Err(PolyError::VariableCountMismatch { left: n, right: f.nvars() });
    }
    let zero = |steps| PipelineResult { value: BigInt::default(), peak_terms: 0, steps };
    if forms.iter().any(LinearForm::is_zero) {
        return Ok(zero(0));
    }
    if forms.len() as u32 != target.total_degree() {
        // every term of the product has degree forms.len()
        return Ok(zero(0));
    }

    // remaining[v] = number of factors not yet multiplied that mention x_v
    let mut remaining = vec![0u32; n];
    for f in &forms {
        for v in f.variables() {
            remaining[v - 1] += 1;
        }
    }
    if (0..n).any(|r| remaining[r] < caps[r]) {
        return Ok(zero(0));
    }

    let mut acc = Polynomial::one(n)?;
    let mut peak = 1usize;
    let mut floors = vec![0u32; n];
    for (step, f) in forms.iter().enumerate() {
        for v in f.variables() {
            remaining[v - 1] -= 1;
        }
        for r in 0..n {
            floors[r] = caps[r].saturating_sub(remaining[r]);
        }
        let (next, stats) = acc.mul_linear_bounded(f, &caps, &floors, limit)?;
        acc = next;
        peak = peak.max(stats.output_terms);
        if acc.is_zero() {
            return Ok(PipelineResult { value: BigInt::default(), peak_terms: peak, steps: step + 1 });
        }
    }
    debug_assert!(acc.len() <= 1);
    Ok(PipelineResult { value: acc.coefficient_of(target)?, peak_terms: peak, steps: forms.len() })
}
