//! The polynomial families `g_k`, `F_k`, `G_ℓ` and `f_{k+1}` as products of
//! linear forms, plus builders that expand them.

use crate::polycore::{expand_product_naive, CapProfile, LinearForm, PolyError, Polynomial, TermLimit};

/// Factors of `g_k = ∏_{1≤a<b≤k} (x_b - x_a)(x_a + ... + x_b)` over variables
/// `offset+1 ..= offset+k` of an `nvars`-variable ring.
fn g_factors_shifted(k: usize, nvars: usize, offset: usize) -> Result<Vec<LinearForm>, PolyError> {
    let mut out = Vec::with_capacity(k * (k - 1));
    for b in 2..=k {
        for a in 1..b {
            out.push(LinearForm::difference(nvars, offset + b, offset + a)?);
            out.push(LinearForm::interval(nvars, offset + a, offset + b)?);
        }
    }
    Ok(out)
}

/// Factors of `G_ℓ = (x_1+...+x_ℓ)(x_{ℓ+1}-x_1) ∏_{i=2}^{ℓ} (x_{ℓ+1}-x_i)(x_i+...+x_{ℓ+1})`.
pub fn big_g_factors(l: usize, nvars: usize) -> Result<Vec<LinearForm>, PolyError> {
    if l < 2 || l + 1 > nvars {
        return Err(PolyError::IndexOutOfRange { index: l + 1, nvars });
    }
    let mut out = Vec::with_capacity(2 * l);
    out.push(LinearForm::interval(nvars, 1, l)?);
    out.push(LinearForm::difference(nvars, l + 1, 1)?);
    for i in 2..=l {
        out.push(LinearForm::difference(nvars, l + 1, i)?);
        out.push(LinearForm::interval(nvars, i, l + 1)?);
    }
    Ok(out)
}

/// Factors of `F_k` in recursion order: `F_2 = x_2 - x_1`, then `G_2, ..., G_{k-1}`.
pub fn f_big_factors(k: usize) -> Result<Vec<LinearForm>, PolyError> {
    check_k(k)?;
    let mut out = vec![LinearForm::difference(k, 2, 1)?];
    for l in 2..k {
        out.extend(big_g_factors(l, k)?);
    }
    Ok(out)
}

/// Factors of `g_k`: those of `F_k` followed by `x_1 + ... + x_k`.
pub fn g_factors(k: usize) -> Result<Vec<LinearForm>, PolyError> {
    let mut out = f_big_factors(k)?;
    out.push(LinearForm::interval(k, 1, k)?);
    Ok(out)
}

/// Factors of `f_{k+1} = g_k(x_2, ..., x_{k+1}) · ∏_{j=2}^{k+1} (x_j - x_1)`.
pub fn f_small_factors(k: usize) -> Result<Vec<LinearForm>, PolyError> {
    check_k(k)?;
    let nvars = k + 1;
    let mut out = g_factors_shifted(k, nvars, 1)?;
    for j in 2..=nvars {
        out.push(LinearForm::difference(nvars, j, 1)?);
    }
    Ok(out)
}

/// `g_k` expanded in full. Only feasible for small `k`.
pub fn build_g(k: usize, limit: TermLimit) -> Result<Polynomial, PolyError> {
    check_k(k)?;
    let factors: Vec<Polynomial> = g_factors_shifted(k, k, 0)?.iter().map(LinearForm::to_polynomial).collect();
    let g = expand_product_naive(k, &factors, limit)?;
    debug_assert_eq!(g.homogeneous_degree(), Some((k * (k - 1)) as u32));
    Ok(g)
}

/// `G_ℓ` expanded in an ambient ring of `nvars` variables.
pub fn build_big_g(l: usize, nvars: usize, limit: TermLimit) -> Result<Polynomial, PolyError> {
    let factors: Vec<Polynomial> = big_g_factors(l, nvars)?.iter().map(LinearForm::to_polynomial).collect();
    expand_product_naive(nvars, &factors, limit)
}

/// `F_k` reduced modulo the cap ideal of `caps`.
///
/// Follows the recursion `F_ℓ = F_{ℓ-1} · G_{ℓ-1}`; each `G_ℓ` is itself
/// built under the caps and the product is truncated term by term.
pub fn build_f_capped(k: usize, caps: &CapProfile, limit: TermLimit) -> Result<Polynomial, PolyError> {
    check_k(k)?;
    if caps.nvars() != k {
        return Err(PolyError::VariableCountMismatch { left: k, right: caps.nvars() });
    }
    let mut acc = LinearForm::difference(k, 2, 1)?.to_polynomial().cut_all(caps)?;
    for l in 2..k {
        let mut g = Polynomial::one(k)?;
        for form in big_g_factors(l, k)? {
            g = g.mul_capped(&form.to_polynomial(), caps, limit)?;
        }
        acc = acc.mul_capped(&g, caps, limit)?;
    }
    debug_assert!(acc.is_zero() || acc.homogeneous_degree() == Some((k * (k - 1) - 1) as u32));
    Ok(acc)
}

/// `f_{m}` with `m = k + 1`, expanded in full.
pub fn build_f(m: usize, limit: TermLimit) -> Result<Polynomial, PolyError> {
    if m < 3 {
        return Err(PolyError::IndexOutOfRange { index: m, nvars: 3 });
    }
    let factors: Vec<Polynomial> = f_small_factors(m - 1)?.iter().map(LinearForm::to_polynomial).collect();
    let f = expand_product_naive(m, &factors, limit)?;
    debug_assert_eq!(f.homogeneous_degree(), Some(((m - 1) * (m - 1)) as u32));
    Ok(f)
}

fn check_k(k: usize) -> Result<(), PolyError> {
    if k < 2 {
        return Err(PolyError::IndexOutOfRange { index: k, nvars: 2 });
    }
    Ok(())
}
