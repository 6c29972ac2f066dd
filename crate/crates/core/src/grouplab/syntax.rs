//! Set syntax: comma-separated residues or integers for `ℤ_n` and `ℤ`,
//! semicolon-separated parenthesized vectors for `ℤ^m`.

/// Comma-separated integers: `"1,2,3"`, `"-4, 7"`.
pub fn parse_scalars(s: &str) -> Result<Vec<i64>, String> {
    let v: Vec<i64> = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| format!("bad element {t:?}")))
        .collect::<Result<_, _>>()?;
    if v.is_empty() {
        return Err("empty set".into());
    }
    Ok(v)
}

/// Semicolon-separated parenthesized vectors: `"(1,0);(0,1);(2,3)"`.
pub fn parse_vectors(s: &str, rank: usize) -> Result<Vec<Vec<i64>>, String> {
    let mut out = Vec::new();
    for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let inner = part
            .strip_prefix('(')
            .and_then(|p| p.strip_suffix(')'))
            .ok_or_else(|| format!("expected (x1,...,xm), got {part:?}"))?;
        let v = parse_scalars(inner)?;
        if v.len() != rank {
            return Err(format!("{part} has {} coordinates, the group has rank {rank}", v.len()));
        }
        out.push(v);
    }
    if out.is_empty() {
        return Err("empty set".into());
    }
    Ok(out)
}
