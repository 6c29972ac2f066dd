//! Index lists on the command line.

/// `"1,2,3"` or `"1-3"` (or a mix, `"1,4-6"`).
pub fn parse_index_list(s: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad index {t:?} in {s:?}"));
        match part.split_once('-') {
            Some((lo, hi)) => {
                let (lo, hi) = (num(lo)?, num(hi)?);
                if lo > hi {
                    return Err(format!("empty range {part:?}"));
                }
                out.extend(lo..=hi);
            }
            None => out.push(num(part)?),
        }
    }
    if out.is_empty() {
        return Err("empty index list".into());
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
