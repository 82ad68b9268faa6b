//! Exact rationals for ε, γ and the weight quantum.

use num_rational::Ratio;

pub type Rational = Ratio<u128>;

/// Parses `"0.1"`, `"1/10"` or `"3"` into an exact non-negative rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let num: u128 = a.trim().parse().ok()?;
        let den: u128 = b.trim().parse().ok()?;
        if den == 0 {
            return None;
        }
        return Some(Rational::new(num, den));
    }
    let (int, frac) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || frac.len() > 30 {
        return None;
    }
    let scale = 10u128.checked_pow(frac.len() as u32)?;
    let int: u128 = if int.is_empty() { 0 } else { int.parse().ok()? };
    let frac_v: u128 = if frac.is_empty() {
        0
    } else {
        frac.parse().ok()?
    };
    Some(Rational::new(
        int.checked_mul(scale)?.checked_add(frac_v)?,
        scale,
    ))
}

/// `x > r`, exactly.
pub fn exceeds(x: u64, r: &Rational) -> bool {
    (x as u128) * r.denom() > *r.numer()
}

/// `a <= r * b`, exactly.
pub fn at_most_times(a: u64, r: &Rational, b: u64) -> bool {
    (a as u128) * r.denom() <= r.numer() * (b as u128)
}

/// `floor(x / r)` for positive `r`.
pub fn floor_div(x: u64, r: &Rational) -> u64 {
    ((x as u128) * r.denom() / r.numer()) as u64
}
