//! Exact-rational numeric helpers: high-precision square roots and decimal
//! string rendering. Everything here works on `BigRational`; nothing ever
//! touches a binary float.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};

/// Nearest integer to `x`, ties to even.
pub fn round_half_even(x: &BigRational) -> BigInt {
    let floor = x.floor().to_integer();
    let frac = x - BigRational::from_integer(floor.clone());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if frac > half {
        floor + 1
    } else if frac < half {
        floor
    } else if (&floor % BigInt::from(2)).is_zero() {
        floor
    } else {
        floor + 1
    }
}

/// Render `x` with exactly `decimal_places` digits after the point,
/// rounding half-to-even. A value that rounds to zero never gets a sign.
pub fn format_decimal(x: &BigRational, decimal_places: usize) -> String {
    let scale = BigInt::from(10).pow(decimal_places as u32);
    let scaled = x * BigRational::from_integer(scale.clone());
    let rounded = round_half_even(&scaled);
    let negative = rounded.is_negative();
    let magnitude = rounded.abs();
    let int_part = &magnitude / &scale;
    let frac_part = &magnitude % &scale;

    let mut out = String::new();
    if negative && !magnitude.is_zero() {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if decimal_places > 0 {
        out.push('.');
        let digits = frac_part.to_string();
        for _ in digits.len()..decimal_places {
            out.push('0');
        }
        out.push_str(&digits);
    }
    out
}

/// Parse a plain decimal string (`-12.345`, `7`, `0.003`) into an exact
/// rational. Returns `None` for anything else.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() {
        return None;
    } else {
        digits.parse().ok()?
    };
    let denom = BigInt::from(10).pow(frac_part.len() as u32);
    let value = BigRational::new(numer, denom);
    Some(if negative { -value } else { value })
}

/// Number of digits after the decimal point in a plain decimal string.
pub fn decimal_places(s: &str) -> usize {
    s.split_once('.').map_or(0, |(_, f)| f.len())
}

/// Square root of a non-negative rational, accurate to at least
/// `sig_digits` significant digits. The result is itself an exact rational
/// approximating the true root.
///
/// Computed from the integer square root of `numer * denom` scaled by a
/// power of ten with ten guard digits, so the relative error is below
/// `10^-(sig_digits + 9)`.
pub fn sqrt_rational(x: &BigRational, sig_digits: u32) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    if x.is_zero() {
        return Some(BigRational::zero());
    }
    let shift = BigInt::from(10).pow(sig_digits + 10);
    let scaled = x.numer() * x.denom() * &shift * &shift;
    let root = scaled.sqrt();
    Some(BigRational::new(root, x.denom() * shift))
}

/// `x^k` for signed integer `k`; `None` when `x` is zero and `k` negative.
pub fn pow_rational(x: &BigRational, k: i32) -> Option<BigRational> {
    if x.is_zero() && k < 0 {
        return None;
    }
    Some(x.pow(k))
}
