use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::tau;

/// Parse a complex number such as `0.3`, `-i/2`, `0.3+0.2i`, `tau/8`, `3tau/8` or `3*tau/8 - 0.1i`.
/// `tau` stands for `2π/ln q`.
pub fn parse_complex(text: &str, q: u32) -> Result<Complex64> {
    let bad = || Error::Config(format!("cannot parse complex number {text:?}"));
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad());
    }
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = s.as_bytes();
    for k in 1..bytes.len() {
        let is_sign = bytes[k] == b'+' || bytes[k] == b'-';
        let after_exp = matches!(bytes[k - 1], b'e' | b'E') && k >= 2 && bytes[k - 2].is_ascii_digit();
        if is_sign && !after_exp {
            terms.push(&s[start..k]);
            start = k;
        }
    }
    terms.push(&s[start..]);
    let mut z = Complex64::new(0.0, 0.0);
    for term in terms {
        let (sign, body) = match term.as_bytes()[0] {
            b'-' => (-1.0, &term[1..]),
            b'+' => (1.0, &term[1..]),
            _ => (1.0, term),
        };
        let imag = body.contains('i');
        let body = body.replace(['i', '*'], "");
        let (num, den) = match body.split_once('/') {
            Some((a, b)) => (a.to_string(), Some(b.to_string())),
            None => (body, None),
        };
        let mut value = if let Some(coef) = num.strip_suffix("tau") {
            let c = if coef.is_empty() { 1.0 } else { coef.parse::<f64>().map_err(|_| bad())? };
            c * tau(q)
        } else if num.is_empty() {
            if !imag {
                return Err(bad());
            }
            1.0
        } else {
            num.parse::<f64>().map_err(|_| bad())?
        };
        if let Some(d) = den {
            let d: f64 = d.parse().map_err(|_| bad())?;
            value /= d;
        }
        if !value.is_finite() {
            return Err(bad());
        }
        if imag {
            z.im += sign * value;
        } else {
            z.re += sign * value;
        }
    }
    Ok(z)
}
