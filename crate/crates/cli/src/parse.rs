//! Input parsing: exact rationals in `p/q`, integer, or decimal form, and
//! complex values as `re[,im]`.

use anyhow::{anyhow, bail, Result};
use norlund_core::ratcore::ComplexRational;
use rug::ops::Pow;
use rug::{Integer, Rational};

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        bail!("empty number");
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: Integer = num
            .trim()
            .parse()
            .map_err(|_| anyhow!("bad numerator in '{s}'"))?;
        let d: Integer = den
            .trim()
            .parse()
            .map_err(|_| anyhow!("bad denominator in '{s}'"))?;
        if d == 0 {
            bail!("zero denominator in '{s}'");
        }
        return Ok(Rational::from((n, d)));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let (sign, int_digits) = match int_part.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, int_part.strip_prefix('+').unwrap_or(int_part)),
        };
        if !frac_part.chars().all(|c| c.is_ascii_digit()) {
            bail!("bad decimal '{s}' (position {})", int_part.len() + 1);
        }
        let digits = format!(
            "{}{}",
            if int_digits.is_empty() { "0" } else { int_digits },
            frac_part
        );
        let n: Integer = digits
            .parse()
            .map_err(|_| anyhow!("bad decimal '{s}'"))?;
        let d = Integer::from(10).pow(frac_part.len() as u32);
        return Ok(Rational::from((n * sign, d)));
    }
    s.parse::<Integer>()
        .map(Rational::from)
        .map_err(|_| anyhow!("cannot parse '{s}' as a rational (position 0)"))
}

pub fn parse_complex(s: &str) -> Result<ComplexRational> {
    match s.split_once(',') {
        Some((re, im)) => Ok(ComplexRational::new(parse_rational(re)?, parse_rational(im)?)),
        None => Ok(ComplexRational::from_real(parse_rational(s)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_forms() {
        assert_eq!(parse_rational("2/3").unwrap(), Rational::from((2, 3)));
        assert_eq!(parse_rational("-7").unwrap(), Rational::from(-7));
        assert_eq!(parse_rational("0.75").unwrap(), Rational::from((3, 4)));
        assert_eq!(parse_rational("-1.25").unwrap(), Rational::from((-5, 4)));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn complex_forms() {
        let z = parse_complex("2/3,1/4").unwrap();
        assert_eq!(z.re, Rational::from((2, 3)));
        assert_eq!(z.im, Rational::from((1, 4)));
        let z = parse_complex("2").unwrap();
        assert_eq!(z.im, Rational::from(0));
    }
}
