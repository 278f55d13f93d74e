use crate::error::{Error, Result};
use crate::mpcore::{BigNat, HpReal};

/// Formats `value` with `sig_figs` significant figures: plain `d.d` when the
/// rounded value lies in `[1, 10)`, otherwise `d.de<k>` (`"8.6e-6"`,
/// `"3.6e6"`). Zero prints as `"0"`. Digits are correctly rounded from the
/// full-precision value.
pub fn format_value(value: &HpReal, sig_figs: usize) -> Result<String> {
    if sig_figs == 0 {
        return Err(Error::Format(
            "at least one significant figure is required".into(),
        ));
    }
    if value.is_zero() {
        return Ok("0".into());
    }
    let (negative, digits, exp) = value
        .decimal_parts(sig_figs)
        .ok_or_else(|| Error::Format(format!("cannot format non-finite value {value}")))?;
    let sign = if negative { "-" } else { "" };
    let (lead, rest) = digits.split_at(1);
    let mantissa = if rest.is_empty() {
        lead.to_string()
    } else {
        format!("{lead}.{rest}")
    };
    Ok(if exp == 0 {
        format!("{sign}{mantissa}")
    } else {
        format!("{sign}{mantissa}e{exp}")
    })
}

/// `n!` for the second table column: exact below 100, otherwise scientific.
pub fn format_factorial(value: &BigNat, sig_figs: usize) -> Result<String> {
    if value.as_integer() < &100 {
        return Ok(value.to_string());
    }
    let bits = value.bit_len().max(64);
    format_value(&HpReal::from_integer(value.as_integer(), bits), sig_figs)
}

/// Parses a value printed by [`format_value`].
pub fn parse_value(text: &str, bits: u32) -> Result<HpReal> {
    HpReal::parse(text, bits)
}
