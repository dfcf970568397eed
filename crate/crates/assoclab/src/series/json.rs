//! Serialization helpers: ball values as decimal strings and atomic
//! file writes (temp file in the target directory, then rename).

use std::path::Path;

use super::float::AppFloat;
use super::mag::Mag;
use crate::error::Result;

/// Radius as a short decimal string, upper bounded ("0" when exact).
pub fn mag_to_string(m: &Mag) -> String {
    if m.is_zero() {
        return "0".to_string();
    }
    // Render through an exact ball carrying the magnitude value.
    let e = m.ceil_log2();
    let x = AppFloat::from_int(1).mul_2exp(e);
    x.to_decimal(3)
}

pub fn mag_from_string(s: &str) -> Result<Mag> {
    if s == "0" {
        return Ok(Mag::zero());
    }
    let x = AppFloat::parse_decimal(s, 64)?;
    Ok(x.abs_upper())
}

/// Ball to (mid, rad) strings with `digits` significant digits.
pub fn ball_to_strings(x: &AppFloat, digits: usize) -> (String, String) {
    (x.to_decimal(digits), mag_to_string(&x.rad()))
}

/// Rebuild a ball from (mid, rad) strings at `prec` bits.
pub fn ball_from_strings(mid: &str, rad: &str, prec: u32) -> Result<AppFloat> {
    let x = AppFloat::parse_decimal(mid, prec)?;
    Ok(x.add_error(mag_from_string(rad)?))
}

/// Write atomically: temp file next to the target, then rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    std::io::Write::write_all(&mut tmp, contents.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn ball_string_roundtrip_contains() {
        let x = AppFloat::from_rational(&BigRational::new(355.into(), 113.into()), 180);
        let (m, r) = ball_to_strings(&x, 60);
        let y = ball_from_strings(&m, &r, 180).unwrap();
        // the reconstructed ball must contain the original value
        assert!(y.sub(&x).contains_zero());
        assert!(y.rad_f64() < 1e-50);
        let (mz, rz) = ball_to_strings(&AppFloat::from_int(7), 10);
        assert_eq!((mz.as_str(), rz.as_str()), ("7.000000000e0", "0"));
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.json");
        write_atomic(&p, "first").unwrap();
        write_atomic(&p, "second").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "second");
    }
}
