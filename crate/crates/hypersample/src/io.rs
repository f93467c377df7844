//! Deterministic serialization helpers.
//!
//! Result files must be byte-identical across runs with the same config, so
//! floats are always written with 17 significant digits (enough to round-trip
//! any f64) instead of serde_json's shortest representation.

use crate::error::Result;
use serde::Serialize;
use std::io::{self, Write};

struct SigDigitFormatter;

impl serde_json::ser::Formatter for SigDigitFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// JSON with fixed float formatting (17 significant digits, exponent form).
pub fn to_json_string(value: &impl Serialize) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigDigitFormatter);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(out).expect("serde_json output is UTF-8"))
}

/// A float formatted the same way the JSON writer formats it; used by the CSV
/// writer so both formats agree digit for digit.
pub fn format_f64(value: f64) -> String {
    format!("{value:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_17_significant_digits() {
        let s = to_json_string(&std::f64::consts::PI).unwrap();
        assert_eq!(s, "3.1415926535897931e0");
        let v: f64 = s.parse().unwrap();
        assert_eq!(v, std::f64::consts::PI);
    }

    #[test]
    fn struct_fields_keep_declaration_order() {
        #[derive(Serialize)]
        struct Demo {
            b: f64,
            a: u32,
        }
        let s = to_json_string(&Demo { b: 0.5, a: 7 }).unwrap();
        assert_eq!(s, r#"{"b":5.0000000000000000e-1,"a":7}"#);
    }
}
