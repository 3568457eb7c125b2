//! JSON serialization with floats at 17 significant digits, so every f64 in
//! a report or manifest round-trips bit-exactly through text.

use serde::Serialize;
use std::io;

struct SigFig17;

impl serde_json::ser::Formatter for SigFig17 {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        // {:.16e}: one leading digit plus 16 fractional digits.
        write!(writer, "{value:.16e}")
    }
}

/// Serializes to a JSON string with 17-significant-digit floats and a
/// trailing newline.
pub fn to_string<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut out = Vec::with_capacity(256);
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigFig17);
    value.serialize(&mut ser)?;
    out.push(b'\n');
    Ok(String::from_utf8(out).expect("serde_json emits UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip_exactly() {
        #[derive(Serialize)]
        struct S {
            a: f64,
            b: f64,
            c: f64,
        }
        let s = S {
            a: 0.45474048,
            b: -3.1346647375096173e-2,
            c: 1.0 / 3.0,
        };
        let text = to_string(&s).unwrap();
        let back: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back["a"].as_f64().unwrap().to_bits(), s.a.to_bits());
        assert_eq!(back["b"].as_f64().unwrap().to_bits(), s.b.to_bits());
        assert_eq!(back["c"].as_f64().unwrap().to_bits(), s.c.to_bits());
    }
}
