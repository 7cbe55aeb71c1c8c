//! Object naming grammar.
//!
//! Canonical form: `BASE` or `BASE@s` where `BASE` is one of
//!
//! * `P{i}`  — the interval `[1,i]`,
//! * `I{i}`  — the interval `[i,n]` (when not projective),
//! * `S{i}`  — the simple `[i,i]` (when neither projective nor injective),
//! * `E`     — the interval `[2,3]` when `n = 4`,
//! * `M[a,b]` — any other interval,
//!
//! and `s` is the shift (omitted when zero). Alias precedence on printing is
//! `P`, then `I`, then `S`, then `E`. The parser additionally accepts the
//! sugar `X[k]`, which adds `k` to the shift, so `P3[1]` and `P3@1` name the
//! same object, and suffixes may be mixed (`M[2,3][1]@-1`).

use crate::error::{CyError, Result};
use crate::repcore::Interval;

pub fn format_base(n: usize, iv: Interval) -> String {
    if iv.a == 1 {
        format!("P{}", iv.b)
    } else if iv.b == n {
        format!("I{}", iv.a)
    } else if iv.a == iv.b {
        format!("S{}", iv.a)
    } else if n == 4 && iv.a == 2 && iv.b == 3 {
        "E".to_string()
    } else {
        format!("M[{},{}]", iv.a, iv.b)
    }
}

pub fn format_object(n: usize, iv: Interval, shift: i64) -> String {
    let base = format_base(n, iv);
    if shift == 0 {
        base
    } else {
        format!("{base}@{shift}")
    }
}

pub fn parse_object(n: usize, input: &str) -> Result<(Interval, i64)> {
    let s = input.trim();
    let bad = |msg: &str| CyError::Parse(format!("`{input}`: {msg}"));
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(bad("empty name"));
    }
    let mut pos;
    let read_int = |pos: &mut usize| -> Result<i64> {
        let start = *pos;
        if *pos < bytes.len() && (bytes[*pos] == b'-' || bytes[*pos] == b'+') {
            *pos += 1;
        }
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        s[start..*pos]
            .parse::<i64>()
            .map_err(|_| CyError::Parse(format!("`{input}`: expected integer at byte {start}")))
    };
    let (iv, consumed): (Interval, usize) = match bytes[0] {
        b'P' | b'I' | b'S' => {
            pos = 1;
            let i = read_int(&mut pos)?;
            if i < 1 || i as usize > n {
                return Err(bad("vertex index out of range"));
            }
            let i = i as usize;
            let iv = match bytes[0] {
                b'P' => Interval::new(1, i),
                b'I' => Interval::new(i, n),
                _ => Interval::new(i, i),
            };
            (iv, pos)
        }
        b'E' => {
            if n != 4 {
                return Err(bad("alias E is only defined for n=4"));
            }
            (Interval::new(2, 3), 1)
        }
        b'M' => {
            if bytes.len() < 2 || bytes[1] != b'[' {
                return Err(bad("expected `M[a,b]`"));
            }
            pos = 2;
            let a = read_int(&mut pos)?;
            if pos >= bytes.len() || bytes[pos] != b',' {
                return Err(bad("expected `,` in `M[a,b]`"));
            }
            pos += 1;
            let b = read_int(&mut pos)?;
            if pos >= bytes.len() || bytes[pos] != b']' {
                return Err(bad("expected `]` in `M[a,b]`"));
            }
            pos += 1;
            if a < 1 || b < a || b as usize > n {
                return Err(bad("interval out of range"));
            }
            (Interval::new(a as usize, b as usize), pos)
        }
        _ => return Err(bad("unknown base")),
    };
    pos = consumed;
    let mut shift: i64 = 0;
    while pos < bytes.len() {
        match bytes[pos] {
            b'[' => {
                pos += 1;
                let k = read_int(&mut pos)?;
                if pos >= bytes.len() || bytes[pos] != b']' {
                    return Err(bad("unclosed `[k]` shift"));
                }
                pos += 1;
                shift += k;
            }
            b'@' => {
                pos += 1;
                shift += read_int(&mut pos)?;
            }
            _ => return Err(bad("trailing garbage")),
        }
    }
    Ok((iv, shift))
}

/// Parse a comma-separated object list (empty and the literal `none` mean the
/// empty set).
pub fn parse_object_list(n: usize, input: &str) -> Result<Vec<(Interval, i64)>> {
    let t = input.trim();
    if t.is_empty() || t == "none" || t == "0" {
        return Ok(Vec::new());
    }
    t.split(',').map(|tok| parse_object(n, tok)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_names() {
        assert_eq!(format_object(4, Interval::new(1, 2), 0), "P2");
        assert_eq!(format_object(4, Interval::new(4, 4), 0), "I4");
        assert_eq!(format_object(4, Interval::new(2, 2), 0), "S2");
        assert_eq!(format_object(4, Interval::new(2, 3), 0), "E");
        assert_eq!(format_object(5, Interval::new(2, 3), 1), "M[2,3]@1");
        assert_eq!(format_object(4, Interval::new(1, 1), 1), "P1@1");
    }

    #[test]
    fn parse_roundtrip_and_sugar() {
        let cases = [
            ("P3[1]", (Interval::new(1, 3), 1)),
            ("P3@1", (Interval::new(1, 3), 1)),
            ("M[2,3]", (Interval::new(2, 3), 0)),
            ("E[1]@-1", (Interval::new(2, 3), 0)),
            ("I2@-2", (Interval::new(2, 4), -2)),
            ("S4", (Interval::new(4, 4), 0)),
        ];
        for (s, want) in cases {
            assert_eq!(parse_object(4, s).unwrap(), want, "{s}");
        }
        assert!(parse_object(4, "Q1").is_err());
        assert!(parse_object(4, "P9").is_err());
        assert!(parse_object(3, "E").is_err());
        assert!(parse_object(4, "M[3,2]").is_err());
        assert_eq!(parse_object_list(4, "none").unwrap().len(), 0);
        assert_eq!(parse_object_list(4, "P2@1, P3@1").unwrap().len(), 2);
    }
}
