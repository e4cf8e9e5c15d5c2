//! Plain-text matrix dumps: a `# rows cols` header, then `row col re im` per
//! nonzero entry with 17 significant digits.

use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::op::Op;
use crate::qscalars::C64;

pub fn write_matrix<W: Write>(out: &mut W, m: &Op) -> io::Result<()> {
    writeln!(out, "# {} {}", m.rows(), m.cols())?;
    for (i, j, v) in m.nonzeros() {
        writeln!(out, "{i} {j} {:.16e} {:.16e}", v.re, v.im)?;
    }
    Ok(())
}

pub fn to_string(m: &Op) -> String {
    let mut buf = Vec::new();
    write_matrix(&mut buf, m).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("dump output is ascii")
}

fn bad(line: usize, msg: impl Into<String>) -> Error {
    Error::Dump {
        line,
        msg: msg.into(),
    }
}

/// Inverse of [`to_string`]. Blank lines are ignored; repeated entries
/// overwrite.
pub fn parse(text: &str) -> Result<Op> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (hline, header) = lines.next().ok_or_else(|| bad(1, "empty input"))?;
    let dims = header
        .trim()
        .strip_prefix('#')
        .ok_or_else(|| bad(hline + 1, "header must start with '#'"))?
        .split_whitespace()
        .map(str::parse::<usize>)
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| bad(hline + 1, e.to_string()))?;
    let [rows, cols] = dims[..] else {
        return Err(bad(hline + 1, "header needs rows and cols"));
    };
    let mut m = Op::zeros(rows, cols);
    for (n, line) in lines {
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 4 {
            return Err(bad(n + 1, format!("expected 4 fields, found {}", f.len())));
        }
        let idx = |s: &str| s.parse::<usize>().map_err(|e| bad(n + 1, e.to_string()));
        let num = |s: &str| s.parse::<f64>().map_err(|e| bad(n + 1, e.to_string()));
        let (i, j) = (idx(f[0])?, idx(f[1])?);
        if i >= rows || j >= cols {
            return Err(bad(
                n + 1,
                format!("entry ({i}, {j}) outside {rows}x{cols}"),
            ));
        }
        m.set(i, j, C64::new(num(f[2])?, num(f[3])?));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let m = Op::from_fn(3, 4, |i, j| {
            if (i + j) % 2 == 0 {
                C64::new(1.0 / (1.0 + i as f64), -std::f64::consts::PI * j as f64)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let text = to_string(&m);
        assert!(text.starts_with("# 3 4\n"));
        assert_eq!(text.lines().count(), 1 + m.nonzeros().count());
        assert_eq!(parse(&text).unwrap(), m);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse("").is_err());
        assert!(parse("3 3\n").is_err());
        assert!(matches!(
            parse("# 2 2\n0 0 1.0\n"),
            Err(Error::Dump { line: 2, .. })
        ));
        assert!(parse("# 2 2\n2 0 1.0 0.0\n").is_err());
    }
}
