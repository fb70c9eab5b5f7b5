//! Plain-text basis files.
//!
//! ```text
//! # qubit MUBs
//! 1+0i 0+0i
//! 0+0i 1+0i
//!
//! 0.7071067811865476+0i 0.7071067811865476+0i
//! 0.7071067811865476+0i -0.7071067811865476+0i
//! ```
//!
//! Each non-blank line is one basis vector, written as whitespace-separated
//! complex entries (`a`, `bi`, `a+bi` or `a-bi`, decimal floats with optional
//! exponent). Blank lines separate bases. Text after `#` is ignored.
//! [`format_bases`] writes the shortest decimal that round-trips each float.

use num_complex::Complex64;

use super::OrthonormalBasis;
use crate::error::{Error, Result};

pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", z.re, sign, z.im.abs())
}

pub fn parse_complex(token: &str) -> std::result::Result<Complex64, String> {
    token
        .parse::<Complex64>()
        .map_err(|e| format!("bad complex entry '{token}': {e}"))
}

pub fn format_bases(bases: &[OrthonormalBasis]) -> String {
    let mut out = String::new();
    for (k, basis) in bases.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        for v in basis.vectors() {
            let row: Vec<String> = v.iter().map(|&z| format_complex(z)).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

pub fn parse_bases(text: &str) -> Result<Vec<OrthonormalBasis>> {
    let mut bases = Vec::new();
    let mut current: Vec<Vec<Complex64>> = Vec::new();
    let mut start_line = 0;

    let mut finish = |rows: &mut Vec<Vec<Complex64>>, line: usize| -> Result<()> {
        if rows.is_empty() {
            return Ok(());
        }
        let basis = OrthonormalBasis::new(std::mem::take(rows)).map_err(|e| Error::Parse {
            line,
            message: e.to_string(),
        })?;
        bases.push(basis);
        Ok(())
    };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            // Comment-only lines do not separate bases.
            if raw.trim().is_empty() {
                finish(&mut current, start_line)?;
            }
            continue;
        }
        if current.is_empty() {
            start_line = line_no;
        }
        let row = content
            .split_whitespace()
            .map(parse_complex)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|message| Error::Parse {
                line: line_no,
                message,
            })?;
        current.push(row);
    }
    finish(&mut current, start_line)?;
    Ok(bases)
}
