use std::io::Write;

use super::CondensedMatrix;
use crate::error::{Error, Result};
use crate::format::g17;

/// Leading bytes of the binary matrix stream.
pub const BINARY_MAGIC: &[u8; 8] = b"MIXMAT01";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    /// `n=<n>` header, then one `%.17g` value per line.
    Text,
    /// Magic, `n` as little-endian u64, then little-endian f64 values.
    Binary,
}

pub fn write_text<W: Write>(m: &CondensedMatrix, mut out: W) -> Result<()> {
    writeln!(out, "n={}", m.n())?;
    for v in m.values() {
        writeln!(out, "{}", g17(*v))?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_binary<W: Write>(m: &CondensedMatrix, mut out: W) -> Result<()> {
    out.write_all(BINARY_MAGIC)?;
    out.write_all(&(m.n() as u64).to_le_bytes())?;
    for v in m.values() {
        out.write_all(&v.to_le_bytes())?;
    }
    out.flush()?;
    Ok(())
}

/// Reads either export format, detected from the magic bytes.
pub fn read_matrix(bytes: &[u8]) -> Result<CondensedMatrix> {
    if let Some(body) = bytes.strip_prefix(BINARY_MAGIC.as_slice()) {
        return read_binary(body);
    }
    let text =
        std::str::from_utf8(bytes).map_err(|_| Error::MatrixFormat("not UTF-8 text".into()))?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::MatrixFormat("empty file".into()))?;
    let n: usize = header
        .strip_prefix("n=")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::MatrixFormat(format!("bad header `{header}`")))?;
    let values = lines
        .map(|l| {
            l.parse::<f64>()
                .map_err(|_| Error::MatrixFormat(format!("bad value `{l}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    CondensedMatrix::from_values(n, values)
}

fn read_binary(body: &[u8]) -> Result<CondensedMatrix> {
    if body.len() < 8 || !(body.len() - 8).is_multiple_of(8) {
        return Err(Error::MatrixFormat("truncated binary stream".into()));
    }
    let (head, rest) = body.split_at(8);
    let n = u64::from_le_bytes(head.try_into().expect("8 bytes")) as usize;
    let values = rest
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes")))
        .collect();
    CondensedMatrix::from_values(n, values)
}
