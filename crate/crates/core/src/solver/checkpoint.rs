//! Binary checkpoint of a single field.
//!
//! Layout, all integers and floats little-endian:
//!
//! | offset | size | content                                   |
//! |--------|------|-------------------------------------------|
//! | 0      | 8    | magic `NLSFIELD`                          |
//! | 8      | 4    | format version (`u32`, currently 1)       |
//! | 12     | 4    | dimension (`u32`)                         |
//! | 16     | 8    | points per axis (`u64`)                   |
//! | 24     | 8    | box length (`f64`)                        |
//! | 32     | 4    | representation (`u32`: 0 physical, 1 frequency) |
//! | 36     | 4    | reserved, zero                            |
//! | 40     | 8    | simulation time (`f64`)                   |
//! | 48     | 8    | value count `n^dim` (`u64`)               |
//! | 56     | 16·count | values as (re, im) `f64` pairs        |

use std::io::{Read, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{Grid, Repr, SpectralField};

pub const MAGIC: &[u8; 8] = b"NLSFIELD";
pub const VERSION: u32 = 1;
pub const HEADER_LEN: usize = 56;

pub fn write_checkpoint<W: Write>(mut w: W, field: &SpectralField, time: f64) -> Result<()> {
    let g = field.grid();
    let mut header = Vec::with_capacity(HEADER_LEN);
    header.extend_from_slice(MAGIC);
    header.extend_from_slice(&VERSION.to_le_bytes());
    header.extend_from_slice(&(g.dim() as u32).to_le_bytes());
    header.extend_from_slice(&(g.n() as u64).to_le_bytes());
    header.extend_from_slice(&g.box_length().to_le_bytes());
    let repr: u32 = match field.repr() {
        Repr::Physical => 0,
        Repr::Frequency => 1,
    };
    header.extend_from_slice(&repr.to_le_bytes());
    header.extend_from_slice(&0u32.to_le_bytes());
    header.extend_from_slice(&time.to_le_bytes());
    header.extend_from_slice(&(field.values().len() as u64).to_le_bytes());
    w.write_all(&header)?;
    let mut body = Vec::with_capacity(16 * field.values().len());
    for v in field.values() {
        body.extend_from_slice(&v.re.to_le_bytes());
        body.extend_from_slice(&v.im.to_le_bytes());
    }
    w.write_all(&body)?;
    Ok(())
}

/// Reads a checkpoint, returning the field and its simulation time.
pub fn read_checkpoint<R: Read>(mut r: R) -> Result<(SpectralField, f64)> {
    let mut header = [0u8; HEADER_LEN];
    r.read_exact(&mut header)
        .map_err(|e| Error::Checkpoint(format!("truncated header: {e}")))?;
    if &header[0..8] != MAGIC {
        return Err(Error::Checkpoint("bad magic".into()));
    }
    let u32_at = |o: usize| u32::from_le_bytes(header[o..o + 4].try_into().unwrap());
    let u64_at = |o: usize| u64::from_le_bytes(header[o..o + 8].try_into().unwrap());
    let f64_at = |o: usize| f64::from_le_bytes(header[o..o + 8].try_into().unwrap());
    let version = u32_at(8);
    if version != VERSION {
        return Err(Error::Checkpoint(format!("unsupported version {version}")));
    }
    let grid = Grid::new(u32_at(12) as usize, u64_at(16) as usize, f64_at(24))?;
    let repr = match u32_at(32) {
        0 => Repr::Physical,
        1 => Repr::Frequency,
        other => return Err(Error::Checkpoint(format!("unknown representation tag {other}"))),
    };
    let time = f64_at(40);
    let count = u64_at(48) as usize;
    if count != grid.len() {
        return Err(Error::Checkpoint(format!(
            "value count {count} does not match grid size {}",
            grid.len()
        )));
    }
    let mut body = vec![0u8; 16 * count];
    r.read_exact(&mut body)
        .map_err(|e| Error::Checkpoint(format!("truncated body: {e}")))?;
    let values = body
        .chunks_exact(16)
        .map(|c| {
            Complex64::new(
                f64::from_le_bytes(c[0..8].try_into().unwrap()),
                f64::from_le_bytes(c[8..16].try_into().unwrap()),
            )
        })
        .collect();
    Ok((SpectralField::from_values(grid, values, repr)?, time))
}
