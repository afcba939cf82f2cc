//! The `EDGT` tensor file format.
//!
//! Layout (all integers little-endian):
//!
//! ```text
//! bytes 0..4    magic "EDGT"
//! u32           version (currently 1)
//! u32           rank r
//! r × u32       dims
//! u32           channel-name count (0, or dims[r−1])
//! per name      u32 byte length + UTF-8 bytes
//! payload       product(dims) × f32, row-major, little-endian
//! ```

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

pub const MAGIC: [u8; 4] = *b"EDGT";
pub const VERSION: u32 = 1;

/// Maximum plausible rank; guards header parsing against garbage.
const MAX_RANK: u32 = 8;

/// An in-memory tensor with named channels.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorFile {
    dims: Vec<u32>,
    channel_names: Vec<String>,
    data: Vec<f32>,
}

impl TensorFile {
    /// `channel_names` may be empty or must match the last dimension.
    pub fn new(dims: Vec<u32>, channel_names: Vec<String>, data: Vec<f32>) -> Result<Self> {
        if dims.is_empty() || dims.len() > MAX_RANK as usize {
            return Err(Error::BadTensor(format!(
                "rank must be 1..={MAX_RANK}, got {}",
                dims.len()
            )));
        }
        let expected: usize = dims.iter().map(|&d| d as usize).product();
        if data.len() != expected {
            return Err(Error::BadTensor(format!(
                "payload length {} does not match dims {:?} (expected {expected})",
                data.len(),
                dims
            )));
        }
        if !channel_names.is_empty() && channel_names.len() != *dims.last().unwrap() as usize {
            return Err(Error::BadTensor(format!(
                "{} channel names for last dim {}",
                channel_names.len(),
                dims.last().unwrap()
            )));
        }
        Ok(Self {
            dims,
            channel_names,
            data,
        })
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn channel_names(&self) -> &[String] {
        &self.channel_names
    }

    pub fn data(&self) -> &[f32] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f32> {
        self.data
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(32 + self.data.len() * 4);
        out.extend_from_slice(&MAGIC);
        out.extend_from_slice(&VERSION.to_le_bytes());
        out.extend_from_slice(&(self.dims.len() as u32).to_le_bytes());
        for &d in &self.dims {
            out.extend_from_slice(&d.to_le_bytes());
        }
        out.extend_from_slice(&(self.channel_names.len() as u32).to_le_bytes());
        for name in &self.channel_names {
            out.extend_from_slice(&(name.len() as u32).to_le_bytes());
            out.extend_from_slice(name.as_bytes());
        }
        for &v in &self.data {
            out.extend_from_slice(&v.to_bits().to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut cur = Cursor { bytes, pos: 0 };
        let magic = cur.take(4)?;
        if magic != MAGIC {
            return Err(Error::BadTensor(format!("bad magic {magic:?}")));
        }
        let version = cur.u32()?;
        if version != VERSION {
            return Err(Error::BadTensor(format!("unsupported version {version}")));
        }
        let rank = cur.u32()?;
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::BadTensor(format!("bad rank {rank}")));
        }
        let mut dims = Vec::with_capacity(rank as usize);
        for _ in 0..rank {
            dims.push(cur.u32()?);
        }
        let name_count = cur.u32()?;
        if name_count != 0 && name_count != *dims.last().unwrap() {
            return Err(Error::BadTensor(format!(
                "{name_count} channel names for last dim {}",
                dims.last().unwrap()
            )));
        }
        let mut channel_names = Vec::with_capacity(name_count as usize);
        for _ in 0..name_count {
            let len = cur.u32()? as usize;
            let raw = cur.take(len)?;
            channel_names.push(
                String::from_utf8(raw.to_vec())
                    .map_err(|_| Error::BadTensor("channel name is not UTF-8".into()))?,
            );
        }
        let expected: usize = dims.iter().map(|&d| d as usize).product();
        let payload = cur.rest();
        if payload.len() != expected * 4 {
            return Err(Error::BadTensor(format!(
                "payload is {} bytes, expected {} for dims {:?}",
                payload.len(),
                expected * 4,
                dims
            )));
        }
        let data: Vec<f32> = payload
            .chunks_exact(4)
            .map(|c| f32::from_bits(u32::from_le_bytes([c[0], c[1], c[2], c[3]])))
            .collect();
        Self::new(dims, channel_names, data)
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.pos + n > self.bytes.len() {
            return Err(Error::BadTensor("truncated header".into()));
        }
        let out = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(out)
    }

    fn u32(&mut self) -> Result<u32> {
        let b = self.take(4)?;
        Ok(u32::from_le_bytes([b[0], b[1], b[2], b[3]]))
    }

    fn rest(&self) -> &'a [u8] {
        &self.bytes[self.pos..]
    }
}

/// Writes the tensor atomically.
pub fn write_tensor(tensor: &TensorFile, path: &Path) -> Result<()> {
    super::write_atomic(path, &tensor.to_bytes())
}

/// Reads and validates a tensor file.
pub fn read_tensor(path: &Path) -> Result<TensorFile> {
    TensorFile::from_bytes(&fs::read(path)?)
}
