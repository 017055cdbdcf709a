//! Binary `.rnm` model container.
//!
//! Layout (little endian):
//! magic `RNMODEL\0`, version `u32`, then the parameter block (n-value
//! count `u32` and sizes `u32`, `min_word_freq` `u64`, 32-byte orthography
//! checksum), the word table (count `u64`; per word: byte length `u32`,
//! UTF-8 bytes, count `u64`), the entry table sorted by (n, position, gram)
//! (count `u64`; per entry: n `u32`, position `u8`, byte length `u32`,
//! bytes, frequency `u64`), and a trailing SHA-256 of everything before it.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::path::Path;

use sha2::{Digest, Sha256};

use super::{NGramIndex, PositionClass};
use crate::error::{Error, Result};

const MAGIC: &[u8; 8] = b"RNMODEL\0";
pub const MODEL_VERSION: u32 = 1;
const HEADER_LEN: usize = 12;
const DIGEST_LEN: usize = 32;

impl NGramIndex {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut buf = Vec::new();
        buf.extend_from_slice(MAGIC);
        buf.extend_from_slice(&MODEL_VERSION.to_le_bytes());
        buf.extend_from_slice(&(self.n_values.len() as u32).to_le_bytes());
        for &n in &self.n_values {
            buf.extend_from_slice(&(n as u32).to_le_bytes());
        }
        buf.extend_from_slice(&self.min_word_freq.to_le_bytes());
        buf.extend_from_slice(&self.orthography_checksum);

        buf.extend_from_slice(&(self.word_freq.len() as u64).to_le_bytes());
        for (w, &c) in &self.word_freq {
            put_str(&mut buf, w);
            buf.extend_from_slice(&c.to_le_bytes());
        }
        buf.extend_from_slice(&(self.entries.len() as u64).to_le_bytes());
        for ((n, p, g), &f) in &self.entries {
            buf.extend_from_slice(&(*n as u32).to_le_bytes());
            buf.push(p.code());
            put_str(&mut buf, g);
            buf.extend_from_slice(&f.to_le_bytes());
        }
        let digest: [u8; DIGEST_LEN] = Sha256::digest(&buf).into();
        buf.extend_from_slice(&digest);
        buf
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN || &bytes[..8] != MAGIC {
            return Err(Error::ModelFormat("not a model file (bad magic)".into()));
        }
        let version = u32::from_le_bytes(bytes[8..12].try_into().unwrap());
        if version != MODEL_VERSION {
            return Err(Error::ModelVersion {
                found: version,
                expected: MODEL_VERSION,
            });
        }
        if bytes.len() < HEADER_LEN + DIGEST_LEN {
            return Err(Error::ModelChecksum);
        }
        let (body, digest) = bytes.split_at(bytes.len() - DIGEST_LEN);
        if Sha256::digest(body).as_slice() != digest {
            return Err(Error::ModelChecksum);
        }

        let mut r = Reader {
            buf: body,
            at: HEADER_LEN,
        };
        let n_count = r.u32()? as usize;
        let mut n_values = BTreeSet::new();
        for _ in 0..n_count {
            n_values.insert(r.u32()? as usize);
        }
        let min_word_freq = r.u64()?;
        let orthography_checksum: [u8; 32] = r.take(32)?.try_into().unwrap();

        let mut word_freq = BTreeMap::new();
        for _ in 0..r.u64()? {
            let w = r.string()?;
            let c = r.u64()?;
            word_freq.insert(w, c);
        }
        let mut entries = BTreeMap::new();
        for _ in 0..r.u64()? {
            let n = r.u32()? as usize;
            let p = PositionClass::from_code(r.u8()?)
                .ok_or_else(|| Error::ModelFormat("bad position code".into()))?;
            let g = r.string()?;
            let f = r.u64()?;
            if f == 0 || !n_values.contains(&n) || g.chars().count() > n {
                return Err(Error::ModelFormat(format!("invalid entry {g:?}")));
            }
            entries.insert((n, p, g), f);
        }
        if r.at != body.len() {
            return Err(Error::ModelFormat("trailing bytes".into()));
        }
        Ok(NGramIndex {
            n_values,
            min_word_freq,
            orthography_checksum,
            word_freq,
            entries,
        })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        file.write_all(&self.to_bytes())
            .map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        Self::from_bytes(&bytes)
    }
}

fn put_str(buf: &mut Vec<u8>, s: &str) {
    buf.extend_from_slice(&(s.len() as u32).to_le_bytes());
    buf.extend_from_slice(s.as_bytes());
}

struct Reader<'a> {
    buf: &'a [u8],
    at: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self
            .at
            .checked_add(n)
            .filter(|&e| e <= self.buf.len())
            .ok_or_else(|| Error::ModelFormat("unexpected end of data".into()))?;
        let out = &self.buf[self.at..end];
        self.at = end;
        Ok(out)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn string(&mut self) -> Result<String> {
        let len = self.u32()? as usize;
        String::from_utf8(self.take(len)?.to_vec())
            .map_err(|_| Error::ModelFormat("invalid UTF-8 in string table".into()))
    }
}
