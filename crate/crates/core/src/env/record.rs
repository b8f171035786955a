//! Episode-record container.
//!
//! ```text
//! "CRTR" | version u8 = 1 | header_len u32 LE | header JSON (UTF-8)
//! actions  [u8; T]
//! rewards  [f32 LE; T]
//! dones    [u8; T]
//! images   [u8; T * 64 * 64 * 3]   only when has_images
//! ```
//!
//! Header keys, in order: `length`, `has_images`, `run_seed`,
//! `episode_index`, `config_hash`.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::render::{Observation, OBS_BYTES};

pub const MAGIC: &[u8; 4] = b"CRTR";
pub const VERSION: u8 = 1;
pub const EXTENSION: &str = "crtr";

#[derive(Debug, Error)]
pub enum RecordError {
    #[error("i/o failure: {0}")]
    Io(#[from] io::Error),
    #[error("not an episode record (bad magic)")]
    BadMagic,
    #[error("unsupported record version {0}")]
    UnsupportedVersion(u8),
    #[error("bad header: {0}")]
    Header(#[from] serde_json::Error),
    #[error("inconsistent record: {0}")]
    Inconsistent(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordHeader {
    pub length: u64,
    pub has_images: bool,
    pub run_seed: u64,
    pub episode_index: u64,
    pub config_hash: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EpisodeRecord {
    pub run_seed: u64,
    pub episode_index: u64,
    pub config_hash: String,
    pub actions: Vec<u8>,
    pub rewards: Vec<f32>,
    pub dones: Vec<bool>,
    /// `T * 64 * 64 * 3` bytes when present.
    pub images: Option<Vec<u8>>,
}

impl EpisodeRecord {
    pub fn new(run_seed: u64, episode_index: u64, config_hash: impl Into<String>, with_images: bool) -> Self {
        Self {
            run_seed,
            episode_index,
            config_hash: config_hash.into(),
            actions: Vec::new(),
            rewards: Vec::new(),
            dones: Vec::new(),
            images: with_images.then(Vec::new),
        }
    }

    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    pub fn has_images(&self) -> bool {
        self.images.is_some()
    }

    /// Appends one step. The observation is stored only when the record
    /// was created with images.
    pub fn push(&mut self, action: u8, reward: f32, done: bool, observation: Option<&Observation>) {
        self.actions.push(action);
        self.rewards.push(reward);
        self.dones.push(done);
        if let Some(images) = &mut self.images {
            match observation {
                Some(obs) => images.extend_from_slice(obs.pixels()),
                None => images.extend(std::iter::repeat(0).take(OBS_BYTES)),
            }
        }
    }

    /// Observation of step `t`, if images were recorded.
    pub fn image(&self, t: usize) -> Option<&[u8]> {
        self.images.as_ref().map(|im| &im[t * OBS_BYTES..(t + 1) * OBS_BYTES])
    }

    pub fn header(&self) -> RecordHeader {
        RecordHeader {
            length: self.len() as u64,
            has_images: self.has_images(),
            run_seed: self.run_seed,
            episode_index: self.episode_index,
            config_hash: self.config_hash.clone(),
        }
    }

    /// `episode-{index}-{length}.crtr`
    pub fn file_name(&self) -> String {
        format!("episode-{}-{}.{EXTENSION}", self.episode_index, self.len())
    }

    fn check(&self) -> Result<(), RecordError> {
        let t = self.len();
        if self.rewards.len() != t || self.dones.len() != t {
            return Err(RecordError::Inconsistent("array lengths differ".into()));
        }
        if let Some(im) = &self.images {
            if im.len() != t * OBS_BYTES {
                return Err(RecordError::Inconsistent("image bytes do not match length".into()));
            }
        }
        Ok(())
    }

    pub fn write_to<W: Write>(&self, mut out: W) -> Result<(), RecordError> {
        self.check()?;
        let header = serde_json::to_vec(&self.header())?;
        out.write_all(MAGIC)?;
        out.write_all(&[VERSION])?;
        out.write_all(&(header.len() as u32).to_le_bytes())?;
        out.write_all(&header)?;
        out.write_all(&self.actions)?;
        let mut rewards = Vec::with_capacity(self.rewards.len() * 4);
        for r in &self.rewards {
            rewards.extend_from_slice(&r.to_le_bytes());
        }
        out.write_all(&rewards)?;
        let dones: Vec<u8> = self.dones.iter().map(|&d| d as u8).collect();
        out.write_all(&dones)?;
        if let Some(im) = &self.images {
            out.write_all(im)?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>, RecordError> {
        let mut buf = Vec::new();
        self.write_to(&mut buf)?;
        Ok(buf)
    }

    pub fn read_from<R: Read>(mut input: R) -> Result<Self, RecordError> {
        let mut magic = [0u8; 4];
        input.read_exact(&mut magic).map_err(truncated)?;
        if &magic != MAGIC {
            return Err(RecordError::BadMagic);
        }
        let mut version = [0u8; 1];
        input.read_exact(&mut version).map_err(truncated)?;
        if version[0] != VERSION {
            return Err(RecordError::UnsupportedVersion(version[0]));
        }
        let mut len = [0u8; 4];
        input.read_exact(&mut len).map_err(truncated)?;
        let mut header = vec![0u8; u32::from_le_bytes(len) as usize];
        input.read_exact(&mut header).map_err(truncated)?;
        let header: RecordHeader = serde_json::from_slice(&header)?;
        let t = usize::try_from(header.length)
            .map_err(|_| RecordError::Inconsistent("length too large".into()))?;

        let mut actions = vec![0u8; t];
        input.read_exact(&mut actions).map_err(truncated)?;
        let mut raw = vec![0u8; t * 4];
        input.read_exact(&mut raw).map_err(truncated)?;
        let rewards = raw
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]))
            .collect();
        let mut dones = vec![0u8; t];
        input.read_exact(&mut dones).map_err(truncated)?;
        if dones.iter().any(|&d| d > 1) {
            return Err(RecordError::Inconsistent("done flag outside 0/1".into()));
        }
        let images = if header.has_images {
            let mut im = vec![0u8; t * OBS_BYTES];
            input.read_exact(&mut im).map_err(truncated)?;
            Some(im)
        } else {
            None
        };
        let mut rest = [0u8; 1];
        if input.read(&mut rest)? != 0 {
            return Err(RecordError::Inconsistent("trailing bytes".into()));
        }
        Ok(Self {
            run_seed: header.run_seed,
            episode_index: header.episode_index,
            config_hash: header.config_hash,
            actions,
            rewards,
            dones: dones.into_iter().map(|d| d == 1).collect(),
            images,
        })
    }

    /// Writes the record into `dir` under its canonical file name.
    pub fn save(&self, dir: impl AsRef<Path>) -> Result<PathBuf, RecordError> {
        let path = dir.as_ref().join(self.file_name());
        let file = fs::File::create(&path)?;
        self.write_to(io::BufWriter::new(file))?;
        Ok(path)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, RecordError> {
        let file = fs::File::open(path)?;
        Self::read_from(io::BufReader::new(file))
    }
}

fn truncated(e: io::Error) -> RecordError {
    if e.kind() == io::ErrorKind::UnexpectedEof {
        RecordError::Inconsistent("file truncated".into())
    } else {
        RecordError::Io(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(images: bool) -> EpisodeRecord {
        let mut r = EpisodeRecord::new(7, 3, "abc", images);
        for t in 0..5u8 {
            let obs = Observation::from_raw(vec![t; OBS_BYTES]).unwrap();
            r.push(t, t as f32 * 0.1 - 0.2, t == 4, Some(&obs));
        }
        r
    }

    #[test]
    fn round_trip_with_and_without_images() {
        for images in [false, true] {
            let r = sample(images);
            let bytes = r.to_bytes().unwrap();
            let back = EpisodeRecord::read_from(&bytes[..]).unwrap();
            assert_eq!(back, r);
            assert_eq!(back.has_images(), images);
        }
    }

    #[test]
    fn byte_layout() {
        let r = sample(false);
        let bytes = r.to_bytes().unwrap();
        assert_eq!(&bytes[..4], b"CRTR");
        assert_eq!(bytes[4], 1);
        let hlen = u32::from_le_bytes(bytes[5..9].try_into().unwrap()) as usize;
        let header = std::str::from_utf8(&bytes[9..9 + hlen]).unwrap();
        assert_eq!(
            header,
            r#"{"length":5,"has_images":false,"run_seed":7,"episode_index":3,"config_hash":"abc"}"#
        );
        let body = &bytes[9 + hlen..];
        assert_eq!(body.len(), 5 + 20 + 5);
        assert_eq!(&body[..5], &[0, 1, 2, 3, 4]);
        assert_eq!(&body[5..9], &(-0.2f32).to_le_bytes());
        assert_eq!(&body[25..], &[0, 0, 0, 0, 1]);
        assert_eq!(r.file_name(), "episode-3-5.crtr");
    }

    #[test]
    fn rejects_corruption() {
        let bytes = sample(true).to_bytes().unwrap();
        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(matches!(EpisodeRecord::read_from(&bad[..]), Err(RecordError::BadMagic)));
        let mut bad = bytes.clone();
        bad[4] = 2;
        assert!(matches!(EpisodeRecord::read_from(&bad[..]), Err(RecordError::UnsupportedVersion(2))));
        assert!(matches!(
            EpisodeRecord::read_from(&bytes[..bytes.len() - 1]),
            Err(RecordError::Inconsistent(_))
        ));
        let mut long = bytes.clone();
        long.push(0);
        assert!(matches!(EpisodeRecord::read_from(&long[..]), Err(RecordError::Inconsistent(_))));
    }
}
