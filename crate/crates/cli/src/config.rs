//! `key = value` configuration. Relative paths resolve against the
//! directory holding the config file.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use sorani_core::error::read_utf8;
use sorani_core::{DataPaths, Mode};

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    /// None when no config file was given: the built-in data is used.
    pub data: Option<DataFiles>,
    pub model: Option<PathBuf>,
    pub n_values: BTreeSet<usize>,
    pub min_word_freq: u64,
    pub alpha: f64,
    pub top_k: usize,
    pub max_distance: f64,
    pub mode: Mode,
    pub passes: usize,
}

/// Data files named in a config file; each may be absent.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DataFiles {
    pub orthography: Option<PathBuf>,
    pub confusion: Option<PathBuf>,
    pub affixes: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub exceptions: Option<PathBuf>,
    pub templates: Option<PathBuf>,
}

impl From<DataPaths> for DataFiles {
    fn from(p: DataPaths) -> Self {
        Self {
            orthography: Some(p.orthography),
            confusion: Some(p.confusion),
            affixes: Some(p.affixes),
            lexicon: Some(p.lexicon),
            exceptions: Some(p.exceptions),
            templates: Some(p.templates),
        }
    }
}

impl Default for Config {
    fn default() -> Self {
        Self {
            data: None,
            model: None,
            n_values: [3, 4, 5].into(),
            min_word_freq: 3,
            alpha: 70.0,
            top_k: 10,
            max_distance: 3.0,
            mode: Mode::NgramOnly,
            passes: 1,
        }
    }
}

pub fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| {
            x.parse::<T>()
                .map_err(|_| anyhow::anyhow!("bad list item {x:?}"))
        })
        .collect()
}

impl Config {
    pub fn load(path: &Path) -> Result<Self> {
        let text = read_utf8(path)?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, base).with_context(|| format!("in {}", path.display()))
    }

    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let mut cfg = Config {
            data: Some(DataFiles::default()),
            ..Config::default()
        };
        let data = cfg.data.as_mut().unwrap();
        let mut model = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("line {}: expected key = value", idx + 1);
            };
            let (key, value) = (key.trim(), value.trim());
            let path = || Some(base.join(value));
            match key {
                "orthography" => data.orthography = path(),
                "confusion" => data.confusion = path(),
                "affixes" => data.affixes = path(),
                "lexicon" => data.lexicon = path(),
                "exceptions" => data.exceptions = path(),
                "templates" => data.templates = path(),
                "model" => model = path(),
                "n_values" => cfg.n_values = parse_list(value)?.into_iter().collect(),
                "min_word_freq" => cfg.min_word_freq = value.parse().context("min_word_freq")?,
                "alpha" => cfg.alpha = value.parse().context("alpha")?,
                "top_k" => cfg.top_k = value.parse().context("top_k")?,
                "max_distance" => cfg.max_distance = value.parse().context("max_distance")?,
                "passes" => cfg.passes = value.parse().context("passes")?,
                "mode" => {
                    cfg.mode =
                        Mode::parse(value).with_context(|| format!("unknown mode {value:?}"))?
                }
                other => bail!("line {}: unknown key {other:?}", idx + 1),
            }
        }
        cfg.model = model;
        Ok(cfg)
    }

    /// Every file the config names must exist.
    pub fn check_files(&self) -> Result<()> {
        let Some(d) = &self.data else { return Ok(()) };
        let files = [
            &d.orthography,
            &d.confusion,
            &d.affixes,
            &d.lexicon,
            &d.exceptions,
            &d.templates,
        ];
        for p in files.into_iter().flatten() {
            if !p.is_file() {
                return Err(sorani_core::Error::io(
                    p,
                    std::io::Error::from(std::io::ErrorKind::NotFound),
                )
                .into());
            }
        }
        Ok(())
    }
}
