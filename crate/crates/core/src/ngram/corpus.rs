use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub text: String,
}

/// Reads a corpus: a directory of `.txt` files (one document each, in file
/// name order) or a single file holding one document per line.
pub fn read_corpus(path: impl AsRef<Path>) -> Result<Vec<Document>> {
    let path = path.as_ref();
    let meta = std::fs::metadata(path).map_err(|e| Error::io(path, e))?;
    if meta.is_dir() {
        let mut files = Vec::new();
        for entry in std::fs::read_dir(path).map_err(|e| Error::io(path, e))? {
            let entry = entry.map_err(|e| Error::io(path, e))?;
            let p = entry.path();
            if p.is_file() && p.extension().is_some_and(|x| x == "txt") {
                files.push(p);
            }
        }
        files.sort();
        files
            .into_iter()
            .map(|p| {
                let text = crate::error::read_utf8(&p)?;
                Ok(Document {
                    id: p
                        .file_name()
                        .map(|n| n.to_string_lossy().into_owned())
                        .unwrap_or_default(),
                    text,
                })
            })
            .collect()
    } else {
        let text = crate::error::read_utf8(path)?;
        let name = path.display().to_string();
        Ok(text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| Document {
                id: format!("{name}:{}", i + 1),
                text: l.to_string(),
            })
            .collect())
    }
}
