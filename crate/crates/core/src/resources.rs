use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::error::Result;
use crate::lemma::Lemmatizer;
use crate::lexicon::{load_templates, parse_templates, AffixInventory, Lexicon, VerbTemplate};
use crate::orthography::{ConfusionGroups, NormalizationTable};

/// Locations of the resource files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataPaths {
    pub orthography: PathBuf,
    pub confusion: PathBuf,
    pub affixes: PathBuf,
    pub lexicon: PathBuf,
    pub exceptions: PathBuf,
    pub templates: PathBuf,
}

impl DataPaths {
    /// Standard file names inside `dir`.
    pub fn in_dir(dir: impl AsRef<Path>) -> Self {
        let d = dir.as_ref();
        Self {
            orthography: d.join("orthography.tsv"),
            confusion: d.join("confusion_groups.tsv"),
            affixes: d.join("affixes.tsv"),
            lexicon: d.join("lexicon.tsv"),
            exceptions: d.join("exceptions.txt"),
            templates: d.join("verb_templates.tsv"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Resources {
    pub table: NormalizationTable,
    pub groups: Arc<ConfusionGroups>,
    pub lemmatizer: Arc<Lemmatizer>,
}

impl Resources {
    pub fn load(paths: &DataPaths) -> Result<Self> {
        let table = NormalizationTable::load(&paths.orthography)?;
        let groups = ConfusionGroups::load(&paths.confusion, &table)?;
        let affixes = AffixInventory::load(&paths.affixes, &table)?;
        let lexicon = Lexicon::load(&paths.lexicon, &table)?
            .with_exceptions_file(&paths.exceptions, &table)?;
        let templates = load_templates(&paths.templates, &table)?;
        Ok(Self::assemble(table, groups, lexicon, affixes, templates))
    }

    /// The resources shipped with the crate, compiled in.
    pub fn starter() -> Self {
        let table =
            NormalizationTable::parse(include_str!("../data/orthography.tsv"), "orthography.tsv")
                .expect("starter orthography");
        let groups = ConfusionGroups::parse(
            include_str!("../data/confusion_groups.tsv"),
            "confusion_groups.tsv",
            &table,
        )
        .expect("starter confusion groups");
        let affixes =
            AffixInventory::parse(include_str!("../data/affixes.tsv"), "affixes.tsv", &table)
                .expect("starter affixes");
        let lexicon = Lexicon::parse(include_str!("../data/lexicon.tsv"), "lexicon.tsv", &table)
            .expect("starter lexicon")
            .with_exceptions_text(include_str!("../data/exceptions.txt"), &table);
        let templates = parse_templates(
            include_str!("../data/verb_templates.tsv"),
            "verb_templates.tsv",
            &table,
        )
        .expect("starter templates");
        Self::assemble(table, groups, lexicon, affixes, templates)
    }

    fn assemble(
        table: NormalizationTable,
        groups: ConfusionGroups,
        lexicon: Lexicon,
        affixes: AffixInventory,
        templates: Vec<VerbTemplate>,
    ) -> Self {
        Self {
            table,
            groups: Arc::new(groups),
            lemmatizer: Arc::new(Lemmatizer::new(lexicon, affixes, templates)),
        }
    }

    /// Directory holding the starter data in the source tree.
    pub fn starter_dir() -> PathBuf {
        Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
    }
}
