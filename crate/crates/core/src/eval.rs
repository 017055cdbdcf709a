//! Accuracy of first-ranked predictions, hit@k, and alpha sweeps.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{read_utf8, Error, Result};
use crate::orthography::NormalizationTable;
use crate::scalar::Score;
use crate::spell::{RankParams, SpellChecker};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldPair {
    pub input: String,
    pub gold: String,
    pub group: Option<String>,
}

impl GoldPair {
    pub fn new(input: impl Into<String>, gold: impl Into<String>) -> Self {
        Self {
            input: input.into(),
            gold: gold.into(),
            group: None,
        }
    }
}

/// Parses a gold file: `input<TAB>gold[<TAB>group]` per line.
pub fn parse_gold(text: &str, name: &str, table: &NormalizationTable) -> Result<Vec<GoldPair>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if !(2..=3).contains(&fields.len()) {
            return Err(Error::parse(
                name,
                idx + 1,
                "expected input<TAB>gold[<TAB>group]",
            ));
        }
        let input = table.normalize(fields[0].trim());
        let gold = table.normalize(fields[1].trim());
        if input.is_empty() || gold.is_empty() {
            return Err(Error::parse(name, idx + 1, "empty input or gold"));
        }
        out.push(GoldPair {
            input,
            gold,
            group: fields
                .get(2)
                .map(|g| g.trim().to_string())
                .filter(|g| !g.is_empty()),
        });
    }
    Ok(out)
}

pub fn load_gold(path: impl AsRef<Path>, table: &NormalizationTable) -> Result<Vec<GoldPair>> {
    let path = path.as_ref();
    parse_gold(&read_utf8(path)?, &path.display().to_string(), table)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ItemResult {
    pub input: String,
    pub gold: String,
    /// The prediction list considered (one element for accuracy).
    pub predicted: Vec<String>,
    pub hit: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroupScore {
    pub matches: usize,
    pub total: usize,
    pub accuracy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub n: usize,
    pub matches: usize,
    pub accuracy: f64,
    pub per_item: Vec<ItemResult>,
    pub breakdown: BTreeMap<String, GroupScore>,
}

impl EvalReport {
    fn from_items(gold: &[GoldPair], per_item: Vec<ItemResult>) -> Self {
        let n = per_item.len();
        let matches = per_item.iter().filter(|i| i.hit).count();
        let mut groups: BTreeMap<String, (usize, usize)> = BTreeMap::new();
        for (pair, item) in gold.iter().zip(&per_item) {
            if let Some(g) = &pair.group {
                let e = groups.entry(g.clone()).or_default();
                e.0 += item.hit as usize;
                e.1 += 1;
            }
        }
        Self {
            n,
            matches,
            accuracy: matches as f64 / n as f64,
            per_item,
            breakdown: groups
                .into_iter()
                .map(|(g, (m, t))| {
                    (
                        g,
                        GroupScore {
                            matches: m,
                            total: t,
                            accuracy: m as f64 / t as f64,
                        },
                    )
                })
                .collect(),
        }
    }

    /// Table with true/false counts per group and a total row.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<16} {:>8} {:>8} {:>8} {:>9}",
            "", "true", "false", "total", "accuracy"
        );
        for (g, s) in &self.breakdown {
            let _ = writeln!(
                out,
                "{:<16} {:>8} {:>8} {:>8} {:>9.4}",
                g,
                s.matches,
                s.total - s.matches,
                s.total,
                s.accuracy
            );
        }
        let _ = writeln!(
            out,
            "{:<16} {:>8} {:>8} {:>8} {:>9.4}",
            "total",
            self.matches,
            self.n - self.matches,
            self.n,
            self.accuracy
        );
        out
    }

    /// Per-item TSV: `input<TAB>gold<TAB>predictions<TAB>hit`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("input\tgold\tpredicted\thit\n");
        for i in &self.per_item {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}",
                i.input,
                i.gold,
                i.predicted.join("|"),
                i.hit
            );
        }
        out
    }
}

/// Fraction of items whose first prediction equals the gold form,
/// compared position by position.
pub fn accuracy<F>(gold: &[GoldPair], predict: F) -> Result<EvalReport>
where
    F: Fn(&str) -> String + Sync,
{
    if gold.is_empty() {
        return Err(Error::EmptyGold);
    }
    let per_item = gold
        .par_iter()
        .map(|p| {
            let predicted = predict(&p.input);
            ItemResult {
                input: p.input.clone(),
                gold: p.gold.clone(),
                hit: predicted == p.gold,
                predicted: vec![predicted],
            }
        })
        .collect();
    Ok(EvalReport::from_items(gold, per_item))
}

/// Fraction of items whose gold form appears among the first `k`
/// predictions.
pub fn hit_at_k<F>(gold: &[GoldPair], predict_k: F, k: usize) -> Result<EvalReport>
where
    F: Fn(&str) -> Vec<String> + Sync,
{
    if gold.is_empty() {
        return Err(Error::EmptyGold);
    }
    if k == 0 {
        return Err(Error::InvalidParam("k must be at least 1".into()));
    }
    let per_item = gold
        .par_iter()
        .map(|p| {
            let mut predicted = predict_k(&p.input);
            predicted.truncate(k);
            ItemResult {
                input: p.input.clone(),
                gold: p.gold.clone(),
                hit: predicted.contains(&p.gold),
                predicted,
            }
        })
        .collect();
    Ok(EvalReport::from_items(gold, per_item))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepMatrix {
    pub alphas: Vec<f64>,
    pub ks: Vec<usize>,
    /// `cells[i][j]` is the accuracy at `alphas[i]` and `ks[j]`.
    pub cells: Vec<Vec<f64>>,
}

impl SweepMatrix {
    /// One row per (alpha, k) pair: `alpha<TAB>predictions<TAB>label`.
    pub fn to_tsv(&self, label: &str) -> String {
        let mut out = format!("alpha\tpredictions\t{label}\n");
        for (a, row) in self.alphas.iter().zip(&self.cells) {
            for (k, acc) in self.ks.iter().zip(row) {
                let _ = writeln!(out, "{a}\t{k}\t{acc:.4}");
            }
        }
        out
    }
}

/// Accuracy of `checker` for every (alpha, k) pair over the same gold set.
pub fn alpha_sweep<S: Score>(
    gold: &[GoldPair],
    checker: &SpellChecker<S>,
    alphas: &[S],
    ks: &[usize],
) -> Result<SweepMatrix> {
    if gold.is_empty() {
        return Err(Error::EmptyGold);
    }
    let max_k = ks.iter().copied().max().unwrap_or(1);
    let mut cells = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        let base = checker.params();
        let params = RankParams::new(alpha, base.max_distance, max_k)?;
        let c = checker.clone().with_params(params);
        let lists: Vec<Vec<String>> = gold.par_iter().map(|p| c.correct(&p.input)).collect();
        let row = ks
            .iter()
            .map(|&k| {
                let hits = gold
                    .iter()
                    .zip(&lists)
                    .filter(|(p, l)| l.iter().take(k).any(|s| *s == p.gold))
                    .count();
                hits as f64 / gold.len() as f64
            })
            .collect();
        cells.push(row);
    }
    Ok(SweepMatrix {
        alphas: alphas.iter().map(|a| a.to_f64()).collect(),
        ks: ks.to_vec(),
        cells,
    })
}
