//! Checks shared by the per-topic test files and the acceptance runner.

pub mod distance {
    use std::time::Instant;

    use num_rational::Ratio;
    use rayon::prelude::*;
    use sorani_core::orthography::{weighted_edit_distance, ConfusionGroups, EditCost};

    use crate::common::EditGraph;

    pub fn ab_groups() -> ConfusionGroups {
        ConfusionGroups::new(vec![vec!['a', 'b']], Ratio::new(1, 2)).unwrap()
    }

    pub fn dp_matches_shortest_edit_scripts_exhaustively() {
        let start = Instant::now();
        let graph = EditGraph::new(&['a', 'b', 'c', 'd'], ('a', 'b'), 5);
        let groups = ab_groups();
        assert_eq!(graph.nodes.len(), 1365);
        let mismatches: usize = (0..graph.nodes.len())
            .into_par_iter()
            .map(|i| {
                let dist = graph.distances_from(i);
                let a: Vec<char> = graph.nodes[i].chars().collect();
                graph
                    .nodes
                    .iter()
                    .zip(&dist)
                    .filter(|(b, &d)| {
                        let b: Vec<char> = b.chars().collect();
                        sorani_core::orthography::weighted_edit_distance_chars(&a, &b, &groups)
                            != EditCost::from_halves(d)
                    })
                    .count()
            })
            .sum();
        assert_eq!(mismatches, 0);
        assert!(start.elapsed().as_secs() < 60);
    }

    pub fn classic_pairs() {
        let empty = ConfusionGroups::empty();
        assert_eq!(
            weighted_edit_distance("kitten", "sitting", &empty),
            EditCost::from_integer(3)
        );
        assert_eq!(
            weighted_edit_distance("flaw", "lawn", &empty),
            EditCost::from_integer(2)
        );
        assert_eq!(
            weighted_edit_distance("ab", "ba", &empty),
            EditCost::from_integer(2)
        );
    }

    pub fn starter_groups_discount_sorani_pairs() {
        let res = crate::common::resources();
        let g = &res.groups;
        assert_eq!(
            weighted_edit_distance("گوڵ", "گول", g),
            EditCost::from_halves(1)
        );
        assert_eq!(
            weighted_edit_distance("کوڕ", "کور", g),
            EditCost::from_halves(1)
        );
        assert_eq!(weighted_edit_distance("کوڕ", "کوت", g), EditCost::ONE);
        assert_eq!(
            weighted_edit_distance("ژن", "ژنەکە", g),
            EditCost::from_integer(3)
        );
    }
}

pub mod noun {
    use sorani_core::noun_lemmatize;

    pub fn every_root_and_chain_recovers_the_root() {
        let res = crate::common::resources();
        let lz = &res.lemmatizer;
        let mut failures = Vec::new();
        let chains = crate::common::noun_chains(&res);
        for (word, root) in &chains {
            let got = noun_lemmatize(word, lz.lexicon(), lz.affixes());
            if &got.root != root {
                failures.push(format!("{word} -> {} (want {root})", got.root));
            }
        }
        assert!(
            failures.is_empty(),
            "{} of {} failed:\n{}",
            failures.len(),
            chains.len(),
            failures[..failures.len().min(40)].join("\n")
        );
    }

    pub fn exceptions_return_themselves() {
        let res = crate::common::resources();
        let lz = &res.lemmatizer;
        let exceptions: Vec<String> = lz.lexicon().exceptions().iter().cloned().collect();
        assert!(exceptions.len() >= 20);
        for e in &exceptions {
            assert_eq!(&noun_lemmatize(e, lz.lexicon(), lz.affixes()).root, e);
            assert_eq!(&lz.lemmatize(e).root, e);
        }
    }
}

pub mod verb {
    use std::collections::{BTreeMap, BTreeSet};
    use std::time::Instant;

    use sorani_core::lexicon::Pos;
    use sorani_core::verb::{generate_forms, Polarity};
    use sorani_core::verb_lemmatize;

    pub fn every_generated_form_recovers_its_infinitive() {
        let res = crate::common::resources();
        let lz = &res.lemmatizer;
        let start = Instant::now();
        let mut sources: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for e in lz.lexicon().entries().iter().filter(|e| e.pos == Pos::Verb) {
            for f in generate_forms(e, lz.templates()) {
                sources
                    .entry(f.surface)
                    .or_default()
                    .insert(e.surface.clone());
            }
        }
        assert!(sources.len() > 1000, "only {} forms", sources.len());
        eprintln!("{} distinct verb surfaces", sources.len());
        let homographs: Vec<_> = sources.iter().filter(|(_, s)| s.len() > 1).collect();
        assert!(
            homographs.is_empty(),
            "surfaces shared by several verbs: {homographs:?}"
        );
        let mut failures = Vec::new();
        for (surface, inf) in &sources {
            let want = inf.iter().next().unwrap();
            match verb_lemmatize(surface, lz.lexicon(), lz.templates()) {
                Some(m) if &m.infinitive == want => {}
                other => failures.push(format!(
                    "{surface} -> {:?} (want {want})",
                    other.map(|m| m.infinitive)
                )),
            }
        }
        assert!(
            failures.is_empty(),
            "{} of {} failed:\n{}",
            failures.len(),
            sources.len(),
            failures[..failures.len().min(40)].join("\n")
        );
        assert!(start.elapsed().as_secs() < 30);
    }

    pub fn negated_forms_carry_negative_polarity() {
        let res = crate::common::resources();
        let lz = &res.lemmatizer;
        for e in lz.lexicon().entries().iter().filter(|e| e.pos == Pos::Verb) {
            for f in generate_forms(e, lz.templates()) {
                let neg = f.features.polarity == Polarity::Negative;
                let m = verb_lemmatize(&f.surface, lz.lexicon(), lz.templates()).unwrap();
                assert_eq!(
                    m.features.polarity == Polarity::Negative,
                    neg,
                    "{}",
                    f.surface
                );
            }
        }
    }
}

pub mod index {
    use std::collections::BTreeMap;

    use sorani_core::ngram::read_corpus;
    use sorani_core::{build_index, BuildParams, NGramIndex};

    pub fn as_map(index: &NGramIndex, n: usize) -> BTreeMap<(String, &'static str), u64> {
        index
            .entries()
            .filter(|e| e.0 == n)
            .map(|(_, p, g, c)| ((g.to_string(), p.as_str()), c))
            .collect()
    }

    pub fn gram_counts_match_hand_count_at_each_threshold() {
        let res = crate::common::resources();
        let words = crate::common::oracle_word_counts(&res);
        for min in [1, 2, 3] {
            let index = crate::common::sample_index(&res, &[3, 4, 5], min);
            assert_eq!(index.word_freq(), &words);
            for n in [3, 4, 5] {
                assert_eq!(
                    as_map(&index, n),
                    crate::common::oracle_gram_counts(&words, n, min),
                    "n={n} min={min}"
                );
            }
        }
    }

    pub fn raising_threshold_removes_rare_word_grams() {
        let res = crate::common::resources();
        let words = crate::common::oracle_word_counts(&res);
        let low = crate::common::sample_index(&res, &[3], 1);
        let high = crate::common::sample_index(&res, &[3], 3);
        let rare: Vec<&String> = words
            .iter()
            .filter(|(_, &c)| c < 3)
            .map(|(w, _)| w)
            .collect();
        assert!(rare.len() >= 20, "sample corpus should have rare words");
        let common_only = crate::common::oracle_gram_counts(
            &words
                .iter()
                .filter(|(_, &c)| c >= 3)
                .map(|(w, &c)| (w.clone(), c))
                .collect(),
            3,
            1,
        );
        let mut removed = 0;
        for ((g, p), c) in as_map(&low, 3) {
            let kept = high
                .entries()
                .find(|e| e.2 == g && e.1.as_str() == p)
                .map(|e| e.3);
            match common_only.get(&(g.clone(), p)) {
                Some(&want) => {
                    assert_eq!(kept, Some(want));
                    assert!(want <= c);
                }
                None => {
                    assert_eq!(kept, None, "{g} {p} should be gone");
                    removed += 1;
                }
            }
        }
        assert!(removed > 0);
        assert!(high.len() < low.len());
    }

    pub fn rebuilding_is_byte_identical() {
        let res = crate::common::resources();
        let a = crate::common::sample_index(&res, &[3, 4, 5], 3).to_bytes();
        let b = crate::common::sample_index(&res, &[3, 4, 5], 3).to_bytes();
        assert_eq!(a, b);
        // document order does not matter
        let mut docs = read_corpus(crate::common::corpus_dir()).unwrap();
        docs.reverse();
        let params = BuildParams::new([3, 4, 5], 3).unwrap();
        let c = build_index(docs.into_iter().map(Ok), &params, &res.table)
            .unwrap()
            .to_bytes();
        assert_eq!(a, c);
    }

    pub fn short_words_are_single_beginning_grams() {
        let res = crate::common::resources();
        let index = crate::common::sample_index(&res, &[3], 1);
        // two-letter function words
        for w in ["لە", "بە", "بۆ"] {
            assert!(index.word_count(w) > 0, "{w} missing from sample corpus");
            assert_eq!(
                index.gram_frequency(w, sorani_core::PositionClass::Beginning, 3),
                crate::common::oracle_gram_counts(index.word_freq(), 3, 1)
                    [&(w.to_string(), "beginning")]
            );
        }
    }
}

pub mod detection {
    use std::collections::BTreeSet;

    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use sorani_core::ngram::Document;
    use sorani_core::spell::detect;
    use sorani_core::{build_index, BuildParams};

    const UNSEEN: char = 'ظ';
    const MIN: u64 = 1;

    /// 100 words made only of stored grams and 100 words carrying an unseen
    /// letter, all from a fixed seed.
    pub fn suite() -> (Vec<String>, Vec<String>) {
        let res = crate::common::resources();
        let counts = crate::common::oracle_word_counts(&res);
        let tables = crate::common::gram_tables(&counts, &[3, 4, 5], MIN);
        let frequent: Vec<&String> = counts
            .iter()
            .filter(|(_, &c)| c >= MIN)
            .map(|(w, _)| w)
            .collect();
        let mut rng = StdRng::seed_from_u64(5);

        let mut clean = BTreeSet::new();
        for w in &frequent {
            clean.insert((*w).clone());
        }
        let mut tries = 0;
        while clean.len() < 100 && tries < 200_000 {
            tries += 1;
            let a: Vec<char> = frequent[rng.gen_range(0..frequent.len())].chars().collect();
            let b: Vec<char> = frequent[rng.gen_range(0..frequent.len())].chars().collect();
            let w: String = a[..rng.gen_range(1..=a.len())]
                .iter()
                .chain(&b[rng.gen_range(0..b.len())..])
                .collect();
            if crate::common::all_grams_stored(&w, &tables) {
                clean.insert(w);
            }
        }
        let clean: Vec<String> = clean.into_iter().take(100).collect();
        assert_eq!(clean.len(), 100);

        let mut dirty = BTreeSet::new();
        while dirty.len() < 100 {
            let mut w: Vec<char> = frequent[rng.gen_range(0..frequent.len())].chars().collect();
            let at = rng.gen_range(0..=w.len());
            w.insert(at, UNSEEN);
            dirty.insert(w.into_iter().collect());
        }
        (clean, dirty.into_iter().collect())
    }

    pub fn stored_gram_words_pass_and_unseen_grams_are_culprits() {
        let res = crate::common::resources();
        let counts = crate::common::oracle_word_counts(&res);
        assert!(!counts.keys().any(|w| w.contains(UNSEEN)));
        let index = crate::common::sample_index(&res, &[3, 4, 5], MIN);
        let tables = crate::common::gram_tables(&counts, &[3, 4, 5], MIN);
        let (clean, dirty) = suite();

        for w in &clean {
            let r = detect(w, &index, None);
            assert!(!r.flagged, "{w} flagged");
            assert!(r.culprit.unwrap().frequency > 0);
        }
        for w in &dirty {
            let r = detect(w, &index, None);
            assert!(r.flagged, "{w} not flagged");
            // leftmost zero gram; the longer gram on equal offsets
            let want = [5usize, 4, 3]
                .iter()
                .flat_map(|&n| {
                    crate::common::oracle_grams(w, n)
                        .into_iter()
                        .map(move |g| (g, n))
                })
                .filter(|((g, p, _), n)| !tables[n].contains_key(&(g.clone(), *p)))
                .min_by_key(|((_, _, off), n)| (*off, std::cmp::Reverse(*n)))
                .unwrap();
            let c = r.culprit.unwrap();
            assert_eq!(c.frequency, 0);
            assert_eq!(
                (c.gram.as_str(), c.offset, c.n),
                (want.0 .0.as_str(), want.0 .2, want.1),
                "{w}"
            );
        }
    }

    pub fn lexicon_mode_overrides_gram_verdict() {
        let res = crate::common::resources();
        let index = crate::common::sample_index(&res, &[3, 4, 5], MIN);
        let lz = res.lemmatizer.as_ref();
        // a lexicon word with an unseen inflection is accepted
        let r = detect("ئۆتۆمبێلەکانمان", &index, Some(lz));
        assert!(!r.flagged);
        // a stored word the lexicon cannot account for is flagged
        let docs = vec![Document {
            id: "d".into(),
            text: "زەبەلاح زەبەلاح زەبەلاح".into(),
        }];
        let small = build_index(
            docs.into_iter().map(Ok),
            &BuildParams::new([3], 1).unwrap(),
            &res.table,
        )
        .unwrap();
        assert!(!detect("زەبەلاح", &small, None).flagged);
        assert!(detect("زەبەلاح", &small, Some(lz)).flagged);
    }
}

pub mod ranking {
    use std::cmp::Ordering;
    use std::sync::Arc;

    use num_rational::Ratio;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use sorani_core::spell::{compare_candidates, detect, rank, CorrectionCandidate};
    use sorani_core::{
        weighted_edit_distance, EditCost, ExactRank, Mode, PositionClass, RankParams, SpellChecker,
    };

    const ALPHAS: [i64; 5] = [1, 10, 70, 100, 200];
    const KS: [usize; 4] = [1, 2, 5, 10];

    type Q = Ratio<i128>;

    /// The ranking formula written out over exact rationals.
    pub fn score(d: Ratio<u32>, f: u64, alpha: i64) -> Q {
        let d = Q::new(*d.numer() as i128, *d.denom() as i128);
        let f = Q::from_integer(f as i128);
        if d == Q::from_integer(0) {
            f * 2
        } else if d <= Q::from_integer(1) {
            f / d
        } else {
            f / ((d - 1) * Q::from_integer(alpha as i128))
        }
    }

    struct Scored {
        word: String,
        d: Ratio<u32>,
        f: u64,
        s: Q,
    }

    /// Exhaustive suggestions: every stored gram of each correction site's
    /// size and position, scored, sorted by the documented tie-breaks.
    pub fn oracle(word: &str, alpha: i64, k: usize) -> Vec<String> {
        let res = crate::common::resources();
        let counts = crate::common::oracle_word_counts(&res);
        let tables = crate::common::gram_tables(&counts, &[3, 4, 5], 3);
        let index = crate::common::sample_index(&res, &[3, 4, 5], 3);
        let report = detect(word, &index, None);
        let mut all = Vec::new();
        for site in report.correction_sites() {
            for ((g, p), &f) in &tables[&site.n] {
                if *p != site.position.as_str() {
                    continue;
                }
                let d = weighted_edit_distance(g, &site.gram, &res.groups).ratio();
                if d >= Ratio::from_integer(3) {
                    continue;
                }
                let chars: Vec<char> = word.chars().collect();
                let fixed: String = chars[..site.offset].iter().collect::<String>()
                    + g
                    + &chars[site.offset + site.gram.chars().count()..]
                        .iter()
                        .collect::<String>();
                all.push(Scored {
                    word: fixed,
                    d,
                    f,
                    s: score(d, f, alpha),
                });
            }
        }
        all.sort_by(|a, b| {
            b.s.cmp(&a.s)
                .then(a.d.cmp(&b.d))
                .then(b.f.cmp(&a.f))
                .then_with(|| a.word.cmp(&b.word))
        });
        let mut out: Vec<String> = Vec::new();
        for c in all {
            if !out.contains(&c.word) {
                out.push(c.word);
            }
        }
        out.truncate(k);
        out
    }

    pub fn flagged_words() -> Vec<String> {
        let res = crate::common::resources();
        let index = crate::common::sample_index(&res, &[3, 4, 5], 3);
        let mut rng = StdRng::seed_from_u64(11);
        let words: Vec<&String> = index
            .word_freq()
            .iter()
            .filter(|(_, &c)| c >= 3)
            .map(|(w, _)| w)
            .collect();
        let letters: Vec<char> = "ابپتجچحخدرڕزژسشعغفڤقکگلڵمنوۆھەیێ".chars().collect();
        let mut out = Vec::new();
        while out.len() < 25 {
            let mut w: Vec<char> = words[rng.gen_range(0..words.len())].chars().collect();
            let at = rng.gen_range(0..w.len());
            w[at] = letters[rng.gen_range(0..letters.len())];
            let w: String = w.into_iter().collect();
            if detect(&w, &index, None).flagged && !out.contains(&w) {
                out.push(w);
            }
        }
        out
    }

    pub fn suggestion_order_matches_exhaustive_scoring() {
        let res = crate::common::resources();
        let index = Arc::new(crate::common::sample_index(&res, &[3, 4, 5], 3));
        for word in flagged_words() {
            for alpha in ALPHAS {
                for k in KS {
                    let want = oracle(&word, alpha, k);
                    let fp = RankParams::new(alpha as f64, EditCost::from_integer(3), k).unwrap();
                    let float = SpellChecker::new(
                        index.clone(),
                        res.groups.clone(),
                        fp,
                        Mode::NgramOnly,
                        None,
                    )
                    .unwrap();
                    assert_eq!(float.correct(&word), want, "{word} alpha={alpha} k={k}");
                    let ep = RankParams::new(
                        ExactRank::from_integer(alpha),
                        EditCost::from_integer(3),
                        k,
                    )
                    .unwrap();
                    let exact = SpellChecker::new(
                        index.clone(),
                        res.groups.clone(),
                        ep,
                        Mode::NgramOnly,
                        None,
                    )
                    .unwrap();
                    assert_eq!(
                        exact.correct(&word),
                        want,
                        "exact {word} alpha={alpha} k={k}"
                    );
                }
            }
        }
    }

    pub fn random_far_pool(rng: &mut StdRng) -> Vec<(Ratio<u32>, u64, String)> {
        let size = rng.gen_range(2..30);
        (0..size)
            .map(|i| {
                let halves = rng.gen_range(3..=5u32);
                (
                    Ratio::new(halves, 2),
                    rng.gen_range(1..50u64),
                    format!("w{i:02}"),
                )
            })
            .collect()
    }

    pub fn order(pool: &[(Ratio<u32>, u64, String)], alpha: f64) -> Vec<String> {
        let mut cands: Vec<CorrectionCandidate<f64>> = pool
            .iter()
            .map(|(d, f, w)| {
                let d = EditCost::new(*d.numer(), *d.denom());
                CorrectionCandidate {
                    replacement_gram: w.clone(),
                    corrected_word: w.clone(),
                    distance: d,
                    freq_value: *f,
                    rank: rank(d, *f, alpha),
                    n: 3,
                    position: PositionClass::Middle,
                    offset: 0,
                }
            })
            .collect();
        cands.sort_by(compare_candidates);
        cands.into_iter().map(|c| c.corrected_word).collect()
    }

    pub fn far_pools_are_alpha_invariant() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..100 {
            let pool = random_far_pool(&mut rng);
            assert_eq!(order(&pool, 1.0), order(&pool, 200.0));
        }
    }

    pub fn near_candidates_can_lose_to_far_ones_only_at_small_alpha() {
        let d1 = rank(EditCost::ONE, 10, 1.0f64);
        let d15 = rank(EditCost::from_halves(3), 10, 1.0f64);
        assert_eq!(d15.partial_cmp(&d1), Some(Ordering::Greater));
        let d15 = rank(EditCost::from_halves(3), 10, 70.0f64);
        assert_eq!(d15.partial_cmp(&d1), Some(Ordering::Less));
    }
}

pub mod end_to_end {
    pub fn larger_grams_and_lexicon_help() {
        let r = crate::common::end_to_end();
        eprintln!(
            "hit@10 4,5-gram {:.3}  3-gram {:.3}; hit@1 4,5-gram {:.3}  3-gram {:.3}  with lexicon {:.3}",
            r.hit10_45, r.hit10_3, r.hit1_45, r.hit1_3, r.hit1_lexicon
        );
        assert!(r.hit10_45 >= r.hit10_3);
        assert!(r.hit1_lexicon >= r.hit1_plain);
    }

    pub fn mutations_are_single_edits_off_the_vocabulary() {
        let res = crate::common::resources();
        let index = crate::common::sample_index(&res, &[3, 4, 5], 3);
        let suite = crate::common::mutation_suite(&res, &index, 200, 17);
        assert_eq!(suite.len(), 200);
        let conf = suite.iter().filter(|m| m.confusable).count();
        assert!((60..=140).contains(&conf), "{conf}");
        for m in &suite {
            let d = sorani_core::weighted_edit_distance(&m.input, &m.gold, &res.groups);
            let want = if m.confusable {
                sorani_core::EditCost::from_halves(1)
            } else {
                sorani_core::EditCost::ONE
            };
            assert_eq!(d, want, "{} {}", m.input, m.gold);
            assert_eq!(index.word_count(&m.input), 0);
        }
    }
}

pub mod persistence {
    use sorani_core::{Error, NGramIndex};

    pub fn save_load_round_trip() {
        let res = crate::common::resources();
        let index = crate::common::sample_index(&res, &[3, 4, 5], 3);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sample.rnm");
        index.save(&path).unwrap();
        let back = NGramIndex::load(&path).unwrap();
        assert_eq!(back, index);
        assert_eq!(back.orthography_checksum(), &res.table.checksum());
    }

    pub fn corrupted_files_are_rejected() {
        let res = crate::common::resources();
        let bytes = crate::common::sample_index(&res, &[3, 4, 5], 3).to_bytes();

        let mut flipped = bytes.clone();
        let mid = flipped.len() / 2;
        flipped[mid] ^= 0x40;
        assert!(matches!(
            NGramIndex::from_bytes(&flipped),
            Err(Error::ModelChecksum)
        ));

        assert!(NGramIndex::from_bytes(&bytes[..bytes.len() - 7]).is_err());
        assert!(NGramIndex::from_bytes(&bytes[..4]).is_err());

        let mut magic = bytes.clone();
        magic[0] = b'X';
        assert!(matches!(
            NGramIndex::from_bytes(&magic),
            Err(Error::ModelFormat(_))
        ));

        let mut version = bytes.clone();
        version[8] = 9;
        assert!(matches!(
            NGramIndex::from_bytes(&version),
            Err(Error::ModelVersion { found: 9, .. })
        ));
    }
}

pub mod eval {
    use sorani_core::eval::{accuracy, GoldPair};

    /// 173 matches out of 203 items reports 0.8522.
    pub fn accuracy_of_173_in_203() {
        let gold: Vec<GoldPair> = (0..203)
            .map(|i| GoldPair::new(format!("w{i}"), format!("w{i}")))
            .collect();
        let report = accuracy(&gold, |w| {
            let i: usize = w[1..].parse().unwrap();
            if i < 173 {
                w.to_string()
            } else {
                format!("{w}x")
            }
        })
        .unwrap();
        assert_eq!((report.matches, report.n), (173, 203));
        assert!(
            (report.accuracy - 0.8522).abs() <= 0.0001,
            "{}",
            report.accuracy
        );
    }
}
