#!/usr/bin/env python3
"""Regenerates crates/core/data/sample_corpus/ (deterministic)."""
import random
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "crates/core/data/sample_corpus"
VOWELS = set("اەوۆیێ")


def lexicon(kind):
    path = OUT.parent / "lexicon.tsv"
    rows = [l.split("\t") for l in path.read_text(encoding="utf-8").splitlines() if l and not l.startswith("#")]
    return [r[0] for r in rows if r[1] == kind]


def inflect(noun, rng):
    v = noun[-1] in VOWELS
    choice = rng.choice(["", "", "def", "pl", "indef", "plain_pl"])
    if choice == "def":
        return noun + ("کە" if v else "ەکە")
    if choice == "pl":
        return noun + ("کان" if v else "ەکان")
    if choice == "indef":
        return noun + ("یەک" if v else "ێک")
    if choice == "plain_pl":
        return noun + ("یان" if v else "ان")
    return noun


def verb_forms():
    """Every surface the starter templates generate for simple verbs."""
    rows = [l.split("\t") for l in (OUT.parent / "lexicon.tsv").read_text(encoding="utf-8").splitlines()
            if l and not l.startswith("#")]
    verbs = [r for r in rows if r[1] == "verb" and " " not in r[0]]
    out = []
    for line in (OUT.parent / "verb_templates.tsv").read_text(encoding="utf-8").splitlines():
        if not line or line.startswith("#"):
            continue
        f = line.split("\t")
        tense, slots, endings, trans = f[0], f[1], f[2], f[3]
        slot_alts = [[a.split(":")[0].replace("_", "") for a in slot.split(",")] for slot in slots.split("|")]
        ends = [e.split("=", 1)[1] for e in endings.split(";")]
        for v in verbs:
            flags = v[4].split(",") if len(v) > 4 else []
            if trans != "both" and trans not in flags:
                continue
            stem = v[2] if tense == "past" else v[3]
            prefixes = [""]
            for alts in slot_alts:
                prefixes = [p + a for p in prefixes for a in alts]
            out.extend(p + stem + e for p in prefixes for e in ends)
    return sorted(set(out))


FUNCTION = "و لە بە بۆ ئەم ئەو کە لەگەڵ ھەموو زۆر ئێمە ئەوان من تۆ چونکە بەڵام".split()


def main():
    rng = random.Random(20240607)
    nouns = lexicon("noun")
    exceptions = [l.strip() for l in (OUT.parent / "exceptions.txt").read_text(encoding="utf-8").splitlines()
                  if l.strip() and not l.startswith("#")]
    vocab_weights = []
    verbs = rng.sample(verb_forms(), 45)
    pools = [(FUNCTION, 6.0), (nouns, 1.0), (verbs, 0.8), (exceptions, 0.5)]
    for words, scale in pools:
        for rank, w in enumerate(words, start=1):
            vocab_weights.append((w, scale / rank ** 0.6))
    words = [w for w, _ in vocab_weights]
    weights = [x for _, x in vocab_weights]
    OUT.mkdir(parents=True, exist_ok=True)
    for f in OUT.glob("*.txt"):
        f.unlink()
    for doc in range(10):
        sentences = []
        count = 0
        while count < 100:
            length = rng.randint(5, 11)
            sent = []
            for _ in range(length):
                w = rng.choices(words, weights)[0]
                if w in nouns:
                    w = inflect(w, rng)
                sent.append(w)
            if rng.random() < 0.15:
                sent.insert(rng.randrange(len(sent)), str(rng.randint(1900, 2020)))
            sentences.append(" ".join(sent) + ".")
            count += length
        (OUT / f"doc{doc:02}.txt").write_text("\n".join(sentences) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
