"""Corpus construction: cleaning, tense-rich filtering, deterministic
splitting, disagreement selection, and human-review sheets.

Every stage is order-stable (output order is a subsequence of input order)
and deterministic for a fixed seed, independent of parallelism.
"""

from __future__ import annotations

import json
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Sequence

from .lexicon import MorphLexicon, default_lexicon
from .metrics import labels_equal
from .tense_en import SentenceLabel, label_sentence

__all__ = [
    "ParallelPair",
    "ParallelTriple",
    "CleanStats",
    "clean",
    "filter_tense_rich",
    "seeded_shuffle",
    "split_sizes",
    "split",
    "sample",
    "label_triples",
    "select_disagreements",
    "REVIEW_COLUMNS",
    "emit_review_sheet",
    "read_review_sheet",
    "write_triples_jsonl",
    "read_triples_jsonl",
]

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class ParallelPair:
    id: str
    fr: str
    en: str


@dataclass(frozen=True)
class ParallelTriple:
    id: str
    fr: str
    en_ref: str
    en_hyp: str
    ref_label: SentenceLabel | None = None
    hyp_label: SentenceLabel | None = None

    @property
    def labeled(self) -> bool:
        return self.ref_label is not None and self.hyp_label is not None


@dataclass
class CleanStats:
    total: int = 0
    kept: int = 0
    dropped_empty: int = 0
    dropped_en_on_fr: int = 0
    dropped_fr_on_en: int = 0

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def _stopword_tokens(text: str) -> list[str]:
    text = re.sub(r"\s+'\s*", "'", text.lower())
    tokens: list[str] = []
    for chunk in re.findall(r"[\w']+", text, re.UNICODE):
        if "'" in chunk:
            head, _, tail = chunk.partition("'")
            tokens.append(head + "'")
            if tail:
                tokens.append(tail)
        else:
            tokens.append(chunk)
    return tokens


def _wrong_language(text: str, own: frozenset[str], other: frozenset[str]) -> bool:
    """Flag a side when the other language's closed-class words outnumber
    its own by factor >= 2 over >= 3 hits."""
    tokens = _stopword_tokens(text)
    own_hits = sum(1 for t in tokens if t in own)
    other_hits = sum(1 for t in tokens if t in other)
    return other_hits >= 3 and other_hits >= 2 * own_hits


def clean(
    pairs: Iterable[ParallelPair], lexicon: MorphLexicon | None = None
) -> tuple[list[ParallelPair], CleanStats]:
    """Drop pairs with an empty side or a side in the wrong language.

    Sentence text is never altered, only membership.
    """
    lexicon = lexicon or default_lexicon()
    en_stop = lexicon.en_stopwords
    fr_stop = lexicon.fr_stopwords
    kept: list[ParallelPair] = []
    stats = CleanStats()
    for pair in pairs:
        stats.total += 1
        if not pair.fr.strip() or not pair.en.strip():
            stats.dropped_empty += 1
            continue
        if _wrong_language(pair.fr, fr_stop, en_stop):
            stats.dropped_en_on_fr += 1
            continue
        if _wrong_language(pair.en, en_stop, fr_stop):
            stats.dropped_fr_on_en += 1
            continue
        kept.append(pair)
        stats.kept += 1
    return kept, stats


def filter_tense_rich(
    pairs: Sequence[ParallelPair], lexicon: MorphLexicon | None = None
) -> list[ParallelPair]:
    """Keep pairs whose English side yields at least one verb chain."""
    lexicon = lexicon or default_lexicon()
    return [p for p in pairs if len(label_sentence(p.en, lexicon)) >= 1]


# ----------------------------------------------------------------- splitting


def _splitmix64(state: int) -> tuple[int, int]:
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


def seeded_shuffle(items: Sequence, seed: int) -> list:
    """Fisher-Yates driven by splitmix64; identical output on every platform.

    The generator is fixed here rather than delegated to the runtime so the
    partition can be reproduced from the seed alone, in any implementation.
    """
    out = list(items)
    state = seed & _MASK64
    for i in range(len(out) - 1, 0, -1):
        state, value = _splitmix64(state)
        j = value % (i + 1)
        out[i], out[j] = out[j], out[i]
    return out


def split_sizes(n: int, ratios: tuple[int, int, int]) -> tuple[int, int, int]:
    """Floor-based sizes; the remainder goes to the training slice."""
    if any(r <= 0 for r in ratios):
        raise ValueError(f"ratios must be positive, got {ratios}")
    total = sum(ratios)
    valid = n * ratios[1] // total
    test = n * ratios[2] // total
    return n - valid - test, valid, test


def split(
    pairs: Sequence[ParallelPair],
    ratios: tuple[int, int, int] = (8, 1, 1),
    seed: int = 0,
) -> tuple[list[ParallelPair], list[ParallelPair], list[ParallelPair]]:
    """Seeded pseudorandom shuffle, then contiguous slicing."""
    if len(pairs) < 10:
        raise ValueError(
            f"corpus too small to split: {len(pairs)} pairs, need at least 10"
        )
    n_train, n_valid, n_test = split_sizes(len(pairs), ratios)
    shuffled = seeded_shuffle(pairs, seed)
    return (
        shuffled[:n_train],
        shuffled[n_train : n_train + n_valid],
        shuffled[n_train + n_valid :],
    )


def sample(
    pairs: Sequence[ParallelPair],
    n: int,
    method: str = "head",
    seed: int = 0,
) -> list[ParallelPair]:
    """Take ``n`` pairs from the head or by seeded random selection."""
    if method == "head":
        return list(pairs[:n])
    if method == "random":
        return seeded_shuffle(pairs, seed)[:n]
    raise ValueError(f"unknown sampling method {method!r}")


# ------------------------------------------------------------------ labeling


def label_triples(
    triples: Sequence[ParallelTriple],
    lexicon: MorphLexicon | None = None,
    shall_as_future: bool = False,
    jobs: int = 1,
) -> list[ParallelTriple]:
    """Fill ref/hyp labels; output order always matches input order."""
    lexicon = lexicon or default_lexicon()

    def work(triple: ParallelTriple) -> ParallelTriple:
        return replace(
            triple,
            ref_label=label_sentence(triple.en_ref, lexicon, shall_as_future),
            hyp_label=label_sentence(triple.en_hyp, lexicon, shall_as_future),
        )

    if jobs <= 1:
        return [work(t) for t in triples]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(work, triples))


def select_disagreements(
    triples: Sequence[ParallelTriple], mode: str = "sequence"
) -> list[ParallelTriple]:
    """Triples whose reference and hypothesis labels differ under ``mode``."""
    for triple in triples:
        if not triple.labeled:
            raise ValueError(f"triple {triple.id} is unlabeled")
    return [
        t
        for t in triples
        if not labels_equal(t.ref_label, t.hyp_label, mode)
    ]


# ---------------------------------------------------------------- sheets, IO

REVIEW_COLUMNS = (
    "id",
    "fr",
    "en_ref",
    "en_hyp",
    "ref_label",
    "hyp_label",
    "tense_ok",
    "meaning_ok",
    "label_ok",
    "correction",
)


def _check_field(value: str, what: str) -> str:
    if "\t" in value or "\n" in value:
        raise ValueError(f"{what} contains a tab or newline: {value!r}")
    return value


def emit_review_sheet(
    triples: Sequence[ParallelTriple], path: str | Path
) -> None:
    """Tab-separated review sheet; the last four columns are left for the
    reviewers."""
    path = Path(path)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\t".join(REVIEW_COLUMNS) + "\n")
        for t in triples:
            if not t.labeled:
                raise ValueError(f"triple {t.id} is unlabeled")
            row = (
                _check_field(t.id, "id"),
                _check_field(t.fr, "fr"),
                _check_field(t.en_ref, "en_ref"),
                _check_field(t.en_hyp, "en_hyp"),
                str(t.ref_label),
                str(t.hyp_label),
                "",
                "",
                "",
                "",
            )
            handle.write("\t".join(row) + "\n")


def read_review_sheet(path: str | Path) -> list[dict[str, str]]:
    """Read back an (optionally reviewer-filled) review sheet."""
    path = Path(path)
    rows: list[dict[str, str]] = []
    with open(path, encoding="utf-8") as handle:
        header = handle.readline().rstrip("\n").split("\t")
        if tuple(header) != REVIEW_COLUMNS:
            raise ValueError(
                f"{path.name}: unexpected header {header!r}"
            )
        for lineno, line in enumerate(handle, start=2):
            fields = line.rstrip("\n").split("\t")
            if len(fields) != len(REVIEW_COLUMNS):
                raise ValueError(
                    f"{path.name}:{lineno}: expected "
                    f"{len(REVIEW_COLUMNS)} columns, got {len(fields)}"
                )
            rows.append(dict(zip(REVIEW_COLUMNS, fields)))
    return rows


def write_triples_jsonl(
    triples: Sequence[ParallelTriple], path: str | Path
) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for t in triples:
            record = {
                "id": t.id,
                "fr": t.fr,
                "en_ref": t.en_ref,
                "en_hyp": t.en_hyp,
                "ref_label": str(t.ref_label) if t.ref_label is not None else None,
                "hyp_label": str(t.hyp_label) if t.hyp_label is not None else None,
            }
            handle.write(json.dumps(record, ensure_ascii=False) + "\n")


def read_triples_jsonl(path: str | Path) -> list[ParallelTriple]:
    triples: list[ParallelTriple] = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{Path(path).name}:{lineno}: {exc}") from exc
            triples.append(
                ParallelTriple(
                    id=str(record["id"]),
                    fr=record["fr"],
                    en_ref=record["en_ref"],
                    en_hyp=record["en_hyp"],
                    ref_label=(
                        SentenceLabel.parse(record["ref_label"])
                        if record.get("ref_label") is not None
                        else None
                    ),
                    hyp_label=(
                        SentenceLabel.parse(record["hyp_label"])
                        if record.get("hyp_label") is not None
                        else None
                    ),
                )
            )
    return triples
