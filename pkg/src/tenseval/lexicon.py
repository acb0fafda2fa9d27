"""Closed-class and morphological resources backing the tense taggers.

All lexical knowledge lives in plain-text, tab-separated data files under
``tenseval/data`` so that coverage changes never require code changes.  The
loaded tables are immutable and safe for unrestricted concurrent reads.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterator, Mapping

__all__ = [
    "LexiconError",
    "MorphAnalysis",
    "SuffixAnalysis",
    "MorphLexicon",
    "default_lexicon",
]

VOWELS = "aeiou"

# Tables whose surfaces never receive an English suffix analysis on top of
# their closed-class reading.
_EN_CLOSED_TABLES = (
    "en_aux",
    "en_modal",
    "en_future",
    "en_negation",
    "en_interrupter",
    "en_pronoun",
    "en_wh",
)


class LexiconError(ValueError):
    """A lexicon data file is malformed or inconsistent."""


@dataclass(frozen=True)
class MorphAnalysis:
    """One reading of a surface form taken from a lexicon table."""

    kind: str
    lemma: str
    features: frozenset[str] = frozenset()

    def has(self, feature: str) -> bool:
        return feature in self.features

    @property
    def tense(self) -> str | None:
        """Value of a ``tense=...`` feature, for the French tables."""
        for f in self.features:
            if f.startswith("tense="):
                return f[len("tense="):]
        return None


@dataclass(frozen=True)
class SuffixAnalysis:
    """A candidate reading derived from a suffix rule; context decides."""

    lemma: str
    features: frozenset[str]
    licensed: bool = True


@dataclass(frozen=True)
class IrregularVerb:
    base: str
    past: str
    participle: str

    @property
    def ambiguous(self) -> bool:
        return self.past == self.participle


def _parse_features(raw: str) -> frozenset[str]:
    if raw == "-" or not raw:
        return frozenset()
    return frozenset(part.strip() for part in raw.split(";") if part.strip())


def _feature_value(features: frozenset[str], key: str) -> str | None:
    prefix = key + "="
    for f in features:
        if f.startswith(prefix):
            return f[len(prefix):]
    return None


def _iter_rows(path: Path) -> Iterator[tuple[int, str, str, frozenset[str]]]:
    """Yield (lineno, surface, table, features); reject malformed lines."""
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            stripped = line.rstrip("\n")
            if not stripped.strip() or stripped.lstrip().startswith("#"):
                continue
            fields = stripped.split("\t")
            if len(fields) != 3:
                raise LexiconError(
                    f"{path.name}:{lineno}: expected 3 tab-separated fields, "
                    f"got {len(fields)}"
                )
            surface, table, features = fields
            if not surface or not table:
                raise LexiconError(
                    f"{path.name}:{lineno}: empty surface or table name"
                )
            yield lineno, surface, table, _parse_features(features)


@dataclass(frozen=True)
class MorphLexicon:
    """Immutable bundle of every table the annotators consult."""

    version: str
    en_auxiliaries: Mapping[str, frozenset[MorphAnalysis]]
    en_modals: frozenset[str]
    en_future_aux: frozenset[str]
    en_irregulars: Mapping[str, IrregularVerb]
    en_irregular_forms: Mapping[str, frozenset[MorphAnalysis]]
    en_verb_bases: frozenset[str]
    en_negation: frozenset[str]
    en_interrupters: frozenset[str]
    en_pronouns: frozenset[str]
    en_wh_words: frozenset[str]
    fr_avoir_etre: Mapping[str, MorphAnalysis]
    fr_aller_venir: Mapping[str, str]
    fr_endings: Mapping[str, tuple[str, ...]]
    fr_irregular_pp: Mapping[str, str]
    fr_subjunctive: Mapping[str, str]
    fr_present: Mapping[str, str]
    fr_pronouns: frozenset[str]
    fr_clitics: frozenset[str]
    fr_adverbs: frozenset[str]
    fr_determiners: frozenset[str]
    fr_nonverb: frozenset[str]
    en_stopwords: frozenset[str]
    fr_stopwords: frozenset[str]

    # ------------------------------------------------------------------ load

    @classmethod
    def load(cls, data_dir: str | Path) -> "MorphLexicon":
        data_dir = Path(data_dir)
        version_file = data_dir / "VERSION"
        version = (
            version_file.read_text(encoding="utf-8").strip()
            if version_file.exists()
            else "unversioned"
        )

        aux: dict[str, set[MorphAnalysis]] = {}
        modals: set[str] = set()
        future: set[str] = set()
        irregulars: dict[str, IrregularVerb] = {}
        verb_bases: set[str] = set()
        negation: set[str] = set()
        interrupters: set[str] = set()
        pronouns: set[str] = set()
        wh_words: set[str] = set()
        fr_aux: dict[str, MorphAnalysis] = {}
        fr_aller_venir: dict[str, str] = {}
        fr_endings: dict[str, list[str]] = {}
        fr_irregular_pp: dict[str, str] = {}
        fr_subjunctive: dict[str, str] = {}
        fr_present: dict[str, str] = {}
        fr_pronouns: set[str] = set()
        fr_clitics: set[str] = set()
        fr_adverbs: set[str] = set()
        fr_determiners: set[str] = set()
        fr_nonverb: set[str] = set()
        en_stop: set[str] = set()
        fr_stop: set[str] = set()

        for path in sorted(data_dir.glob("*.tsv")):
            for lineno, surface, table, feats in _iter_rows(path):
                if table == "en_aux":
                    lemma = _feature_value(feats, "lemma")
                    if not lemma:
                        raise LexiconError(
                            f"{path.name}:{lineno}: en_aux entry needs lemma="
                        )
                    aux.setdefault(surface, set()).add(
                        MorphAnalysis("en_aux", lemma, feats)
                    )
                elif table == "en_modal":
                    modals.add(surface)
                elif table == "en_future":
                    future.add(surface)
                elif table == "en_irregular":
                    past = _feature_value(feats, "past")
                    participle = _feature_value(feats, "participle")
                    if not past or not participle:
                        raise LexiconError(
                            f"{path.name}:{lineno}: irregular verb needs "
                            "past= and participle="
                        )
                    irregulars[surface] = IrregularVerb(surface, past, participle)
                elif table == "en_verb_base":
                    verb_bases.add(surface)
                elif table == "en_negation":
                    negation.add(surface)
                elif table == "en_interrupter":
                    interrupters.add(surface)
                elif table == "en_pronoun":
                    pronouns.add(surface)
                elif table == "en_wh":
                    wh_words.add(surface)
                elif table == "fr_aux":
                    lemma = _feature_value(feats, "lemma")
                    tense = _feature_value(feats, "tense")
                    if not lemma or not tense:
                        raise LexiconError(
                            f"{path.name}:{lineno}: fr_aux entry needs "
                            "lemma= and tense="
                        )
                    fr_aux[surface] = MorphAnalysis("fr_aux", lemma, feats)
                elif table == "fr_aller_venir":
                    lemma = _feature_value(feats, "lemma")
                    if lemma not in ("aller", "venir"):
                        raise LexiconError(
                            f"{path.name}:{lineno}: fr_aller_venir lemma must "
                            "be aller or venir"
                        )
                    fr_aller_venir[surface] = lemma
                elif table == "fr_ending":
                    tense = _feature_value(feats, "tense")
                    if not tense or not surface.startswith("-"):
                        raise LexiconError(
                            f"{path.name}:{lineno}: fr_ending needs a leading "
                            "'-' suffix and tense="
                        )
                    fr_endings.setdefault(tense, []).append(surface[1:])
                elif table == "fr_irregular_pp":
                    fr_irregular_pp[surface] = _feature_value(feats, "lemma") or surface
                elif table == "fr_subjunctive":
                    fr_subjunctive[surface] = _feature_value(feats, "lemma") or surface
                elif table == "fr_present":
                    fr_present[surface] = _feature_value(feats, "lemma") or surface
                elif table == "fr_pronoun":
                    fr_pronouns.add(surface)
                elif table == "fr_clitic":
                    fr_clitics.add(surface)
                elif table == "fr_adverb":
                    fr_adverbs.add(surface)
                elif table == "fr_determiner":
                    fr_determiners.add(surface)
                elif table == "fr_nonverb":
                    fr_nonverb.add(surface)
                elif table == "en_stop":
                    en_stop.add(surface)
                elif table == "fr_stop":
                    fr_stop.add(surface)
                else:
                    raise LexiconError(
                        f"{path.name}:{lineno}: unknown table {table!r}"
                    )

        for base, verb in irregulars.items():
            if not verb.past or not verb.participle:
                raise LexiconError(f"irregular verb {base!r} has empty forms")

        irregular_forms: dict[str, set[MorphAnalysis]] = {}

        def add_form(surface: str, analysis: MorphAnalysis) -> None:
            irregular_forms.setdefault(surface, set()).add(analysis)

        for verb in irregulars.values():
            add_form(
                verb.base,
                MorphAnalysis("en_irregular", verb.base, frozenset({"base"})),
            )
            add_form(
                verb.past,
                MorphAnalysis(
                    "en_irregular", verb.base, frozenset({"finite", "past"})
                ),
            )
            add_form(
                verb.participle,
                MorphAnalysis(
                    "en_irregular", verb.base, frozenset({"participle", "past"})
                ),
            )

        return cls(
            version=version,
            en_auxiliaries={k: frozenset(v) for k, v in aux.items()},
            en_modals=frozenset(modals),
            en_future_aux=frozenset(future),
            en_irregulars=dict(irregulars),
            en_irregular_forms={
                k: frozenset(v) for k, v in irregular_forms.items()
            },
            en_verb_bases=frozenset(verb_bases) | frozenset(irregulars),
            en_negation=frozenset(negation),
            en_interrupters=frozenset(interrupters),
            en_pronouns=frozenset(pronouns),
            en_wh_words=frozenset(wh_words),
            fr_avoir_etre=dict(fr_aux),
            fr_aller_venir=dict(fr_aller_venir),
            fr_endings={k: tuple(v) for k, v in fr_endings.items()},
            fr_irregular_pp=dict(fr_irregular_pp),
            fr_subjunctive=dict(fr_subjunctive),
            fr_present=dict(fr_present),
            fr_pronouns=frozenset(fr_pronouns),
            fr_clitics=frozenset(fr_clitics),
            fr_adverbs=frozenset(fr_adverbs),
            fr_determiners=frozenset(fr_determiners),
            fr_nonverb=frozenset(fr_nonverb),
            en_stopwords=frozenset(en_stop),
            fr_stopwords=frozenset(fr_stop),
        )

    # --------------------------------------------------------------- lookups

    def lookup(self, token: str) -> frozenset[MorphAnalysis]:
        """All closed-class analyses of a lowercase surface form.

        Total: unknown tokens yield the empty set.
        """
        found: set[MorphAnalysis] = set()
        found.update(self.en_auxiliaries.get(token, ()))
        if token in self.en_modals:
            found.add(MorphAnalysis("en_modal", token))
        if token in self.en_future_aux:
            found.add(MorphAnalysis("en_future", token))
        found.update(self.en_irregular_forms.get(token, ()))
        if token in self.en_negation:
            found.add(MorphAnalysis("en_negation", token))
        if token in self.en_interrupters:
            found.add(MorphAnalysis("en_interrupter", token))
        if token in self.en_pronouns:
            found.add(MorphAnalysis("en_pronoun", token))
        if token in self.en_wh_words:
            found.add(MorphAnalysis("en_wh", token))
        if token in self.fr_avoir_etre:
            found.add(self.fr_avoir_etre[token])
        if token in self.fr_aller_venir:
            found.add(MorphAnalysis("fr_aller_venir", self.fr_aller_venir[token]))
        if token in self.fr_subjunctive:
            found.add(MorphAnalysis("fr_subjunctive", self.fr_subjunctive[token]))
        if token in self.fr_present:
            found.add(MorphAnalysis("fr_present", self.fr_present[token]))
        if token in self.fr_irregular_pp:
            found.add(
                MorphAnalysis("fr_irregular_pp", self.fr_irregular_pp[token])
            )
        return frozenset(found)

    def is_chain_interrupter(self, token: str) -> bool:
        """Negators/adverbs tolerated inside a verb chain; '-ly' counts."""
        if token in self.en_negation or token in self.en_interrupters:
            return True
        return len(token) > 3 and token.endswith("ly")

    # -------------------------------------------------------- suffix analysis

    def analyze_suffix(self, token: str, language: str) -> frozenset[SuffixAnalysis]:
        """Candidate analyses from suffix shape alone; context decides later."""
        if not token:
            raise ValueError("token must be nonempty")
        if language == "en":
            return self._analyze_suffix_en(token)
        if language == "fr":
            return self._analyze_suffix_fr(token)
        raise ValueError(f"unknown language {language!r}")

    def _recover_base(self, candidates: list[str]) -> str | None:
        for cand in candidates:
            if len(cand) >= 2 and cand in self.en_verb_bases:
                return cand
        return None

    def _analyze_suffix_en(self, token: str) -> frozenset[SuffixAnalysis]:
        for table in (self.en_auxiliaries, self.en_irregular_forms):
            if token in table:
                return frozenset()
        if (
            token in self.en_modals
            or token in self.en_future_aux
            or token in self.en_negation
            or token in self.en_interrupters
            or token in self.en_pronouns
            or token in self.en_wh_words
        ):
            return frozenset()

        out: set[SuffixAnalysis] = set()

        def doubled(stem: str) -> str | None:
            if len(stem) >= 3 and stem[-1] == stem[-2] and stem[-1] not in VOWELS:
                return stem[:-1]
            return None

        if token.endswith("ied") and len(token) >= 5:
            base = token[:-3] + "y"
            lemma = base if base in self.en_verb_bases else None
            for feats in ({"finite", "past"}, {"participle", "past"}):
                out.add(
                    SuffixAnalysis(lemma or base, frozenset(feats), lemma is not None)
                )
        elif token.endswith("ed") and len(token) >= 4:
            stem = token[:-2]
            candidates = [stem, token[:-1]]
            undoubled = doubled(stem)
            if undoubled:
                candidates.append(undoubled)
            lemma = self._recover_base(candidates)
            for feats in ({"finite", "past"}, {"participle", "past"}):
                out.add(
                    SuffixAnalysis(lemma or stem, frozenset(feats), lemma is not None)
                )

        if token.endswith("ing") and len(token) >= 5:
            stem = token[:-3]
            candidates = [stem, stem + "e"]
            undoubled = doubled(stem)
            if undoubled:
                candidates.append(undoubled)
            lemma = self._recover_base(candidates)
            out.add(
                SuffixAnalysis(
                    lemma or stem,
                    frozenset({"participle", "present"}),
                    lemma is not None,
                )
            )

        if token.endswith("ies") and len(token) >= 5:
            base = token[:-3] + "y"
            lemma = base if base in self.en_verb_bases else None
            out.add(
                SuffixAnalysis(
                    lemma or base, frozenset({"finite", "present"}), lemma is not None
                )
            )
        elif token.endswith("s") and not token.endswith("ss") and len(token) >= 3:
            candidates = [token[:-1]]
            if token.endswith("es"):
                candidates.insert(0, token[:-2])
            lemma = self._recover_base(candidates)
            out.add(
                SuffixAnalysis(
                    lemma or token[:-1],
                    frozenset({"finite", "present"}),
                    lemma is not None,
                )
            )
        return frozenset(out)

    def _analyze_suffix_fr(self, token: str) -> frozenset[SuffixAnalysis]:
        if token in self.fr_nonverb or token in self.fr_avoir_etre:
            return frozenset()
        if token in self.fr_irregular_pp:
            return frozenset(
                {
                    SuffixAnalysis(
                        self.fr_irregular_pp[token],
                        frozenset({"tense=participe"}),
                    )
                }
            )

        matches: dict[str, str] = {}
        for tense, suffixes in self.fr_endings.items():
            for suffix in suffixes:
                if not token.endswith(suffix):
                    continue
                stem = token[: -len(suffix)]
                min_stem = 3 if tense == "passé-simple" else 2
                if len(stem) < min_stem:
                    continue
                prev = matches.get(tense)
                if prev is None or len(suffix) > len(prev):
                    matches[tense] = suffix

        # Drop readings whose suffix is properly contained in another match:
        # "finira" is futur (-ra), not also passé simple (-a).
        out: set[SuffixAnalysis] = set()
        for tense, suffix in matches.items():
            shadowed = any(
                other != suffix and other.endswith(suffix)
                for other in matches.values()
            )
            if not shadowed:
                out.add(
                    SuffixAnalysis(
                        token,
                        frozenset({f"tense={tense}", f"suffix={suffix}"}),
                    )
                )
        return frozenset(out)


def _packaged_data_dir() -> Path:
    return Path(str(importlib.resources.files("tenseval") / "data"))


@lru_cache(maxsize=4)
def _load_cached(data_dir: str) -> MorphLexicon:
    return MorphLexicon.load(Path(data_dir))


def default_lexicon(data_dir: str | Path | None = None) -> MorphLexicon:
    """The packaged lexicon, loaded once per directory and shared."""
    directory = Path(data_dir) if data_dir is not None else _packaged_data_dir()
    return _load_cached(str(directory))
