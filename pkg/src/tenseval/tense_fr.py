"""French tense recognition and the French-to-English admissibility map.

Detection is deliberately precision-first: compound tenses ride on the
avoir/être paradigms, simple tenses on distinctive endings, and the present
on closed lists plus subject-verb agreement.  Recall limits (passé simple,
subjunctive) are documented per rule.
"""

from __future__ import annotations

import enum
import re
import unicodedata
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .lexicon import MorphLexicon, default_lexicon
from .tense_en import SentenceLabel, TenseCategory, label_sentence

__all__ = [
    "FrenchTense",
    "ConsistencyVerdict",
    "SurveyResult",
    "label_sentence_fr",
    "admissible_english",
    "consistency_check",
    "tense_survey",
]


class FrenchTense(enum.Enum):
    PRESENT = "Présent"
    IMPARFAIT = "Imparfait"
    PASSE_COMPOSE = "PasséComposé"
    PASSE_SIMPLE = "PasséSimple"
    PASSE_RECENT = "PasséRécent"
    FUTUR_SIMPLE = "FuturSimple"
    FUTUR_PROCHE = "FuturProche"
    PLUS_QUE_PARFAIT = "PlusQueParfait"
    FUTUR_ANTERIEUR = "FuturAntérieur"
    CONDITIONNEL = "Conditionnel"
    SUBJONCTIF = "Subjonctif"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, text: str) -> "FrenchTense":
        """Accent-, case- and punctuation-insensitive tense name lookup."""
        wanted = _fold(text)
        for tense in cls:
            if _fold(tense.value) == wanted:
                return tense
        raise ValueError(
            f"unknown French tense {text!r}; valid names: "
            + ", ".join(t.value for t in cls)
        )


def _fold(text: str) -> str:
    decomposed = unicodedata.normalize("NFD", text.lower())
    stripped = "".join(c for c in decomposed if not unicodedata.combining(c))
    return re.sub(r"[\s\-_']+", "", stripped)


# Table of admissible English categories per French tense.
_ADMISSIBLE: dict[FrenchTense, frozenset[TenseCategory]] = {
    FrenchTense.IMPARFAIT: frozenset({TenseCategory.PAST}),
    FrenchTense.PASSE_SIMPLE: frozenset({TenseCategory.PAST}),
    FrenchTense.PASSE_RECENT: frozenset({TenseCategory.PAST}),
    FrenchTense.PASSE_COMPOSE: frozenset(
        {TenseCategory.PAST, TenseCategory.PRE_PERFECT}
    ),
    FrenchTense.PRESENT: frozenset({TenseCategory.PRESENT}),
    FrenchTense.FUTUR_PROCHE: frozenset(
        {TenseCategory.PRESENT, TenseCategory.FUTURE}
    ),
    FrenchTense.FUTUR_SIMPLE: frozenset({TenseCategory.FUTURE}),
    FrenchTense.PLUS_QUE_PARFAIT: frozenset({TenseCategory.PAS_PERFECT}),
    FrenchTense.FUTUR_ANTERIEUR: frozenset({TenseCategory.FUT_PERFECT}),
    FrenchTense.SUBJONCTIF: frozenset({TenseCategory.MODAL}),
    FrenchTense.CONDITIONNEL: frozenset({TenseCategory.MODAL}),
}

_AUX_TENSE_STANDALONE = {
    "présent": FrenchTense.PRESENT,
    "imparfait": FrenchTense.IMPARFAIT,
    "futur": FrenchTense.FUTUR_SIMPLE,
    "conditionnel": FrenchTense.CONDITIONNEL,
    "passé-simple": FrenchTense.PASSE_SIMPLE,
}
_AUX_TENSE_COMPOUND = {
    "présent": FrenchTense.PASSE_COMPOSE,
    "imparfait": FrenchTense.PLUS_QUE_PARFAIT,
    "futur": FrenchTense.FUTUR_ANTERIEUR,
}

_ELISION_PREFIXES = (
    "jusqu", "lorsqu", "puisqu", "quoiqu", "qu",
    "l", "d", "j", "n", "s", "c", "m", "t",
)
_INVERSION = re.compile(
    r"^(?P<core>.+?)(?:-t)?-(?P<pronoun>il|elle|on|ils|elles|je|tu|nous|vous|ce)$"
)
_INFINITIVE_ENDINGS = ("er", "ir", "re", "oir")
_PUNCT_RE = re.compile(r"^[\.,;:!\?\(\)\[\]«»\"“”…]+$")

# Subject pronouns usable for present-tense agreement, keyed by the endings
# they license.  "ce" is excluded: it doubles as a determiner.
_AGREEMENT = {
    "je": ("e", "s", "x"),
    "j'": ("e", "s", "x"),
    "tu": ("s",),
    "il": ("e", "t", "d"),
    "elle": ("e", "t", "d"),
    "on": ("e", "t", "d"),
    "c'": ("e", "t", "d"),
    "cela": ("e", "t", "d"),
    "ça": ("e", "t", "d"),
    "qui": ("e", "t", "d"),
    "nous": ("ons",),
    "vous": ("ez",),
    "ils": ("ent",),
    "elles": ("ent",),
}


@dataclass(frozen=True)
class _FrToken:
    surface: str
    lower: str
    capitalized: bool


def _normalize(text: str) -> list[_FrToken]:
    """Join Europarl-style detached apostrophes, then split elisions and
    subject-inversion clitics into separate tokens."""
    text = re.sub(r"\s+'\s*", "'", text)
    text = re.sub(r"'\s+", "'", text)
    tokens: list[_FrToken] = []
    for chunk in text.split():
        if _PUNCT_RE.match(chunk):
            continue
        chunk = chunk.strip("\".,;:!?()[]«»“”…")
        if not chunk:
            continue
        parts: list[str] = []
        rest = chunk
        while "'" in rest:
            head, _, tail = rest.partition("'")
            if head.lower() in _ELISION_PREFIXES and tail:
                parts.append(head + "'")
                rest = tail
            else:
                break
        if rest:
            inv = _INVERSION.match(rest)
            if inv and len(inv.group("core")) >= 3:
                parts.extend([inv.group("core"), inv.group("pronoun")])
            else:
                parts.append(rest)
        for idx, part in enumerate(parts):
            first_word = not tokens and idx == 0
            tokens.append(
                _FrToken(
                    part,
                    part.lower(),
                    part[:1].isupper() and not first_word,
                )
            )
    return tokens


def _suffix_tenses(lexicon: MorphLexicon, token: _FrToken) -> dict[str, str]:
    """tense -> matched suffix, for non-capitalized candidate tokens."""
    if token.capitalized:
        return {}
    out: dict[str, str] = {}
    for analysis in lexicon.analyze_suffix(token.lower, "fr"):
        tense = suffix = None
        for feat in analysis.features:
            if feat.startswith("tense="):
                tense = feat[len("tense="):]
            elif feat.startswith("suffix="):
                suffix = feat[len("suffix="):]
        if tense:
            out[tense] = suffix or ""
    return out


def _is_participle(lexicon: MorphLexicon, token: _FrToken) -> bool:
    if token.capitalized:
        return False
    if token.lower in lexicon.fr_irregular_pp:
        return True
    return "participe" in _suffix_tenses(lexicon, token)


def _is_infinitive(token: _FrToken) -> bool:
    low = token.lower
    return len(low) >= 4 and any(low.endswith(e) for e in _INFINITIVE_ENDINGS)


def _find_ahead(
    tokens: Sequence[_FrToken],
    start: int,
    lexicon: MorphLexicon,
    predicate,
    window: int = 3,
) -> int | None:
    seen = 0
    for j in range(start + 1, len(tokens)):
        if seen >= window:
            break
        tok = tokens[j]
        if tok.lower in lexicon.fr_adverbs or tok.lower in lexicon.fr_clitics:
            seen += 1
            continue
        return j if predicate(tok) else None
    return None


# First/second-person endings collide with common nouns and adjectives
# ("irlandais", "bras"), so they demand their subject pronoun nearby;
# third-person endings are distinctive enough to stand alone.
_PERSON_GATES = {
    "ais": ("je", "j'", "tu"),
    "rais": ("je", "j'", "tu"),
    "rai": ("je", "j'"),
    "ras": ("tu",),
    "ions": ("nous",),
    "rions": ("nous",),
    "rons": ("nous",),
    "iez": ("vous",),
    "riez": ("vous",),
    "rez": ("vous",),
}


def _person_gate(suffix: str, subject: str | None) -> bool:
    wanted = _PERSON_GATES.get(suffix)
    return wanted is None or subject in wanted


def _subject_ahead_of(
    tokens: Sequence[_FrToken], i: int, lexicon: MorphLexicon, window: int = 3
) -> str | None:
    """Nearest subject pronoun to the left, skipping clitics and adverbs."""
    steps = 0
    for j in range(i - 1, -1, -1):
        if steps >= window:
            break
        low = tokens[j].lower
        if low in lexicon.fr_clitics or low in lexicon.fr_adverbs:
            steps += 1
            continue
        return low if low in _AGREEMENT else None
    return None


def label_sentence_fr(
    text: str, lexicon: MorphLexicon | None = None
) -> list[FrenchTense]:
    """Detected French tense structures, in textual order.

    Empty detection is allowed (e.g. verbless interjections).
    """
    lexicon = lexicon or default_lexicon()
    tokens = _normalize(text)
    consumed = [False] * len(tokens)
    found: list[FrenchTense] = []

    for i, token in enumerate(tokens):
        if consumed[i]:
            continue
        low = token.lower

        # Compound tenses on avoir/être, otherwise the auxiliary stands alone.
        if low in lexicon.fr_avoir_etre:
            aux = lexicon.fr_avoir_etre[low]
            tense = aux.tense or "présent"
            pp = (
                _find_ahead(
                    tokens, i, lexicon, lambda t: _is_participle(lexicon, t)
                )
                if tense in _AUX_TENSE_COMPOUND
                else None
            )
            if pp is not None:
                consumed[pp] = True
                found.append(_AUX_TENSE_COMPOUND[tense])
            else:
                found.append(_AUX_TENSE_STANDALONE[tense])
            continue

        # Futur proche / passé récent on aller/venir in the present.
        if low in lexicon.fr_aller_venir:
            lemma = lexicon.fr_aller_venir[low]
            if lemma == "aller":
                inf = _find_ahead(tokens, i, lexicon, _is_infinitive, window=2)
                if inf is not None:
                    consumed[inf] = True
                    found.append(FrenchTense.FUTUR_PROCHE)
                else:
                    found.append(FrenchTense.PRESENT)
            else:
                nxt = i + 1
                if (
                    nxt < len(tokens)
                    and tokens[nxt].lower in ("de", "d'")
                    and nxt + 1 < len(tokens)
                    and _is_infinitive(tokens[nxt + 1])
                ):
                    consumed[nxt + 1] = True
                    found.append(FrenchTense.PASSE_RECENT)
                else:
                    found.append(FrenchTense.PRESENT)
            continue

        # Distinctive subjunctive forms, gated on a preceding que/qu'.
        if low in lexicon.fr_subjunctive:
            que = any(
                tokens[j].lower in ("que", "qu'")
                for j in range(max(0, i - 3), i)
            )
            if que:
                found.append(FrenchTense.SUBJONCTIF)
                continue

        # Irregular present forms; a determiner right before means a noun
        # reading ("le fait"), a subjunctive auxiliary a participle one
        # ("soit fait"), so skip those.
        if low in lexicon.fr_present and not token.capitalized:
            prev = tokens[i - 1].lower if i > 0 else None
            if (
                prev not in lexicon.fr_determiners
                and prev not in lexicon.fr_subjunctive
            ):
                found.append(FrenchTense.PRESENT)
                continue

        # Ending-based detection: conditionnel > futur > imparfait > passé
        # simple.  Person-marked endings demand their subject pronoun.
        matches = _suffix_tenses(lexicon, token)
        subject = _subject_ahead_of(tokens, i, lexicon)
        if "conditionnel" in matches:
            if _person_gate(matches["conditionnel"], subject):
                found.append(FrenchTense.CONDITIONNEL)
                continue
        if "futur" in matches:
            suffix = matches["futur"]
            ok = _person_gate(suffix, subject)
            if suffix == "rons":
                ok = ok and low.endswith(("erons", "irons"))
            elif suffix == "rez":
                ok = ok and low.endswith(("erez", "irez"))
            if ok:
                found.append(FrenchTense.FUTUR_SIMPLE)
                continue
        if "imparfait" in matches:
            if _person_gate(matches["imparfait"], subject):
                found.append(FrenchTense.IMPARFAIT)
                continue
        if "passé-simple" in matches:
            suffix = matches["passé-simple"]
            if suffix in ("irent", "èrent"):
                found.append(FrenchTense.PASSE_SIMPLE)
                continue
            prev = tokens[i - 1] if i > 0 else None
            if subject in ("il", "elle", "on", "qui") or (
                prev is not None and prev.capitalized
            ):
                found.append(FrenchTense.PASSE_SIMPLE)
                continue

        # Present-tense fallback through subject-verb agreement.  A
        # determiner right before means a noun phrase, not a verb.
        prev_low = tokens[i - 1].lower if i > 0 else None
        if (
            subject is not None
            and prev_low not in lexicon.fr_determiners
            and not token.capitalized
            and len(low) >= 3
            and low.replace("-", "").isalpha()
            and low not in lexicon.fr_nonverb
            and low not in lexicon.fr_determiners
            and low not in lexicon.fr_clitics
            and low not in lexicon.fr_adverbs
            and low not in lexicon.fr_pronouns
            and "participe" not in matches
            and low.endswith(_AGREEMENT[subject])
        ):
            found.append(FrenchTense.PRESENT)

    return found


def admissible_english(fr: FrenchTense) -> frozenset[TenseCategory]:
    """English categories a French tense may legitimately translate into."""
    return _ADMISSIBLE[fr]


@dataclass(frozen=True)
class ConsistencyVerdict:
    status: str  # "consistent" | "inconsistent" | "unknown"
    detected: tuple[FrenchTense, ...] = ()
    uncovered: tuple[FrenchTense, ...] = ()

    def __bool__(self) -> bool:
        return self.status == "consistent"


def consistency_check(
    fr_text: str,
    en_label: SentenceLabel,
    lexicon: MorphLexicon | None = None,
) -> ConsistencyVerdict:
    """Does the English label cover every detected French tense?

    Bag semantics: each English structure can satisfy one French occurrence.
    ``unknown`` when no French tense was detected.
    """
    detected = tuple(label_sentence_fr(fr_text, lexicon))
    if not detected:
        return ConsistencyVerdict("unknown")
    available = list(en_label.categories)
    uncovered: list[FrenchTense] = []
    for fr in detected:
        admissible = admissible_english(fr)
        match = next((c for c in available if c in admissible), None)
        if match is None:
            uncovered.append(fr)
        else:
            available.remove(match)
    if uncovered:
        return ConsistencyVerdict("inconsistent", detected, tuple(uncovered))
    return ConsistencyVerdict("consistent", detected)


@dataclass
class SurveyResult:
    """Distribution of English counterpart categories for one French tense."""

    target: FrenchTense
    occurrences: int = 0
    counts: dict[TenseCategory, int] = field(default_factory=dict)

    @property
    def proportions(self) -> dict[TenseCategory, float]:
        total = sum(self.counts.values())
        if total == 0:
            return {}
        return {cat: n / total for cat, n in self.counts.items()}


def tense_survey(
    pairs: Iterable[tuple[str, str]],
    target: FrenchTense,
    lexicon: MorphLexicon | None = None,
) -> SurveyResult:
    """Survey the English counterparts of every occurrence of ``target``.

    Counterparts align by occurrence position; when the French and English
    structure counts differ, the whole English label is recorded instead.
    """
    result = SurveyResult(target)
    for fr_text, en_text in pairs:
        detections = label_sentence_fr(fr_text, lexicon)
        if target not in detections:
            continue
        en_cats = label_sentence(en_text, lexicon).categories
        aligned = len(detections) == len(en_cats)
        for pos, fr in enumerate(detections):
            if fr is not target:
                continue
            result.occurrences += 1
            if aligned:
                recorded = [en_cats[pos]]
            else:
                recorded = list(en_cats)
            for cat in recorded:
                result.counts[cat] = result.counts.get(cat, 0) + 1
    return result
