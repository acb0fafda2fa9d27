"""Tokenization and morphosyntactic tagging of English sentences.

The heuristic annotator favours precision on verb chains over recall on
exotic constructions; gold annotations can be supplied instead through
:func:`read_annotated`, which bypasses the heuristics entirely.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .lexicon import MorphLexicon, default_lexicon

__all__ = [
    "Token",
    "AnnotatedToken",
    "TAGS",
    "AnnotationError",
    "tokenize",
    "detokenize",
    "annotate",
    "read_annotated",
    "write_annotated",
]

# Tag inventory; these spellings are also the gold-annotation file format.
TAG_FINITE_PAST = "finite-past"
TAG_FINITE_PRESENT = "finite-present"
TAG_PARTICIPLE_PAST = "participle-past"
TAG_PARTICIPLE_PRESENT = "participle-present"
TAG_BASE = "base"
TAG_MODAL = "modal"
TAG_FUTURE = "future-aux"
TAG_INF_MARKER = "inf-marker"
TAG_NEGATION = "negation"
TAG_ADVERB = "chain-adverb"
TAG_GOING_TO = "going-to"
TAG_OTHER = "other"

TAGS = frozenset(
    {
        TAG_FINITE_PAST,
        TAG_FINITE_PRESENT,
        TAG_PARTICIPLE_PAST,
        TAG_PARTICIPLE_PRESENT,
        TAG_BASE,
        TAG_MODAL,
        TAG_FUTURE,
        TAG_INF_MARKER,
        TAG_NEGATION,
        TAG_ADVERB,
        TAG_GOING_TO,
        TAG_OTHER,
    }
)

VERB_TAGS = frozenset(
    {
        TAG_FINITE_PAST,
        TAG_FINITE_PRESENT,
        TAG_PARTICIPLE_PAST,
        TAG_PARTICIPLE_PRESENT,
        TAG_BASE,
        TAG_MODAL,
        TAG_FUTURE,
        TAG_GOING_TO,
    }
)

# How far ambiguity resolution may look around a token.
CHAIN_WINDOW = 3

_PUNCT = set(".,;:!?()[]{}\"“”«»…‘’`")
_CONTRACTION_MAP = {
    "'ll": "will",
    "'ve": "have",
    "n't": "not",
    "'re": "are",
    "'m": "am",
    "'s": "'s",  # ambiguous, resolved during annotation
    "'d": "'d",  # ambiguous, resolved during annotation
}
_SPECIAL_CHUNKS = {
    "won't": ("will", "not"),
    "can't": ("can", "not"),
    "shan't": ("shall", "not"),
    "cannot": ("can", "not"),
}

# Subjects licensing a bare base form as a finite present (1st/2nd person
# and plural subjects take no -s).
_BASE_SUBJECTS = frozenset({"i", "you", "we", "they", "who"})


class AnnotationError(ValueError):
    """Raised for malformed gold-annotation files."""


@dataclass(frozen=True)
class Token:
    surface: str
    lower: str
    index: int
    span: tuple[int, int]


@dataclass(frozen=True)
class AnnotatedToken:
    token: Token
    tag: str
    lemma: str

    @property
    def surface(self) -> str:
        return self.token.surface

    @property
    def lower(self) -> str:
        return self.token.lower


# --------------------------------------------------------------------- tokens


def _split_chunk(chunk: str, start: int) -> list[tuple[str, tuple[int, int]]]:
    """Split one whitespace-delimited chunk into surface/span pieces."""
    lower = chunk.lower()
    if lower in _CONTRACTION_MAP:
        mapped = _CONTRACTION_MAP[lower]
        return [(mapped, (start, start + len(chunk)))]
    if lower in _SPECIAL_CHUNKS:
        first, second = _SPECIAL_CHUNKS[lower]
        cut = start + 2
        return [(first, (start, cut)), (second, (cut, start + len(chunk)))]

    pieces: list[tuple[str, tuple[int, int]]] = []
    end = start + len(chunk)

    # Leading punctuation becomes its own tokens.
    while chunk and chunk[0] in _PUNCT | {"'"}:
        pieces.append((chunk[0], (start, start + 1)))
        chunk = chunk[1:]
        start += 1
    # Trailing punctuation, collected in reverse.
    trailing: list[tuple[str, tuple[int, int]]] = []
    while chunk and chunk[-1] in _PUNCT | {"'"}:
        trailing.append((chunk[-1], (end - 1, end)))
        chunk = chunk[:-1]
        end -= 1
    if chunk:
        lower = chunk.lower()
        if lower in _SPECIAL_CHUNKS:
            first, second = _SPECIAL_CHUNKS[lower]
            cut = start + 2
            pieces.append((first, (start, cut)))
            pieces.append((second, (cut, end)))
        else:
            suffix = next(
                (s for s in ("n't", "'ll", "'ve", "'re", "'m", "'s", "'d")
                 if lower.endswith(s) and len(chunk) > len(s)),
                None,
            )
            if suffix:
                cut = end - len(suffix)
                pieces.append((chunk[: -len(suffix)], (start, cut)))
                pieces.append((_CONTRACTION_MAP[suffix], (cut, end)))
            else:
                pieces.append((chunk, (start, end)))
    pieces.extend(reversed(trailing))
    return pieces


def tokenize(text: str) -> list[Token]:
    """Whitespace/punctuation tokenizer with contraction expansion.

    'll/'ve/n't/'re/'m are expanded to their full forms; 's and 'd are kept
    as ambiguous tokens for :func:`annotate` to resolve.  Empty input yields
    an empty list.
    """
    tokens: list[Token] = []
    for match in re.finditer(r"\S+", text):
        for surface, span in _split_chunk(match.group(), match.start()):
            tokens.append(Token(surface, surface.lower(), len(tokens), span))
    return tokens


def detokenize(tokens: Sequence[Token]) -> str:
    return " ".join(t.surface for t in tokens)


# ------------------------------------------------------------------ annotate


def _aux_in_window(resolved: list[AnnotatedToken], i: int) -> bool:
    """Is a HAVE/BE auxiliary within the chain window before position i?"""
    for j in range(max(0, i - CHAIN_WINDOW), i):
        a = resolved[j]
        if a.lemma in ("have", "be") and a.tag in (
            TAG_FINITE_PAST,
            TAG_FINITE_PRESENT,
            TAG_PARTICIPLE_PAST,
            TAG_PARTICIPLE_PRESENT,
            TAG_BASE,
        ):
            return True
    return False


def _finite_anchor_in_window(resolved: list[AnnotatedToken], i: int) -> bool:
    for j in range(max(0, i - CHAIN_WINDOW), i):
        if resolved[j].tag in (TAG_MODAL, TAG_FUTURE, TAG_FINITE_PAST,
                               TAG_FINITE_PRESENT):
            return True
    return False


def _subject_before(
    tokens: Sequence[Token],
    i: int,
    lexicon: MorphLexicon,
    subjects: frozenset[str],
) -> bool:
    """Scan left past commas and chain adverbs for a subject pronoun."""
    j = i - 1
    steps = 0
    while j >= 0 and steps < CHAIN_WINDOW + 1:
        low = tokens[j].lower
        if low == "," or lexicon.is_chain_interrupter(low):
            j -= 1
            steps += 1
            continue
        return low in subjects
    return False


def _participle_candidate_ahead(
    tokens: Sequence[Token], i: int, lexicon: MorphLexicon
) -> bool:
    for j in range(i + 1, min(len(tokens), i + 1 + CHAIN_WINDOW)):
        low = tokens[j].lower
        if lexicon.is_chain_interrupter(low):
            continue
        for analysis in lexicon.lookup(low):
            if analysis.kind in ("en_aux", "en_irregular") and analysis.has(
                "participle"
            ) and analysis.has("past"):
                return True
        for sfx in lexicon.analyze_suffix(low, "en"):
            if "participle" in sfx.features and "past" in sfx.features:
                return True
        return False
    return False


def _marked_verb_ahead(
    tokens: Sequence[Token], i: int, lexicon: MorphLexicon
) -> bool:
    """A participle/adverb/marked verb form in the lookahead window.

    Bare base forms do not count: after a possessive they are normally the
    possessed noun ("Europe's position").
    """
    for j in range(i + 1, min(len(tokens), i + 1 + CHAIN_WINDOW)):
        low = tokens[j].lower
        if lexicon.is_chain_interrupter(low) or low in lexicon.en_negation:
            return True
        for analysis in lexicon.lookup(low):
            if analysis.kind in ("en_aux", "en_modal", "en_future"):
                return True
            if analysis.kind == "en_irregular" and not analysis.has("base"):
                return True
        if any(lexicon.analyze_suffix(low, "en")):
            return True
        return False
    return False


def _is_nounish(token: Token | None, lexicon: MorphLexicon) -> bool:
    """Open-class word likely to be a noun head (for attributive -ed forms)."""
    if token is None:
        return False
    low = token.lower
    if not low.replace("-", "").isalpha():
        return False
    if lexicon.is_chain_interrupter(low):
        return False
    if low in lexicon.en_stopwords or low == "to":
        return False
    closed = (
        low in lexicon.en_auxiliaries
        or low in lexicon.en_modals
        or low in lexicon.en_future_aux
        or low in lexicon.en_negation
        or low in lexicon.en_pronouns
        or low in lexicon.en_wh_words
    )
    return not closed


def annotate(
    tokens: Sequence[Token],
    lexicon: MorphLexicon | None = None,
    shall_as_future: bool = False,
) -> list[AnnotatedToken]:
    """Assign one tag per token; undecidable tokens become ``other``.

    Tag priority: closed-class hits, then irregular-verb forms, then suffix
    analyses, then membership in the verb-base inventory.  Mid-sentence
    capitalized tokens are treated as proper nouns and receive no suffix or
    base reading.
    """
    lexicon = lexicon or default_lexicon()
    resolved: list[AnnotatedToken] = []

    for i, token in enumerate(tokens):
        low = token.lower
        proper = i > 0 and token.surface[:1].isupper()
        prev_tag = resolved[i - 1].tag if i > 0 else None

        def emit(tag: str, lemma: str) -> None:
            resolved.append(AnnotatedToken(token, tag, lemma))

        # --- fixed function words -------------------------------------
        if low == "to":
            emit(TAG_INF_MARKER, "to")
            continue
        if low in lexicon.en_negation:
            emit(TAG_NEGATION, low)
            continue
        if low in lexicon.en_modals:
            if shall_as_future and low == "shall":
                emit(TAG_FUTURE, "shall")
            else:
                emit(TAG_MODAL, low)
            continue
        if low in lexicon.en_future_aux:
            emit(TAG_FUTURE, "will")
            continue

        # --- ambiguous clitics ----------------------------------------
        if low == "'d":
            if _participle_candidate_ahead(tokens, i, lexicon):
                emit(TAG_FINITE_PAST, "have")
            else:
                emit(TAG_MODAL, "would")
            continue
        if low == "'s":
            prev = tokens[i - 1] if i > 0 else None
            prev_pronoun = prev is not None and (
                prev.lower in lexicon.en_pronouns
                or prev.lower in lexicon.en_wh_words
            )
            if (
                not prev_pronoun
                and _is_nounish(prev, lexicon)
                and not _marked_verb_ahead(tokens, i, lexicon)
            ):
                emit(TAG_OTHER, low)  # possessive
            else:
                emit(TAG_FINITE_PRESENT, "be")
            continue

        # --- auxiliary paradigms ---------------------------------------
        aux_analyses = lexicon.en_auxiliaries.get(low)
        if aux_analyses:
            if prev_tag in (TAG_INF_MARKER, TAG_MODAL, TAG_FUTURE):
                emit(TAG_BASE, next(iter(aux_analyses)).lemma)
                continue
            finite = [a for a in aux_analyses if a.has("finite")]
            participle = [a for a in aux_analyses if a.has("participle")]
            base = [a for a in aux_analyses if a.has("base")]
            if finite and participle:  # "had"
                if _aux_in_window(resolved, i):
                    chosen = participle[0]
                    emit(TAG_PARTICIPLE_PAST, chosen.lemma)
                else:
                    chosen = finite[0]
                    tag = TAG_FINITE_PAST if chosen.has("past") else TAG_FINITE_PRESENT
                    emit(tag, chosen.lemma)
            elif finite:
                chosen = finite[0]
                tag = TAG_FINITE_PAST if chosen.has("past") else TAG_FINITE_PRESENT
                emit(tag, chosen.lemma)
            elif participle:
                chosen = participle[0]
                tag = (
                    TAG_PARTICIPLE_PAST
                    if chosen.has("past")
                    else TAG_PARTICIPLE_PRESENT
                )
                emit(tag, chosen.lemma)
            else:
                emit(TAG_BASE, base[0].lemma)
            continue

        # --- chain adverbs ---------------------------------------------
        if lexicon.is_chain_interrupter(low):
            emit(TAG_ADVERB, low)
            continue

        # --- "going to" + base -----------------------------------------
        if low == "going" and i + 2 < len(tokens) and tokens[i + 1].lower == "to":
            after = tokens[i + 2].lower
            base_ahead = (
                after in lexicon.en_verb_bases
                or after in lexicon.en_auxiliaries
                or any(
                    a.has("base") for a in lexicon.en_irregular_forms.get(after, ())
                )
            )
            if base_ahead:
                emit(TAG_GOING_TO, "go")
                continue

        # --- irregular verb forms ----------------------------------------
        irregular = lexicon.en_irregular_forms.get(low)
        if irregular and not proper:
            has_base = any(a.has("base") for a in irregular)
            has_past = any(a.has("finite") for a in irregular)
            has_pp = any(a.has("participle") for a in irregular)
            lemma = next(iter(irregular)).lemma
            past_lemma = next(
                (a.lemma for a in irregular if a.has("finite")), lemma
            )
            pp_lemma = next(
                (a.lemma for a in irregular if a.has("participle")), lemma
            )
            base_lemma = next((a.lemma for a in irregular if a.has("base")), lemma)
            if has_base and prev_tag in (TAG_INF_MARKER, TAG_MODAL, TAG_FUTURE):
                emit(TAG_BASE, base_lemma)
            elif has_pp and _aux_in_window(resolved, i):
                emit(TAG_PARTICIPLE_PAST, pp_lemma)
            elif has_base and i == 0:
                emit(TAG_FINITE_PRESENT, base_lemma)  # imperative
            elif has_past:
                emit(TAG_FINITE_PAST, past_lemma)
            elif has_base:
                if _subject_before(
                    tokens, i, lexicon, _BASE_SUBJECTS
                ) and not _finite_anchor_in_window(resolved, i):
                    emit(TAG_FINITE_PRESENT, base_lemma)
                else:
                    emit(TAG_BASE, base_lemma)
            else:
                emit(TAG_PARTICIPLE_PAST, pp_lemma)
            continue

        # --- suffix analyses ----------------------------------------------
        suffixes = lexicon.analyze_suffix(low, "en") if not proper else frozenset()
        past_sfx = next(
            (s for s in suffixes if "past" in s.features and "finite" in s.features),
            None,
        )
        ing_sfx = next(
            (s for s in suffixes if "participle" in s.features
             and "present" in s.features),
            None,
        )
        s_sfx = next(
            (s for s in suffixes if "finite" in s.features
             and "present" in s.features),
            None,
        )

        if past_sfx is not None:
            subject = _subject_before(
                tokens, i, lexicon, lexicon.en_pronouns | lexicon.en_wh_words
            )
            next_token = tokens[i + 1] if i + 1 < len(tokens) else None
            if _aux_in_window(resolved, i):
                emit(TAG_PARTICIPLE_PAST, past_sfx.lemma)
            elif _is_nounish(next_token, lexicon) and not subject:
                emit(TAG_OTHER, low)  # attributive participle
            elif past_sfx.licensed or subject:
                emit(TAG_FINITE_PAST, past_sfx.lemma)
            else:
                emit(TAG_OTHER, low)
            continue
        if ing_sfx is not None:
            if ing_sfx.licensed or _aux_in_window(resolved, i):
                emit(TAG_PARTICIPLE_PRESENT, ing_sfx.lemma)
            else:
                emit(TAG_OTHER, low)
            continue
        if s_sfx is not None and (
            s_sfx.licensed
            or (
                i > 0
                and (
                    tokens[i - 1].lower in lexicon.en_pronouns
                    or tokens[i - 1].lower in lexicon.en_wh_words
                )
            )
        ):
            emit(TAG_FINITE_PRESENT, s_sfx.lemma)
            continue

        # --- bare verb bases -----------------------------------------------
        if not proper and low in lexicon.en_verb_bases:
            if i == 0:
                emit(TAG_FINITE_PRESENT, low)  # imperative
            elif prev_tag in (TAG_INF_MARKER, TAG_MODAL, TAG_FUTURE):
                emit(TAG_BASE, low)
            elif _subject_before(
                tokens, i, lexicon, _BASE_SUBJECTS
            ) and not _finite_anchor_in_window(resolved, i):
                emit(TAG_FINITE_PRESENT, low)
            else:
                emit(TAG_BASE, low)
            continue

        emit(TAG_OTHER, low)

    return resolved


# ----------------------------------------------------------- gold annotations


def annotate_text(
    text: str,
    lexicon: MorphLexicon | None = None,
    shall_as_future: bool = False,
) -> list[AnnotatedToken]:
    return annotate(tokenize(text), lexicon, shall_as_future)


def read_annotated(path: str | Path) -> list[list[AnnotatedToken]]:
    """Read gold annotations: ``surface<TAB>tag<TAB>lemma``, blank-line
    separated sentences.  Tags are taken verbatim; the heuristic annotator is
    bypassed entirely.
    """
    path = Path(path)
    sentences: list[list[AnnotatedToken]] = []
    current: list[AnnotatedToken] = []
    offset = 0

    def flush() -> None:
        nonlocal current, offset
        if current:
            sentences.append(current)
        current = []
        offset = 0

    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            stripped = line.rstrip("\n")
            if not stripped.strip():
                flush()
                continue
            if stripped.lstrip().startswith("#"):
                continue
            fields = stripped.split("\t")
            if len(fields) != 3:
                raise AnnotationError(
                    f"{path.name}:{lineno}: expected 3 tab-separated columns, "
                    f"got {len(fields)}"
                )
            surface, tag, lemma = fields
            if tag not in TAGS:
                raise AnnotationError(
                    f"{path.name}:{lineno}: unknown tag {tag!r}"
                )
            if not surface:
                raise AnnotationError(f"{path.name}:{lineno}: empty surface")
            if tag in VERB_TAGS and (not lemma or lemma == "-"):
                raise AnnotationError(
                    f"{path.name}:{lineno}: verb tag {tag} requires a lemma"
                )
            token = Token(
                surface,
                surface.lower(),
                len(current),
                (offset, offset + len(surface)),
            )
            offset += len(surface) + 1
            current.append(
                AnnotatedToken(token, tag, lemma if lemma != "-" else "")
            )
    flush()
    return sentences


def write_annotated(
    sentences: Iterable[Sequence[AnnotatedToken]], path: str | Path
) -> None:
    """Inverse of :func:`read_annotated`."""
    with open(path, "w", encoding="utf-8") as handle:
        for sentence in sentences:
            for item in sentence:
                lemma = item.lemma if item.lemma else "-"
                handle.write(f"{item.surface}\t{item.tag}\t{lemma}\n")
            handle.write("\n")
