"""Finite verb-chain extraction and seven-way English tense classification.

Categories collapse the progressive into its base tense and group modal
clauses into a single class, so a sentence label is the ordered list of the
categories of its finite verb chains, e.g. ``Present+PrePerfect``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from . import annotate as ann
from .annotate import AnnotatedToken, annotate, tokenize
from .lexicon import MorphLexicon

__all__ = [
    "TenseCategory",
    "SentenceLabel",
    "VerbChain",
    "extract_chains",
    "classify",
    "label_sentence",
    "label_annotated",
]


class TenseCategory(enum.Enum):
    PAST = "Past"
    PRESENT = "Present"
    FUTURE = "Future"
    PAS_PERFECT = "PasPerfect"
    PRE_PERFECT = "PrePerfect"
    FUT_PERFECT = "FutPerfect"
    MODAL = "Modal"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, text: str) -> "TenseCategory":
        """Case-insensitive category lookup ('preperfect' -> PrePerfect)."""
        wanted = text.strip().lower()
        for category in cls:
            if category.value.lower() == wanted:
                return category
        raise ValueError(f"unknown tense category {text!r}")


@dataclass(frozen=True)
class SentenceLabel:
    """Ordered tense categories of a sentence; duplicates are retained."""

    categories: tuple[TenseCategory, ...] = ()

    def __str__(self) -> str:
        return "+".join(c.value for c in self.categories)

    def __len__(self) -> int:
        return len(self.categories)

    def __bool__(self) -> bool:
        return bool(self.categories)

    @classmethod
    def parse(cls, text: str) -> "SentenceLabel":
        text = text.strip()
        if not text:
            return cls()
        return cls(
            tuple(TenseCategory.parse(part) for part in text.split("+"))
        )


@dataclass(frozen=True)
class VerbChain:
    """A finite verb group: auxiliary sequence plus head verb."""

    indices: tuple[int, ...]
    interrupters: tuple[int, ...]
    head_lemma: str
    aux_lemmas: tuple[str, ...]
    finite: str | None  # "past" | "present" | None
    finite_lemma: str | None
    has_modal: bool = False
    has_future_aux: bool = False
    perfect: bool = False
    progressive: bool = False
    passive: bool = False
    going_to: bool = False

    def surface_span(self) -> tuple[int, int]:
        return (self.indices[0], self.indices[-1])


_STARTER_TAGS = (
    ann.TAG_MODAL,
    ann.TAG_FUTURE,
    ann.TAG_FINITE_PAST,
    ann.TAG_FINITE_PRESENT,
)
_AUX_LEMMAS = ("be", "have", "do")


def _extends(item: AnnotatedToken) -> bool:
    if item.tag in (
        ann.TAG_PARTICIPLE_PAST,
        ann.TAG_PARTICIPLE_PRESENT,
        ann.TAG_BASE,
        ann.TAG_GOING_TO,
    ):
        return True
    if item.tag in (ann.TAG_FINITE_PAST, ann.TAG_FINITE_PRESENT):
        return item.lemma in _AUX_LEMMAS
    return False


def _build_chain(
    sentence: Sequence[AnnotatedToken], indices: list[int], interrupters: list[int]
) -> VerbChain:
    verb_positions = [i for i in indices if i not in interrupters]
    items = [sentence[i] for i in verb_positions]

    finite = None
    finite_lemma = None
    for item in items:
        if item.tag == ann.TAG_FINITE_PAST:
            finite, finite_lemma = "past", item.lemma
            break
        if item.tag == ann.TAG_FINITE_PRESENT:
            finite, finite_lemma = "present", item.lemma
            break

    def later_has(start: int, tag: str) -> bool:
        return any(it.tag == tag for it in items[start + 1 :])

    perfect = any(
        it.lemma == "have"
        and it.tag in (ann.TAG_FINITE_PAST, ann.TAG_FINITE_PRESENT, ann.TAG_BASE)
        and later_has(k, ann.TAG_PARTICIPLE_PAST)
        for k, it in enumerate(items)
    )
    progressive = any(
        it.lemma == "be"
        and (
            later_has(k, ann.TAG_PARTICIPLE_PRESENT)
            or later_has(k, ann.TAG_GOING_TO)
        )
        for k, it in enumerate(items)
    )
    passive = any(
        it.lemma == "be" and later_has(k, ann.TAG_PARTICIPLE_PAST)
        for k, it in enumerate(items)
    )

    verb_items = [it for it in items if it.tag != ann.TAG_INF_MARKER]
    head = verb_items[-1] if verb_items else items[-1]
    aux_lemmas = tuple(
        it.lemma for it in verb_items[:-1] if it.tag != ann.TAG_INF_MARKER
    )

    return VerbChain(
        indices=tuple(indices),
        interrupters=tuple(interrupters),
        head_lemma=head.lemma or head.lower,
        aux_lemmas=aux_lemmas,
        finite=finite,
        finite_lemma=finite_lemma,
        has_modal=any(it.tag == ann.TAG_MODAL for it in items),
        has_future_aux=any(it.tag == ann.TAG_FUTURE for it in items),
        perfect=perfect,
        progressive=progressive,
        passive=passive,
        going_to=any(it.tag == ann.TAG_GOING_TO for it in items),
    )


def extract_chains(sentence: Sequence[AnnotatedToken]) -> list[VerbChain]:
    """Left-to-right maximal chains anchored at a modal, future auxiliary or
    finite verb.  Up to 2 consecutive negators/adverbs are skipped inside a
    chain; non-finite groups are never emitted.
    """
    chains: list[VerbChain] = []
    n = len(sentence)
    i = 0
    while i < n:
        if sentence[i].tag not in _STARTER_TAGS:
            i += 1
            continue
        indices = [i]
        interrupters: list[int] = []
        pending: list[int] = []
        last_real = sentence[i].tag
        j = i + 1
        while j < n:
            item = sentence[j]
            if item.tag in (ann.TAG_NEGATION, ann.TAG_ADVERB):
                if len(pending) >= 2:
                    break
                pending.append(j)
                j += 1
                continue
            allowed = _extends(item) or (
                item.tag == ann.TAG_INF_MARKER and last_real == ann.TAG_GOING_TO
            )
            if not allowed:
                break
            indices.extend(pending)
            interrupters.extend(pending)
            pending = []
            indices.append(j)
            last_real = item.tag
            j += 1
        indices.sort()
        chains.append(_build_chain(sentence, indices, interrupters))
        i = indices[-1] + 1
    return chains


def classify(chain: VerbChain) -> TenseCategory:
    """First matching rule wins; see the module docstring for the taxonomy."""
    if chain.finite is None and not chain.has_modal and not chain.has_future_aux:
        raise ValueError(
            "chain has no finite anchor and no modal/future auxiliary"
        )
    if chain.has_modal:
        return TenseCategory.MODAL
    if chain.has_future_aux and chain.perfect:
        return TenseCategory.FUT_PERFECT
    if chain.has_future_aux:
        return TenseCategory.FUTURE
    if chain.finite == "past" and chain.finite_lemma == "have" and chain.perfect:
        return TenseCategory.PAS_PERFECT
    if (
        chain.finite == "present"
        and chain.finite_lemma == "have"
        and chain.perfect
    ):
        return TenseCategory.PRE_PERFECT
    if chain.finite == "past":
        return TenseCategory.PAST
    return TenseCategory.PRESENT


def label_annotated(sentence: Sequence[AnnotatedToken]) -> SentenceLabel:
    """Label an already-annotated sentence (the gold path)."""
    return SentenceLabel(
        tuple(classify(chain) for chain in extract_chains(sentence))
    )


def label_sentence(
    text: str,
    lexicon: MorphLexicon | None = None,
    shall_as_future: bool = False,
) -> SentenceLabel:
    """tokenize -> annotate -> extract -> classify, in chain order.

    A verbless sentence yields the empty label (canonical string ``""``).
    """
    return label_annotated(annotate(tokenize(text), lexicon, shall_as_future))
