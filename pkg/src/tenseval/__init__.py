"""tenseval: rule-based tense labeling and tense-consistency evaluation
for French-English machine translation."""

__version__ = "0.1.0"

from .lexicon import MorphLexicon, default_lexicon
from .tense_en import SentenceLabel, TenseCategory, label_sentence
from .tense_fr import (
    FrenchTense,
    admissible_english,
    consistency_check,
    label_sentence_fr,
    tense_survey,
)
from .metrics import corpus_bleu, distribution, confusion, tense_accuracy

__all__ = [
    "__version__",
    "MorphLexicon",
    "default_lexicon",
    "SentenceLabel",
    "TenseCategory",
    "label_sentence",
    "FrenchTense",
    "admissible_english",
    "consistency_check",
    "label_sentence_fr",
    "tense_survey",
    "corpus_bleu",
    "distribution",
    "confusion",
    "tense_accuracy",
]
