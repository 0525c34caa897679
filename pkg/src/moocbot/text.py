"""Input/pattern text pipeline: normalization, sentence splitting, substitutions.

Both user input and pattern text go through the same normalization so that
"What is AI?" and the pattern "WHAT IS AI" land on identical token
sequences. Punctuation is stripped outright (the underlying interpreters'
punctuation sensitivity is a known failure mode), `_` and `*` survive, and
everything is uppercased by Unicode rules.

A standalone `_` or `*` token is a wildcard; embedded occurrences inside a
word (e.g. AI_TECHNIQUE) are ordinary characters of that word.
"""

from __future__ import annotations

import re

WILDCARD_UNDERSCORE = "_"
WILDCARD_STAR = "*"

# Characters allowed to survive normalization, besides letters and digits.
_KEPT = {" ", "_", "*"}

_SENTENCE_SPLIT = re.compile(r"[.?!]+")
_WS = re.compile(r"\s+")


def _strip_punctuation(text: str) -> str:
    return "".join(c if c.isalnum() or c in _KEPT else " " for c in text)


def normalize_pattern(raw: str) -> list[str]:
    """Normalize pattern text to its token sequence.

    Uppercase, strip punctuation, collapse whitespace, split on spaces.
    Raises ValueError if nothing is left.
    """
    tokens = [t.upper() for t in _strip_punctuation(raw).split()]
    if not tokens:
        raise ValueError("empty pattern after normalization: %r" % raw)
    return tokens


def normalize_input(raw: str) -> tuple[list[str], list[str]]:
    """Normalize input text to (match_tokens, display_tokens).

    The two lists align one to one: match tokens are uppercased for trie
    lookup, display tokens keep the original casing so star captures can
    echo the user's words back ("Judge", not "JUDGE"). Empty input yields
    two empty lists, never an error.
    """
    display = _strip_punctuation(raw).split()
    return [t.upper() for t in display], display


def is_wildcard(token: str) -> bool:
    return token == WILDCARD_UNDERSCORE or token == WILDCARD_STAR


def split_sentences(text: str) -> list[str]:
    """Split chat text into sentences on `.` `?` `!`.

    A trailing unterminated fragment counts as a sentence; empty fragments
    between terminators are dropped.
    """
    return [part.strip() for part in _SENTENCE_SPLIT.split(text) if part.strip()]


def collapse_whitespace(text: str) -> str:
    return _WS.sub(" ", text).strip()


class SubstitutionTable:
    """Ordered phrase rewrites applied to raw sentence text before normalization.

    Phrases are stored uppercased and whitespace-collapsed but keep their
    punctuation ("WHAT'S" must still match the raw apostrophe). Application
    is case-insensitive, on whole-word boundaries, longest phrase first, so
    "U" never fires inside "UNTIL".
    """

    def __init__(self, pairs: list[tuple[str, str]] | None = None):
        self._pairs: list[tuple[str, str]] = []
        self._lookup: dict[str, str] = {}
        self._regex: re.Pattern[str] | None = None
        for find, replace in pairs or []:
            self.add(find, replace)

    def add(self, find: str, replace: str) -> None:
        find = collapse_whitespace(find).upper()
        if not find:
            raise ValueError("empty substitution phrase")
        self._pairs.append((find, replace))
        self._regex = None

    @property
    def pairs(self) -> list[tuple[str, str]]:
        return list(self._pairs)

    def _compiled(self) -> re.Pattern[str] | None:
        if self._regex is None and self._pairs:
            ordered = sorted(self._pairs, key=lambda p: len(p[0]), reverse=True)
            self._lookup = {find: replace for find, replace in ordered}
            alternation = "|".join(re.escape(find) for find, _ in ordered)
            self._regex = re.compile(r"(?<!\w)(?:%s)(?!\w)" % alternation, re.IGNORECASE)
        return self._regex

    def apply(self, text: str) -> str:
        regex = self._compiled()
        if regex is None:
            return text
        return regex.sub(lambda m: self._lookup[collapse_whitespace(m.group(0)).upper()], text)


def prepare_input(raw: str, substitutions: SubstitutionTable | None = None) -> tuple[list[str], list[str]]:
    """Substitutions followed by normalization; the per-sentence input pipeline."""
    if substitutions is not None:
        raw = substitutions.apply(raw)
    return normalize_input(raw)
