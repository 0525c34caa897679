"""Token trie over category paths with priority wildcard matching.

Every category is stored under one path:

    pattern tokens, <THAT>, that tokens, <TOPIC>, topic tokens

and lookups walk the trie depth first. At each node the `_` branch is
tried first, then the exact branch for the current token, then `*`.
Wildcards consume one or more tokens, extended shortest-first on
backtracking, and never cross a section marker. The first complete match
wins; there is no scoring.

The marker tokens contain angle brackets, which normalization strips from
all input and pattern text, so they cannot be forged.

Concurrency: one writer at a time. A single insert is safe to run under
concurrent readers because the new subtree is built detached and hooked in
with one assignment; multi-category atomicity (uploads) is handled a layer
up by cloning and swapping whole snapshots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from .model import Category
from .text import WILDCARD_STAR, WILDCARD_UNDERSCORE

THAT_MARKER = "<THAT>"
TOPIC_MARKER = "<TOPIC>"
_MARKERS = (THAT_MARKER, TOPIC_MARKER)

ADDED = "added"
REPLACED = "replaced"


def compose_path(
    pattern: tuple[str, ...] | list[str],
    that: tuple[str, ...] | list[str] = ("*",),
    topic: tuple[str, ...] | list[str] = ("*",),
) -> list[str]:
    """Concatenate the three sections into one marker-separated path."""
    return [*pattern, THAT_MARKER, *that, TOPIC_MARKER, *topic]


@dataclass
class MatchResult:
    category: Category
    stars: list[list[str]]
    that_stars: list[list[str]]
    topic_stars: list[list[str]]
    # Token index ranges of the input-section captures, aligned with
    # `stars`; lets callers recover the original-cased words.
    star_spans: list[tuple[int, int]] = field(default_factory=list)


class _Node:
    __slots__ = ("underscore", "words", "star", "category")

    def __init__(self) -> None:
        self.underscore: Optional[_Node] = None
        self.words: dict[str, _Node] = {}
        self.star: Optional[_Node] = None
        self.category: Optional[Category] = None

    def child(self, token: str) -> Optional["_Node"]:
        if token == WILDCARD_UNDERSCORE:
            return self.underscore
        if token == WILDCARD_STAR:
            return self.star
        return self.words.get(token)

    def attach(self, token: str, node: "_Node") -> None:
        if token == WILDCARD_UNDERSCORE:
            self.underscore = node
        elif token == WILDCARD_STAR:
            self.star = node
        else:
            self.words[token] = node


class Graphmaster:
    def __init__(self) -> None:
        self._root = _Node()
        self._count = 0

    def __len__(self) -> int:
        return self._count

    def insert(self, category: Category) -> str:
        """Store a category; returns ADDED or REPLACED (duplicate path)."""
        path = compose_path(category.pattern, category.that_pattern, category.topic_pattern)
        node = self._root
        for depth, token in enumerate(path):
            child = node.child(token)
            if child is None:
                # Build the rest detached, then hook it in with a single
                # assignment so a concurrent reader sees all or nothing.
                head = tail = _Node()
                for rest in path[depth + 1 :]:
                    nxt = _Node()
                    tail.attach(rest, nxt)
                    tail = nxt
                tail.category = category
                self._count += 1
                node.attach(token, head)
                return ADDED
            node = child
        replaced = node.category is not None
        node.category = category
        if not replaced:
            self._count += 1
        return REPLACED if replaced else ADDED

    def match(self, path: list[str]) -> Optional[MatchResult]:
        """Find the winning category for a composed path, or None."""
        found = self._search(path)
        if found is None:
            return None
        category, spans = found
        try:
            that_pos = path.index(THAT_MARKER)
            topic_pos = path.index(TOPIC_MARKER, that_pos + 1)
        except ValueError:
            that_pos = topic_pos = len(path)
        result = MatchResult(category, [], [], [])
        for start, end in spans:
            words = path[start:end]
            if end <= that_pos:
                result.stars.append(words)
                result.star_spans.append((start, end))
            elif end <= topic_pos:
                result.that_stars.append(words)
            else:
                result.topic_stars.append(words)
        return result

    def _search(self, tokens: list[str]) -> Optional[tuple[Category, list[tuple[int, int]]]]:
        n = len(tokens)
        # stop[i]: first index >= i holding a section marker (or n); a
        # wildcard starting at i may consume tokens up to that point.
        stop = [n] * (n + 1)
        for i in range(n - 1, -1, -1):
            stop[i] = i if tokens[i] in _MARKERS else stop[i + 1]

        # Explicit DFS stack; entries are pushed in reverse priority so the
        # highest-priority alternative pops first. Spans accumulate as a
        # cons list shared between alternatives.
        # ("node", node, i, spans) — continue matching at node/position i
        # ("wild", child, i, j, spans) — wildcard consume tokens[i:j], and
        #    on backtrack extend to j+1
        stack: list[tuple] = [("node", self._root, 0, None)]
        while stack:
            entry = stack.pop()
            if entry[0] == "node":
                _, node, i, spans = entry
                if i == n:
                    if node.category is not None:
                        return node.category, _unroll(spans)
                    continue
                token = tokens[i]
                if token in _MARKERS:
                    child = node.words.get(token)
                    if child is not None:
                        stack.append(("node", child, i + 1, spans))
                    continue
                if node.star is not None:
                    stack.append(("wild", node.star, i, i + 1, spans))
                child = node.words.get(token)
                if child is not None:
                    stack.append(("node", child, i + 1, spans))
                if node.underscore is not None:
                    stack.append(("wild", node.underscore, i, i + 1, spans))
            else:
                _, child, i, j, spans = entry
                if j < stop[i]:
                    stack.append(("wild", child, i, j + 1, spans))
                stack.append(("node", child, j, ((i, j), spans)))
        return None

    def categories(self) -> Iterator[Category]:
        pending = [self._root]
        while pending:
            node = pending.pop()
            if node.category is not None:
                yield node.category
            if node.underscore is not None:
                pending.append(node.underscore)
            pending.extend(node.words.values())
            if node.star is not None:
                pending.append(node.star)

    def clone(self) -> "Graphmaster":
        """Structural copy sharing the (immutable) categories."""
        other = Graphmaster()
        other._count = self._count
        pending = [(self._root, other._root)]
        while pending:
            src, dst = pending.pop()
            dst.category = src.category
            if src.underscore is not None:
                dst.underscore = _Node()
                pending.append((src.underscore, dst.underscore))
            if src.star is not None:
                dst.star = _Node()
                pending.append((src.star, dst.star))
            for token, child in src.words.items():
                copy = _Node()
                dst.words[token] = copy
                pending.append((child, copy))
        return other


def _unroll(spans) -> list[tuple[int, int]]:
    out = []
    while spans is not None:
        head, spans = spans
        out.append(head)
    out.reverse()  # cons order is deepest-first; captures read left to right
    return out
