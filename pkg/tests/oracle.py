"""Brute-force reference matcher, independent of the trie implementation.

Matching is defined directly over the category list: every way a category's
composed path can align with the input is enumerated, each alignment is
encoded as its sequence of branch moves, and moves are ordered the way the
trie explores them — `_` before an exact word before `*`, shorter wildcard
consumption before longer. The winner is the alignment with the
lexicographically smallest move sequence. Capture spans fall out of the
winning alignment.
"""

from __future__ import annotations

THAT = "<THAT>"
TOPIC = "<TOPIC>"
MARKERS = {THAT, TOPIC}

RANK_UNDERSCORE = 0
RANK_WORD = 1
RANK_STAR = 2


def full_path(category) -> list[str]:
    return [
        *category.pattern,
        THAT,
        *category.that_pattern,
        TOPIC,
        *category.topic_pattern,
    ]


def alignments(pattern: list[str], tokens: list[str]) -> list[list[tuple[int, int]]]:
    """All (rank, consumed) move sequences aligning pattern onto tokens."""
    out: list[list[tuple[int, int]]] = []
    n = len(tokens)

    def rec(pi: int, ti: int, moves: list[tuple[int, int]]) -> None:
        if pi == len(pattern):
            if ti == n:
                out.append(list(moves))
            return
        symbol = pattern[pi]
        if symbol == "_" or symbol == "*":
            rank = RANK_UNDERSCORE if symbol == "_" else RANK_STAR
            j = ti
            while j < n and tokens[j] not in MARKERS:
                j += 1
                moves.append((rank, j - ti))
                rec(pi + 1, j, moves)
                moves.pop()
        elif ti < n and tokens[ti] == symbol:
            moves.append((RANK_WORD, 1))
            rec(pi + 1, ti + 1, moves)
            moves.pop()

    rec(0, 0, [])
    return out


def brute_match(categories, path: list[str]):
    """Winner plus capture lists for a composed input path, or None.

    Duplicate full paths keep the last category, mirroring trie replacement.
    """
    unique: dict[tuple[str, ...], object] = {}
    for category in categories:
        unique[tuple(full_path(category))] = category

    best_moves = None
    best_category = None
    for pattern_path, category in unique.items():
        for moves in alignments(list(pattern_path), path):
            if best_moves is None or moves < best_moves:
                best_moves = moves
                best_category = category
    if best_category is None:
        return None

    # Replay the winning alignment to recover capture spans per section.
    stars: list[list[str]] = []
    that_stars: list[list[str]] = []
    topic_stars: list[list[str]] = []
    that_pos = path.index(THAT)
    topic_pos = path.index(TOPIC, that_pos + 1)
    ti = 0
    for rank, consumed in best_moves:
        if rank != RANK_WORD:
            words = path[ti : ti + consumed]
            if ti + consumed <= that_pos:
                stars.append(words)
            elif ti + consumed <= topic_pos:
                that_stars.append(words)
            else:
                topic_stars.append(words)
        ti += consumed
    return best_category, stars, that_stars, topic_stars
