"""Backward-looking log analysis: find frequent questions, draft answers.

Frequent inputs (especially ones the bot had no answer for) get grouped by
their normalized token sequence, ranked, and turned into a draft AIML
document for the botmaster to fill in.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .knowledge import ExchangeEntry
from .model import Category, TemplateNode
from .serialize import document_to_xml

PLACEHOLDER_PREFIX = "[DRAFT ANSWER]"


@dataclass
class FrequencyEntry:
    tokens: tuple[str, ...]
    count: int
    examples: list[str] = field(default_factory=list)  # up to 3 raw inputs
    first_seen: str = ""
    last_seen: str = ""

    @property
    def text(self) -> str:
        return " ".join(self.tokens)


def mine(
    entries: Iterable[ExchangeEntry],
    unmatched_only: bool = False,
    min_count: int = 1,
) -> list[FrequencyEntry]:
    """Group log rows by normalized input and rank by frequency.

    Rows whose input normalized to nothing are skipped (they cannot become
    patterns). Ties rank fresher questions first.
    """
    groups: dict[str, FrequencyEntry] = {}
    for entry in entries:
        if unmatched_only and entry.matched_pattern != "NONE":
            continue
        if not entry.normalized:
            continue
        group = groups.get(entry.normalized)
        if group is None:
            group = FrequencyEntry(
                tokens=tuple(entry.normalized.split()),
                count=0,
                first_seen=entry.timestamp,
                last_seen=entry.timestamp,
            )
            groups[entry.normalized] = group
        group.count += 1
        group.first_seen = min(group.first_seen, entry.timestamp)
        group.last_seen = max(group.last_seen, entry.timestamp)
        if len(group.examples) < 3 and entry.raw not in group.examples:
            group.examples.append(entry.raw)
    ranked = [g for g in groups.values() if g.count >= min_count]
    # count descending; among equals, most recently seen first (stable sort)
    ranked.sort(key=lambda g: g.last_seen, reverse=True)
    ranked.sort(key=lambda g: g.count, reverse=True)
    return ranked


def draft_categories(entries: list[FrequencyEntry]) -> str:
    """Render one skeletal category per entry; parses cleanly as AIML."""
    if not entries:
        raise ValueError("no entries to draft")
    categories = [
        Category(
            pattern=entry.tokens,
            template=TemplateNode.text(
                f"{PLACEHOLDER_PREFIX} Replace this text with the answer to: {entry.text} "
                f"(asked {entry.count}x)"
            ),
        )
        for entry in entries
    ]
    return document_to_xml(categories)
