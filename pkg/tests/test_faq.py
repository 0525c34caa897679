import pytest
from click.testing import CliRunner
from hypothesis import given, strategies as st

from moocbot.cli import main as cli_main
from moocbot.faq import PLACEHOLDER_PREFIX, draft_categories, mine
from moocbot.knowledge import ExchangeEntry
from moocbot.parser import parse_document


def entry(normalized: str, matched="NONE", raw=None, ts="2026-01-01T00:00:00+00:00") -> ExchangeEntry:
    return ExchangeEntry(
        session_id="s",
        raw=raw if raw is not None else normalized.lower(),
        normalized=normalized,
        response="r",
        matched_pattern=matched,
        timestamp=ts,
    )


class TestMine:
    def test_empty_log(self):
        assert mine([]) == []

    def test_frequency_filter(self):
        log = [entry("WHAT IS FOO")] * 3 + [entry("BAR")]
        ranked = mine(log, min_count=2)
        assert len(ranked) == 1
        assert ranked[0].tokens == ("WHAT", "IS", "FOO")
        assert ranked[0].count == 3

    def test_unmatched_only_excludes_matched(self):
        log = [entry("ANSWERED", matched="ANSWERED"), entry("MYSTERY")]
        ranked = mine(log, unmatched_only=True)
        assert [e.text for e in ranked] == ["MYSTERY"]

    def test_grouping_is_by_normalized_form(self):
        log = [entry("WHAT IS AI", raw="What is AI?"), entry("WHAT IS AI", raw="what is ai")]
        ranked = mine(log)
        assert len(ranked) == 1 and ranked[0].count == 2
        assert ranked[0].examples == ["What is AI?", "what is ai"]

    def test_ties_break_by_recency(self):
        log = [
            entry("OLD ONE", ts="2026-01-01T00:00:00+00:00"),
            entry("NEW ONE", ts="2026-03-01T00:00:00+00:00"),
        ]
        assert [e.text for e in mine(log)] == ["NEW ONE", "OLD ONE"]

    def test_examples_capped_at_three(self):
        log = [entry("Q", raw=f"q variant {i}") for i in range(6)]
        assert len(mine(log)[0].examples) == 3


class TestProperties:
    norm_texts = st.lists(
        st.text(alphabet="ABCDE", min_size=1, max_size=3).map(lambda w: w),
        min_size=1,
        max_size=3,
    ).map(" ".join)

    @given(st.lists(st.tuples(norm_texts, st.booleans(), st.integers(1, 28)), max_size=60))
    def test_rank_monotone_and_conservation(self, rows):
        log = [
            entry(text, matched="NONE" if unmatched else "SOME PATTERN",
                  ts=f"2026-01-{day:02d}T00:00:00+00:00")
            for text, unmatched, day in rows
        ]
        ranked = mine(log)
        counts = [e.count for e in ranked]
        assert counts == sorted(counts, reverse=True)
        assert sum(counts) == len(log)


class TestDrafts:
    def test_drafts_parse_cleanly(self):
        ranked = mine([entry("WHAT IS FOO")] * 2 + [entry("WHERE IS BAR")])
        result = parse_document(draft_categories(ranked))
        assert result.ok, result.issues
        assert len(result.categories) == 2

    def test_entry_order_preserved(self):
        ranked = mine([entry("A A")] * 3 + [entry("B B")] * 2 + [entry("C C")])
        result = parse_document(draft_categories(ranked))
        assert [c.pattern for c in result.categories] == [("A", "A"), ("B", "B"), ("C", "C")]

    def test_placeholder_visibly_marked(self):
        text = draft_categories(mine([entry("WHAT IS FOO")]))
        assert PLACEHOLDER_PREFIX in text

    def test_no_entries_rejected(self):
        with pytest.raises(ValueError):
            draft_categories([])


class TestCli:
    def test_mine_command(self, tmp_path):
        log_path = tmp_path / "exchanges.jsonl"
        rows = [entry("WHAT IS FOO")] * 3 + [entry("RARE ONE")]
        log_path.write_text("\n".join(r.to_json() for r in rows) + "\n")
        out = tmp_path / "drafts.aiml"
        runner = CliRunner()
        result = runner.invoke(cli_main, [
            "faq", "mine", "--log", str(log_path), "--min-count", "2",
            "--unmatched-only", "--out", str(out),
        ])
        assert result.exit_code == 0, result.output
        assert "1 draft categories" in result.output
        parsed = parse_document(out.read_text())
        assert parsed.ok and len(parsed.categories) == 1
        assert parsed.categories[0].pattern == ("WHAT", "IS", "FOO")
