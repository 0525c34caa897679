"""Black-box evaluation: run a question dataset against a chat endpoint,
collect human judge scores on the 0/2/4/6/8 ladder, and summarize.

Scoring is deliberately human-in-the-loop; the only automation is an
optional per-item expected-substring smoke check recorded in the
transcript.
"""

from __future__ import annotations

import datetime as _dt
import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

import httpx

RUBRIC_POINTS = (8, 6, 4, 2, 0)

RUBRIC_LINES = [
    "8 - right answer, delivered with some creativity or personality",
    "6 - right or appropriate answer, plainly delivered",
    "4 - imperfect or incomplete answer, but clearly about the question",
    "2 - vague or non-committal answer",
    "0 - garbled, off-topic, or an admission of not knowing",
]

WORKED_EXAMPLE = """Example, judging answers to "What does 2 + 2 =?":
  "I rolled my dice and got four, so four it is."  -> 8 (correct, with flair)
  "The answer is four."                            -> 6 (correct)
  "Sorry, I'm a robot, not a math major."          -> 4 (dodges, but on topic)
  "The answer is two."                             -> 2 (wrong, still an attempt)
  "Ok, do you like to fish?"                       -> 0 (avoids the question)"""


@dataclass
class EvalItem:
    id: int
    source: str  # "CBC" | "Loebner"
    turns: list[str]
    notes: Optional[str] = None
    expected_substring: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.turns:
            raise ValueError(f"item {self.id} has no turns")


@dataclass
class ScoreRecord:
    item_id: int
    points: int
    rationale: Optional[str] = None

    def __post_init__(self) -> None:
        if self.points not in RUBRIC_POINTS:
            raise ValueError(f"points must be one of {RUBRIC_POINTS}, got {self.points}")


@dataclass
class ScoreSummary:
    total: int
    max_points: int
    frequency: dict[int, int]
    percentage: dict[int, float]

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "max": self.max_points,
            "frequency": {str(p): c for p, c in self.frequency.items()},
            "percentage": {str(p): v for p, v in self.percentage.items()},
        }


def load_dataset(path: Union[str, Path]) -> list[EvalItem]:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    items = [EvalItem(**record) for record in data["items"]]
    seen: set[int] = set()
    for item in items:
        if item.id in seen:
            raise ValueError(f"duplicate item id {item.id}")
        seen.add(item.id)
    return items


def summarize(scores: Sequence[ScoreRecord], expected_ids: Optional[set[int]] = None) -> ScoreSummary:
    """Totals and the per-level frequency table.

    Duplicate item ids always error; missing ids error when the caller
    supplies the expected id set.
    """
    seen: set[int] = set()
    for record in scores:
        if record.item_id in seen:
            raise ValueError(f"duplicate score for item {record.item_id}")
        seen.add(record.item_id)
    if expected_ids is not None and seen != set(expected_ids):
        missing = sorted(set(expected_ids) - seen)
        extra = sorted(seen - set(expected_ids))
        raise ValueError(f"score set mismatch: missing {missing}, unexpected {extra}")
    frequency = {p: 0 for p in RUBRIC_POINTS}
    for record in scores:
        frequency[record.points] += 1
    count = len(scores)
    percentage = {p: (100.0 * c / count if count else 0.0) for p, c in frequency.items()}
    return ScoreSummary(
        total=sum(r.points for r in scores),
        max_points=8 * count,
        frequency=frequency,
        percentage=percentage,
    )


# -- running a dataset against an endpoint ------------------------------------


@dataclass
class TurnRecord:
    input: str
    reply: list[str] = field(default_factory=list)
    directives: list[dict] = field(default_factory=list)


@dataclass
class ItemRecord:
    id: int
    source: str
    turns: list[TurnRecord] = field(default_factory=list)
    failed: bool = False
    error: Optional[str] = None
    expected_substring: Optional[str] = None
    expected_ok: Optional[bool] = None


def run_dataset(
    endpoint: str,
    items: Sequence[EvalItem],
    parallel: int = 1,
    shared_session: bool = False,
    seed: Optional[int] = None,
    timeout: float = 30.0,
) -> dict:
    """Execute every item and return the transcript as a JSON-ready dict.

    Each item runs in a fresh chat session unless `shared_session`;
    `seed` shuffles execution order deterministically. Items that fail at
    the network level are marked failed and the run continues.
    """
    order = list(items)
    if seed is not None:
        random.Random(seed).shuffle(order)
    url = endpoint.rstrip("/") + "/api/chat"
    shared_sid: list[Optional[str]] = [None]

    def run_item(client: httpx.Client, item: EvalItem) -> ItemRecord:
        record = ItemRecord(id=item.id, source=item.source, expected_substring=item.expected_substring)
        session_id = shared_sid[0] if shared_session else None
        try:
            for turn in item.turns:
                payload = {"message": turn}
                if session_id:
                    payload["session_id"] = session_id
                reply = client.post(url, json=payload, timeout=timeout)
                reply.raise_for_status()
                body = reply.json()
                session_id = body["session_id"]
                if shared_session:
                    shared_sid[0] = session_id
                record.turns.append(
                    TurnRecord(
                        input=turn,
                        reply=[s["text"] for s in body["sentences"]],
                        directives=[s["directive"] for s in body["sentences"] if s.get("directive")],
                    )
                )
        except (httpx.HTTPError, KeyError, ValueError) as exc:
            record.failed = True
            record.error = f"{type(exc).__name__}: {exc}"
            return record
        if item.expected_substring is not None:
            whole = " ".join(text for turn in record.turns for text in turn.reply)
            record.expected_ok = item.expected_substring.lower() in whole.lower()
        return record

    results: dict[int, ItemRecord] = {}
    with httpx.Client() as client:
        if parallel > 1 and not shared_session:
            with ThreadPoolExecutor(max_workers=parallel) as pool:
                for record in pool.map(lambda it: run_item(client, it), order):
                    results[record.id] = record
        else:
            for item in order:
                record = run_item(client, item)
                results[record.id] = record

    return {
        "endpoint": endpoint,
        "started": _dt.datetime.now(_dt.timezone.utc).isoformat(),
        "shared_session": shared_session,
        "seed": seed,
        "items": [_item_to_dict(results[item.id]) for item in items],
    }


def _item_to_dict(record: ItemRecord) -> dict:
    return {
        "id": record.id,
        "source": record.source,
        "failed": record.failed,
        "error": record.error,
        "expected_substring": record.expected_substring,
        "expected_ok": record.expected_ok,
        "turns": [
            {"input": t.input, "reply": t.reply, "directives": t.directives}
            for t in record.turns
        ],
    }


# -- interactive judging -------------------------------------------------------


def load_scores(path: Union[str, Path]) -> list[ScoreRecord]:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return [
        ScoreRecord(item_id=r["id"], points=r["points"], rationale=r.get("rationale"))
        for r in data["scores"]
    ]


def save_scores(path: Union[str, Path], scores: Sequence[ScoreRecord]) -> None:
    payload = {
        "scores": [
            {"id": r.item_id, "points": r.points, **({"rationale": r.rationale} if r.rationale else {})}
            for r in scores
        ]
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def score_interactive(
    transcript: dict,
    out_path: Union[str, Path],
    resume: bool = False,
    input_fn=input,
    print_fn=print,
) -> list[ScoreRecord]:
    """Prompt a judge for one score per item; saves after every answer.

    Already-scored items are skipped when resuming. Entering `q` stops
    early with progress kept.
    """
    scores: list[ScoreRecord] = []
    if resume and Path(out_path).exists():
        scores = load_scores(out_path)
    done = {r.item_id for r in scores}

    print_fn("Scoring guidelines:")
    for line in RUBRIC_LINES:
        print_fn("  " + line)
    print_fn(WORKED_EXAMPLE)
    print_fn("")

    valid = {str(p) for p in RUBRIC_POINTS}
    for item in transcript["items"]:
        if item["id"] in done:
            continue
        print_fn(f"--- item {item['id']} ({item['source']}) ---")
        if item["failed"]:
            print_fn(f"  [failed: {item['error']}]")
        for turn in item["turns"]:
            print_fn(f"  user: {turn['input']}")
            for text in turn["reply"]:
                print_fn(f"  bot:  {text}")
        while True:
            answer = input_fn(f"points for item {item['id']} (0/2/4/6/8, q to stop): ").strip()
            if answer.lower() == "q":
                return scores
            if answer in valid:
                scores.append(ScoreRecord(item_id=item["id"], points=int(answer)))
                save_scores(out_path, scores)
                break
            print_fn(f"  not a rubric level; enter one of {sorted(valid)}")
    return scores
