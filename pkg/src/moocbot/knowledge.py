"""The persistent bot brain: profile, category store, exchange log.

Knowledge lives in the trie; mutations (teach, upload, directory load)
build on a cloned trie and publish it with a single reference swap, so a
concurrent reader always sees either the whole change or none of it.
Taught and uploaded categories are re-serialized as AIML files under
``<data_dir>/kb`` with a monotonically increasing name prefix; reloading
them in name order reproduces the exact mutation history.
"""

from __future__ import annotations

import datetime as _dt
import json
import logging
import threading
from dataclasses import dataclass, field, asdict
from pathlib import Path
from typing import Iterable, Optional, Union

from .graph import Graphmaster, REPLACED
from .model import Category, ParseIssue, Severity, TemplateNode
from .parser import parse_document
from .serialize import document_to_xml
from .text import SubstitutionTable, normalize_pattern

log = logging.getLogger(__name__)

DEFAULT_RESPONSE = "I have no idea about that yet."

# Contractions and chat shorthand rewritten before matching.
DEFAULT_SUBSTITUTIONS: list[tuple[str, str]] = [
    ("WHAT'S", "WHAT IS"),
    ("WHERE'S", "WHERE IS"),
    ("WHO'S", "WHO IS"),
    ("I'M", "I AM"),
    ("DON'T", "DO NOT"),
    ("CAN'T", "CAN NOT"),
    ("UR", "YOUR"),
    ("U", "YOU"),
    ("Y", "WHY"),
    ("R", "ARE"),
]


@dataclass
class BotProfile:
    """Bot-level configuration: properties readable by <bot>, the fallback
    answer, the substitution table, and evaluation limits."""

    properties: dict[str, str] = field(default_factory=dict)
    default_response: str = DEFAULT_RESPONSE
    substitutions: SubstitutionTable = field(default_factory=lambda: SubstitutionTable(DEFAULT_SUBSTITUTIONS))
    max_srai_depth: int = 16
    default_predicate_value: str = ""

    def __post_init__(self) -> None:
        if not self.default_response:
            raise ValueError("default_response must be non-empty")

    @classmethod
    def from_dict(cls, data: dict) -> "BotProfile":
        subs = data.get("substitutions")
        table = SubstitutionTable([tuple(pair) for pair in subs]) if subs is not None else SubstitutionTable(DEFAULT_SUBSTITUTIONS)
        return cls(
            properties=dict(data.get("properties", {})),
            default_response=data.get("default_response", DEFAULT_RESPONSE),
            substitutions=table,
            max_srai_depth=int(data.get("max_srai_depth", 16)),
            default_predicate_value=data.get("default_predicate_value", ""),
        )

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "BotProfile":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


@dataclass
class ExchangeEntry:
    session_id: str
    raw: str
    normalized: str
    response: str
    matched_pattern: str  # "NONE" when the default response answered
    srai_depth: int = 0
    timestamp: str = field(default_factory=lambda: _dt.datetime.now(_dt.timezone.utc).isoformat())

    def to_json(self) -> str:
        return json.dumps(asdict(self), ensure_ascii=False)

    @classmethod
    def from_json(cls, line: str) -> "ExchangeEntry":
        return cls(**json.loads(line))


class ExchangeLog:
    """Append-only conversation log, one JSON record per line.

    With a path, every append lands on disk as a single line write; without
    one the log is memory-only (tests, ephemeral bots).
    """

    def __init__(self, path: Optional[Union[str, Path]] = None):
        self._path = Path(path) if path is not None else None
        self._lock = threading.Lock()
        self._entries: list[ExchangeEntry] = []
        if self._path is not None and self._path.exists():
            with open(self._path, encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if line:
                        self._entries.append(ExchangeEntry.from_json(line))

    def append(self, entry: ExchangeEntry) -> None:
        with self._lock:
            if self._path is not None:
                with open(self._path, "a", encoding="utf-8") as fh:
                    fh.write(entry.to_json() + "\n")
            self._entries.append(entry)

    def query(
        self,
        unmatched_only: bool = False,
        since: Optional[str] = None,
        limit: Optional[int] = None,
    ) -> list[ExchangeEntry]:
        with self._lock:
            entries = list(self._entries)
        if unmatched_only:
            entries = [e for e in entries if e.matched_pattern == "NONE"]
        if since is not None:
            entries = [e for e in entries if e.timestamp >= since]
        if limit is not None and limit >= 0:
            entries = entries[-limit:] if limit else []
        return entries

    def __len__(self) -> int:
        with self._lock:
            return len(self._entries)


@dataclass
class LoadReport:
    files_loaded: int = 0
    categories_loaded: int = 0
    issues: list[ParseIssue] = field(default_factory=list)


@dataclass
class UploadReport:
    categories_added: int = 0
    issues: list[ParseIssue] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not any(i.severity is Severity.ERROR for i in self.issues)


@dataclass
class TeachResult:
    category: Category
    replaced: bool


class KnowledgeBase:
    def __init__(self, profile: Optional[BotProfile] = None, data_dir: Optional[Union[str, Path]] = None):
        self.profile = profile or BotProfile()
        self._graph = Graphmaster()
        self._write_lock = threading.Lock()
        self._data_dir = Path(data_dir) if data_dir is not None else None
        self._seq = 0
        if self._data_dir is not None:
            self._kb_dir = self._data_dir / "kb"
            self._kb_dir.mkdir(parents=True, exist_ok=True)
            existing = sorted(self._kb_dir.glob("*.aiml"))
            if existing:
                self._seq = max(int(p.name.split("-", 1)[0]) for p in existing)
            self.log = ExchangeLog(self._data_dir / "exchanges.jsonl")
        else:
            self._kb_dir = None
            self.log = ExchangeLog()

    @property
    def graph(self) -> Graphmaster:
        """The live snapshot; safe to match against while writers run."""
        return self._graph

    def category_count(self) -> int:
        return len(self._graph)

    # -- bulk loading ---------------------------------------------------------

    def load_directory(self, path: Union[str, Path]) -> LoadReport:
        """Load every .aiml file under `path` (sorted, not recursive).

        Per-file all-or-nothing: files with errors are skipped and reported,
        the rest load. Readers see one atomic publication at the end.
        """
        directory = Path(path)
        if not directory.is_dir():
            raise NotADirectoryError(f"not a readable directory: {directory}")
        report = LoadReport()
        with self._write_lock:
            graph = self._graph.clone()
            for file in sorted(directory.glob("*.aiml")):
                result = parse_document(file.read_text(encoding="utf-8"), source=file.name)
                report.issues.extend(result.issues)
                if not result.ok:
                    continue
                for category in result.categories:
                    graph.insert(category)
                report.files_loaded += 1
                report.categories_loaded += len(result.categories)
            self._graph = graph
        return report

    def restore(self) -> LoadReport:
        """Reload previously persisted teach/upload files (boot path)."""
        if self._kb_dir is None:
            return LoadReport()
        return self.load_directory(self._kb_dir)

    # -- mutations ------------------------------------------------------------

    def upload_aiml(self, contents: Union[str, bytes], source: str = "<upload>") -> UploadReport:
        """Atomic document upload: any error means zero graph mutation."""
        result = parse_document(contents, source=source)
        if not result.ok:
            return UploadReport(0, result.issues)
        with self._write_lock:
            graph = self._graph.clone()
            for category in result.categories:
                graph.insert(category)
            self._persist(result.categories, "upload")
            self._graph = graph
        return UploadReport(len(result.categories), result.issues)

    def teach(self, pattern_text: str, response_text: str) -> TeachResult:
        """Store one pattern → literal-text answer; immediately matchable.

        Raises ValueError when the pattern normalizes to nothing.
        """
        pattern = tuple(normalize_pattern(pattern_text))
        category = Category(pattern=pattern, template=TemplateNode.text(response_text))
        with self._write_lock:
            graph = self._graph.clone()
            outcome = graph.insert(category)
            self._persist([category], "teach")
            self._graph = graph
        return TeachResult(category, outcome == REPLACED)

    def insert_categories(self, categories: Iterable[Category]) -> int:
        """Directly publish parsed categories (corpus bootstrap, tests)."""
        count = 0
        with self._write_lock:
            graph = self._graph.clone()
            for category in categories:
                graph.insert(category)
                count += 1
            self._graph = graph
        return count

    def _persist(self, categories: list[Category], kind: str) -> None:
        if self._kb_dir is None:
            return
        self._seq += 1
        path = self._kb_dir / f"{self._seq:06d}-{kind}.aiml"
        path.write_text(document_to_xml(categories), encoding="utf-8")
