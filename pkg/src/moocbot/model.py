"""Domain types: categories, template trees, directives, parse issues."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

DIRECTIVE_KINDS = ("hyperlink", "open_window", "navigate")


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class ParseIssue:
    severity: Severity
    message: str
    source: str = "<string>"
    line: Optional[int] = None

    def __str__(self) -> str:
        where = self.source if self.line is None else f"{self.source}:{self.line}"
        return f"{self.severity.value}: {where}: {self.message}"


@dataclass(frozen=True)
class Directive:
    kind: str  # one of DIRECTIVE_KINDS
    target: str
    label: str = ""


class NodeKind(str, Enum):
    TEXT = "text"
    SRAI = "srai"
    THINK = "think"
    SET = "set"
    GET = "get"
    STAR = "star"
    CONDITION = "condition"
    RANDOM = "random"
    BOT = "bot"
    DIRECTIVE = "directive"
    LIST_ITEM = "li"  # container for one <random> alternative


@dataclass(frozen=True)
class TemplateNode:
    """One node of a template tree.

    `name` holds the predicate/property name for SET/GET/BOT, the directive
    kind for DIRECTIVE; `literal` holds text for TEXT and the target URL for
    DIRECTIVE; `index` is the 1-based capture index for STAR.
    """

    kind: NodeKind
    children: tuple["TemplateNode", ...] = ()
    literal: str = ""
    name: str = ""
    index: int = 1
    branches: tuple["ConditionBranch", ...] = ()

    @staticmethod
    def text(literal: str) -> "TemplateNode":
        return TemplateNode(NodeKind.TEXT, literal=literal)

    @staticmethod
    def srai(*children: "TemplateNode") -> "TemplateNode":
        return TemplateNode(NodeKind.SRAI, children=children)

    @staticmethod
    def think(*children: "TemplateNode") -> "TemplateNode":
        return TemplateNode(NodeKind.THINK, children=children)

    @staticmethod
    def set_predicate(name: str, *children: "TemplateNode") -> "TemplateNode":
        return TemplateNode(NodeKind.SET, name=name, children=children)

    @staticmethod
    def get_predicate(name: str) -> "TemplateNode":
        return TemplateNode(NodeKind.GET, name=name)

    @staticmethod
    def star(index: int = 1) -> "TemplateNode":
        if index < 1:
            raise ValueError("star index must be >= 1")
        return TemplateNode(NodeKind.STAR, index=index)

    @staticmethod
    def random(items: list[tuple["TemplateNode", ...]]) -> "TemplateNode":
        if not items:
            raise ValueError("random needs at least one item")
        children = tuple(TemplateNode(NodeKind.LIST_ITEM, children=item) for item in items)
        return TemplateNode(NodeKind.RANDOM, children=children)

    @staticmethod
    def condition(name: str, branches: list["ConditionBranch"]) -> "TemplateNode":
        if not branches:
            raise ValueError("condition needs at least one branch")
        if sum(1 for b in branches if b.value is None) > 1:
            raise ValueError("condition allows at most one default branch")
        return TemplateNode(NodeKind.CONDITION, name=name, branches=tuple(branches))

    @staticmethod
    def bot_property(name: str) -> "TemplateNode":
        return TemplateNode(NodeKind.BOT, name=name)

    @staticmethod
    def directive(kind: str, target: str, *children: "TemplateNode") -> "TemplateNode":
        if kind not in DIRECTIVE_KINDS:
            raise ValueError(f"unknown directive kind {kind!r}")
        if not target:
            raise ValueError("directive needs a non-empty target")
        return TemplateNode(NodeKind.DIRECTIVE, name=kind, literal=target, children=children)


@dataclass(frozen=True)
class ConditionBranch:
    """One <li> of a condition: optional predicate name/value plus content.

    `value is None` marks the default branch. `name` set on the branch
    overrides the condition-level predicate name (the attributeless
    condition form desugars to per-branch names).
    """

    children: tuple[TemplateNode, ...]
    value: Optional[str] = None
    name: Optional[str] = None


@dataclass(frozen=True)
class SourceRef:
    source: str = "<string>"
    line: Optional[int] = None


@dataclass(frozen=True)
class Category:
    """One unit of knowledge: pattern/that/topic on the stimulus side, a
    template tree on the response side."""

    pattern: tuple[str, ...]
    template: TemplateNode
    that_pattern: tuple[str, ...] = ("*",)
    topic_pattern: tuple[str, ...] = ("*",)
    source: SourceRef = field(default=SourceRef(), compare=False)

    def __post_init__(self) -> None:
        if not self.pattern:
            raise ValueError("category pattern must be non-empty")


@dataclass
class ParseResult:
    categories: list[Category]
    issues: list[ParseIssue]

    @property
    def errors(self) -> list[ParseIssue]:
        return [i for i in self.issues if i.severity is Severity.ERROR]

    @property
    def warnings(self) -> list[ParseIssue]:
        return [i for i in self.issues if i.severity is Severity.WARNING]

    @property
    def ok(self) -> bool:
        return not self.errors
