"""Strict parser for the AIML 1.0.1 subset this engine speaks.

Documents are parsed all-or-nothing: a single error anywhere means zero
categories come out, matching the upload contract. Warnings (odd version
attribute, unexpected attributes) do not block.

The XML layer is a small expat loader rather than ElementTree because we
need per-element line numbers for diagnostics and ordered mixed content
(text interleaved with elements) for template bodies.
"""

from __future__ import annotations

import xml.parsers.expat
from dataclasses import dataclass, field
from typing import Optional, Union

from .model import (
    DIRECTIVE_KINDS,
    Category,
    ConditionBranch,
    NodeKind,
    ParseIssue,
    ParseResult,
    Severity,
    SourceRef,
    TemplateNode,
)
from .text import normalize_pattern

ACCEPTED_VERSIONS = ("1.0", "1.0.1")

# Tag used for response directives (hyperlink / open_window / navigate);
# see docs/aiml_subset.md.
DIRECTIVE_TAG = "link"

# Tags we recognize but refuse to execute.
UNSUPPORTED_TAGS = ("system", "javascript")


@dataclass
class _Elem:
    tag: str
    attrs: dict[str, str]
    line: int
    content: list[Union[str, "_Elem"]] = field(default_factory=list)

    def children(self) -> list["_Elem"]:
        return [c for c in self.content if isinstance(c, _Elem)]

    def text(self) -> str:
        return "".join(c for c in self.content if isinstance(c, str))

    def stray_text(self) -> bool:
        return any(isinstance(c, str) and c.strip() for c in self.content)


def _load_xml(text: Union[str, bytes]) -> tuple[Optional[_Elem], Optional[str]]:
    """Parse XML into an _Elem tree; returns (root, error_message)."""
    parser = xml.parsers.expat.ParserCreate()
    root: list[_Elem] = []
    stack: list[_Elem] = []

    def start(tag: str, attrs: dict[str, str]) -> None:
        elem = _Elem(tag, attrs, parser.CurrentLineNumber)
        if stack:
            stack[-1].content.append(elem)
        else:
            root.append(elem)
        stack.append(elem)

    def end(_tag: str) -> None:
        stack.pop()

    def chars(data: str) -> None:
        if not stack:
            return
        content = stack[-1].content
        if content and isinstance(content[-1], str):
            content[-1] += data
        else:
            content.append(data)

    parser.StartElementHandler = start
    parser.EndElementHandler = end
    parser.CharacterDataHandler = chars
    parser.buffer_text = True
    try:
        parser.Parse(text, True)
    except xml.parsers.expat.ExpatError as exc:
        return None, str(exc)
    return (root[0] if root else None), None


class _Walk:
    """One pass over the XML tree, accumulating categories and issues."""

    def __init__(self, source: str):
        self.source = source
        self.categories: list[Category] = []
        self.issues: list[ParseIssue] = []

    def error(self, message: str, line: Optional[int]) -> None:
        self.issues.append(ParseIssue(Severity.ERROR, message, self.source, line))

    def warning(self, message: str, line: Optional[int]) -> None:
        self.issues.append(ParseIssue(Severity.WARNING, message, self.source, line))

    # -- document structure -------------------------------------------------

    def document(self, doc: _Elem) -> None:
        if doc.tag != "aiml":
            self.error(f"root element must be <aiml>, found <{doc.tag}>", doc.line)
            return
        version = doc.attrs.get("version")
        if version is None:
            self.warning("<aiml> is missing the version attribute", doc.line)
        elif version not in ACCEPTED_VERSIONS:
            self.warning(f"unrecognized AIML version {version!r}; parsing as 1.0.1", doc.line)
        if doc.stray_text():
            self.error("unexpected text outside <category>", doc.line)
        for child in doc.children():
            if child.tag == "category":
                self.category(child, topic=("*",))
            elif child.tag == "topic":
                self.topic(child)
            else:
                self.error(f"unexpected <{child.tag}> element under <aiml>", child.line)

    def topic(self, elem: _Elem) -> None:
        name = elem.attrs.get("name", "")
        try:
            topic = tuple(normalize_pattern(name))
        except ValueError:
            self.error("<topic> requires a non-empty name attribute", elem.line)
            topic = ("*",)
        if elem.stray_text():
            self.error("unexpected text inside <topic>", elem.line)
        for child in elem.children():
            if child.tag == "category":
                self.category(child, topic=topic)
            else:
                self.error(f"unexpected <{child.tag}> element under <topic>", child.line)

    def category(self, elem: _Elem, topic: tuple[str, ...]) -> None:
        if elem.stray_text():
            self.error("unexpected text directly inside <category>", elem.line)
        pattern_elem = None
        that_elem = None
        template_elem = None
        for child in elem.children():
            if child.tag == "pattern" and pattern_elem is None:
                pattern_elem = child
            elif child.tag == "that" and that_elem is None:
                that_elem = child
            elif child.tag == "template" and template_elem is None:
                template_elem = child
            else:
                self.error(f"unexpected <{child.tag}> element in <category>", child.line)
        if pattern_elem is None or template_elem is None:
            missing = "pattern" if pattern_elem is None else "template"
            self.error(f"<category> is missing its <{missing}>", elem.line)
            return

        pattern = self.pattern_tokens(pattern_elem, "pattern")
        that = self.pattern_tokens(that_elem, "that") if that_elem is not None else ("*",)
        template = self.template(template_elem)
        if pattern is None or that is None or template is None:
            return
        self.categories.append(
            Category(
                pattern=pattern,
                that_pattern=that,
                topic_pattern=topic,
                template=template,
                source=SourceRef(self.source, elem.line),
            )
        )

    def pattern_tokens(self, elem: _Elem, what: str) -> Optional[tuple[str, ...]]:
        if elem.children():
            self.error(f"<{what}> may contain only text", elem.line)
            return None
        try:
            return tuple(normalize_pattern(elem.text()))
        except ValueError:
            self.error(f"<{what}> is empty after normalization", elem.line)
            return None

    # -- template trees -----------------------------------------------------

    def template(self, elem: _Elem) -> Optional[TemplateNode]:
        before = len(self.issues)
        children = _merge_text(self.body(elem))
        if any(i.severity is Severity.ERROR for i in self.issues[before:]):
            return None
        return self._template_root(children)

    @staticmethod
    def _template_root(children: tuple[TemplateNode, ...]) -> TemplateNode:
        # A template is just its content; a single-node body stays bare.
        if len(children) == 1:
            return children[0]
        return TemplateNode(NodeKind.LIST_ITEM, children=children)

    def body(self, elem: _Elem) -> tuple[TemplateNode, ...]:
        nodes: list[TemplateNode] = []
        for item in elem.content:
            if isinstance(item, str):
                nodes.append(TemplateNode.text(item))
            else:
                node = self.template_element(item)
                if node is not None:
                    nodes.append(node)
        return tuple(nodes)

    def leaf(self, elem: _Elem) -> bool:
        if elem.children() or elem.stray_text():
            self.error(f"<{elem.tag}> must be empty", elem.line)
            return False
        return True

    def required_attr(self, elem: _Elem, attr: str) -> Optional[str]:
        value = elem.attrs.get(attr)
        if value is None or not value.strip():
            self.error(f"<{elem.tag}> requires a {attr} attribute", elem.line)
            return None
        return value.strip()

    def template_element(self, elem: _Elem) -> Optional[TemplateNode]:
        tag = elem.tag
        if tag in UNSUPPORTED_TAGS:
            self.error(f"unsupported tag <{tag}>: execution is disabled", elem.line)
            return None
        if tag == "srai":
            return TemplateNode(NodeKind.SRAI, children=self.body(elem))
        if tag == "think":
            return TemplateNode(NodeKind.THINK, children=self.body(elem))
        if tag == "set":
            name = self.required_attr(elem, "name")
            if name is None:
                return None
            return TemplateNode(NodeKind.SET, name=name, children=self.body(elem))
        if tag == "get":
            name = self.required_attr(elem, "name")
            if name is None or not self.leaf(elem):
                return None
            return TemplateNode(NodeKind.GET, name=name)
        if tag == "bot":
            name = self.required_attr(elem, "name")
            if name is None or not self.leaf(elem):
                return None
            return TemplateNode(NodeKind.BOT, name=name)
        if tag == "star":
            if not self.leaf(elem):
                return None
            raw = elem.attrs.get("index", "1")
            try:
                index = int(raw)
                if index < 1:
                    raise ValueError
            except ValueError:
                self.error(f"<star> index must be a positive integer, got {raw!r}", elem.line)
                return None
            return TemplateNode(NodeKind.STAR, index=index)
        if tag == "random":
            return self.random(elem)
        if tag == "condition":
            return self.condition(elem)
        if tag == DIRECTIVE_TAG:
            return self.directive(elem)
        if tag == "li":
            self.error("<li> is only allowed inside <random> or <condition>", elem.line)
            return None
        self.error(f"unknown template tag <{tag}>", elem.line)
        return None

    def random(self, elem: _Elem) -> Optional[TemplateNode]:
        if elem.stray_text():
            self.error("<random> may contain only <li> items", elem.line)
            return None
        items: list[TemplateNode] = []
        for child in elem.children():
            if child.tag != "li":
                self.error(f"unexpected <{child.tag}> inside <random>", child.line)
                return None
            items.append(TemplateNode(NodeKind.LIST_ITEM, children=self.body(child)))
        if not items:
            self.error("<random> needs at least one <li>", elem.line)
            return None
        return TemplateNode(NodeKind.RANDOM, children=tuple(items))

    def condition(self, elem: _Elem) -> Optional[TemplateNode]:
        name = elem.attrs.get("name", "").strip()
        value = elem.attrs.get("value")
        if name and value is not None:
            # Block form: renders its body when the predicate matches.
            branch = ConditionBranch(children=self.body(elem), value=value)
            return TemplateNode(NodeKind.CONDITION, name=name, branches=(branch,))
        if elem.stray_text():
            self.error("<condition> in list form may contain only <li> items", elem.line)
            return None
        branches: list[ConditionBranch] = []
        defaults = 0
        for child in elem.children():
            if child.tag != "li":
                self.error(f"unexpected <{child.tag}> inside <condition>", child.line)
                return None
            li_name = child.attrs.get("name", "").strip() or None
            li_value = child.attrs.get("value")
            if name:
                if li_name:
                    self.error("<li> may not name a predicate when <condition> already does", child.line)
                    return None
            elif li_value is not None and not li_name:
                self.error("<li> in attributeless <condition> requires a name with its value", child.line)
                return None
            if li_value is None:
                defaults += 1
            branches.append(ConditionBranch(children=self.body(child), value=li_value, name=li_name))
        if not branches:
            self.error("<condition> needs at least one <li>", elem.line)
            return None
        if defaults > 1:
            self.error("<condition> allows at most one default <li>", elem.line)
            return None
        return TemplateNode(NodeKind.CONDITION, name=name, branches=tuple(branches))

    def directive(self, elem: _Elem) -> Optional[TemplateNode]:
        kind = elem.attrs.get("kind", "").strip()
        if kind not in DIRECTIVE_KINDS:
            self.error(
                f"<{DIRECTIVE_TAG}> kind must be one of {', '.join(DIRECTIVE_KINDS)}", elem.line
            )
            return None
        target = self.required_attr(elem, "target")
        if target is None:
            return None
        return TemplateNode(NodeKind.DIRECTIVE, name=kind, literal=target, children=self.body(elem))


def _merge_text(nodes: tuple[TemplateNode, ...]) -> tuple[TemplateNode, ...]:
    merged: list[TemplateNode] = []
    for node in nodes:
        if (
            node.kind is NodeKind.TEXT
            and merged
            and merged[-1].kind is NodeKind.TEXT
        ):
            merged[-1] = TemplateNode.text(merged[-1].literal + node.literal)
        else:
            merged.append(node)
    return tuple(merged)


def parse_document(text: Union[str, bytes], source: str = "<string>") -> ParseResult:
    """Parse one AIML document; all-or-nothing.

    Any error yields zero categories. Warnings ride along with a successful
    parse.
    """
    root, xml_error = _load_xml(text)
    if xml_error is not None:
        return ParseResult([], [ParseIssue(Severity.ERROR, f"malformed XML: {xml_error}", source)])
    if root is None:
        return ParseResult([], [ParseIssue(Severity.ERROR, "empty document", source)])
    walk = _Walk(source)
    walk.document(root)
    if any(i.severity is Severity.ERROR for i in walk.issues):
        return ParseResult([], walk.issues)
    return ParseResult(walk.categories, walk.issues)
