"""Serialize categories back to AIML text.

Used for the parse round-trip guarantee, for persisting taught/uploaded
knowledge, and for FAQ draft generation. Template bodies are written
verbatim (no pretty-printing) so that re-parsing reproduces the exact
template tree.
"""

from __future__ import annotations

from xml.sax.saxutils import escape, quoteattr

from .model import Category, ConditionBranch, NodeKind, TemplateNode
from .parser import DIRECTIVE_TAG


def template_to_xml(node: TemplateNode) -> str:
    kind = node.kind
    if kind is NodeKind.TEXT:
        return escape(node.literal)
    if kind is NodeKind.LIST_ITEM:  # bare sequence (template root)
        return _body(node)
    if kind is NodeKind.SRAI:
        return f"<srai>{_body(node)}</srai>"
    if kind is NodeKind.THINK:
        return f"<think>{_body(node)}</think>"
    if kind is NodeKind.SET:
        return f"<set name={quoteattr(node.name)}>{_body(node)}</set>"
    if kind is NodeKind.GET:
        return f"<get name={quoteattr(node.name)}/>"
    if kind is NodeKind.BOT:
        return f"<bot name={quoteattr(node.name)}/>"
    if kind is NodeKind.STAR:
        return "<star/>" if node.index == 1 else f'<star index="{node.index}"/>'
    if kind is NodeKind.RANDOM:
        items = "".join(f"<li>{_body(item)}</li>" for item in node.children)
        return f"<random>{items}</random>"
    if kind is NodeKind.CONDITION:
        return _condition_to_xml(node)
    if kind is NodeKind.DIRECTIVE:
        return (
            f"<{DIRECTIVE_TAG} kind={quoteattr(node.name)} "
            f"target={quoteattr(node.literal)}>{_body(node)}</{DIRECTIVE_TAG}>"
        )
    raise ValueError(f"cannot serialize node kind {kind}")


def _body(node: TemplateNode) -> str:
    return "".join(template_to_xml(child) for child in node.children)


def _branch_body(branch: ConditionBranch) -> str:
    return "".join(template_to_xml(child) for child in branch.children)


def _condition_to_xml(node: TemplateNode) -> str:
    branches = node.branches
    if (
        node.name
        and len(branches) == 1
        and branches[0].value is not None
        and branches[0].name is None
    ):
        return (
            f"<condition name={quoteattr(node.name)} "
            f"value={quoteattr(branches[0].value)}>{_branch_body(branches[0])}</condition>"
        )
    items = []
    for branch in branches:
        attrs = ""
        if branch.name:
            attrs += f" name={quoteattr(branch.name)}"
        if branch.value is not None:
            attrs += f" value={quoteattr(branch.value)}"
        items.append(f"<li{attrs}>{_branch_body(branch)}</li>")
    name_attr = f" name={quoteattr(node.name)}" if node.name else ""
    return f"<condition{name_attr}>{''.join(items)}</condition>"


def category_to_xml(category: Category) -> str:
    lines = ["<category>", f"<pattern>{escape(' '.join(category.pattern))}</pattern>"]
    if category.that_pattern != ("*",):
        lines.append(f"<that>{escape(' '.join(category.that_pattern))}</that>")
    lines.append(f"<template>{template_to_xml(category.template)}</template>")
    lines.append("</category>")
    return "\n".join(lines)


def document_to_xml(categories: list[Category], version: str = "1.0.1") -> str:
    """Render a full AIML document, grouping non-default topics."""
    parts = [f'<aiml version="{version}">']
    open_topic: tuple[str, ...] | None = None
    for category in categories:
        topic = category.topic_pattern
        if topic != (open_topic or ("*",)):
            if open_topic is not None:
                parts.append("</topic>")
                open_topic = None
            if topic != ("*",):
                parts.append(f"<topic name={quoteattr(' '.join(topic))}>")
                open_topic = topic
        parts.append(category_to_xml(category))
    if open_topic is not None:
        parts.append("</topic>")
    parts.append("</aiml>")
    return "\n".join(parts) + "\n"
