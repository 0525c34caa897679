"""Template tree evaluation.

Walks a matched category's template depth first, left to right, collecting
visible text, directives, and predicate writes. Recursive matching (srai)
is delegated back to the caller through ``EvalContext.subquery`` so this
module stays independent of the dialogue pipeline; the depth bound is
enforced here.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .knowledge import BotProfile
from .model import Directive, NodeKind, TemplateNode
from .text import collapse_whitespace

log = logging.getLogger(__name__)


class RecursionLimitExceeded(Exception):
    """A srai chain exceeded the configured depth bound."""


@dataclass
class RenderedResponse:
    text: str
    directives: list[Directive] = field(default_factory=list)
    predicate_writes: list[tuple[str, str]] = field(default_factory=list)


@dataclass
class EvalContext:
    """Everything one template evaluation is allowed to touch.

    `predicates` is the live per-session map (writes stick); `subquery`
    re-enters the full respond pipeline for srai and returns the inner
    rendering, or None when nothing matched.
    """

    profile: BotProfile
    predicates: dict[str, str]
    rng: random.Random
    stars: list[list[str]] = field(default_factory=list)
    that_stars: list[list[str]] = field(default_factory=list)
    topic_stars: list[list[str]] = field(default_factory=list)
    depth: int = 0
    subquery: Optional[Callable[[str, int], Optional["RenderedResponse"]]] = None


def evaluate(template: TemplateNode, ctx: EvalContext) -> RenderedResponse:
    """Render a template; raises RecursionLimitExceeded on runaway srai."""
    response = RenderedResponse("")
    text = _eval_node(template, ctx, response)
    response.text = collapse_whitespace(text)
    return response


def _eval_children(node: TemplateNode, ctx: EvalContext, out: RenderedResponse) -> str:
    return "".join(_eval_node(child, ctx, out) for child in node.children)


def _eval_node(node: TemplateNode, ctx: EvalContext, out: RenderedResponse) -> str:
    kind = node.kind
    if kind is NodeKind.TEXT:
        return node.literal
    if kind is NodeKind.LIST_ITEM:
        return _eval_children(node, ctx, out)
    if kind is NodeKind.THINK:
        _eval_children(node, ctx, out)  # side effects only
        return ""
    if kind is NodeKind.SET:
        value = collapse_whitespace(_eval_children(node, ctx, out))
        ctx.predicates[node.name] = value
        out.predicate_writes.append((node.name, value))
        return value
    if kind is NodeKind.GET:
        return ctx.predicates.get(node.name, ctx.profile.default_predicate_value)
    if kind is NodeKind.BOT:
        return ctx.profile.properties.get(node.name, "")
    if kind is NodeKind.STAR:
        captures = ctx.stars
        if node.index > len(captures):
            log.warning("star index %d out of range (%d captures)", node.index, len(captures))
            return ""
        return " ".join(captures[node.index - 1])
    if kind is NodeKind.RANDOM:
        item = ctx.rng.choice(node.children)
        return _eval_children(item, ctx, out)
    if kind is NodeKind.CONDITION:
        return _eval_condition(node, ctx, out)
    if kind is NodeKind.SRAI:
        return _eval_srai(node, ctx, out)
    if kind is NodeKind.DIRECTIVE:
        label = collapse_whitespace(_eval_children(node, ctx, out))
        out.directives.append(Directive(kind=node.name, target=node.literal, label=label))
        return label
    raise ValueError(f"cannot evaluate node kind {kind}")


def _eval_condition(node: TemplateNode, ctx: EvalContext, out: RenderedResponse) -> str:
    default = None
    for branch in node.branches:
        if branch.value is None:
            default = branch
            continue
        name = branch.name or node.name
        current = ctx.predicates.get(name, ctx.profile.default_predicate_value)
        if _predicate_equal(current, branch.value):
            return _eval_branch(branch, ctx, out)
    if default is not None:
        return _eval_branch(default, ctx, out)
    return ""


def _eval_branch(branch, ctx: EvalContext, out: RenderedResponse) -> str:
    return "".join(_eval_node(child, ctx, out) for child in branch.children)


def _predicate_equal(current: str, wanted: str) -> bool:
    return collapse_whitespace(current).upper() == collapse_whitespace(wanted).upper()


def _eval_srai(node: TemplateNode, ctx: EvalContext, out: RenderedResponse) -> str:
    query = collapse_whitespace(_eval_children(node, ctx, out))
    if ctx.subquery is None:
        log.warning("srai encountered without a subquery hook; emitting nothing")
        return ""
    if ctx.depth + 1 > ctx.profile.max_srai_depth:
        raise RecursionLimitExceeded(f"srai depth {ctx.depth + 1} exceeds the limit")
    inner = ctx.subquery(query, ctx.depth + 1)
    if inner is None:
        return ctx.profile.default_response
    out.directives.extend(inner.directives)
    out.predicate_writes.extend(inner.predicate_writes)
    return inner.text
