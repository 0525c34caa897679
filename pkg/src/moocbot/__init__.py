"""Rule-based conversational engine speaking an AIML 1.0.1 subset.

Pipeline: parse .aiml documents into categories, store them in a priority
trie, and answer chat input through sentence splitting, substitution,
normalization, trie matching, and template evaluation with per-session
state. Ships with an HTTP chat service, an evaluation harness, and a
conversation-log FAQ miner.
"""

from .engine import Bot, Session, SessionStore
from .graph import Graphmaster, MatchResult, compose_path
from .knowledge import BotProfile, ExchangeEntry, ExchangeLog, KnowledgeBase
from .model import Category, Directive, ParseIssue, ParseResult, TemplateNode
from .parser import parse_document
from .serialize import category_to_xml, document_to_xml
from .template import EvalContext, RenderedResponse, evaluate
from .text import normalize_input, normalize_pattern, split_sentences

__all__ = [
    "Bot",
    "BotProfile",
    "Category",
    "Directive",
    "EvalContext",
    "ExchangeEntry",
    "ExchangeLog",
    "Graphmaster",
    "KnowledgeBase",
    "MatchResult",
    "ParseIssue",
    "ParseResult",
    "RenderedResponse",
    "Session",
    "SessionStore",
    "TemplateNode",
    "category_to_xml",
    "compose_path",
    "document_to_xml",
    "evaluate",
    "normalize_input",
    "normalize_pattern",
    "parse_document",
    "split_sentences",
]
