"""The respond pipeline: sessions, sentence handling, match, evaluate, log.

Each input is split into sentences; every sentence runs substitutions,
normalization, trie matching against the current knowledge snapshot, and
template evaluation, then threads the bot's final sentence into the
session for `<that>` matching and appends one exchange-log entry.
"""

from __future__ import annotations

import logging
import random
import secrets
import threading
import time
from dataclasses import dataclass, field

from .graph import MatchResult, compose_path
from .knowledge import ExchangeEntry, KnowledgeBase
from .model import Directive
from .template import (
    EvalContext,
    RecursionLimitExceeded,
    RenderedResponse,
    evaluate,
)
from .text import normalize_input, normalize_pattern, prepare_input, split_sentences

log = logging.getLogger(__name__)

NO_MATCH = "NONE"


@dataclass
class Session:
    id: str
    rng: random.Random
    predicates: dict[str, str] = field(default_factory=lambda: {"topic": "*"})
    last_bot_sentence: list[str] = field(default_factory=lambda: ["*"])
    created: float = field(default_factory=time.time)
    last_active: float = field(default_factory=time.time)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)


class SessionStore:
    """Session registry; per-bot. Ids are 128-bit random URL-safe strings."""

    def __init__(self, seed: int | None = None):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self._seed = seed
        self._counter = 0

    def new_session(self) -> Session:
        with self._lock:
            self._counter += 1
            if self._seed is None:
                rng = random.Random()
            else:
                rng = random.Random(self._seed * 1_000_003 + self._counter)
            session = Session(id=secrets.token_urlsafe(16), rng=rng)
            self._sessions[session.id] = session
            return session

    def get(self, session_id: str) -> Session | None:
        with self._lock:
            return self._sessions.get(session_id)

    def expire_sessions(self, idle_cutoff: float) -> int:
        """Drop sessions idle for at least `idle_cutoff` seconds."""
        now = time.time()
        with self._lock:
            stale = [sid for sid, s in self._sessions.items() if now - s.last_active >= idle_cutoff]
            for sid in stale:
                del self._sessions[sid]
            return len(stale)

    def __len__(self) -> int:
        return len(self._sessions)


@dataclass
class SentenceReply:
    text: str
    directives: list[Directive] = field(default_factory=list)


class Bot:
    """A knowledge base plus its sessions; the thing that answers."""

    def __init__(self, kb: KnowledgeBase, seed: int | None = None):
        self.kb = kb
        self.sessions = SessionStore(seed)

    @property
    def profile(self):
        return self.kb.profile

    @property
    def graph(self):
        return self.kb.graph

    @property
    def log(self):
        return self.kb.log

    def new_session(self) -> Session:
        return self.sessions.new_session()

    def respond(self, session: Session, raw: str) -> list[SentenceReply]:
        """Answer one user message; always yields at least one sentence."""
        with session.lock:
            session.last_active = time.time()
            sentences = split_sentences(raw) or [""]
            return [self._respond_sentence(session, sentence) for sentence in sentences]

    # -- single sentence ----------------------------------------------------

    def _respond_sentence(self, session: Session, sentence: str) -> SentenceReply:
        profile = self.kb.profile
        graph = self.kb.graph  # snapshot; swapped atomically by writers
        match_tokens, display_tokens = prepare_input(sentence, profile.substitutions)
        depth_used = [0]

        def subquery(query: str, depth: int) -> RenderedResponse | None:
            q_match, q_display = normalize_input(query)
            if not q_match:
                return None
            result = graph.match(self._compose(session, q_match))
            if result is None:
                return None
            depth_used[0] = max(depth_used[0], depth)
            ctx = self._context(session, result, q_display, depth, subquery)
            return evaluate(result.category.template, ctx)

        matched = None
        rendered = None
        if match_tokens:
            matched = graph.match(self._compose(session, match_tokens))
        if matched is not None:
            ctx = self._context(session, matched, display_tokens, 0, subquery)
            try:
                rendered = evaluate(matched.category.template, ctx)
            except RecursionLimitExceeded:
                log.warning(
                    "srai recursion fault answering %r via pattern %r",
                    sentence,
                    " ".join(matched.category.pattern),
                )
                matched = None
            except Exception:
                log.exception("template fault answering %r", sentence)
                matched = None
        if rendered is None or matched is None:
            reply = SentenceReply(profile.default_response)
        else:
            reply = SentenceReply(rendered.text, rendered.directives)

        self._thread_that(session, reply.text)
        self.kb.log.append(
            ExchangeEntry(
                session_id=session.id,
                raw=sentence,
                normalized=" ".join(match_tokens),
                response=reply.text,
                matched_pattern=" ".join(matched.category.pattern) if matched else NO_MATCH,
                srai_depth=depth_used[0],
            )
        )
        return reply

    def _compose(self, session: Session, input_tokens: list[str]) -> list[str]:
        return compose_path(input_tokens, session.last_bot_sentence, self._topic_tokens(session))

    @staticmethod
    def _topic_tokens(session: Session) -> list[str]:
        try:
            return normalize_pattern(session.predicates.get("topic", "*"))
        except ValueError:
            return ["*"]

    def _context(
        self,
        session: Session,
        result: MatchResult,
        display_tokens: list[str],
        depth: int,
        subquery,
    ) -> EvalContext:
        # Echo captures with the user's original casing where available.
        stars = [display_tokens[a:b] for a, b in result.star_spans]
        if len(stars) != len(result.stars):  # spans cover the input section only
            stars = result.stars
        return EvalContext(
            profile=self.kb.profile,
            predicates=session.predicates,
            rng=session.rng,
            stars=stars,
            that_stars=result.that_stars,
            topic_stars=result.topic_stars,
            depth=depth,
            subquery=subquery,
        )

    @staticmethod
    def _thread_that(session: Session, response_text: str) -> None:
        parts = split_sentences(response_text)
        tokens: list[str] = []
        if parts:
            tokens, _ = normalize_input(parts[-1])
        session.last_bot_sentence = tokens or ["*"]
