"""HTTP façade: chat endpoint, admin teach/upload/logs, health, static UI."""

from __future__ import annotations

import dataclasses
import logging
import os
import secrets
from importlib import metadata, resources
from pathlib import Path
from typing import Optional

from fastapi import Depends, FastAPI, HTTPException, Request
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .engine import Bot, Session
from .knowledge import BotProfile, KnowledgeBase

log = logging.getLogger(__name__)

ENV_PREFIX = "MOOCBOT_"


@dataclasses.dataclass
class ServiceConfig:
    data_dir: Optional[str] = None
    corpus_dir: Optional[str] = None  # None = packaged corpus
    ui_dir: Optional[str] = None
    admin_token: Optional[str] = None
    max_message_chars: int = 2000
    max_srai_depth: Optional[int] = None
    session_idle_seconds: Optional[float] = None
    seed: Optional[int] = None
    host: str = "127.0.0.1"
    port: int = 8000

    @classmethod
    def from_env(cls, env=os.environ) -> "ServiceConfig":
        cfg = cls()
        cfg.data_dir = env.get(ENV_PREFIX + "DATA_DIR") or None
        cfg.corpus_dir = env.get(ENV_PREFIX + "CORPUS_DIR") or None
        cfg.ui_dir = env.get(ENV_PREFIX + "UI_DIR") or None
        cfg.admin_token = env.get(ENV_PREFIX + "ADMIN_TOKEN") or None
        cfg.max_message_chars = int(env.get(ENV_PREFIX + "MAX_MESSAGE_CHARS", cfg.max_message_chars))
        if env.get(ENV_PREFIX + "MAX_SRAI_DEPTH"):
            cfg.max_srai_depth = int(env[ENV_PREFIX + "MAX_SRAI_DEPTH"])
        if env.get(ENV_PREFIX + "SESSION_IDLE_SECONDS"):
            cfg.session_idle_seconds = float(env[ENV_PREFIX + "SESSION_IDLE_SECONDS"])
        if env.get(ENV_PREFIX + "SEED"):
            cfg.seed = int(env[ENV_PREFIX + "SEED"])
        cfg.host = env.get(ENV_PREFIX + "HOST", cfg.host)
        cfg.port = int(env.get(ENV_PREFIX + "PORT", cfg.port))
        return cfg


class DirectiveModel(BaseModel):
    kind: str
    target: str
    label: str = ""


class SentenceModel(BaseModel):
    text: str
    directive: Optional[DirectiveModel] = None


class ChatRequest(BaseModel):
    session_id: Optional[str] = None
    message: str = Field(default="")


class ChatReply(BaseModel):
    session_id: str
    sentences: list[SentenceModel]


class TeachRequest(BaseModel):
    pattern: str
    response: str


def packaged_data(*parts: str) -> Path:
    return Path(str(resources.files("moocbot").joinpath("data", *parts)))


def build_bot(config: ServiceConfig) -> Bot:
    """Assemble profile + corpus + persisted knowledge into a Bot."""
    corpus = Path(config.corpus_dir) if config.corpus_dir else packaged_data("corpus")
    profile_path = corpus / "profile.json"
    profile = BotProfile.from_file(profile_path) if profile_path.exists() else BotProfile()
    if config.max_srai_depth is not None:
        profile.max_srai_depth = config.max_srai_depth
    kb = KnowledgeBase(profile, data_dir=config.data_dir)
    report = kb.load_directory(corpus)
    for issue in report.issues:
        log.warning("corpus: %s", issue)
    kb.restore()
    return Bot(kb, seed=config.seed)


def create_app(config: Optional[ServiceConfig] = None, bot: Optional[Bot] = None) -> FastAPI:
    config = config or ServiceConfig.from_env()
    bot = bot or build_bot(config)
    app = FastAPI(title="moocbot", docs_url=None, redoc_url=None)
    app.state.bot = bot
    app.state.config = config

    def require_admin(request: Request) -> None:
        token = config.admin_token
        header = request.headers.get("authorization", "")
        supplied = header.removeprefix("Bearer ").strip() if header.startswith("Bearer ") else ""
        if not token or not supplied or not secrets.compare_digest(supplied, token):
            raise HTTPException(status_code=401, detail={"error": "admin token required"})

    def resolve_session(session_id: Optional[str]) -> Session:
        if config.session_idle_seconds is not None:
            bot.sessions.expire_sessions(config.session_idle_seconds)
        session = bot.sessions.get(session_id) if session_id else None
        return session or bot.new_session()

    @app.post("/api/chat", response_model=ChatReply, response_model_exclude_none=True)
    def chat(request: ChatRequest) -> ChatReply:
        if len(request.message) > config.max_message_chars:
            raise HTTPException(
                status_code=413,
                detail={
                    "error": "message too long",
                    "max_message_chars": config.max_message_chars,
                },
            )
        session = resolve_session(request.session_id)
        replies = bot.respond(session, request.message)
        sentences = []
        for reply in replies:
            directive = None
            if reply.directives:
                if len(reply.directives) > 1:
                    log.warning("dropping %d extra directives in one sentence", len(reply.directives) - 1)
                first = reply.directives[0]
                directive = DirectiveModel(kind=first.kind, target=first.target, label=first.label)
            sentences.append(SentenceModel(text=reply.text, directive=directive))
        return ChatReply(session_id=session.id, sentences=sentences)

    @app.post("/api/admin/teach", dependencies=[Depends(require_admin)])
    def teach(request: TeachRequest) -> dict:
        try:
            result = bot.kb.teach(request.pattern, request.response)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail={"error": str(exc)})
        return {
            "pattern": " ".join(result.category.pattern),
            "replaced": result.replaced,
        }

    @app.post("/api/admin/upload", dependencies=[Depends(require_admin)])
    async def upload(request: Request) -> dict:
        body = await request.body()
        report = bot.kb.upload_aiml(body)
        if not report.ok:
            raise HTTPException(
                status_code=422,
                detail={
                    "error": "upload rejected",
                    "issues": [
                        {"severity": i.severity.value, "message": i.message, "line": i.line}
                        for i in report.issues
                    ],
                },
            )
        return {"categories_added": report.categories_added}

    @app.get("/api/admin/logs", dependencies=[Depends(require_admin)])
    def logs(unmatched_only: bool = False, limit: Optional[int] = None) -> dict:
        entries = bot.log.query(unmatched_only=unmatched_only, limit=limit)
        return {"entries": [dataclasses.asdict(e) for e in entries]}

    @app.get("/api/health")
    def health() -> dict:
        try:
            version = metadata.version("moocbot")
        except metadata.PackageNotFoundError:
            version = "unknown"
        return {
            "status": "ok",
            "version": version,
            "categories": bot.kb.category_count(),
            "bot": bot.profile.properties.get("name", ""),
        }

    ui_dir = Path(config.ui_dir) if config.ui_dir else packaged_data("ui")
    if ui_dir.is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")
    return app
