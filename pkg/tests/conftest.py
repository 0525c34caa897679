from __future__ import annotations

import threading
import time

import pytest
import uvicorn

from moocbot.engine import Bot
from moocbot.service import ServiceConfig, build_bot, create_app

ADMIN_TOKEN = "test-admin-token"

FIG_BASIC_UNITS = """\
<aiml version="1.0.1">
<category>
<pattern> HELLO</pattern>
<template>
Hello there! How are you?
</template>
</category>
</aiml>
"""

FIG_TECHNIQUES = """\
<?xml version="1.0" encoding="ISO-8859-1"?>
<aiml version="1.0.1" xmlns="http://alicebot.org/2001/AIML-1.0.1"
  xmlns:html="http://www.w3.org/1999/xhtml"
  xmlns:xsi="http://www.w3.org/2001/XMLSchema-instance"
  xsi:schemaLocation="http://alicebot.org/2001/AIML-1.0.1 http://aitools.org/aiml/schema/AIML.xsd">

<!-- AI Course -->
<!-- Chapter 1 Introduction to Artificial Intelligence -->
<category>
  <pattern>* AI TECHNIQUES</pattern>
  <template><srai>AI_TECHNIQUE</srai></template>
</category>
<category>
  <pattern>AI TECHNIQUES *</pattern>
  <template><srai>AI_TECHNIQUE</srai></template>
</category>
<category>
  <pattern>AI_TECHNIQUE</pattern>
  <template>Example of AI techniques are ruled-based, fuzzy logic, neural network, genetic algorithms,
    exhaustive search, expert systems, and logic</template>
</category>
</aiml>
"""


@pytest.fixture
def corpus_bot() -> Bot:
    """Bot over the packaged corpus, deterministic RNG, memory-only log."""
    return build_bot(ServiceConfig(seed=1234))


@pytest.fixture
def client(tmp_path):
    from fastapi.testclient import TestClient

    config = ServiceConfig(data_dir=str(tmp_path / "data"), admin_token=ADMIN_TOKEN, seed=99)
    app = create_app(config)
    with TestClient(app) as test_client:
        yield test_client


def admin_headers() -> dict[str, str]:
    return {"Authorization": f"Bearer {ADMIN_TOKEN}"}


class LiveServer:
    def __init__(self, url: str, bot: Bot):
        self.url = url
        self.bot = bot


@pytest.fixture
def live_server(tmp_path):
    """Real uvicorn server on a random port, for harness HTTP tests."""
    config = ServiceConfig(data_dir=str(tmp_path / "data"), admin_token=ADMIN_TOKEN, seed=7)
    bot = build_bot(config)
    app = create_app(config, bot=bot)
    server = uvicorn.Server(
        uvicorn.Config(app, host="127.0.0.1", port=0, log_level="warning", access_log=False)
    )
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    deadline = time.time() + 10
    while not server.started:
        if time.time() > deadline:
            raise RuntimeError("uvicorn did not start")
        time.sleep(0.01)
    port = server.servers[0].sockets[0].getsockname()[1]
    yield LiveServer(f"http://127.0.0.1:{port}", bot)
    server.should_exit = True
    thread.join(timeout=5)
