"""Command line entry points: serve, eval run/score/report, faq mine."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import evalharness, faq
from .knowledge import ExchangeEntry


@click.group()
def main() -> None:
    """Rule-based chat engine: service, evaluation harness, FAQ mining."""


@main.command()
@click.option("--host", default=None, help="Listen address (env MOOCBOT_HOST).")
@click.option("--port", type=int, default=None, help="Listen port (env MOOCBOT_PORT).")
@click.option("--data-dir", default=None, help="Writable directory for taught knowledge and logs.")
@click.option("--corpus-dir", default=None, help="Directory of .aiml files + profile.json (default: packaged corpus).")
@click.option("--ui-dir", default=None, help="Static chat UI bundle to serve at /.")
@click.option("--admin-token", default=None, help="Bearer token for the admin endpoints.")
@click.option("--seed", type=int, default=None, help="Deterministic RNG seed (testing).")
def serve(host, port, data_dir, corpus_dir, ui_dir, admin_token, seed) -> None:
    """Run the chat service."""
    import uvicorn

    from .service import ServiceConfig, create_app

    config = ServiceConfig.from_env()
    if host:
        config.host = host
    if port:
        config.port = port
    if data_dir:
        config.data_dir = data_dir
    if corpus_dir:
        config.corpus_dir = corpus_dir
    if ui_dir:
        config.ui_dir = ui_dir
    if admin_token:
        config.admin_token = admin_token
    if seed is not None:
        config.seed = seed
    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")


@main.group(name="eval")
def eval_group() -> None:
    """Black-box evaluation against a running chat endpoint."""


def _packaged_eval(name: str) -> Path:
    from .service import packaged_data

    return packaged_data("eval", name)


@eval_group.command()
@click.option("--dataset", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Dataset JSON (default: packaged 100-question dataset).")
@click.option("--endpoint", required=True, help="Base URL of the chat service.")
@click.option("--parallel", type=int, default=1, show_default=True)
@click.option("--shared-session", is_flag=True, help="Reuse one chat session across all items.")
@click.option("--seed", type=int, default=None, help="Shuffle item execution order deterministically.")
@click.option("--out", required=True, type=click.Path(dir_okay=False), help="Transcript output path.")
def run(dataset, endpoint, parallel, shared_session, seed, out) -> None:
    """Run every dataset item and record the transcript."""
    items = evalharness.load_dataset(dataset or _packaged_eval("dataset.json"))
    transcript = evalharness.run_dataset(
        endpoint, items, parallel=parallel, shared_session=shared_session, seed=seed
    )
    Path(out).write_text(json.dumps(transcript, indent=2) + "\n", encoding="utf-8")
    failed = sum(1 for item in transcript["items"] if item["failed"])
    checked = [item for item in transcript["items"] if item["expected_ok"] is not None]
    ok = sum(1 for item in checked if item["expected_ok"])
    click.echo(f"ran {len(items)} items, {failed} failed; transcript -> {out}")
    if checked:
        click.echo(f"smoke check: {ok}/{len(checked)} expected substrings found")
    if failed:
        sys.exit(1)


@eval_group.command()
@click.option("--transcript", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", required=True, type=click.Path(dir_okay=False), help="Scores output path.")
@click.option("--resume", is_flag=True, help="Keep existing scores and continue after them.")
def score(transcript, out, resume) -> None:
    """Interactively judge a transcript, one rubric score per item."""
    with open(transcript, encoding="utf-8") as fh:
        data = json.load(fh)
    scores = evalharness.score_interactive(data, out, resume=resume)
    click.echo(f"{len(scores)} items scored; scores -> {out}")


@eval_group.command()
@click.option("--scores", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--fixture", type=click.Choice(["paper"]), default=None,
              help="Use the shipped reference score fixture instead of --scores.")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Report output path.")
def report(scores, fixture, out) -> None:
    """Summarize scores: total, per-level frequency, percentages."""
    if fixture == "paper":
        records = evalharness.load_scores(_packaged_eval("reference_scores.json"))
        dataset = evalharness.load_dataset(_packaged_eval("dataset.json"))
        summary = evalharness.summarize(records, expected_ids={i.id for i in dataset})
    elif scores:
        records = evalharness.load_scores(scores)
        summary = evalharness.summarize(records)
    else:
        raise click.UsageError("provide --scores FILE or --fixture paper")
    payload = summary.to_dict()
    if out:
        Path(out).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    click.echo(f"total: {summary.total}/{summary.max_points}")
    for points in sorted(summary.frequency, reverse=True):
        click.echo(
            f"{points}-point: {summary.frequency[points]:>3}  ({summary.percentage[points]:.0f}%)"
        )


@main.group(name="faq")
def faq_group() -> None:
    """Mine conversation logs for frequently asked questions."""


@faq_group.command()
@click.option("--log", "log_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Exchange log (one JSON record per line).")
@click.option("--min-count", type=int, default=1, show_default=True)
@click.option("--unmatched-only", is_flag=True, help="Only questions the bot had no answer for.")
@click.option("--out", required=True, type=click.Path(dir_okay=False), help="Draft AIML output path.")
def mine(log_path, min_count, unmatched_only, out) -> None:
    """Rank frequent inputs and emit draft categories for editing."""
    entries = []
    with open(log_path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                entries.append(ExchangeEntry.from_json(line))
    ranked = faq.mine(entries, unmatched_only=unmatched_only, min_count=min_count)
    if not ranked:
        click.echo("no qualifying questions found")
        return
    Path(out).write_text(faq.draft_categories(ranked), encoding="utf-8")
    click.echo(f"{len(ranked)} draft categories -> {out}")
    for entry in ranked[:10]:
        click.echo(f"{entry.count:>4}x  {entry.text}")


if __name__ == "__main__":
    main()
