"""Command line entry points: serve, ingest, chat, and eval run."""

from __future__ import annotations

import argparse
import sys
import tempfile
from pathlib import Path
from typing import Any, Optional, Sequence

import httpx

from .docstore import HashedBagOfWordsEmbedder, ingest as ingest_documents, save_store
from .evalharness import (
    Condition,
    EvalConfig,
    emit_report,
    load_backend_config,
    report_csv,
    run_condition,
    run_full,
)
from .scenarios import BUNDLED_NAMES, load_bundled


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="concord",
        description="Multi-user personalization: agents, evaluation, service.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--data-dir", default="./data")
    serve.add_argument(
        "--backend",
        default="reference",
        help="backend kind (reference|truncation) or path to a JSON config",
    )
    serve.add_argument("--static-dir", default=None, help="directory of UI files")
    serve.set_defaults(func=cmd_serve)

    ing = sub.add_parser("ingest", help="chunk and embed a scenario's documents")
    ing.add_argument("--scenario", required=True, choices=list(BUNDLED_NAMES))
    ing.add_argument("--out", required=True, help="path for the store snapshot")
    ing.set_defaults(func=cmd_ingest)

    chat = sub.add_parser("chat", help="terminal REPL over the HTTP API")
    chat.add_argument("--scenario", default="assistive_care", choices=list(BUNDLED_NAMES))
    chat.add_argument(
        "--base-url",
        default=None,
        help="running service URL; omitted = in-process service",
    )
    chat.add_argument(
        "--backend",
        default="reference",
        help="backend for the in-process service",
    )
    chat.set_defaults(func=cmd_chat)

    ev = sub.add_parser("eval", help="evaluation harness")
    ev_sub = ev.add_subparsers(dest="eval_command", required=True)
    run = ev_sub.add_parser("run", help="score scenarios under a condition")
    run.add_argument("--scenario", default="all", help="bundled name or 'all'")
    run.add_argument("--condition", default="both", choices=["mono", "map", "both"])
    run.add_argument("--trials", type=int, default=3)
    run.add_argument(
        "--backend",
        default="truncation",
        help="backend kind (reference|truncation) or path to a JSON config",
    )
    run.add_argument("--out-dir", default=".", help="where report files land")
    run.set_defaults(func=cmd_eval_run)

    return parser


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(args.data_dir, args.backend, static_dir=args.static_dir)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def cmd_ingest(args: argparse.Namespace) -> int:
    scenario = load_bundled(args.scenario)
    store = ingest_documents(scenario.documents_map(), HashedBagOfWordsEmbedder())
    save_store(store, args.out)
    print(f"{args.scenario}: {len(store)} chunks -> {args.out}")
    return 0


def _clock(minutes: int) -> str:
    return f"{minutes // 60:02d}:{minutes % 60:02d}"


def render_output(body: dict[str, Any]) -> str:
    lines = []
    for plan in body.get("plans", ()):
        lines.append(f"{plan['day']}:")
        actions = plan.get("actions", ())
        if not actions:
            lines.append("  (nothing scheduled)")
        for action in actions:
            users = ", ".join(action.get("users", ()))
            lines.append(
                f"  {_clock(action['start'])}-{_clock(action['end'])} "
                f"{action['description']} [{users}]"
            )
    if body.get("resolutions"):
        lines.append(f"resolutions: {len(body['resolutions'])}")
    if body.get("explanation"):
        lines.append(body["explanation"])
    if body.get("unresolved_fields"):
        lines.append("unresolved: " + ", ".join(body["unresolved_fields"]))
    return "\n".join(lines)


def _chat_client(args: argparse.Namespace) -> httpx.Client:
    if args.base_url:
        return httpx.Client(base_url=args.base_url, timeout=120.0)
    from fastapi.testclient import TestClient

    from .service import create_app

    data_dir = tempfile.mkdtemp(prefix="concord-chat-")
    return TestClient(create_app(data_dir, args.backend))


def cmd_chat(args: argparse.Namespace) -> int:
    with _chat_client(args) as client:
        response = client.post(f"/api/scenarios/{args.scenario}/sessions")
        response.raise_for_status()
        session_id = response.json()["session_id"]
        print(f"session {session_id} on {args.scenario}")
        print("type a request; 'feedback: ...' sends feedback; 'exit' quits")
        while True:
            try:
                line = input("> ")
            except EOFError:
                break
            text = line.strip()
            if not text:
                continue
            if text in ("exit", "quit"):
                break
            route = "messages"
            if text.lower().startswith("feedback:"):
                route = "feedback"
                text = text[len("feedback:") :].strip()
            reply = client.post(
                f"/api/sessions/{session_id}/{route}", json={"text": text}
            )
            if reply.status_code != 200:
                detail = reply.json().get("detail", reply.text)
                print(f"error {reply.status_code}: {detail}")
                continue
            print(render_output(reply.json()))
    return 0


def cmd_eval_run(args: argparse.Namespace) -> int:
    if args.scenario == "all":
        scenarios = tuple(BUNDLED_NAMES)
    elif args.scenario in BUNDLED_NAMES:
        scenarios = (args.scenario,)
    else:
        print(
            f"unknown scenario {args.scenario!r}; choose from "
            f"{', '.join(BUNDLED_NAMES)} or 'all'",
            file=sys.stderr,
        )
        return 2
    backend = load_backend_config(args.backend)
    if args.condition == "both":
        report = run_full(scenarios, trials=args.trials, backend=backend)
    else:
        report = run_condition(
            EvalConfig(
                scenarios=scenarios,
                condition=Condition(args.condition),
                trials=args.trials,
                backend=backend,
            )
        )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    json_path = out_dir / "report.json"
    csv_path = out_dir / "report.csv"
    emit_report(report, str(json_path), str(csv_path))
    sys.stdout.write(report_csv(report))
    print(f"{report.instances} instances -> {json_path}, {csv_path}")
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
