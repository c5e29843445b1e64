"""Command-line interface: run sessions, benchmarks, schema export, service."""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path


def _add_run(sub):
    p = sub.add_parser("run", help="run one agent session over a zipped shapefile set")
    p.add_argument("archive", help="zip with at least one .shp/.dbf pair")
    p.add_argument("prompt", help="natural-language task")
    p.add_argument("--out", default=None, help="directory for the session workspace")
    p.add_argument("--scripted-case1", action="store_true",
                   help="use the canned demo scripts instead of a live model")
    p.add_argument("--no-planner", action="store_true", help="send the goal straight to the worker")


def _add_bench(sub):
    p = sub.add_parser("bench", help="run the benchmark suite and print metrics")
    p.add_argument("suite_dir", help="suite directory (see make-suite)")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--scripted", action="store_true", default=True,
                      help="replay ground-truth traces (default)")
    mode.add_argument("--live", action="store_true", help="drive a live model from the environment")
    p.add_argument("--report", default=None, help="write the metrics report JSON here")


def _add_tools(sub):
    p = sub.add_parser("tools", help="inspect or export the tool registry")
    p.add_argument("action", choices=["list", "export"])
    p.add_argument("--format", choices=["yaml", "json"], default="yaml")
    p.add_argument("--out", default=None)


def _add_serve(sub):
    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--port", type=int, default=int(os.environ.get("SHAPEGPT_PORT", 8040)))
    p.add_argument("--root", default=None, help="directory for session sandboxes")
    p.add_argument("--scripted-case1", action="store_true",
                   help="serve canned demo scripts instead of a live model")


def _add_make_suite(sub):
    p = sub.add_parser("make-suite", help="materialize the synthetic benchmark suite")
    p.add_argument("target_dir")


def _add_fixtures(sub):
    p = sub.add_parser("fixtures", help="write demo fixtures")
    p.add_argument("name", choices=["case1"])
    p.add_argument("--out", default="case1.zip", help="zip path to write")


def _live_clients():
    from .agents.chat import OpenAIChatClient

    return OpenAIChatClient(), OpenAIChatClient()


def cmd_run(args) -> int:
    from .agents.session import SessionConfig, run_session
    from .service.sessions import SessionStore

    if args.scripted_case1:
        from .fixtures import case1_scripts

        planner, worker = case1_scripts()
    else:
        planner, worker = _live_clients()
    out_dir = Path(args.out) if args.out else Path(tempfile.mkdtemp(prefix="shapegpt-run-"))
    store = SessionStore(out_dir, lambda: (planner, worker))
    session = store.create_from_zip(Path(args.archive).read_bytes())
    print(f"session {session.id}: {len(session.layers)} layer(s) loaded")
    cfg = SessionConfig(planner_client=planner, worker_client=worker,
                        planner_enabled=not args.no_planner)
    outcome = run_session(args.prompt, [], cfg, session.sandbox_dir,
                          workspace=session.workspace,
                          on_event=lambda e: print(json.dumps(e, sort_keys=True)))
    print(f"success={outcome.success} artifacts={outcome.artifacts}")
    print(f"workspace: {session.sandbox_dir}")
    return 0 if outcome.success else 1


def cmd_bench(args) -> int:
    from .bench import SessionRunner, TraceReplayRunner, compute_metrics, run_suite

    if args.live:
        runner = SessionRunner(lambda task, trace: _live_clients())
    else:
        runner = TraceReplayRunner()
    outcomes, traces = run_suite(args.suite_dir, runner)
    report = compute_metrics(outcomes, traces)
    print(report.to_text())
    failures = [o for o in outcomes if not o.success]
    for o in failures:
        print(f"FAILED {o.task_id}: {o.failure_reason}")
    if args.report:
        Path(args.report).write_text(report.to_json() + "\n", encoding="utf-8")
        print(f"report written to {args.report}")
    return 0 if not failures else 1


def cmd_tools(args) -> int:
    from .tools import default_registry, export_schemas

    registry = default_registry()
    if args.action == "list":
        for tool in registry.tools():
            print(f"{tool.category:>30} | {tool.name}")
        print(f"{len(registry)} tools")
        return 0
    style = "yaml-style" if args.format == "yaml" else "json-style"
    text = export_schemas(registry, style)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_serve(args) -> int:
    from .service.app import make_server, serve_forever

    if args.scripted_case1:
        from .fixtures import case1_scripts

        factory = case1_scripts
    else:
        factory = _live_clients
    root = args.root or tempfile.mkdtemp(prefix="shapegpt-service-")
    server = make_server(root, factory, port=args.port)
    serve_forever(server)
    return 0


def cmd_make_suite(args) -> int:
    from .bench import build_suite

    build_suite(args.target_dir)
    print(f"suite written to {args.target_dir}")
    return 0


def cmd_fixtures(args) -> int:
    from .fixtures import write_case1_zip

    path = write_case1_zip(args.out)
    print(f"fixture written to {path}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="shapegpt",
                                     description="shapefile analysis agent toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_run(sub)
    _add_bench(sub)
    _add_tools(sub)
    _add_serve(sub)
    _add_make_suite(sub)
    _add_fixtures(sub)
    args = parser.parse_args(argv)
    return {
        "run": cmd_run,
        "bench": cmd_bench,
        "tools": cmd_tools,
        "serve": cmd_serve,
        "make-suite": cmd_make_suite,
        "fixtures": cmd_fixtures,
    }[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
