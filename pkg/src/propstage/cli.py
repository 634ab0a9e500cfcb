"""Command line entry points.

Exit codes: 0 success; 1 runtime/input failure (unreadable file, malformed
record, stream order violation); 2 usage errors (argparse); 3 config
validation errors.
"""
from __future__ import annotations

import argparse
import json
import statistics
import sys
import time

from .condition import ProtocolError, RemoteOracleClient, ScriptedOracle, ScriptEntry
from .config import ConfigError, ERROR, load_raw_config, validate_config, build_presentation
from .formats import (
    MalformedRecord,
    NonMonotonicFrame,
    SchemaMismatch,
    canonical_dumps,
    load_oracle_script,
    load_stream,
    write_event_log,
    write_render_log,
    write_stream,
)
from .session import Session, replay_stream
from .synth import SCENARIOS, generate
from .tracking import StreamOrderError

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2
EXIT_CONFIG = 3

_RUNTIME_ERRORS = (
    OSError, json.JSONDecodeError, SchemaMismatch, MalformedRecord,
    NonMonotonicFrame, StreamOrderError, ProtocolError, ConfigError, ValueError,
)


def _load_presentation_or_fail(path):
    """(presentation, exit_code).  Prints validation errors to stderr."""
    raw = load_raw_config(path)
    issues = validate_config(raw)
    errors = [i for i in issues if i.severity == ERROR]
    if errors:
        for i in issues:
            print(str(i), file=sys.stderr)
        return None, EXIT_CONFIG
    return build_presentation(raw), EXIT_OK


def _build_oracle(args):
    if getattr(args, "oracle_script", None):
        entries, latency = load_oracle_script(args.oracle_script)
        return ScriptedOracle(
            entries=[
                ScriptEntry(
                    condition_id=e["conditionId"],
                    from_time=float(e["fromTime"]),
                    to_time=float(e["toTime"]) if e.get("toTime") is not None else None,
                    answer=int(e["answer"]),
                )
                for e in entries
            ],
            latency_seconds=latency,
        )
    if getattr(args, "oracle_remote", None):
        host, _, port = args.oracle_remote.rpartition(":")
        if not host or not port.isdigit():
            raise ConfigError(f"--oracle-remote takes host:port, got {args.oracle_remote!r}")
        return RemoteOracleClient(host, int(port))
    return ScriptedOracle()   # inline oracle records in the stream still work


def cmd_validate(args) -> int:
    raw = load_raw_config(args.config)
    issues = validate_config(raw)
    for i in issues:
        print(str(i))
    errors = sum(1 for i in issues if i.severity == ERROR)
    warnings = len(issues) - errors
    print(f"{errors} error(s), {warnings} warning(s)")
    return EXIT_CONFIG if errors else EXIT_OK


def cmd_replay(args) -> int:
    presentation, code = _load_presentation_or_fail(args.config)
    if presentation is None:
        return code
    stream = load_stream(args.stream)
    event_records, render_records, summary = replay_stream(
        presentation, stream, _build_oracle(args)
    )
    if args.out_events:
        write_event_log(args.out_events, event_records)
    if args.out_render:
        write_render_log(args.out_render, render_records)
    if args.summary:
        print(canonical_dumps(summary))
    return EXIT_OK


def cmd_bench(args) -> int:
    presentation, code = _load_presentation_or_fail(args.config)
    if presentation is None:
        return code
    stream = load_stream(args.stream)
    latencies = []
    for _ in range(args.repeat):
        session = Session(presentation, _build_oracle(args))
        for rtype, payload in stream.records:
            if rtype == "control":
                session.queue_control(payload)
            elif rtype == "oracle":
                session.queue_oracle_flip(payload)
            elif rtype == "frame":
                t0 = time.perf_counter()
                session.process_frame(payload)
                latencies.append((time.perf_counter() - t0) * 1000.0)
    if not latencies:
        print("error: stream has no frames", file=sys.stderr)
        return EXIT_RUNTIME
    ordered = sorted(latencies)
    report = {
        "frames": len(latencies),
        "medianMs": round(statistics.median(ordered), 4),
        "p95Ms": round(ordered[int(0.95 * (len(ordered) - 1))], 4),
        "maxMs": round(ordered[-1], 4),
        "totalMs": round(sum(ordered), 4),
    }
    print(canonical_dumps(report))
    return EXIT_OK


def cmd_synth(args) -> int:
    stream, config = generate(args.scenario, seed=args.seed, objects=args.objects)
    write_stream(args.out, stream)
    if args.config_out:
        with open(args.config_out, "w", encoding="utf-8") as fh:
            json.dump(config, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return EXIT_OK


def cmd_serve(args) -> int:
    presentation, code = _load_presentation_or_fail(args.config)
    if presentation is None:
        return code
    import uvicorn

    from .service import create_app

    app = create_app(
        presentation,
        oracle_factory=lambda: _build_oracle(args),
        static_dir=args.frontend,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="propstage",
        description="Deterministic tabletop-presentation engine: replay, "
                    "validate, synthesize and serve track streams.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a presentation config")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("replay", help="replay a stream file through a presentation")
    p.add_argument("--stream", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--oracle-script", help="scripted oracle answers (JSONL)")
    p.add_argument("--oracle-remote", metavar="HOST:PORT",
                   help="ask a remote oracle service instead of a script")
    p.add_argument("--out-events", help="write the event log here")
    p.add_argument("--out-render", help="write the render log here")
    p.add_argument("--summary", action="store_true", help="print a run summary")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("bench", help="measure per-frame replay latency")
    p.add_argument("--stream", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--oracle-script")
    p.add_argument("--repeat", type=int, default=1)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("synth", help="generate a synthetic scenario stream")
    p.add_argument("--scenario", required=True, choices=sorted(SCENARIOS))
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--objects", type=int, default=6,
                   help="object count (random-walk only)")
    p.add_argument("--out", required=True)
    p.add_argument("--config-out", help="also write the matching config here")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("serve", help="run the live session service")
    p.add_argument("--config", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8787)
    p.add_argument("--oracle-script")
    p.add_argument("--frontend", help="directory with a built web UI to host at /")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _RUNTIME_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
