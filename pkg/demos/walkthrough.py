#!/usr/bin/env python3
"""Replay the wine-tasting fixture and narrate what the engine saw.

Usage:
    python3 demos/walkthrough.py [fixture-name]

Fixture names: wine (default), ev, fruit.  Prints one line per event and
effect with its wall-clock offset, then the replay summary.
"""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from propstage.condition import ScriptedOracle
from propstage.config import build_presentation, load_raw_config
from propstage.formats import load_stream
from propstage.session import replay_stream

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def narrate(rec: dict) -> str:
    t = f"[{rec['timestamp']:7.3f}s]" if "timestamp" in rec else " " * 10
    if rec["type"] == "control":
        extra = f" ({rec['hand']})" if "hand" in rec else ""
        return f"{t} >> operator: {rec['cmd']}{extra}"
    if rec["type"] == "oracle":
        return f"{t} >> oracle: {rec['conditionId']} = {rec['answer']}"
    if rec["type"] == "event":
        detail = {k: v for k, v in rec.items()
                  if k not in ("type", "kind", "frameIndex", "timestamp")}
        return f"{t} event  {rec['kind']:22s} {detail or ''}"
    detail = {k: v for k, v in rec.items()
              if k not in ("type", "effect", "frameIndex", "timestamp")}
    return f"{t} effect   -> {rec['effect']:20s} {detail or ''}"


def main() -> int:
    name = sys.argv[1] if len(sys.argv) > 1 else "wine"
    presentation = build_presentation(load_raw_config(FIXTURES / f"{name}.config.json"))
    stream = load_stream(FIXTURES / f"{name}.stream.jsonl")
    print(f"# {stream.description}")
    events, renders, summary = replay_stream(presentation, stream, ScriptedOracle())
    for rec in events:
        print(narrate(rec))
    print(f"\n{summary['frames']} frames, {sum(summary['events'].values())} events, "
          f"{sum(summary['effects'].values())} effects, "
          f"ended on scene {summary['finalSceneIndex']}")
    last = renders[-1]
    for p in last["placements"]:
        r = p["rect"]
        print(f"  final placement: vis {p['visId']} '{p['chart']['title']}' "
              f"at ({r[0]:.0f},{r[1]:.0f}) {r[2]:.0f}x{r[3]:.0f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
