#!/usr/bin/env python3
"""Drive a session frame by frame, the way the live service does.

Generates a synthetic two-object scenario, then interleaves operator
commands mid-stream: pause during a lift, resume, and a SceneNext (which
clamps at the single scene and resets its runtime, so objects re-appear).
Shows that pausing freezes placements while tracking continues, and that
controls apply on the next frame boundary.

Usage:
    python3 demos/live_session.py [seed]
"""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from propstage.condition import ScriptedOracle
from propstage.config import build_presentation
from propstage.session import Session
from propstage.synth import generate


def main() -> int:
    seed = int(sys.argv[1]) if len(sys.argv) > 1 else 7
    stream, raw = generate("lift-cycle", seed=seed, objects=2)
    session = Session(build_presentation(raw), ScriptedOracle())

    frames = stream.frames()
    pause_at, resume_at, next_at = 40, 70, 100
    frozen_rect = None
    processed = 0
    for tf in frames:
        if tf.frame_index == pause_at:
            session.queue_control({"type": "control", "cmd": "Pause"})
        if tf.frame_index == resume_at:
            session.queue_control({"type": "control", "cmd": "Resume"})
        if tf.frame_index == next_at:
            session.queue_control({"type": "control", "cmd": "SceneNext"})

        out = session.process_frame(tf)
        processed += 1
        rec = out.render_rec
        diag = rec["diagnostics"]

        for e in out.event_records:
            if e["type"] == "event":
                print(f"frame {tf.frame_index:3d}: {e['kind']} "
                      f"(object {e.get('objectId', '-')})")
            elif e["type"] == "control":
                print(f"frame {tf.frame_index:3d}: -- {e['cmd']} applied --")

        if diag["paused"] and frozen_rect is None and rec["placements"]:
            frozen_rect = rec["placements"][0]["rect"]
        if diag["paused"] and rec["placements"]:
            assert rec["placements"][0]["rect"] == frozen_rect, "placement moved while paused"

    panel = session.controller.panel()
    print(f"\nfinished on scene {panel['sceneIndex'] + 1}/{panel['sceneCount']} "
          f"('{panel['sceneName']}'), {processed} frames processed")
    print("placements stayed frozen for the whole pause" if frozen_rect else
          "nothing was on screen during the pause")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
