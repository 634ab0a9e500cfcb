/**
 * Browser entry point: a virtual tabletop in front of the session service.
 *
 * The canvas shows the synthetic "camera view": draggable object tokens, a
 * hand marker, a face box — and on top of them, exactly what the engine
 * sent back for the latest frame.  All interaction becomes track-stream
 * records; nothing on screen is decided locally.
 */
import { SessionClient } from "./client.js";
import { buildPlan, type DrawOp } from "./render.js";
import {
  DEPTH_MAX,
  DEPTH_MIN,
  TOKEN_H,
  TOKEN_W,
  addToken,
  initialState,
  moveFaceBox,
  moveHand,
  moveToken,
  removeToken,
  setDepth,
  setHandActive,
  setHandSide,
  setLifted,
  type TabletopState,
  type Token,
} from "./state.js";
import type { ControlCmd, HandSide, InboundRec } from "./types.js";

const state: TabletopState = initialState();
const feed: string[] = [];

const client = new SessionClient({
  onEventRecord: (rec: InboundRec) => {
    if (rec.type === "event") {
      feed.push(`${rec.kind}${rec.objectId !== undefined ? ` obj ${rec.objectId}` : ""}`);
    } else if (rec.type === "effect") {
      feed.push(`→ ${rec.effect}${rec.chartTitle ? `: ${rec.chartTitle}` : ""}`);
    }
    while (feed.length > 10) feed.shift();
    renderFeed();
  },
  onError: (message: string) => {
    const el = document.getElementById("error")!;
    el.textContent = message;
    el.hidden = false;
  },
  onOpen: () => setConnectedUi(true),
  onClose: () => setConnectedUi(false),
});

// ---------------------------------------------------------------------------
// canvas + draw-op executor
// ---------------------------------------------------------------------------

const canvas = document.getElementById("table") as HTMLCanvasElement;
canvas.width = state.frameSize[0];
canvas.height = state.frameSize[1];
const ctx = canvas.getContext("2d")!;

function runOps(ops: DrawOp[]): void {
  for (const o of ops) {
    switch (o.op) {
      case "rect":
        if (o.fill) {
          ctx.fillStyle = o.fill;
          ctx.fillRect(o.x, o.y, o.w, o.h);
        }
        if (o.stroke) {
          ctx.strokeStyle = o.stroke;
          ctx.lineWidth = o.lineWidth ?? 1;
          ctx.strokeRect(o.x, o.y, o.w, o.h);
        }
        break;
      case "text":
        ctx.fillStyle = o.fill;
        ctx.font = o.font;
        ctx.textAlign = o.align ?? "left";
        ctx.fillText(o.text, o.x, o.y);
        break;
      case "poly": {
        ctx.beginPath();
        o.points.forEach(([x, y], i) => (i === 0 ? ctx.moveTo(x, y) : ctx.lineTo(x, y)));
        if (o.close) ctx.closePath();
        if (o.fill) {
          ctx.fillStyle = o.fill;
          ctx.fill();
        }
        if (o.stroke) {
          ctx.strokeStyle = o.stroke;
          ctx.lineWidth = o.lineWidth ?? 1;
          ctx.stroke();
        }
        break;
      }
      case "sector":
        ctx.beginPath();
        if (o.innerR > 0) {
          ctx.arc(o.cx, o.cy, o.r, o.a0, o.a1);
          ctx.arc(o.cx, o.cy, o.innerR, o.a1, o.a0, true);
        } else {
          ctx.moveTo(o.cx, o.cy);
          ctx.arc(o.cx, o.cy, o.r, o.a0, o.a1);
        }
        ctx.closePath();
        ctx.fillStyle = o.fill;
        ctx.fill();
        if (o.stroke) {
          ctx.strokeStyle = o.stroke;
          ctx.lineWidth = o.lineWidth ?? 1;
          ctx.stroke();
        }
        break;
      case "banner":
        ctx.fillStyle = "#8b0000";
        ctx.fillRect(0, 0, canvas.width, 40);
        ctx.fillStyle = "#ffffff";
        ctx.font = "bold 14px system-ui, sans-serif";
        ctx.textAlign = "center";
        ctx.fillText(o.text, canvas.width / 2, 26);
        break;
    }
  }
}

function drawTabletop(): void {
  ctx.fillStyle = "#2c3a2e";
  ctx.fillRect(0, 0, canvas.width, canvas.height);
  ctx.fillStyle = "#c8b08a";
  ctx.fillRect(0, canvas.height * 0.45, canvas.width, canvas.height * 0.55);

  if (state.faceVisible) {
    const [x, y, w, h] = state.faceBox;
    ctx.strokeStyle = "#f2d4b0";
    ctx.lineWidth = 2;
    ctx.strokeRect(x, y, w, h);
    ctx.font = "11px system-ui, sans-serif";
    ctx.fillStyle = "#f2d4b0";
    ctx.textAlign = "left";
    ctx.fillText("face", x + 4, y + 14);
  }

  for (const t of state.tokens) {
    const lift = t.lifted ? 14 : 0;
    const x = t.x - TOKEN_W / 2;
    const y = t.y - TOKEN_H / 2 - lift;
    if (t.lifted) {
      ctx.fillStyle = "rgba(0,0,0,0.35)";
      ctx.beginPath();
      ctx.ellipse(t.x, t.y + TOKEN_H / 2 - 6, TOKEN_W / 2, 8, 0, 0, 2 * Math.PI);
      ctx.fill();
    }
    const shade = Math.max(0, Math.min(1, (t.depth - DEPTH_MIN) / (DEPTH_MAX - DEPTH_MIN)));
    ctx.fillStyle = `hsl(210, 30%, ${62 - shade * 25}%)`;
    ctx.fillRect(x, y, TOKEN_W, TOKEN_H);
    ctx.strokeStyle = "#111";
    ctx.lineWidth = 1;
    ctx.strokeRect(x, y, TOKEN_W, TOKEN_H);
    ctx.fillStyle = "#fff";
    ctx.font = "bold 11px system-ui, sans-serif";
    ctx.textAlign = "center";
    ctx.fillText(t.classLabel, t.x, t.y - lift);
    ctx.font = "10px system-ui, sans-serif";
    ctx.fillText(`#${t.id} z=${t.depth.toFixed(2)}`, t.x, t.y - lift + 14);
  }

  if (state.hand.active) {
    ctx.strokeStyle = "#ffe08a";
    ctx.lineWidth = 2;
    ctx.beginPath();
    ctx.arc(state.hand.x, state.hand.y, 9, 0, 2 * Math.PI);
    ctx.stroke();
    ctx.beginPath();
    ctx.moveTo(state.hand.x, state.hand.y + 9);
    ctx.lineTo(state.hand.x, state.hand.y + 26);
    ctx.stroke();
    ctx.fillStyle = "#ffe08a";
    ctx.font = "10px system-ui, sans-serif";
    ctx.textAlign = "center";
    ctx.fillText(state.hand.side, state.hand.x, state.hand.y + 38);
  }
}

function frame(): void {
  drawTabletop();
  runOps(
    buildPlan(state.lastRender, {
      frameSize: state.frameSize,
      presenterView: state.presenterView,
      halted: client.halted,
    }),
  );
  requestAnimationFrame(frame);
}
requestAnimationFrame(frame);

// ---------------------------------------------------------------------------
// dragging
// ---------------------------------------------------------------------------

type DragTarget =
  | { kind: "token"; token: Token }
  | { kind: "hand" }
  | { kind: "face" }
  | null;

let dragging: DragTarget = null;

function pick(x: number, y: number): DragTarget {
  if (state.hand.active && Math.hypot(x - state.hand.x, y - state.hand.y) < 16) {
    return { kind: "hand" };
  }
  for (let i = state.tokens.length - 1; i >= 0; i--) {
    const t = state.tokens[i]!;
    if (Math.abs(x - t.x) < TOKEN_W / 2 && Math.abs(y - t.y) < TOKEN_H / 2 + 14) {
      return { kind: "token", token: t };
    }
  }
  const [fx, fy, fw, fh] = state.faceBox;
  if (state.faceVisible && x >= fx && x <= fx + fw && y >= fy && y <= fy + fh) {
    return { kind: "face" };
  }
  return null;
}

function canvasPos(ev: MouseEvent): [number, number] {
  const r = canvas.getBoundingClientRect();
  return [
    ((ev.clientX - r.left) / r.width) * canvas.width,
    ((ev.clientY - r.top) / r.height) * canvas.height,
  ];
}

canvas.addEventListener("mousedown", (ev) => {
  const [x, y] = canvasPos(ev);
  dragging = pick(x, y);
});
canvas.addEventListener("mousemove", (ev) => {
  if (!dragging) return;
  const [x, y] = canvasPos(ev);
  if (dragging.kind === "token") {
    moveToken(state, dragging.token.id, x, y);
  } else if (dragging.kind === "hand") {
    moveHand(state, x, y);
  } else {
    moveFaceBox(state, x - state.faceBox[2] / 2, y - state.faceBox[3] / 2);
  }
});
window.addEventListener("mouseup", () => (dragging = null));

// ---------------------------------------------------------------------------
// sidebar controls
// ---------------------------------------------------------------------------

function el<T extends HTMLElement>(id: string): T {
  return document.getElementById(id) as T;
}

function renderFeed(): void {
  el<HTMLUListElement>("feed").innerHTML = feed
    .map((line) => `<li>${line.replace(/&/g, "&amp;").replace(/</g, "&lt;")}</li>`)
    .join("");
}

function renderTokenList(): void {
  const list = el<HTMLDivElement>("tokens");
  list.innerHTML = "";
  for (const t of state.tokens) {
    const row = document.createElement("div");
    row.className = "token-row";

    const label = document.createElement("span");
    label.textContent = `#${t.id} ${t.classLabel}`;
    row.appendChild(label);

    const depth = document.createElement("input");
    depth.type = "range";
    depth.min = String(DEPTH_MIN);
    depth.max = String(DEPTH_MAX);
    depth.step = "0.01";
    depth.value = String(t.depth);
    depth.title = "depth (m)";
    depth.addEventListener("input", () => setDepth(state, t.id, Number(depth.value)));
    row.appendChild(depth);

    const lift = document.createElement("button");
    lift.textContent = t.lifted ? "lower" : "lift";
    lift.addEventListener("click", () => {
      setLifted(state, t.id, !t.lifted);
      renderTokenList();
    });
    row.appendChild(lift);

    const rm = document.createElement("button");
    rm.textContent = "×";
    rm.title = "remove token";
    rm.addEventListener("click", () => {
      removeToken(state, t.id);
      renderTokenList();
    });
    row.appendChild(rm);

    list.appendChild(row);
  }
}

el<HTMLButtonElement>("add-token").addEventListener("click", () => {
  const cls = el<HTMLInputElement>("token-class").value.trim();
  if (!cls) return;
  const n = state.tokens.length;
  addToken(state, cls, 260 + n * 200, 480);
  renderTokenList();
});

el<HTMLInputElement>("hand-active").addEventListener("change", (ev) => {
  setHandActive(state, (ev.target as HTMLInputElement).checked);
});
el<HTMLSelectElement>("hand-side").addEventListener("change", (ev) => {
  setHandSide(state, (ev.target as HTMLSelectElement).value as HandSide);
});
el<HTMLInputElement>("face-visible").addEventListener("change", (ev) => {
  state.faceVisible = (ev.target as HTMLInputElement).checked;
});
el<HTMLInputElement>("presenter-view").addEventListener("change", (ev) => {
  state.presenterView = (ev.target as HTMLInputElement).checked;
});

for (const cmd of ["SceneNext", "ScenePrev", "Pause", "Resume"] as ControlCmd[]) {
  el<HTMLButtonElement>(`cmd-${cmd}`).addEventListener("click", () => {
    client.sendControl(cmd);
  });
}
el<HTMLButtonElement>("cmd-SetPointingHand").addEventListener("click", () => {
  client.sendControl(
    "SetPointingHand",
    el<HTMLSelectElement>("pointing-hand").value as HandSide,
  );
});

el<HTMLButtonElement>("oracle-yes").addEventListener("click", () => sendOracle(1));
el<HTMLButtonElement>("oracle-no").addEventListener("click", () => sendOracle(0));
function sendOracle(answer: 0 | 1): void {
  const id = el<HTMLInputElement>("oracle-id").value.trim();
  if (id) client.sendOracle(id, answer);
}

// ---------------------------------------------------------------------------
// connection + 30 fps emit loop
// ---------------------------------------------------------------------------

let emitTimer: ReturnType<typeof setInterval> | null = null;

function setConnectedUi(connected: boolean): void {
  el<HTMLButtonElement>("connect").textContent = connected ? "disconnect" : "connect";
  el<HTMLSpanElement>("status").textContent = connected ? "connected" : "disconnected";
  if (!connected && emitTimer !== null) {
    clearInterval(emitTimer);
    emitTimer = null;
  }
  if (connected && emitTimer === null) {
    emitTimer = setInterval(() => {
      if (client.handshakeComplete) client.sendFrame(state);
    }, 1000 / state.fps);
  }
}

el<HTMLButtonElement>("connect").addEventListener("click", () => {
  if (client.connected) {
    client.disconnect();
    return;
  }
  el<HTMLElement>("error").hidden = true;
  const proto = location.protocol === "https:" ? "wss" : "ws";
  const socket = new WebSocket(`${proto}://${location.host}/session`);
  client.connect(state, socket, "tabletop-ui live session");
});

renderTokenList();
renderFeed();
