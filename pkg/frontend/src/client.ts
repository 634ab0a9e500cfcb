/**
 * Session service connection: handshake, record transcripts, dispatch.
 *
 * The client is deliberately dumb.  It sends canonical records, keeps the
 * exact bytes of everything sent and received, and routes inbound records
 * to callbacks.  The recorded outbound lines form a valid track-stream
 * file; the recorded inbound lines, demultiplexed by type per
 * docs/protocol.md, are the event and render logs the CLI would write —
 * the equivalence the integration tests check byte for byte.
 */
import { canonical } from "./canonical.js";
import { sampleFrame, streamHeader } from "./emit.js";
import type { TabletopState } from "./state.js";
import type {
  ControlCmd,
  HandSide,
  InboundRec,
  LogHeader,
  RenderRec,
} from "./types.js";
import { SCHEMA_VERSION } from "./types.js";

/** The slice of the WebSocket API the client uses; `ws` provides it too. */
export interface SocketLike {
  send(data: string): void;
  close(): void;
  addEventListener(type: "open", cb: () => void): void;
  addEventListener(type: "close", cb: () => void): void;
  addEventListener(type: "message", cb: (ev: { data: unknown }) => void): void;
}

export interface ClientCallbacks {
  onRender?: (rec: RenderRec) => void;
  onEventRecord?: (rec: InboundRec) => void;
  onError?: (message: string) => void;
  onOpen?: () => void;
  onClose?: () => void;
}

export class SessionClient {
  private socket: SocketLike | null = null;
  private callbacks: ClientCallbacks;
  private headersSeen = 0;
  /** Set when the service speaks a different schema; rendering halts. */
  halted = false;

  /** Exact strings sent, in order — a track-stream file, line per entry. */
  readonly outboundLines: string[] = [];
  /** Exact strings received that belong to the event log. */
  readonly eventLogLines: string[] = [];
  /** Exact strings received that belong to the render log. */
  readonly renderLogLines: string[] = [];

  constructor(callbacks: ClientCallbacks = {}) {
    this.callbacks = callbacks;
  }

  connect(state: TabletopState, socket: SocketLike, description = ""): void {
    this.socket = socket;
    this.headersSeen = 0;
    this.halted = false;
    socket.addEventListener("open", () => {
      this.sendRecord(streamHeader(state, description));
      state.connected = true;
      this.callbacks.onOpen?.();
    });
    socket.addEventListener("close", () => {
      state.connected = false;
      this.socket = null;
      this.callbacks.onClose?.();
    });
    socket.addEventListener("message", (ev) => {
      this.receive(String(ev.data), state);
    });
  }

  disconnect(): void {
    this.socket?.close();
  }

  get connected(): boolean {
    return this.socket !== null;
  }

  /** True once both log headers arrived; frames may be sent. */
  get handshakeComplete(): boolean {
    return this.headersSeen >= 2;
  }

  private sendRecord(rec: object): void {
    if (!this.socket) return;
    const line = canonical(rec);
    this.outboundLines.push(line);
    this.socket.send(line);
  }

  sendFrame(state: TabletopState): void {
    if (!this.socket) return;
    this.sendRecord(sampleFrame(state));
  }

  sendControl(cmd: ControlCmd, hand?: HandSide): void {
    this.sendRecord(hand ? { type: "control", cmd, hand } : { type: "control", cmd });
  }

  sendOracle(conditionId: string, answer: 0 | 1): void {
    this.sendRecord({ type: "oracle", conditionId, answer });
  }

  private receive(text: string, state: TabletopState): void {
    let rec: InboundRec;
    try {
      rec = JSON.parse(text) as InboundRec;
    } catch {
      this.callbacks.onError?.(`unparseable message: ${text.slice(0, 80)}`);
      return;
    }
    if (rec.type === "header") {
      this.handleHeader(rec, text);
      return;
    }
    if (rec.type === "error") {
      state.lastError = rec.message;
      this.callbacks.onError?.(rec.message);
      return; // protocol-only; never part of a log
    }
    if (this.halted) return;
    if (rec.type === "render") {
      this.renderLogLines.push(text);
      state.lastRender = rec;
      this.callbacks.onRender?.(rec);
    } else {
      this.eventLogLines.push(text);
      this.callbacks.onEventRecord?.(rec);
    }
  }

  private handleHeader(rec: LogHeader, text: string): void {
    if (rec.schemaVersion !== SCHEMA_VERSION) {
      this.halted = true;
      this.callbacks.onError?.(
        `service speaks schemaVersion ${rec.schemaVersion}, ` +
          `this client speaks ${SCHEMA_VERSION} — rendering halted`,
      );
      return;
    }
    this.headersSeen += 1;
    if (rec.kind === "event-log") {
      this.eventLogLines.unshift(text);
    } else if (rec.kind === "render-log") {
      this.renderLogLines.unshift(text);
    }
  }
}
