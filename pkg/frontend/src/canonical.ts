/**
 * Canonical JSON encoding for outbound records: keys sorted, compact
 * separators, non-ASCII escaped.  Matches the encoding the service and the
 * file formats use, so a recorded outbound message log is a well-formed
 * track-stream file (docs/formats.md).
 */

function escapeNonAscii(json: string): string {
  // JSON.stringify leaves non-ASCII characters literal; escape them so the
  // bytes match the ensure_ascii convention of the log files.
  return json.replace(/[-￿]/g, (ch) => {
    return "\\u" + ch.charCodeAt(0).toString(16).padStart(4, "0");
  });
}

function sortValue(value: unknown): unknown {
  if (Array.isArray(value)) {
    return value.map(sortValue);
  }
  if (value !== null && typeof value === "object") {
    const src = value as Record<string, unknown>;
    const out: Record<string, unknown> = {};
    for (const key of Object.keys(src).sort()) {
      const v = src[key];
      if (v !== undefined) {
        out[key] = sortValue(v);
      }
    }
    return out;
  }
  return value;
}

export function canonical(record: object): string {
  return escapeNonAscii(JSON.stringify(sortValue(record)));
}
