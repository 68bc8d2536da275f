import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { DiffFetcher, DiffResponse, PVBundle } from "../src/types.js";

/** The engine's golden fixture bundle; the viewer is tested against the
 * exact bytes the analyze step produces. */
export function goldenBundle(): PVBundle {
  const here = dirname(fileURLToPath(import.meta.url));
  const path = join(here, "..", "..", "tests", "data", "golden_bundle.json");
  return JSON.parse(readFileSync(path, "utf-8")) as PVBundle;
}

export interface RecordingFetcher {
  fetchDiff: DiffFetcher;
  calls: [number, number][];
}

export function recordingFetcher(
  respond?: (i: number, j: number) => DiffResponse,
): RecordingFetcher {
  const calls: [number, number][] = [];
  const fetchDiff: DiffFetcher = (i, j) => {
    calls.push([i, j]);
    const response =
      respond?.(i, j) ??
      ({
        i,
        j,
        unit: "line",
        segments: [
          ["removed", [`old line of ${i}`]],
          ["added", [`new line of ${j}`]],
        ],
        chars_added: 10,
        chars_removed: 5,
      } as DiffResponse);
    return Promise.resolve(response);
  };
  return { fetchDiff, calls };
}

export function flushMicrotasks(): Promise<void> {
  return new Promise((resolve) => {
    setTimeout(resolve, 0);
  });
}
