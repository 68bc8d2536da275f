/** The viewer's only two server interactions: the bundle and diffs. */

import type { DiffFetcher, DiffResponse, PVBundle } from "./types.js";

export async function fetchBundle(base = ""): Promise<PVBundle> {
  const response = await fetch(`${base}/bundle`);
  if (!response.ok) {
    throw new Error(`GET /bundle failed: ${response.status}`);
  }
  const bundle = (await response.json()) as PVBundle;
  if (bundle.schema !== "pvbundle/1") {
    throw new Error(`unsupported bundle schema: ${bundle.schema}`);
  }
  return bundle;
}

export function httpDiffFetcher(base = ""): DiffFetcher {
  return async (i: number, j: number): Promise<DiffResponse> => {
    const response = await fetch(`${base}/diff?i=${i}&j=${j}`);
    if (!response.ok) {
      throw new Error(`GET /diff failed: ${response.status}`);
    }
    return (await response.json()) as DiffResponse;
  };
}
