/** Boot: fetch the bundle, build every panel, wire the shared store. */

import { fetchBundle, httpDiffFetcher } from "./api.js";
import {
  createPv2Panel,
  createPv3Panel,
  createPv4Panel,
  createPv5Panel,
  createPv6Panel,
  createPv8Panel,
} from "./charts.js";
import { createComparatorPanel } from "./comparator.js";
import { el } from "./dom.js";
import { createPlaybackPanel } from "./playback.js";
import { initialState, Store } from "./state.js";
import type { DiffFetcher, PVBundle } from "./types.js";

export function renderApp(
  root: HTMLElement,
  bundle: PVBundle,
  fetchDiff: DiffFetcher,
): Store {
  const store = new Store(initialState(bundle));
  const stats = bundle.stats;
  const header = el("header", {});
  header.append(
    el("h1", {}, `process view of a ${bundle.kind} session`),
    el(
      "p",
      { class: "stats-line", "data-testid": "stats" },
      `${stats.total_characters} characters, ${stats.total_words} words, ` +
        `${stats.total_sentences} sentences, ${stats.total_paragraphs} paragraphs, ` +
        `${stats.total_lines} lines; active ${(stats.active_ms / 60000).toFixed(1)} min ` +
        `of ${(stats.elapsed_ms / 60000).toFixed(1)} min; ` +
        `${stats.avg_chars_per_minute.toFixed(1)} chars/min`,
    ),
  );
  root.append(
    header,
    createPlaybackPanel(bundle, store),
    createPv2Panel(bundle, store),
    createPv3Panel(bundle, store),
    createPv4Panel(bundle),
    createPv5Panel(bundle),
    createPv6Panel(bundle),
    createComparatorPanel(bundle, store, fetchDiff),
    createPv8Panel(bundle),
  );
  return store;
}

async function boot(): Promise<void> {
  const root = document.getElementById("app");
  if (!root) {
    return;
  }
  try {
    const bundle = await fetchBundle();
    renderApp(root, bundle, httpDiffFetcher());
  } catch (error) {
    root.textContent = `failed to load bundle: ${String(error)}`;
  }
}

if (typeof window !== "undefined" && document.getElementById("app")) {
  void boot();
}
