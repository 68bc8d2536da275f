/** PV7: any-to-any revision comparator.
 *
 * Three coordinated parts: two date navigators with progress bars, a
 * side-by-side diff of the selected snapshot pair, and a pannable,
 * zoomable bubble timeline (bubble area tracks characters added or
 * removed, log-scaled; green means net addition, red net removal).
 * Clicking bubble k compares k−1 against k. Diff responses arriving out
 * of order are discarded; only the latest selection may render.
 */

import { clear, el, emptyState, formatTimestamp, section, svg } from "./dom.js";
import {
  panTimeline,
  selectComparePair,
  stepCompare,
  Store,
  zoomTimeline,
} from "./state.js";
import type { DiffFetcher, DiffResponse, PVBundle } from "./types.js";

const WIDTH = 860;
const HEIGHT = 150;
const PAD = 10;

function navigator(
  side: "left" | "right",
  bundle: PVBundle,
  store: Store,
): HTMLElement {
  const root = el("div", { class: `navigator navigator-${side}` });
  const progress = el("div", { class: "nav-progress" });
  const fill = el("div", { class: "nav-progress-fill" });
  progress.append(fill);
  const back = el("button", { type: "button", class: "nav-step", "data-dir": "-1" }, "◀");
  const label = el("span", { class: "nav-label" });
  const ahead = el("button", { type: "button", class: "nav-step", "data-dir": "1" }, "▶");
  back.addEventListener("click", () => {
    store.apply((s) => stepCompare(s, bundle, side, -1));
  });
  ahead.addEventListener("click", () => {
    store.apply((s) => stepCompare(s, bundle, side, 1));
  });
  const row = el("div", { class: "nav-row" });
  row.append(back, label, ahead);
  root.append(progress, row);

  const last = Math.max(1, bundle.snapshots.length - 1);
  const sync = () => {
    const index = side === "left" ? store.state.compare.i : store.state.compare.j;
    const snap = bundle.snapshots[index];
    label.textContent = snap
      ? `#${index} ${formatTimestamp(snap.t)}`
      : `#${index}`;
    fill.style.width = `${(100 * index) / last}%`;
  };
  store.subscribe(sync);
  sync();
  return root;
}

function renderDiff(target: HTMLElement, response: DiffResponse): void {
  clear(target);
  if (response.i === response.j) {
    target.append(emptyState("no changes: both sides show the same snapshot"));
    return;
  }
  const summary = el(
    "p",
    { class: "diff-summary" },
    `${response.chars_added} characters added, ${response.chars_removed} removed`,
  );
  const left = el("pre", { class: "diff-column diff-left" });
  const right = el("pre", { class: "diff-column diff-right" });
  for (const [label, units] of response.segments) {
    for (const unit of units) {
      if (label === "common") {
        left.append(el("div", { class: "diff-line" }, unit));
        right.append(el("div", { class: "diff-line" }, unit));
      } else if (label === "removed") {
        left.append(el("div", { class: "diff-line removed" }, unit));
      } else {
        right.append(el("div", { class: "diff-line added" }, unit));
      }
    }
  }
  const columns = el("div", { class: "diff-columns" });
  columns.append(left, right);
  target.append(summary, columns);
}

function bubbleRadius(entry: { chars_added: number; chars_removed: number }): number {
  const size = entry.chars_added + entry.chars_removed;
  return 3 + 5 * Math.log10(1 + size);
}

function drawBubbles(
  target: HTMLElement,
  bundle: PVBundle,
  store: Store,
): void {
  clear(target);
  const timeline = bundle.pv7_timeline;
  if (timeline.length === 0) {
    target.append(emptyState("no snapshots"));
    return;
  }
  const first = timeline[0]!.t;
  const span = Math.max(1, timeline[timeline.length - 1]!.t - first);
  const { offset, scale } = store.state.timeline;
  const xFor = (t: number) => {
    const fraction = (t - first) / span;
    return PAD + ((fraction - offset) * scale) * (WIDTH - 2 * PAD);
  };
  const chart = svg("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    class: "chart pv7-chart",
    role: "img",
  });
  chart.append(
    svg("line", {
      x1: String(PAD),
      y1: String(HEIGHT - 20),
      x2: String(WIDTH - PAD),
      y2: String(HEIGHT - 20),
      stroke: "#a0aec0",
    }),
  );
  timeline.forEach((entry, k) => {
    const x = xFor(entry.t);
    if (x < -20 || x > WIDTH + 20) {
      return; // outside the zoomed window
    }
    const net = entry.chars_added - entry.chars_removed;
    const radius = bubbleRadius(entry);
    const selected = store.state.compare.j === k;
    const bubble = svg("circle", {
      cx: String(x),
      cy: String(HEIGHT - 20 - radius - 4),
      r: String(radius),
      fill: net >= 0 ? "#2f855a" : "#c53030",
      "fill-opacity": selected ? "1" : "0.6",
      class: selected ? "pv7-bubble selected" : "pv7-bubble",
      "data-index": String(k),
      "data-added": String(entry.chars_added),
      "data-removed": String(entry.chars_removed),
    });
    bubble.addEventListener("click", () => {
      store.apply((s) => selectComparePair(s, bundle, Math.max(0, k - 1), k));
    });
    bubble.append(
      svg(
        "title",
        {},
        `${formatTimestamp(entry.t)}\n+${entry.chars_added} / -${entry.chars_removed} characters`,
      ),
    );
    chart.append(bubble);
  });
  target.append(chart);
}

export function createComparatorPanel(
  bundle: PVBundle,
  store: Store,
  fetchDiff: DiffFetcher,
): HTMLElement {
  const root = section(
    "PV7 - Revision comparator",
    "Click a bubble to compare that revision with its predecessor; arrows step either side. Wheel zooms, drag pans.",
  );
  const navs = el("div", { class: "navigators" });
  navs.append(navigator("left", bundle, store), navigator("right", bundle, store));
  const diffView = el("div", { class: "diff-view", "data-testid": "pv7-diff" }, "select two revisions");
  const bubbleHost = el("div", { class: "chart-host", "data-testid": "pv7-bubbles" });
  root.append(navs, diffView, bubbleHost);

  let requestSeq = 0;
  let renderedPair = "";
  const loadDiff = () => {
    const { i, j } = store.state.compare;
    const pair = `${i}:${j}`;
    if (pair === renderedPair) {
      return;
    }
    renderedPair = pair;
    if (i === j) {
      renderDiff(diffView, {
        i,
        j,
        unit: "line",
        segments: [],
        chars_added: 0,
        chars_removed: 0,
      });
      return;
    }
    const seq = ++requestSeq;
    fetchDiff(i, j).then(
      (response) => {
        if (seq === requestSeq) {
          // Stale responses (an older selection resolving late) are dropped.
          renderDiff(diffView, response);
        }
      },
      () => {
        if (seq === requestSeq) {
          clear(diffView);
          diffView.append(emptyState("failed to load the diff"));
        }
      },
    );
  };

  const syncBubbles = () => drawBubbles(bubbleHost, bundle, store);

  bubbleHost.addEventListener("wheel", (event) => {
    event.preventDefault();
    const factor = (event as WheelEvent).deltaY < 0 ? 1.25 : 0.8;
    store.apply((s) => zoomTimeline(s, factor, 0.5));
  });
  let dragX: number | null = null;
  bubbleHost.addEventListener("mousedown", (event) => {
    dragX = (event as MouseEvent).clientX;
  });
  bubbleHost.addEventListener("mouseup", () => {
    dragX = null;
  });
  bubbleHost.addEventListener("mousemove", (event) => {
    if (dragX === null) {
      return;
    }
    const dx = (event as MouseEvent).clientX - dragX;
    if (dx !== 0) {
      dragX = (event as MouseEvent).clientX;
      store.apply((s) => panTimeline(s, -dx / WIDTH));
    }
  });

  store.subscribe(() => {
    syncBubbles();
    loadDiff();
  });
  syncBubbles();
  loadDiff();
  return root;
}
