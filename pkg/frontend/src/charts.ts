/** SVG/DOM renderers for PV2-PV6 and PV8.
 *
 * Everything drawn here comes straight from bundle fields; the viewer
 * never recomputes similarities or identities. Hovering reveals the
 * underlying passage text or score through a shared tooltip.
 */

import { colorForId } from "./colors.js";
import { clear, el, emptyState, formatTimestamp, section, svg } from "./dom.js";
import { setGranularity, Store, ViewerState } from "./state.js";
import type { PVBundle, Pv2Series } from "./types.js";

const WIDTH = 860;
const HEIGHT = 240;
const PAD = 8;

let tooltip: HTMLElement | null = null;

export function getTooltip(): HTMLElement {
  if (tooltip === null || !document.body.contains(tooltip)) {
    tooltip = el("div", { id: "pv-tooltip", class: "tooltip hidden" });
    document.body.append(tooltip);
  }
  return tooltip;
}

function showTooltip(event: MouseEvent, lines: string[]): void {
  const tip = getTooltip();
  clear(tip);
  for (const line of lines) {
    tip.append(el("div", {}, line));
  }
  tip.classList.remove("hidden");
  tip.style.left = `${event.clientX + 12}px`;
  tip.style.top = `${event.clientY + 12}px`;
}

function hideTooltip(): void {
  getTooltip().classList.add("hidden");
}

function hoverable(node: Element, lines: () => string[]): void {
  node.addEventListener("mouseenter", (event) => {
    showTooltip(event as MouseEvent, lines());
  });
  node.addEventListener("mouseleave", hideTooltip);
}

function passageText(
  bundle: PVBundle,
  granularity: string,
  index: number,
  id: string,
): string | null {
  const snapshot = bundle.passages[granularity]?.[index];
  if (!snapshot) {
    return null;
  }
  for (const [pid, text] of snapshot) {
    if (pid === id) {
      return text;
    }
  }
  return null;
}

function latestTextFor(bundle: PVBundle, granularity: string, id: string): string {
  const snapshots = bundle.passages[granularity] ?? [];
  for (let i = snapshots.length - 1; i >= 0; i--) {
    const text = passageText(bundle, granularity, i, id);
    if (text !== null) {
      return text;
    }
  }
  return "";
}

export function stackTotals(series: Pv2Series[], snapshotCount: number): number[] {
  const totals = new Array<number>(snapshotCount).fill(0);
  for (const band of series) {
    band.series.forEach((size, i) => {
      totals[i] = (totals[i] ?? 0) + size;
    });
  }
  return totals;
}

function granularitySelector(bundle: PVBundle, store: Store): HTMLElement {
  const select = el("select", { class: "granularity-select" });
  for (const granularity of Object.keys(bundle.pv2_area)) {
    const option = el("option", { value: granularity }, granularity);
    if (granularity === store.state.granularity) {
      option.setAttribute("selected", "selected");
    }
    select.append(option);
  }
  select.addEventListener("change", () => {
    store.apply((s) => setGranularity(s, select.value));
  });
  return select;
}

function drawPv2(target: HTMLElement, bundle: PVBundle, state: ViewerState): void {
  clear(target);
  const series = bundle.pv2_area[state.granularity] ?? [];
  const count = bundle.snapshots.length;
  if (series.length === 0 || count === 0) {
    target.append(emptyState("no passages to chart"));
    return;
  }
  const totals = stackTotals(series, count);
  target.setAttribute("data-totals", JSON.stringify(totals));
  const peak = Math.max(1, ...totals);
  const xFor = (i: number) =>
    count === 1 ? WIDTH / 2 : PAD + (i * (WIDTH - 2 * PAD)) / (count - 1);
  const yFor = (value: number) => HEIGHT - PAD - (value * (HEIGHT - 2 * PAD)) / peak;

  const chart = svg("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    class: "chart pv2-chart",
    role: "img",
  });
  const cumulative = new Array<number>(count).fill(0);
  for (const band of series) {
    const bottoms = cumulative.slice();
    const tops = cumulative.map((base, i) => base + (band.series[i] ?? 0));
    const forward = tops.map((v, i) => `${xFor(i)},${yFor(v)}`);
    const backward = bottoms.map((v, i) => `${xFor(i)},${yFor(v)}`).reverse();
    const area = svg("polygon", {
      points: [...forward, ...backward].join(" "),
      fill: colorForId(band.id),
      "fill-opacity": "0.85",
      "data-id": band.id,
      class: "pv2-band",
    });
    hoverable(area, () => [
      latestTextFor(bundle, state.granularity, band.id) || "(empty passage)",
    ]);
    chart.append(area);
    tops.forEach((v, i) => {
      cumulative[i] = v;
    });
  }
  target.append(chart);
  target.append(
    el(
      "p",
      { class: "caption" },
      `final snapshot stacks to ${totals[count - 1]} characters across ${series.length} ${state.granularity}s`,
    ),
  );
}

export function createPv2Panel(bundle: PVBundle, store: Store): HTMLElement {
  const root = section(
    "PV2 - Passage sizes over time",
    "One colored band per passage identity; band height is the passage's character count.",
  );
  if (Object.keys(bundle.pv2_area).length > 1) {
    root.append(granularitySelector(bundle, store));
  }
  const target = el("div", { class: "chart-host", "data-testid": "pv2" });
  root.append(target);
  let granularity = store.state.granularity;
  drawPv2(target, bundle, store.state);
  store.subscribe((state) => {
    if (state.granularity !== granularity) {
      granularity = state.granularity;
      drawPv2(target, bundle, state);
    }
  });
  return root;
}

function drawPv3(target: HTMLElement, bundle: PVBundle, state: ViewerState): void {
  clear(target);
  const snapshots = bundle.passages[state.granularity] ?? [];
  const active = bundle.pv3_active[state.granularity] ?? [];
  const count = bundle.snapshots.length;
  if (count === 0 || snapshots.every((s) => s.length === 0)) {
    target.append(emptyState("no passages to chart"));
    return;
  }
  const peak = Math.max(
    1,
    ...snapshots.map((snap) => snap.reduce((sum, [, text]) => sum + text.length, 0)),
  );
  const barWidth = (WIDTH - 2 * PAD) / count;
  const chart = svg("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    class: "chart pv3-chart",
    role: "img",
  });
  snapshots.forEach((snap, i) => {
    const activeIds = new Set(active[i] ?? []);
    let base = 0;
    for (const [id, text] of snap) {
      const h = (text.length * (HEIGHT - 2 * PAD)) / peak;
      const rect = svg("rect", {
        x: String(PAD + i * barWidth + 1),
        y: String(HEIGHT - PAD - base - h),
        width: String(Math.max(1, barWidth - 2)),
        height: String(Math.max(0.5, h)),
        fill: colorForId(id),
        class: activeIds.has(id) ? "pv3-cell active" : "pv3-cell",
        "data-index": String(i),
        "data-id": id,
      });
      hoverable(rect, () => [
        activeIds.has(id) ? "edited at this step" : "unchanged",
        text || "(empty passage)",
      ]);
      chart.append(rect);
      base += h;
    }
  });
  target.append(chart);
}

export function createPv3Panel(bundle: PVBundle, store: Store): HTMLElement {
  const root = section(
    "PV3 - Active passages per step",
    "Highlighted cells mark the passages edited at each time step.",
  );
  const target = el("div", { class: "chart-host", "data-testid": "pv3" });
  root.append(target);
  let granularity = store.state.granularity;
  drawPv3(target, bundle, store.state);
  store.subscribe((state) => {
    if (state.granularity !== granularity) {
      granularity = state.granularity;
      drawPv3(target, bundle, state);
    }
  });
  return root;
}

export function createPv4Panel(bundle: PVBundle): HTMLElement {
  const root = section(
    "PV4 - Word frequencies",
    "Counts are case-sensitive and delimiter-driven; removed words come from the revision diffs.",
  );
  const host = el("div", { class: "wordlists", "data-testid": "pv4" });
  const blocks: [string, [string, number][]][] = [
    ["most used words", bundle.pv4_words.top],
    ["words removed while revising", bundle.pv4_words.removed],
  ];
  for (const [title, words] of blocks) {
    const block = el("div", { class: "wordlist" });
    block.append(el("h3", {}, title));
    if (words.length === 0) {
      block.append(emptyState("nothing to count"));
    } else {
      const max = words[0]?.[1] ?? 1;
      for (const [word, count] of words) {
        const row = el("div", { class: "word-row", "data-word": word, "data-count": String(count) });
        const bar = el("span", { class: "word-bar" });
        bar.style.width = `${(100 * count) / max}%`;
        row.append(el("span", { class: "word-label" }, word), bar, el("span", { class: "word-count" }, String(count)));
        block.append(row);
      }
    }
    host.append(block);
  }
  root.append(host);
  return root;
}

export function createPv5Panel(bundle: PVBundle): HTMLElement {
  const root = section(
    "PV5 - Passage similarity heatmap",
    "Cell (i, j) is the n-gram cosine similarity of final passages i and j; hover for the texts.",
  );
  const { texts, matrix } = bundle.pv5_heatmap;
  const k = matrix.length;
  if (k === 0) {
    root.append(emptyState("no passages in the final snapshot"));
    return root;
  }
  const grid = el("div", { class: "heatmap", "data-testid": "pv5", "data-size": String(k) });
  grid.style.gridTemplateColumns = `repeat(${k}, 16px)`;
  const detail = el("div", { class: "heatmap-detail" }, "hover a cell");
  for (let i = 0; i < k; i++) {
    const row = matrix[i]!;
    for (let j = 0; j < k; j++) {
      const score = row[j] ?? 0;
      const cell = el("div", {
        class: "heatmap-cell",
        "data-i": String(i),
        "data-j": String(j),
        "data-score": String(score),
      });
      cell.style.backgroundColor = `rgba(31, 90, 168, ${score.toFixed(4)})`;
      cell.addEventListener("mouseenter", () => {
        clear(detail);
        detail.append(
          el("div", { class: "score" }, `similarity ${score.toFixed(4)}`),
          el("div", {}, `[${i}] ${texts[i] ?? ""}`),
          el("div", {}, `[${j}] ${texts[j] ?? ""}`),
        );
      });
      grid.append(cell);
    }
  }
  root.append(grid, detail);
  return root;
}

export function createPv6Panel(bundle: PVBundle): HTMLElement {
  const root = section(
    "PV6 - Typing curve",
    "Blue line: document length per snapshot (left axis). Red points: characters per minute (right axis).",
  );
  const points = bundle.pv6_series;
  if (points.length === 0) {
    root.append(emptyState("no snapshots"));
    return root;
  }
  const maxLength = Math.max(1, ...points.map((p) => p.doc_length));
  const maxRate = Math.max(1, ...points.map((p) => p.chars_per_minute));
  const xFor = (i: number) =>
    points.length === 1 ? WIDTH / 2 : PAD + (i * (WIDTH - 2 * PAD)) / (points.length - 1);
  const chart = svg("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    class: "chart pv6-chart",
    role: "img",
  });
  const line = points
    .map((p, i) => `${xFor(i)},${HEIGHT - PAD - (p.doc_length * (HEIGHT - 2 * PAD)) / maxLength}`)
    .join(" ");
  chart.append(
    svg("polyline", {
      points: line,
      fill: "none",
      stroke: "#2b6cb0",
      "stroke-width": "2",
      class: "pv6-length",
    }),
  );
  points.forEach((p, i) => {
    const dot = svg("circle", {
      cx: String(xFor(i)),
      cy: String(HEIGHT - PAD - (p.chars_per_minute * (HEIGHT - 2 * PAD)) / maxRate),
      r: "4",
      fill: "#c53030",
      class: "pv6-rate",
      "data-index": String(i),
      "data-cpm": String(p.chars_per_minute),
    });
    hoverable(dot, () => [
      formatTimestamp(p.t),
      `${p.doc_length} chars in document`,
      `${p.chars_per_minute.toFixed(1)} chars/min`,
    ]);
    chart.append(dot);
  });
  const host = el("div", { class: "chart-host", "data-testid": "pv6" });
  host.append(chart);
  root.append(host);
  return root;
}

export function createPv8Panel(bundle: PVBundle): HTMLElement {
  const root = section(
    "PV8 - Code executions",
    "Green points ran cleanly; red points exited with an error.",
  );
  const events = bundle.pv8_executions;
  const host = el("div", { class: "chart-host", "data-testid": "pv8" });
  root.append(host);
  if (events.length === 0) {
    host.append(emptyState("no executions recorded"));
    return root;
  }
  const first = bundle.snapshots[0]?.t ?? events[0]!.t;
  const last = bundle.snapshots[bundle.snapshots.length - 1]?.t ?? events[events.length - 1]!.t;
  const span = Math.max(1, last - first);
  const chart = svg("svg", {
    viewBox: `0 0 ${WIDTH} 60`,
    class: "chart pv8-chart",
    role: "img",
  });
  chart.append(
    svg("line", {
      x1: String(PAD),
      y1: "30",
      x2: String(WIDTH - PAD),
      y2: "30",
      stroke: "#a0aec0",
    }),
  );
  events.forEach((event, index) => {
    const x = PAD + ((event.t - first) * (WIDTH - 2 * PAD)) / span;
    const dot = svg("circle", {
      cx: String(x),
      cy: "30",
      r: "6",
      fill: event.success ? "#2f855a" : "#c53030",
      class: event.success ? "pv8-ok" : "pv8-err",
      "data-index": String(index),
    });
    hoverable(dot, () => [
      formatTimestamp(event.t),
      event.success ? "succeeded" : `failed: ${event.detail ?? "(no detail)"}`,
    ]);
    chart.append(dot);
  });
  host.append(chart);
  return root;
}
