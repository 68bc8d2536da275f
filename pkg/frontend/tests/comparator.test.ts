import { describe, expect, it } from "vitest";

import { createComparatorPanel } from "../src/comparator.js";
import { initialState, selectComparePair, Store } from "../src/state.js";
import type { DiffResponse } from "../src/types.js";
import { flushMicrotasks, goldenBundle, recordingFetcher } from "./helpers.js";

const bundle = goldenBundle();
const last = bundle.snapshots.length - 1;

function mount(respond?: (i: number, j: number) => DiffResponse) {
  document.body.innerHTML = "";
  const store = new Store(initialState(bundle));
  const { fetchDiff, calls } = recordingFetcher(respond);
  const panel = createComparatorPanel(bundle, store, fetchDiff);
  document.body.append(panel);
  return { store, panel, calls };
}

describe("bubble timeline", () => {
  it("draws one bubble per timeline entry carrying the bundle counts", () => {
    const { panel } = mount();
    const bubbles = panel.querySelectorAll(".pv7-bubble");
    expect(bubbles.length).toBe(bundle.pv7_timeline.length);
    bubbles.forEach((bubble) => {
      const k = Number(bubble.getAttribute("data-index"));
      expect(Number(bubble.getAttribute("data-added"))).toBe(
        bundle.pv7_timeline[k]!.chars_added,
      );
      expect(Number(bubble.getAttribute("data-removed"))).toBe(
        bundle.pv7_timeline[k]!.chars_removed,
      );
    });
  });

  it("clicking bubble k selects and loads diff(k-1, k)", async () => {
    const { store, panel, calls } = mount();
    await flushMicrotasks(); // initial default-pair load
    const bubble = panel.querySelector('.pv7-bubble[data-index="5"]')!;
    bubble.dispatchEvent(new MouseEvent("click"));
    expect(store.state.compare).toEqual({ i: 4, j: 5 });
    await flushMicrotasks();
    expect(calls).toContainEqual([4, 5]);
  });

  it("zooming and panning survive a new selection", async () => {
    const { store, panel } = mount();
    const host = panel.querySelector("[data-testid=pv7-bubbles]")!;
    host.dispatchEvent(new WheelEvent("wheel", { deltaY: -1, bubbles: true }));
    const zoomed = store.state.timeline;
    expect(zoomed.scale).toBeGreaterThan(1);
    // Bubble 5 sits near the middle, still visible in the zoomed window.
    const bubble = panel.querySelector('.pv7-bubble[data-index="5"]')!;
    bubble.dispatchEvent(new MouseEvent("click"));
    await flushMicrotasks();
    expect(store.state.timeline).toEqual(zoomed);
  });
});

describe("date navigators", () => {
  it("arrows step each side by one snapshot", () => {
    const { store, panel } = mount();
    const leftBack = panel.querySelector(
      '.navigator-left .nav-step[data-dir="-1"]',
    ) as HTMLButtonElement;
    const rightAhead = panel.querySelector(
      '.navigator-right .nav-step[data-dir="1"]',
    ) as HTMLButtonElement;
    const before = store.state.compare;
    leftBack.click();
    expect(store.state.compare.i).toBe(before.i - 1);
    rightAhead.click(); // already at the last snapshot: clamped
    expect(store.state.compare.j).toBe(last);
  });

  it("progress bars reflect the selected indices", () => {
    const { store, panel } = mount();
    store.apply((s) => selectComparePair(s, bundle, 0, last));
    const fills = panel.querySelectorAll<HTMLElement>(".nav-progress-fill");
    expect(fills[0]!.style.width).toBe("0%");
    expect(fills[1]!.style.width).toBe("100%");
  });
});

describe("diff view", () => {
  it("renders removed lines left and added lines right", async () => {
    const { panel } = mount();
    await flushMicrotasks();
    expect(panel.querySelectorAll(".diff-left .diff-line.removed").length).toBe(1);
    expect(panel.querySelectorAll(".diff-right .diff-line.added").length).toBe(1);
    expect(panel.querySelector(".diff-summary")!.textContent).toContain(
      "10 characters added, 5 removed",
    );
  });

  it("renders a no-changes panel when both sides match", async () => {
    const { store, panel, calls } = mount();
    await flushMicrotasks();
    const before = calls.length;
    store.apply((s) => selectComparePair(s, bundle, 2, 2));
    await flushMicrotasks();
    expect(panel.querySelector("[data-testid=pv7-diff]")!.textContent).toContain(
      "no changes",
    );
    expect(calls.length).toBe(before); // identical pair needs no fetch
  });

  it("discards stale responses, keeping only the latest pair", async () => {
    let release: ((value: DiffResponse) => void) | null = null;
    const slowFirst = new Promise<DiffResponse>((resolve) => {
      release = resolve;
    });
    const { store, panel } = (() => {
      document.body.innerHTML = "";
      const store = new Store(initialState(bundle));
      let call = 0;
      const panel = createComparatorPanel(bundle, store, (i, j) => {
        call += 1;
        if (call === 1) {
          return slowFirst;
        }
        return Promise.resolve({
          i,
          j,
          unit: "line",
          segments: [["added", [`fresh ${i}:${j}`]]],
          chars_added: 1,
          chars_removed: 0,
        } as DiffResponse);
      });
      document.body.append(panel);
      return { store, panel };
    })();

    store.apply((s) => selectComparePair(s, bundle, 1, 2));
    await flushMicrotasks();
    expect(panel.textContent).toContain("fresh 1:2");
    release!({
      i: 0,
      j: 1,
      unit: "line",
      segments: [["added", ["stale response"]]],
      chars_added: 1,
      chars_removed: 0,
    });
    await flushMicrotasks();
    expect(panel.textContent).not.toContain("stale response");
    expect(panel.textContent).toContain("fresh 1:2");
  });
});
