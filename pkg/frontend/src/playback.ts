/** PV1: replay the typing process frame by frame.
 *
 * Each frame interleaves common text, added spans (highlighted), and
 * removed spans (struck through). Real capture gaps are compressed to a
 * constant per-frame tick scaled by the speed control, so idle pauses do
 * not stall the replay.
 */

import { clear, el, formatTimestamp, section } from "./dom.js";
import {
  SPEED_CHOICES,
  setCursor,
  setPlaying,
  setSpeed,
  stepCursor,
  Store,
} from "./state.js";
import type { PVBundle } from "./types.js";

export const FRAME_TICK_MS = 250;

export function tickDelayMs(speed: number): number {
  return FRAME_TICK_MS / speed;
}

export function renderFrame(target: HTMLElement, bundle: PVBundle, cursor: number): void {
  clear(target);
  const frame = bundle.pv1_frames[cursor];
  if (!frame) {
    return;
  }
  for (const [label, text] of frame.spans) {
    target.append(el("span", { class: `pv1-${label}` }, text));
  }
}

export function createPlaybackPanel(bundle: PVBundle, store: Store): HTMLElement {
  const root = section(
    "PV1 - Process playback",
    "Added text is highlighted, removed text is struck through. Drag the slider or press play.",
  );
  const frameCount = bundle.pv1_frames.length;
  const last = Math.max(0, frameCount - 1);

  const playButton = el("button", { class: "play-button", type: "button" }, "Play");
  const slider = el("input", {
    type: "range",
    class: "playback-slider",
    min: "0",
    max: String(last),
    step: "1",
    value: "0",
  });
  const speedSelect = el("select", { class: "speed-select" });
  for (const choice of SPEED_CHOICES) {
    const option = el("option", { value: String(choice) }, `${choice}x`);
    if (choice === store.state.speed) {
      option.setAttribute("selected", "selected");
    }
    speedSelect.append(option);
  }
  const position = el("span", { class: "playback-position" });
  const frameView = el("div", { class: "playback-frame", "data-testid": "pv1-frame" });

  playButton.addEventListener("click", () => {
    store.apply((s) => setPlaying(s, !s.playing));
  });
  slider.addEventListener("input", () => {
    store.apply((s) => setPlaying(setCursor(s, bundle, Number(slider.value)), false));
  });
  speedSelect.addEventListener("change", () => {
    store.apply((s) => setSpeed(s, Number(speedSelect.value)));
  });

  let timer: ReturnType<typeof setTimeout> | null = null;
  const scheduleTick = () => {
    if (timer !== null) {
      clearTimeout(timer);
      timer = null;
    }
    if (!store.state.playing) {
      return;
    }
    timer = setTimeout(() => {
      store.apply((s) => {
        const advanced = stepCursor(s, bundle, 1);
        // Stop at the final frame instead of wrapping.
        return advanced.cursor === s.cursor ? setPlaying(s, false) : advanced;
      });
      scheduleTick();
    }, tickDelayMs(store.state.speed));
  };

  const sync = () => {
    const { cursor, playing } = store.state;
    slider.value = String(cursor);
    playButton.textContent = playing ? "Pause" : "Play";
    const frame = bundle.pv1_frames[cursor];
    position.textContent = frame
      ? `frame ${cursor + 1}/${frameCount} at ${formatTimestamp(frame.t)}`
      : "no frames";
    renderFrame(frameView, bundle, cursor);
    scheduleTick();
  };
  store.subscribe(sync);

  const controls = el("div", { class: "playback-controls" });
  controls.append(playButton, slider, speedSelect, position);
  root.append(controls, frameView);
  sync();
  return root;
}
