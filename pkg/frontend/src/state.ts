/** Viewer state and its pure transition functions.
 *
 * Every interaction maps an old state to a new one; the store keeps the
 * sequence, so any point in an interaction history can be replayed.
 * Cursor and comparator indices are always clamped to the bundle range.
 */

import type { PVBundle } from "./types.js";

export interface TimelineView {
  /** Left edge of the visible window as a fraction of the full timeline. */
  offset: number;
  /** Zoom factor; 1 shows the whole timeline. */
  scale: number;
}

export interface ViewerState {
  cursor: number;
  playing: boolean;
  speed: number;
  compare: { i: number; j: number };
  granularity: string;
  timeline: TimelineView;
}

export const SPEED_CHOICES = [0.5, 1, 2, 4];

export function defaultGranularity(bundle: PVBundle): string {
  return bundle.kind === "code" ? "line" : "sentence";
}

export function initialState(bundle: PVBundle): ViewerState {
  const last = Math.max(0, bundle.snapshots.length - 1);
  return {
    cursor: 0,
    playing: false,
    speed: 1,
    compare: { i: Math.max(0, last - 1), j: last },
    granularity: defaultGranularity(bundle),
    timeline: { offset: 0, scale: 1 },
  };
}

function clampIndex(bundle: PVBundle, index: number): number {
  const last = Math.max(0, bundle.snapshots.length - 1);
  return Math.min(last, Math.max(0, Math.trunc(index)));
}

export function setCursor(
  state: ViewerState,
  bundle: PVBundle,
  cursor: number,
): ViewerState {
  return { ...state, cursor: clampIndex(bundle, cursor) };
}

export function stepCursor(
  state: ViewerState,
  bundle: PVBundle,
  delta: number,
): ViewerState {
  return setCursor(state, bundle, state.cursor + delta);
}

export function setPlaying(state: ViewerState, playing: boolean): ViewerState {
  return { ...state, playing };
}

export function setSpeed(state: ViewerState, speed: number): ViewerState {
  return speed > 0 ? { ...state, speed } : state;
}

export function setGranularity(state: ViewerState, granularity: string): ViewerState {
  return { ...state, granularity };
}

export function selectComparePair(
  state: ViewerState,
  bundle: PVBundle,
  i: number,
  j: number,
): ViewerState {
  return {
    ...state,
    compare: { i: clampIndex(bundle, i), j: clampIndex(bundle, j) },
  };
}

export function stepCompare(
  state: ViewerState,
  bundle: PVBundle,
  side: "left" | "right",
  delta: number,
): ViewerState {
  const { i, j } = state.compare;
  if (side === "left") {
    return selectComparePair(state, bundle, i + delta, j);
  }
  return selectComparePair(state, bundle, i, j + delta);
}

const MAX_SCALE = 64;

export function zoomTimeline(
  state: ViewerState,
  factor: number,
  centerFraction: number,
): ViewerState {
  const scale = Math.min(MAX_SCALE, Math.max(1, state.timeline.scale * factor));
  // Keep the point under the pointer stationary while zooming.
  const span = 1 / state.timeline.scale;
  const focus = state.timeline.offset + centerFraction * span;
  const newSpan = 1 / scale;
  const offset = Math.min(
    1 - newSpan,
    Math.max(0, focus - centerFraction * newSpan),
  );
  return { ...state, timeline: { offset, scale } };
}

export function panTimeline(state: ViewerState, deltaFraction: number): ViewerState {
  const span = 1 / state.timeline.scale;
  const offset = Math.min(
    1 - span,
    Math.max(0, state.timeline.offset + deltaFraction * span),
  );
  return { ...state, timeline: { ...state.timeline, offset } };
}

export type Transition = (state: ViewerState) => ViewerState;

/** Holds the current state plus the full past/future for replay. */
export class Store {
  private past: ViewerState[] = [];
  private future: ViewerState[] = [];
  private current: ViewerState;
  private listeners = new Set<(state: ViewerState) => void>();

  constructor(state: ViewerState) {
    this.current = state;
  }

  get state(): ViewerState {
    return this.current;
  }

  apply(transition: Transition): void {
    const next = transition(this.current);
    if (next === this.current) {
      return;
    }
    this.past.push(this.current);
    this.future = [];
    this.current = next;
    this.emit();
  }

  back(): void {
    const previous = this.past.pop();
    if (previous !== undefined) {
      this.future.push(this.current);
      this.current = previous;
      this.emit();
    }
  }

  forward(): void {
    const next = this.future.pop();
    if (next !== undefined) {
      this.past.push(this.current);
      this.current = next;
      this.emit();
    }
  }

  subscribe(listener: (state: ViewerState) => void): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) {
      listener(this.current);
    }
  }
}
