/** Shapes of the pvbundle/1 document and the /diff response. */

export interface SnapshotRecord {
  t: number;
  content: string;
}

export type SpanLabel = "common" | "added" | "removed";

export interface Pv1Frame {
  t: number;
  spans: [SpanLabel, string][];
}

export interface Pv2Series {
  id: string;
  series: number[];
}

export interface Pv6Point {
  t: number;
  doc_length: number;
  chars_per_minute: number;
}

export interface Pv7Entry {
  t: number;
  chars_added: number;
  chars_removed: number;
}

export interface ExecutionRecord {
  t: number;
  success: boolean;
  detail: string | null;
}

export interface BundleStats {
  total_characters: number;
  total_words: number;
  total_sentences: number;
  total_paragraphs: number;
  total_lines: number;
  elapsed_ms: number;
  active_ms: number;
  avg_chars_per_minute: number;
}

export interface PVBundle {
  schema: "pvbundle/1";
  kind: "text" | "code";
  config: {
    capture_interval_ms: number;
    idle_gap_ms: number;
    matching: string;
    ngram_n: number;
    sentence_delimiters: string[];
    threshold: number;
    top_k_words: number;
    word_delimiters: string[];
  };
  stats: BundleStats;
  snapshots: SnapshotRecord[];
  pv1_frames: Pv1Frame[];
  pv2_area: Record<string, Pv2Series[]>;
  pv3_active: Record<string, string[][]>;
  /** Per granularity, per snapshot: [id, text] pairs in document order. */
  passages: Record<string, [string, string][][]>;
  pv4_words: { top: [string, number][]; removed: [string, number][] };
  pv5_heatmap: { texts: string[]; matrix: number[][] };
  pv6_series: Pv6Point[];
  pv7_timeline: Pv7Entry[];
  pv8_executions: ExecutionRecord[];
}

export interface DiffResponse {
  i: number;
  j: number;
  unit: string;
  segments: [SpanLabel, string[]][];
  chars_added: number;
  chars_removed: number;
}

export type DiffFetcher = (i: number, j: number) => Promise<DiffResponse>;
