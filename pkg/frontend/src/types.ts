/**
 * Types for the structured report consumed by the viewer and for the
 * assessment records it produces.  These mirror the detection tool's
 * JSON report and JSON-lines assessment formats field for field.
 */

export interface ToolInfo {
  name: string;
  version: string;
}

export interface DocumentRecord {
  id: string;
  path: string;
  sha256: string;
  raw_words: number;
}

export interface CorpusInfo {
  name: string;
  language: string;
  manifest: string;
  documents: DocumentRecord[];
}

export interface Parameters {
  min_clone_length: number;
  filter_file: string | null;
  filter_file_sha256: string | null;
  sample_size: number;
  sample_seed: number;
}

export interface Metrics {
  clone_coverage: number;
  clone_groups: number;
  clones: number;
  blow_up_relative: number | null;
  blow_up_unbounded: boolean;
  blow_up_words: number;
  redundancy_free_words: number;
  total_words: number;
}

export interface Effort {
  blow_up_words: number;
  reading_minutes: number;
  inspection_hours: number;
  inspectors: number;
  hours_per_day: number;
  inspection_person_days: number;
}

export interface CloneRecord {
  document_id: string;
  stream_start: number;
  raw_word_start: number;
  raw_word_end: number;
  char_start: number;
  char_end: number;
  snippet: string;
}

export interface GroupRecord {
  id: string;
  length: number;
  clones: CloneRecord[];
}

export interface SampleInfo {
  size: number;
  seed: number;
  group_ids: string[];
}

export interface RunReport {
  tool: ToolInfo;
  corpus: CorpusInfo;
  parameters: Parameters;
  metrics: Metrics;
  effort: Effort;
  groups: GroupRecord[];
  sample: SampleInfo;
  created_at: string | null;
}

export type Verdict = "relevant" | "false_positive";

export const FALSE_POSITIVE_KINDS = [
  "document_meta_data",
  "index",
  "page_decoration",
  "open_issue",
  "template_information",
  "other",
] as const;

export type FalsePositiveKind = (typeof FALSE_POSITIVE_KINDS)[number];

export interface AssessmentRecord {
  clone_group_id: string;
  verdict: Verdict;
  false_positive_kind: FalsePositiveKind | null;
  categories: string[];
  note: string;
  rater: string;
}
