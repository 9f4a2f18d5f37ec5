/**
 * Viewer session: an immutable loaded report plus the assessor's working
 * set of verdicts.  The session never mutates the report or source
 * texts; the only outputs are the exported assessment file and filter
 * fragment, both in the detection tool's formats.
 */

import { CategoryVocabulary } from "./categories.js";
import {
  FilterRuleDraft,
  formatFilterFragment,
  suggestPattern,
  SuggestOptions,
} from "./filters.js";
import {
  AssessmentRecord,
  CloneRecord,
  FALSE_POSITIVE_KINDS,
  FalsePositiveKind,
  GroupRecord,
  RunReport,
  Verdict,
} from "./types.js";

export interface AssessInput {
  verdict: Verdict;
  kind?: FalsePositiveKind;
  categories?: string[];
  note?: string;
}

export class ViewerSession {
  readonly report: RunReport;
  readonly sources: Map<string, string>;
  readonly vocabulary: CategoryVocabulary;
  readonly rater: string;
  private readonly verdicts = new Map<string, AssessmentRecord>();
  private readonly groupsById = new Map<string, GroupRecord>();

  constructor(
    report: RunReport,
    sources: Map<string, string>,
    options: { rater?: string; vocabulary?: CategoryVocabulary } = {},
  ) {
    this.report = report;
    this.sources = sources;
    this.vocabulary = options.vocabulary ?? new CategoryVocabulary();
    this.rater = options.rater ?? "";
    for (const group of report.groups) {
      this.groupsById.set(group.id, group);
    }
  }

  static fromJson(
    reportText: string,
    sources: Map<string, string>,
    options: { rater?: string } = {},
  ): ViewerSession {
    let parsed: unknown;
    try {
      parsed = JSON.parse(reportText);
    } catch (error) {
      throw new Error(`report does not parse as JSON: ${String(error)}`);
    }
    const report = parsed as RunReport;
    if (!report || !Array.isArray(report.groups) || !report.sample) {
      throw new Error("report is missing its groups or sample section");
    }
    for (const group of report.groups) {
      if (typeof group.id !== "string" || !Array.isArray(group.clones)) {
        throw new Error("malformed clone group in report");
      }
    }
    return new ViewerSession(report, sources, options);
  }

  /** Sampled group ids: the assessment work queue. */
  get queue(): string[] {
    return [...this.report.sample.group_ids];
  }

  group(groupId: string): GroupRecord {
    const group = this.groupsById.get(groupId);
    if (!group) {
      throw new Error(`unknown clone group: ${groupId}`);
    }
    return group;
  }

  /** True when the document's full text was provided at load time. */
  hasSource(documentId: string): boolean {
    return this.sources.has(documentId);
  }

  /**
   * The clone's raw text.  Prefers the loaded source file (exact
   * character span); falls back to the snippet embedded in the report
   * when the source is unavailable (degraded mode).
   */
  snippet(clone: CloneRecord): string {
    const source = this.sources.get(clone.document_id);
    if (source !== undefined) {
      return source.slice(clone.char_start, clone.char_end);
    }
    return clone.snippet;
  }

  /** Context around a clone, for display; empty in degraded mode. */
  context(clone: CloneRecord, radius = 160): { before: string; after: string } {
    const source = this.sources.get(clone.document_id);
    if (source === undefined) {
      return { before: "", after: "" };
    }
    return {
      before: source.slice(Math.max(0, clone.char_start - radius), clone.char_start),
      after: source.slice(clone.char_end, clone.char_end + radius),
    };
  }

  assess(groupId: string, input: AssessInput): AssessmentRecord {
    this.group(groupId); // existence check
    const categories = [...new Set(input.categories ?? [])].sort();
    if (input.verdict === "false_positive") {
      if (!input.kind || !FALSE_POSITIVE_KINDS.includes(input.kind)) {
        throw new Error("a false positive needs one of the false-positive kinds");
      }
      if (categories.length > 0) {
        throw new Error("false positives carry no categories");
      }
    } else {
      if (input.kind) {
        throw new Error("relevant verdicts carry no false-positive kind");
      }
    }
    const record: AssessmentRecord = {
      clone_group_id: groupId,
      verdict: input.verdict,
      false_positive_kind: input.verdict === "false_positive" ? input.kind! : null,
      categories,
      note: input.note ?? "",
      rater: this.rater,
    };
    this.verdicts.set(groupId, record); // edits replace
    return record;
  }

  assessment(groupId: string): AssessmentRecord | undefined {
    return this.verdicts.get(groupId);
  }

  /** Records in report group order, assessed groups only. */
  assessments(): AssessmentRecord[] {
    const records: AssessmentRecord[] = [];
    for (const group of this.report.groups) {
      const record = this.verdicts.get(group.id);
      if (record) {
        records.push(record);
      }
    }
    return records;
  }

  /** Running precision over the current records; null before any verdict. */
  precision(): number | null {
    const records = this.assessments();
    if (records.length === 0) {
      return null;
    }
    const relevant = records.filter((r) => r.verdict === "relevant").length;
    return relevant / records.length;
  }

  /** Draft exclusion rule for a group already judged a false positive. */
  suggestFilter(groupId: string, options: SuggestOptions = {}): FilterRuleDraft {
    const record = this.verdicts.get(groupId);
    if (!record || record.verdict !== "false_positive") {
      throw new Error("filters are suggested only for false-positive groups");
    }
    const group = this.group(groupId);
    const first = group.clones[0];
    if (!first) {
      throw new Error(`group ${groupId} has no clones`);
    }
    return {
      scope: "*",
      label: record.false_positive_kind ?? "false positive",
      pattern: suggestPattern(this.snippet(first), options),
    };
  }

  /** Assessment file content (JSON lines), ready to save. */
  exportAssessments(): string {
    const records = this.assessments();
    if (records.length === 0) {
      throw new Error("nothing to export: no groups have been assessed");
    }
    const lines = records.map((record) =>
      JSON.stringify({
        clone_group_id: record.clone_group_id,
        verdict: record.verdict,
        false_positive_kind: record.false_positive_kind,
        categories: record.categories,
        note: record.note,
        rater: record.rater,
      }),
    );
    return lines.join("\n") + "\n";
  }

  /** Filter-file fragment with one suggested rule per false positive. */
  exportFilterFragment(options: SuggestOptions = {}): string {
    const rules = this.assessments()
      .filter((record) => record.verdict === "false_positive")
      .map((record) => this.suggestFilter(record.clone_group_id, options));
    return formatFilterFragment(rules);
  }
}
