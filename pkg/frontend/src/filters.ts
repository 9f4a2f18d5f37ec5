/**
 * Filter-rule suggestion and serialization.
 *
 * Suggested patterns are literal escapes of a false-positive group's raw
 * snippet, restricted to the regex subset shared by this viewer and the
 * detection tool's dialect (so an exported rule compiles unchanged on
 * the other side).  Single-line snippets become bare literals; for
 * multi-line snippets every line is anchored with ^...$ (the detection
 * tool compiles rules with multiline anchors enabled).  Digit runs are
 * generalized to \d+ only on explicit request.
 */

const SPECIALS = /[.*+?^${}()|[\]\\]/g;

export function escapeLiteral(text: string): string {
  return text.replace(SPECIALS, "\\$&");
}

export interface SuggestOptions {
  generalizeDigits?: boolean;
}

export function suggestPattern(snippet: string, options: SuggestOptions = {}): string {
  const lines = snippet.split("\n");
  let pattern: string;
  if (lines.length === 1) {
    pattern = escapeLiteral(snippet);
  } else {
    pattern = lines
      .map((line) => `^${escapeLiteral(line.trim())}$`)
      .join("\\n");
  }
  if (options.generalizeDigits) {
    pattern = pattern.replace(/\d+/g, "\\d+");
  }
  return pattern;
}

export interface FilterRuleDraft {
  scope: string; // "*" or a document id
  label: string;
  pattern: string;
}

export function formatFilterLine(rule: FilterRuleDraft): string {
  if (!rule.scope) {
    throw new Error("filter rule scope must be '*' or a document id");
  }
  if (rule.scope.includes("\t") || rule.label.includes("\t")) {
    throw new Error("scope and label must not contain tabs");
  }
  return `${rule.scope}\t${rule.label}\t${rule.pattern}`;
}

export function formatFilterFragment(rules: FilterRuleDraft[]): string {
  return rules.map(formatFilterLine).join("\n") + (rules.length ? "\n" : "");
}
