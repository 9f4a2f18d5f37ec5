/**
 * Word-level diff used to highlight how two instances of a clone differ
 * in their raw text (case, punctuation, filler) even though their
 * normalized content is identical.
 */

export type DiffKind = "same" | "left" | "right";

export interface DiffSegment {
  kind: DiffKind;
  text: string;
}

function words(text: string): string[] {
  return text.split(/(\s+)/).filter((part) => part.length > 0);
}

/** Longest-common-subsequence diff over whitespace-separated words. */
export function diffWords(left: string, right: string): DiffSegment[] {
  const a = words(left);
  const b = words(right);
  const n = a.length;
  const m = b.length;
  const table: number[] = new Array((n + 1) * (m + 1)).fill(0);
  const at = (i: number, j: number) => i * (m + 1) + j;
  for (let i = n - 1; i >= 0; i--) {
    for (let j = m - 1; j >= 0; j--) {
      table[at(i, j)] =
        a[i] === b[j]
          ? table[at(i + 1, j + 1)]! + 1
          : Math.max(table[at(i + 1, j)]!, table[at(i, j + 1)]!);
    }
  }
  const segments: DiffSegment[] = [];
  const push = (kind: DiffKind, text: string) => {
    const last = segments[segments.length - 1];
    if (last && last.kind === kind) {
      last.text += text;
    } else {
      segments.push({ kind, text });
    }
  };
  let i = 0;
  let j = 0;
  while (i < n && j < m) {
    if (a[i] === b[j]) {
      push("same", a[i]!);
      i++;
      j++;
    } else if (table[at(i + 1, j)]! >= table[at(i, j + 1)]!) {
      push("left", a[i]!);
      i++;
    } else {
      push("right", b[j]!);
      j++;
    }
  }
  while (i < n) {
    push("left", a[i]!);
    i++;
  }
  while (j < m) {
    push("right", b[j]!);
    j++;
  }
  return segments;
}
