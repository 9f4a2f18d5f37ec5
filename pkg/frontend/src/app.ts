/**
 * Browser entry point: wires file pickers, the group list, the
 * side-by-side clone panes, assessment controls, and exports onto a
 * ViewerSession.  Everything runs client-side against local files;
 * nothing leaves the machine.
 */

import { diffWords } from "./diff.js";
import { ViewerSession } from "./session.js";
import { CloneRecord, FALSE_POSITIVE_KINDS, FalsePositiveKind, GroupRecord } from "./types.js";

let session: ViewerSession | null = null;
let reportText: string | null = null;
const sourceFiles = new Map<string, string>();
let selectedGroupId: string | null = null;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function setStatus(message: string): void {
  el<HTMLElement>("status").textContent = message;
}

async function onReportPicked(event: Event): Promise<void> {
  const input = event.target as HTMLInputElement;
  const file = input.files?.[0];
  if (!file) return;
  reportText = await file.text();
  tryLoad();
}

async function onSourcesPicked(event: Event): Promise<void> {
  const input = event.target as HTMLInputElement;
  for (const file of input.files ?? []) {
    sourceFiles.set(file.name, await file.text());
  }
  tryLoad();
}

function tryLoad(): void {
  if (reportText === null) {
    setStatus("Pick a structured report (.report.json) to begin.");
    return;
  }
  try {
    session = ViewerSession.fromJson(reportText, sourceFiles, {
      rater: (el<HTMLInputElement>("rater").value || "").trim(),
    });
  } catch (error) {
    setStatus(`Could not load report: ${String(error)}`);
    return;
  }
  const missing = session.report.corpus.documents.filter(
    (doc) => !sourceFiles.has(doc.id),
  );
  const note =
    missing.length > 0
      ? ` Source text missing for ${missing.length} document(s); showing embedded snippets only.`
      : "";
  setStatus(
    `Loaded ${session.report.corpus.name}: ${session.report.groups.length} groups, ` +
      `${session.queue.length} sampled for assessment.${note}`,
  );
  selectedGroupId = session.queue[0] ?? session.report.groups[0]?.id ?? null;
  renderAll();
}

function verdictBadge(groupId: string): string {
  const record = session?.assessment(groupId);
  if (!record) return "";
  return record.verdict === "relevant" ? " ✓" : " ✗";
}

function renderGroupList(): void {
  if (!session) return;
  const list = el<HTMLUListElement>("group-list");
  list.innerHTML = "";
  const sampled = new Set(session.queue);
  for (const group of session.report.groups) {
    const item = document.createElement("li");
    item.className = group.id === selectedGroupId ? "selected" : "";
    const button = document.createElement("button");
    button.textContent =
      `${group.id} · ${group.length}w × ${group.clones.length}` +
      (sampled.has(group.id) ? " [sample]" : "") +
      verdictBadge(group.id);
    button.addEventListener("click", () => {
      selectedGroupId = group.id;
      renderAll();
    });
    item.appendChild(button);
    list.appendChild(item);
  }
}

function clonePane(group: GroupRecord, clone: CloneRecord, other: CloneRecord): HTMLElement {
  if (!session) throw new Error("no session");
  const pane = document.createElement("div");
  pane.className = "pane";
  const where = document.createElement("div");
  where.className = "where";
  where.textContent =
    `${clone.document_id} · chars ${clone.char_start}-${clone.char_end}` +
    (session.hasSource(clone.document_id) ? "" : " · degraded (no source)");
  pane.appendChild(where);

  const text = document.createElement("pre");
  const context = session.context(clone);
  const before = document.createElement("span");
  before.className = "ctx";
  before.textContent = context.before;
  text.appendChild(before);

  const body = document.createElement("span");
  body.className = "clone-body";
  for (const segment of diffWords(session.snippet(clone), session.snippet(other))) {
    if (segment.kind === "right") continue; // belongs to the other pane
    const span = document.createElement("span");
    span.className = segment.kind === "same" ? "same" : "differs";
    span.textContent = segment.text;
    body.appendChild(span);
  }
  text.appendChild(body);

  const after = document.createElement("span");
  after.className = "ctx";
  after.textContent = context.after;
  text.appendChild(after);
  pane.appendChild(text);
  return pane;
}

function renderDetail(): void {
  if (!session) return;
  const detail = el<HTMLElement>("detail");
  detail.innerHTML = "";
  if (!selectedGroupId) return;
  const group = session.group(selectedGroupId);

  const heading = document.createElement("h2");
  heading.textContent =
    `${group.id}: ${group.length} normalized words × ${group.clones.length} instances`;
  detail.appendChild(heading);

  const pickers = document.createElement("div");
  pickers.className = "pickers";
  const leftSelect = document.createElement("select");
  const rightSelect = document.createElement("select");
  group.clones.forEach((clone, index) => {
    for (const select of [leftSelect, rightSelect]) {
      const option = document.createElement("option");
      option.value = String(index);
      option.textContent = `#${index + 1} ${clone.document_id}@${clone.char_start}`;
      select.appendChild(option);
    }
  });
  leftSelect.value = "0";
  rightSelect.value = "1";
  const panes = document.createElement("div");
  panes.className = "panes";
  const renderPanes = () => {
    const left = group.clones[Number(leftSelect.value)];
    const right = group.clones[Number(rightSelect.value)];
    panes.innerHTML = "";
    if (left && right) {
      panes.appendChild(clonePane(group, left, right));
      panes.appendChild(clonePane(group, right, left));
    }
  };
  leftSelect.addEventListener("change", renderPanes);
  rightSelect.addEventListener("change", renderPanes);
  pickers.append("Compare ", leftSelect, " with ", rightSelect);
  detail.appendChild(pickers);
  detail.appendChild(panes);
  renderPanes();

  detail.appendChild(renderAssessmentControls(group));
}

function renderAssessmentControls(group: GroupRecord): HTMLElement {
  if (!session) throw new Error("no session");
  const wrap = document.createElement("div");
  wrap.className = "assess";
  const existing = session.assessment(group.id);

  const verdictRow = document.createElement("div");
  const relevant = document.createElement("input");
  relevant.type = "radio";
  relevant.name = "verdict";
  relevant.id = "verdict-relevant";
  relevant.checked = existing?.verdict === "relevant";
  const falsePositive = document.createElement("input");
  falsePositive.type = "radio";
  falsePositive.name = "verdict";
  falsePositive.id = "verdict-fp";
  falsePositive.checked = existing?.verdict === "false_positive";
  const relevantLabel = document.createElement("label");
  relevantLabel.htmlFor = relevant.id;
  relevantLabel.textContent = "relevant";
  const fpLabel = document.createElement("label");
  fpLabel.htmlFor = falsePositive.id;
  fpLabel.textContent = "false positive";
  verdictRow.append(relevant, relevantLabel, falsePositive, fpLabel);
  wrap.appendChild(verdictRow);

  const categoryBox = document.createElement("div");
  categoryBox.className = "categories";
  const checkboxes: HTMLInputElement[] = [];
  for (const category of session.vocabulary.all()) {
    const label = document.createElement("label");
    const checkbox = document.createElement("input");
    checkbox.type = "checkbox";
    checkbox.value = category.id;
    checkbox.checked = existing?.categories.includes(category.id) ?? false;
    checkboxes.push(checkbox);
    label.append(checkbox, ` ${category.label}`);
    categoryBox.appendChild(label);
  }
  wrap.appendChild(categoryBox);

  const kindSelect = document.createElement("select");
  for (const kind of FALSE_POSITIVE_KINDS) {
    const option = document.createElement("option");
    option.value = kind;
    option.textContent = kind.replace(/_/g, " ");
    kindSelect.appendChild(option);
  }
  if (existing?.false_positive_kind) {
    kindSelect.value = existing.false_positive_kind;
  }
  wrap.appendChild(kindSelect);

  const note = document.createElement("input");
  note.type = "text";
  note.placeholder = "note";
  note.value = existing?.note ?? "";
  wrap.appendChild(note);

  const save = document.createElement("button");
  save.textContent = "Save verdict";
  save.addEventListener("click", () => {
    if (!session) return;
    try {
      if (falsePositive.checked) {
        session.assess(group.id, {
          verdict: "false_positive",
          kind: kindSelect.value as FalsePositiveKind,
          note: note.value,
        });
      } else if (relevant.checked) {
        session.assess(group.id, {
          verdict: "relevant",
          categories: checkboxes.filter((c) => c.checked).map((c) => c.value),
          note: note.value,
        });
      } else {
        setStatus("Pick a verdict first.");
        return;
      }
      renderAll();
    } catch (error) {
      setStatus(String(error));
    }
  });
  wrap.appendChild(save);
  return wrap;
}

function renderPrecision(): void {
  if (!session) return;
  const value = session.precision();
  const assessed = session.assessments().length;
  el<HTMLElement>("precision").textContent =
    value === null
      ? "No verdicts yet."
      : `Precision: ${(value * 100).toFixed(1)}% over ${assessed} assessed group(s).`;
}

function download(name: string, content: string): void {
  const blob = new Blob([content], { type: "text/plain;charset=utf-8" });
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = name;
  anchor.click();
  URL.revokeObjectURL(url);
}

function renderAll(): void {
  renderGroupList();
  renderDetail();
  renderPrecision();
}

export function start(): void {
  el<HTMLInputElement>("report-file").addEventListener("change", onReportPicked);
  el<HTMLInputElement>("source-files").addEventListener("change", onSourcesPicked);
  el<HTMLButtonElement>("export-assessments").addEventListener("click", () => {
    if (!session) return;
    try {
      download("assessments.jsonl", session.exportAssessments());
    } catch (error) {
      setStatus(String(error));
    }
  });
  el<HTMLButtonElement>("export-filters").addEventListener("click", () => {
    if (!session) return;
    const generalize = el<HTMLInputElement>("generalize-digits").checked;
    const fragment = session.exportFilterFragment({ generalizeDigits: generalize });
    if (!fragment) {
      setStatus("No false positives recorded; nothing to export.");
      return;
    }
    download("tailoring.filters", fragment);
  });
  setStatus("Pick a structured report (.report.json) to begin.");
}

if (typeof document !== "undefined" && document.getElementById("group-list")) {
  start();
}
