/**
 * DOM rendering: queue table on the left, side-by-side source/candidate
 * review panel on the right. All state shown here comes from server
 * responses held in the view models; nothing is fabricated locally.
 */

import type { RecordDto, VerdictDto } from "./types.js";
import type { RecordViewModel } from "./viewmodel.js";
import type { Issue } from "./validate.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderVerdictBadges(verdicts: VerdictDto[]): HTMLElement {
  const wrap = el("span", "badges");
  for (const verdict of verdicts) {
    const badge = el(
      "span",
      `badge ${verdict.passed ? "badge-pass" : "badge-fail"}`,
      verdict.rule_id,
    );
    if (!verdict.passed) badge.title = verdict.detail;
    wrap.appendChild(badge);
  }
  return wrap;
}

export function renderQueueRow(
  record: RecordDto,
  onOpen: (id: string) => void,
): HTMLTableRowElement {
  const row = el("tr");
  row.appendChild(el("td", "mono", record.id));
  row.appendChild(el("td", "", record.source.dataset));
  row.appendChild(
    el("td", "", `${record.source.language} → ${record.target_language}`),
  );
  const label = record.candidate ? record.candidate.text_label : "(unparsed)";
  row.appendChild(el("td", "", label));
  const cell = el("td");
  cell.appendChild(renderVerdictBadges(record.verdicts));
  row.appendChild(cell);
  row.addEventListener("click", () => onOpen(record.id));
  return row;
}

function pairEditorRow(
  vm: RecordViewModel,
  index: number,
  onChange: () => void,
): HTMLTableRowElement {
  const pair = vm.draft.pairs[index];
  const row = el("tr");
  const labelInput = el("input") as HTMLInputElement;
  labelInput.value = pair.label;
  const entityInput = el("input") as HTMLInputElement;
  entityInput.value = pair.entity;
  const update = () => {
    vm.setPair(index, { label: labelInput.value, entity: entityInput.value });
    onChange();
  };
  labelInput.addEventListener("input", update);
  entityInput.addEventListener("input", update);
  const grounded = vm.draft.text.includes(pair.entity);
  entityInput.classList.toggle("ungrounded", !grounded);

  const remove = el("button", "small", "×");
  remove.addEventListener("click", () => {
    vm.removePair(index);
    onChange();
  });
  for (const widget of [labelInput, entityInput, remove]) {
    const cell = el("td");
    cell.appendChild(widget);
    row.appendChild(cell);
  }
  return row;
}

function sourcePanel(record: RecordDto): HTMLElement {
  const panel = el("div", "panel");
  panel.appendChild(el("h3", "", "Source"));
  panel.appendChild(el("p", "mono", record.source.text));
  panel.appendChild(el("p", "", `label: ${record.source.text_label}`));
  const list = el("ul");
  for (const pair of record.source.pairs) {
    list.appendChild(el("li", "mono", `${pair.label} ; ${pair.entity}`));
  }
  panel.appendChild(list);
  panel.appendChild(el("p", "dim", `raw reply:`));
  panel.appendChild(el("pre", "mono dim", record.raw_reply));
  return panel;
}

export interface DetailCallbacks {
  onSubmit: (action: "accept" | "edit" | "reject") => void;
  onRefresh: () => void;
}

export function renderDetail(
  vm: RecordViewModel,
  callbacks: DetailCallbacks,
): HTMLElement {
  const root = el("div", "detail");
  const record = vm.record;

  const header = el("div", "detail-header");
  header.appendChild(el("h2", "mono", record.id));
  header.appendChild(el("span", `status status-${record.status}`, record.status));
  if (record.flagged) header.appendChild(el("span", "status status-flagged", "flagged"));
  header.appendChild(el("span", "dim", `rev ${vm.revision}`));
  root.appendChild(header);

  if (vm.conflict) {
    const banner = el(
      "div",
      "banner",
      "Another reviewer changed this record. Your draft is preserved; review it against the refreshed state and submit again.",
    );
    const reload = el("button", "", "Discard draft and reload");
    reload.addEventListener("click", callbacks.onRefresh);
    banner.appendChild(reload);
    root.appendChild(banner);
  }

  const columns = el("div", "columns");
  columns.appendChild(sourcePanel(record));

  const editor = el("div", "panel");
  editor.appendChild(el("h3", "", `Candidate (${record.target_language})`));
  if (!vm.editable) {
    editor.appendChild(el("p", "dim", "record is not pending; read-only"));
  }
  const textArea = el("textarea") as HTMLTextAreaElement;
  textArea.value = vm.draft.text;
  const labelInput = el("input") as HTMLInputElement;
  labelInput.value = vm.draft.text_label;

  const pairsTable = el("table", "pairs");
  const issuesBox = el("ul", "issues");
  const buttons: Record<string, HTMLButtonElement> = {};

  const refreshDerived = () => {
    pairsTable.replaceChildren();
    vm.draft.pairs.forEach((_, i) => {
      pairsTable.appendChild(pairEditorRow(vm, i, refreshDerived));
    });
    issuesBox.replaceChildren();
    for (const issue of vm.issues()) {
      issuesBox.appendChild(el("li", "issue", `${issue.field}: ${issue.message}`));
    }
    for (const [action, button] of Object.entries(buttons)) {
      button.disabled = !vm.canSubmit(action as "accept" | "edit" | "reject");
    }
  };

  textArea.addEventListener("input", () => {
    vm.setText(textArea.value);
    refreshDerived();
  });
  labelInput.addEventListener("input", () => {
    vm.setTextLabel(labelInput.value);
    refreshDerived();
  });

  editor.appendChild(textArea);
  editor.appendChild(el("p", "", "text label:"));
  editor.appendChild(labelInput);
  editor.appendChild(el("p", "", "pairs (label / entity):"));
  editor.appendChild(pairsTable);
  const add = el("button", "small", "+ pair");
  add.addEventListener("click", () => {
    vm.addPair();
    refreshDerived();
  });
  editor.appendChild(add);
  editor.appendChild(issuesBox);

  const actions = el("div", "actions");
  for (const action of ["accept", "edit", "reject"] as const) {
    const button = el("button", `action action-${action}`, action);
    button.addEventListener("click", () => callbacks.onSubmit(action));
    buttons[action] = button;
    actions.appendChild(button);
  }
  editor.appendChild(actions);
  columns.appendChild(editor);
  root.appendChild(columns);
  refreshDerived();
  return root;
}

export function renderEmptyState(message: string): HTMLElement {
  return el("div", "empty", message);
}
