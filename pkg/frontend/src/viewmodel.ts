/**
 * Per-record view model: draft editing, submit gating, and optimistic
 * concurrency. The revision token always echoes the last value the server
 * reported; a conflict refreshes server state but never touches the draft.
 */

import type {
  DecisionAction,
  DecisionBody,
  PairDto,
  RecordDto,
  SampleDto,
} from "./types.js";
import { draftIssues, type Draft, type Issue } from "./validate.js";

function draftFromCandidate(candidate: SampleDto | null): Draft {
  if (candidate === null) {
    return { text: "", text_label: "", pairs: [] };
  }
  return {
    text: candidate.text,
    text_label: candidate.text_label,
    pairs: candidate.pairs.map((p) => ({ ...p })),
  };
}

export class RecordViewModel {
  record: RecordDto;
  draft: Draft;
  dirty = false;
  conflict = false;

  constructor(record: RecordDto) {
    this.record = record;
    this.draft = draftFromCandidate(record.candidate);
  }

  /** Last server-reported revision; sent with every decision. */
  get revision(): number {
    return this.record.revision;
  }

  get editable(): boolean {
    return this.record.status === "pending" && this.record.candidate !== null;
  }

  setText(text: string): void {
    this.draft.text = text;
    this.dirty = true;
  }

  setTextLabel(label: string): void {
    this.draft.text_label = label;
    this.dirty = true;
  }

  setPair(index: number, pair: PairDto): void {
    this.draft.pairs[index] = { ...pair };
    this.dirty = true;
  }

  addPair(): void {
    this.draft.pairs.push({ label: "", entity: "" });
    this.dirty = true;
  }

  removePair(index: number): void {
    this.draft.pairs.splice(index, 1);
    this.dirty = true;
  }

  issues(): Issue[] {
    return draftIssues(this.draft);
  }

  /** Accept/reject act on the stored candidate and are always submittable on
   * a pending record; an edit is blocked while the draft fails the local
   * grounding/delimiter checks. */
  canSubmit(action: DecisionAction): boolean {
    if (!this.editable) {
      return false;
    }
    if (action === "edit") {
      return this.issues().length === 0;
    }
    return true;
  }

  buildDecision(action: DecisionAction, reviewer: string): DecisionBody {
    const body: DecisionBody = {
      action,
      reviewer,
      expected_revision: this.revision,
    };
    if (action === "edit") {
      const candidate = this.record.candidate;
      body.edited = {
        id: candidate?.id ?? this.record.id,
        dataset: candidate?.dataset ?? this.record.source.dataset,
        language: candidate?.language ?? this.record.target_language,
        task_word: candidate?.task_word ?? this.record.source.task_word,
        text: this.draft.text,
        text_label: this.draft.text_label,
        pairs: this.draft.pairs.map((p) => ({ ...p })),
        meta: candidate?.meta,
      };
    }
    return body;
  }

  /** Server acknowledged a decision: adopt its state wholesale. */
  applyDecision(record: RecordDto): void {
    this.record = record;
    this.draft = draftFromCandidate(record.candidate);
    this.dirty = false;
    this.conflict = false;
  }

  /** Another reviewer won the race: refresh the revision token and server
   * state but keep the local draft intact for the reviewer to reconcile. */
  applyConflict(fresh: RecordDto): void {
    this.record = fresh;
    this.conflict = true;
    // draft and dirty deliberately untouched
  }
}
