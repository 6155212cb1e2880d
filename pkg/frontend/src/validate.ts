/**
 * Client-side pre-validation of edited candidates.
 *
 * Deliberately duplicates only the cheap server rules - entity grounding
 * (exact, case-sensitive substring) and reserved-delimiter checks plus empty
 * fields. Residual-script detection stays server-side so the Unicode tables
 * cannot diverge.
 */

import type { PairDto } from "./types.js";

export interface Issue {
  field: string;
  rule: "empty" | "reserved" | "grounding";
  message: string;
}

const RESERVED = [":", ";"];

export interface Draft {
  text: string;
  text_label: string;
  pairs: PairDto[];
}

export function emptinessIssues(draft: Draft): Issue[] {
  const issues: Issue[] = [];
  if (draft.text.length === 0) {
    issues.push({ field: "text", rule: "empty", message: "text must not be empty" });
  }
  if (draft.text_label.trim().length === 0) {
    issues.push({
      field: "text_label",
      rule: "empty",
      message: "text label must not be empty",
    });
  }
  draft.pairs.forEach((pair, i) => {
    if (pair.label.trim().length === 0) {
      issues.push({
        field: `pairs[${i}].label`,
        rule: "empty",
        message: "label must not be empty",
      });
    }
    if (pair.entity.trim().length === 0) {
      issues.push({
        field: `pairs[${i}].entity`,
        rule: "empty",
        message: "entity must not be empty",
      });
    }
  });
  return issues;
}

export function delimiterIssues(pairs: PairDto[]): Issue[] {
  const issues: Issue[] = [];
  pairs.forEach((pair, i) => {
    for (const [name, value] of [
      ["label", pair.label],
      ["entity", pair.entity],
    ] as const) {
      const hit = RESERVED.find((ch) => value.includes(ch));
      if (hit !== undefined) {
        issues.push({
          field: `pairs[${i}].${name}`,
          rule: "reserved",
          message: `contains reserved "${hit}"`,
        });
      }
    }
  });
  return issues;
}

/** Mirrors the server rule exactly: byte-for-byte substring, no folding. */
export function groundingIssues(text: string, pairs: PairDto[]): Issue[] {
  const issues: Issue[] = [];
  pairs.forEach((pair, i) => {
    if (!text.includes(pair.entity)) {
      issues.push({
        field: `pairs[${i}].entity`,
        rule: "grounding",
        message: `"${pair.entity}" does not occur in the text`,
      });
    }
  });
  return issues;
}

/** Everything that blocks the submit button for an edit. */
export function draftIssues(draft: Draft): Issue[] {
  return [
    ...emptinessIssues(draft),
    ...delimiterIssues(draft.pairs),
    ...groundingIssues(draft.text, draft.pairs),
  ];
}

/** True when entity grounding alone holds (shared-fixture contract). */
export function isGrounded(text: string, pairs: PairDto[]): boolean {
  return groundingIssues(text, pairs).length === 0;
}
