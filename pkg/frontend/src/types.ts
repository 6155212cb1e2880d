/** Wire types mirroring the review service JSON. */

export interface PairDto {
  label: string;
  entity: string;
}

export interface SampleDto {
  id: string;
  dataset: string;
  language: string;
  text: string;
  task_word: string;
  text_label: string;
  pairs: PairDto[];
  meta?: Record<string, unknown>;
}

export interface VerdictDto {
  rule_id: string;
  passed: boolean;
  detail: string;
}

export type RecordStatus = "pending" | "accepted" | "edited" | "rejected";

export interface RecordDto {
  id: string;
  status: RecordStatus;
  revision: number;
  flagged: boolean;
  target_language: string;
  prompt_id: string;
  raw_reply: string;
  source: SampleDto;
  candidate: SampleDto | null;
  verdicts: VerdictDto[];
}

export interface RecordPage {
  records: RecordDto[];
  total: number;
  page: number;
  page_size: number;
}

export type DecisionAction = "accept" | "edit" | "reject";

export interface DecisionBody {
  action: DecisionAction;
  reviewer: string;
  expected_revision: number;
  edited?: SampleDto;
}

export interface ApiError {
  code: string;
  message: string;
}
