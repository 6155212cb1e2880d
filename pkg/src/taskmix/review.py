"""HTTP review service for the human correction stage.

The store is an in-memory index over a records file plus an append-only audit
log; every decision is flushed to the log before it is acknowledged, and
replaying the log over the records file rebuilds the exact store state.
Concurrent reviewers are handled with per-record revision counters: a decision
must name the revision it saw, and a mismatch is a conflict, never a silent
overwrite.
"""

import json
import threading
from dataclasses import dataclass
from pathlib import Path

from .corpus import sample_from_dict, sample_to_dict, write_corpus
from .errors import (
    CorpusError,
    ReviewConflictError,
    ReviewStateError,
    ReviewValidationError,
)
from .filters import FilterConfig, filter_record
from .format import Sample, validate_sample
from .records import TranslationRecord, read_records, record_to_dict

ACTIONS = ("accept", "edit", "reject")

_STATUS_BY_ACTION = {"accept": "accepted", "edit": "edited", "reject": "rejected"}


@dataclass(frozen=True, slots=True)
class ReviewDecision:
    record_id: str
    action: str
    reviewer: str
    expected_revision: int
    edited: Sample | None = None


class ReviewStore:
    """Records index + audit log with a single serialized writer."""

    def __init__(
        self,
        records: list[TranslationRecord],
        audit_path: str | Path | None = None,
        filter_config: FilterConfig | None = None,
    ):
        self._records = {r.id: r for r in records}
        if len(self._records) != len(records):
            raise CorpusError("duplicate record ids in review store")
        self._audit_path = Path(audit_path) if audit_path else None
        self._filter_config = filter_config or FilterConfig()
        self._lock = threading.Lock()
        self._seq = 0

    @classmethod
    def load(
        cls,
        records_path: str | Path,
        audit_path: str | Path | None = None,
        filter_config: FilterConfig | None = None,
    ) -> "ReviewStore":
        """Load records and replay any existing audit log over them."""
        store = cls(read_records(records_path), None, filter_config)
        if audit_path and Path(audit_path).exists():
            with open(audit_path, encoding="utf-8") as f:
                for line in f:
                    line = line.strip()
                    if not line:
                        continue
                    store._apply_event(json.loads(line))
        store._audit_path = Path(audit_path) if audit_path else None
        return store

    def get(self, record_id: str) -> TranslationRecord:
        try:
            return self._records[record_id]
        except KeyError:
            raise ReviewValidationError(f"no record with id {record_id!r}") from None

    def list_records(
        self,
        status: str | None = "pending",
        dataset: str | None = None,
        language: str | None = None,
        page: int = 1,
        page_size: int = 20,
    ) -> tuple[list[TranslationRecord], int]:
        """Filtered records in stable id order plus the total match count."""
        matches = [
            r
            for r in sorted(self._records.values(), key=lambda r: r.id)
            if (status is None or r.status == status)
            and (dataset is None or r.source.dataset == dataset)
            and (language is None or r.target_language == language)
        ]
        start = (max(page, 1) - 1) * page_size
        return matches[start : start + page_size], len(matches)

    def submit_decision(self, decision: ReviewDecision) -> TranslationRecord:
        """Apply one decision under the writer lock and flush it to the log."""
        if decision.action not in ACTIONS:
            raise ReviewValidationError(f"unknown action {decision.action!r}")
        with self._lock:
            record = self.get(decision.record_id)
            if record.status != "pending":
                raise ReviewStateError(
                    f"record {record.id} already decided ({record.status})"
                )
            if decision.expected_revision != record.revision:
                raise ReviewConflictError(
                    f"revision conflict on {record.id}: expected "
                    f"{decision.expected_revision}, store has {record.revision}"
                )
            event = self._make_event(record, decision)
            self._apply_event(event)
            self._append_audit(event)
            return record

    def _make_event(self, record: TranslationRecord, decision: ReviewDecision) -> dict:
        event = {
            "seq": self._seq + 1,
            "record_id": record.id,
            "action": decision.action,
            "reviewer": decision.reviewer,
            "revision": record.revision + 1,
        }
        if decision.action == "edit":
            if decision.edited is None:
                raise ReviewValidationError("edit decision requires an edited sample")
            violations = validate_sample(decision.edited, grounding=False)
            if violations:
                raise ReviewValidationError(
                    "edited sample fails format validation: "
                    + "; ".join(str(v) for v in violations)
                )
            event["edited"] = sample_to_dict(decision.edited)
        return event

    def _apply_event(self, event: dict) -> None:
        record = self.get(event["record_id"])
        action = event["action"]
        record.status = _STATUS_BY_ACTION[action]
        record.revision = event["revision"]
        self._seq = event["seq"]
        if action == "edit":
            record.candidate = sample_from_dict(event["edited"])
            # an edited candidate goes back through the full rule chain; any
            # failure flags the record for re-review instead of silently
            # shipping the correction
            verdicts = filter_record(record, self._filter_config)
            record.verdicts.extend(verdicts)
            record.flagged = any(not v.passed for v in verdicts)

    def _append_audit(self, event: dict) -> None:
        if self._audit_path is None:
            return
        with open(self._audit_path, "a", encoding="utf-8") as f:
            f.write(json.dumps(event, ensure_ascii=False))
            f.write("\n")
            f.flush()

    def export_accepted(
        self,
        dataset: str | None = None,
        language: str | None = None,
        include_flagged: bool = False,
    ) -> list[Sample]:
        """Candidate samples of accepted/edited records, ordered by record id.

        Flagged edits stay out until they survive re-review.
        """
        out = []
        for record in sorted(self._records.values(), key=lambda r: r.id):
            if record.status not in ("accepted", "edited"):
                continue
            if record.flagged and not include_flagged:
                continue
            if dataset and record.source.dataset != dataset:
                continue
            if language and record.target_language != language:
                continue
            if record.candidate is not None:
                out.append(record.candidate)
        return out

    def export_to_file(self, path: str | Path, **filters) -> dict:
        """Write the export corpus plus a deterministic manifest sidecar."""
        samples = self.export_accepted(**filters)
        write_corpus(samples, path)
        manifest = {
            "samples": len(samples),
            "filters": {k: v for k, v in filters.items() if v},
            "ids": [s.id for s in samples],
        }
        manifest_path = Path(str(path) + ".manifest.json")
        manifest_path.write_text(
            json.dumps(manifest, ensure_ascii=False, indent=2) + "\n", "utf-8"
        )
        return manifest

    def stats(self) -> dict:
        by_status: dict[str, int] = {}
        by_cell: dict[str, dict[str, int]] = {}
        for record in self._records.values():
            by_status[record.status] = by_status.get(record.status, 0) + 1
            cell = f"{record.source.dataset}/{record.target_language}"
            by_cell.setdefault(cell, {})
            by_cell[cell][record.status] = by_cell[cell].get(record.status, 0) + 1
        return {
            "records": len(self._records),
            "flagged": sum(r.flagged for r in self._records.values()),
            "by_status": dict(sorted(by_status.items())),
            "by_cell": dict(sorted(by_cell.items())),
        }


def create_app(store: ReviewStore, ui_dir: str | Path | None = None):
    """FastAPI app over a review store. Errors are JSON {code, message}."""
    from fastapi import FastAPI, Request
    from fastapi.middleware.cors import CORSMiddleware
    from fastapi.responses import JSONResponse, PlainTextResponse
    from pydantic import BaseModel

    class DecisionBody(BaseModel):
        action: str
        reviewer: str
        expected_revision: int
        edited: dict | None = None

    app = FastAPI(title="taskmix review")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    def error(status: int, code: str, message: str) -> JSONResponse:
        return JSONResponse({"code": code, "message": message}, status_code=status)

    @app.exception_handler(ReviewValidationError)
    async def _validation(request: Request, exc: ReviewValidationError):
        return error(400, "invalid-decision", str(exc))

    @app.exception_handler(CorpusError)
    async def _corpus(request: Request, exc: CorpusError):
        return error(400, "invalid-sample", str(exc))

    @app.exception_handler(ReviewStateError)
    async def _state(request: Request, exc: ReviewStateError):
        return error(409, "already-decided", str(exc))

    @app.exception_handler(ReviewConflictError)
    async def _conflict(request: Request, exc: ReviewConflictError):
        return error(409, "revision-conflict", str(exc))

    @app.get("/api/records")
    def list_records(
        status: str | None = "pending",
        dataset: str | None = None,
        language: str | None = None,
        page: int = 1,
        page_size: int = 20,
    ):
        records, total = store.list_records(
            status=status or None,
            dataset=dataset or None,
            language=language or None,
            page=page,
            page_size=page_size,
        )
        return {
            "records": [record_to_dict(r) for r in records],
            "total": total,
            "page": page,
            "page_size": page_size,
        }

    @app.get("/api/records/{record_id}")
    def get_record(record_id: str):
        try:
            return record_to_dict(store.get(record_id))
        except ReviewValidationError as exc:
            return error(404, "not-found", str(exc))

    @app.post("/api/records/{record_id}/decision")
    def decide(record_id: str, body: DecisionBody):
        try:
            store.get(record_id)
        except ReviewValidationError as exc:
            return error(404, "not-found", str(exc))
        edited = sample_from_dict(body.edited) if body.edited else None
        record = store.submit_decision(
            ReviewDecision(
                record_id=record_id,
                action=body.action,
                reviewer=body.reviewer,
                expected_revision=body.expected_revision,
                edited=edited,
            )
        )
        return record_to_dict(record)

    @app.get("/api/export")
    def export(
        format: str = "jsonl",
        dataset: str | None = None,
        language: str | None = None,
    ):
        if format != "jsonl":
            return error(400, "invalid-format", f"unsupported export format {format!r}")
        samples = store.export_accepted(
            dataset=dataset or None, language=language or None
        )
        body = "".join(
            json.dumps(sample_to_dict(s), ensure_ascii=False) + "\n" for s in samples
        )
        return PlainTextResponse(body, media_type="application/jsonl; charset=utf-8")

    @app.get("/api/stats")
    def stats():
        return store.stats()

    if ui_dir and Path(ui_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app


def serve(
    records_path: str | Path,
    audit_path: str | Path | None,
    host: str = "127.0.0.1",
    port: int = 8571,
    ui_dir: str | Path | None = None,
) -> None:
    import uvicorn

    store = ReviewStore.load(records_path, audit_path)
    uvicorn.run(create_app(store, ui_dir), host=host, port=port, log_level="info")
