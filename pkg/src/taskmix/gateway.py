"""Model invocation behind a provider contract, with cassette record/replay.

Three interchangeable providers expose ``complete(request) -> reply``:

* ``LiveProvider`` posts to a chat-completion HTTP endpoint (URL and key come
  from environment variables) with bounded retries.
* ``RecordingProvider`` wraps a live provider and appends every reply to a
  cassette file.
* ``ReplayProvider`` serves replies from a cassette, keyed by a content hash
  of the request. A miss is an explicit error; replay never goes live.

The ``Translator`` drives the per-sample pipeline: pre-translate closed-set
labels through the lexicon, render the prompt, call the provider, decode the
reply into a candidate sample. Raw replies are kept verbatim on every record,
including failures.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .errors import AnnotationError, CassetteMissError, TransportError
from .format import LabelEntityPair, Sample, nfc, pair_from_tuple, split_output
from .lexicon import LabelLexicon, load_lexicon
from .records import RULE_PARSE, FilterVerdict, TranslationRecord
from .templates import (
    PromptTemplate,
    TemplateRegistry,
    load_templates,
    render_annotation_prompt,
    render_translation_prompt,
)

log = logging.getLogger(__name__)

ENDPOINT_ENV = "TASKMIX_LLM_ENDPOINT"
API_KEY_ENV = "TASKMIX_LLM_API_KEY"
MODEL_ENV = "TASKMIX_LLM_MODEL"

#: Reply length budget relative to the source text, in characters. Generous
#: headroom for CJK<->Latin expansion.
LENGTH_FACTOR = 4

DEFAULT_CONCURRENCY = 8


@dataclass(frozen=True, slots=True)
class CompletionRequest:
    prompt: str
    temperature: float = 0.0
    max_length: int = 1024


@dataclass(frozen=True, slots=True)
class CompletionReply:
    text: str
    model: str
    latency_s: float
    retries: int = 0


def request_key(request: CompletionRequest) -> str:
    """Content hash identifying a request in a cassette."""
    payload = json.dumps(
        {
            "prompt": request.prompt,
            "temperature": request.temperature,
            "max_length": request.max_length,
        },
        sort_keys=True,
        ensure_ascii=False,
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


class Cassette:
    """Append-only JSONL store of request/reply pairs."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()

    def load(self) -> dict[str, dict]:
        entries: dict[str, dict] = {}
        if not self.path.exists():
            return entries
        with open(self.path, encoding="utf-8") as f:
            for line in f:
                line = line.strip()
                if line:
                    entry = json.loads(line)
                    entries[entry["key"]] = entry
        return entries

    def append(self, request: CompletionRequest, reply: CompletionReply) -> None:
        entry = {
            "key": request_key(request),
            "prompt": request.prompt,
            "params": {
                "temperature": request.temperature,
                "max_length": request.max_length,
            },
            "reply": reply.text,
            "model": reply.model,
            "timestamp": datetime.now(timezone.utc).isoformat(),
        }
        with self._lock:
            with open(self.path, "a", encoding="utf-8") as f:
                f.write(json.dumps(entry, ensure_ascii=False))
                f.write("\n")
                f.flush()


class ReplayProvider:
    """Serves recorded replies; raises on any request not in the cassette."""

    def __init__(self, cassette_path: str | Path):
        self._replies = Cassette(cassette_path).load()
        self._path = str(cassette_path)

    def complete(self, request: CompletionRequest) -> CompletionReply:
        entry = self._replies.get(request_key(request))
        if entry is None:
            raise CassetteMissError(
                f"no recorded reply for request {request_key(request)[:12]}... "
                f"in {self._path}"
            )
        return CompletionReply(
            text=entry["reply"], model=entry.get("model", "replay"), latency_s=0.0
        )


def _default_post(endpoint: str, headers: dict, body: dict) -> tuple[int, dict]:
    import httpx

    response = httpx.post(endpoint, headers=headers, json=body, timeout=60.0)
    try:
        payload = response.json()
    except ValueError:
        payload = {}
    return response.status_code, payload


class LiveProvider:
    """Chat-completion HTTP client with bounded exponential-backoff retries."""

    def __init__(
        self,
        endpoint: str | None = None,
        api_key: str | None = None,
        model: str | None = None,
        post=None,
        sleep=time.sleep,
        max_attempts: int = 3,
        backoff_s: float = 0.5,
    ):
        self.endpoint = endpoint or os.environ.get(ENDPOINT_ENV, "")
        self.api_key = api_key if api_key is not None else os.environ.get(API_KEY_ENV, "")
        self.model = model or os.environ.get(MODEL_ENV, "gpt-3.5-turbo")
        self._post = post or _default_post
        self._sleep = sleep
        self.max_attempts = max_attempts
        self.backoff_s = backoff_s
        if not self.endpoint:
            raise TransportError(f"no completion endpoint configured ({ENDPOINT_ENV})")

    def complete(self, request: CompletionRequest) -> CompletionReply:
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        body = {
            "model": self.model,
            "messages": [{"role": "user", "content": request.prompt}],
            "temperature": request.temperature,
            # character budget doubles as a generous token ceiling
            "max_tokens": max(16, request.max_length),
        }
        start = time.monotonic()
        last_error = "no attempt made"
        for attempt in range(self.max_attempts):
            if attempt:
                self._sleep(self.backoff_s * (2 ** (attempt - 1)))
            try:
                status, payload = self._post(self.endpoint, headers, body)
            except Exception as exc:
                last_error = f"transport failure: {exc}"
                log.warning("completion attempt %d failed: %s", attempt + 1, exc)
                continue
            if status >= 500:
                last_error = f"server error {status}"
                log.warning("completion attempt %d got status %d", attempt + 1, status)
                continue
            if status >= 400:
                raise TransportError(f"endpoint rejected request with status {status}")
            try:
                text = payload["choices"][0]["message"]["content"]
            except (KeyError, IndexError, TypeError):
                raise TransportError("malformed completion response body") from None
            if attempt:
                log.info("completion succeeded after %d retries", attempt)
            return CompletionReply(
                text=text,
                model=str(payload.get("model", self.model)),
                latency_s=time.monotonic() - start,
                retries=attempt,
            )
        raise TransportError(
            f"completion failed after {self.max_attempts} attempts: {last_error}"
        )


class RecordingProvider:
    """Delegates to an inner provider and appends every reply to a cassette."""

    def __init__(self, inner, cassette_path: str | Path):
        self._inner = inner
        self._cassette = Cassette(cassette_path)

    def complete(self, request: CompletionRequest) -> CompletionReply:
        reply = self._inner.complete(request)
        self._cassette.append(request, reply)
        return reply


class Translator:
    """Per-sample translation pipeline in front of any provider."""

    def __init__(
        self,
        provider,
        templates: TemplateRegistry | None = None,
        lexicon: LabelLexicon | None = None,
        temperature: float = 0.0,
    ):
        self.provider = provider
        self.templates = templates or load_templates()
        self.lexicon = lexicon or load_lexicon()
        self.temperature = temperature

    def pretranslate_labels(
        self, sample: Sample, target_language: str
    ) -> tuple[str, list[str]]:
        """Closed-set labels go through the lexicon; open-label datasets pass
        their labels through for the model to translate."""
        if not self.lexicon.supports(sample.dataset, sample.language, target_language):
            return sample.text_label, [p.label for p in sample.pairs]
        tl = self.lexicon.translate(
            sample.dataset, sample.language, target_language, sample.text_label
        )
        wl = [
            self.lexicon.translate(
                sample.dataset, sample.language, target_language, p.label
            )
            for p in sample.pairs
        ]
        return tl, wl

    def build_request(
        self, sample: Sample, target_language: str, template: PromptTemplate
    ) -> CompletionRequest:
        text_label, pair_labels = self.pretranslate_labels(sample, target_language)
        prompt = render_translation_prompt(
            template, sample, target_language, text_label, pair_labels
        )
        return CompletionRequest(
            prompt=prompt,
            temperature=self.temperature,
            max_length=LENGTH_FACTOR * len(sample.text),
        )

    def translate_sample(self, sample: Sample, target_language: str) -> TranslationRecord:
        template = self.templates.resolve(
            sample.dataset, sample.language, target_language
        )
        request = self.build_request(sample, target_language, template)
        reply = self.provider.complete(request)
        candidate, verdicts = self._decode_reply(sample, target_language, reply.text)
        return TranslationRecord(
            id=f"{sample.id}:{target_language}",
            source=sample,
            target_language=target_language,
            prompt_id=template.id,
            raw_reply=reply.text,
            candidate=candidate,
            verdicts=verdicts,
        )

    def translate_corpus(
        self,
        samples: list[Sample],
        target_language: str,
        concurrency: int = DEFAULT_CONCURRENCY,
    ) -> list[TranslationRecord]:
        """Translate in input order with a bounded number of in-flight calls."""
        if concurrency <= 1 or len(samples) <= 1:
            return [self.translate_sample(s, target_language) for s in samples]
        with ThreadPoolExecutor(max_workers=concurrency) as pool:
            return list(
                pool.map(lambda s: self.translate_sample(s, target_language), samples)
            )

    def _decode_reply(
        self, sample: Sample, target_language: str, reply_text: str
    ) -> tuple[Sample | None, list[FilterVerdict]]:
        lines = [line.strip() for line in reply_text.splitlines()]
        lines = [line for line in lines if line]
        if len(lines) < 2:
            return None, [
                FilterVerdict(
                    RULE_PARSE, False, "reply must carry a text line and an output line"
                )
            ]
        text = "\n".join(lines[:-1])
        found, text_label, chunks, _ = split_output(lines[-1], sample.task_word)
        if not found:
            return None, [
                FilterVerdict(
                    RULE_PARSE,
                    False,
                    f"task word {sample.task_word!r} missing from output line",
                )
            ]
        pairs = [pair_from_tuple(chunk) for chunk in chunks]
        candidate = Sample(
            id=f"{sample.id}:{target_language}",
            dataset=sample.dataset,
            language=target_language,
            text=nfc(text),
            task_word=sample.task_word,
            text_label=nfc(text_label),
            pairs=[LabelEntityPair(nfc(p.label), nfc(p.entity)) for p in pairs],
            meta={"source_id": sample.id, "source_language": sample.language},
        )
        return candidate, []

    def annotate_text_label(
        self,
        text: str,
        pairs: list[LabelEntityPair],
        template_id: str = "annotate-en",
    ) -> str:
        """Ask the model for an open-domain text-level label; first non-empty
        line of the reply wins."""
        template = self.templates.get(template_id)
        prompt = render_annotation_prompt(template, text, pairs)
        reply = self.provider.complete(
            CompletionRequest(
                prompt=prompt,
                temperature=self.temperature,
                max_length=LENGTH_FACTOR * len(text),
            )
        )
        for line in reply.text.splitlines():
            if line.strip():
                return line.strip()
        raise AnnotationError("annotation reply contained no label")
