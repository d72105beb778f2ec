"""Remote LLM backend over a JSON request/response wire protocol.

One POST per round carrying a ``{"messages": [{"role", "content"}, ...]}``
envelope; the reply's ``content`` must contain exactly one fenced
```` ```verdict ```` block. Parsing is strict with no repair heuristics —
every failure mode surfaces as a typed error, never a default value.
"""

from __future__ import annotations

import os
import re
import threading
from importlib import resources

import httpx

from ..agent_types import Candidate, PredictorOutput, VerifierVerdict
from .base import BackendError


class RemoteTimeoutError(BackendError):
    pass


class MalformedReplyError(BackendError):
    def __init__(self, reason: str, raw: str):
        super().__init__(f"{reason}; raw payload: {raw[:500]!r}")
        self.raw = raw


_SYSTEM_PROMPT = (
    "You are a careful molecular screening assistant. Follow the reply "
    "format exactly; any deviation is treated as an error."
)

_BLOCK_RE = re.compile(r"```verdict\n(.*?)```", re.DOTALL)


def _load_prompt(name: str) -> str:
    return resources.files("lipidscreen.agents.prompts").joinpath(name).read_text(
        encoding="utf-8"
    )


def _parse_block(content: str) -> dict[str, str]:
    blocks = _BLOCK_RE.findall(content)
    if len(blocks) != 1:
        raise MalformedReplyError(
            f"expected exactly one fenced verdict block, found {len(blocks)}", content
        )
    fields: dict[str, str] = {}
    for line in blocks[0].splitlines():
        line = line.strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise MalformedReplyError(f"unparseable verdict line {line!r}", content)
        fields[key.strip()] = value.strip()
    return fields


class RemoteBackend:
    def __init__(
        self,
        endpoint: str,
        timeout: float = 30.0,
        max_retries: int = 2,
        auth_token_env: str | None = None,
        max_in_flight: int = 8,
        transport: httpx.BaseTransport | None = None,
    ):
        self.endpoint = endpoint
        self.timeout = timeout
        self.max_retries = max_retries
        headers = {}
        if auth_token_env:
            token = os.environ.get(auth_token_env)
            if not token:
                raise BackendError(f"auth token env var {auth_token_env!r} is not set")
            headers["Authorization"] = f"Bearer {token}"
        self._client = httpx.Client(
            timeout=timeout, headers=headers, transport=transport
        )
        self._gate = threading.Semaphore(max_in_flight)
        self._predict_prompt = _load_prompt("predictor.txt")
        self._verify_prompt = _load_prompt("verifier.txt")

    def _call(self, user_content: str) -> str:
        payload = {
            "messages": [
                {"role": "system", "content": _SYSTEM_PROMPT},
                {"role": "user", "content": user_content},
            ]
        }
        last_exc: Exception | None = None
        for _ in range(self.max_retries + 1):
            try:
                with self._gate:
                    resp = self._client.post(self.endpoint, json=payload)
                resp.raise_for_status()
                body = resp.json()
                if "content" not in body:
                    raise MalformedReplyError("reply has no 'content' field", resp.text)
                return str(body["content"])
            except (httpx.TimeoutException, httpx.TransportError) as exc:
                last_exc = exc
        raise RemoteTimeoutError(
            f"remote call failed after {self.max_retries + 1} attempts: {last_exc}"
        )

    def predict(self, candidate: Candidate, feedback_history: list[str]) -> PredictorOutput:
        feedback = "\n".join(f"- {f}" for f in feedback_history) or "(none)"
        content = self._call(
            self._predict_prompt.format(smiles=candidate.smiles, feedback=feedback)
        )
        fields = _parse_block(content)
        decision = fields.get("decision")
        if decision not in ("toxic", "non-toxic"):
            raise MalformedReplyError(f"bad decision {decision!r}", content)
        try:
            conf = float(fields["confidence"])
            reasoning = fields["reasoning"]
        except (KeyError, ValueError) as exc:
            raise MalformedReplyError(f"missing/invalid field: {exc}", content) from exc
        rnd = len(feedback_history) + 1
        if decision == "toxic":
            return PredictorOutput(y_tox=True, r_pred=reasoning, conf=conf, round=rnd)
        if "score" not in fields:
            raise MalformedReplyError("non-toxic verdict missing score", content)
        try:
            score = int(fields["score"])
        except ValueError as exc:
            raise MalformedReplyError(f"invalid score: {exc}", content) from exc
        return PredictorOutput(
            y_tox=False, y_eff=score, r_pred=reasoning, conf=conf, round=rnd
        )

    def verify(self, r_pred: str, y_eff: int) -> VerifierVerdict:
        content = self._call(
            self._verify_prompt.format(score=y_eff, reasoning=r_pred)
        )
        fields = _parse_block(content)
        consistent = fields.get("consistent")
        if consistent not in ("yes", "no"):
            raise MalformedReplyError(f"bad consistency flag {consistent!r}", content)
        if consistent == "yes":
            return VerifierVerdict(y_ver=1)
        feedback = fields.get("feedback")
        if not feedback:
            raise MalformedReplyError("inconsistent verdict missing feedback", content)
        return VerifierVerdict(y_ver=0, r_corr=feedback)

    def close(self) -> None:
        self._client.close()
