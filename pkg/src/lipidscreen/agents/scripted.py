"""Scripted fixture backend for tests and transcript replay.

Fixture file: line-delimited JSON entries
``{"candidate_id": ..., "round": ..., "kind": "predict"|"verify", "payload": {...}}``.

Predict payloads: ``{"toxic": bool, "score": int?, "conf": float,
"p_eff": [..]?, "trace": str?}``. Verify payloads: ``{"y_ver": 0|1,
"r_corr": str?}``.

Scripted traces embed the candidate id and round so the verify side of the
fixture can be looked up from the trace alone.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from ..agent_types import Candidate, PredictorOutput, VerifierVerdict
from .base import BackendError


class FixtureMissingError(BackendError):
    pass


_TRACE_KEY_RE = re.compile(r"scripted candidate=(\S+) round=(\d+)")


def _default_trace(cid: str, rnd: int) -> str:
    return f"scripted candidate={cid} round={rnd}"


class ScriptedBackend:
    def __init__(self, entries: list[dict]):
        self._predict: dict[tuple[str, int], dict] = {}
        self._verify: dict[tuple[str, int], dict] = {}
        for entry in entries:
            key = (str(entry["candidate_id"]), int(entry["round"]))
            if entry["kind"] == "predict":
                self._predict[key] = entry["payload"]
            elif entry["kind"] == "verify":
                self._verify[key] = entry["payload"]
            else:
                raise ValueError(f"unknown fixture kind {entry['kind']!r}")

    @classmethod
    def from_file(cls, path: str | Path) -> "ScriptedBackend":
        entries = []
        with Path(path).open(encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line and not line.startswith("#"):
                    entries.append(json.loads(line))
        return cls(entries)

    def predict(self, candidate: Candidate, feedback_history: list[str]) -> PredictorOutput:
        rnd = len(feedback_history) + 1
        key = (candidate.id, rnd)
        if key not in self._predict:
            raise FixtureMissingError(f"no predict fixture for candidate {key[0]!r} round {rnd}")
        payload = self._predict[key]
        toxic = bool(payload["toxic"])
        trace = payload.get("trace") or _default_trace(candidate.id, rnd)
        if toxic:
            return PredictorOutput(
                y_tox=True, r_pred=trace, conf=float(payload.get("conf", 1.0)), round=rnd
            )
        return PredictorOutput(
            y_tox=False,
            y_eff=int(payload["score"]),
            r_pred=trace,
            conf=float(payload["conf"]),
            p_eff=payload.get("p_eff"),
            round=rnd,
        )

    def verify(self, r_pred: str, y_eff: int) -> VerifierVerdict:
        m = _TRACE_KEY_RE.search(r_pred)
        if m is None:
            raise FixtureMissingError(
                f"scripted verifier cannot key trace {r_pred[:80]!r}"
            )
        key = (m.group(1), int(m.group(2)))
        if key not in self._verify:
            raise FixtureMissingError(
                f"no verify fixture for candidate {key[0]!r} round {key[1]}"
            )
        payload = self._verify[key]
        return VerifierVerdict(
            y_ver=int(payload["y_ver"]), r_corr=payload.get("r_corr")
        )
