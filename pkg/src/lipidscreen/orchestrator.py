"""Per-candidate verification loop and the batch screening pipeline.

Loop semantics per round r (1-based):

1. predict with all accumulated corrective feedback;
2. a toxic verdict terminates immediately as rejected_toxic — the verifier
   is never consulted and no efficiency value exists anywhere downstream;
3. conf strictly above tau accepts by confidence;
4. otherwise the verifier runs: a passing verdict accepts, a failing one
   appends its corrective feedback and the loop continues;
5. after max_loops failing rounds the candidate escalates to the human
   port.
"""

from __future__ import annotations

import hashlib
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Protocol

from .agent_types import Candidate, PredictorOutput, VerifierVerdict
from .agents.base import BackendError, PredictorBackend, VerifierBackend


class LoopStatus(Enum):
    ACCEPTED = "accepted"
    REJECTED_TOXIC = "rejected_toxic"
    ESCALATED = "escalated"
    RESOLVED_BY_HUMAN = "resolved_by_human"
    FAILED = "failed"


@dataclass
class FinalDecision:
    toxic: bool
    decided_by: str  # confidence | verifier | human
    efficiency: Optional[int] = None

    def __post_init__(self):
        if self.toxic and self.efficiency is not None:
            raise ValueError("a toxic decision must not carry an efficiency value")
        if self.decided_by not in ("confidence", "verifier", "human"):
            raise ValueError(f"unknown decider {self.decided_by!r}")


@dataclass
class LoopState:
    candidate: Candidate
    round: int = 1
    transcript: list[tuple[PredictorOutput, Optional[VerifierVerdict]]] = field(
        default_factory=list
    )
    status: Optional[LoopStatus] = None
    final: Optional[FinalDecision] = None
    error: Optional[str] = None
    ticket_id: Optional[str] = None

    @property
    def last_output(self) -> Optional[PredictorOutput]:
        return self.transcript[-1][0] if self.transcript else None


@dataclass
class OrchestratorConfig:
    tau: float = 0.7
    max_loops: int = 3
    top_fraction: float = 0.001
    parallelism: int = 4

    def __post_init__(self):
        if not 0.0 <= self.tau <= 1.0:
            raise ValueError("tau must be in [0, 1]")
        if self.max_loops < 1:
            raise ValueError("max_loops must be >= 1")
        if not 0.0 < self.top_fraction <= 1.0:
            raise ValueError("top_fraction must be in (0, 1]")


class HumanPort(Protocol):
    def create_ticket(self, state: "LoopState") -> str: ...


def evaluate_candidate(
    candidate: Candidate,
    predictor: PredictorBackend,
    verifier: VerifierBackend,
    config: OrchestratorConfig,
    human_port: Optional[HumanPort] = None,
) -> LoopState:
    state = LoopState(candidate=candidate)
    feedback: list[str] = []
    try:
        for rnd in range(1, config.max_loops + 1):
            state.round = rnd
            output = predictor.predict(candidate, feedback)
            if output.y_tox:
                state.transcript.append((output, None))
                state.status = LoopStatus.REJECTED_TOXIC
                state.final = FinalDecision(toxic=True, decided_by="confidence")
                return state
            if output.conf > config.tau:
                state.transcript.append((output, None))
                state.status = LoopStatus.ACCEPTED
                state.final = FinalDecision(
                    toxic=False, efficiency=output.y_eff, decided_by="confidence"
                )
                return state
            verdict = verifier.verify(output.r_pred, output.y_eff)
            state.transcript.append((output, verdict))
            if verdict.y_ver == 1:
                state.status = LoopStatus.ACCEPTED
                state.final = FinalDecision(
                    toxic=False, efficiency=output.y_eff, decided_by="verifier"
                )
                return state
            feedback.append(verdict.r_corr or "")
    except BackendError as exc:
        state.status = LoopStatus.FAILED
        state.error = str(exc)
        return state
    state.status = LoopStatus.ESCALATED
    if human_port is not None:
        state.ticket_id = human_port.create_ticket(state)
    return state


def apply_human_verdict(
    state: LoopState, toxic: bool, efficiency: Optional[int]
) -> LoopState:
    """Resolve an escalated candidate with the human's final judgment,
    taken verbatim."""
    if state.status not in (LoopStatus.ESCALATED,):
        raise ValueError(f"candidate {state.candidate.id!r} is not escalated")
    if toxic and efficiency is not None:
        raise ValueError("a toxic verdict must not carry an efficiency value")
    if not toxic and (efficiency is None or not 1 <= efficiency <= 10):
        raise ValueError("a non-toxic verdict requires an efficiency in [1, 10]")
    state.final = FinalDecision(toxic=toxic, efficiency=efficiency, decided_by="human")
    state.status = LoopStatus.RESOLVED_BY_HUMAN
    return state


@dataclass
class ScreeningResult:
    states: dict[str, LoopState]
    ranked: list[str]
    shortlist: list[str]
    counts: dict[str, int]
    top_fraction: float


def _rank_key(state: LoopState):
    conf = state.last_output.conf if state.last_output else 0.0
    return (-(state.final.efficiency or 0), -conf, state.candidate.id)


def assemble_result(
    states: dict[str, LoopState], config: OrchestratorConfig
) -> ScreeningResult:
    """Rank accepted (and human-resolved) non-toxic candidates and cut the
    top-fraction shortlist. Escalated-but-unresolved candidates stay out of
    the ranking."""
    counts = {
        "accepted_by_confidence": 0,
        "accepted_by_verifier": 0,
        "rejected_toxic": 0,
        "escalated": 0,
        "failed": 0,
    }
    rankable: list[LoopState] = []
    for state in states.values():
        if state.status == LoopStatus.REJECTED_TOXIC:
            counts["rejected_toxic"] += 1
        elif state.status == LoopStatus.ACCEPTED:
            counts[f"accepted_by_{state.final.decided_by}"] += 1
        elif state.status in (LoopStatus.ESCALATED, LoopStatus.RESOLVED_BY_HUMAN):
            counts["escalated"] += 1
        elif state.status == LoopStatus.FAILED:
            counts["failed"] += 1
        if state.final is not None and not state.final.toxic:
            rankable.append(state)
    ranked = [s.candidate.id for s in sorted(rankable, key=_rank_key)]
    shortlist = ranked[: math.ceil(config.top_fraction * len(states))] if states else []
    return ScreeningResult(
        states=states,
        ranked=ranked,
        shortlist=shortlist,
        counts=counts,
        top_fraction=config.top_fraction,
    )


def screen_library(
    candidates: list[Candidate],
    predictor: PredictorBackend,
    verifier: VerifierBackend,
    config: OrchestratorConfig,
    human_port: Optional[HumanPort] = None,
) -> ScreeningResult:
    """Evaluate every candidate with bounded parallelism; one bad candidate
    never aborts the batch."""
    states: dict[str, LoopState] = {}
    with ThreadPoolExecutor(max_workers=max(1, config.parallelism)) as pool:
        futures = {
            cand.id: pool.submit(
                evaluate_candidate, cand, predictor, verifier, config, human_port
            )
            for cand in candidates
        }
        for cid, fut in futures.items():
            states[cid] = fut.result()
    return assemble_result(states, config)


def _output_dict(out: PredictorOutput) -> dict:
    return {
        "y_tox": out.y_tox,
        "y_eff": out.y_eff,
        "conf": round(out.conf, 12),
        "r_pred": out.r_pred,
        "round": out.round,
    }


def _verdict_dict(ver: Optional[VerifierVerdict]) -> Optional[dict]:
    if ver is None:
        return None
    return {"y_ver": ver.y_ver, "r_corr": ver.r_corr}


def state_dict(state: LoopState) -> dict:
    return {
        "candidate": {"id": state.candidate.id, "smiles": state.candidate.smiles},
        "status": state.status.value if state.status else None,
        "final": None
        if state.final is None
        else {
            "toxic": state.final.toxic,
            "efficiency": state.final.efficiency,
            "decided_by": state.final.decided_by,
        },
        "rounds": [
            {"output": _output_dict(o), "verdict": _verdict_dict(v)}
            for o, v in state.transcript
        ],
        "error": state.error,
        "ticket_id": state.ticket_id,
    }


def state_from_dict(obj: dict) -> LoopState:
    transcript = []
    for rnd in obj.get("rounds", []):
        o = rnd["output"]
        out = PredictorOutput(
            y_tox=o["y_tox"],
            y_eff=o.get("y_eff"),
            r_pred=o.get("r_pred", ""),
            conf=o["conf"],
            round=o.get("round", 1),
        )
        v = rnd.get("verdict")
        verdict = None if v is None else VerifierVerdict(y_ver=v["y_ver"], r_corr=v.get("r_corr"))
        transcript.append((out, verdict))
    final = obj.get("final")
    return LoopState(
        candidate=Candidate(id=obj["candidate"]["id"], smiles=obj["candidate"]["smiles"]),
        round=len(transcript) or 1,
        transcript=transcript,
        status=LoopStatus(obj["status"]) if obj.get("status") else None,
        final=None
        if final is None
        else FinalDecision(
            toxic=final["toxic"],
            efficiency=final.get("efficiency"),
            decided_by=final["decided_by"],
        ),
        error=obj.get("error"),
        ticket_id=obj.get("ticket_id"),
    )


def result_from_report(report: dict) -> tuple[ScreeningResult, OrchestratorConfig]:
    cfg = OrchestratorConfig(**report["config"])
    states = {
        cid: state_from_dict(obj) for cid, obj in report["candidates"].items()
    }
    return assemble_result(states, cfg), cfg


def to_report(
    result: ScreeningResult,
    config: OrchestratorConfig,
    fingerprint_params: Optional[dict] = None,
) -> dict:
    """Structured screening report; timestamp-free so its digest is stable."""
    return {
        "config": {
            "tau": config.tau,
            "max_loops": config.max_loops,
            "top_fraction": config.top_fraction,
            "parallelism": config.parallelism,
        },
        "fingerprint_params": fingerprint_params,
        "counts": result.counts,
        "ranked": result.ranked,
        "shortlist": result.shortlist,
        "candidates": {
            cid: state_dict(state) for cid, state in sorted(result.states.items())
        },
    }


def report_digest(report: dict) -> str:
    blob = json.dumps(report, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def summary_table(result: ScreeningResult) -> str:
    lines = [
        f"{'candidate':<14} {'status':<18} {'eff':>4} {'conf':>7}",
        "-" * 46,
    ]
    for cid in result.ranked:
        state = result.states[cid]
        conf = state.last_output.conf if state.last_output else 0.0
        lines.append(
            f"{cid:<14} {state.status.value:<18} "
            f"{state.final.efficiency or '-':>4} {conf:>7.4f}"
        )
    lines.append("-" * 46)
    for name, count in result.counts.items():
        lines.append(f"{name}: {count}")
    lines.append(f"shortlist ({len(result.shortlist)}): {', '.join(result.shortlist)}")
    return "\n".join(lines)
