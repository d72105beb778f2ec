"""Single-directory run/ticket store with an append-only audit log.

Every mutation appends one audit event (fsync'd) before updating the
in-memory state; reopening a store replays the log, so ticket statuses and
run reports survive crashes exactly. Verdict application is serialized
through a single lock and is at-most-once: a second verdict for the same
ticket raises ConflictError and preserves the original.

Timestamps are recorded on events and tickets but never enter report
digests, keeping golden-file tests stable.
"""

from __future__ import annotations

import hashlib
import json
import threading
import time
from dataclasses import dataclass, field, asdict
from pathlib import Path
from typing import Optional

from .. import orchestrator


class StoreError(RuntimeError):
    pass


class ConflictError(StoreError):
    def __init__(self, ticket_id: str, original: dict):
        super().__init__(f"ticket {ticket_id!r} already resolved")
        self.original = original


@dataclass
class HumanVerdict:
    toxic: bool
    reviewer: str
    efficiency: Optional[int] = None
    note: str = ""
    submitted_at: Optional[float] = None

    def validate(self) -> None:
        if self.toxic and self.efficiency is not None:
            raise ValueError("a toxic verdict must not carry an efficiency value")
        if not self.toxic and (
            self.efficiency is None or not 1 <= self.efficiency <= 10
        ):
            raise ValueError("a non-toxic verdict requires an efficiency in [1, 10]")
        if not self.reviewer:
            raise ValueError("reviewer id is required")


@dataclass
class EscalationTicket:
    ticket_id: str
    run_id: str
    candidate_id: str
    smiles: str
    transcript: list[dict]
    created_at: float
    status: str = "pending"  # pending | resolved
    verdict: Optional[dict] = None


@dataclass
class RunRecord:
    run_id: str
    report: dict
    status: str = "running"  # running | finalized
    version: int = 0
    created_at: float = 0.0


def _digest(payload: dict) -> str:
    return hashlib.sha256(
        json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    ).hexdigest()


class Store:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.log_path = self.root / "audit.log"
        self._lock = threading.Lock()
        self._seq = 0
        self.runs: dict[str, RunRecord] = {}
        self.tickets: dict[str, EscalationTicket] = {}
        self._replay()
        self._fh = self.log_path.open("a", encoding="utf-8")

    # -- audit log ---------------------------------------------------------

    def _append(self, kind: str, payload: dict) -> None:
        self._seq += 1
        event = {
            "seq": self._seq,
            "ts": time.time(),
            "kind": kind,
            "payload": payload,
            "payload_digest": _digest(payload),
        }
        self._fh.write(json.dumps(event, sort_keys=True) + "\n")
        self._fh.flush()

    def events(self) -> list[dict]:
        if not self.log_path.exists():
            return []
        out = []
        with self.log_path.open(encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    out.append(json.loads(line))
        return out

    def _replay(self) -> None:
        for event in self.events():
            self._seq = max(self._seq, event["seq"])
            self._apply(event["kind"], event["payload"], event["ts"])

    def _apply(self, kind: str, payload: dict, ts: float) -> None:
        if kind == "run_started":
            self.runs[payload["run_id"]] = RunRecord(
                run_id=payload["run_id"],
                report=payload["report"],
                created_at=ts,
            )
        elif kind == "ticket_created":
            t = payload["ticket"]
            self.tickets[t["ticket_id"]] = EscalationTicket(
                ticket_id=t["ticket_id"],
                run_id=t["run_id"],
                candidate_id=t["candidate_id"],
                smiles=t["smiles"],
                transcript=t["transcript"],
                created_at=ts,
            )
        elif kind == "verdict_applied":
            ticket = self.tickets[payload["ticket_id"]]
            ticket.status = "resolved"
            ticket.verdict = payload["verdict"]
            self._incorporate_verdict(ticket, payload["verdict"])
        elif kind == "run_finalized":
            run = self.runs[payload["run_id"]]
            run.status = "finalized"
            run.report = payload["report"]
            run.version += 1
        elif kind == "candidate_decided":
            pass  # informational only; state lives in the run report

    # -- runs --------------------------------------------------------------

    def start_run(self, run_id: str, report: dict) -> RunRecord:
        with self._lock:
            if run_id in self.runs:
                raise StoreError(f"run {run_id!r} already exists")
            self._append("run_started", {"run_id": run_id, "report": report})
            self.runs[run_id] = RunRecord(
                run_id=run_id, report=report, created_at=time.time()
            )
            return self.runs[run_id]

    def get_run(self, run_id: str) -> RunRecord:
        if run_id not in self.runs:
            raise StoreError(f"unknown run {run_id!r}")
        return self.runs[run_id]

    def snapshot(self, run_id: str) -> dict:
        with self._lock:
            run = self.get_run(run_id)
            counts = run.report.get("counts", {})
            total = sum(counts.values()) or 1
            pending = sum(
                1
                for t in self.tickets.values()
                if t.run_id == run_id and t.status == "pending"
            )
            return {
                "run_id": run_id,
                "status": run.status,
                "version": run.version,
                "counts": counts,
                "pending_tickets": pending,
                "completion": 1.0 - pending / total,
            }

    def finalize_run(self, run_id: str) -> RunRecord:
        """Re-rank from the stored candidate states (with any applied
        verdicts) and mark the run finalized."""
        with self._lock:
            run = self.get_run(run_id)
            result, cfg = orchestrator.result_from_report(run.report)
            report = orchestrator.to_report(
                result, cfg, fingerprint_params=run.report.get("fingerprint_params")
            )
            self._append("run_finalized", {"run_id": run_id, "report": report})
            run.report = report
            run.status = "finalized"
            run.version += 1
            return run

    # -- tickets -----------------------------------------------------------

    def create_ticket(self, run_id: str, state: orchestrator.LoopState) -> str:
        with self._lock:
            ticket_id = f"T-{len(self.tickets) + 1:04d}"
            sd = orchestrator.state_dict(state)
            ticket = EscalationTicket(
                ticket_id=ticket_id,
                run_id=run_id,
                candidate_id=state.candidate.id,
                smiles=state.candidate.smiles,
                transcript=sd["rounds"],
                created_at=time.time(),
            )
            self._append(
                "ticket_created",
                {
                    "ticket": {
                        "ticket_id": ticket_id,
                        "run_id": run_id,
                        "candidate_id": ticket.candidate_id,
                        "smiles": ticket.smiles,
                        "transcript": ticket.transcript,
                    }
                },
            )
            self.tickets[ticket_id] = ticket
            return ticket_id

    def list_escalations(self, status: Optional[str] = None) -> list[EscalationTicket]:
        tickets = sorted(self.tickets.values(), key=lambda t: (t.created_at, t.ticket_id))
        if status:
            tickets = [t for t in tickets if t.status == status]
        return tickets

    def get_ticket(self, ticket_id: str) -> EscalationTicket:
        if ticket_id not in self.tickets:
            raise StoreError(f"unknown ticket {ticket_id!r}")
        return self.tickets[ticket_id]

    def _incorporate_verdict(self, ticket: EscalationTicket, verdict: dict) -> None:
        run = self.runs.get(ticket.run_id)
        if run is None:
            return
        entry = run.report["candidates"].get(ticket.candidate_id)
        if entry is None:
            return
        state = orchestrator.state_from_dict(entry)
        orchestrator.apply_human_verdict(
            state, toxic=verdict["toxic"], efficiency=verdict.get("efficiency")
        )
        run.report["candidates"][ticket.candidate_id] = orchestrator.state_dict(state)
        result, cfg = orchestrator.result_from_report(run.report)
        run.report["counts"] = result.counts
        run.report["ranked"] = result.ranked
        run.report["shortlist"] = result.shortlist
        run.version += 1

    def submit_verdict(self, ticket_id: str, verdict: HumanVerdict) -> EscalationTicket:
        verdict.validate()
        with self._lock:
            ticket = self.get_ticket(ticket_id)
            if ticket.status == "resolved":
                raise ConflictError(ticket_id, ticket.verdict or {})
            payload = asdict(verdict)
            payload["submitted_at"] = time.time()
            self._append("verdict_applied", {"ticket_id": ticket_id, "verdict": payload})
            ticket.status = "resolved"
            ticket.verdict = payload
            self._incorporate_verdict(ticket, payload)
            return ticket

    def close(self) -> None:
        self._fh.close()


class StoreHumanPort:
    """Escalation sink the orchestrator posts tickets to."""

    def __init__(self, store: Store, run_id: str):
        self.store = store
        self.run_id = run_id

    def create_ticket(self, state: orchestrator.LoopState) -> str:
        return self.store.create_ticket(self.run_id, state)
