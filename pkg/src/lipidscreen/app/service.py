"""HTTP review service over the run/ticket store.

Read endpoints for runs, escalations, tickets, and reports; one write
endpoint posting a human verdict. Clients poll the monotone snapshot
version — there is no server push.
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from .. import orchestrator
from .store import ConflictError, HumanVerdict, Store, StoreError


class VerdictIn(BaseModel):
    toxic: bool
    efficiency: Optional[int] = None
    reviewer: str
    note: str = ""


def _ticket_out(t) -> dict:
    return {
        "ticket_id": t.ticket_id,
        "run_id": t.run_id,
        "candidate_id": t.candidate_id,
        "smiles": t.smiles,
        "transcript": t.transcript,
        "created_at": t.created_at,
        "status": t.status,
        "verdict": t.verdict,
    }


def make_app(store: Store) -> FastAPI:
    app = FastAPI(title="lipidscreen review service")

    @app.get("/runs")
    def list_runs():
        return [
            {"run_id": r.run_id, "status": r.status, "version": r.version}
            for r in store.runs.values()
        ]

    @app.get("/runs/{run_id}")
    def run_snapshot(run_id: str):
        try:
            return store.snapshot(run_id)
        except StoreError as exc:
            raise HTTPException(status_code=404, detail=str(exc))

    @app.get("/runs/{run_id}/report")
    def run_report(run_id: str):
        try:
            run = store.get_run(run_id)
        except StoreError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        return {
            "report": run.report,
            "digest": orchestrator.report_digest(run.report),
            "version": run.version,
        }

    @app.get("/escalations")
    def escalations(status: Optional[str] = None):
        return [_ticket_out(t) for t in store.list_escalations(status)]

    @app.get("/tickets/{ticket_id}")
    def ticket(ticket_id: str):
        try:
            return _ticket_out(store.get_ticket(ticket_id))
        except StoreError as exc:
            raise HTTPException(status_code=404, detail=str(exc))

    @app.post("/tickets/{ticket_id}/verdict")
    def post_verdict(ticket_id: str, verdict: VerdictIn):
        try:
            hv = HumanVerdict(
                toxic=verdict.toxic,
                efficiency=verdict.efficiency,
                reviewer=verdict.reviewer,
                note=verdict.note,
            )
            t = store.submit_verdict(ticket_id, hv)
            return _ticket_out(t)
        except ConflictError as exc:
            raise HTTPException(
                status_code=409,
                detail={"error": "already resolved", "original": exc.original},
            )
        except StoreError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    return app
