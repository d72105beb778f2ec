"""Batch-screen a candidate library and review escalations through the store.

Shows: screening with a trained surrogate, the ranked shortlist, the
append-only audit store, and resolving a ticket with a human verdict.
"""

import tempfile
import warnings

from lipidscreen import dataset, orchestrator as orch, surrogate, synth
from lipidscreen.agent_types import Candidate
from lipidscreen.agents import SurrogateBackend
from lipidscreen.app.store import HumanVerdict, Store, StoreHumanPort

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    records = dataset.rescale_scores(synth.generate_records(300, 100, seed=11))
spl = dataset.split(records, seed=7, train_n=200)
by_id = {r.id: r for r in records}
ckpt, _ = surrogate.train(
    [by_id[i] for i in spl.train],
    [by_id[i] for i in spl.eval],
    surrogate.TrainConfig(lr=0.05, epochs=20, batch_size=32, seed=0,
                          hidden=(64, 32), eval_every=5, nbits=1024),
)
backend = SurrogateBackend(ckpt)


class StrictVerifier:
    """Demo verifier: rule checks plus a confidence floor, so the least
    certain candidates end up in the human review queue."""

    def verify(self, r_pred, y_eff):
        from lipidscreen.agent_types import VerifierVerdict
        from lipidscreen.trace import parse_trace

        verdict = backend.verify(r_pred, y_eff)
        if verdict.y_ver == 1 and parse_trace(r_pred)["confidence"] < 0.055:
            return VerifierVerdict(
                y_ver=0, r_corr="confidence below the review floor"
            )
        return verdict


library = synth.generate_library(n=400, seed=5)
candidates = [Candidate(id=cid, smiles=smi) for cid, smi in library]
config = orch.OrchestratorConfig(tau=0.7, max_loops=3, top_fraction=0.01)

with tempfile.TemporaryDirectory() as tmp:
    store = Store(tmp)
    run_id = "demo-run"
    result = orch.screen_library(
        candidates, backend, StrictVerifier(), config,
        StoreHumanPort(store, run_id),
    )
    report = orch.to_report(result, config,
                            fingerprint_params=backend.fingerprint_params)
    store.start_run(run_id, report)

    print(f"screened {len(candidates)} candidates:")
    for name, count in result.counts.items():
        print(f"  {name}: {count}")
    print(f"shortlist (top {config.top_fraction:.0%}): {result.shortlist}")
    print(f"report digest: {orch.report_digest(report)}")

    pending = store.list_escalations("pending")
    print(f"pending escalations: {len(pending)}")
    if pending:
        ticket = pending[0]
        print(f"resolving {ticket.ticket_id} (candidate {ticket.candidate_id})")
        store.submit_verdict(
            ticket.ticket_id,
            HumanVerdict(toxic=False, efficiency=9, reviewer="demo-reviewer"),
        )
        snap = store.snapshot(run_id)
        print(f"snapshot: version {snap['version']}, "
              f"pending {snap['pending_tickets']}, "
              f"completion {snap['completion']:.2%}")
    print(f"audit log holds {len(store.events())} events (append-only)")
