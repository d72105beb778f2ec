"""Walk one candidate through the predict/verify loop with scripted agents.

Shows: low-confidence predictions routed to the verifier, corrective
feedback accumulating across rounds, and escalation to a human ticket
after three failed rounds.
"""

from lipidscreen import orchestrator as orch
from lipidscreen.agent_types import Candidate
from lipidscreen.agents import ScriptedBackend

entries = []
feedback = ["claimed score is not the distribution argmax",
            "stated confidence does not match the distribution entropy"]
for rnd, (score, conf) in enumerate([(8, 0.35), (6, 0.45), (5, 0.5)], start=1):
    entries.append({"candidate_id": "demo", "round": rnd, "kind": "predict",
                    "payload": {"toxic": False, "score": score, "conf": conf}})
    verdict = ({"y_ver": 0, "r_corr": feedback[rnd - 1]} if rnd <= 2
               else {"y_ver": 0, "r_corr": "still inconsistent"})
    entries.append({"candidate_id": "demo", "round": rnd, "kind": "verify",
                    "payload": verdict})


class PrintingTickets:
    def create_ticket(self, state):
        print(f"-> escalation ticket created for {state.candidate.id!r} "
              f"after {len(state.transcript)} rounds")
        return "T-0001"


backend = ScriptedBackend(entries)
config = orch.OrchestratorConfig(tau=0.7, max_loops=3)
state = orch.evaluate_candidate(
    Candidate(id="demo", smiles="CCN(C)CNCNCCCC"),
    backend, backend, config, PrintingTickets(),
)

for i, (output, verdict) in enumerate(state.transcript, start=1):
    print(f"round {i}: predicted eff={output.y_eff} conf={output.conf:.2f} "
          f"-> verifier {'pass' if verdict.y_ver else 'fail'}"
          + (f" ({verdict.r_corr})" if verdict.r_corr else ""))
print(f"status: {state.status.value}, ticket {state.ticket_id}")

resolved = orch.apply_human_verdict(state, toxic=False, efficiency=7)
print(f"after human verdict: {resolved.status.value}, "
      f"final efficiency {resolved.final.efficiency} "
      f"(decided by {resolved.final.decided_by})")
