import type { FetchFn } from "../src/api.js";
import type {
  HumanVerdictRecord,
  RoundEntry,
  Snapshot,
  Ticket,
} from "../src/types.js";

export function scriptedRounds(): RoundEntry[] {
  return [1, 2, 3].map((round) => ({
    output: {
      y_tox: false,
      y_eff: 4 + round,
      conf: 0.2 + round / 100,
      r_pred: `scripted candidate=esc round=${round}`,
      round,
    },
    verdict: { y_ver: 0, r_corr: `round ${round} disagreement` },
  }));
}

export function pendingTicket(overrides: Partial<Ticket> = {}): Ticket {
  return {
    ticket_id: "T-0001",
    run_id: "run-1",
    candidate_id: "esc",
    smiles: "CCN(C)CNCNCCCC",
    transcript: scriptedRounds(),
    created_at: 1_700_000_000,
    status: "pending",
    verdict: null,
    ...overrides,
  };
}

export function snapshot(overrides: Partial<Snapshot> = {}): Snapshot {
  return {
    run_id: "run-1",
    status: "running",
    version: 0,
    counts: {
      accepted_by_confidence: 5,
      accepted_by_verifier: 2,
      rejected_toxic: 2,
      escalated: 1,
      failed: 0,
    },
    pending_tickets: 1,
    completion: 0.9,
    ...overrides,
  };
}

function json(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

/**
 * In-memory stand-in for the review service: one run, one escalation,
 * at-most-once verdicts, monotone snapshot version.
 */
export class FakeServer {
  ticket = pendingTicket();
  version = 0;
  requests: string[] = [];

  readonly fetch: FetchFn = async (input, init) => {
    const url = new URL(String(input), "http://fake");
    const path = url.pathname;
    this.requests.push(`${init?.method ?? "GET"} ${path}`);

    if (path === "/runs") {
      return json([{ run_id: "run-1", status: "running", version: this.version }]);
    }
    if (path === "/runs/run-1") {
      return json(
        snapshot({
          version: this.version,
          pending_tickets: this.ticket.status === "pending" ? 1 : 0,
          completion: this.ticket.status === "pending" ? 0.9 : 1.0,
        }),
      );
    }
    if (path === "/escalations") {
      const status = url.searchParams.get("status");
      const all = [this.ticket];
      return json(status ? all.filter((t) => t.status === status) : all);
    }
    if (path === `/tickets/${this.ticket.ticket_id}`) {
      return json(this.ticket);
    }
    if (path === `/tickets/${this.ticket.ticket_id}/verdict`) {
      const body = JSON.parse(String(init?.body)) as HumanVerdictRecord;
      if (this.ticket.status === "resolved") {
        return json(
          { detail: { error: "already resolved", original: this.ticket.verdict } },
          409,
        );
      }
      if (body.toxic && body.efficiency !== null) {
        return json({ detail: "a toxic verdict must not carry an efficiency value" }, 422);
      }
      this.ticket = {
        ...this.ticket,
        status: "resolved",
        verdict: { ...body, submitted_at: 1_700_000_100 },
      };
      this.version += 1;
      return json(this.ticket);
    }
    return json({ detail: `unknown path ${path}` }, 404);
  };
}
