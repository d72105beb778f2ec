import type {
  HumanVerdictRecord,
  RunSummary,
  Snapshot,
  Ticket,
  VerdictForm,
} from "./types.js";

export type FetchFn = (input: string, init?: RequestInit) => Promise<Response>;

export type VerdictResult =
  | { kind: "ok"; ticket: Ticket }
  | { kind: "conflict"; original: HumanVerdictRecord }
  | { kind: "invalid"; message: string }
  | { kind: "not_found"; message: string };

/**
 * Thin typed client over the review service. Network failures reject the
 * promise (callers surface the unreachable banner); application-level
 * outcomes (conflict, validation) come back as discriminated results.
 */
export class ApiClient {
  constructor(
    private readonly base: string,
    private readonly fetchFn: FetchFn = (input, init) => fetch(input, init),
  ) {}

  private async getJson<T>(path: string): Promise<T> {
    const resp = await this.fetchFn(`${this.base}${path}`);
    if (!resp.ok) {
      throw new Error(`GET ${path} failed with status ${resp.status}`);
    }
    return (await resp.json()) as T;
  }

  listRuns(): Promise<RunSummary[]> {
    return this.getJson("/runs");
  }

  getSnapshot(runId: string): Promise<Snapshot> {
    return this.getJson(`/runs/${encodeURIComponent(runId)}`);
  }

  getReport(runId: string): Promise<{ report: unknown; digest: string; version: number }> {
    return this.getJson(`/runs/${encodeURIComponent(runId)}/report`);
  }

  listEscalations(status?: "pending" | "resolved"): Promise<Ticket[]> {
    const query = status ? `?status=${status}` : "";
    return this.getJson(`/escalations${query}`);
  }

  getTicket(ticketId: string): Promise<Ticket> {
    return this.getJson(`/tickets/${encodeURIComponent(ticketId)}`);
  }

  async postVerdict(ticketId: string, form: VerdictForm): Promise<VerdictResult> {
    const resp = await this.fetchFn(
      `${this.base}/tickets/${encodeURIComponent(ticketId)}/verdict`,
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({
          toxic: form.toxic,
          efficiency: form.efficiency,
          reviewer: form.reviewer,
          note: form.note,
        }),
      },
    );
    if (resp.ok) {
      return { kind: "ok", ticket: (await resp.json()) as Ticket };
    }
    const body = (await resp.json()) as { detail?: unknown };
    if (resp.status === 409) {
      const detail = body.detail as { original: HumanVerdictRecord };
      return { kind: "conflict", original: detail.original };
    }
    if (resp.status === 404) {
      return { kind: "not_found", message: String(body.detail ?? "unknown ticket") };
    }
    return { kind: "invalid", message: String(body.detail ?? "invalid verdict") };
  }
}
