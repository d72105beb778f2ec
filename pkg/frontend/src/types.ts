/** Wire types mirrored from the review service. */

export interface RoundOutput {
  y_tox: boolean;
  y_eff: number | null;
  conf: number;
  r_pred: string;
  round: number;
}

export interface RoundVerdict {
  y_ver: number;
  r_corr: string | null;
}

export interface RoundEntry {
  output: RoundOutput;
  verdict: RoundVerdict | null;
}

export interface HumanVerdictRecord {
  toxic: boolean;
  efficiency: number | null;
  reviewer: string;
  note: string;
  submitted_at: number | null;
}

export interface Ticket {
  ticket_id: string;
  run_id: string;
  candidate_id: string;
  smiles: string;
  transcript: RoundEntry[];
  created_at: number;
  status: "pending" | "resolved";
  verdict: HumanVerdictRecord | null;
}

export interface Snapshot {
  run_id: string;
  status: string;
  version: number;
  counts: Record<string, number>;
  pending_tickets: number;
  completion: number;
}

export interface RunSummary {
  run_id: string;
  status: string;
  version: number;
}

/** Client-side verdict form state. */
export interface VerdictForm {
  toxic: boolean;
  efficiency: number | null;
  reviewer: string;
  note: string;
}

export function emptyForm(): VerdictForm {
  return { toxic: false, efficiency: null, reviewer: "", note: "" };
}
