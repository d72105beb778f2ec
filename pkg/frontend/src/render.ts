import { sketchSvg } from "./sketch.js";
import type {
  HumanVerdictRecord,
  RoundEntry,
  Snapshot,
  Ticket,
  VerdictForm,
} from "./types.js";
import { validateVerdict } from "./validate.js";

/**
 * Pure HTML-string views. All numbers shown (confidence, scores) are taken
 * verbatim from the transcripts — nothing is recomputed or reformatted
 * client-side beyond String().
 */

function esc(text: unknown): string {
  return String(text)
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderRound(entry: RoundEntry): string {
  const { output, verdict } = entry;
  const claim = output.y_tox
    ? `<span class="claim toxic">toxic</span>`
    : `<span class="claim">efficiency ${esc(output.y_eff)}</span>`;
  const verifier =
    verdict === null
      ? `<span class="verifier skipped">verifier not consulted</span>`
      : verdict.y_ver === 1
        ? `<span class="verifier pass">verifier: consistent</span>`
        : `<span class="verifier fail">verifier: inconsistent` +
          (verdict.r_corr ? ` — ${esc(verdict.r_corr)}` : "") +
          `</span>`;
  return (
    `<div class="round-panel" data-round="${esc(output.round)}">` +
    `<h4>round ${esc(output.round)}</h4>` +
    `<p>predictor: ${claim} <span class="conf">conf ${esc(output.conf)}</span></p>` +
    `<pre class="trace">${esc(output.r_pred)}</pre>` +
    `<p>${verifier}</p>` +
    `</div>`
  );
}

function renderTimeline(transcript: RoundEntry[]): string {
  const marks = transcript
    .map((entry) =>
      entry.verdict === null ? "·" : entry.verdict.y_ver === 1 ? "✓" : "✗",
    )
    .join(" → ");
  return `<p class="timeline">disagreement timeline: ${marks}</p>`;
}

function renderStructure(smiles: string): string {
  const svg = sketchSvg(smiles);
  const text = `<code class="smiles">${esc(smiles)}</code>`;
  return svg === null ? text : `${text}<div class="structure">${svg}</div>`;
}

export function renderVerdictRecord(verdict: HumanVerdictRecord): string {
  const outcome = verdict.toxic
    ? "toxic"
    : `efficiency ${esc(verdict.efficiency)}`;
  return (
    `<p class="verdict-record">resolved as <strong>${outcome}</strong> ` +
    `by ${esc(verdict.reviewer)}` +
    (verdict.note ? ` — ${esc(verdict.note)}` : "") +
    `</p>`
  );
}

export function renderTicketCard(ticket: Ticket): string {
  const rounds = ticket.transcript.map(renderRound).join("");
  const resolved =
    ticket.status === "resolved" && ticket.verdict
      ? renderVerdictRecord(ticket.verdict)
      : "";
  return (
    `<article class="ticket ${ticket.status}" data-ticket="${esc(ticket.ticket_id)}">` +
    `<header><h3>${esc(ticket.ticket_id)}</h3>` +
    `<span class="status-badge ${ticket.status}">${ticket.status}</span></header>` +
    `<p>candidate ${esc(ticket.candidate_id)}</p>` +
    renderStructure(ticket.smiles) +
    renderTimeline(ticket.transcript) +
    rounds +
    resolved +
    `</article>`
  );
}

export function renderQueue(
  tickets: Ticket[],
  activeTab: "pending" | "resolved",
): string {
  const shown = tickets.filter((t) => t.status === activeTab);
  const tabs =
    `<nav class="tabs">` +
    (["pending", "resolved"] as const)
      .map(
        (tab) =>
          `<button class="tab${tab === activeTab ? " active" : ""}" ` +
          `data-tab="${tab}">${tab}</button>`,
      )
      .join("") +
    `</nav>`;
  if (shown.length === 0) {
    return (
      tabs +
      `<p class="empty-state">No ${activeTab} escalations — nothing to review.</p>`
    );
  }
  return tabs + shown.map(renderTicketCard).join("");
}

export function renderVerdictForm(ticketId: string, form: VerdictForm): string {
  const errors = validateVerdict(form);
  const options = Array.from({ length: 10 }, (_, i) => i + 1)
    .map(
      (v) =>
        `<option value="${v}"${form.efficiency === v ? " selected" : ""}>${v}</option>`,
    )
    .join("");
  const errorList = errors.length
    ? `<ul class="errors">${errors.map((e) => `<li>${esc(e)}</li>`).join("")}</ul>`
    : "";
  return (
    `<form class="verdict-form" data-ticket="${esc(ticketId)}">` +
    `<label><input type="checkbox" name="toxic"${form.toxic ? " checked" : ""}/> toxic</label>` +
    `<label>efficiency <select name="efficiency"${form.toxic ? " disabled" : ""}>` +
    `<option value=""${form.efficiency === null ? " selected" : ""}>—</option>` +
    options +
    `</select></label>` +
    `<label>reviewer <input name="reviewer" value="${esc(form.reviewer)}"/></label>` +
    `<label>note <input name="note" value="${esc(form.note)}"/></label>` +
    errorList +
    `<button type="submit"${errors.length ? " disabled" : ""}>submit verdict</button>` +
    `</form>`
  );
}

export function renderProgress(snapshot: Snapshot): string {
  const counts = Object.entries(snapshot.counts)
    .map(([name, count]) => `<li>${esc(name)}: ${esc(count)}</li>`)
    .join("");
  return (
    `<section class="progress" data-version="${esc(snapshot.version)}">` +
    `<h3>run ${esc(snapshot.run_id)} — ${esc(snapshot.status)}</h3>` +
    `<ul class="counts">${counts}</ul>` +
    `<p>pending tickets: ${esc(snapshot.pending_tickets)}</p>` +
    `<p>completion: ${esc(Math.round(snapshot.completion * 100))}%</p>` +
    `</section>`
  );
}

export function renderConflict(original: HumanVerdictRecord): string {
  const outcome = original.toxic
    ? "toxic"
    : `efficiency ${esc(original.efficiency)}`;
  return (
    `<div class="conflict">` +
    `<strong>Already resolved.</strong> A verdict was applied first from ` +
    `another session: <em>${outcome}</em> by ${esc(original.reviewer)}` +
    (original.note ? ` — ${esc(original.note)}` : "") +
    `. This ticket cannot be changed.` +
    `</div>`
  );
}

export function renderUnreachable(message: string): string {
  return (
    `<div class="banner error">` +
    `service unreachable: ${esc(message)} ` +
    `<button data-action="retry">retry</button>` +
    `</div>`
  );
}
