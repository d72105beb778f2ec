import { ApiClient } from "./api.js";
import { SnapshotPoller } from "./poll.js";
import {
  renderConflict,
  renderProgress,
  renderQueue,
  renderUnreachable,
  renderVerdictForm,
} from "./render.js";
import type { Snapshot, Ticket, VerdictForm } from "./types.js";
import { emptyForm } from "./types.js";

/** DOM bootstrap: state lives here, all views come from render.ts. */
export function mount(root: HTMLElement, api: ApiClient, pollMs = 2000): () => void {
  root.innerHTML =
    `<div id="banner"></div><div id="progress"></div>` +
    `<div id="queue"></div>`;
  const bannerEl = root.querySelector<HTMLElement>("#banner")!;
  const progressEl = root.querySelector<HTMLElement>("#progress")!;
  const queueEl = root.querySelector<HTMLElement>("#queue")!;

  let tickets: Ticket[] = [];
  let activeTab: "pending" | "resolved" = "pending";
  let runId: string | null = null;
  const forms = new Map<string, VerdictForm>();
  const conflicts = new Map<string, string>();

  const formFor = (ticketId: string): VerdictForm => {
    let form = forms.get(ticketId);
    if (!form) {
      form = emptyForm();
      forms.set(ticketId, form);
    }
    return form;
  };

  const redrawQueue = (): void => {
    queueEl.innerHTML = renderQueue(tickets, activeTab);
    for (const ticket of tickets) {
      const card = queueEl.querySelector(`[data-ticket="${ticket.ticket_id}"]`);
      const conflict = conflicts.get(ticket.ticket_id) ?? "";
      const form =
        ticket.status === "pending"
          ? renderVerdictForm(ticket.ticket_id, formFor(ticket.ticket_id))
          : "";
      if (card) {
        card.insertAdjacentHTML("beforeend", conflict + form);
      } else if (conflict) {
        // ticket moved off the visible tab (e.g. resolved elsewhere) but the
        // reviewer still needs to see why their submission was refused
        queueEl.insertAdjacentHTML("beforeend", conflict);
      }
    }
  };

  const refreshTickets = async (): Promise<void> => {
    tickets = await api.listEscalations();
    redrawQueue();
  };

  const onSnapshot = (snapshot: Snapshot): void => {
    bannerEl.innerHTML = "";
    progressEl.innerHTML = renderProgress(snapshot);
    void refreshTickets().catch((error) => {
      bannerEl.innerHTML = renderUnreachable(String(error));
    });
  };

  const poller = new SnapshotPoller(
    async () => {
      if (runId === null) {
        const runs = await api.listRuns();
        if (runs.length === 0) throw new Error("no runs in the store yet");
        runId = runs[0].run_id;
      }
      return api.getSnapshot(runId);
    },
    onSnapshot,
    (error) => {
      bannerEl.innerHTML = renderUnreachable(String(error));
    },
    pollMs,
  );

  root.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    if (target.matches(".tab")) {
      activeTab = target.dataset.tab as "pending" | "resolved";
      redrawQueue();
    } else if (target.matches('[data-action="retry"]')) {
      void poller.tick();
    }
  });

  root.addEventListener("change", (event) => {
    const input = event.target as HTMLInputElement | HTMLSelectElement;
    const formEl = input.closest<HTMLFormElement>(".verdict-form");
    if (!formEl) return;
    const form = formFor(formEl.dataset.ticket!);
    if (input.name === "toxic") {
      form.toxic = (input as HTMLInputElement).checked;
      if (form.toxic) form.efficiency = null;
    } else if (input.name === "efficiency") {
      form.efficiency = input.value === "" ? null : Number(input.value);
    } else if (input.name === "reviewer") {
      form.reviewer = input.value;
    } else if (input.name === "note") {
      form.note = input.value;
    }
    redrawQueue();
  });

  root.addEventListener("submit", (event) => {
    const formEl = event.target as HTMLFormElement;
    if (!formEl.matches(".verdict-form")) return;
    event.preventDefault();
    const ticketId = formEl.dataset.ticket!;
    void api
      .postVerdict(ticketId, formFor(ticketId))
      .then((result) => {
        if (result.kind === "conflict") {
          conflicts.set(ticketId, renderConflict(result.original));
        } else {
          conflicts.delete(ticketId);
        }
        return refreshTickets();
      })
      .then(() => poller.tick())
      .catch((error) => {
        bannerEl.innerHTML = renderUnreachable(String(error));
      });
  });

  poller.start();
  return () => poller.stop();
}

declare global {
  interface Window {
    __reviewConsoleStop?: () => void;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  const base = `${window.location.protocol}//${window.location.hostname}:8321`;
  window.__reviewConsoleStop = mount(
    document.getElementById("app")!,
    new ApiClient(base),
  );
}
