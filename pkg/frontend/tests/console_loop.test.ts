// @vitest-environment happy-dom
import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { mount } from "../src/main.js";
import { FakeServer } from "./fixtures.js";

const POLL_MS = 60_000; // long enough that only explicit ticks occur

async function flush(): Promise<void> {
  // let the fetch → render promise chains settle
  for (let i = 0; i < 6; i += 1) {
    await new Promise((resolve) => setTimeout(resolve, 0));
  }
}

function openTab(server: FakeServer): { root: HTMLElement; stop: () => void } {
  const root = document.createElement("div");
  document.body.appendChild(root);
  const api = new ApiClient("http://fake", server.fetch);
  const stop = mount(root, api, POLL_MS);
  return { root, stop };
}

function fillForm(
  root: HTMLElement,
  reviewer: string,
  efficiency: number,
): HTMLFormElement {
  const form = root.querySelector<HTMLFormElement>(".verdict-form")!;
  const reviewerInput = form.querySelector<HTMLInputElement>('input[name="reviewer"]')!;
  reviewerInput.value = reviewer;
  reviewerInput.dispatchEvent(new Event("change", { bubbles: true }));
  const select = root
    .querySelector<HTMLFormElement>(".verdict-form")!
    .querySelector<HTMLSelectElement>('select[name="efficiency"]')!;
  select.value = String(efficiency);
  select.dispatchEvent(new Event("change", { bubbles: true }));
  return root.querySelector<HTMLFormElement>(".verdict-form")!;
}

describe("review console loop against the scripted escalation fixture", () => {
  beforeEach(() => {
    document.body.innerHTML = "";
  });

  it("renders the pending ticket with its full 3-round transcript", async () => {
    const server = new FakeServer();
    const { root, stop } = openTab(server);
    await flush();
    stop();

    expect(root.querySelector(".progress")!.getAttribute("data-version")).toBe("0");
    expect(root.textContent).toContain("pending tickets: 1");

    const card = root.querySelector('[data-ticket="T-0001"]')!;
    expect(card).not.toBeNull();
    const rounds = [...card.querySelectorAll(".round-panel")].map((panel) =>
      panel.getAttribute("data-round"),
    );
    expect(rounds).toEqual(["1", "2", "3"]);
    expect(card.textContent).toContain("scripted candidate=esc round=2");
    expect(card.textContent).toContain("round 3 disagreement");
    // confidence shown verbatim, not reformatted
    expect(card.textContent).toContain(`conf ${0.2 + 3 / 100}`);
  });

  it("resolving a verdict updates the progress widget within one poll cycle", async () => {
    const server = new FakeServer();
    const { root, stop } = openTab(server);
    await flush();

    const form = fillForm(root, "alice", 8);
    form.dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));
    await flush();
    stop();

    expect(server.ticket.status).toBe("resolved");
    expect(server.ticket.verdict?.efficiency).toBe(8);
    // submit handler ticks the poller itself — no waiting on the interval
    expect(root.querySelector(".progress")!.getAttribute("data-version")).toBe("1");
    expect(root.textContent).toContain("pending tickets: 0");
    expect(root.textContent).toContain("completion: 100%");
    expect(root.textContent).toContain("No pending escalations");

    root.querySelector<HTMLElement>('[data-tab="resolved"]')!.click();
    await flush();
    expect(root.textContent).toContain("resolved as efficiency 8 by alice");
  });

  it("a duplicate submission from a second tab displays the conflict with the original verdict", async () => {
    const server = new FakeServer();
    const tab1 = openTab(server);
    const tab2 = openTab(server);
    await flush();

    // both tabs see the pending ticket
    expect(tab2.root.querySelector('[data-ticket="T-0001"]')).not.toBeNull();

    const form1 = fillForm(tab1.root, "alice", 8);
    form1.dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));
    await flush();

    // tab2 is stale: it still shows the form and submits a competing verdict
    const form2 = fillForm(tab2.root, "bob", 3);
    form2.dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));
    await flush();
    tab1.stop();
    tab2.stop();

    // the first verdict survives unchanged
    expect(server.ticket.verdict?.reviewer).toBe("alice");
    expect(server.ticket.verdict?.efficiency).toBe(8);

    const conflict = tab2.root.querySelector(".conflict")!;
    expect(conflict).not.toBeNull();
    expect(conflict.textContent).toContain("Already resolved");
    expect(conflict.textContent).toContain("efficiency 8");
    expect(conflict.textContent).toContain("alice");
    // tab2 also catches up to the resolved state
    expect(tab2.root.querySelector(".progress")!.getAttribute("data-version")).toBe("1");
  });
});
