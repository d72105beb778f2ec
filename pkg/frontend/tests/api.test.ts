import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { FakeServer } from "./fixtures.js";

describe("api client", () => {
  it("lists runs and fetches snapshots", async () => {
    const server = new FakeServer();
    const api = new ApiClient("http://fake", server.fetch);
    const runs = await api.listRuns();
    expect(runs).toEqual([{ run_id: "run-1", status: "running", version: 0 }]);
    const snap = await api.getSnapshot("run-1");
    expect(snap.pending_tickets).toBe(1);
    expect(snap.counts.escalated).toBe(1);
  });

  it("filters escalations by status", async () => {
    const server = new FakeServer();
    const api = new ApiClient("http://fake", server.fetch);
    expect(await api.listEscalations("pending")).toHaveLength(1);
    expect(await api.listEscalations("resolved")).toHaveLength(0);
    expect(server.requests).toContain("GET /escalations");
  });

  it("posts a verdict and returns the resolved ticket", async () => {
    const server = new FakeServer();
    const api = new ApiClient("http://fake", server.fetch);
    const result = await api.postVerdict("T-0001", {
      toxic: false, efficiency: 8, reviewer: "alice", note: "confirmed",
    });
    expect(result.kind).toBe("ok");
    if (result.kind === "ok") {
      expect(result.ticket.status).toBe("resolved");
      expect(result.ticket.verdict?.efficiency).toBe(8);
    }
  });

  it("maps 409 to a conflict carrying the original verdict", async () => {
    const server = new FakeServer();
    const api = new ApiClient("http://fake", server.fetch);
    await api.postVerdict("T-0001", {
      toxic: true, efficiency: null, reviewer: "alice", note: "",
    });
    const second = await api.postVerdict("T-0001", {
      toxic: false, efficiency: 3, reviewer: "bob", note: "",
    });
    expect(second.kind).toBe("conflict");
    if (second.kind === "conflict") {
      expect(second.original.reviewer).toBe("alice");
      expect(second.original.toxic).toBe(true);
    }
  });

  it("maps 422 to an invalid result with the server message", async () => {
    const server = new FakeServer();
    const api = new ApiClient("http://fake", server.fetch);
    const result = await api.postVerdict("T-0001", {
      toxic: true, efficiency: 5, reviewer: "a", note: "",
    });
    expect(result.kind).toBe("invalid");
    if (result.kind === "invalid") {
      expect(result.message).toMatch(/must not carry/);
    }
  });

  it("maps 404 to not_found", async () => {
    const server = new FakeServer();
    const api = new ApiClient("http://fake", server.fetch);
    const result = await api.postVerdict("T-9999", {
      toxic: true, efficiency: null, reviewer: "a", note: "",
    });
    expect(result.kind).toBe("not_found");
  });

  it("rejects on transport failure instead of defaulting", async () => {
    const api = new ApiClient("http://fake", async () => {
      throw new Error("connection refused");
    });
    await expect(api.listRuns()).rejects.toThrow("connection refused");
  });
});
