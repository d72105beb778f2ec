import type { Snapshot } from "./types.js";

/**
 * Poll-driven liveness over the snapshot's monotone version: callbacks fire
 * only when the version strictly increases, so a stale or reordered reply
 * can never regress the displayed counts.
 */
export class SnapshotPoller {
  private lastVersion = -1;
  private timer: ReturnType<typeof setInterval> | null = null;

  constructor(
    private readonly fetchSnapshot: () => Promise<Snapshot>,
    private readonly onUpdate: (snapshot: Snapshot) => void,
    private readonly onError: (error: unknown) => void,
    private readonly intervalMs = 2000,
  ) {}

  /** One poll cycle; exposed so tests (and start()) can drive it directly. */
  async tick(): Promise<void> {
    let snapshot: Snapshot;
    try {
      snapshot = await this.fetchSnapshot();
    } catch (error) {
      this.onError(error);
      return;
    }
    if (snapshot.version > this.lastVersion) {
      this.lastVersion = snapshot.version;
      this.onUpdate(snapshot);
    }
  }

  start(): void {
    if (this.timer !== null) return;
    void this.tick();
    this.timer = setInterval(() => void this.tick(), this.intervalMs);
  }

  stop(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }
}
