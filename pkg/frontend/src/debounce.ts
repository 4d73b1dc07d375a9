/**
 * Retune scheduling: at most one request per settle window during a
 * continuous gesture (leading call immediately, trailing call after the
 * window), plus a generation counter so responses for superseded weight
 * states are discarded.
 */

export interface Clock {
  now(): number;
  setTimeout(fn: () => void, ms: number): unknown;
  clearTimeout(handle: unknown): void;
}

export const realClock: Clock = {
  now: () => Date.now(),
  setTimeout: (fn, ms) => setTimeout(fn, ms),
  clearTimeout: (handle) => clearTimeout(handle as Parameters<typeof clearTimeout>[0]),
};

export class RetuneScheduler {
  private generation = 0;
  private lastIssued = -Infinity;
  private pending: (() => void) | null = null;
  private timer: unknown = null;

  constructor(
    private readonly intervalMs: number = 300,
    private readonly clock: Clock = realClock
  ) {}

  /**
   * Register the newest weight state. `issue` receives the generation number
   * and fires either immediately (idle) or at the end of the current window.
   */
  schedule(issue: (generation: number) => void): void {
    const generation = ++this.generation;
    const elapsed = this.clock.now() - this.lastIssued;
    if (elapsed >= this.intervalMs) {
      this.lastIssued = this.clock.now();
      issue(generation);
      return;
    }
    this.pending = () => {
      this.lastIssued = this.clock.now();
      // re-read the generation: only the newest state may go out
      issue(this.generation);
    };
    if (this.timer === null) {
      const wait = this.intervalMs - elapsed;
      this.timer = this.clock.setTimeout(() => {
        this.timer = null;
        const run = this.pending;
        this.pending = null;
        if (run) run();
      }, wait);
    }
  }

  /** True when a response for `generation` is still the newest request. */
  isCurrent(generation: number): boolean {
    return generation === this.generation;
  }

  cancel(): void {
    if (this.timer !== null) {
      this.clock.clearTimeout(this.timer);
      this.timer = null;
    }
    this.pending = null;
  }
}
