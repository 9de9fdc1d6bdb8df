/**
 * Latest-wins single-flight scheduler.
 *
 * At most one task runs at a time; scheduling while one is in flight
 * replaces any queued task instead of stacking up.  Used to coalesce
 * rapid landmark drags into at most one outstanding fit request.
 */
export class SingleFlight<T> {
  private running = false;
  private queued: (() => Promise<T>) | null = null;

  constructor(
    private readonly onResult: (result: T) => void,
    private readonly onError: (error: unknown) => void = () => undefined,
  ) {}

  get inFlight(): boolean {
    return this.running;
  }

  schedule(task: () => Promise<T>): void {
    if (this.running) {
      this.queued = task;
      return;
    }
    void this.run(task);
  }

  /** Resolves once the pipeline has drained (tests use this). */
  async idle(): Promise<void> {
    while (this.running || this.queued) {
      await new Promise((resolve) => setTimeout(resolve, 0));
    }
  }

  private async run(task: () => Promise<T>): Promise<void> {
    this.running = true;
    try {
      const result = await task();
      this.onResult(result);
    } catch (error) {
      this.onError(error);
    } finally {
      this.running = false;
      if (this.queued) {
        const nextTask = this.queued;
        this.queued = null;
        void this.run(nextTask);
      }
    }
  }
}
