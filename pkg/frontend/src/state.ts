import type { Answer } from "./api.js";

// One query console session. Exactly one state at a time; a submission
// during Loading is refused (the submit control should be disabled).

export type QueryState =
  | { kind: "idle" }
  | { kind: "loading"; query: string }
  | { kind: "answered"; query: string; answer: Answer }
  | { kind: "failed"; query: string; code: string; message: string };

export interface QueryApi {
  query(q: string): Promise<Answer>;
}

export class QueryConsole {
  private state: QueryState = { kind: "idle" };
  private readonly past: string[] = [];

  constructor(private readonly api: QueryApi) {}

  get view(): QueryState {
    return this.state;
  }

  // Session history, oldest first, without consecutive duplicates.
  get history(): readonly string[] {
    return this.past;
  }

  canSubmit(text: string): boolean {
    return this.state.kind !== "loading" && text.trim().length > 0;
  }

  async submit(text: string): Promise<QueryState> {
    const query = text.trim();
    if (!this.canSubmit(query)) {
      return this.state;
    }
    this.state = { kind: "loading", query };
    try {
      const answer = await this.api.query(query);
      this.state = { kind: "answered", query, answer };
    } catch (err) {
      if (err instanceof Error && "code" in err) {
        const code = String((err as { code: unknown }).code);
        this.state = { kind: "failed", query, code, message: err.message };
      } else {
        const message = err instanceof Error ? err.message : String(err);
        this.state = { kind: "failed", query, code: "unknown", message };
      }
    }
    if (this.past[this.past.length - 1] !== query) {
      this.past.push(query);
    }
    return this.state;
  }
}
