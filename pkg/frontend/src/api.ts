// Typed client for the ontosearch JSON API. Every shape here mirrors a
// response body field-for-field; nothing is computed client-side.

export interface ResultGroup {
  property: string;
  values: string[];
}

export interface ExplanationTrace {
  domain_chain_used: string[];
  range_chain_used: string[];
  matched_domain: string;
  matched_range: string;
  levels_walked: number;
}

export interface Answer {
  query: string;
  mode: "forward" | "inverse";
  class: string;
  instance: string;
  results: ResultGroup[];
  trace: ExplanationTrace;
}

export interface PropertySummary {
  name: string;
  domains: string[];
  ranges: string[];
}

export interface ClassNode {
  name: string;
  instances: string[];
  children: ClassNode[];
}

export interface OntologySummary {
  roots: ClassNode[];
  properties: PropertySummary[];
  counts: {
    classes: number;
    properties: number;
    instances: number;
    documents: number;
  };
}

export class ApiError extends Error {
  readonly code: string;

  constructor(code: string, message: string) {
    super(message);
    this.name = "ApiError";
    this.code = code;
  }
}

interface ErrorEnvelope {
  error?: { code?: string; message?: string };
}

async function toApiError(response: Response): Promise<ApiError> {
  let body: ErrorEnvelope = {};
  try {
    body = (await response.json()) as ErrorEnvelope;
  } catch {
    // non-JSON body, fall through to the generic error
  }
  const code = body.error?.code ?? "http_error";
  const message = body.error?.message ?? `request failed (${response.status})`;
  return new ApiError(code, message);
}

export class Client {
  constructor(private readonly base: string = "") {}

  async query(q: string): Promise<Answer> {
    return this.request<Answer>("/api/query", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ q }),
    });
  }

  async ontology(): Promise<OntologySummary> {
    return this.request<OntologySummary>("/api/ontology", { method: "GET" });
  }

  private async request<T>(path: string, init: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await fetch(this.base + path, init);
    } catch (err) {
      const reason = err instanceof Error ? err.message : String(err);
      throw new ApiError("network", `cannot reach the service: ${reason}`);
    }
    if (!response.ok) {
      throw await toApiError(response);
    }
    return (await response.json()) as T;
  }
}
