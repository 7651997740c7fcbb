import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiError, Client } from "../src/api.js";

const ANSWER = {
  query: "fertilizer required for mango",
  mode: "forward",
  class: "Fertilizer",
  instance: "mango",
  results: [{ property: "fertilizerreqd", values: ["K123"] }],
  trace: {
    domain_chain_used: ["Fruits", "Crops"],
    range_chain_used: ["Fertilizer"],
    matched_domain: "Crops",
    matched_range: "Fertilizer",
    levels_walked: 1,
  },
};

function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("Client.query", () => {
  it("posts the query and returns the parsed answer", async () => {
    const fetchMock = vi.fn().mockResolvedValue(jsonResponse(200, ANSWER));
    vi.stubGlobal("fetch", fetchMock);

    const answer = await new Client("http://kb").query(
      "fertilizer required for mango"
    );

    expect(answer).toEqual(ANSWER);
    expect(fetchMock).toHaveBeenCalledOnce();
    const [url, init] = fetchMock.mock.calls[0];
    expect(url).toBe("http://kb/api/query");
    expect(init.method).toBe("POST");
    expect(JSON.parse(init.body)).toEqual({
      q: "fertilizer required for mango",
    });
  });

  it("turns an error envelope into a typed ApiError", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn().mockResolvedValue(
        jsonResponse(422, {
          error: { code: "no_relation", message: "no relation: nothing" },
        })
      )
    );

    const failure = await new Client().query("x y").catch((e) => e);
    expect(failure).toBeInstanceOf(ApiError);
    expect(failure.code).toBe("no_relation");
    expect(failure.message).toContain("no relation");
  });

  it("maps a non-JSON failure body to http_error", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn().mockResolvedValue(new Response("boom", { status: 500 }))
    );

    const failure = await new Client().query("x").catch((e) => e);
    expect(failure).toBeInstanceOf(ApiError);
    expect(failure.code).toBe("http_error");
    expect(failure.message).toContain("500");
  });

  it("maps a rejected fetch to a network ApiError", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn().mockRejectedValue(new TypeError("connect ECONNREFUSED"))
    );

    const failure = await new Client().query("x").catch((e) => e);
    expect(failure).toBeInstanceOf(ApiError);
    expect(failure.code).toBe("network");
    expect(failure.message).toContain("ECONNREFUSED");
  });
});

describe("Client.ontology", () => {
  it("fetches the summary", async () => {
    const summary = {
      roots: [],
      properties: [],
      counts: { classes: 0, properties: 0, instances: 0, documents: 0 },
    };
    const fetchMock = vi.fn().mockResolvedValue(jsonResponse(200, summary));
    vi.stubGlobal("fetch", fetchMock);

    expect(await new Client().ontology()).toEqual(summary);
    expect(fetchMock.mock.calls[0][0]).toBe("/api/ontology");
  });
});
