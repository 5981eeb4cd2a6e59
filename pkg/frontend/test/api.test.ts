import { expect, test } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import type { FetchLike } from "../src/api.js";

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

test("getPlan passes a null body through", async () => {
  const client = new ApiClient("http://svc", async () => jsonResponse(null));
  expect(await client.getPlan("s1")).toBeNull();
});

test("request paths and bodies are what the service expects", async () => {
  const calls: Array<{ url: string; init?: RequestInit }> = [];
  const fetchFn: FetchLike = async (url, init) => {
    calls.push({ url, init });
    return jsonResponse({ plans: [], resolutions: [], explanation: "", rule_citations: [], unresolved_fields: [] });
  };
  const client = new ApiClient("http://svc", fetchFn);
  await client.sendMessage("sid with space", "hello");
  await client.sendFeedback("s2", "colder");

  expect(calls[0].url).toBe("http://svc/api/sessions/sid%20with%20space/messages");
  expect(calls[0].init?.method).toBe("POST");
  expect(JSON.parse(String(calls[0].init?.body))).toEqual({ text: "hello" });
  expect(calls[1].url).toBe("http://svc/api/sessions/s2/feedback");
});

test("FastAPI error details become the ApiError message", async () => {
  const client = new ApiClient("http://svc", async () =>
    jsonResponse({ detail: "unknown session 'nope'" }, 404),
  );
  const err = await client.getPlan("nope").catch((e: unknown) => e);
  expect(err).toBeInstanceOf(ApiError);
  expect((err as ApiError).status).toBe(404);
  expect((err as ApiError).message).toBe("unknown session 'nope'");
});

test("non-JSON error bodies fall back to the raw text", async () => {
  const client = new ApiClient(
    "http://svc",
    async () => new Response("bad gateway", { status: 502 }),
  );
  const err = await client.listScenarios().catch((e: unknown) => e);
  expect(err).toBeInstanceOf(ApiError);
  expect((err as ApiError).status).toBe(502);
  expect((err as ApiError).message).toBe("bad gateway");
});

test("a network failure maps to status zero", async () => {
  const client = new ApiClient("http://svc", async () => {
    throw new TypeError("fetch failed");
  });
  const err = await client.listScenarios().catch((e: unknown) => e);
  expect(err).toBeInstanceOf(ApiError);
  expect((err as ApiError).status).toBe(0);
  expect((err as ApiError).message).toContain("service unreachable");
});
