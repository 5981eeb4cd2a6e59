/** Thin typed client for the planning service HTTP API. */

import type {
  PlannerReply,
  RuleSheetPayload,
  ScenarioInfo,
  SessionInfo,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
    this.name = "ApiError";
  }
}

/** fetch with the same call signature, injectable for tests. */
export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

const defaultFetch: FetchLike = (input, init) => fetch(input, init);

export class ApiClient {
  constructor(
    readonly base: string = "",
    private readonly fetchFn: FetchLike = defaultFetch,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    let res: Response;
    try {
      res = await this.fetchFn(this.base + path, {
        method,
        headers: body === undefined ? undefined : { "content-type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (err) {
      throw new ApiError(0, `service unreachable: ${String(err)}`);
    }
    const text = await res.text();
    if (!res.ok) {
      throw new ApiError(res.status, detailOf(text));
    }
    return JSON.parse(text) as T;
  }

  listScenarios(): Promise<ScenarioInfo[]> {
    return this.request("GET", "/api/scenarios");
  }

  createSession(scenario: string): Promise<SessionInfo> {
    return this.request("POST", `/api/scenarios/${encodeURIComponent(scenario)}/sessions`);
  }

  sendMessage(sessionId: string, text: string): Promise<PlannerReply> {
    return this.request("POST", `/api/sessions/${encodeURIComponent(sessionId)}/messages`, {
      text,
    });
  }

  sendFeedback(sessionId: string, text: string): Promise<PlannerReply> {
    return this.request("POST", `/api/sessions/${encodeURIComponent(sessionId)}/feedback`, {
      text,
    });
  }

  /** null until the session's first planning turn. */
  getPlan(sessionId: string): Promise<PlannerReply | null> {
    return this.request("GET", `/api/sessions/${encodeURIComponent(sessionId)}/plan`);
  }

  getRuleSheet(sessionId: string): Promise<RuleSheetPayload> {
    return this.request("GET", `/api/sessions/${encodeURIComponent(sessionId)}/rulesheet`);
  }
}

/** Pull the FastAPI {"detail": ...} message out of an error body if present. */
function detailOf(text: string): string {
  try {
    const parsed = JSON.parse(text) as { detail?: unknown };
    if (parsed && typeof parsed === "object" && parsed.detail !== undefined) {
      return typeof parsed.detail === "string" ? parsed.detail : JSON.stringify(parsed.detail);
    }
  } catch {
    // not JSON; fall through to the raw body
  }
  return text || "request failed";
}
