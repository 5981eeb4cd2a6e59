import { expect, test } from "vitest";

import { ApiClient } from "../src/api.js";
import type { FetchLike } from "../src/api.js";
import { App } from "../src/app.js";
import type { PlannerReply } from "../src/types.js";

/** In-memory stand-in for the service, with a switchable outage. */
class FakeService {
  failNextMessage = false;

  reply: PlannerReply = {
    plans: [
      {
        day: "mon",
        actions: [
          {
            start: 540,
            end: 600,
            description: "Standup",
            users: ["Ana"],
            rule_ids: ["r1"],
            conflict_ids: ["rc-mon-ana-bo-room-540"],
          },
        ],
      },
    ],
    resolutions: [
      {
        conflict_id: "rc-mon-ana-bo-room-540",
        policy_applied: "activity_priority",
        outcome: "winner",
        rationale: "priority",
        winner: "Ana",
      },
    ],
    explanation: "Plan for Mon.",
    rule_citations: ["r1"],
    unresolved_fields: [],
  };

  private sent = false;

  fetch: FetchLike = async (url, init) => {
    const method = init?.method ?? "GET";
    const path = url.replace(/^http:\/\/fake/, "");
    if (method === "GET" && path === "/api/scenarios") {
      return ok([{ name: "demo", title: "Demo", users: ["Ana", "Bo"] }]);
    }
    if (method === "POST" && path === "/api/scenarios/demo/sessions") {
      return ok({ session_id: "s1", scenario: "demo" }, 201);
    }
    if (method === "POST" && path === "/api/sessions/s1/messages") {
      if (this.failNextMessage) {
        this.failNextMessage = false;
        throw new TypeError("fetch failed");
      }
      this.sent = true;
      return ok(this.reply);
    }
    if (method === "GET" && path === "/api/sessions/s1/rulesheet") {
      return ok({});
    }
    if (method === "GET" && path === "/api/sessions/s1/plan") {
      return ok(this.sent ? this.reply : null);
    }
    return ok({ detail: `no route for ${method} ${path}` }, 404);
  };
}

function ok(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

function mountApp(service: FakeService): App {
  const el = document.createElement("div");
  document.body.appendChild(el);
  return new App(el, new ApiClient("http://fake", service.fetch));
}

test("a failed turn shows the banner; retry repeats only the server call", async () => {
  const service = new FakeService();
  const app = mountApp(service);
  await app.start();
  await app.newSession("demo");

  service.failNextMessage = true;
  await app.sendMessage("Plan Monday.");

  const banner = app.root.querySelector('[data-role="error-slot"] .error-banner');
  expect(banner).not.toBeNull();
  expect(banner?.textContent).toContain("service unreachable");
  expect(app.root.querySelectorAll("[data-action]")).toHaveLength(0);

  app.root.querySelector<HTMLButtonElement>('[data-role="retry"]')!.click();
  await app.lastOp;

  expect(app.state.error).toBeNull();
  expect(app.root.querySelector(".error-banner")).toBeNull();
  expect(app.root.querySelectorAll("[data-action]")).toHaveLength(1);
  expect(app.root.querySelectorAll(".badge")).toHaveLength(1);

  const you = [...app.root.querySelectorAll(".chat-you .chat-text")];
  expect(you.map((e) => e.textContent)).toEqual(["Plan Monday."]);
  const planner = [...app.root.querySelectorAll(".chat-planner .chat-text")];
  expect(planner.map((e) => e.textContent)).toEqual(["Plan for Mon."]);
});

test("buttons stay disabled until they can do something", async () => {
  const service = new FakeService();
  const app = mountApp(service);
  await app.start();

  const send = app.root.querySelector<HTMLButtonElement>('[data-role="send"]')!;
  const feedback = app.root.querySelector<HTMLButtonElement>('[data-role="send-feedback"]')!;
  const explain = app.root.querySelector<HTMLButtonElement>('[data-role="explain"]')!;
  expect(send.disabled).toBe(true);

  await app.newSession("demo");
  expect(send.disabled).toBe(false);
  expect(feedback.disabled).toBe(true);
  expect(explain.disabled).toBe(true);

  await app.sendMessage("Plan Monday.");
  expect(feedback.disabled).toBe(false);
  expect(explain.disabled).toBe(false);
});

test("empty input is a no-op, not a request", async () => {
  const service = new FakeService();
  const app = mountApp(service);
  await app.start();
  await app.newSession("demo");

  await app.sendMessage("   ");
  expect(app.state.error).toBeNull();
  expect(app.root.querySelectorAll(".chat-you")).toHaveLength(0);
  expect(app.root.querySelector(".grid-empty")).not.toBeNull();
});
