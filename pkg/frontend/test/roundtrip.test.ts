/** Round trips against the real service started by the global setup. */

import { expect, test } from "vitest";

import { ApiClient } from "../src/api.js";
import { App } from "../src/app.js";

const base = process.env.CONCORD_UI_API;
if (!base) {
  throw new Error("CONCORD_UI_API is unset; the global setup did not run");
}

const WEEK = ["mon", "tue", "wed", "thu", "fri"];

function mount(): HTMLElement {
  const el = document.createElement("div");
  document.body.appendChild(el);
  return el;
}

async function freshApp(hint?: string): Promise<App> {
  const app = new App(mount(), new ApiClient(base!));
  await app.start(hint ?? null);
  expect(app.state.error).toBeNull();
  return app;
}

function gridHtml(app: App): string {
  return app.root.querySelector('[data-role="plan-grid"]')!.innerHTML;
}

test("message, badges, feedback, and reload reproduce the API state", async () => {
  const app = await freshApp();
  expect(app.state.scenarios.map((s) => s.name)).toContain("workplace");

  await app.newSession("workplace");
  const sid = app.sessionId;
  expect(sid).toBeTruthy();

  // before the first message: empty grid, empty sheet
  expect(app.root.querySelectorAll("[data-action]")).toHaveLength(0);
  expect(app.root.querySelector(".grid-empty")).not.toBeNull();
  expect(app.root.querySelector(".sheet-empty")).not.toBeNull();

  await app.sendMessage("Please plan the week for everyone.");
  expect(app.state.error).toBeNull();

  const api = new ApiClient(base!);
  const payload = await api.getPlan(sid!);
  expect(payload).not.toBeNull();

  // every weekday column is populated with exactly the payload's actions
  for (const day of WEEK) {
    const rendered = app.root.querySelectorAll(`[data-action][data-day="${day}"]`);
    const actions = payload!.plans.find((p) => p.day === day)?.actions ?? [];
    expect(actions.length).toBeGreaterThan(0);
    expect(rendered).toHaveLength(actions.length);
  }

  // twelve conflict badges, one per resolution in the /plan payload
  const badges = [...app.root.querySelectorAll<HTMLElement>(".badge")];
  expect(badges).toHaveLength(12);
  expect(payload!.resolutions).toHaveLength(12);
  expect(badges.map((b) => b.dataset.conflictId).sort()).toEqual(
    payload!.resolutions.map((r) => r.conflict_id).sort(),
  );

  // the reflection step filled the rule sheet: 3 users x 3 fields
  expect(app.root.querySelectorAll(".sheet-field .chip-filled")).toHaveLength(9);

  const fullWeek = app.gridSignature();

  // feedback re-plans Friday only; the grid visibly re-renders
  await app.sendFeedback("Too dense. Please revise Friday.");
  expect(app.state.error).toBeNull();
  const revised = app.gridSignature();
  expect(revised).not.toBe(fullWeek);
  expect(app.root.querySelectorAll('[data-action]:not([data-day="fri"])')).toHaveLength(0);
  expect(
    app.root.querySelectorAll('[data-action][data-day="fri"]').length,
  ).toBeGreaterThan(0);
  const revisedPayload = await api.getPlan(sid!);
  expect(app.root.querySelectorAll(".badge")).toHaveLength(
    revisedPayload!.resolutions.length,
  );

  // reload: a fresh page resuming the session rebuilds the identical grid
  const reloaded = await freshApp(`#workplace/${sid}`);
  expect(reloaded.sessionId).toBe(sid);
  expect(reloaded.gridSignature()).toBe(revised);
  expect(gridHtml(reloaded)).toBe(gridHtml(app));
});

test("friday noon holds a resolved resource contention with the room move", async () => {
  const app = await freshApp();
  await app.newSession("workplace");
  await app.sendMessage("What is the plan for Friday?");

  const badge = app.root.querySelector<HTMLElement>(
    '.badge[data-kind="resource_contention"][data-conflict-id$="-720"]',
  );
  expect(badge).not.toBeNull();
  expect(badge!.closest("[data-action]")?.getAttribute("data-day")).toBe("fri");
  const text = badge!.textContent ?? "";
  expect(text).toContain("winner tess");
  expect(text).toContain("apple_room");
});

test("explain lists the cited rules without changing the plan", async () => {
  const app = await freshApp();
  await app.newSession("assistive_care");
  await app.sendMessage("Provide the plan for Monday.");
  const before = app.gridSignature();

  await app.explain();
  expect(app.state.error).toBeNull();
  expect(app.gridSignature()).toBe(before);

  const entries = [...app.root.querySelectorAll(".chat-planner .chat-text")];
  const last = entries[entries.length - 1]?.textContent ?? "";
  expect(last).toContain("Rules referred to:");
  const payload = await new ApiClient(base!).getPlan(app.sessionId!);
  expect(payload!.rule_citations.length).toBeGreaterThan(0);
  expect(last).toContain(payload!.rule_citations[0]);
});

test("server rejections surface in the banner and clear on success", async () => {
  const app = await freshApp();
  await app.newSession("smarthome");

  // feedback before any plan exists is a client error the UI must show
  await app.sendFeedback("warmer evenings please");
  expect(app.state.error).not.toBeNull();
  const banner = app.root.querySelector('[data-role="error-slot"] .error-banner');
  expect(banner?.textContent).toContain("HTTP 422");

  // retrying the same doomed call keeps the banner up
  app.root.querySelector<HTMLButtonElement>('[data-role="retry"]')!.click();
  await app.lastOp;
  expect(app.state.error).not.toBeNull();

  // a real first message succeeds and clears it
  await app.sendMessage("Set up the week.");
  expect(app.state.error).toBeNull();
  expect(app.root.querySelector(".error-banner")).toBeNull();
  expect(app.root.querySelectorAll(".badge")).toHaveLength(12);
});

test("buttons drive the same flows as the methods", async () => {
  const app = await freshApp();
  const select = app.root.querySelector<HTMLSelectElement>('[data-role="scenario-select"]')!;
  expect(select.options.length).toBeGreaterThanOrEqual(3);
  select.value = "workplace";

  app.root.querySelector<HTMLButtonElement>('[data-role="new-session"]')!.click();
  await app.lastOp;
  expect(app.sessionId).toBeTruthy();

  const input = app.root.querySelector<HTMLInputElement>('[data-role="chat-input"]')!;
  input.value = "Plan Monday for everyone.";
  app.root.querySelector<HTMLButtonElement>('[data-role="send"]')!.click();
  await app.lastOp;

  expect(input.value).toBe("");
  expect(app.root.querySelectorAll('[data-action][data-day="mon"]').length).toBeGreaterThan(0);
  expect(app.root.querySelectorAll('[data-action]:not([data-day="mon"])')).toHaveLength(0);
});
