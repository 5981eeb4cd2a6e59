/** Top-level controller: chat panel, plan grid, rule sheet, error banner.
 *
 * The controller holds no plan state of its own: the grid always renders
 * the last reply the service returned, so reopening the same session and
 * refetching /plan reproduces the page exactly.
 */

import { ApiClient, ApiError } from "./api.js";
import { gridSignature, renderGrid } from "./grid.js";
import { renderRuleSheet } from "./sheet.js";
import type { PlannerReply, RuleSheetPayload, ScenarioInfo } from "./types.js";

export const EXPLAIN_QUERY = "Please summarize the rules you referred to.";

export interface ChatEntry {
  role: "you" | "feedback" | "planner" | "note";
  text: string;
}

interface AppError {
  message: string;
  retry: () => Promise<void>;
}

interface AppState {
  scenarios: ScenarioInfo[];
  scenario: string | null;
  sessionId: string | null;
  reply: PlannerReply | null;
  sheet: RuleSheetPayload;
  log: ChatEntry[];
  busy: boolean;
  error: AppError | null;
}

/** "#workplace/abc123" -> scenario and session id, null if malformed. */
export function parseHint(
  hint: string | null | undefined,
): { scenario: string; sessionId: string } | null {
  if (!hint) {
    return null;
  }
  const parts = hint.replace(/^#/, "").split("/");
  if (parts.length !== 2 || !parts[0] || !parts[1]) {
    return null;
  }
  return { scenario: parts[0], sessionId: parts[1] };
}

function describeError(err: unknown): string {
  if (err instanceof ApiError) {
    return err.status > 0 ? `HTTP ${err.status}: ${err.message}` : err.message;
  }
  return err instanceof Error ? err.message : String(err);
}

export class App {
  readonly state: AppState = {
    scenarios: [],
    scenario: null,
    sessionId: null,
    reply: null,
    sheet: {},
    log: [],
    busy: false,
    error: null,
  };

  /** Latest user-triggered operation; tests await it after clicks. */
  lastOp: Promise<void> = Promise.resolve();

  private refs!: {
    select: HTMLSelectElement;
    newSession: HTMLButtonElement;
    sessionLabel: HTMLElement;
    busyFlag: HTMLElement;
    errorSlot: HTMLElement;
    log: HTMLElement;
    input: HTMLInputElement;
    send: HTMLButtonElement;
    feedback: HTMLButtonElement;
    explain: HTMLButtonElement;
    grid: HTMLElement;
    sheet: HTMLElement;
  };

  constructor(
    readonly root: HTMLElement,
    readonly api: ApiClient,
  ) {
    this.buildSkeleton();
    this.render();
  }

  get sessionId(): string | null {
    return this.state.sessionId;
  }

  /** Fetch scenarios; resume a session when a "#scenario/id" hint is given. */
  async start(hint?: string | null): Promise<void> {
    await this.run(async () => {
      this.state.scenarios = await this.api.listScenarios();
    });
    const parsed = parseHint(hint);
    if (parsed) {
      await this.resume(parsed.scenario, parsed.sessionId);
    }
  }

  newSession(scenario: string): Promise<void> {
    return this.run(async () => {
      const info = await this.api.createSession(scenario);
      this.state.scenario = scenario;
      this.state.sessionId = info.session_id;
      this.state.reply = null;
      this.state.sheet = {};
      this.state.log = [
        { role: "note", text: `Started session ${info.session_id} on ${scenario}.` },
      ];
      this.writeHash();
    });
  }

  /** Rebuild the page for an existing session purely from the API. */
  resume(scenario: string, sessionId: string): Promise<void> {
    return this.run(async () => {
      this.state.scenario = scenario;
      this.state.sessionId = sessionId;
      this.state.reply = await this.api.getPlan(sessionId);
      this.state.sheet = await this.api.getRuleSheet(sessionId);
      this.state.log = [
        { role: "note", text: `Resumed session ${sessionId}; showing its last plan.` },
      ];
      this.writeHash();
    });
  }

  sendMessage(text: string): Promise<void> {
    return this.submit("you", text, (sid, t) => this.api.sendMessage(sid, t));
  }

  sendFeedback(text: string): Promise<void> {
    return this.submit("feedback", text, (sid, t) => this.api.sendFeedback(sid, t));
  }

  /** The rule-summary follow-up behind the Explain button. */
  explain(): Promise<void> {
    return this.sendMessage(EXPLAIN_QUERY);
  }

  private submit(
    role: "you" | "feedback",
    text: string,
    call: (sessionId: string, text: string) => Promise<PlannerReply>,
  ): Promise<void> {
    const trimmed = text.trim();
    const sessionId = this.state.sessionId;
    if (!trimmed || sessionId === null) {
      return this.lastOp;
    }
    this.state.log.push({ role, text: trimmed });
    return this.run(async () => {
      const reply = await call(sessionId, trimmed);
      this.state.reply = reply;
      this.state.log.push({
        role: "planner",
        text: reply.explanation || "(no explanation given)",
      });
      this.state.sheet = await this.api.getRuleSheet(sessionId);
    });
  }

  /** Serialize ops, surface failures in the banner with a retry hook. */
  private run(op: () => Promise<void>): Promise<void> {
    this.lastOp = this.guard(op);
    return this.lastOp;
  }

  private async guard(op: () => Promise<void>): Promise<void> {
    this.state.busy = true;
    this.state.error = null;
    this.render();
    try {
      await op();
    } catch (err) {
      this.state.error = { message: describeError(err), retry: () => this.run(op) };
    } finally {
      this.state.busy = false;
      this.render();
    }
  }

  private writeHash(): void {
    const loc = this.root.ownerDocument.defaultView?.location;
    if (loc && this.state.scenario && this.state.sessionId) {
      loc.hash = `${this.state.scenario}/${this.state.sessionId}`;
    }
  }

  /** Canonical string of the rendered grid, for change detection. */
  gridSignature(): string {
    return gridSignature(this.refs.grid);
  }

  private buildSkeleton(): void {
    const doc = this.root.ownerDocument;
    this.root.textContent = "";
    this.root.classList.add("app");

    const header = doc.createElement("header");
    const title = doc.createElement("h1");
    title.textContent = "concord";
    header.appendChild(title);

    const select = doc.createElement("select");
    select.dataset.role = "scenario-select";
    header.appendChild(select);

    const newSession = doc.createElement("button");
    newSession.dataset.role = "new-session";
    newSession.textContent = "New session";
    newSession.addEventListener("click", () => {
      if (select.value) {
        void this.newSession(select.value);
      }
    });
    header.appendChild(newSession);

    const sessionLabel = doc.createElement("span");
    sessionLabel.className = "session-label";
    sessionLabel.dataset.role = "session-label";
    header.appendChild(sessionLabel);

    const busyFlag = doc.createElement("span");
    busyFlag.className = "busy-flag";
    busyFlag.dataset.role = "busy";
    busyFlag.textContent = "working...";
    busyFlag.hidden = true;
    header.appendChild(busyFlag);
    this.root.appendChild(header);

    const errorSlot = doc.createElement("div");
    errorSlot.dataset.role = "error-slot";
    this.root.appendChild(errorSlot);

    const layout = doc.createElement("main");
    layout.className = "layout";

    const chat = doc.createElement("section");
    chat.className = "chat-panel";
    const chatTitle = doc.createElement("h2");
    chatTitle.textContent = "Conversation";
    chat.appendChild(chatTitle);
    const log = doc.createElement("ul");
    log.className = "chat-log";
    log.dataset.role = "chat-log";
    chat.appendChild(log);
    const input = doc.createElement("input");
    input.type = "text";
    input.dataset.role = "chat-input";
    input.placeholder = "Ask for a plan, or give feedback";
    chat.appendChild(input);
    const buttons = doc.createElement("div");
    buttons.className = "chat-buttons";
    const send = doc.createElement("button");
    send.dataset.role = "send";
    send.textContent = "Send";
    send.addEventListener("click", () => {
      const text = input.value;
      input.value = "";
      void this.sendMessage(text);
    });
    buttons.appendChild(send);
    const feedback = doc.createElement("button");
    feedback.dataset.role = "send-feedback";
    feedback.textContent = "Send as feedback";
    feedback.addEventListener("click", () => {
      const text = input.value;
      input.value = "";
      void this.sendFeedback(text);
    });
    buttons.appendChild(feedback);
    const explain = doc.createElement("button");
    explain.dataset.role = "explain";
    explain.textContent = "Explain rules";
    explain.addEventListener("click", () => {
      void this.explain();
    });
    buttons.appendChild(explain);
    chat.appendChild(buttons);
    layout.appendChild(chat);

    const plan = doc.createElement("section");
    plan.className = "plan-panel";
    const planTitle = doc.createElement("h2");
    planTitle.textContent = "Weekly plan";
    plan.appendChild(planTitle);
    const grid = doc.createElement("div");
    grid.dataset.role = "plan-grid";
    plan.appendChild(grid);
    layout.appendChild(plan);

    const sheetPanel = doc.createElement("aside");
    sheetPanel.className = "sheet-panel";
    const sheetTitle = doc.createElement("h2");
    sheetTitle.textContent = "Rule sheet";
    sheetPanel.appendChild(sheetTitle);
    const sheet = doc.createElement("div");
    sheet.dataset.role = "rule-sheet";
    sheetPanel.appendChild(sheet);
    layout.appendChild(sheetPanel);

    this.root.appendChild(layout);
    this.refs = {
      select,
      newSession,
      sessionLabel,
      busyFlag,
      errorSlot,
      log,
      input,
      send,
      feedback,
      explain,
      grid,
      sheet,
    };
  }

  render(): void {
    const doc = this.root.ownerDocument;
    const { refs, state } = this;

    if (refs.select.options.length !== state.scenarios.length) {
      refs.select.textContent = "";
      for (const scenario of state.scenarios) {
        const option = doc.createElement("option");
        option.value = scenario.name;
        option.textContent = `${scenario.title} (${scenario.users.join(", ")})`;
        refs.select.appendChild(option);
      }
    }

    refs.sessionLabel.textContent = state.sessionId
      ? `${state.scenario ?? "?"} / ${state.sessionId}`
      : "no session";
    refs.busyFlag.hidden = !state.busy;

    refs.errorSlot.textContent = "";
    if (state.error) {
      const banner = doc.createElement("div");
      banner.className = "error-banner";
      const message = doc.createElement("span");
      message.textContent = state.error.message;
      banner.appendChild(message);
      const retry = doc.createElement("button");
      retry.dataset.role = "retry";
      retry.textContent = "Retry";
      const handler = state.error.retry;
      retry.addEventListener("click", () => {
        void handler();
      });
      banner.appendChild(retry);
      refs.errorSlot.appendChild(banner);
    }

    refs.log.textContent = "";
    for (const entry of state.log) {
      const li = doc.createElement("li");
      li.className = `chat-entry chat-${entry.role}`;
      const who = doc.createElement("span");
      who.className = "chat-role";
      who.textContent = entry.role;
      li.appendChild(who);
      const text = doc.createElement("span");
      text.className = "chat-text";
      text.textContent = entry.text;
      li.appendChild(text);
      refs.log.appendChild(li);
    }

    const disabled = state.busy || state.sessionId === null;
    refs.send.disabled = disabled;
    refs.input.disabled = disabled;
    refs.feedback.disabled = disabled || state.reply === null;
    refs.explain.disabled = disabled || state.reply === null;
    refs.newSession.disabled = state.busy;

    renderGrid(refs.grid, state.reply);
    renderRuleSheet(refs.sheet, state.sheet);
  }
}
