/** Weekly plan grid: day columns, time rows, conflict badges.
 *
 * The grid renders exactly the last planner reply. Badges are one to one
 * with the reply's resolutions: each badge anchors to the first action
 * that cites its conflict id, or to a fallback strip when no rendered
 * action cites it, so the count always matches the payload.
 */

import type {
  PlanActionPayload,
  PlannerReply,
  ResolutionPayload,
} from "./types.js";

export const WEEK_DAYS = ["mon", "tue", "wed", "thu", "fri"] as const;

export const DAY_LABELS: Record<string, string> = {
  mon: "Monday",
  tue: "Tuesday",
  wed: "Wednesday",
  thu: "Thursday",
  fri: "Friday",
  sat: "Saturday",
  sun: "Sunday",
};

export type ConflictKind =
  | "resource_contention"
  | "schedule_overlap"
  | "constraint_contradiction"
  | "other";

/** Conflict ids are minted as "<kind prefix>-<day>-...": rc, so, or cc. */
const KIND_BY_PREFIX: Record<string, ConflictKind> = {
  rc: "resource_contention",
  so: "schedule_overlap",
  cc: "constraint_contradiction",
};

export function conflictKind(conflictId: string): ConflictKind {
  const prefix = conflictId.split("-")[0] ?? "";
  return KIND_BY_PREFIX[prefix] ?? "other";
}

export function minutesLabel(minutes: number): string {
  const h = Math.floor(minutes / 60);
  const m = minutes % 60;
  return `${h}:${String(m).padStart(2, "0")}`;
}

/** Greedy interval coloring: overlapping actions get distinct lanes. */
export function assignLanes(actions: readonly PlanActionPayload[]): number[] {
  const laneEnds: number[] = [];
  const order = actions
    .map((_, i) => i)
    .sort((i, j) => actions[i].start - actions[j].start || actions[i].end - actions[j].end);
  const lanes = new Array<number>(actions.length).fill(0);
  for (const i of order) {
    let lane = laneEnds.findIndex((end) => end <= actions[i].start);
    if (lane < 0) {
      lane = laneEnds.length;
      laneEnds.push(0);
    }
    laneEnds[lane] = actions[i].end;
    lanes[i] = lane;
  }
  return lanes;
}

export interface BadgeAnchor {
  resolution: ResolutionPayload;
  kind: ConflictKind;
  /** Weekday of the anchoring action, or null when nothing cites it. */
  day: string | null;
  actionIndex: number | null;
}

/** One anchor per resolution, in payload order. */
export function placeBadges(reply: PlannerReply): BadgeAnchor[] {
  return reply.resolutions.map((resolution) => {
    for (const plan of reply.plans) {
      const idx = plan.actions.findIndex((a) =>
        (a.conflict_ids ?? []).includes(resolution.conflict_id),
      );
      if (idx >= 0) {
        return {
          resolution,
          kind: conflictKind(resolution.conflict_id),
          day: plan.day,
          actionIndex: idx,
        };
      }
    }
    return {
      resolution,
      kind: conflictKind(resolution.conflict_id),
      day: null,
      actionIndex: null,
    };
  });
}

export interface GridCell {
  action: PlanActionPayload;
  lane: number;
  badges: BadgeAnchor[];
}

export interface GridColumn {
  day: string;
  label: string;
  laneCount: number;
  cells: GridCell[];
}

export interface GridModel {
  /** Minutes covered by the time axis, snapped to whole hours. */
  startMinute: number;
  endMinute: number;
  columns: GridColumn[];
  unanchored: BadgeAnchor[];
}

const DEFAULT_START = 8 * 60;
const DEFAULT_END = 18 * 60;

export function buildGridModel(reply: PlannerReply): GridModel {
  const badges = placeBadges(reply);
  const days: string[] = [...WEEK_DAYS];
  for (const plan of reply.plans) {
    if (!days.includes(plan.day)) {
      days.push(plan.day);
    }
  }
  const planByDay = new Map(reply.plans.map((p) => [p.day, p]));
  let lo = Number.POSITIVE_INFINITY;
  let hi = Number.NEGATIVE_INFINITY;
  const columns: GridColumn[] = days.map((day) => {
    const actions = planByDay.get(day)?.actions ?? [];
    const lanes = assignLanes(actions);
    const cells = actions.map((action, i) => {
      lo = Math.min(lo, action.start);
      hi = Math.max(hi, action.end);
      return {
        action,
        lane: lanes[i],
        badges: badges.filter((b) => b.day === day && b.actionIndex === i),
      };
    });
    return {
      day,
      label: DAY_LABELS[day] ?? day,
      laneCount: Math.max(1, ...lanes.map((l) => l + 1)),
      cells,
    };
  });
  if (!Number.isFinite(lo)) {
    lo = DEFAULT_START;
    hi = DEFAULT_END;
  }
  return {
    startMinute: Math.floor(lo / 60) * 60,
    endMinute: Math.max(Math.ceil(hi / 60) * 60, Math.floor(lo / 60) * 60 + 60),
    columns,
    unanchored: badges.filter((b) => b.day === null),
  };
}

/** Rows are 15-minute slices; row numbers are 1-based for CSS grid. */
function rowOf(minute: number, startMinute: number): number {
  return Math.round((minute - startMinute) / 15) + 1;
}

export function renderGrid(container: HTMLElement, reply: PlannerReply | null): void {
  const doc = container.ownerDocument;
  container.textContent = "";
  if (reply === null) {
    const empty = doc.createElement("p");
    empty.className = "grid-empty";
    empty.textContent = "No plan yet. Send a message to get one.";
    container.appendChild(empty);
    return;
  }
  const model = buildGridModel(reply);
  const rows = (model.endMinute - model.startMinute) / 15;
  const grid = doc.createElement("div");
  grid.className = "grid";
  grid.style.gridTemplateColumns = `3.2rem repeat(${model.columns.length}, minmax(0, 1fr))`;

  const hours = doc.createElement("div");
  hours.className = "col hours";
  appendColumnHead(hours, "");
  const hoursBody = appendColumnBody(hours, rows, 1);
  for (let minute = model.startMinute; minute < model.endMinute; minute += 60) {
    const label = doc.createElement("div");
    label.className = "hour-label";
    label.textContent = minutesLabel(minute);
    label.style.gridRow = `${rowOf(minute, model.startMinute)} / ${rowOf(minute + 60, model.startMinute)}`;
    hoursBody.appendChild(label);
  }
  grid.appendChild(hours);

  for (const column of model.columns) {
    const col = doc.createElement("div");
    col.className = "col day";
    col.dataset.day = column.day;
    appendColumnHead(col, column.label);
    const body = appendColumnBody(col, rows, column.laneCount);
    for (const cell of column.cells) {
      body.appendChild(renderAction(doc, cell, column.day, model.startMinute));
    }
    grid.appendChild(col);
  }
  container.appendChild(grid);

  if (model.unanchored.length > 0) {
    const strip = doc.createElement("div");
    strip.className = "unanchored";
    const title = doc.createElement("h3");
    title.textContent = "Conflicts outside the rendered plan";
    strip.appendChild(title);
    for (const anchor of model.unanchored) {
      strip.appendChild(renderBadge(doc, anchor, null));
    }
    container.appendChild(strip);
  }
}

function appendColumnHead(col: HTMLElement, text: string): void {
  const head = col.ownerDocument.createElement("div");
  head.className = "col-head";
  head.textContent = text;
  col.appendChild(head);
}

function appendColumnBody(col: HTMLElement, rows: number, laneCount: number): HTMLElement {
  const body = col.ownerDocument.createElement("div");
  body.className = "col-body";
  body.style.gridTemplateRows = `repeat(${rows}, 0.8rem)`;
  body.style.gridTemplateColumns = `repeat(${laneCount}, minmax(0, 1fr))`;
  col.appendChild(body);
  return body;
}

function renderAction(
  doc: Document,
  cell: GridCell,
  day: string,
  startMinute: number,
): HTMLElement {
  const { action } = cell;
  const el = doc.createElement("div");
  el.className = "action";
  el.dataset.action = "";
  el.dataset.day = day;
  el.dataset.start = String(action.start);
  el.dataset.end = String(action.end);
  el.style.gridColumn = String(cell.lane + 1);
  el.style.gridRow = `${rowOf(action.start, startMinute)} / ${rowOf(action.end, startMinute)}`;

  const time = doc.createElement("span");
  time.className = "action-time";
  time.textContent = `${minutesLabel(action.start)} to ${minutesLabel(action.end)}`;
  el.appendChild(time);

  const desc = doc.createElement("span");
  desc.className = "action-desc";
  desc.textContent = action.description;
  el.appendChild(desc);

  const meta: string[] = [];
  if (action.users.length > 0) {
    meta.push(action.users.join(", "));
  }
  if (action.resource) {
    meta.push(action.resource);
  }
  if (action.value !== undefined) {
    meta.push(`set to ${action.value}`);
  }
  if (meta.length > 0) {
    const metaEl = doc.createElement("span");
    metaEl.className = "action-meta";
    metaEl.textContent = meta.join(" | ");
    el.appendChild(metaEl);
  }

  for (const anchor of cell.badges) {
    el.appendChild(renderBadge(doc, anchor, action));
  }
  return el;
}

const KIND_SHORT: Record<ConflictKind, string> = {
  resource_contention: "resource",
  schedule_overlap: "overlap",
  constraint_contradiction: "contradiction",
  other: "conflict",
};

function renderBadge(
  doc: Document,
  anchor: BadgeAnchor,
  action: PlanActionPayload | null,
): HTMLElement {
  const { resolution, kind } = anchor;
  const badge = doc.createElement("details");
  badge.className = `badge kind-${kind}`;
  badge.dataset.conflictId = resolution.conflict_id;
  badge.dataset.kind = kind;

  const summary = doc.createElement("summary");
  summary.textContent = KIND_SHORT[kind];
  badge.appendChild(summary);

  const body = doc.createElement("dl");
  const participants = new Set<string>(action?.users ?? []);
  if (resolution.winner) {
    participants.add(resolution.winner);
  }
  for (const user of Object.keys(resolution.reassignments ?? {})) {
    participants.add(user);
  }
  addDetail(body, "Conflict", resolution.conflict_id);
  addDetail(body, "Participants", [...participants].sort().join(", ") || "unknown");
  addDetail(body, "Rules", (action?.rule_ids ?? []).join(", ") || "not shown in this plan");
  addDetail(body, "Policy", resolution.policy_applied);
  addDetail(body, "Outcome", resolution.outcome + (resolution.winner ? `, winner ${resolution.winner}` : ""));
  for (const [user, move] of Object.entries(resolution.reassignments ?? {})) {
    addDetail(body, `Moved ${user}`, move.resource ? `to ${move.resource}` : move.note);
  }
  addDetail(body, "Rationale", resolution.rationale || "none given");
  badge.appendChild(body);
  return badge;
}

function addDetail(list: HTMLElement, term: string, value: string): void {
  const doc = list.ownerDocument;
  const dt = doc.createElement("dt");
  dt.textContent = term;
  const dd = doc.createElement("dd");
  dd.textContent = value;
  list.appendChild(dt);
  list.appendChild(dd);
}

/** Canonical string of what the grid shows; equal strings mean equal grids. */
export function gridSignature(container: HTMLElement): string {
  const actions = [...container.querySelectorAll<HTMLElement>("[data-action]")].map((el) => ({
    day: el.dataset.day,
    start: el.dataset.start,
    end: el.dataset.end,
    desc: el.querySelector(".action-desc")?.textContent ?? "",
    meta: el.querySelector(".action-meta")?.textContent ?? "",
    badges: [...el.querySelectorAll<HTMLElement>(".badge")].map(badgeKey),
  }));
  const loose = [...container.querySelectorAll<HTMLElement>(".unanchored .badge")].map(badgeKey);
  return JSON.stringify({ actions, loose });
}

function badgeKey(el: HTMLElement): string {
  return `${el.dataset.conflictId}:${el.dataset.kind}`;
}
