/** JSON payload shapes served by the planning API.
 *
 * These mirror the service responses field for field; the UI keeps no
 * domain model of its own beyond them.
 */

export interface PlanActionPayload {
  start: number;
  end: number;
  description: string;
  users: string[];
  rule_ids?: string[];
  conflict_ids?: string[];
  resource?: string;
  value?: number;
}

export interface PlanPayload {
  day: string;
  actions: PlanActionPayload[];
}

export interface ReassignmentPayload {
  resource: string | null;
  note: string;
}

export interface ResolutionPayload {
  conflict_id: string;
  policy_applied: string;
  outcome: string;
  rationale: string;
  winner?: string;
  reassignments?: Record<string, ReassignmentPayload>;
}

/** Response body of POST /messages, POST /feedback, and GET /plan. */
export interface PlannerReply {
  plans: PlanPayload[];
  resolutions: ResolutionPayload[];
  explanation: string;
  rule_citations: string[];
  unresolved_fields: string[];
}

export interface RuleFieldPayload {
  status: "filled" | "unresolved";
  attempts: number;
  entries: string[];
}

/** First name -> field name -> field; empty object before reflection. */
export type RuleSheetPayload = Record<string, Record<string, RuleFieldPayload>>;

export interface ScenarioInfo {
  name: string;
  title: string;
  users: string[];
}

export interface SessionInfo {
  session_id: string;
  scenario: string;
}
