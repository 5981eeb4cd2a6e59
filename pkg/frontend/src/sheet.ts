/** Rule-sheet side panel: per user, per field, Filled or Unresolved. */

import type { RuleSheetPayload } from "./types.js";

const FIELD_ORDER = ["schedule", "preferences", "policies"];

export function renderRuleSheet(container: HTMLElement, sheet: RuleSheetPayload): void {
  const doc = container.ownerDocument;
  container.textContent = "";
  const names = Object.keys(sheet).sort();
  if (names.length === 0) {
    const empty = doc.createElement("p");
    empty.className = "sheet-empty";
    empty.textContent = "Rule sheet not gathered yet.";
    container.appendChild(empty);
    return;
  }
  for (const name of names) {
    const section = doc.createElement("details");
    section.className = "sheet-user";
    section.open = true;
    const summary = doc.createElement("summary");
    summary.textContent = name;
    section.appendChild(summary);

    const fields = sheet[name];
    const known = FIELD_ORDER.filter((f) => f in fields);
    const extra = Object.keys(fields).filter((f) => !FIELD_ORDER.includes(f)).sort();
    for (const fieldName of [...known, ...extra]) {
      const field = fields[fieldName];
      const row = doc.createElement("div");
      row.className = "sheet-field";
      row.dataset.user = name;
      row.dataset.field = fieldName;

      const label = doc.createElement("span");
      label.className = "sheet-field-name";
      label.textContent = fieldName;
      row.appendChild(label);

      const chip = doc.createElement("span");
      chip.className = `chip chip-${field.status}`;
      chip.textContent =
        field.status === "filled" ? "Filled" : `Unresolved (${field.attempts})`;
      row.appendChild(chip);

      if (field.entries.length > 0) {
        const entries = doc.createElement("ul");
        entries.className = "sheet-entries";
        for (const entry of field.entries) {
          const li = doc.createElement("li");
          li.textContent = entry;
          entries.appendChild(li);
        }
        row.appendChild(entries);
      }
      section.appendChild(row);
    }
    container.appendChild(section);
  }
}
