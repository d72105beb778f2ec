import type { VerdictForm } from "./types.js";

/**
 * Client-side mirror of the server's verdict invariants. The messages match
 * the server's validation errors verbatim so conflict-free submissions are
 * the only ones that leave the browser.
 */
export function validateVerdict(form: VerdictForm): string[] {
  const errors: string[] = [];
  if (form.toxic && form.efficiency !== null) {
    errors.push("a toxic verdict must not carry an efficiency value");
  }
  if (
    !form.toxic &&
    (form.efficiency === null ||
      !Number.isInteger(form.efficiency) ||
      form.efficiency < 1 ||
      form.efficiency > 10)
  ) {
    errors.push("a non-toxic verdict requires an efficiency in [1, 10]");
  }
  if (!form.reviewer.trim()) {
    errors.push("reviewer id is required");
  }
  return errors;
}

export function canSubmit(form: VerdictForm): boolean {
  return validateVerdict(form).length === 0;
}
