import { describe, expect, it } from "vitest";

import { emptyForm } from "../src/types.js";
import { canSubmit, validateVerdict } from "../src/validate.js";

describe("verdict form validation (server invariant mirror)", () => {
  it("accepts a non-toxic verdict with efficiency and reviewer", () => {
    const form = { toxic: false, efficiency: 8, reviewer: "alice", note: "" };
    expect(validateVerdict(form)).toEqual([]);
    expect(canSubmit(form)).toBe(true);
  });

  it("accepts a toxic verdict without efficiency", () => {
    expect(
      validateVerdict({ toxic: true, efficiency: null, reviewer: "a", note: "" }),
    ).toEqual([]);
  });

  it("blocks toxic with an efficiency selected", () => {
    const errors = validateVerdict({
      toxic: true, efficiency: 7, reviewer: "a", note: "",
    });
    expect(errors).toContain("a toxic verdict must not carry an efficiency value");
  });

  it("blocks non-toxic without an efficiency", () => {
    const errors = validateVerdict({
      toxic: false, efficiency: null, reviewer: "a", note: "",
    });
    expect(errors).toContain("a non-toxic verdict requires an efficiency in [1, 10]");
  });

  it.each([0, 11, 2.5])("blocks out-of-range efficiency %s", (value) => {
    expect(
      validateVerdict({ toxic: false, efficiency: value, reviewer: "a", note: "" }),
    ).not.toEqual([]);
  });

  it("requires a reviewer id", () => {
    const errors = validateVerdict({
      toxic: false, efficiency: 5, reviewer: "   ", note: "",
    });
    expect(errors).toContain("reviewer id is required");
  });

  it("the empty form is not submittable", () => {
    expect(canSubmit(emptyForm())).toBe(false);
  });
});
