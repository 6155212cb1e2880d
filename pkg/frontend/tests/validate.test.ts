import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import {
  delimiterIssues,
  draftIssues,
  emptinessIssues,
  groundingIssues,
  isGrounded,
} from "../src/validate.js";

interface FixtureCase {
  text: string;
  pairs: { label: string; entity: string }[];
  grounded: boolean;
}

const FIXTURES: FixtureCase[] = JSON.parse(
  readFileSync(
    new URL("../../tests/fixtures/grounding_cases.json", import.meta.url),
    "utf-8",
  ),
);

describe("grounding", () => {
  it("agrees with the server filter on every shared fixture", () => {
    for (const fixture of FIXTURES) {
      expect(isGrounded(fixture.text, fixture.pairs), fixture.text).toBe(
        fixture.grounded,
      );
    }
  });

  it("is exact and case-sensitive", () => {
    expect(groundingIssues("Pandas live here", [{ label: "a", entity: "pandas" }]))
      .toHaveLength(1);
    expect(groundingIssues("pandas live here", [{ label: "a", entity: "pandas" }]))
      .toHaveLength(0);
  });

  it("names the offending field", () => {
    const issues = groundingIssues("some text", [
      { label: "a", entity: "some" },
      { label: "b", entity: "ghost" },
    ]);
    expect(issues).toHaveLength(1);
    expect(issues[0].field).toBe("pairs[1].entity");
    expect(issues[0].rule).toBe("grounding");
  });
});

describe("delimiters", () => {
  it("rejects reserved characters in either field", () => {
    expect(delimiterIssues([{ label: "a:b", entity: "x" }])).toHaveLength(1);
    expect(delimiterIssues([{ label: "a", entity: "x;y" }])).toHaveLength(1);
    expect(delimiterIssues([{ label: "a", entity: "x" }])).toHaveLength(0);
  });
});

describe("emptiness", () => {
  it("flags empty text, label, and pair fields", () => {
    const issues = emptinessIssues({
      text: "",
      text_label: "  ",
      pairs: [{ label: "", entity: " " }],
    });
    const fields = issues.map((issue) => issue.field);
    expect(fields).toContain("text");
    expect(fields).toContain("text_label");
    expect(fields).toContain("pairs[0].label");
    expect(fields).toContain("pairs[0].entity");
  });
});

describe("draftIssues", () => {
  it("is empty for a clean draft", () => {
    expect(
      draftIssues({
        text: "Giant pandas are mammals, endemic to China.",
        text_label: "nature",
        pairs: [
          { label: "Animal Name", entity: "pandas" },
          { label: "Nation", entity: "China" },
        ],
      }),
    ).toHaveLength(0);
  });

  it("collects issues from every rule family", () => {
    const issues = draftIssues({
      text: "short text",
      text_label: "",
      pairs: [{ label: "a;b", entity: "missing" }],
    });
    const rules = new Set(issues.map((issue) => issue.rule));
    expect(rules).toEqual(new Set(["empty", "reserved", "grounding"]));
  });
});
