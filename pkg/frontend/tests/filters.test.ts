import { describe, expect, it } from "vitest";

import {
  escapeLiteral,
  formatFilterFragment,
  formatFilterLine,
  suggestPattern,
} from "../src/filters.js";

describe("escapeLiteral", () => {
  it("escapes every regex metacharacter", () => {
    const input = "a.b*c+d?e^f$g{h}i(j)k|l[m]n\\o";
    const escaped = escapeLiteral(input);
    expect(new RegExp(escaped).test(input)).toBe(true);
    expect(escaped).toBe("a\\.b\\*c\\+d\\?e\\^f\\$g\\{h\\}i\\(j\\)k\\|l\\[m\\]n\\\\o");
  });

  it("leaves plain words alone", () => {
    expect(escapeLiteral("Page footer 12")).toBe("Page footer 12");
  });
});

describe("suggestPattern", () => {
  it("defaults to a literal escape, digits untouched", () => {
    expect(suggestPattern("Page 3 of 12")).toBe("Page 3 of 12");
    expect(suggestPattern("total (net)")).toBe("total \\(net\\)");
  });

  it("generalizes digit runs only via the explicit toggle", () => {
    expect(suggestPattern("Page 3 of 12", { generalizeDigits: true })).toBe(
      "Page \\d+ of \\d+",
    );
  });

  it("anchors every line of a multi-line snippet", () => {
    const pattern = suggestPattern("first line\nsecond line");
    expect(pattern).toBe("^first line$\\n^second line$");
    const regex = new RegExp(pattern, "m");
    expect(regex.test("before\nfirst line\nsecond line\nafter")).toBe(true);
    expect(regex.test("xfirst line\nsecond line")).toBe(false);
  });

  it("trims anchored lines so indentation does not break matching", () => {
    expect(suggestPattern("  padded\nlines  ")).toBe("^padded$\\n^lines$");
  });
});

describe("filter lines", () => {
  it("formats scope, label and pattern with tabs", () => {
    expect(
      formatFilterLine({ scope: "*", label: "page footer", pattern: "Page \\d+" }),
    ).toBe("*\tpage footer\tPage \\d+");
  });

  it("rejects an empty scope and embedded tabs", () => {
    expect(() =>
      formatFilterLine({ scope: "", label: "x", pattern: "y" }),
    ).toThrow(/scope/);
    expect(() =>
      formatFilterLine({ scope: "*", label: "a\tb", pattern: "y" }),
    ).toThrow(/tab/);
  });

  it("joins fragments with one rule per line", () => {
    const fragment = formatFilterFragment([
      { scope: "*", label: "a", pattern: "p1" },
      { scope: "doc.txt", label: "b", pattern: "p2" },
    ]);
    expect(fragment).toBe("*\ta\tp1\ndoc.txt\tb\tp2\n");
    expect(formatFilterFragment([])).toBe("");
  });
});
