// Live-service checks: set ACADAID_SERVICE_URL (e.g. http://127.0.0.1:8040)
// with the backend running on toy artifacts to enable this file.

import { describe, expect, it } from "vitest";

import { AnalyzeClient } from "../src/api";

const baseUrl = process.env.ACADAID_SERVICE_URL;

describe.skipIf(!baseUrl)("live service", () => {
  const client = new AnalyzeClient(baseUrl ?? "");

  it("reports a healthy service", async () => {
    const report = await client.health();
    expect(report.status).toBe("ok");
    expect(report.counts.resource_entries).toBeGreaterThan(0);
  });

  it("flags said and suggests academic substitutes", async () => {
    const result = await client.analyze(
      "Pacific First Financial Corp said shareholders",
      4,
    );
    const texts = result.tokens.map((t) => t.text);
    const saidIndex = texts.indexOf("said");
    expect(result.flags.map((f) => f.token_index)).toContain(saidIndex);
    const words = (result.suggestions[String(saidIndex)] ?? []).map((s) => s.word);
    expect(words.some((w) => ["report", "state", "claim"].includes(w))).toBe(true);
  });

  it("looks up a multi-word resource entry", async () => {
    const result = await client.lookup("error rate");
    expect(result.found).toBe(true);
    expect(result.entry?.label).toBe("academic");
  });
});
