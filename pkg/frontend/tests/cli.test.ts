import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";

import { expect, test, vi } from "vitest";

import { main } from "../src/cli.js";

const POWER_FIXTURE = fileURLToPath(new URL("../fixtures/power.csv", import.meta.url));
const POWER_SNAPSHOT = fileURLToPath(new URL("../fixtures/power.svg", import.meta.url));

function run(argv: string[]): { code: number; stderr: string } {
  const spy = vi.spyOn(console, "error").mockImplementation(() => {});
  const code = main(argv);
  const stderr = spy.mock.calls.map((call) => call.join(" ")).join("\n");
  spy.mockRestore();
  return { code, stderr };
}

test("usage errors exit 2", () => {
  expect(run([]).code).toBe(2);
  expect(run(["histogram"]).code).toBe(2);
  expect(run(["power", "--in", POWER_FIXTURE]).code).toBe(2);
  expect(run(["power", "--in", POWER_FIXTURE, "--out", "x.svg", "--bogus"]).code).toBe(2);
});

test("non-svg output path exits 2 and names the format", () => {
  const out = run(["power", "--in", POWER_FIXTURE, "--out", "fig1.png"]);
  expect(out.code).toBe(2);
  expect(out.stderr).toContain('unsupported output format "fig1.png"');
});

test("unreadable input exits 3", () => {
  const dir = mkdtempSync(join(tmpdir(), "plots-"));
  const out = run(["qq", "--in", join(dir, "missing.csv"), "--out", join(dir, "fig.svg")]);
  expect(out.code).toBe(3);
  expect(out.stderr).toContain("cannot read");
});

test("unwritable output exits 3", () => {
  const dir = mkdtempSync(join(tmpdir(), "plots-"));
  const out = run(["power", "--in", POWER_FIXTURE, "--out", join(dir, "no", "such", "fig.svg")]);
  expect(out.code).toBe(3);
  expect(out.stderr).toContain("cannot write");
});

test("schema violations exit 4", () => {
  const dir = mkdtempSync(join(tmpdir(), "plots-"));
  const bad = join(dir, "bad.csv");
  writeFileSync(bad, "n,power\n1000,0.5\n");
  const out = run(["power", "--in", bad, "--out", join(dir, "fig.svg")]);
  expect(out.code).toBe(4);
  expect(out.stderr).toContain("missing column(s)");
});

test("successful render writes the snapshot bytes", () => {
  const dir = mkdtempSync(join(tmpdir(), "plots-"));
  const out = join(dir, "fig.svg");
  const result = run([
    "power", "--in", POWER_FIXTURE, "--out", out,
    "--title", "Rejection power, m=5, delta0=0",
  ]);
  expect(result.code).toBe(0);
  expect(result.stderr).toBe("");
  expect(readFileSync(out, "utf8")).toBe(readFileSync(POWER_SNAPSHOT, "utf8"));
});
