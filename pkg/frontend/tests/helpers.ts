import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { ViewerSession } from "../src/session.js";
import { RunReport } from "../src/types.js";

export const FIXTURE_DIR = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

export function fixturePath(name: string): string {
  return join(FIXTURE_DIR, name);
}

export function readFixture(name: string): string {
  return readFileSync(fixturePath(name), "utf-8");
}

export function fixtureReport(): RunReport {
  return JSON.parse(readFixture("viewer.report.json")) as RunReport;
}

export function fixtureSources(): Map<string, string> {
  return new Map([
    ["volume1.txt", readFixture("volume1.txt")],
    ["volume2.txt", readFixture("volume2.txt")],
  ]);
}

export function fixtureSession(options: { rater?: string } = {}): ViewerSession {
  return ViewerSession.fromJson(
    readFixture("viewer.report.json"),
    fixtureSources(),
    options,
  );
}
