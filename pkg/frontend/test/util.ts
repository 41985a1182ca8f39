import { cpSync, mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join, resolve } from "node:path";
import { fileURLToPath } from "node:url";

export const FIXTURES = resolve(dirname(fileURLToPath(import.meta.url)), "..", "fixtures");

export function tempDir(prefix: string): string {
  return mkdtempSync(join(tmpdir(), `${prefix}-`));
}

/** Copy a fixture subtree into a fresh temp dir and return the copy. */
export function fixtureCopy(subpath: string, prefix = "fig"): string {
  const dest = join(tempDir(prefix), "data");
  cpSync(join(FIXTURES, subpath), dest, { recursive: true });
  return dest;
}

export function countMatches(haystack: string, pattern: RegExp): number {
  return (haystack.match(new RegExp(pattern.source, pattern.flags + "g")) ?? []).length;
}
