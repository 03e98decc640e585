#!/usr/bin/env node
import { readFileSync, realpathSync, writeFileSync } from "node:fs";
import { pathToFileURL } from "node:url";
import { parseArgs } from "node:util";

import { parsePowerCsv, parseQqCsv, SchemaError } from "./csv.js";
import { renderPower } from "./power.js";
import { renderQq } from "./qq.js";

const USAGE = "usage: plots <power|qq> --in <data.csv> --out <figure.svg> [--title <text>]";

/** Exit codes mirror the data pipeline: 2 usage, 3 file IO, 4 bad data. */
export function main(argv: string[]): number {
  const [command, ...rest] = argv;
  if (command !== "power" && command !== "qq") {
    console.error(command === undefined ? USAGE : `error: unknown command "${command}"\n${USAGE}`);
    return 2;
  }
  let flags: { in?: string; out?: string; title?: string };
  try {
    flags = parseArgs({
      args: rest,
      options: {
        in: { type: "string" },
        out: { type: "string" },
        title: { type: "string" },
      },
    }).values;
  } catch (err) {
    console.error(`error: ${(err as Error).message}\n${USAGE}`);
    return 2;
  }
  if (flags.in === undefined || flags.out === undefined) {
    console.error(`error: --in and --out are required\n${USAGE}`);
    return 2;
  }
  if (!flags.out.endsWith(".svg")) {
    console.error(`error: unsupported output format "${flags.out}": figures are written as .svg`);
    return 2;
  }

  let content: string;
  try {
    content = readFileSync(flags.in, "utf8");
  } catch (err) {
    console.error(`error: cannot read ${flags.in}: ${(err as Error).message}`);
    return 3;
  }
  let svg: string;
  try {
    svg = command === "power"
      ? renderPower(parsePowerCsv(content), flags.title)
      : renderQq(parseQqCsv(content), flags.title);
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`error: ${err.message}`);
      return 4;
    }
    throw err;
  }
  try {
    writeFileSync(flags.out, svg);
  } catch (err) {
    console.error(`error: cannot write ${flags.out}: ${(err as Error).message}`);
    return 3;
  }
  return 0;
}

const invokedAs = process.argv[1] ? pathToFileURL(realpathSync(process.argv[1])).href : "";
if (import.meta.url === invokedAs) {
  process.exit(main(process.argv.slice(2)));
}
