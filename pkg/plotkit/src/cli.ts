/**
 * plotkit <samples.csv> <out.svg> [--title TEXT]
 *
 * Reads the distance draws written by `dpcheck check --samples-out` and
 * writes an SVG overlay of the prior and posterior densities.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { pathToFileURL } from "node:url";

import { parseSamplesCsv } from "./csv.js";
import { plotDensities } from "./plot.js";

const USAGE = "usage: plotkit <samples.csv> <out.svg> [--title TEXT]";

export function main(argv: string[]): number {
  const positional: string[] = [];
  let title: string | undefined;
  for (let i = 0; i < argv.length; i++) {
    if (argv[i] === "--title") {
      title = argv[++i];
      if (title === undefined) {
        console.error(USAGE);
        return 2;
      }
    } else if (argv[i].startsWith("-")) {
      console.error(`unknown flag ${argv[i]}\n${USAGE}`);
      return 2;
    } else {
      positional.push(argv[i]);
    }
  }
  if (positional.length !== 2) {
    console.error(USAGE);
    return 2;
  }
  const [inPath, outPath] = positional;
  try {
    const pair = parseSamplesCsv(readFileSync(inPath, "utf-8"));
    writeFileSync(outPath, plotDensities(pair, { title }));
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    return 1;
  }
  return 0;
}

if (process.argv[1] && pathToFileURL(process.argv[1]).href === import.meta.url) {
  process.exit(main(process.argv.slice(2)));
}
