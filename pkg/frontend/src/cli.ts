#!/usr/bin/env node
import { readFileSync } from "node:fs";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";
import { render } from "./render.js";
import { FIGURE_KINDS } from "./spec.js";
import type { FigureSpec } from "./spec.js";

function buildSpec(argv: {
  spec?: string;
  kind?: string;
  input?: (string | number)[];
  output?: string;
  xScale?: string;
  yScale?: string;
}): FigureSpec {
  if (argv.spec) {
    return JSON.parse(readFileSync(argv.spec, "utf8")) as FigureSpec;
  }
  if (!argv.kind || !argv.input || !argv.output) {
    throw new Error("need --kind, --input, and --output (or --spec file)");
  }
  const spec: FigureSpec = {
    kind: argv.kind as FigureSpec["kind"],
    inputs: argv.input.map(String),
    output: argv.output,
  };
  if (argv.xScale || argv.yScale) {
    spec.scales = {};
    if (argv.xScale) spec.scales.x = argv.xScale as "linear" | "log";
    if (argv.yScale) spec.scales.y = argv.yScale as "linear" | "log";
  }
  return spec;
}

export function main(args: string[]): number {
  const argv = yargs(args)
    .scriptName("render-figure")
    .usage("$0 --kind <figure> --input <file>... --output <fig.svg>")
    .option("spec", { type: "string", describe: "read the whole figure spec from a JSON file" })
    .option("kind", { type: "string", choices: [...FIGURE_KINDS] })
    .option("input", { type: "array", describe: "input CSV/JSON files, in kind-specific order" })
    .option("output", { type: "string", describe: "output .svg path (vector only)" })
    .option("x-scale", { type: "string", choices: ["linear", "log"] })
    .option("y-scale", { type: "string", choices: ["linear", "log"] })
    .strict()
    .exitProcess(false)
    .fail((msg, err) => {
      throw err ?? new Error(msg);
    })
    .parseSync();

  const result = render(buildSpec(argv));
  console.log(`wrote ${result.figure}`);
  console.log(`wrote ${result.manifest}`);
  return 0;
}

const entry = process.argv[1] ?? "";
if (entry.endsWith("cli.js") || entry.endsWith("render-figure")) {
  try {
    process.exit(main(hideBin(process.argv)));
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    process.exit(1);
  }
}
