import { readFileSync } from "node:fs";
import { z } from "zod";

/** The run-summary schema generation this reader understands. */
export const SUPPORTED_SCHEMA_VERSION = 1;

export function readJson(file: string): unknown {
  let data: unknown;
  try {
    data = JSON.parse(readFileSync(file, "utf8"));
  } catch (err) {
    throw new Error(`${file}: ${(err as Error).message}`);
  }
  const version = (data as { schema_version?: unknown }).schema_version;
  if (version !== SUPPORTED_SCHEMA_VERSION) {
    throw new Error(
      `${file}: schema_version ${String(version)}, this reader supports ${SUPPORTED_SCHEMA_VERSION}`,
    );
  }
  return data;
}

export function parseWith<T>(file: string, schema: z.ZodType<T>, data: unknown): T {
  const result = schema.safeParse(data);
  if (!result.success) {
    const issue = result.error.issues[0];
    const where = issue.path.join(".") || "(root)";
    throw new Error(`${file}: ${where}: ${issue.message}`);
  }
  return result.data;
}

export const recurrenceSummarySchema = z.object({
  experiment: z.literal("recurrence"),
  mean_blocks_to_hit: z.number().nullable(),
  censored: z.number(),
  params: z.object({
    eps: z.number(),
    tau_block: z.number(),
    n_realizations: z.number(),
  }),
  vol_reference: z.object({
    estimate: z.number(),
    ci_low: z.number(),
    ci_high: z.number(),
  }),
});

export const equidCertificateSchema = z.object({
  experiment: z.string(),
  verdict: z.enum(["pass", "fail", "inconclusive"]),
  params: z.object({
    t: z.number(),
    eps: z.number(),
    alpha: z.number(),
    beta: z.number(),
    radii: z.array(z.number()),
  }),
});

export const slhSummarySchema = z.object({
  verdict: z.enum(["pass", "fail", "inconclusive"]),
  m: z.number(),
  unitarity_defect: z.number(),
  params: z.object({
    s: z.number(),
    n_realizations: z.number(),
  }),
});
