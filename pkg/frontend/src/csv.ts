import { readFileSync } from "node:fs";

// The run CSVs are written without quoting or escaping (the producer
// never emits commas inside a field), so a plain split is exact.

export interface Table {
  file: string;
  header: string[];
  rows: string[][];
}

export function readCsv(file: string): Table {
  const text = readFileSync(file, "utf8");
  const lines = text.split("\n").filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new Error(`${file}: empty CSV`);
  }
  const header = lines[0].split(",");
  const rows = lines.slice(1).map((line) => line.split(","));
  return { file, header, rows };
}

export function requireColumns(table: Table, names: string[]): void {
  for (const name of names) {
    if (!table.header.includes(name)) {
      throw new Error(
        `${table.file}: missing column "${name}" (columns: ${table.header.join(", ")})`,
      );
    }
  }
}

export function column(table: Table, name: string): string[] {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new Error(
      `${table.file}: missing column "${name}" (columns: ${table.header.join(", ")})`,
    );
  }
  return table.rows.map((row) => row[idx] ?? "");
}

/** Parse a column as numbers, rejecting anything non-numeric. */
export function numericColumn(table: Table, name: string): number[] {
  const raw = column(table, name);
  return raw.map((value, i) => {
    const x = Number(value);
    if (value === "" || !Number.isFinite(x)) {
      throw new Error(
        `${table.file}: column "${name}" row ${i + 1}: not a number: "${value}"`,
      );
    }
    return x;
  });
}
