import Papa from "papaparse";

/** Input does not match the documented CSV contract. */
export class SchemaError extends Error {}

export interface PowerRow {
  n: number;
  test: string;
  rejections: number;
  B: number;
  power: number;
  ci_lo: number;
  ci_hi: number;
  predicted_power: number | null;
  delta1: number;
}

export interface QqRow {
  theoretical: number;
  empirical: number;
}

const POWER_COLUMNS = [
  "n", "test", "rejections", "B", "power",
  "ci_lo", "ci_hi", "predicted_power", "delta1",
];
const QQ_COLUMNS = ["theoretical", "empirical"];

function parseTable(
  content: string,
  required: string[],
  label: string,
): Record<string, string>[] {
  const parsed = Papa.parse<Record<string, string>>(content, {
    header: true,
    skipEmptyLines: true,
    delimiter: ",",
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    const where = first.row === undefined ? "" : ` at row ${first.row + 1}`;
    throw new SchemaError(`${label}: malformed CSV${where}: ${first.message}`);
  }
  const header = parsed.meta.fields ?? [];
  const missing = required.filter((column) => !header.includes(column));
  if (missing.length > 0) {
    throw new SchemaError(
      `${label}: missing column(s) [${missing.join(", ")}]; ` +
      `header has [${header.join(", ")}]`,
    );
  }
  if (parsed.data.length === 0) {
    throw new SchemaError(`${label}: no data rows`);
  }
  return parsed.data;
}

function num(
  row: Record<string, string>,
  column: string,
  index: number,
  label: string,
): number {
  const raw = row[column];
  const value = Number(raw);
  if (raw === undefined || raw.trim() === "" || !Number.isFinite(value)) {
    throw new SchemaError(
      `${label}: row ${index + 1}, column ${column}: not a number: "${raw}"`,
    );
  }
  return value;
}

/** Rows of power.csv; predicted_power may be blank for uncalibrated rules. */
export function parsePowerCsv(content: string): PowerRow[] {
  const label = "power csv";
  return parseTable(content, POWER_COLUMNS, label).map((row, i) => {
    const test = (row.test ?? "").trim();
    if (test === "") {
      throw new SchemaError(`${label}: row ${i + 1}: empty test name`);
    }
    const predictedRaw = (row.predicted_power ?? "").trim();
    return {
      n: num(row, "n", i, label),
      test,
      rejections: num(row, "rejections", i, label),
      B: num(row, "B", i, label),
      power: num(row, "power", i, label),
      ci_lo: num(row, "ci_lo", i, label),
      ci_hi: num(row, "ci_hi", i, label),
      predicted_power: predictedRaw === "" ? null : num(row, "predicted_power", i, label),
      delta1: num(row, "delta1", i, label),
    };
  });
}

export function parseQqCsv(content: string): QqRow[] {
  const label = "qq csv";
  return parseTable(content, QQ_COLUMNS, label).map((row, i) => ({
    theoretical: num(row, "theoretical", i, label),
    empirical: num(row, "empirical", i, label),
  }));
}
