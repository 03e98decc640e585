import { scaleLinear, scaleLog } from "d3-scale";

import { PowerRow, SchemaError } from "./csv.js";
import { fmtCount, px, svgDocument, textEl } from "./svg.js";

const WIDTH = 720;
const HEIGHT = 480;
const MARGIN = { top: 48, right: 200, bottom: 56, left: 64 };

const PALETTE = [
  "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
];

interface Series {
  key: string;
  rows: PowerRow[];
}

/** One series per (test, delta1) pair, ordered by test name then delta1. */
function groupSeries(rows: PowerRow[]): Series[] {
  const groups = new Map<string, PowerRow[]>();
  for (const row of rows) {
    const key = `${row.test}, delta1=${row.delta1}`;
    const bucket = groups.get(key);
    if (bucket === undefined) {
      groups.set(key, [row]);
    } else {
      bucket.push(row);
    }
  }
  const series = Array.from(groups, ([key, members]) => ({
    key,
    rows: members.slice().sort((a, b) => a.n - b.n),
  }));
  series.sort((a, b) => {
    const ta = a.rows[0].test;
    const tb = b.rows[0].test;
    if (ta !== tb) return ta < tb ? -1 : 1;
    return a.rows[0].delta1 - b.rows[0].delta1;
  });
  return series;
}

/**
 * Power curves against n on a log axis: per series a shaded exact-binomial
 * confidence band, a solid line through the empirical rates, and a dashed
 * line through the asymptotic predictions when the CSV carries them.
 */
export function renderPower(rows: PowerRow[], title = "Rejection power"): string {
  if (rows.length === 0) {
    throw new SchemaError("power csv: no data rows");
  }
  const sizes = Array.from(new Set(rows.map((row) => row.n))).sort((a, b) => a - b);
  if (sizes[0] <= 0) {
    throw new SchemaError(`power csv: sizes must be positive for the log axis, got ${sizes[0]}`);
  }
  const x = scaleLog()
    .domain([sizes[0], sizes[sizes.length - 1]])
    .range([MARGIN.left, WIDTH - MARGIN.right]);
  const y = scaleLinear()
    .domain([0, 1])
    .range([HEIGHT - MARGIN.bottom, MARGIN.top]);

  const parts: string[] = [];
  const axisBottom = HEIGHT - MARGIN.bottom;
  const axisRight = WIDTH - MARGIN.right;

  for (let tick = 0; tick <= 4; tick++) {
    const value = tick / 4;
    const yPos = y(value);
    parts.push(
      `<line class="grid" x1="${px(MARGIN.left)}" y1="${px(yPos)}" ` +
      `x2="${px(axisRight)}" y2="${px(yPos)}" stroke="#dddddd"/>`,
    );
    parts.push(textEl(MARGIN.left - 8, yPos + 4, String(value), 'text-anchor="end" font-size="12"'));
  }
  for (const size of sizes) {
    const xPos = x(size);
    parts.push(
      `<line x1="${px(xPos)}" y1="${px(axisBottom)}" x2="${px(xPos)}" ` +
      `y2="${px(axisBottom + 5)}" stroke="#000000"/>`,
    );
    parts.push(textEl(xPos, axisBottom + 20, fmtCount(size), 'text-anchor="middle" font-size="12"'));
  }
  parts.push(
    `<line x1="${px(MARGIN.left)}" y1="${px(axisBottom)}" x2="${px(axisRight)}" ` +
    `y2="${px(axisBottom)}" stroke="#000000"/>`,
  );
  parts.push(
    `<line x1="${px(MARGIN.left)}" y1="${px(MARGIN.top)}" x2="${px(MARGIN.left)}" ` +
    `y2="${px(axisBottom)}" stroke="#000000"/>`,
  );
  parts.push(textEl(
    (MARGIN.left + axisRight) / 2, HEIGHT - 14,
    "n (log scale)", 'text-anchor="middle" font-size="13"',
  ));
  parts.push(textEl(
    18, (MARGIN.top + axisBottom) / 2, "rejection rate",
    `text-anchor="middle" font-size="13" transform="rotate(-90 18 ${px((MARGIN.top + axisBottom) / 2)})"`,
  ));
  parts.push(textEl(
    (MARGIN.left + axisRight) / 2, 26, title,
    'text-anchor="middle" font-size="16" font-weight="bold"',
  ));

  const series = groupSeries(rows);
  series.forEach((entry, index) => {
    const color = PALETTE[index % PALETTE.length];
    const upper = entry.rows.map((row) => `${px(x(row.n))},${px(y(row.ci_hi))}`);
    const lower = entry.rows
      .slice()
      .reverse()
      .map((row) => `${px(x(row.n))},${px(y(row.ci_lo))}`);
    parts.push(
      `<polygon class="band" points="${upper.concat(lower).join(" ")}" ` +
      `fill="${color}" fill-opacity="0.15" stroke="none"/>`,
    );
    const line = entry.rows.map((row) => `${px(x(row.n))},${px(y(row.power))}`);
    parts.push(
      `<polyline class="empirical" points="${line.join(" ")}" ` +
      `fill="none" stroke="${color}" stroke-width="1.8"/>`,
    );
    for (const row of entry.rows) {
      parts.push(
        `<circle cx="${px(x(row.n))}" cy="${px(y(row.power))}" r="2.5" fill="${color}"/>`,
      );
    }
    const predicted = entry.rows.filter((row) => row.predicted_power !== null);
    if (predicted.length >= 2) {
      const dashed = predicted.map(
        (row) => `${px(x(row.n))},${px(y(row.predicted_power as number))}`,
      );
      parts.push(
        `<polyline class="predicted" points="${dashed.join(" ")}" ` +
        `fill="none" stroke="${color}" stroke-width="1.4" stroke-dasharray="6 4"/>`,
      );
    }
    const legendY = MARGIN.top + 10 + index * 20;
    parts.push(
      `<line x1="${px(axisRight + 12)}" y1="${px(legendY)}" ` +
      `x2="${px(axisRight + 36)}" y2="${px(legendY)}" stroke="${color}" stroke-width="2.4"/>`,
    );
    parts.push(textEl(axisRight + 42, legendY + 4, entry.key, 'font-size="12"'));
  });
  const captionY = MARGIN.top + 10 + series.length * 20 + 14;
  parts.push(textEl(axisRight + 12, captionY, "solid: empirical, shaded: 95% CI", 'font-size="11" fill="#444444"'));
  parts.push(textEl(axisRight + 12, captionY + 16, "dashed: predicted", 'font-size="11" fill="#444444"'));

  return svgDocument(WIDTH, HEIGHT, parts.join("\n"));
}
