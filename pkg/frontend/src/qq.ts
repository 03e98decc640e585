import { scaleLinear } from "d3-scale";

import { QqRow, SchemaError } from "./csv.js";
import { px, svgDocument, textEl } from "./svg.js";

const SIDE = 420;
const MARGIN = { top: 48, right: 24, bottom: 56, left: 64 };
const WIDTH = MARGIN.left + SIDE + MARGIN.right;
const HEIGHT = MARGIN.top + SIDE + MARGIN.bottom;

/**
 * Scatter of (normal quantile, standardized order statistic) over a dashed
 * identity line; both axes share one symmetric integer-bounded domain.
 */
export function renderQq(rows: QqRow[], title = "Normal QQ plot"): string {
  if (rows.length === 0) {
    throw new SchemaError("qq csv: no data rows");
  }
  let extent = 0;
  for (const row of rows) {
    extent = Math.max(extent, Math.abs(row.theoretical), Math.abs(row.empirical));
  }
  const limit = Math.max(1, Math.ceil(extent));
  const x = scaleLinear().domain([-limit, limit]).range([MARGIN.left, MARGIN.left + SIDE]);
  const y = scaleLinear().domain([-limit, limit]).range([MARGIN.top + SIDE, MARGIN.top]);

  const parts: string[] = [];
  const axisBottom = MARGIN.top + SIDE;
  const step = limit <= 5 ? 1 : Math.ceil(limit / 5);
  for (let value = -limit; value <= limit; value += step) {
    const xPos = x(value);
    const yPos = y(value);
    parts.push(
      `<line class="grid" x1="${px(xPos)}" y1="${px(MARGIN.top)}" ` +
      `x2="${px(xPos)}" y2="${px(axisBottom)}" stroke="#eeeeee"/>`,
    );
    parts.push(
      `<line class="grid" x1="${px(MARGIN.left)}" y1="${px(yPos)}" ` +
      `x2="${px(MARGIN.left + SIDE)}" y2="${px(yPos)}" stroke="#eeeeee"/>`,
    );
    parts.push(textEl(xPos, axisBottom + 18, String(value), 'text-anchor="middle" font-size="12"'));
    parts.push(textEl(MARGIN.left - 8, yPos + 4, String(value), 'text-anchor="end" font-size="12"'));
  }
  parts.push(
    `<rect x="${px(MARGIN.left)}" y="${px(MARGIN.top)}" width="${px(SIDE)}" ` +
    `height="${px(SIDE)}" fill="none" stroke="#000000"/>`,
  );
  parts.push(
    `<line class="identity" x1="${px(x(-limit))}" y1="${px(y(-limit))}" ` +
    `x2="${px(x(limit))}" y2="${px(y(limit))}" stroke="#888888" stroke-dasharray="6 4"/>`,
  );
  for (const row of rows) {
    parts.push(
      `<circle class="point" cx="${px(x(row.theoretical))}" cy="${px(y(row.empirical))}" ` +
      `r="2" fill="#1f77b4" fill-opacity="0.75"/>`,
    );
  }
  parts.push(textEl(
    MARGIN.left + SIDE / 2, axisBottom + 40,
    "theoretical quantile", 'text-anchor="middle" font-size="13"',
  ));
  parts.push(textEl(
    18, MARGIN.top + SIDE / 2, "empirical quantile",
    `text-anchor="middle" font-size="13" transform="rotate(-90 18 ${px(MARGIN.top + SIDE / 2)})"`,
  ));
  parts.push(textEl(
    MARGIN.left + SIDE / 2, 26, title,
    'text-anchor="middle" font-size="16" font-weight="bold"',
  ));
  return svgDocument(WIDTH, HEIGHT, parts.join("\n"));
}
