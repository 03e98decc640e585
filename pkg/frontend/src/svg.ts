/** Pixel coordinate with a fixed number of decimals so output is byte-stable. */
export function px(value: number): string {
  return value.toFixed(2);
}

export function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

/** Compact count label: 1000 -> 1e3, 25000 -> 2.5e4, 500 -> 500. */
export function fmtCount(n: number): string {
  if (n < 1000) return String(n);
  const exp = Math.floor(Math.log10(n));
  const mantissa = n / 10 ** exp;
  const mantStr = mantissa.toFixed(2).replace(/\.?0+$/, "");
  return `${mantStr}e${exp}`;
}

export function svgDocument(width: number, height: number, body: string): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
    `<rect width="${width}" height="${height}" fill="#ffffff"/>`,
    body,
    `</svg>`,
    ``,
  ].join("\n");
}

export function textEl(
  x: number,
  y: number,
  content: string,
  attrs = "",
): string {
  return `<text x="${px(x)}" y="${px(y)}"${attrs ? " " + attrs : ""}>${esc(content)}</text>`;
}
