/** Hand-rolled SVG fragments; everything is formatted with fixed
 * precision so identical inputs produce identical bytes. */

export function px(value: number): string {
  return value.toFixed(2);
}

export function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Tick label: enough digits for a [0,1] axis, no trailing zeros. */
export function tickLabel(value: number): string {
  return parseFloat(value.toPrecision(3)).toString();
}

export function polylinePath(points: Array<[number, number]>): string {
  return points
    .map(([x, y], i) => `${i === 0 ? "M" : "L"}${px(x)} ${px(y)}`)
    .join(" ");
}
