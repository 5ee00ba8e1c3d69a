/** Penalty-to-colour ramp, replicating the server's function bit for
 * bit: white then a 9-class sequential palette, piecewise-linear in
 * sRGB, channels rounded half away from zero, saturating at the cap.
 * The server never sends colours; parity here is what keeps the canvas
 * and the exported SVGs identical. */

export type SchemeCode = "GnBu" | "OrRd";

export const GNBU9 = ["#F7FCF0", "#E0F3DB", "#CCEBC5", "#A8DDB5", "#7BCCC4",
                      "#4EB3D3", "#2B8CBE", "#0868AC", "#084081"] as const;
export const ORRD9 = ["#FFF7EC", "#FEE8C8", "#FDD49E", "#FDBB84", "#FC8D59",
                      "#EF6548", "#D7301F", "#B30000", "#7F0000"] as const;

export type Rgb = readonly [number, number, number];

const WHITE: Rgb = [255, 255, 255];

function hexToRgb(code: string): Rgb {
  return [
    parseInt(code.slice(1, 3), 16),
    parseInt(code.slice(3, 5), 16),
    parseInt(code.slice(5, 7), 16),
  ];
}

const ANCHORS: Record<SchemeCode, readonly Rgb[]> = {
  GnBu: [WHITE, ...GNBU9.map(hexToRgb)],
  OrRd: [WHITE, ...ORRD9.map(hexToRgb)],
};

export function schemeFor(kind: "retrieval" | "relevance"): SchemeCode {
  return kind === "retrieval" ? "GnBu" : "OrRd";
}

/** Position in [0, 1] along the ramp; saturates at the cap. */
export function interpolationParameter(cap: number, penalty: number): number {
  if (penalty < 0) throw new RangeError(`penalty must be non-negative, got ${penalty}`);
  return Math.min(penalty / cap, 1.0);
}

export function colourOf(scheme: SchemeCode, cap: number, penalty: number): Rgb {
  const anchors = ANCHORS[scheme];
  const position = interpolationParameter(cap, penalty) * (anchors.length - 1);
  const seg = Math.min(Math.floor(position), anchors.length - 2);
  const frac = position - seg;
  const lo = anchors[seg];
  const hi = anchors[seg + 1];
  return [
    Math.floor(lo[0] + (hi[0] - lo[0]) * frac + 0.5),
    Math.floor(lo[1] + (hi[1] - lo[1]) * frac + 0.5),
    Math.floor(lo[2] + (hi[2] - lo[2]) * frac + 0.5),
  ];
}

export function rgbCss(rgb: Rgb): string {
  return `rgb(${rgb[0]},${rgb[1]},${rgb[2]})`;
}

export function rgbHex(rgb: Rgb): string {
  const two = (v: number) => v.toString(16).toUpperCase().padStart(2, "0");
  return `#${two(rgb[0])}${two(rgb[1])}${two(rgb[2])}`;
}
