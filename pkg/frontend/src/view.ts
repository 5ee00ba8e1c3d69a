/** Canvas edge layer plus SVG overlay (legend, hover ring) and the
 * hover detail panel.  All numbers come from the server document. */

import { colourOf, rgbCss, rgbHex, schemeFor } from "./colour.js";
import {
  DASH_GREY,
  fitTransform,
  halvesOf,
  toScreen,
  Transform,
  visibleEdges,
} from "./scene.js";
import { GraphDoc, ViewState } from "./types.js";

const MARKER_RADIUS = 3;
const MARKER_FILL = "#333333";
const DIMMED_ALPHA = 0.12;
const SVG_NS = "http://www.w3.org/2000/svg";

export interface Widgets {
  canvas: HTMLCanvasElement;
  overlay: SVGSVGElement;
  panel: HTMLElement;
  banner: HTMLElement;
}

export function showBanner(widgets: Widgets, message: string): void {
  widgets.banner.textContent = message;
  widgets.banner.hidden = false;
}

export function clearBanner(widgets: Widgets): void {
  widgets.banner.textContent = "";
  widgets.banner.hidden = true;
}

export function baseTransform(doc: GraphDoc, canvas: HTMLCanvasElement): Transform {
  return fitTransform(doc, canvas.width, canvas.height);
}

export function drawScene(
  widgets: Widgets,
  doc: GraphDoc,
  state: ViewState,
  transform: Transform,
): void {
  const ctx = widgets.canvas.getContext("2d");
  if (!ctx) throw new Error("canvas 2d context unavailable");
  const { width, height } = widgets.canvas;
  ctx.clearRect(0, 0, width, height);
  ctx.lineWidth = 1.2;
  ctx.lineCap = "round";

  const hover = state.hover;
  const project = (x: number, y: number) =>
    toScreen(transform, x, y, state.panX, state.panY, state.zoom);

  for (const edge of visibleEdges(doc.edges, state.threshold)) {
    const highlight =
      hover === null || edge.src === hover || edge.dst === hover;
    ctx.globalAlpha = highlight ? 1 : DIMMED_ALPHA;
    for (const half of halvesOf(doc, edge, state.cap)) {
      const [x1, y1] = project(half.x1, half.y1);
      const [x2, y2] = project(half.x2, half.y2);
      if (half.rgb === null) {
        ctx.strokeStyle = DASH_GREY;
        ctx.setLineDash([4, 3]);
      } else {
        ctx.strokeStyle = rgbCss(half.rgb);
        ctx.setLineDash([]);
      }
      ctx.beginPath();
      ctx.moveTo(x1, y1);
      ctx.lineTo(x2, y2);
      ctx.stroke();
    }
  }

  ctx.globalAlpha = 1;
  ctx.setLineDash([]);
  ctx.fillStyle = MARKER_FILL;
  for (const node of doc.nodes) {
    const [sx, sy] = project(node.x, node.y);
    ctx.beginPath();
    ctx.arc(sx, sy, MARKER_RADIUS, 0, 2 * Math.PI);
    ctx.fill();
  }
  if (state.hover !== null) {
    const node = doc.nodes[state.hover];
    const [sx, sy] = project(node.x, node.y);
    ctx.strokeStyle = "#000000";
    ctx.beginPath();
    ctx.arc(sx, sy, MARKER_RADIUS + 3, 0, 2 * Math.PI);
    ctx.stroke();
  }

  drawLegend(widgets.overlay, doc, state);
  updatePanel(widgets.panel, doc, state);
}

function svgEl(tag: string, attrs: Record<string, string>): SVGElement {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) el.setAttribute(key, value);
  return el;
}

function drawLegend(overlay: SVGSVGElement, doc: GraphDoc, state: ViewState): void {
  overlay.replaceChildren();
  const scheme = schemeFor(doc.kind);
  const defs = svgEl("defs", {});
  const gradient = svgEl("linearGradient", {
    id: "ramp", x1: "0", y1: "0", x2: "1", y2: "0",
  });
  for (let stop = 0; stop <= 9; stop += 1) {
    gradient.appendChild(svgEl("stop", {
      offset: `${(stop / 9) * 100}%`,
      "stop-color": rgbHex(colourOf(scheme, state.cap, (stop / 9) * state.cap)),
    }));
  }
  defs.appendChild(gradient);
  overlay.appendChild(defs);

  const x = 12;
  const y = 12;
  overlay.appendChild(svgEl("rect", {
    x: `${x}`, y: `${y}`, width: "120", height: "12",
    fill: "url(#ramp)", stroke: "#999999", "stroke-width": "0.5",
  }));
  const text = (content: string, ty: number, tx = x) => {
    const el = svgEl("text", {
      x: `${tx}`, y: `${ty}`, "font-size": "11px",
      "font-family": "sans-serif", fill: "#333333",
    });
    el.textContent = content;
    overlay.appendChild(el);
  };
  text("0", y + 24);
  text(`≥ ${state.cap}`, y + 24, x + 94);
  text(`kappa = ${doc.kappa}`, y + 42);
  text(`F = ${doc.report.global_F.toFixed(3)}`, y + 58);
  text(`M = ${doc.report.global_M.toFixed(3)}`, y + 74);
  const shown = Number.isFinite(state.threshold)
    ? `threshold ≤ ${state.threshold}`
    : "threshold: all";
  text(shown, y + 90);
}

function updatePanel(panel: HTMLElement, doc: GraphDoc, state: ViewState): void {
  if (state.hover === null) {
    panel.hidden = true;
    panel.replaceChildren();
    return;
  }
  const node = doc.nodes[state.hover];
  const f = doc.report.pointwise_F[state.hover];
  const m = doc.report.pointwise_M[state.hover];
  panel.hidden = false;
  panel.replaceChildren();
  const title = document.createElement("strong");
  title.textContent = node.label ?? `point ${node.id}`;
  const stats = document.createElement("div");
  stats.textContent = `F_i = ${f}  M_i = ${m}`;
  panel.append(title, stats);
}
