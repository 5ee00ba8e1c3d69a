/** Pure scene computation: which edges a threshold reveals, the split
 * half-segments to paint, and the node transform.  Penalties arrive
 * from the server and are never recomputed here. */

import { colourOf, schemeFor, Rgb } from "./colour.js";
import { GraphDoc, GraphEdge } from "./types.js";

export const DASH_GREY = "#808080";

/** Distinct penalty values in increasing order: the stepped positions
 * of the threshold slider, so each step reveals one penalty level. */
export function thresholdSteps(edges: readonly GraphEdge[]): number[] {
  return [...new Set(edges.map((e) => e.penalty))].sort((a, b) => a - b);
}

/** Edges revealed at a threshold, in increasing-penalty order. */
export function visibleEdges(
  edges: readonly GraphEdge[],
  threshold: number,
): GraphEdge[] {
  return edges
    .filter((e) => e.penalty <= threshold)
    .sort((a, b) => a.penalty - b.penalty);
}

export interface HalfSegment {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  /** Solid ramp colour, or null for the dashed missing direction. */
  rgb: Rgb | null;
  src: number;
  dst: number;
}

/** Split-segment geometry for one directed edge: the half adjacent to
 * the source carries this direction's penalty colour; when the reverse
 * relation does not exist its half is dashed grey instead of coloured
 * (the reverse direction otherwise paints it itself). */
export function halvesOf(
  doc: GraphDoc,
  edge: GraphEdge,
  cap: number,
): HalfSegment[] {
  const a = doc.nodes[edge.src];
  const b = doc.nodes[edge.dst];
  const mx = (a.x + b.x) / 2;
  const my = (a.y + b.y) / 2;
  const rgb = colourOf(schemeFor(doc.kind), cap, edge.penalty);
  const out: HalfSegment[] = [
    { x1: a.x, y1: a.y, x2: mx, y2: my, rgb, src: edge.src, dst: edge.dst },
  ];
  if (!edge.reverse_exists) {
    out.push({
      x1: mx, y1: my, x2: b.x, y2: b.y, rgb: null,
      src: edge.src, dst: edge.dst,
    });
  }
  return out;
}

export function incidentEdges(
  doc: GraphDoc,
  pointId: number,
): Set<number> {
  const hits = new Set<number>();
  doc.edges.forEach((e, index) => {
    if (e.src === pointId || e.dst === pointId) hits.add(index);
  });
  return hits;
}

export interface Transform {
  scale: number;
  offsetX: number;
  offsetY: number;
}

/** Fit the node bounding box into a width x height canvas with a
 * margin, y up in data becoming y down on screen. */
export function fitTransform(
  doc: GraphDoc,
  width: number,
  height: number,
  margin = 30,
): Transform {
  const xs = doc.nodes.map((n) => n.x);
  const ys = doc.nodes.map((n) => n.y);
  const minX = Math.min(...xs);
  const maxX = Math.max(...xs);
  const minY = Math.min(...ys);
  const maxY = Math.max(...ys);
  const spanX = maxX - minX;
  const spanY = maxY - minY;
  const span = Math.max(spanX, spanY);
  const scale = span > 0 ? (Math.min(width, height) - 2 * margin) / span : 1;
  return {
    scale,
    offsetX: width / 2 - scale * (minX + spanX / 2),
    offsetY: height / 2 + scale * (minY + spanY / 2),
  };
}

export function toScreen(
  t: Transform,
  x: number,
  y: number,
  panX = 0,
  panY = 0,
  zoom = 1,
): [number, number] {
  return [
    (t.offsetX + t.scale * x) * zoom + panX,
    (t.offsetY - t.scale * y) * zoom + panY,
  ];
}

/** Nearest node within `radius` screen pixels, or null. */
export function hitTest(
  doc: GraphDoc,
  t: Transform,
  px: number,
  py: number,
  panX: number,
  panY: number,
  zoom: number,
  radius = 8,
): number | null {
  let best: number | null = null;
  let bestDist = radius * radius;
  for (const node of doc.nodes) {
    const [sx, sy] = toScreen(t, node.x, node.y, panX, panY, zoom);
    const d = (sx - px) * (sx - px) + (sy - py) * (sy - py);
    if (d <= bestDist) {
      bestDist = d;
      best = node.id;
    }
  }
  return best;
}
