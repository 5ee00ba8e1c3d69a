export type GraphKindCode = "retrieval" | "relevance";
export type ModelCode = "pr" | "tc";
export type EdgeClassCode =
  | "reliable"
  | "false_nbr"
  | "missed_nbr"
  | "non_existent";

export interface GraphNode {
  id: number;
  x: number;
  y: number;
  label: string | null;
}

export interface GraphEdge {
  src: number;
  dst: number;
  penalty: number;
  reverse_exists: boolean;
  class: EdgeClassCode;
}

export interface Report {
  kappa: number;
  model: string;
  normalizer: number;
  pointwise_F: number[];
  pointwise_M: number[];
  global_F: number;
  global_M: number;
}

export interface GraphDoc {
  kind: GraphKindCode;
  kappa: number;
  model: string;
  nodes: GraphNode[];
  edges: GraphEdge[];
  report: Report;
}

export interface MetaDoc {
  n: number;
  kappa_min: number;
  kappa_max: number;
  default_kappa: number;
  default_cap: number;
  kinds: string[];
  models: string[];
  has_labels: boolean;
}

export interface ViewState {
  kind: GraphKindCode;
  model: ModelCode;
  kappa: number;
  cap: number;
  /** Highest penalty currently revealed; Infinity shows everything. */
  threshold: number;
  hover: number | null;
  panX: number;
  panY: number;
  zoom: number;
}

/** Served JSON that does not match the expected shape. */
export class SchemaError extends Error {}

function fail(where: string): never {
  throw new SchemaError(`unexpected graph document shape at ${where}`);
}

function isRecord(v: unknown): v is Record<string, unknown> {
  return typeof v === "object" && v !== null && !Array.isArray(v);
}

/** Validate the whole document up front so a mismatched server version
 * produces an error banner instead of a partial render. */
export function validateGraphDoc(doc: unknown): GraphDoc {
  if (!isRecord(doc)) fail("root");
  if (doc.kind !== "retrieval" && doc.kind !== "relevance") fail("kind");
  if (typeof doc.kappa !== "number") fail("kappa");
  if (typeof doc.model !== "string") fail("model");
  if (!Array.isArray(doc.nodes)) fail("nodes");
  if (!Array.isArray(doc.edges)) fail("edges");
  for (const node of doc.nodes) {
    if (!isRecord(node)) fail("nodes[]");
    if (typeof node.id !== "number" || typeof node.x !== "number"
        || typeof node.y !== "number") fail("nodes[]");
    if (node.label !== null && typeof node.label !== "string") fail("label");
  }
  for (const edge of doc.edges) {
    if (!isRecord(edge)) fail("edges[]");
    if (typeof edge.src !== "number" || typeof edge.dst !== "number"
        || typeof edge.penalty !== "number"
        || typeof edge.reverse_exists !== "boolean") fail("edges[]");
    if (edge.class !== "reliable" && edge.class !== "false_nbr"
        && edge.class !== "missed_nbr" && edge.class !== "non_existent") {
      fail("edges[].class");
    }
  }
  const report = doc.report;
  if (!isRecord(report)) fail("report");
  if (typeof report.normalizer !== "number"
      || typeof report.global_F !== "number"
      || typeof report.global_M !== "number"
      || !Array.isArray(report.pointwise_F)
      || !Array.isArray(report.pointwise_M)) fail("report");
  if (report.pointwise_F.length !== doc.nodes.length
      || report.pointwise_M.length !== doc.nodes.length) fail("report size");
  return doc as unknown as GraphDoc;
}
