import { GraphKindCode, MetaDoc, ModelCode, ViewState } from "./types.js";

export function initialState(meta: MetaDoc): ViewState {
  return {
    kind: "retrieval",
    model: "tc",
    kappa: meta.default_kappa,
    cap: meta.default_cap,
    threshold: Infinity,
    hover: null,
    panX: 0,
    panY: 0,
    zoom: 1,
  };
}

export function clampKappa(meta: MetaDoc, kappa: number): number {
  return Math.min(Math.max(Math.round(kappa), meta.kappa_min), meta.kappa_max);
}

export function setKind(state: ViewState, kind: GraphKindCode): ViewState {
  return { ...state, kind };
}

export function setModel(state: ViewState, model: ModelCode): ViewState {
  return { ...state, model };
}

export function setKappa(state: ViewState, meta: MetaDoc, kappa: number): ViewState {
  return { ...state, kappa: clampKappa(meta, kappa) };
}

export function setCap(state: ViewState, cap: number): ViewState {
  if (!(cap > 0)) throw new RangeError(`cap must be positive, got ${cap}`);
  return { ...state, cap };
}

export function setThreshold(state: ViewState, threshold: number): ViewState {
  if (threshold < 0) throw new RangeError(`threshold must be >= 0, got ${threshold}`);
  return { ...state, threshold };
}

export function setHover(state: ViewState, hover: number | null): ViewState {
  return { ...state, hover };
}

export function panBy(state: ViewState, dx: number, dy: number): ViewState {
  return { ...state, panX: state.panX + dx, panY: state.panY + dy };
}

/** Zoom about a screen anchor point so the data under the cursor stays
 * under the cursor. */
export function zoomAt(
  state: ViewState,
  factor: number,
  anchorX: number,
  anchorY: number,
): ViewState {
  const zoom = Math.min(Math.max(state.zoom * factor, 0.1), 40);
  const applied = zoom / state.zoom;
  return {
    ...state,
    zoom,
    panX: anchorX - (anchorX - state.panX) * applied,
    panY: anchorY - (anchorY - state.panY) * applied,
  };
}
