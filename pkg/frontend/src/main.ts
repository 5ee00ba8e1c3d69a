import { debounce, fetchGraph, fetchMeta, LatestWins } from "./api.js";
import { thresholdSteps } from "./scene.js";
import {
  initialState,
  panBy,
  setCap,
  setHover,
  setKappa,
  setKind,
  setModel,
  setThreshold,
  zoomAt,
} from "./state.js";
import { GraphDoc, GraphKindCode, MetaDoc, ModelCode, ViewState } from "./types.js";
import {
  baseTransform,
  clearBanner,
  drawScene,
  showBanner,
  Widgets,
} from "./view.js";
import { hitTest, Transform } from "./scene.js";

const KAPPA_DEBOUNCE_MS = 150;

function element<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

function main(): void {
  const widgets: Widgets = {
    canvas: element<HTMLCanvasElement>("edge-layer"),
    overlay: element<HTMLElement>("overlay") as unknown as SVGSVGElement,
    panel: element("hover-panel"),
    banner: element("error-banner"),
  };
  const kindSelect = element<HTMLSelectElement>("kind");
  const modelSelect = element<HTMLSelectElement>("model");
  const kappaSlider = element<HTMLInputElement>("kappa");
  const kappaLabel = element("kappa-value");
  const capInput = element<HTMLInputElement>("cap");
  const thresholdSlider = element<HTMLInputElement>("threshold");
  const thresholdLabel = element("threshold-value");

  let meta: MetaDoc | null = null;
  let doc: GraphDoc | null = null;
  let state: ViewState | null = null;
  let transform: Transform | null = null;
  let steps: number[] = [];
  const gate = new LatestWins();

  function repaint(): void {
    if (doc && state && transform) drawScene(widgets, doc, state, transform);
  }

  function applyDocument(fresh: GraphDoc): void {
    doc = fresh;
    steps = thresholdSteps(fresh.edges);
    // Slider positions 0..K-1 step through distinct penalties; the last
    // position K means "everything" for a crisp final reveal.
    thresholdSlider.min = "0";
    thresholdSlider.max = `${steps.length}`;
    thresholdSlider.value = `${steps.length}`;
    if (state) {
      state = setThreshold(setHover(state, null), Infinity);
    }
    transform = baseTransform(fresh, widgets.canvas);
    thresholdLabel.textContent = "all";
    repaint();
  }

  async function reload(): Promise<void> {
    if (!state) return;
    const request = state;
    try {
      const fresh = await gate.run(() =>
        fetchGraph("", request.kind, request.model, request.kappa));
      if (fresh === null) return; // superseded by a newer request
      clearBanner(widgets);
      applyDocument(fresh);
    } catch (err) {
      showBanner(widgets, err instanceof Error ? err.message : String(err));
    }
  }

  const debouncedReload = debounce(reload, KAPPA_DEBOUNCE_MS);

  kindSelect.addEventListener("change", () => {
    if (!state) return;
    state = setKind(state, kindSelect.value as GraphKindCode);
    void reload();
  });
  modelSelect.addEventListener("change", () => {
    if (!state) return;
    state = setModel(state, modelSelect.value as ModelCode);
    void reload();
  });
  kappaSlider.addEventListener("input", () => {
    if (!state || !meta) return;
    state = setKappa(state, meta, Number(kappaSlider.value));
    kappaLabel.textContent = `${state.kappa}`;
    debouncedReload();
  });
  capInput.addEventListener("change", () => {
    if (!state) return;
    const cap = Number(capInput.value);
    if (!(cap > 0)) {
      showBanner(widgets, `saturation cap must be positive, got ${capInput.value}`);
      return;
    }
    clearBanner(widgets);
    state = setCap(state, cap);
    repaint();
  });
  thresholdSlider.addEventListener("input", () => {
    if (!state) return;
    const position = Number(thresholdSlider.value);
    const threshold = position >= steps.length ? Infinity : steps[position];
    state = setThreshold(state, threshold);
    thresholdLabel.textContent =
      Number.isFinite(threshold) ? `≤ ${threshold}` : "all";
    repaint();
  });

  widgets.canvas.addEventListener("mousemove", (event) => {
    if (!state || !doc || !transform) return;
    if (event.buttons === 1) {
      state = panBy(state, event.movementX, event.movementY);
      repaint();
      return;
    }
    const rect = widgets.canvas.getBoundingClientRect();
    const hover = hitTest(
      doc, transform,
      event.clientX - rect.left, event.clientY - rect.top,
      state.panX, state.panY, state.zoom);
    if (hover !== state.hover) {
      state = setHover(state, hover);
      repaint();
    }
  });
  widgets.canvas.addEventListener("mouseleave", () => {
    if (!state || state.hover === null) return;
    state = setHover(state, null);
    repaint();
  });
  widgets.canvas.addEventListener("wheel", (event) => {
    if (!state) return;
    event.preventDefault();
    const rect = widgets.canvas.getBoundingClientRect();
    const factor = event.deltaY < 0 ? 1.15 : 1 / 1.15;
    state = zoomAt(state, factor,
                   event.clientX - rect.left, event.clientY - rect.top);
    repaint();
  }, { passive: false });

  fetchMeta("")
    .then((m) => {
      meta = m;
      state = initialState(m);
      kappaSlider.min = `${m.kappa_min}`;
      kappaSlider.max = `${m.kappa_max}`;
      kappaSlider.value = `${m.default_kappa}`;
      kappaLabel.textContent = `${m.default_kappa}`;
      capInput.value = `${m.default_cap}`;
      return reload();
    })
    .catch((err) => {
      showBanner(widgets, err instanceof Error ? err.message : String(err));
    });
}

main();
