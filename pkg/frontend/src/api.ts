import { GraphDoc, GraphKindCode, MetaDoc, ModelCode, validateGraphDoc } from "./types.js";

export async function fetchMeta(base: string): Promise<MetaDoc> {
  const resp = await fetch(`${base}/api/meta`);
  if (!resp.ok) throw new Error(`meta request failed: ${resp.status}`);
  return (await resp.json()) as MetaDoc;
}

export async function fetchGraph(
  base: string,
  kind: GraphKindCode,
  model: ModelCode,
  kappa: number,
): Promise<GraphDoc> {
  const url = `${base}/api/graph?kind=${kind}&model=${model}&kappa=${kappa}`;
  const resp = await fetch(url);
  if (!resp.ok) {
    let detail = `${resp.status}`;
    try {
      const body = (await resp.json()) as { error?: string };
      if (body.error) detail = body.error;
    } catch {
      /* non-JSON error body; keep the status code */
    }
    throw new Error(`graph request failed: ${detail}`);
  }
  return validateGraphDoc(await resp.json());
}

/** Serializes overlapping requests: only the most recent caller's
 * result is delivered, stale responses resolve to null. */
export class LatestWins {
  private seq = 0;

  async run<T>(task: () => Promise<T>): Promise<T | null> {
    const ticket = ++this.seq;
    const result = await task();
    return ticket === this.seq ? result : null;
  }
}

/** Trailing-edge debounce for slider input. */
export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  delayMs: number,
): (...args: A) => void {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    if (timer !== undefined) clearTimeout(timer);
    timer = setTimeout(() => fn(...args), delayMs);
  };
}
