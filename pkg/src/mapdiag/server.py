"""Local HTTP server: graph JSON on demand plus static viewer assets.

Rank matrices are computed once per session; a request for a new kappa
only re-thresholds them, so interactive kappa sweeps stay cheap.  Served
JSON uses the same canonical serializer as batch output, byte for byte.

Endpoints:

* ``GET /api/meta`` - dataset summary (N, kappa range, defaults).
* ``GET /api/graph?kind=retrieval&model=tc&kappa=10`` - graph JSON.
* anything else - static files from the viewer directory, or a
  placeholder page when none is configured.
"""

from __future__ import annotations

import json
import mimetypes
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlsplit

from .graphs import (
    GraphKind,
    NeighbourhoodGraph,
    build_relevance_graph,
    build_retrieval_graph,
    dumps_graph_json,
)
from .model import (
    DistanceMatrix,
    NeighbourhoodIndex,
    PointSet,
    Space,
    compute_distances,
    compute_ranks,
)
from .penalties import PenaltyKind

__all__ = ["MODEL_CODES", "KIND_CODES", "AnalysisSession", "build_server"]

MODEL_CODES = {
    "pr": PenaltyKind.PRECISION_RECALL,
    "tc": PenaltyKind.TRUSTWORTHINESS_CONTINUITY,
}
KIND_CODES = {
    "retrieval": GraphKind.RETRIEVAL,
    "relevance": GraphKind.RELEVANCE,
}

PLACEHOLDER_PAGE = """<!DOCTYPE html>
<html><head><meta charset="utf-8"><title>embedding diagnostics</title></head>
<body>
<h1>embedding diagnostics server</h1>
<p>No viewer assets are installed. The API is available at
<a href="/api/meta">/api/meta</a> and
<a href="/api/graph?kind=retrieval&amp;model=tc&amp;kappa=10">/api/graph</a>.</p>
<p>Build the browser viewer and pass its output directory via
<code>--viewer-dir</code> to serve it here.</p>
</body></html>
"""


class AnalysisSession:
    """Immutable per-dataset state shared across requests."""

    def __init__(
        self,
        data: PointSet | DistanceMatrix,
        embedding: PointSet,
        default_kappa: int = 10,
        default_cap: float = 20.0,
    ):
        if data.space is not Space.DATA:
            raise ValueError("data input must carry the data space tag")
        if embedding.space is not Space.EMBEDDING:
            raise ValueError("embedding input must carry the embedding space tag")
        if len(data) != len(embedding):
            raise ValueError(
                f"point counts differ: data has {len(data)}, "
                f"embedding has {len(embedding)}"
            )
        data_dist = data if isinstance(data, DistanceMatrix) else compute_distances(data)
        self.data_ranks = compute_ranks(data_dist)
        self.emb_ranks = compute_ranks(compute_distances(embedding))
        self.points = embedding
        self.default_kappa = default_kappa
        self.default_cap = default_cap

    def __len__(self) -> int:
        return len(self.points)

    def indices(self, kappa: int) -> tuple[NeighbourhoodIndex, NeighbourhoodIndex]:
        return (NeighbourhoodIndex(self.data_ranks, kappa),
                NeighbourhoodIndex(self.emb_ranks, kappa))

    def graph(self, kind: GraphKind, model: PenaltyKind, kappa: int) -> NeighbourhoodGraph:
        data_nbr, emb_nbr = self.indices(kappa)
        builder = (build_retrieval_graph if kind is GraphKind.RETRIEVAL
                   else build_relevance_graph)
        return builder(self.points, data_nbr, emb_nbr, model)

    def graph_json_bytes(self, kind: GraphKind, model: PenaltyKind, kappa: int) -> bytes:
        return dumps_graph_json(self.graph(kind, model, kappa)).encode("utf-8")

    def meta(self) -> dict:
        return {
            "n": len(self),
            "kappa_min": 1,
            "kappa_max": len(self) - 1,
            "default_kappa": self.default_kappa,
            "default_cap": self.default_cap,
            "kinds": sorted(KIND_CODES),
            "models": sorted(MODEL_CODES),
            "has_labels": self.points.labels is not None,
        }


class _Handler(BaseHTTPRequestHandler):
    server_version = "mapdiag/0.1"

    @property
    def session(self) -> AnalysisSession:
        return self.server.session  # type: ignore[attr-defined]

    def log_message(self, format, *args):
        pass  # keep pytest and CLI output clean

    def _send(self, status: int, body: bytes, content_type: str) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Cache-Control", "no-store")
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, status: int, payload: dict | bytes) -> None:
        body = payload if isinstance(payload, bytes) else json.dumps(
            payload, separators=(",", ":")).encode("utf-8")
        self._send(status, body, "application/json; charset=utf-8")

    def _fail(self, status: int, message: str) -> None:
        self._send_json(status, {"error": message})

    def do_GET(self):
        url = urlsplit(self.path)
        if url.path == "/api/meta":
            self._send_json(200, self.session.meta())
        elif url.path == "/api/graph":
            self._graph_endpoint(parse_qs(url.query))
        else:
            self._static(url.path)

    def _graph_endpoint(self, query: dict[str, list[str]]) -> None:
        kind_code = query.get("kind", [None])[0]
        if kind_code is None:
            self._fail(400, "missing query parameter: kind")
            return
        if kind_code not in KIND_CODES:
            self._fail(404, f"unknown graph kind {kind_code!r}; "
                            f"expected one of {sorted(KIND_CODES)}")
            return
        model_code = query.get("model", ["tc"])[0]
        if model_code not in MODEL_CODES:
            self._fail(400, f"unknown model {model_code!r}; "
                            f"expected one of {sorted(MODEL_CODES)}")
            return
        raw_kappa = query.get("kappa", [str(self.session.default_kappa)])[0]
        try:
            kappa = int(raw_kappa)
        except ValueError:
            self._fail(400, f"kappa must be an integer, got {raw_kappa!r}")
            return
        n = len(self.session)
        if not 1 <= kappa <= n - 1:
            self._fail(400, f"kappa must be in [1, {n - 1}], got {kappa}")
            return
        body = self.session.graph_json_bytes(
            KIND_CODES[kind_code], MODEL_CODES[model_code], kappa)
        self._send_json(200, body)

    def _static(self, path: str) -> None:
        viewer_dir = self.server.viewer_dir  # type: ignore[attr-defined]
        if viewer_dir is None:
            if path in ("/", "/index.html"):
                self._send(200, PLACEHOLDER_PAGE.encode("utf-8"),
                           "text/html; charset=utf-8")
            else:
                self._fail(404, f"no such path: {path}")
            return
        base = Path(viewer_dir).resolve()
        relative = path.lstrip("/") or "index.html"
        target = (base / relative).resolve()
        if not target.is_relative_to(base):
            self._fail(404, f"no such path: {path}")
            return
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            self._fail(404, f"no such path: {path}")
            return
        content_type = mimetypes.guess_type(target.name)[0] or "application/octet-stream"
        self._send(200, target.read_bytes(), content_type)


def build_server(
    session: AnalysisSession,
    port: int = 8000,
    viewer_dir: str | Path | None = None,
    host: str = "127.0.0.1",
) -> ThreadingHTTPServer:
    """Bound but not yet running; call serve_forever() (port 0 picks a
    free port, read it from server_address)."""
    server = ThreadingHTTPServer((host, port), _Handler)
    server.session = session  # type: ignore[attr-defined]
    server.viewer_dir = viewer_dir  # type: ignore[attr-defined]
    return server
