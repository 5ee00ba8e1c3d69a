"""Command-line pipeline: ingest -> compute -> export -> serve.

Commands:

* ``compute``: write graph JSON and the quality report.
* ``render``: compute plus SVG output for both graphs.
* ``serve``: start the local HTTP server for the browser viewer.

Exit codes: 0 success, 1 unreadable input, 2 constraint violation
(mismatched point counts, kappa out of range).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .bundling import BundleConfig, bundle
from .graphs import GraphKind, dumps_graph_json
from .ingest import ParseError, load_data_input, load_points
from .model import Space
from .penalties import PenaltyKind
from .render import Background, ColourScale, ColourScheme, RenderSpec, render_graph
from .server import KIND_CODES, MODEL_CODES, AnalysisSession, build_server

__all__ = ["RunConfig", "run", "serve", "main"]

ALL_OUTPUTS = frozenset({"svg_retrieval", "svg_relevance", "json", "report"})


@dataclass(frozen=True)
class RunConfig:
    data_input: Path
    embedding_input: Path
    kappa: int = 10
    model: PenaltyKind = PenaltyKind.TRUSTWORTHINESS_CONTINUITY
    cap: float = 20.0
    out_dir: Path = Path("out")
    outputs: frozenset[str] = ALL_OUTPUTS
    data_kind: str = "auto"
    bundle: BundleConfig | None = None
    scheme_override: ColourScheme | None = None
    render_spec: RenderSpec = field(default_factory=RenderSpec)

    def __post_init__(self):
        if Path(self.data_input) == Path(self.embedding_input):
            raise ValueError("data and embedding inputs must be distinct files")
        if not self.cap > 0:
            raise ValueError(f"cap must be positive, got {self.cap}")
        unknown = self.outputs - ALL_OUTPUTS
        if unknown:
            raise ValueError(f"unknown outputs: {sorted(unknown)}")


def _load_session(config: RunConfig) -> AnalysisSession | int:
    """AnalysisSession, or an exit code on failure (message on stderr)."""
    try:
        data = load_data_input(config.data_input, config.data_kind)
    except (OSError, ParseError) as exc:
        print(f"cannot read data input {config.data_input}: {exc}", file=sys.stderr)
        return 1
    try:
        embedding = load_points(config.embedding_input, Space.EMBEDDING)
    except (OSError, ParseError) as exc:
        print(f"cannot read embedding input {config.embedding_input}: {exc}",
              file=sys.stderr)
        return 1
    n = len(data)
    if n != len(embedding):
        print(f"point counts differ: {config.data_input} has {n} points, "
              f"{config.embedding_input} has {len(embedding)}", file=sys.stderr)
        return 2
    if config.kappa < 1:
        print(f"kappa must be >= 1, got {config.kappa}", file=sys.stderr)
        return 2
    if config.kappa >= n:
        print(f"kappa must be < N: got kappa={config.kappa} with N={n} points "
              f"from {config.data_input}", file=sys.stderr)
        return 2
    return AnalysisSession(data, embedding,
                           default_kappa=config.kappa, default_cap=config.cap)


def _scale_for(config: RunConfig, kind: GraphKind) -> ColourScale:
    if config.scheme_override is not None:
        return ColourScale(config.scheme_override, config.cap)
    scheme = ColourScheme.GNBU if kind is GraphKind.RETRIEVAL else ColourScheme.ORRD
    return ColourScale(scheme, config.cap)


def run(config: RunConfig) -> int:
    """Batch pipeline; returns the process exit code."""
    session = _load_session(config)
    if isinstance(session, int):
        return session
    config.out_dir.mkdir(parents=True, exist_ok=True)

    summary = None
    for code, kind in sorted(KIND_CODES.items()):
        graph = session.graph(kind, config.model, config.kappa)
        summary = graph.report
        if "json" in config.outputs:
            path = config.out_dir / f"{code}.json"
            path.write_text(dumps_graph_json(graph) + "\n", encoding="utf-8")
        if f"svg_{code}" in config.outputs:
            scale = _scale_for(config, kind)
            bundles = (bundle(graph, config.bundle, scale)
                       if config.bundle is not None else None)
            svg = render_graph(graph, scale, config.render_spec, bundles=bundles)
            (config.out_dir / f"{code}.svg").write_text(svg, encoding="utf-8")
    if "report" in config.outputs:
        (config.out_dir / "report.json").write_text(
            summary.to_json() + "\n", encoding="utf-8")

    model_code = {v: k for k, v in MODEL_CODES.items()}[config.model]
    print(f"kappa={config.kappa} model={model_code} "
          f"F={summary.global_F:.3f} M={summary.global_M:.3f}")
    return 0


def serve(config: RunConfig, port: int = 8000,
          viewer_dir: str | Path | None = None) -> int:
    """Long-running local server; returns only on shutdown or error."""
    session = _load_session(config)
    if isinstance(session, int):
        return session
    try:
        server = build_server(session, port=port, viewer_dir=viewer_dir)
    except OSError as exc:
        print(f"cannot bind port {port}: {exc}", file=sys.stderr)
        return 1
    host, bound_port = server.server_address[:2]
    print(f"serving on http://{host}:{bound_port}/ (Ctrl-C to stop)", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def _parse_dash(text: str) -> tuple[float, float]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(
            f"dash pattern must be two comma-separated lengths, got {text!r}")
    try:
        on, off = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dash pattern {text!r}") from None
    if on <= 0 or off <= 0:
        raise argparse.ArgumentTypeError("dash lengths must be positive")
    return on, off


def _parse_thresholds(text: str) -> tuple[float, ...]:
    try:
        cuts = tuple(float(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad bin thresholds {text!r}") from None
    if not cuts:
        raise argparse.ArgumentTypeError("bin thresholds must not be empty")
    return cuts


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mapdiag",
        description="Rank-based distortion diagnostics for "
                    "dimensionality-reduction embeddings.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--data", required=True, type=Path,
                        help="data-space coordinates CSV or square distance CSV")
    common.add_argument("--embedding", required=True, type=Path,
                        help="embedding coordinates CSV")
    common.add_argument("--data-kind", choices=("auto", "coords", "distances"),
                        default="auto",
                        help="how to interpret the data input (default: auto)")
    common.add_argument("--kappa", type=int, default=10,
                        help="neighbourhood size (default 10; 4 suits "
                             "continuum-like data)")
    common.add_argument("--model", choices=sorted(MODEL_CODES), default="tc",
                        help="penalty family: pr (precision/recall) or "
                             "tc (trustworthiness/continuity)")
    common.add_argument("--cap", type=float, default=20.0,
                        help="colour saturation cap (default 20)")
    common.add_argument("--out-dir", type=Path, default=Path("out"))

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("compute", parents=[common],
                   help="write graph JSON and the quality report")

    render_p = sub.add_parser("render", parents=[common],
                              help="compute plus SVG output")
    render_p.add_argument("--scheme-override", type=str.lower,
                          choices=[s.value.lower() for s in ColourScheme],
                          help="force one colour scheme for both graphs")
    render_p.add_argument("--dash", type=_parse_dash, default=(4.0, 3.0),
                          metavar="ON,OFF",
                          help="dash pattern for missing directions (default 4,3)")
    render_p.add_argument("--canvas", type=float, default=800.0,
                          help="canvas size in pixels (default 800)")
    render_p.add_argument("--background", choices=[b.value for b in Background],
                          default="circle")
    render_p.add_argument("--bundle", action="store_true",
                          help="draw density-bundled polylines instead of "
                               "split segments")
    render_p.add_argument("--bundle-bins", type=_parse_thresholds, default=(10.0, 20.0),
                          metavar="T1,T2,...",
                          help="penalty bin thresholds (default 10,20)")
    render_p.add_argument("--bundle-iters", type=int, default=10)
    render_p.add_argument("--bundle-resolution", type=int, default=512)

    serve_p = sub.add_parser("serve", parents=[common],
                             help="serve graph JSON and the browser viewer")
    serve_p.add_argument("--port", type=int, default=8000)
    serve_p.add_argument("--viewer-dir", type=Path, default=None,
                         help="directory with built viewer assets")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    outputs = {"json", "report"}
    bundle_config = None
    spec = RenderSpec()
    scheme_override = None
    if args.command == "render":
        outputs |= {"svg_retrieval", "svg_relevance"}
        spec = RenderSpec(dash_pattern=args.dash, canvas_size=args.canvas,
                          background=Background(args.background))
        if args.scheme_override:
            by_code = {s.value.lower(): s for s in ColourScheme}
            scheme_override = by_code[args.scheme_override]
        if args.bundle:
            bundle_config = BundleConfig.from_thresholds(
                args.bundle_bins,
                iterations=args.bundle_iters,
                grid_resolution=args.bundle_resolution)
    return RunConfig(
        data_input=args.data,
        embedding_input=args.embedding,
        kappa=args.kappa,
        model=MODEL_CODES[args.model],
        cap=args.cap,
        out_dir=args.out_dir,
        outputs=frozenset(outputs),
        data_kind=args.data_kind,
        bundle=bundle_config,
        scheme_override=scheme_override,
        render_spec=spec,
    )


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = _config_from_args(args)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    if args.command == "serve":
        return serve(config, port=args.port, viewer_dir=args.viewer_dir)
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
