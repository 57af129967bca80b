"""``dlwt`` command-line front end.

Exit codes: 0 success, 1 domain error (bad file, bad dimensions, failed
check), 2 usage error (bad flags or flag values).
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from .boundary import BoundaryMode
from .container import encode, read_container, write_container
from .directions import direction_vectors
from .edge import EdgePipelineConfig, Threshold, detect_edges, keep_levels, zero_coarse
from .equivalent import FORMS, dominant_orientation, equivalent_filters, frequency_response, required_probe_size
from .filters import SUPPORTED_ORDERS
from .imaging import load_image, normalize_to_8bit, save_image
from .transform import (
    LiftingConfig,
    MergePolicy,
    coefficient_count,
    coset_spread,
    dlwt_forward,
    dlwt_inverse,
)

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2
MIN_FREQ_SIZE = 16


class UsageError(Exception):
    """Flag values that parse but are not acceptable."""


def _lifting(args) -> LiftingConfig:
    update = args.update_order if args.update_order is not None else min(2, args.order)
    if update > args.order:
        raise UsageError(f"--update-order ({update}) must not exceed --order ({args.order})")
    return LiftingConfig(args.order, update, getattr(args, "scale", 1.0), args.boundary)


def _check_levels(levels: int) -> None:
    if levels < 1:
        raise UsageError(f"--levels must be >= 1, got {levels}")


def _write_json(path: Path, payload) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def cmd_decompose(args) -> int:
    _check_levels(args.levels)
    cfg = _lifting(args)
    image = load_image(args.input)
    decomp = dlwt_forward(image.pixels, args.levels, cfg)
    size = write_container(args.output, decomp, args.merge)
    print(f"wrote {args.output}: {decomp.coefficient_count()} coefficients, {size} bytes")
    if args.band_dir:
        out = Path(args.band_dir)
        out.mkdir(parents=True, exist_ok=True)
        bands = {"coarse": decomp.coarse}
        for level in decomp.detail_levels():
            for k in decomp.directions.indices:
                bands[f"d_L{level}_k{k:02d}"] = decomp.details[(level, k)]
        sidecar = {}
        for name, band in bands.items():
            img, norm = normalize_to_8bit(band)
            save_image(img, out / f"{name}.pgm")
            sidecar[f"{name}.pgm"] = norm
        _write_json(out / "normalization.json", sidecar)
        print(f"wrote {len(bands)} band images to {out}")
    return EXIT_OK


def _parse_keep(text: str, levels: int, top: int) -> list[int]:
    try:
        wanted = sorted({int(v) for v in text.split(",") if v.strip()})
    except ValueError:
        raise UsageError(f"--keep-levels expects comma-separated integers, got {text!r}") from None
    bad = [v for v in wanted if not 1 <= v <= levels]
    if bad:
        raise ValueError(f"--keep-levels entries must lie in 1..{levels} (1 = finest), got {bad}")
    return [top - v for v in wanted]


def cmd_reconstruct(args) -> int:
    decomp, stored = read_container(args.input)
    try:
        merge = MergePolicy.parse(args.merge) if args.merge else stored
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.keep_levels is not None:
        decomp = keep_levels(decomp, _parse_keep(args.keep_levels, decomp.levels, decomp.top_level))
    if args.zero_coarse:
        decomp = zero_coarse(decomp)
    recon = dlwt_inverse(decomp, merge)
    save_image(np.abs(recon) if args.zero_coarse else recon, args.output)
    print(f"wrote {args.output} ({decomp.width}x{decomp.height}, merge={merge})")
    return EXIT_OK


def cmd_edges(args) -> int:
    _check_levels(args.levels)
    if args.smooth_sigma < 0:
        raise UsageError("--smooth-sigma must be >= 0")
    try:
        if args.abs_threshold is not None:
            threshold = Threshold("absolute", args.abs_threshold)
        else:
            threshold = Threshold("relative", args.threshold)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    cfg = EdgePipelineConfig(args.levels, _lifting(args), args.smooth_sigma, threshold)
    image = load_image(args.input)
    start = time.perf_counter()
    edges = detect_edges(image.pixels, cfg)
    elapsed = time.perf_counter() - start
    save_image(edges.to_image(), args.output)
    print(f"threshold: {edges.threshold:.6g}")
    print(f"edge pixels: {int(edges.mask.sum())} of {edges.mask.size}")
    print(f"time: {elapsed * 1000:.1f} ms")
    return EXIT_OK


def cmd_freqresp(args) -> int:
    if args.size < MIN_FREQ_SIZE:
        raise UsageError(f"--size must be >= {MIN_FREQ_SIZE}, got {args.size}")
    if args.spline_order < 1:
        raise UsageError(f"--spline-order must be >= 1, got {args.spline_order}")
    dirs = direction_vectors()
    if args.band == "all":
        bands = list(dirs.indices)
    else:
        try:
            bands = [int(args.band)]
        except ValueError:
            raise UsageError(f"--band expects 1..12 or 'all', got {args.band!r}") from None
        if bands[0] not in dirs.indices:
            raise UsageError(f"--band expects 1..12 or 'all', got {args.band!r}")
    cfg = LiftingConfig(args.pred_order, min(2, args.pred_order))
    probe = required_probe_size(args.form, cfg, args.spline_order, dirs)
    filters = equivalent_filters(args.form, cfg, args.spline_order, probe, dirs)
    out = Path(args.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    sidecar = {}
    for k in bands:
        resp = frequency_response(filters.highpass_filter(k), args.size)
        img, norm = normalize_to_8bit(resp.magnitude)
        name = f"G_k{k:02d}.pgm"
        save_image(img, out / name)
        angle = dominant_orientation(resp)
        sidecar[name] = {**norm, "band": k, "argmax_angle_deg": angle}
        print(f"band {k:2d}: peak {norm['max']:.4f} at {angle:6.1f} deg -> {out / name}")
    _write_json(out / "normalization.json", sidecar)
    return EXIT_OK


def cmd_verify(args) -> int:
    _check_levels(args.levels)
    cfg = _lifting(args)
    x = load_image(args.input).pixels
    decomp = dlwt_forward(x, args.levels, cfg)
    tol = 1e-9 * (1.0 + float(np.abs(x).max()))
    rows = []

    err = float(np.abs(dlwt_inverse(decomp) - x).max())
    rows.append(("round trip", err <= tol, f"max |x - x'| = {err:.3g}"))

    worst, c = 0.0, x
    for _ in range(args.levels):
        nxt = dlwt_forward(c, 1, cfg, top_level=args.levels)
        gap = abs(nxt.coarse.sum() - c.sum() / 4) / (1.0 + abs(c.sum()))
        worst, c = max(worst, gap), nxt.coarse
    rows.append(("average preservation", worst <= 1e-9, f"max relative gap = {worst:.3g}"))

    h, w = x.shape
    expected = coefficient_count(w, h, args.levels)
    payload = len(encode(decomp).split(b"\n", 2)[2])
    ok = decomp.coefficient_count() == expected and payload == 8 * expected
    rows.append(("coefficient count", ok, f"{decomp.coefficient_count()} stored, {expected} expected"))

    spread, c = 0.0, x
    for _ in range(args.levels):
        spread = max(spread, coset_spread(c, cfg))
        c = dlwt_forward(c, 1, cfg, top_level=args.levels).coarse
    rows.append(("coset consistency", spread <= tol, f"max candidate spread = {spread:.3g}"))

    width = max(len(name) for name, _, _ in rows)
    for name, passed, detail in rows:
        print(f"{name:<{width}}  {'PASS' if passed else 'FAIL'}  {detail}")
    return EXIT_OK if all(p for _, p, _ in rows) else EXIT_DOMAIN


def _add_lifting_flags(p: argparse.ArgumentParser, boundary: bool = True) -> None:
    p.add_argument("--levels", "-J", type=int, default=1, help="analysis levels J (>= 1)")
    p.add_argument("--order", "-M", type=int, default=2, choices=SUPPORTED_ORDERS, help="prediction order M")
    p.add_argument("--update-order", type=int, choices=SUPPORTED_ORDERS,
                   help="update order M~ (default: min(2, M))")
    if boundary:
        p.add_argument("--boundary", choices=[m.value for m in BoundaryMode], default="periodic")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dlwt", description="Redundant 12-direction lifting wavelet transform.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="analyse an image into a DLWC coefficient container")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--output", "-o", required=True, help="container path (.dlwc)")
    _add_lifting_flags(p)
    p.add_argument("--scale", "-K", type=float, default=1.0, help="lifting scale K")
    p.add_argument("--merge", default="average", help="default merge policy stored in the container")
    p.add_argument("--band-dir", help="also write every band as a normalized 8-bit PGM here")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("reconstruct", help="invert a DLWC container to an image")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--output", "-o", required=True)
    p.add_argument("--merge", help="average, first or k=<index> (default: the container's)")
    p.add_argument("--zero-coarse", action="store_true", help="null the coarse band; writes |reconstruction|")
    p.add_argument("--keep-levels", help="comma-separated detail levels to keep, 1 = finest")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("edges", help="binary edge map from detail-only reconstruction")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--output", "-o", required=True)
    _add_lifting_flags(p)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--threshold", type=float, default=0.1, help="relative threshold tau in (0, 1)")
    group.add_argument("--abs-threshold", type=float, help="absolute threshold on the edge energy")
    p.add_argument("--smooth-sigma", type=float, default=0.0, help="Gaussian pre-smoothing sigma (0 = off)")
    p.set_defaults(func=cmd_edges)

    p = sub.add_parser("freqresp", help="magnitude responses of the equivalent high-pass filters")
    p.add_argument("--pred-order", type=int, default=2, choices=SUPPORTED_ORDERS)
    p.add_argument("--spline-order", type=int, default=2, help="B-spline order r (update-first form)")
    p.add_argument("--form", choices=FORMS, default="update-first")
    p.add_argument("--band", default="all", help="direction index 1..12 or 'all'")
    p.add_argument("--size", type=int, default=64, help="frequency grid size S (>= 16)")
    p.add_argument("--output-dir", "-o", required=True)
    p.set_defaults(func=cmd_freqresp)

    p = sub.add_parser("verify", help="run the invariant checks on an image")
    p.add_argument("--input", "-i", required=True)
    _add_lifting_flags(p, boundary=False)
    p.set_defaults(func=cmd_verify, boundary="periodic")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"dlwt {args.command}: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        # ImageFormatError and ContainerError are ValueErrors
        print(f"dlwt {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
