"""Command-line entry point.

Subcommands: annotate, eval, boundary, loss-check, serve.
Exit codes: 0 success, 1 partial/complete failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .boundary import DEFAULT_ALPHA, extract_boundary, make_weight_map
from .categories import CATEGORY_NAMES
from .dataset import SPLITS, scan_dataset
from .errors import FaceParseError
from .labelio import read_label_map, write_mask
from .losses import (
    DEFAULT_LAMBDAS,
    LossWeights,
    boundary_loss,
    fusion_loss,
    semantic_loss,
    total_loss,
)
from .metrics import merged_scores
from .pipeline import annotate_dataset
from .schema import default_schema, load_part_schema

def _load_schema(path: str | None):
    return load_part_schema(Path(path)) if path else default_schema()


def _cmd_annotate(args) -> int:
    manifest = scan_dataset(args.root)
    schema = _load_schema(args.schema)
    masks_dir = None if args.masks in (None, "none") else Path(args.masks)
    splits = SPLITS if args.split == "all" else (args.split,)
    results = annotate_dataset(
        manifest, schema, masks_dir, Path(args.out),
        splits=splits, workers=args.workers,
    )
    failed = [r for r in results if not r.ok]
    totals: dict[int, int] = {}
    for r in results:
        for cid, n in (r.category_pixels or {}).items():
            totals[cid] = totals.get(cid, 0) + n
    print(f"annotated {len(results) - len(failed)}/{len(results)} samples "
          f"-> {args.out}")
    all_px = sum(totals.values()) or 1
    for cid in sorted(totals):
        print(f"  {CATEGORY_NAMES[cid]:>13}: {totals[cid]:>10} px "
              f"({100.0 * totals[cid] / all_px:.2f}%)")
    for r in failed:
        print(f"FAILED {r.sample_id}: {r.error}", file=sys.stderr)
    return 1 if failed else 0


def _cmd_eval(args) -> int:
    pred_dir, gt_dir = Path(args.pred), Path(args.gt)
    gt_files = sorted(gt_dir.glob("*.png"))
    if not gt_files:
        print(f"no ground-truth label maps in {gt_dir}", file=sys.stderr)
        return 2

    def pairs():
        for gt_path in gt_files:
            pred_path = pred_dir / gt_path.name
            if not pred_path.is_file():
                raise FileNotFoundError(f"missing prediction {pred_path}")
            yield read_label_map(pred_path), read_label_map(gt_path)

    scores = merged_scores(pairs())
    pct = lambda v: f"{100.0 * v:.2f}"

    print(f"evaluated {len(gt_files)} image pairs")
    print(f"{'category':>14} {'precision':>10} {'recall':>10} {'F1':>10}")
    for i, name in enumerate(CATEGORY_NAMES):
        print(f"{name:>14} {pct(scores.precision[i]):>10} "
              f"{pct(scores.recall[i]):>10} {pct(scores.f1[i]):>10}")
    print(f"{'mean (fg)':>14} {'':>10} {'':>10} {pct(scores.mean_f1):>10}")
    print()
    merged_names = ("brows", "eyes", "nose", "mouth")
    print("merged: " + "  ".join(
        f"{n}={pct(scores.merged_f1[n])}" for n in merged_names))
    overall = scores.overall_macro if args.overall == "macro" else scores.overall_micro
    print(f"overall ({args.overall}): {pct(overall)}")

    if args.json:
        payload = scores.to_dict()
        payload["num_images"] = len(gt_files)
        Path(args.json).write_text(json.dumps(payload, indent=2) + "\n")
        print(f"wrote {args.json}")
    return 0


def _cmd_boundary(args) -> int:
    src = Path(args.labels)
    files = sorted(src.glob("*.png")) if src.is_dir() else [src]
    if not files:
        print(f"no label maps under {src}", file=sys.stderr)
        return 2
    out_dir = Path(args.out)
    failures = 0
    for path in files:
        try:
            labels = read_label_map(path)
            b = extract_boundary(labels)
            write_mask(out_dir / path.name, b)
            if args.weights:
                w = make_weight_map(b, args.alpha)
                np.save(out_dir / f"{path.stem}_weights.npy", w)
        except Exception as exc:
            failures += 1
            print(f"FAILED {path}: {exc}", file=sys.stderr)
    print(f"boundary maps for {len(files) - failures}/{len(files)} files -> {out_dir}")
    return 1 if failures else 0


def _cmd_loss_check(args) -> int:
    labels = read_label_map(args.labels)
    p_sem = np.load(args.semantic)
    p_bnd = np.load(args.boundary)
    p_fus = np.load(args.fusion)
    boundary_gt = extract_boundary(labels)
    weights = make_weight_map(boundary_gt, args.alpha)

    ls = semantic_loss(p_sem, labels)
    lb = boundary_loss(p_bnd, boundary_gt, balance=args.balanced)
    lf = fusion_loss(p_fus, labels, weights)
    lw = LossWeights(*args.lambdas)
    lt = total_loss(ls, lb, lf, lw)

    report = {
        "semantic": ls,
        "boundary": lb,
        "fusion": lf,
        "total": lt,
        "lambdas": list(args.lambdas),
        "alpha": args.alpha,
        "balanced": args.balanced,
    }
    for key in ("semantic", "boundary", "fusion", "total"):
        print(f"{key:>9}: {report[key]:.10f}")
    if args.json:
        Path(args.json).write_text(json.dumps(report, indent=2) + "\n")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(
        dataset_root=args.root,
        schema_path=args.schema,
        masks_dir=None if args.masks in (None, "none") else args.masks,
        ui_dir=args.ui,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="faceparse",
        description="Landmark-guided face parsing annotation toolkit",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true",
                        help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("annotate", help="fit parts and write label/boundary maps")
    p.add_argument("--root", required=True, help="dataset root directory")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--split", default="all", choices=("all",) + SPLITS)
    p.add_argument("--schema", default=None, help="part schema JSON (default: shipped)")
    p.add_argument("--masks", default="none",
                   help="directory with skin/ and hair/ mask PNGs, or 'none'")
    p.add_argument("--workers", type=int, default=None,
                   help="worker threads (or env FACEPARSE_WORKERS)")
    p.set_defaults(func=_cmd_annotate)

    p = sub.add_parser("eval", help="score predicted label maps against ground truth")
    p.add_argument("--pred", required=True, help="directory of predicted label maps")
    p.add_argument("--gt", required=True, help="directory of ground-truth label maps")
    p.add_argument("--overall", default="micro", choices=("micro", "macro"),
                   help="aggregation for the overall merged score")
    p.add_argument("--json", default=None, help="also write scores as JSON")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("boundary", help="extract boundary maps from label maps")
    p.add_argument("--labels", required=True, help="label-map PNG file or directory")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--weights", action="store_true",
                   help="also write weight maps as .npy")
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA,
                   help="boundary weight bump (default %(default)s)")
    p.set_defaults(func=_cmd_boundary)

    p = sub.add_parser("loss-check", help="evaluate the reference losses on files")
    p.add_argument("--labels", required=True, help="ground-truth label map PNG")
    p.add_argument("--semantic", required=True, help="(H,W,11) .npy probabilities")
    p.add_argument("--boundary", required=True, help="(H,W) .npy probabilities")
    p.add_argument("--fusion", required=True, help="(H,W,11) .npy probabilities")
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    p.add_argument("--balanced", action="store_true",
                   help="class-balanced boundary loss")
    p.add_argument("--lambdas", type=float, nargs=3, default=list(DEFAULT_LAMBDAS),
                   metavar=("LS", "LB", "LF"))
    p.add_argument("--json", default=None)
    p.set_defaults(func=_cmd_loss_check)

    p = sub.add_parser("serve", help="run the annotation HTTP service")
    p.add_argument("--root", default=None, help="dataset root (enables sessions)")
    p.add_argument("--schema", default=None)
    p.add_argument("--masks", default="none")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--ui", default=None, help="static UI directory to serve at /")
    p.set_defaults(func=_cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except FaceParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
