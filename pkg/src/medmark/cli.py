"""``medmark`` command-line interface.

Exit codes: 0 success, 2 tampered, 3 capacity, 4 key/payload mismatch,
5 I/O or format error, 6 usage error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import errors
from .attacks import AttackSpec
from .engine import EmbedParams, embed, extract, restore, verify
from .image_io import load_pgm, save_pgm
from .metrics import compare
from .payload import LOGO_SIZE
from .prng import MASK64
from .roi import RoiSpec, embedding_capacity

EXIT_OK = 0
EXIT_TAMPERED = 2
EXIT_CAPACITY = 3
EXIT_KEY = 4
EXIT_IO = 5
EXIT_USAGE = 6

# most specific first
_EXIT_CODES = [
    (errors.CapacityExceeded, EXIT_CAPACITY),
    (errors.PayloadCorrupt, EXIT_KEY),
    (errors.NotReversible, EXIT_KEY),
    (errors.ZeroLengthPackage, EXIT_KEY),
    (errors.PgmError, EXIT_IO),
    (errors.DimensionMismatch, EXIT_IO),
    (errors.TextTooLong, EXIT_IO),
    (errors.NonAscii, EXIT_IO),
    (OSError, EXIT_IO),
    (errors.SpecOutOfBounds, EXIT_USAGE),
    (errors.WatermarkError, EXIT_USAGE),
    (ValueError, EXIT_USAGE),
]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _u64(text: str) -> int:
    t = text.strip().lower()
    try:
        value = int(t[2:], 16) if t.startswith("0x") else int(t, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a 64-bit unsigned key: {text!r}")
    if not 0 <= value <= MASK64:
        raise argparse.ArgumentTypeError(f"key out of 64-bit range: {text!r}")
    return value


def _rect(text: str) -> tuple[int, int, int, int]:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"expected x,y,w,h, got {text!r}")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers in {text!r}")


def _size(text: str) -> tuple[int, int]:
    try:
        w, h = (int(p) for p in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected WxH, got {text!r}")
    return w, h


def _int_list(text: str) -> list[int]:
    if not text:
        return []
    try:
        return [int(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="medmark", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def keyed(sp):
        sp.add_argument("--roi", type=_rect, required=True, metavar="x,y,w,h")
        sp.add_argument("--key1", type=_u64, required=True)
        sp.add_argument("--key2", type=_u64, required=True)

    e = sub.add_parser("embed", help="watermark a cover image")
    e.add_argument("--cover", required=True)
    e.add_argument("--logo", required=True)
    e.add_argument("--text", required=True)
    e.add_argument("--roi", type=_rect, metavar="x,y,w,h")
    e.add_argument("--roi-mask")
    e.add_argument("--key1", type=_u64, required=True)
    e.add_argument("--key2", type=_u64, required=True)
    e.add_argument("--delta", type=int, default=8)
    e.add_argument("--no-reversible", action="store_true")
    e.add_argument("--out", required=True)
    e.add_argument("--report", action="store_true")

    x = sub.add_parser("extract", help="recover logo and text (needs the original)")
    x.add_argument("--watermarked", required=True)
    x.add_argument("--original", required=True)
    keyed(x)
    x.add_argument("--out-logo")
    x.add_argument("--out-text")
    x.add_argument("--report", action="store_true")

    r = sub.add_parser("restore", help="recover the exact cover image")
    r.add_argument("--watermarked", required=True)
    keyed(r)
    r.add_argument("--out", required=True)

    v = sub.add_parser("verify", help="check ROI integrity")
    v.add_argument("--image", required=True)
    keyed(v)

    c = sub.add_parser("capacity", help="RONI pixel count for an ROI")
    c.add_argument("--size", type=_size, required=True, metavar="WxH")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--roi", type=_rect, metavar="x,y,w,h")
    g.add_argument("--roi-mask")
    g.add_argument("--ellipse", type=_rect, metavar="x,y,w,h")

    m = sub.add_parser("metrics", help="MSE, PSNR and SSIM between two images")
    m.add_argument("--a", required=True)
    m.add_argument("--b", required=True)
    m.add_argument("--report", action="store_true")

    a = sub.add_parser("attack", help="apply a seeded attack")
    a.add_argument("--in", dest="inp", required=True)
    a.add_argument("--type", required=True, choices=["saltpepper", "shuffle", "drop", "requant"])
    a.add_argument("--density", type=float, default=0.01)
    a.add_argument("--block", type=int, default=8)
    a.add_argument("--rows", type=_int_list, default=[])
    a.add_argument("--cols", type=_int_list, default=[])
    a.add_argument("--step", type=int, default=16)
    a.add_argument("--seed", type=_u64, default=0)
    a.add_argument("--out", required=True)
    return p


def _fmt(x: float) -> str:
    return "inf" if math.isinf(x) else repr(x)


def _emit(out, data: dict, as_json: bool) -> None:
    if as_json:
        clean = {k: ("inf" if isinstance(v, float) and math.isinf(v) else v)
                 for k, v in data.items()}
        print(json.dumps(clean, separators=(",", ":")), file=out)
    else:
        for k, v in data.items():
            print(f"{k} {_fmt(v) if isinstance(v, float) else v}", file=out)


def _cmd_embed(args, out) -> int:
    cover = load_pgm(args.cover)
    if args.roi_mask:
        roi = RoiSpec.from_mask(load_pgm(args.roi_mask))
    elif args.roi:
        roi = RoiSpec.from_rect(*args.roi)
    else:
        raise UsageError("embed needs --roi or --roi-mask")
    with open(args.text, "rb") as fh:
        text = fh.read()
    params = EmbedParams(args.key1, args.key2, roi, delta=args.delta,
                         reversible=not args.no_reversible)
    marked, report = embed(cover, load_pgm(args.logo), text, params)
    save_pgm(args.out, marked)
    if args.report:
        print(report.to_json(), file=out)
    else:
        print(f"embedded {report.fragile_bits_used}/{report.fragile_capacity_bits} fragile bits, "
              f"psnr {_fmt(report.psnr_db)} dB, ssim {report.ssim:.6f}", file=out)
    return EXIT_OK


def _params(args) -> EmbedParams:
    return EmbedParams(args.key1, args.key2, RoiSpec.from_rect(*args.roi))


def _cmd_extract(args, out) -> int:
    res = extract(load_pgm(args.watermarked), load_pgm(args.original), _params(args))
    if args.out_logo:
        save_pgm(args.out_logo, res.logo_robust.reshape(LOGO_SIZE, LOGO_SIZE) * np.uint8(255))
    if args.out_text:
        with open(args.out_text, "wb") as fh:
            fh.write(res.text)
    _emit(out, {"damage_percent": res.damage_percent, "authentic": res.authentic,
                "text_bytes": len(res.text), "delta": res.payload.delta,
                "reversible": res.payload.reversible}, args.report)
    return EXIT_OK


def _cmd_restore(args, out) -> int:
    save_pgm(args.out, restore(load_pgm(args.watermarked), _params(args)))
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    verdict = verify(load_pgm(args.image), _params(args))
    print(verdict, file=out)
    return EXIT_OK if verdict.authentic else EXIT_TAMPERED


def _cmd_capacity(args, out) -> int:
    w, h = args.size
    if args.roi is not None:
        roi = RoiSpec.from_rect(*args.roi)
    elif args.ellipse is not None:
        roi = RoiSpec.from_ellipse(*args.ellipse)
    else:
        roi = RoiSpec.from_mask(load_pgm(args.roi_mask))
    print(embedding_capacity((h, w), roi), file=out)
    return EXIT_OK


def _cmd_metrics(args, out) -> int:
    m = compare(load_pgm(args.a), load_pgm(args.b))
    _emit(out, {"mse": m.mse, "psnr": m.psnr_db, "ssim": m.ssim}, args.report)
    return EXIT_OK


def _cmd_attack(args, out) -> int:
    spec = AttackSpec(kind=args.type, density=args.density, block=args.block,
                      rows=tuple(args.rows), cols=tuple(args.cols), step=args.step,
                      seed=args.seed)
    save_pgm(args.out, spec.apply(load_pgm(args.inp)))
    return EXIT_OK


_COMMANDS = {
    "embed": _cmd_embed, "extract": _cmd_extract, "restore": _cmd_restore,
    "verify": _cmd_verify, "capacity": _cmd_capacity, "metrics": _cmd_metrics,
    "attack": _cmd_attack,
}


def run(argv=None, out=None, err=None) -> int:
    """Execute one command; returns the process exit code."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"medmark: usage error: {exc}", file=err)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    except Exception as exc:
        for cls, code in _EXIT_CODES:
            if isinstance(exc, cls):
                print(f"medmark: {type(exc).__name__}: {exc}", file=err)
                return code
        raise


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
