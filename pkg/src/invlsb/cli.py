"""Command-line front end.

Results go to stdout as ``key=value`` lines; failures print one
``error: ...`` line to stderr and exit with status 1.
"""

from __future__ import annotations

import argparse
import sys

from . import attacks
from .core import CapacityError, CorruptHeaderError, EmbedRecipe, embed, extract, recipe_capacity
from .metrics import ShapeError, psnr
from .planes import PlaneSet
from .raster import BmpFormatError, read_bmp, write_bmp
from .report import build_rows, write_csv

_SCHEME_ALIASES = {"proposed": "proposed", "lsb": "plain_lsb", "plain_lsb": "plain_lsb", "lee": "lee"}


def _emit(**kv) -> None:
    for k, v in kv.items():
        print(f"{k}={v}")


def _recipe(args) -> EmbedRecipe:
    scheme = _SCHEME_ALIASES[args.scheme]
    auto = args.planes == "auto"
    planes = PlaneSet((1,)) if auto else PlaneSet.parse(args.planes)
    if scheme == "lee" and args.seed is None:
        raise ValueError("--scheme lee requires --seed")
    return EmbedRecipe(scheme, planes, auto=auto, start=args.start, seed=args.seed)


def _add_recipe_flags(p) -> None:
    p.add_argument("--planes", default="1", help="1..4, a pair such as 1,2, or auto")
    p.add_argument("--scheme", default="proposed", choices=sorted(_SCHEME_ALIASES))
    p.add_argument("--seed", type=int, default=None, help="key for the lee scheme")
    p.add_argument("--start", type=int, default=1, help="1-based first header pixel")


def cmd_embed(args) -> int:
    cover = read_bmp(args.input)
    if args.text is not None:
        data = args.text.encode("utf-8")
    else:
        with open(args.text_file, "rb") as fh:
            data = fh.read()
    recipe = _recipe(args)
    marked = embed(cover, data, recipe)
    write_bmp(marked, args.output)
    report = extract(marked, recipe)
    score = psnr(cover, marked)
    _emit(
        capacity=recipe_capacity(cover.size, recipe),
        payload_bytes=len(data),
        planes=",".join(map(str, report.planes)),
        copies=report.copy_count,
        mse=f"{score.mse:.6f}",
        psnr=score.format_psnr(),
    )
    return 0


def cmd_extract(args) -> int:
    img = read_bmp(args.input)
    report = extract(img, _recipe(args), header_search=args.repair_header)
    if args.copy is not None:
        if not 0 <= args.copy < report.copy_count:
            raise IndexError(f"--copy {args.copy} out of range: image holds {report.copy_count} copies")
        data = report.copies[args.copy]
    else:
        data = report.consensus
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    _emit(
        length=report.length,
        copies=report.copy_count,
        agreement=f"{report.agreement:.6f}",
        text=data.decode("utf-8", errors="replace"),
    )
    return 0


def cmd_psnr(args) -> int:
    score = psnr(read_bmp(args.a), read_bmp(args.b))
    _emit(mse=f"{score.mse:.6f}", psnr=score.format_psnr())
    return 0


def cmd_crop(args) -> int:
    img = read_bmp(args.input)
    spec = attacks.CropSpec(args.oy, args.ox, args.width, args.height)
    out = attacks.crop(img, spec)
    if args.remap:
        out = attacks.remap_cropped(out, spec, img.width, img.height, args.fill)
    write_bmp(out, args.output)
    _emit(attack="crop", ox=args.ox, oy=args.oy, width=args.width, height=args.height,
          remap=int(args.remap), fill=args.fill)
    return 0


def cmd_noise(args) -> int:
    out = attacks.salt_pepper(read_bmp(args.input), args.density, args.seed)
    write_bmp(out, args.output)
    _emit(attack="noise", density=args.density, seed=args.seed)
    return 0


def cmd_diff(args) -> int:
    diff = attacks.compute_difference(read_bmp(args.bmp), read_bmp(args.lossy))
    attacks.write_lsbd(diff, args.output)
    _emit(attack="diff", width=diff.width, height=diff.height,
          nonzero=int((diff.deltas != 0).sum()))
    return 0


def cmd_restore(args) -> int:
    out = attacks.restore(read_bmp(args.lossy), attacks.read_lsbd(args.diff))
    write_bmp(out, args.output)
    _emit(attack="restore", width=out.width, height=out.height)
    return 0


def cmd_report(args) -> int:
    with open(args.text_file, "rb") as fh:
        text = fh.read()
    rows = build_rows(args.images, text, fill=args.fill, seed=args.seed, emit_dir=args.emit_dir)
    write_csv(rows, args.out)
    _emit(rows=len(rows), out=args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="invlsb", description="Inverted-bit LSB watermarking toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("embed", help="embed a text watermark")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--text")
    src.add_argument("--text-file")
    _add_recipe_flags(p)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("extract", help="recover a text watermark")
    p.add_argument("--in", dest="input", required=True)
    _add_recipe_flags(p)
    which = p.add_mutually_exclusive_group()
    which.add_argument("--copy", type=int)
    which.add_argument("--vote", action="store_true", help="majority vote over copies (default)")
    p.add_argument("--repair-header", action="store_true",
                   help="repair a damaged length header from copy agreement")
    p.add_argument("--out", help="also write the recovered bytes here")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("psnr", help="compare two images")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_psnr)

    attack = sub.add_parser("attack", help="apply an attack").add_subparsers(dest="attack", required=True)
    p = attack.add_parser("crop")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--ox", type=int, default=0, help="column offset")
    p.add_argument("--oy", type=int, default=0, help="row offset")
    p.add_argument("--remap", action="store_true", help="paste back onto the original canvas")
    p.add_argument("--fill", type=int, default=0)
    p.set_defaults(func=cmd_crop)

    p = attack.add_parser("noise")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--density", type=float, default=0.01)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_noise)

    p = attack.add_parser("diff")
    p.add_argument("--bmp", required=True)
    p.add_argument("--lossy", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.set_defaults(func=cmd_diff)

    p = attack.add_parser("restore")
    p.add_argument("--lossy", required=True)
    p.add_argument("--diff", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.set_defaults(func=cmd_restore)

    p = sub.add_parser("report", help="PSNR table over a BMP corpus")
    p.add_argument("--images", required=True)
    p.add_argument("--text-file", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0, help="key for the lee rows")
    p.add_argument("--emit-dir", help="write every watermarked image here")
    p.add_argument("--no-fill", dest="fill", action="store_false",
                   help="embed the text as-is instead of repeating it to full capacity")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CapacityError, CorruptHeaderError, ShapeError, BmpFormatError,
            attacks.IntegrityError, ValueError, IndexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
