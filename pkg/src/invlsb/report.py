"""Batch PSNR comparison across schemes and plane sets for a BMP corpus."""

from __future__ import annotations

import csv
import os
from dataclasses import astuple, dataclass, fields
from pathlib import Path

from .core import EmbedRecipe, embed, extract, recipe_capacity
from .metrics import max_abs_delta, psnr
from .planes import ALL_PLANE_SETS, PlaneSet
from .raster import read_bmp, write_bmp


@dataclass(frozen=True)
class ReportRow:
    image: str
    scheme: str
    planes: str
    payload_bytes: int
    psnr_db: str
    mse: float
    max_delta: int
    copies: int


COLUMNS = tuple(f.name for f in fields(ReportRow))


def recipes(seed: int = 0):
    """Recipes in report order: scheme name, then plane set.

    ``lee`` only ever uses plane 1, so it gets a single row.
    """
    for scheme in sorted(("proposed", "plain_lsb", "lee")):
        if scheme == "lee":
            yield EmbedRecipe("lee", PlaneSet((1,)), seed=seed)
        else:
            for ps in ALL_PLANE_SETS:
                yield EmbedRecipe(scheme, ps)


def fill_payload(text: bytes, n: int) -> bytes:
    """Repeat ``text`` to exactly ``n`` bytes."""
    if not text:
        raise ValueError("cannot fill from an empty text")
    reps = -(-n // len(text))
    return (text * reps)[:n]


def corpus(images_dir: str | os.PathLike) -> list[Path]:
    d = Path(images_dir)
    if not d.is_dir():
        raise FileNotFoundError(f"corpus directory {d} not found")
    paths = sorted(p for p in d.iterdir() if p.suffix.lower() == ".bmp")
    if not paths:
        raise FileNotFoundError(f"no .bmp images in {d}")
    return paths


def build_rows(images_dir, text: bytes, *, fill: bool = True, seed: int = 0,
               emit_dir: str | os.PathLike | None = None) -> list[ReportRow]:
    rows = []
    for path in corpus(images_dir):
        cover = read_bmp(path)
        for recipe in recipes(seed):
            payload = fill_payload(text, recipe_capacity(cover.size, recipe)) if fill else text
            marked = embed(cover, payload, recipe)
            report = extract(marked, recipe)
            score = psnr(cover, marked)
            planes = "1" if recipe.scheme == "lee" else str(recipe.planes)
            rows.append(ReportRow(
                image=path.stem,
                scheme=recipe.scheme,
                planes=planes,
                payload_bytes=len(payload),
                psnr_db=score.format_psnr(),
                mse=score.mse,
                max_delta=max_abs_delta(cover, marked),
                copies=report.copy_count,
            ))
            if emit_dir is not None:
                os.makedirs(emit_dir, exist_ok=True)
                write_bmp(marked, Path(emit_dir) / emitted_name(path.stem, recipe.scheme, planes))
    return rows


def emitted_name(image: str, scheme: str, planes: str) -> str:
    return f"{image}__{scheme}__p{planes.replace(',', '')}.bmp"


def write_csv(rows, out: str | os.PathLike) -> None:
    with open(out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(COLUMNS)
        for row in rows:
            w.writerow(astuple(row))


def read_csv(path: str | os.PathLike) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))
