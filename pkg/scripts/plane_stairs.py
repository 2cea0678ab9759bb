"""PSNR per plane set at full capacity for every BMP in a directory."""

import argparse
from pathlib import Path

from invlsb import ALL_PLANE_SETS, EmbedRecipe, embed, psnr, read_bmp, recipe_capacity
from invlsb.report import fill_payload


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("images", type=Path)
    ap.add_argument("--text", default="Copyright notice embedded as a test watermark. ")
    ap.add_argument("--scheme", default="proposed")
    args = ap.parse_args()

    print("image," + ",".join(f'"{ps}"' for ps in ALL_PLANE_SETS))
    for path in sorted(args.images.glob("*.bmp")):
        cover = read_bmp(path)
        cells = []
        for ps in ALL_PLANE_SETS:
            rec = EmbedRecipe(args.scheme, ps)
            payload = fill_payload(args.text.encode(), recipe_capacity(cover.size, rec))
            cells.append(psnr(cover, embed(cover, payload, rec)).format_psnr())
        print(path.stem + "," + ",".join(cells))


if __name__ == "__main__":
    main()
