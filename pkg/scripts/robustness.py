"""Crop and salt-and-pepper sweeps: surviving copies and character error rates."""

import argparse

import numpy as np

from invlsb import CropSpec, EmbedRecipe, crop, embed, extract, read_bmp, remap_cropped, salt_pepper
from invlsb.core import CorruptHeaderError


def cer(got, want):
    got = got[: len(want)].ljust(len(want), b"\0")
    return sum(a != b for a, b in zip(got, want)) / len(want)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("cover")
    ap.add_argument("--text", default="owner: example.org")
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--densities", default="0.001,0.005,0.01,0.02,0.05")
    args = ap.parse_args()

    cover = read_bmp(args.cover)
    payload = args.text.encode()
    rec = EmbedRecipe()
    marked = embed(cover, payload, rec)
    total = extract(marked, rec).copy_count
    print(f"copies={total}")

    for keep in (480, 448, 384, 256):
        spec = CropSpec(0, 0, min(keep, cover.width), min(keep, cover.height))
        rep = extract(remap_cropped(crop(marked, spec), spec, cover.width, cover.height), rec)
        ok = sum(c == payload for c in rep.copies)
        print(f"crop={keep} exact_copies={ok} fraction={ok / total:.3f}")

    for d in (float(x) for x in args.densities.split(",")):
        for repair in (False, True):
            cons, single = [], []
            for seed in range(args.trials):
                try:
                    rep = extract(salt_pepper(marked, d, seed), rec, header_search=repair)
                except CorruptHeaderError:
                    cons.append(1.0)
                    single.append(1.0)
                    continue
                cons.append(cer(rep.consensus, payload))
                single.append(np.mean([cer(c, payload) for c in rep.copies]) if rep.copies else 1.0)
            print(f"density={d} repair={int(repair)} consensus_cer={np.mean(cons):.4f} "
                  f"single_cer={np.mean(single):.4f}")


if __name__ == "__main__":
    main()
