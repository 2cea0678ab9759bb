"""Write synthetic 512x512 grayscale covers for the report and sweeps.

The paper's photographs are not distributed, so these stand in: smooth
low-frequency structure plus sensor-like noise in the low bit planes.
"""

import argparse
from pathlib import Path

import numpy as np

from invlsb import GrayImage, write_bmp

NAMES = ("dock", "forest", "toucan", "waterfall")


def cover(seed, size=512):
    rs = np.random.default_rng(seed)
    y, x = np.mgrid[0:size, 0:size]
    fx, fy = rs.uniform(20, 80, 2)
    base = 128 + 70 * np.sin(x / fx + rs.uniform(0, 6)) * np.cos(y / fy)
    base += rs.normal(0, 4 + 4 * rs.random(), base.shape)
    return GrayImage.from_array(np.clip(np.rint(base), 0, 255).astype(np.uint8))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out", type=Path)
    ap.add_argument("--size", type=int, default=512)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for i, name in enumerate(NAMES):
        write_bmp(cover(i, args.size), args.out / f"{name}.bmp")
        print(args.out / f"{name}.bmp")


if __name__ == "__main__":
    main()
