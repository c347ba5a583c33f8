#!/usr/bin/env python3
"""Regenerates the procedural PGM fixtures under tests/fixtures.

All images are synthesized here (no external sources), so they are free of
any licensing constraints. Output is deterministic.
"""
import pathlib
import sys

import numpy as np


def write_pgm(path, pixels):
    pixels = np.asarray(pixels, dtype=np.uint8)
    h, w = pixels.shape
    path.write_bytes(b"P5\n%d %d\n255\n" % (w, h) + pixels.tobytes())


def gradient(w, h):
    y, x = np.mgrid[0:h, 0:w]
    return np.round(255.0 * (x + y) / (w + h - 2))


def zone_plate(w, h):
    y, x = np.mgrid[0:h, 0:w]
    r2 = (x - w / 2.0) ** 2 + (y - h / 2.0) ** 2
    return np.round(127.5 + 127.5 * np.cos(r2 / (2.0 * max(w, h))))


def smooth_noise(w, h, seed=7):
    rng = np.random.default_rng(seed)
    field = rng.uniform(0.0, 255.0, size=(h, w))
    kernel = np.array([1, 4, 6, 4, 1], dtype=float) / 16.0
    for _ in range(3):
        field = np.apply_along_axis(lambda r: np.convolve(r, kernel, mode="same"), 1, field)
        field = np.apply_along_axis(lambda c: np.convolve(c, kernel, mode="same"), 0, field)
    field = (field - field.min()) / (field.max() - field.min())
    return np.round(255.0 * field)


def main():
    out = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"
    out.mkdir(parents=True, exist_ok=True)
    write_pgm(out / "gradient8.pgm", gradient(8, 8))
    write_pgm(out / "gradient.pgm", gradient(64, 64))
    write_pgm(out / "rings.pgm", zone_plate(64, 64))
    write_pgm(out / "noise.pgm", smooth_noise(60, 44))
    write_pgm(out / "black.pgm", np.zeros((16, 16)))


if __name__ == "__main__":
    main()
