#!/usr/bin/env python3
"""Build data/ni_optical.csv from the refractiveindex.info database (CC0).

The database ships in the `refidx` wheel (pip download refidx==1.3.0) as
refidx/database.npz. Usage:

    python3 tools/make_ni_table.py path/to/refidx/database.npz > data/ni_optical.csv

Im eps = 2 n k is taken from three Ni datasets, each over the wavelength band
where it is the most direct measurement:
  Werner et al. 2009 (REELS)      lambda < 0.188 um
  Johnson and Christy 1974        0.188 um <= lambda < 0.667 um
  Ordal et al. 1987               lambda >= 0.667 um
"""
import sys

import numpy as np

HC_EV_UM = 1.23984198


def dataset(db, name):
    data = db[name]["DATA"]
    return np.asarray(data["wavelengths"]), np.asarray(data["index"])


def main(npz_path):
    db = np.load(npz_path, allow_pickle=True)["database"].tolist()["main"]["Ni"]
    rows = []
    for name, lo, hi in (("Werner", 0.0, 0.188), ("Johnson", 0.188, 0.667), ("Ordal", 0.667, np.inf)):
        lam, idx = dataset(db, name)
        for w, n in zip(lam, idx):
            if lo <= w < hi:
                rows.append((HC_EV_UM / w, 2.0 * n.real * n.imag))
    rows.sort()
    out = sys.stdout
    out.write("# Ni, imaginary part of the permittivity on the real frequency axis.\n")
    out.write("# Source: refractiveindex.info database (CC0), generated by tools/make_ni_table.py\n")
    out.write("# Werner 2009 below 0.188 um, Johnson & Christy 1974 to 0.667 um, Ordal 1987 above.\n")
    out.write("omega_ev,im_eps\n")
    for e, v in rows:
        out.write("%.6g,%.6g\n" % (e, v))


if __name__ == "__main__":
    if len(sys.argv) != 2:
        sys.exit("usage: make_ni_table.py database.npz")
    main(sys.argv[1])
