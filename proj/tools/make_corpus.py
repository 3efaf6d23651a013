"""Regenerate corpus/random/*.json: random Gorenstein rank-3 cones over lattice
polygons, with expected outputs from a scipy convex-hull volume and a scipy
minimizer (independent of the C++ code)."""

import itertools
import json
import math
import pathlib

import numpy as np
from scipy.optimize import minimize
from scipy.spatial import ConvexHull

OUT = pathlib.Path(__file__).resolve().parent.parent / "corpus" / "random"


def polygon(rng):
    while True:
        pts = rng.integers(-2, 3, size=(rng.integers(4, 7), 2))
        pts = np.unique(pts, axis=0)
        if len(pts) < 3:
            continue
        try:
            hull = ConvexHull(pts)
        except Exception:
            continue
        verts = pts[hull.vertices]
        if len(verts) >= 3:
            return [tuple(int(c) for c in v) for v in verts]


def dual_rays(rays):
    R = np.array(rays, dtype=float)
    out = []
    for i, j in itertools.combinations(range(len(R)), 2):
        n = np.cross(R[i], R[j])
        s = R @ n
        if np.all(s >= -1e-12):
            out.append(n)
        elif np.all(s <= 1e-12):
            out.append(-n)
    g = [v / math.gcd(*[int(round(abs(c))) for c in v]) for v in out]
    return np.unique(np.round(g).astype(int), axis=0)


def volume(U, xi):
    pts = np.vstack([np.zeros(3), U / (U @ xi)[:, None]])
    return 6.0 * ConvexHull(pts).volume


def main():
    rng = np.random.default_rng(20261018)
    OUT.mkdir(parents=True, exist_ok=True)
    for idx in range(5):
        rays = [[p, q, 1] for p, q in polygon(rng)]
        U = dual_rays(rays)
        gamma = np.array([0.0, 0.0, 1.0])
        ray_sum = np.array(rays, dtype=float).sum(axis=0)

        def hvol(y):
            xi = np.array([y[0], y[1], 3.0])
            if np.any(U @ xi <= 0):
                return np.inf
            return 27.0 * volume(U, xi)

        start = ray_sum[:2] * 3.0 / ray_sum[2]
        res = minimize(hvol, start, method="Nelder-Mead",
                       options={"xatol": 1e-11, "fatol": 1e-13, "maxiter": 20000})
        xi_star = [float(res.x[0]), float(res.x[1]), 3.0]
        doc = {
            "rank": 3,
            "rays": rays,
            "label": f"random-{idx}",
            "expected": {
                "min_hvol": float(res.fun),
                "minimizer": xi_star,
                "ray_sum": [int(c) for c in ray_sum],
                "vol_at_ray_sum": volume(U, ray_sum),
                "dual_rays": U.tolist(),
            },
        }
        (OUT / f"random_{idx}.json").write_text(json.dumps(doc, indent=2) + "\n")
        print(idx, rays, res.fun)


if __name__ == "__main__":
    main()
