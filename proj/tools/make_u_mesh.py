#!/usr/bin/env python3
# Copyright the elastodtn authors. All Rights Reserved.
# SPDX-License-Identifier: Apache-2.0
"""Generate the U-shaped obstacle mesh fixture (data/u_obstacle.mesh).

The domain is the disk of radius 3 minus a U-shaped polygon whose vertices all lie
inside the disk of radius 2.31. Requires the `triangle` package.
"""

import argparse
import math

import numpy as np
import triangle

OUTER_RADIUS = 3.0
OUTER_SEGMENTS = 96
# Counterclockwise outline of the U (opening towards +x).
U_POLYGON = [
    (-2.0, -0.7), (2.2, -0.7), (2.2, -0.3), (-1.5, -0.3),
    (-1.5, 0.3), (2.2, 0.3), (2.2, 0.7), (-2.0, 0.7),
]
HOLE_POINT = (0.0, -0.5)


def subdivide(polygon, spacing):
    points = []
    for i, a in enumerate(polygon):
        b = polygon[(i + 1) % len(polygon)]
        pieces = max(1, math.ceil(math.dist(a, b) / spacing))
        for k in range(pieces):
            t = k / pieces
            points.append((a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])))
    return points


def build(spacing, max_area, min_angle):
    outer = [(OUTER_RADIUS * math.cos(2 * math.pi * k / OUTER_SEGMENTS),
              OUTER_RADIUS * math.sin(2 * math.pi * k / OUTER_SEGMENTS))
             for k in range(OUTER_SEGMENTS)]
    inner = subdivide(U_POLYGON, spacing)
    vertices = outer + inner
    segments = [(k, (k + 1) % len(outer)) for k in range(len(outer))]
    base = len(outer)
    segments += [(base + k, base + (k + 1) % len(inner)) for k in range(len(inner))]
    tags = [2] * len(outer) + [1] * len(inner)
    # 'Y' keeps boundary segments unsplit so outer vertices stay exactly on the circle.
    out = triangle.triangulate(
        {"vertices": np.array(vertices), "segments": np.array(segments),
         "holes": np.array([HOLE_POINT])},
        f"pq{min_angle}a{max_area}Y")
    points = out["vertices"]
    tags += [0] * (len(points) - len(tags))
    tris = []
    for a, b, c in out["triangles"]:
        pa, pb, pc = points[a], points[b], points[c]
        cross = (pb[0] - pa[0]) * (pc[1] - pa[1]) - (pb[1] - pa[1]) * (pc[0] - pa[0])
        tris.append((a, b, c) if cross > 0 else (a, c, b))
    return points, tags, tris


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("output")
    parser.add_argument("--spacing", type=float, default=0.2)
    parser.add_argument("--max-area", type=float, default=0.06)
    parser.add_argument("--min-angle", type=float, default=28)
    args = parser.parse_args()
    points, tags, tris = build(args.spacing, args.max_area, args.min_angle)
    with open(args.output, "w") as f:
        f.write(f"vertices {len(points)} triangles {len(tris)}\n")
        for (x, y), tag in zip(points, tags):
            f.write(f"{float(x)!r} {float(y)!r} {tag}\n")
        for a, b, c in tris:
            f.write(f"{a} {b} {c}\n")


if __name__ == "__main__":
    main()
