"""Regenerate the JSON fixtures under fixtures/."""

import json
from fractions import Fraction
from pathlib import Path

from medianwalls import FiniteMetric, L1Points
from medianwalls import io as mio
from medianwalls.kernels import Kernel, squared_euclidean
from medianwalls.metric import l1_distance_matrix

OUT = Path(__file__).resolve().parent.parent / "fixtures"


def y_points(x):
    x = Fraction(x)
    h, r = x / 2, 1 - x
    signs = [(1, 1, 1), (-1, -1, 1), (1, -1, -1), (-1, 1, -1)]
    pts = []
    for k, s in enumerate(signs):
        p = [h * v for v in s] + [Fraction(0)] * 4
        p[3 + k] = r
        pts.append(p)
    return L1Points(pts, 7)


def cycle(n):
    return FiniteMetric([[min(abs(i - j), n - abs(i - j)) for j in range(n)] for i in range(n)])


def write(name, data):
    (OUT / name).write_text(json.dumps(data, indent=1) + "\n")


def main():
    OUT.mkdir(exist_ok=True)
    for name, x in (("Y0", 0), ("Yhalf", Fraction(1, 2)), ("Y1", 1)):
        write(f"{name}.json", mio.points_to_json(y_points(x)))
    write("K3.json", mio.metric_to_json(FiniteMetric([[0, 1, 1], [1, 0, 1], [1, 1, 0]], labels="abc")))
    write("path3.json", mio.metric_to_json(FiniteMetric([[0, 1, 2], [1, 0, 1], [2, 1, 0]])))
    write("path3_weighted.json", mio.metric_to_json(FiniteMetric([[0, 1, 3], [1, 0, 2], [3, 2, 0]])))
    square = [(0, 0), (1, 0), (1, 1), (0, 1)]
    write("square_points.json", mio.points_to_json(L1Points(square)))
    write("square.json", mio.metric_to_json(FiniteMetric(l1_distance_matrix(
        [tuple(map(Fraction, p)) for p in square]))))
    write("square_pairs.json", {"a": 0, "b": 2, "pairs": [[0, 1], [0, 3]]})
    write("cycle4.json", mio.metric_to_json(cycle(4)))
    write("cycle5.json", mio.metric_to_json(cycle(5)))
    k23 = [[0 if i == j else (1 if (i < 2) != (j < 2) else 2) for j in range(5)] for i in range(5)]
    write("K23.json", mio.metric_to_json(FiniteMetric(k23)))
    write("K23_kernel.json", mio.kernel_to_json(Kernel(k23)))
    write("tripod_walls.json", {"n": 3, "walls": [{"h": [i], "weight": "1"} for i in range(3)]})
    write("square_walls.json", {"n": 4, "walls": [{"h": [1, 2], "weight": "1"},
                                                   {"h": [2, 3], "weight": "1"}]})
    write("nested_walls.json", {"n": 3, "walls": [{"h": [0], "weight": "1"},
                                                   {"h": [0, 1], "weight": "1/2"}]})
    write("path_walls.json", {"n": 3, "walls": [{"h": [0], "weight": "1"},
                                                 {"h": [0, 1], "weight": "2"}]})
    planar = [(0, 0), (3, 0), (1, 2), (-1, 5)]
    write("sqeuclid4_kernel.json", mio.kernel_to_json(squared_euclidean(planar)))
    write("zero_kernel.json", mio.kernel_to_json(Kernel([[0] * 3] * 3)))
    write("discrete4_kernel.json", mio.kernel_to_json(
        Kernel([[int(i != j) for j in range(4)] for i in range(4)])))
    (OUT / "bad_syntax.json.txt").write_text('{"dist": [["0", "1"],\n  ["1" "0"]]}\n')


if __name__ == "__main__":
    main()
