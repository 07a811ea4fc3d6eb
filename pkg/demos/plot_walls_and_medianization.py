"""
Walls of a median space
=======================

Extract the convex walls of a small median space, then rebuild a median
space from an arbitrary wall space.

"""

from medianwalls import (L1Points, WallSpace, check_median, cube_adjacency, extract_convex_walls,
                         median_closure, medianize, subdivide_interval)

M, coords = median_closure(L1Points([(0, 0), (2, 1), (1, 3)]))
WS = extract_convex_walls(M)
print(f"{M.n} points, {len(WS)} walls")
for wall in WS.walls:
    print(sorted(wall.h), wall.weight)

# W(a|b) split into two blocks along the unit square
square = L1Points([(0, 0), (1, 0), (1, 1), (0, 1)]).metric()
R = subdivide_interval(square, 0, 2, [(0, 1), (0, 3)])
print("sequence", R.sequence, "partition", R.partition)

# three walls on a tripod: sections give the star K_{1,3}
MS = medianize(WallSpace(3, [([0], 1), ([1], 1), ([2], 1)]))
print(len(MS.sections), "sections, median:", bool(check_median(MS)))
print([(e.i, e.j) for e in cube_adjacency(MS)])
