"""
Cut cones and l1 embeddings
===========================

An exact LP decides whether a finite metric is a nonnegative sum of cut
semimetrics. Infeasible inputs come back with a Farkas vector.

"""

from medianwalls import (FiniteMetric, extract_convex_walls, cut_cone_decompose,
                         verify_cut_certificate, walls_to_embedding)
from medianwalls.generators import grid

M, pts = grid((2, 1))
D = cut_cone_decompose(M)
print("grid decomposes:", D.verify(M))
for S, w in zip(D.cuts, D.weights):
    print(sorted(S), w)

# walls give coordinates directly, no LP needed
coords = walls_to_embedding(extract_convex_walls(M), 0)
for p in coords:
    print(*p)

# K_{2,3} with the graph metric is not l1
K23 = FiniteMetric([[0 if i == j else (1 if (i < 2) != (j < 2) else 2) for j in range(5)]
                    for i in range(5)])
r = cut_cone_decompose(K23)
print("K23 feasible:", r.feasible, "certificate checks:", verify_cut_certificate(K23, r))
print(*r.certificate.y)
