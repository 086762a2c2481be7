"""The systematic MDS generator behind the local chromatic code."""

import itertools

from tsuic import make_field, rank, systematic_mds_generator
from tsuic.gf import smallest_prime_at_least

alpha, total = 3, 6
q = smallest_prime_at_least(total)
f = make_field(q)
g = systematic_mds_generator(alpha, total, f)
print(f"generator over GF({q}):")
print(g)

# any alpha columns are independent, so any alpha coded symbols recover all
ranks = {rank(g[:, cols], f) for cols in itertools.combinations(range(total), alpha)}
print("ranks of all", alpha, "column subsets:", ranks)
