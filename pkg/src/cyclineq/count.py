"""Counting permutations whose forward displacements stay within a band.

P(n, k) counts the sigma in S_n with every (sigma(i) - i) mod n <= k, which
is the permanent of the circulant 0/1 matrix allowing offsets 0..k.  The
permanent runs over exact Python integers, so no size overflows; the count
follows the Lucas numbers at k = 2 apart from small initial exceptions,
which the report determines empirically.
"""

import itertools
from dataclasses import dataclass
from math import factorial

from .errors import BadDimension, BudgetExceeded

RYSER_MAX_N = 20
BRUTE_FORCE_MAX_N = 9


@dataclass(frozen=True)
class BandMatrix:
    """Circulant 0/1 matrix with entry (i, j) = 1 iff (j - i) mod n <= k."""

    n: int
    k: int
    entries: tuple[tuple[int, ...], ...]

    @property
    def row_sum(self) -> int:
        return min(self.k, self.n - 1) + 1


def band_matrix(n: int, k: int) -> BandMatrix:
    if n <= 1:
        raise BadDimension(f"need n > 1, got n={n}")
    if k < 0:
        raise ValueError("need k >= 0")
    entries = tuple(
        tuple(1 if (j - i) % n <= k else 0 for j in range(n))
        for i in range(n)
    )
    return BandMatrix(n, k, entries)


def _ryser_permanent(entries) -> int:
    """Permanent by inclusion-exclusion over column subsets, visiting
    subsets in Gray-code order so each step updates one column."""
    n = len(entries)
    total = 0
    rowsum = [0] * n
    gray = 0
    parity = 0
    for m in range(1, 1 << n):
        j = (m & -m).bit_length() - 1
        flipped = gray ^ (1 << j)
        sign = 1 if flipped > gray else -1
        gray = flipped
        for i in range(n):
            rowsum[i] += sign * entries[i][j]
        parity ^= 1
        prod = 1
        for s in rowsum:
            prod *= s
            if prod == 0:
                break
        total += -prod if parity else prod
    return total if n % 2 == 0 else -total


def count_band_permutations(n: int, k: int, max_n: int = RYSER_MAX_N) -> int:
    """P(n, k), exact.  Full band (k >= n-1) short-circuits to n!."""
    if n <= 1:
        raise BadDimension(f"need n > 1, got n={n}")
    if k < 0:
        raise ValueError("need k >= 0")
    if k >= n - 1:
        return factorial(n)
    if n > max_n:
        raise BudgetExceeded(f"permanent budget is n <= {max_n}, got n={n}")
    return _ryser_permanent(band_matrix(n, k).entries)


def brute_force_count(n: int, k: int, max_n: int = BRUTE_FORCE_MAX_N) -> int:
    """Oracle: enumerate S_n and filter by maximal forward displacement."""
    if n <= 1:
        raise BadDimension(f"need n > 1, got n={n}")
    if n > max_n:
        raise BudgetExceeded(f"enumeration budget is n <= {max_n}, got n={n}")
    count = 0
    for images in itertools.permutations(range(1, n + 1)):
        if all((images[i] - (i + 1)) % n <= k for i in range(n)):
            count += 1
    return count


def lucas(n: int) -> int:
    """Lucas numbers: L_0 = 2, L_1 = 1, L_n = L_{n-1} + L_{n-2}."""
    if n < 0:
        raise ValueError("need n >= 0")
    a, b = 2, 1
    if n == 0:
        return a
    for _ in range(n - 1):
        a, b = b, a + b
    return b


@dataclass(frozen=True)
class LucasRow:
    n: int
    count: int
    lucas_plus_two: int
    match: bool


def lucas_identity_report(n_max: int) -> list[LucasRow]:
    """Rows (n, P(n,2), 2 + L_n, match) for n = 2..n_max.

    The identity fails only for small initial n; which ones is decided
    empirically here rather than assumed.
    """
    rows = []
    for n in range(2, n_max + 1):
        count = count_band_permutations(n, 2)
        expected = 2 + lucas(n)
        rows.append(LucasRow(n, count, expected, count == expected))
    return rows
