"""Exponent-range classification for the main cyclic inequality.

For a permutation sigma, the inequality

    sum_i (x_i / x_{i+1})^k  >=  sum_i x_i / x_{sigma(i)}

holds for all positive x exactly when k >= D+(sigma) or k <= -D-(sigma),
where D+ and D- are the maximal forward and backward cyclic displacements
of sigma.  Boundary semantics are closed (the thresholds themselves are
admissible), and k = 0 is classified by the nonnegative branch.
"""

from dataclasses import dataclass

from .perm import (
    Permutation,
    backward_displacement,
    forward_displacement,
    max_backward_displacement,
    max_forward_displacement,
)


@dataclass(frozen=True)
class ExponentVerdict:
    """Admissible exponent set {k >= d_plus} union {k <= -d_minus}."""

    d_plus: int
    d_minus: int

    def holds_for(self, k: float) -> bool:
        return k >= self.d_plus or k <= -self.d_minus


def admissible_exponents(sigma: Permutation) -> ExponentVerdict:
    return ExponentVerdict(
        d_plus=max_forward_displacement(sigma),
        d_minus=max_backward_displacement(sigma),
    )


def holds(sigma: Permutation, k: float) -> bool:
    """True iff the inequality holds for every positive vector."""
    return admissible_exponents(sigma).holds_for(k)


def violating_indices(sigma: Permutation, k: float) -> list[tuple[int, int]]:
    """Indices whose displacement exceeds the exponent budget.

    For k >= 0 these are the i with forward displacement > k; for k < 0 the
    i with backward displacement > -k.  Empty exactly when holds(sigma, k).
    """
    out = []
    for i in range(1, sigma.n + 1):
        if k >= 0:
            d = forward_displacement(sigma, i)
            if d > k:
                out.append((i, d))
        else:
            d = backward_displacement(sigma, i)
            if d > -k:
                out.append((i, d))
    return out
