"""Constructive certificates for admissible rational exponents.

Every right-hand-side term x_i / x_{sigma(i)} telescopes into a product of
consecutive ratio variables a_j = x_j / x_{j+1} (cyclically; their product
is 1).  For an admissible rational exponent k = u/v the whole inequality can
be rebalanced so that each side is a sum of n products of exactly u*n copies
of the fractional powers a_j^(1/(v*n)), at which point it is a rearrangement
of one fixed sequence and therefore true.

A DecompositionCertificate records that rebalancing exactly: an integer
count table (how many copies of each a_j^(1/(v*n)) appear in each summand)
plus u*n "rounds", each a bijection summand -> symbol obtained as a system
of distinct representatives of the remaining counts.  All bookkeeping is in
exact integers; floating point appears only in numeric cross-checks.

Negative exponents use the inverse alphabet b_j = 1/a_j and are stored with
alphabet flag "b" and the magnitude u/v = |k|.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import exp, gcd, log

from .classify import holds
from .errors import IrrationalExponent, MatchingFailed, NotAdmissible
from .perm import Permutation, backward_displacement, cycle_decomposition, \
    forward_displacement, wrap_index


@dataclass(frozen=True)
class RationalExponent:
    """Exact exponent u/v with v > 0 and gcd(|u|, v) = 1."""

    u: int
    v: int = 1

    def __post_init__(self):
        if self.v == 0:
            raise IrrationalExponent("denominator must be nonzero")
        u, v = self.u, self.v
        if v < 0:
            u, v = -u, -v
        g = gcd(abs(u), v)
        if g > 1:
            u, v = u // g, v // g
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    @property
    def value(self) -> Fraction:
        return Fraction(self.u, self.v)

    def __float__(self) -> float:
        return self.u / self.v

    def __str__(self) -> str:
        return f"{self.u}/{self.v}"

    @classmethod
    def parse(cls, text: str) -> "RationalExponent":
        """Parse 'u/v' or a plain integer string."""
        parts = text.strip().split("/")
        try:
            if len(parts) == 1:
                return cls(int(parts[0]), 1)
            if len(parts) == 2:
                return cls(int(parts[0]), int(parts[1]))
        except ValueError:
            pass
        raise IrrationalExponent(
            f"exact rational exponent required, got {text!r}; pass u/v"
        )


def as_rational(k) -> RationalExponent:
    """Coerce an exact value to RationalExponent.

    Accepts RationalExponent, int, Fraction, or a 'u/v' string.  Floats are
    rejected: a float does not identify the intended rational, and the
    certificate arithmetic must be exact.
    """
    if isinstance(k, RationalExponent):
        return k
    if isinstance(k, bool):
        raise IrrationalExponent(f"not an exponent: {k!r}")
    if isinstance(k, int):
        return RationalExponent(k, 1)
    if isinstance(k, Fraction):
        return RationalExponent(k.numerator, k.denominator)
    if isinstance(k, str):
        return RationalExponent.parse(k)
    raise IrrationalExponent(
        f"exact rational exponent required, got {type(k).__name__}"
    )


@dataclass(frozen=True)
class RatioVector:
    """The ratio variables a_i = x_i / x_{i+1} (cyclic) for a vector x."""

    n: int
    a: tuple

    @classmethod
    def from_x(cls, x) -> "RatioVector":
        x = list(x)
        n = len(x)
        return cls(n, tuple(x[i] / x[(i + 1) % n] for i in range(n)))

    @property
    def b(self) -> tuple:
        """Inverse alphabet b_i = 1 / a_i."""
        return tuple(1 / v for v in self.a)

    def product(self):
        p = self.a[0]
        for v in self.a[1:]:
            p = p * v
        return p


@dataclass(frozen=True)
class CyclicBlock:
    """Fractions x_num/x_den sortable head-to-tail into a closed chain.

    sorting is a tuple of 1-based positions gamma such that the denominator
    index of fractions[gamma[t]-1] equals the numerator index of
    fractions[gamma[t+1]-1], cyclically.
    """

    fractions: tuple[tuple[int, int], ...]
    sorting: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "fractions",
                           tuple((int(a), int(b)) for a, b in self.fractions))
        object.__setattr__(self, "sorting", tuple(self.sorting))
        m = len(self.fractions)
        if sorted(self.sorting) != list(range(1, m + 1)):
            raise ValueError("sorting must be a permutation of fraction positions")
        for t in range(m):
            den = self.fractions[self.sorting[t] - 1][1]
            nxt = self.fractions[self.sorting[(t + 1) % m] - 1][0]
            if den != nxt:
                raise ValueError("fractions do not chain cyclically under sorting")


def is_cyclically_constructed(fractions) -> tuple[int, ...] | None:
    """Find a cyclic head-to-tail ordering of (numerator, denominator) pairs.

    Returns a tuple of 1-based positions (a valid CyclicBlock sorting), or
    None when no ordering exists.  Viewing each fraction as a directed edge
    numerator -> denominator, an ordering is exactly a closed trail through
    every edge once, so we require balanced degrees plus connectivity and
    extract the trail with smallest-position edge choices.
    """
    fractions = [(int(a), int(b)) for a, b in fractions]
    m = len(fractions)
    if m == 0:
        raise ValueError("need at least one fraction")
    out: dict[int, list[int]] = {}
    indeg: dict[int, int] = {}
    for pos, (num, den) in enumerate(fractions, start=1):
        out.setdefault(num, []).append(pos)
        out.setdefault(den, [])
        indeg[den] = indeg.get(den, 0) + 1
        indeg.setdefault(num, indeg.get(num, 0))
    for vert in out:
        if len(out[vert]) != indeg.get(vert, 0):
            return None
    for positions in out.values():
        positions.sort(reverse=True)  # pop() yields smallest position
    start = min(v for v in out if out[v])
    stack: list[tuple[int, int | None]] = [(start, None)]
    trail: list[int] = []
    while stack:
        vert, arrived_by = stack[-1]
        if out[vert]:
            pos = out[vert].pop()
            stack.append((fractions[pos - 1][1], pos))
        else:
            stack.pop()
            if arrived_by is not None:
                trail.append(arrived_by)
    if len(trail) != m:
        return None  # edges not connected: several disjoint chains
    trail.reverse()
    return tuple(trail)


def ratio_rewrite(sigma: Permutation) -> list[list[int]]:
    """Per-term alphabet intervals of the right-hand side.

    Term i rewrites as the product of a_j over the cyclic interval
    [i, i+1, ..., i + d - 1] where d is the forward displacement of i;
    the interval is empty for fixed points.  Substituting a_j = x_j/x_{j+1}
    telescopes each product back to x_i / x_{sigma(i)}.
    """
    n = sigma.n
    return [
        [wrap_index(n, i + t) for t in range(forward_displacement(sigma, i))]
        for i in range(1, n + 1)
    ]


def _backward_intervals(sigma: Permutation) -> list[list[int]]:
    # term i over the inverse alphabet: b_j for j in [sigma(i), ..., i-1]
    n = sigma.n
    return [
        [wrap_index(n, sigma.apply(i) + t)
         for t in range(backward_displacement(sigma, i))]
        for i in range(1, n + 1)
    ]


def cyclic_blocks(sigma: Permutation) -> tuple[int, list[CyclicBlock]]:
    """Split sum_i x_i/x_{sigma(i)} into an integer plus closed chains.

    Fixed points contribute 1 each (the integer part); every orbit of
    length >= 2 contributes the chain x_c0/x_c1 + x_c1/x_c2 + ... + x_cm/x_c0,
    which is cyclically constructed by construction (identity sorting).
    """
    dec = cycle_decomposition(sigma)
    blocks = []
    for cycle in dec.cycles:
        m = len(cycle)
        fractions = tuple((cycle[t], cycle[(t + 1) % m]) for t in range(m))
        blocks.append(CyclicBlock(fractions, tuple(range(1, m + 1))))
    return len(dec.fixed_points), blocks


def block_alphabet_counts(block: CyclicBlock, n: int) -> list[int]:
    """How many times each a_1..a_n occurs when the block's fractions are
    expanded into products of consecutive ratio variables."""
    counts = [0] * n
    for num, den in block.fractions:
        for t in range((den - num) % n):
            counts[(num - 1 + t) % n] += 1
    return counts


@dataclass(frozen=True)
class DecompositionCertificate:
    """Exact bookkeeping reducing the inequality to a rearrangement.

    For alphabet "a" the certified exponent is k = u/v >= 0; for alphabet
    "b" it is k = -u/v (the counts then live over the inverse alphabet).
    summands[i][j] counts copies of symbol j+1 raised to 1/(v*n) in summand
    i+1; every row and column sums to u*n.  rounds lists u*n bijections
    (1-based images) that jointly consume every count exactly once.
    """

    n: int
    u: int
    v: int
    alphabet: str
    summands: tuple[tuple[int, ...], ...]
    rounds: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "summands",
                           tuple(tuple(int(c) for c in row) for row in self.summands))
        object.__setattr__(self, "rounds",
                           tuple(tuple(int(c) for c in row) for row in self.rounds))
        if self.alphabet not in ("a", "b"):
            raise ValueError(f"alphabet must be 'a' or 'b', got {self.alphabet!r}")
        if self.u < 0 or self.v <= 0:
            raise ValueError("need u >= 0 and v >= 1")

    @property
    def exponent(self) -> RationalExponent:
        return RationalExponent(self.u if self.alphabet == "a" else -self.u, self.v)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "u": self.u,
            "v": self.v,
            "alphabet": self.alphabet,
            "summands": [list(row) for row in self.summands],
            "rounds": [list(row) for row in self.rounds],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "DecompositionCertificate":
        try:
            return cls(
                n=int(doc["n"]),
                u=int(doc["u"]),
                v=int(doc["v"]),
                alphabet=doc["alphabet"],
                summands=tuple(tuple(row) for row in doc["summands"]),
                rounds=tuple(tuple(row) for row in doc["rounds"]),
            )
        except (KeyError, TypeError) as err:
            raise ValueError(f"malformed certificate document: {err}") from err


class CheckResult:
    """Boolean verdict with a diagnosis code when the check fails."""

    __slots__ = ("ok", "diagnosis")

    def __init__(self, ok: bool, diagnosis: str | None = None):
        self.ok = ok
        self.diagnosis = diagnosis

    def __bool__(self) -> bool:
        return self.ok

    def __repr__(self) -> str:
        return f"CheckResult(ok={self.ok}, diagnosis={self.diagnosis!r})"

    def __eq__(self, other):
        if isinstance(other, CheckResult):
            return (self.ok, self.diagnosis) == (other.ok, other.diagnosis)
        if isinstance(other, bool):
            return self.ok == other
        return NotImplemented


def _expected_counts(sigma: Permutation, u: int, v: int, alphabet: str) -> list[list[int]]:
    n = sigma.n
    if alphabet == "a":
        intervals = ratio_rewrite(sigma)
        disps = [forward_displacement(sigma, i) for i in range(1, n + 1)]
    else:
        intervals = _backward_intervals(sigma)
        disps = [backward_displacement(sigma, i) for i in range(1, n + 1)]
    rows = []
    for interval, d in zip(intervals, disps):
        base = u - v * d  # the rebalancing power of the full product
        row = [base] * n
        for j in interval:
            row[j - 1] += v * n
        rows.append(row)
    return rows


def _perfect_matching(support: list[list[int]]) -> list[int] | None:
    """Augmenting-path matching; support[i] lists 0-based columns ascending.

    Returns row -> column assignments, or None if no perfect matching.
    Deterministic: rows are processed in order and edges in ascending column.
    """
    n = len(support)
    col_owner = [-1] * n

    def try_row(i: int, visited: list[bool]) -> bool:
        for j in support[i]:
            if visited[j]:
                continue
            visited[j] = True
            if col_owner[j] < 0 or try_row(col_owner[j], visited):
                col_owner[j] = i
                return True
        return False

    for i in range(n):
        if not try_row(i, [False] * n):
            return None
    row_to_col = [-1] * n
    for j, i in enumerate(col_owner):
        row_to_col[i] = j
    return row_to_col


def build_certificate(sigma: Permutation, k) -> DecompositionCertificate:
    """Construct the certificate for an admissible rational exponent.

    Rounds are extracted greedily: at each stage the remaining counts have
    equal row and column sums, so the marriage condition holds and a perfect
    matching on the positive entries exists; matched entries are decremented
    and the matching recorded.  Raises NotAdmissible when the exponent is
    outside the admissible range (IrrationalExponent for non-exact input).
    """
    k = as_rational(k)
    if not holds(sigma, float(k)):
        raise NotAdmissible(
            f"exponent {k} is outside the admissible range for sigma={list(sigma.images)}"
        )
    n = sigma.n
    alphabet = "a" if k.u >= 0 else "b"
    u, v = abs(k.u), k.v
    counts = _expected_counts(sigma, u, v, alphabet)
    remaining = [row[:] for row in counts]
    rounds = []
    for _ in range(u * n):
        support = [[j for j in range(n) if row[j] > 0] for row in remaining]
        match = _perfect_matching(support)
        if match is None:
            raise MatchingFailed(
                "no system of distinct representatives; count table is corrupt"
            )
        for i, j in enumerate(match):
            remaining[i][j] -= 1
        rounds.append(tuple(j + 1 for j in match))
    if any(c != 0 for row in remaining for c in row):
        raise MatchingFailed("rounds did not consume all counts")
    return DecompositionCertificate(
        n=n, u=u, v=v, alphabet=alphabet,
        summands=tuple(tuple(row) for row in counts),
        rounds=tuple(rounds),
    )


def check_certificate(cert: DecompositionCertificate, sigma: Permutation) -> CheckResult:
    """Verify the three certificate invariants in exact integer arithmetic.

    Checked in order: equal column sums (each symbol used u*n times in
    total), the per-summand exponent identity against the displacement
    rewrite for sigma, and that the rounds are bijections that jointly
    consume every count.  A passing certificate is literally in
    rearrangement form, which proves the inequality for (sigma, k).
    """
    n = cert.n
    if sigma.n != n:
        return CheckResult(False, "BadExponentIdentity")
    un = cert.u * n
    if len(cert.summands) != n or any(len(row) != n for row in cert.summands):
        return CheckResult(False, "BadExponentIdentity")
    for j in range(n):
        if sum(row[j] for row in cert.summands) != un:
            return CheckResult(False, "BadColumnSum")
    expected = _expected_counts(sigma, cert.u, cert.v, cert.alphabet)
    if [list(row) for row in cert.summands] != expected:
        return CheckResult(False, "BadExponentIdentity")
    if len(cert.rounds) != un:
        return CheckResult(False, "BadRounds")
    tally = [[0] * n for _ in range(n)]
    for rnd in cert.rounds:
        if sorted(rnd) != list(range(1, n + 1)):
            return CheckResult(False, "BadRounds")
        for i, j in enumerate(rnd):
            tally[i][j - 1] += 1
    if tally != [list(row) for row in cert.summands]:
        return CheckResult(False, "BadRounds")
    return CheckResult(True, None)


def certificate_sides(cert: DecompositionCertificate, x) -> tuple[float, float]:
    """Numeric (lhs, rhs) of the certified inequality at a concrete vector.

    lhs is sum_i alpha_i^(u/v) over the certificate's alphabet; rhs is the
    sum of the summand products prescribed by the count table.  For a valid
    certificate the rhs equals sum_i x_i / x_{sigma(i)} up to rounding.
    """
    ratios = RatioVector.from_x([float(c) for c in x])
    if ratios.n != cert.n:
        raise ValueError(f"expected {cert.n} coordinates, got {ratios.n}")
    alpha = ratios.a if cert.alphabet == "a" else ratios.b
    loga = [log(val) for val in alpha]
    kv = cert.u / cert.v
    lhs = sum(exp(kv * la) for la in loga)
    vn = cert.v * cert.n
    rhs = sum(
        exp(sum(c * la for c, la in zip(row, loga)) / vn)
        for row in cert.summands
    )
    return lhs, rhs
