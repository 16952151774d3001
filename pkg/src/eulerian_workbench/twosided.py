"""Two-sided Eulerian numbers and the Gessel-basis expansion.

A(n, i, j) counts permutations of {1, ..., n} with i - 1 inverse descents
and j - 1 descents. Routes implemented here:

- brute force over S_n (optionally sharded) histogramming both statistics;
- a four-term recurrence producing n * A(n, i, j) from row n - 1, with the
  divisibility by n asserted on every entry;
- the grid series: A_n(s, t) / ((1 - s)**(n+1) (1 - t)**(n+1)) has
  s**k t**l coefficient binomial(k l + n - 1, n);
- the two-sided Worpitzky identity
  binomial(k l + n - 1, n)
      = sum_{i,j} A(n, i, j) binomial(k + n - i, n) binomial(l + n - j, n);
- the bivariate derivative recurrence for n A_n(s, t) from A_{n-1}(s, t).

The distribution is symmetric in the two statistics and palindromic under
(i, j) -> (n + 1 - i, n + 1 - j). Any polynomial with those symmetries
expands uniquely in the basis

    (s t)**i (s + t)**j (1 + s t)**(n + 1 - j - 2 i),  i >= 1, j >= 0,
    2 i + j <= n + 1,

and gessel_solve finds that expansion by exact rational elimination. The
conjecture under test is that every coefficient is nonnegative for A_n(s, t).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .common import CheckReport, ConsistencyError, GuardRailError
from .exactnum import (
    BiPoly,
    binomial,
    geometric_power_window,
    series_product_bivariate,
    solve_exact_linear,
)
from .perm import enumerate_sn

BRUTE_FORCE_GUARD = 11


@dataclass(frozen=True)
class TwoSidedTable:
    """The n-by-n array for one n; entry(i, j) is A(n, i, j), 1-based."""

    n: int
    entries: tuple[tuple[int, ...], ...]

    def entry(self, i: int, j: int) -> int:
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            return 0
        return self.entries[i - 1][j - 1]

    def total(self) -> int:
        return sum(sum(row) for row in self.entries)

    def row_marginal(self) -> tuple[int, ...]:
        """Marginal over j: counts by inverse descents alone."""
        return tuple(sum(row) for row in self.entries)

    def column_marginal(self) -> tuple[int, ...]:
        return tuple(sum(col) for col in zip(*self.entries))


def _check_brute_rail(n: int, force: bool) -> None:
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > BRUTE_FORCE_GUARD and not force:
        raise GuardRailError(
            f"brute force over S_{n} means {factorial(n)} permutations; "
            f"pass force (--force) to go past n={BRUTE_FORCE_GUARD}"
        )


def _pair_histogram_shard(task: tuple[int, int, int, bool]) -> list[int]:
    n, index, total, force = task
    hist = [0] * (n * n)
    inv = [0] * n
    for w in enumerate_sn(n, shard=(index, total), force=force):
        des = 0
        prev = w[0]
        for x in w[1:]:
            if prev > x:
                des += 1
            prev = x
        for pos, letter in enumerate(w, start=1):
            inv[letter - 1] = pos
        ides = 0
        prev = inv[0]
        for x in inv[1:]:
            if prev > x:
                ides += 1
            prev = x
        hist[ides * n + des] += 1
    return hist


def brute_force_tables(
    ns: list[int], shards: int = 1, force: bool = False
) -> dict[int, TwoSidedTable]:
    """Brute-force (ides, des) histograms for several n with one pool."""
    for n in ns:
        _check_brute_rail(n, force)
    if shards < 1:
        raise ValueError("shards must be positive")
    tasks = [(n, index, shards, force) for n in ns for index in range(shards)]
    if shards == 1:
        results = [_pair_histogram_shard(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=shards) as pool:
            results = list(pool.map(_pair_histogram_shard, tasks))
    tables: dict[int, TwoSidedTable] = {}
    for n_at, n in enumerate(ns):
        merged = [0] * (n * n)
        for index in range(shards):
            for i, c in enumerate(results[n_at * shards + index]):
                merged[i] += c
        tables[n] = TwoSidedTable(
            n, tuple(tuple(merged[i * n : (i + 1) * n]) for i in range(n))
        )
    return tables


def two_sided_brute_force(n: int, shards: int = 1, force: bool = False) -> TwoSidedTable:
    return brute_force_tables([n], shards=shards, force=force)[n]


def two_sided_from_recurrence(n_max: int) -> list[TwoSidedTable]:
    """Tables for n = 1..n_max from the four-term recurrence.

    Every intermediate sum must be divisible by n; a failure raises
    ConsistencyError because it can only come from a broken table.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    tables = [TwoSidedTable(1, ((1,),))]
    for n in range(2, n_max + 1):
        prev = tables[-1]

        def a(i: int, j: int) -> int:
            return prev.entry(i, j)

        grid = []
        for i in range(1, n + 1):
            row = []
            for j in range(1, n + 1):
                total = (
                    (i * j + n - 1) * a(i, j)
                    + (1 - n + j * (n + 1 - i)) * a(i - 1, j)
                    + (1 - n + i * (n + 1 - j)) * a(i, j - 1)
                    + (n - 1 + (n + 1 - i) * (n + 1 - j)) * a(i - 1, j - 1)
                )
                if total % n:
                    raise ConsistencyError(
                        f"recurrence sum {total} at (n={n}, i={i}, j={j}) "
                        f"is not divisible by {n}"
                    )
                row.append(total // n)
            grid.append(tuple(row))
        tables.append(TwoSidedTable(n, tuple(grid)))
    return tables[:n_max]


def polynomial_from_table(table: TwoSidedTable) -> BiPoly:
    return BiPoly.from_dict(
        {
            (i, j): table.entry(i, j)
            for i in range(1, table.n + 1)
            for j in range(1, table.n + 1)
        }
    )


def two_sided_polynomial(
    n: int, source: str = "recurrence", shards: int = 1, force: bool = False
) -> BiPoly:
    """A_n(s, t) with s tracking inverse descents and t descents."""
    if source == "recurrence":
        table = two_sided_from_recurrence(n)[n - 1]
    elif source == "brute":
        table = two_sided_brute_force(n, shards=shards, force=force)
    else:
        raise ValueError("source must be 'recurrence' or 'brute'")
    return polynomial_from_table(table)


def verify_grid_series(n: int, terms: int, source: str = "recurrence") -> CheckReport:
    """Check the double series of A_n(s, t) / ((1-s)(1-t))**(n+1).

    Entry (k, l) must equal binomial(k l + n - 1, n) for k, l <= terms.
    """
    poly = two_sided_polynomial(n, source=source)
    window = geometric_power_window(n + 1, terms)
    grid = series_product_bivariate(poly, window, window)
    description = (
        f"A_{n}(s,t)/((1-s)(1-t))^{n + 1} matches binomial(kl+{n - 1},{n}) "
        f"for k,l <= {terms}"
    )
    for k in range(terms + 1):
        for l in range(terms + 1):
            expected = binomial(k * l + n - 1, n)
            if grid.coeffs[k][l] != expected:
                return CheckReport(
                    False,
                    description,
                    f"entry ({k},{l}) is {grid.coeffs[k][l]}, expected {expected}",
                )
    return CheckReport(True, description)


def worpitzky_grid_identity(
    n: int, k: int, l: int, table: TwoSidedTable | None = None
) -> int:
    """binomial(k l + n - 1, n) as the double Worpitzky sum; asserted."""
    if k < 0 or l < 0:
        raise ValueError("k and l must be nonnegative")
    if table is None:
        table = two_sided_from_recurrence(n)[n - 1]
    value = sum(
        table.entry(i, j) * binomial(k + n - i, n) * binomial(l + n - j, n)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    )
    expected = binomial(k * l + n - 1, n)
    if value != expected:
        raise ConsistencyError(
            f"two-sided Worpitzky sum at n={n}, k={k}, l={l} gave {value}, "
            f"expected {expected}"
        )
    return value


def verify_bivariate_recurrence(n: int, source: str = "recurrence") -> CheckReport:
    """Check the derivative recurrence giving n A_n(s, t) from A_{n-1}."""
    if n < 2:
        raise ValueError("the derivative recurrence needs n >= 2")
    s = BiPoly.monomial(1, 0)
    t = BiPoly.monomial(0, 1)
    one = BiPoly.one()
    st = s * t
    prev = two_sided_polynomial(n - 1, source=source)
    rhs = (
        (n * n * st + (n - 1) * (one - s) * (one - t)) * prev
        + n * st * (one - s) * prev.partial_derivative("s")
        + n * st * (one - t) * prev.partial_derivative("t")
        + st * (one - s) * (one - t) * prev.partial_derivative("s").partial_derivative("t")
    )
    lhs = n * two_sided_polynomial(n, source=source)
    description = f"bivariate derivative recurrence reproduces {n} * A_{n}(s,t)"
    if lhs == rhs:
        return CheckReport(True, description)
    diff = lhs - rhs
    a, b, _ = diff.terms[0]
    return CheckReport(
        False,
        description,
        f"first mismatch at s^{a} t^{b}: {lhs.coeff(a, b)} vs {rhs.coeff(a, b)}",
    )


def check_symmetries(table: TwoSidedTable) -> tuple[bool, bool, bool]:
    """(transpose symmetry, antipodal palindromicity, their composition)."""
    n = table.n
    swap = all(
        table.entry(i, j) == table.entry(j, i)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    )
    reverse = all(
        table.entry(i, j) == table.entry(n + 1 - i, n + 1 - j)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    )
    both = all(
        table.entry(i, j) == table.entry(n + 1 - j, n + 1 - i)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    )
    return (swap, reverse, both)


@dataclass(frozen=True)
class MonotonicityViolation:
    """A step toward the diagonal that strictly decreases the entry."""

    i: int
    j: int
    step: str  # "raise-i" (i+1, j) or "lower-j" (i, j-1)
    value: int
    toward_value: int


def diagonal_monotonicity_probe(table: TwoSidedTable) -> list[MonotonicityViolation]:
    """List off-diagonal entries above i < j <= ceil(n/2) that beat a
    neighbor one step closer to the diagonal.

    An empty list means the array is monotone toward the diagonal in that
    range; the first violations in n appear at n = 8.
    """
    n = table.n
    out = []
    half = (n + 1) // 2
    for i in range(1, half + 1):
        for j in range(i + 1, half + 1):
            value = table.entry(i, j)
            up = table.entry(i + 1, j)
            if up < value:
                out.append(MonotonicityViolation(i, j, "raise-i", value, up))
            down = table.entry(i, j - 1)
            if down < value:
                out.append(MonotonicityViolation(i, j, "lower-j", value, down))
    return out


# ---------------------------------------------------------------------------
# Gessel basis


@dataclass(frozen=True)
class GesselExpansion:
    """Expansion coefficients keyed by (i, j); nonnegative is the verdict."""

    n: int
    gammas: dict[tuple[int, int], int]
    nonnegative: bool


def gessel_basis_indices(n: int) -> list[tuple[int, int]]:
    """All (i, j) with i >= 1, j >= 0, 2i + j <= n + 1, sorted."""
    return [
        (i, j)
        for i in range(1, (n + 1) // 2 + 1)
        for j in range(0, n + 2 - 2 * i)
    ]


def gessel_basis_element(n: int, i: int, j: int) -> BiPoly:
    """(s t)**i (s + t)**j (1 + s t)**(n + 1 - j - 2i)."""
    st = BiPoly.monomial(1, 1)
    s_plus_t = BiPoly.monomial(1, 0) + BiPoly.monomial(0, 1)
    one_plus_st = BiPoly.one() + BiPoly.monomial(1, 1)
    return st**i * s_plus_t**j * one_plus_st ** (n + 1 - j - 2 * i)


def gessel_solve(p: BiPoly, n: int) -> GesselExpansion:
    """Expand p in the Gessel basis by exact elimination.

    Preconditions: p is symmetric under swapping s and t and palindromic
    under the reciprocal at n + 1 (both checked). The basis must determine
    the coefficients uniquely and integrally, and the reconstruction must
    reproduce p exactly; failures of those raise ConsistencyError.
    """
    if p != p.swap_vars():
        raise ValueError("polynomial is not symmetric in s and t")
    if p != p.reciprocal(n + 1):
        raise ValueError(f"polynomial is not palindromic about ({n + 1}, {n + 1})")
    indices = gessel_basis_indices(n)
    basis = [gessel_basis_element(n, i, j) for i, j in indices]
    monomials = {(a, b) for q in basis for a, b, _ in q.terms}
    monomials.update((a, b) for a, b, _ in p.terms)
    rows = []
    for a, b in sorted(monomials):
        row = [Fraction(q.coeff(a, b)) for q in basis]
        row.append(Fraction(p.coeff(a, b)))
        rows.append(row)
    solution = solve_exact_linear(rows, len(indices))
    for (i, j), value in zip(indices, solution):
        if value.denominator != 1:
            raise ConsistencyError(
                f"coefficient for (i={i}, j={j}) is not an integer: {value}"
            )
    gammas = {idx: int(value) for idx, value in zip(indices, solution)}
    rebuilt = BiPoly()
    for idx, q in zip(indices, basis):
        rebuilt = rebuilt + gammas[idx] * q
    if rebuilt != p:
        raise ConsistencyError("basis reconstruction does not match the input")
    nonnegative = all(v >= 0 for v in gammas.values())
    # zero coefficients carry no information; keep the expansion sparse
    gammas = {idx: v for idx, v in gammas.items() if v != 0}
    return GesselExpansion(n, gammas, nonnegative)


# ---------------------------------------------------------------------------
# JSON schema


def table_to_obj(table: TwoSidedTable, expansion: GesselExpansion | None = None) -> dict:
    obj: dict = {
        "n": str(table.n),
        "A": [[str(c) for c in row] for row in table.entries],
    }
    if expansion is not None:
        obj["gamma"] = {
            f"({i},{j})": str(expansion.gammas[(i, j)])
            for i, j in sorted(expansion.gammas)
        }
        obj["gessel_nonnegative"] = expansion.nonnegative
    return obj


def table_from_obj(obj: dict) -> TwoSidedTable:
    n = int(obj["n"])
    entries = tuple(tuple(int(c) for c in row) for row in obj["A"])
    if len(entries) != n or any(len(row) != n for row in entries):
        raise ValueError(f"array for n={n} is not {n} by {n}")
    return TwoSidedTable(n, entries)


def expansion_from_obj(obj: dict) -> GesselExpansion | None:
    if "gamma" not in obj:
        return None
    gammas: dict[tuple[int, int], int] = {}
    for key, value in obj["gamma"].items():
        i, j = key.strip("()").split(",")
        gammas[(int(i), int(j))] = int(value)
    return GesselExpansion(int(obj["n"]), gammas, bool(obj["gessel_nonnegative"]))
