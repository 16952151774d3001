"""Named verification suites: every cross-check the engines support, bundled
for the CLI.

Each suite returns CheckReport records. Bounds come from SuiteBounds; a
bound left as None falls back to the per-check desk-scale default, and
expensive enumerations additionally cap themselves so that a large n_max
aimed at the cheap checks cannot silently start a week-long walk.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial

from . import boxes, eulerian, hopping, twosided
from .common import CheckReport
from .exactnum import BiPoly, UniPoly, binomial, sturm_negative_root_count
from .perm import Perm, descent_count, enumerate_sn, inverse


@dataclass(frozen=True)
class SuiteBounds:
    n_max: int | None = None
    k_max: int | None = None
    l_max: int | None = None
    terms: int | None = None


def _bound(value: int | None, default: int, cap: int | None = None) -> int:
    out = default if value is None else value
    if cap is not None:
        out = min(out, cap)
    return max(out, 1)


def _all_pass(ok_detail: list[str], bad_detail: list[str], description: str) -> CheckReport:
    if bad_detail:
        return CheckReport(False, description, "; ".join(bad_detail[:3]))
    return CheckReport(True, description, "; ".join(ok_detail))


# ---------------------------------------------------------------------------


def suite_eulerian(bounds: SuiteBounds) -> list[CheckReport]:
    n_max = _bound(bounds.n_max, 12)
    n_brute = _bound(bounds.n_max, 9, cap=9)
    k_max = _bound(bounds.k_max, 8)
    terms = _bound(bounds.terms, 12)
    table = eulerian.table_from_recurrence(n_max)
    checks = []

    bad = []
    for n in range(1, n_brute + 1):
        if eulerian.table_brute_force(n) != table.row(n):
            bad.append(f"n={n}")
    checks.append(
        _all_pass([], bad, f"brute force and recurrence rows agree for n <= {n_brute}")
    )

    bad = [
        f"n={n}" for n in range(1, n_max + 1) if sum(table.row(n)) != factorial(n)
    ]
    checks.append(_all_pass([], bad, f"row sums equal n! for n <= {n_max}"))

    bad = [
        f"n={n}"
        for n in range(1, n_max + 1)
        if table.row(n) != tuple(reversed(table.row(n)))
    ]
    checks.append(_all_pass([], bad, f"rows are palindromic for n <= {n_max}"))

    bad = [
        f"n={n}"
        for n in range(1, n_max + 1)
        if not eulerian.check_unimodality(table.row(n))
    ]
    checks.append(_all_pass([], bad, f"rows are unimodal for n <= {n_max}"))

    bad = []
    for n in range(1, min(n_max, 8) + 1):
        for k in range(0, k_max + 1):
            try:
                eulerian.worpitzky_identity(n, k, row=table.row(n))
            except Exception as exc:  # ConsistencyError carries the mismatch
                bad.append(str(exc))
    spot = eulerian.worpitzky_identity(4, 3)
    checks.append(
        _all_pass(
            [f"spot value 3^4 = {spot}"],
            bad,
            f"Worpitzky identity holds for n <= {min(n_max, 8)}, k <= {k_max}",
        )
    )

    bad = []
    for n in range(1, min(n_max, 8) + 1):
        report = eulerian.verify_power_sum_series(n, terms)
        if not report.ok:
            bad.append(f"n={n}: {report.detail}")
    checks.append(
        _all_pass(
            [],
            bad,
            f"series window of A_n(t)/(1-t)^(n+1) matches k^n for n <= {min(n_max, 8)}, "
            f"k <= {terms}",
        )
    )

    bad = []
    for n in range(2, n_max + 1):
        report = eulerian.verify_polynomial_recurrence(n)
        if not report.ok:
            bad.append(f"n={n}: {report.detail}")
    checks.append(
        _all_pass([], bad, f"derivative recurrence reproduces A_n(t) for n <= {n_max}")
    )

    bad = []
    for n in range(1, n_max + 1):
        gv = eulerian.gamma_extract(eulerian.eulerian_polynomial(n), n)
        if not gv.nonnegative:
            bad.append(f"n={n}: {gv.gammas}")
        if sum(g * 2 ** (n + 1 - 2 * i) for i, g in enumerate(gv.gammas, start=1)) != factorial(n):
            bad.append(f"n={n}: gamma total mismatch")
    checks.append(
        _all_pass(
            [],
            bad,
            f"gamma vectors are nonnegative and evaluate to n! at t=1 for n <= {n_max}",
        )
    )

    bad = []
    for n in range(1, min(n_max, 10) + 1):
        poly = UniPoly.from_coeffs(table.row(n))
        count, distinct = sturm_negative_root_count(poly)
        if count != n - 1 or not distinct:
            bad.append(f"n={n}: ({count}, {distinct})")
    checks.append(
        _all_pass(
            [],
            bad,
            f"A_n(t)/t has n-1 distinct negative roots (Sturm) for n <= {min(n_max, 10)}",
        )
    )

    return checks


# ---------------------------------------------------------------------------


def suite_twosided(bounds: SuiteBounds) -> list[CheckReport]:
    n_max = _bound(bounds.n_max, 12)
    n_brute = _bound(bounds.n_max, 8, cap=9)
    k_max = _bound(bounds.k_max, 5)
    l_max = _bound(bounds.l_max, 5)
    terms = _bound(bounds.terms, 5)
    tables = twosided.two_sided_from_recurrence(n_max)
    uni = eulerian.table_from_recurrence(n_max)
    checks = []

    bad = []
    for n in range(1, n_brute + 1):
        if twosided.two_sided_brute_force(n).entries != tables[n - 1].entries:
            bad.append(f"n={n}")
    checks.append(
        _all_pass([], bad, f"brute force and recurrence arrays agree for n <= {n_brute}")
    )

    bad = []
    for n in range(1, n_max + 1):
        t = tables[n - 1]
        if t.row_marginal() != uni.row(n) or t.column_marginal() != uni.row(n):
            bad.append(f"n={n}")
        if t.total() != factorial(n):
            bad.append(f"n={n}: total")
    checks.append(
        _all_pass(
            [], bad, f"marginals match the one-sided rows and total n! for n <= {n_max}"
        )
    )

    bad = []
    for n in range(1, n_max + 1):
        swap, reverse, both = twosided.check_symmetries(tables[n - 1])
        if not (swap and reverse and both):
            bad.append(f"n={n}: ({swap}, {reverse}, {both})")
    checks.append(
        _all_pass(
            [], bad, f"transpose and antipodal symmetries hold for n <= {n_max}"
        )
    )

    bad = []
    for n in range(1, min(n_max, 6) + 1):
        report = twosided.verify_grid_series(n, terms)
        if not report.ok:
            bad.append(f"n={n}: {report.detail}")
    checks.append(
        _all_pass(
            [],
            bad,
            f"grid series matches binomial(kl+n-1,n) for n <= {min(n_max, 6)}, "
            f"k,l <= {terms}",
        )
    )

    bad = []
    for n in range(1, min(n_max, 6) + 1):
        for k in range(0, k_max + 1):
            for l in range(0, l_max + 1):
                try:
                    twosided.worpitzky_grid_identity(n, k, l, table=tables[n - 1])
                except Exception as exc:
                    bad.append(str(exc))
    checks.append(
        _all_pass(
            [],
            bad,
            f"two-sided Worpitzky identity holds for n <= {min(n_max, 6)}, "
            f"k <= {k_max}, l <= {l_max}",
        )
    )

    bad = []
    for n in range(2, n_max + 1):
        report = twosided.verify_bivariate_recurrence(n)
        if not report.ok:
            bad.append(f"n={n}: {report.detail}")
    checks.append(
        _all_pass(
            [], bad, f"bivariate derivative recurrence reproduces n A_n(s,t) for n <= {n_max}"
        )
    )

    detail = []
    bad = []
    for n in range(1, min(n_max, 8) + 1):
        violations = twosided.diagonal_monotonicity_probe(tables[n - 1])
        if n <= 7 and violations:
            bad.append(f"unexpected violation at n={n}")
        if n == 8:
            found = {(v.i, v.j, v.value, v.toward_value) for v in violations}
            if found != {(2, 3, 126, 84), (3, 4, 1980, 1773)}:
                bad.append(f"n=8 violations were {sorted(found)}")
            else:
                detail.append("first violations at n=8: 126 > 84 and 1980 > 1773")
    checks.append(
        _all_pass(
            detail,
            bad,
            "diagonal monotonicity holds through n=7 and first breaks at n=8 as documented",
        )
    )

    return checks


# ---------------------------------------------------------------------------


def suite_boxes(bounds: SuiteBounds) -> list[CheckReport]:
    n_census = _bound(bounds.n_max, 5, cap=5)
    k_census = _bound(bounds.k_max, 5, cap=6)
    n_sum = _bound(bounds.n_max, 6, cap=8)
    checks = []

    bad = []
    for n in range(1, n_census + 1):
        for k in range(0, k_census + 1):
            census = boxes.oracle_barred_census(n, k)
            if sum(census.values()) != k**n:
                bad.append(f"census total at n={n}, k={k}")
            for w, count in census.items():
                if count != boxes.count_barred(w, k):
                    bad.append(f"n={n}, k={k}, w={w}")
    checks.append(
        _all_pass(
            [],
            bad,
            f"barred census matches the closed form for n <= {n_census}, k <= {k_census}",
        )
    )

    bad = []
    for n in range(1, n_sum + 1):
        for k in range(0, 7):
            total = sum(boxes.count_barred(w, k) for w in enumerate_sn(n))
            if total != k**n:
                bad.append(f"n={n}, k={k}")
    checks.append(
        _all_pass(
            [], bad, f"closed-form counts sum to k^n over S_n for n <= {n_sum}, k <= 6"
        )
    )

    n_grid = _bound(bounds.n_max, 4, cap=4)
    cr_max = 3
    bad = []
    for n in range(1, n_grid + 1):
        for c in range(0, cr_max + 1):
            for r in range(0, cr_max + 1):
                census = boxes.oracle_two_sided_census(n, c, r)
                if sum(census.values()) != binomial(c * r + n - 1, n):
                    bad.append(f"total at n={n}, c={c}, r={r}")
                for w, count in census.items():
                    if count != boxes.count_two_sided(w, c, r):
                        bad.append(f"n={n}, c={c}, r={r}, w={w}")
    checks.append(
        _all_pass(
            [],
            bad,
            f"grid census matches the closed form for n <= {n_grid}, "
            f"columns, rows <= {cr_max}",
        )
    )

    placement = boxes.GridPlacement.from_triples(
        [[1, 1, 1], [1, 4, 1], [2, 1, 1], [3, 1, 2], [3, 3, 1], [5, 1, 1]],
        columns=5,
        rows=4,
    )
    standardized = boxes.grid_placement_to_permutation(placement)
    ok = standardized.underlying == (1, 7, 2, 3, 4, 6, 5)
    checks.append(
        CheckReport(
            ok,
            "the worked 5x4 grid placement standardizes to 1723465",
            f"got {standardized.underlying}",
        )
    )

    bad = []
    for n in range(1, n_grid + 1):
        for c in range(1, cr_max + 1):
            for r in range(1, cr_max + 1):
                cells = [(col, row) for col in range(1, c + 1) for row in range(1, r + 1)]
                for multiset in itertools.combinations_with_replacement(cells, n):
                    counts: dict[tuple[int, int], int] = {}
                    for cell in multiset:
                        counts[cell] = counts.get(cell, 0) + 1
                    g = boxes.GridPlacement(
                        c, r, tuple(sorted((cc, rr, m) for (cc, rr), m in counts.items()))
                    )
                    tsb = boxes.grid_placement_to_permutation(g)
                    w = tsb.underlying
                    inv = inverse(w)
                    des = {q for q in range(1, len(w)) if w[q - 1] > w[q]}
                    ides_pos = {q for q in range(1, len(w)) if inv[q - 1] > inv[q]}
                    if not des <= boxes.cut_positions(tsb.column_blocks):
                        bad.append(f"vertical bars miss a descent: {g}")
                    if not ides_pos <= boxes.cut_positions(tsb.row_blocks):
                        bad.append(f"horizontal bars miss an inverse descent: {g}")
    checks.append(
        _all_pass(
            [],
            bad,
            f"bars cover descents on both sides for n <= {n_grid}, grids <= "
            f"{cr_max}x{cr_max}",
        )
    )

    return checks


# ---------------------------------------------------------------------------


def suite_hopping(bounds: SuiteBounds) -> list[CheckReport]:
    n_small = _bound(bounds.n_max, 6, cap=6)
    n_mid = _bound(bounds.n_max, 7, cap=7)
    n_census = _bound(bounds.n_max, 9, cap=9)
    checks = []

    bad = []
    for n in range(1, n_small + 1):
        for w in enumerate_sn(n):
            free = hopping.free_values(w)
            for x in free:
                if hopping.hop(hopping.hop(w, x), x) != w:
                    bad.append(f"involution fails at {w}, x={x}")
                if abs(descent_count(hopping.hop(w, x)) - descent_count(w)) != 1:
                    bad.append(f"descent step at {w}, x={x}")
            for x in free:
                for y in free:
                    if x != y and hopping.hop(hopping.hop(w, x), y) != hopping.hop(
                        hopping.hop(w, y), x
                    ):
                        bad.append(f"commutation fails at {w}, x={x}, y={y}")
    checks.append(
        _all_pass(
            [],
            bad,
            f"hops are involutions, move descents by one, and commute for n <= {n_small}",
        )
    )

    bad = []
    for n in range(1, n_mid + 1):
        for w in enumerate_sn(n):
            kinds = hopping.classify_letters(w)
            dd = sum(1 for k in kinds if k == hopping.DOUBLE_DESCENT)
            peaks = sum(1 for k in kinds if k == hopping.PEAK)
            valleys = sum(1 for k in kinds if k == hopping.VALLEY)
            if descent_count(w) != peaks + dd:
                bad.append(f"descent split fails at {w}")
            if valleys != peaks + 1:
                bad.append(f"valley count fails at {w}")
    checks.append(
        _all_pass(
            [],
            bad,
            f"descents split into peaks plus double descents and valleys exceed "
            f"peaks by one for n <= {n_mid}",
        )
    )

    bad = []
    for n in range(1, n_small + 1):
        seen: set[Perm] = set()
        for w in enumerate_sn(n):
            if w in seen:
                continue
            orbit = hopping.orbit_of(w)
            seen.update(orbit.members)
            peak_sets = {tuple(sorted(hopping.peak_values(u))) for u in orbit.members}
            valley_sets = {
                tuple(sorted(hopping.valley_values(u))) for u in orbit.members
            }
            free_sets = {
                tuple(sorted(hopping.free_values(u))) for u in orbit.members
            }
            if len(peak_sets) != 1 or len(valley_sets) != 1 or len(free_sets) != 1:
                bad.append(f"classification varies over orbit of {w}")
    checks.append(
        _all_pass(
            [],
            bad,
            f"peak, valley, and free sets are orbit invariants for n <= {n_small}",
        )
    )

    bad = []
    for n in range(1, n_mid + 1):
        uni_total = UniPoly()
        bi_total = BiPoly()
        seen = set()
        for w in enumerate_sn(n):
            if w in seen:
                continue
            orbit = hopping.orbit_of(w)
            seen.update(orbit.members)
            uni_total = uni_total + hopping.orbit_descent_polynomial(orbit)
            bi_total = bi_total + hopping.orbit_descent_polynomial(orbit, "bivariate")
        if uni_total != eulerian.eulerian_polynomial(n):
            bad.append(f"univariate orbit sum fails at n={n}")
        if bi_total != twosided.two_sided_polynomial(n):
            bad.append(f"bivariate orbit sum fails at n={n}")
    checks.append(
        _all_pass(
            [],
            bad,
            f"orbit generating functions sum to the full distributions for n <= {n_mid}",
        )
    )

    bad = []
    for n in range(1, n_census + 1):
        census = hopping.orbit_census(n)
        gv = eulerian.gamma_extract(eulerian.eulerian_polynomial(n), n)
        expected = {
            i - 1: g for i, g in enumerate(gv.gammas, start=1) if g
        }
        if census != expected:
            bad.append(f"n={n}: census {census} vs gamma {expected}")
    checks.append(
        _all_pass(
            [],
            bad,
            f"orbit census by peak count equals the gamma vector for n <= {n_census}",
        )
    )

    golden = hopping.orbit_of((8, 6, 3, 2, 4, 7, 1, 5, 9))
    uni = hopping.orbit_descent_polynomial(golden)
    bi = hopping.orbit_descent_polynomial(golden, "bivariate")
    expected_uni = UniPoly.monomial(2) * (UniPoly.one() + UniPoly.monomial(1)) ** 6
    expected_bi = (
        BiPoly.monomial(3, 2)
        * (BiPoly.one() + BiPoly.monomial(0, 1)) ** 2
        * (BiPoly.one() + BiPoly.monomial(1, 1)) ** 4
    )
    ok = golden.size == 64 and uni == expected_uni and bi == expected_bi
    checks.append(
        CheckReport(
            ok,
            "the orbit of 863247159 has 64 members with the documented generating functions",
            f"size {golden.size}",
        )
    )

    return checks


# ---------------------------------------------------------------------------


def suite_gessel(bounds: SuiteBounds) -> list[CheckReport]:
    n_max = _bound(bounds.n_max, 12)
    checks = []
    bad = []
    worst = None
    for n in range(1, n_max + 1):
        poly = twosided.two_sided_polynomial(n)
        expansion = twosided.gessel_solve(poly, n)
        if not expansion.nonnegative:
            negative = {k: v for k, v in expansion.gammas.items() if v < 0}
            bad.append(f"n={n}: negative coefficients {negative}")
        smallest = min(expansion.gammas.values())
        if worst is None or smallest < worst[1]:
            worst = (n, smallest)
    checks.append(
        _all_pass(
            [f"smallest coefficient seen: {worst[1]} at n={worst[0]}"],
            bad,
            f"Gessel expansions are integral and nonnegative for n <= {n_max}",
        )
    )
    return checks


# ---------------------------------------------------------------------------


SUITES = {
    "eulerian": suite_eulerian,
    "twosided": suite_twosided,
    "boxes": suite_boxes,
    "hopping": suite_hopping,
    "gessel": suite_gessel,
}

SUITE_ORDER = ["eulerian", "twosided", "boxes", "hopping", "gessel"]


def run_suite(name: str, bounds: SuiteBounds) -> list[CheckReport]:
    if name == "all":
        out = []
        for suite in SUITE_ORDER:
            out.extend(SUITES[suite](bounds))
        return out
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    return SUITES[name](bounds)
