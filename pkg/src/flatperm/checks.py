"""Named verification suites.

Each suite runs a batch of exact identity checks across the independent
computation routes (brute-force enumeration, q-polynomial recurrences,
kernel pipeline) and returns one CheckResult per claim.  The CLI's
``verify`` command is a thin wrapper over these.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from . import perms
from ._reference import REFERENCE_CTABLES
from .algebra import ConsistencyError, IntPoly
from .genfun import Pipeline
from .recurrence import (
    GTable,
    avoider_count,
    average_occurrences,
    b_poly,
    shared_table,
    verify_a_closed_form,
)

SUITE_NAMES = ("all", "recurrence", "genfun", "constructions")


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _check(results: list[CheckResult], name: str, fn) -> None:
    try:
        ok, detail = fn()
    except ConsistencyError as exc:
        ok, detail = False, str(exc)
    results.append(CheckResult(name, ok, detail if not ok else ""))


def _poly_matches_distribution(table: GTable, n: int, k: int | None) -> bool:
    dist = perms.distribution(n) if k is None else perms.distribution(n, (1, k))
    poly = table.g(n) if k is None else table.g1k(n, k)
    return dist.coeff_list() == list(poly.coeffs)


def recurrence_suite(
    oracle_nmax: int = 7,
    identity_nmax: int = 12,
    avoider_nmax: int = 30,
    average_nmax: int = 25,
    a_form_kmax: int = 15,
    table: GTable | None = None,
) -> list[CheckResult]:
    """Checks of the q-polynomial layer: base values, oracle agreement,
    the g_n(1k) identities, parity, avoiders, averages, and the rational
    closed form of the a/b coefficient tables."""
    table = table or shared_table(2)
    out: list[CheckResult] = []
    q = IntPoly([0, 1])

    _check(out, "base polynomials g_1, g_2, g_3, g_3(12), g_3(13)", lambda: (
        table.g(1) == IntPoly([1])
        and table.g(2) == IntPoly([2])
        and table.g(3) == IntPoly([4, 2])
        and table.g1k(3, 2) == IntPoly([4])
        and table.g1k(3, 3) == IntPoly([0, 2]),
        "",
    ))

    def oracle_agreement():
        for n in range(1, oracle_nmax + 1):
            if not _poly_matches_distribution(table, n, None):
                return False, f"g_{n} disagrees with enumeration"
            for k in range(2, n + 1):
                if not _poly_matches_distribution(table, n, k):
                    return False, f"g_{n}(1{k}) disagrees with enumeration"
        return True, ""
    _check(out, f"enumeration agrees with recurrence for n <= {oracle_nmax}", oracle_agreement)

    def mass_and_sign():
        for n in range(1, identity_nmax + 1):
            g = table.g(n)
            if sum(g.coeffs) != math.factorial(n) or any(c < 0 for c in g.coeffs):
                return False, f"n={n}"
            if n >= 2:
                total = IntPoly()
                for k in range(2, n + 1):
                    total = total + table.g1k(n, k)
                if total != g:
                    return False, f"prefix sum at n={n}"
        return True, ""
    _check(out, f"q=1 mass is n!, coefficients nonnegative, prefixes sum to g_n (n <= {identity_nmax})", mass_and_sign)

    def doubling_identity():
        for n in range(2, identity_nmax + 1):
            if table.g1k(n, 2) != table.g(n - 1) * 2:
                return False, f"n={n}"
        return True, ""
    _check(out, f"g_n(12) = 2 g_(n-1) for n <= {identity_nmax}", doubling_identity)

    def three_term():
        for n in range(5, identity_nmax + 1):
            for k in range(5, n + 1):
                lhs = table.g1k(n, k)
                rhs = (
                    IntPoly([1, 1]) * table.g1k(n, k - 1)
                    - q * table.g1k(n, k - 2)
                    - IntPoly([1, -1]) * table.g1k(n - 1, k - 1)
                )
                if lhs != rhs:
                    return False, f"(n,k)=({n},{k})"
        return True, ""
    _check(out, f"three-term recurrence for g_n(1k), 5 <= k <= n <= {identity_nmax}", three_term)

    def initial_forms():
        one_minus_q = IntPoly([1, -1])
        for n in range(3, identity_nmax + 1):
            if table.g1k(n, 3) != table.g(n - 1) - 2 * one_minus_q * table.g(n - 2):
                return False, f"g_{n}(13)"
            if n >= 4:
                want = (
                    table.g(n - 1)
                    - one_minus_q * IntPoly([3, 2]) * table.g(n - 2)
                    + 2 * one_minus_q * one_minus_q * table.g(n - 3)
                )
                if table.g1k(n, 4) != want:
                    return False, f"g_{n}(14)"
        return True, ""
    _check(out, f"closed initial forms for g_n(13), g_n(14), n <= {identity_nmax}", initial_forms)

    def prefix_recurrence():
        for n in range(3, identity_nmax + 1):
            for i in range(3, n + 1):
                rhs = table.g(n - 1)
                for j in range(2, i):
                    rhs = rhs + (IntPoly.term(1, i - j) - IntPoly([1])) * table.g1k(n - 1, j)
                if table.g1k(n, i) != rhs:
                    return False, f"(n,i)=({n},{i})"
        return True, ""
    _check(out, f"prefix recurrence g_n(1i) = g_(n-1) + sum (q^(i-j)-1) g_(n-1)(1j), n <= {identity_nmax}", prefix_recurrence)

    def parity():
        for n in range(2, identity_nmax + 1):
            for k in range(2, n + 1):
                poly = table.g1k(n, k)
                if any(poly[r] % 2 for r in range(1, poly.degree + 1)):
                    return False, f"(n,k)=({n},{k})"
        return True, ""
    _check(out, f"g_(n,r)(1k) is even for r >= 1, n <= {identity_nmax}", parity)

    def avoiders():
        for n in range(1, avoider_nmax + 1):
            if avoider_count(n) != 2 ** (n - 1):
                return False, f"n={n}"
        for n in range(1, oracle_nmax + 1):
            if perms.distribution(n).count(0) != 2 ** (n - 1):
                return False, f"oracle n={n}"
        return True, ""
    _check(out, f"avoider count is 2^(n-1) (recurrence n <= {avoider_nmax}, oracle n <= {oracle_nmax})", avoiders)

    def averages():
        for n in range(1, average_nmax + 1):
            average_occurrences(n, table)  # raises on mismatch
        return True, ""
    _check(out, f"average occurrences equal (n^2+3n+8)/12 - H_n for n <= {average_nmax}", averages)

    def closed_form():
        rep = verify_a_closed_form(a_form_kmax, a_form_kmax, table)
        return rep.passed, "; ".join(rep.mismatches[:3])
    _check(out, f"closed form of A(x,y) matches a- and b-tables through {a_form_kmax}", closed_form)

    def b_constants():
        for n in range(2, identity_nmax + 1):
            if b_poly(n, 1) != IntPoly([n]):
                return False, f"b({n},1)"
            if n >= 3 and b_poly(n, n - 1) != IntPoly([2]):
                return False, f"b({n},{n - 1})"
        return True, ""
    _check(out, f"b(n,1) = n and b(n,n-1) = 2 for n <= {identity_nmax}", b_constants)

    return out


def genfun_suite(
    r_max: int = 4,
    identity_rmax: int | None = None,
    maximal_nmax: int = 7,
    table: GTable | None = None,
    pipeline: Pipeline | None = None,
) -> list[CheckResult]:
    """Checks of the kernel pipeline: reference c tables, the structure of
    P_r, rationality round trips, the functional-equation identities, and
    the extremal-length facts."""
    table = table or shared_table(2)
    pl = pipeline or Pipeline(r_max=max(r_max, 1), table=table)
    identity_rmax = min(r_max, 4) if identity_rmax is None else identity_rmax
    out: list[CheckResult] = []

    def base_series():
        g0 = pl.g_series(0)
        ok = g0.vdegree == 0 and all(
            g0.coeff(0).coeff(n) == (2 ** (n - 1) if n >= 3 else 0)
            for n in range(pl.order + 1)
        )
        return ok, ""
    _check(out, "G_0 = 4x^3/(1-2x) coefficient by coefficient", base_series)

    def reference_tables():
        for r in range(1, min(r_max, 5) + 1):
            ct = pl.c_table(r)
            want = [IntPoly(cs) for cs in REFERENCE_CTABLES[r]]
            if list(ct.polys) != want:
                return False, f"r={r}"
        return True, ""
    _check(out, f"c tables match the reference coefficients for r <= {min(r_max, 5)}", reference_tables)

    def structure():
        rep = pl.verify_structure(r_max)
        bad = [f"r={e.r}:{e.degree_detail}" for e in rep.entries if not e.passed]
        return rep.passed, "; ".join(bad)
    _check(out, f"P_r structure (integrality, value at 1/2, degrees) for r <= {r_max}", structure)

    def rationality():
        for r in range(0, identity_rmax + 1):
            pl.rational_gf(r)  # raises if the re-expansion disagrees
        return True, ""
    _check(out, f"rational closed form re-expands to G_r for r <= {identity_rmax}", rationality)

    def functional_equation():
        for r in range(0, identity_rmax + 1):
            if not pl.check_functional_equation(r):
                return False, f"r={r}"
        return True, ""
    _check(out, f"pre-kernel functional equation holds for r <= {identity_rmax}", functional_equation)

    def kernel_root():
        for r in range(0, identity_rmax + 1):
            if not pl.check_kernel_root(r):
                return False, f"r={r}"
        return True, ""
    _check(out, f"kernel-root identity for G_r(x,1), r <= {identity_rmax}", kernel_root)

    def parity_series():
        for r in range(1, identity_rmax + 1):
            g = pl.g_series(r)
            for k in range(g.vdegree + 1):
                if any(c % 2 for c in g.coeff(k).coeffs):
                    return False, f"r={r}, v^{k}"
        return True, ""
    _check(out, f"all series coefficients of G_r are even for 1 <= r <= {identity_rmax}", parity_series)

    def max_formula():
        for n in range(1, 51):
            if perms.count_13_2(perms.max_pattern_perm(n)) != perms.max_occurrences(n):
                return False, f"n={n}"
        return True, ""
    _check(out, "interleaved word attains n(n-2)/4 resp. (n-1)^2/4 occurrences, n <= 50", max_formula)

    def max_exhaustive():
        for n in range(1, maximal_nmax + 1):
            if perms.distribution(n).max_occurrences() != perms.max_occurrences(n):
                return False, f"n={n}"
        return True, ""
    _check(out, f"exhaustive maximality of the occurrence bound for n <= {maximal_nmax}", max_exhaustive)

    def min_length():
        for r in range(1, 101):
            n = perms.min_length_for(r)
            if (n - 1) ** 2 < 4 * r:  # n >= 1 + 2 sqrt(r)
                return False, f"r={r}"
            if n > 1 and perms.max_occurrences(n - 1) >= r:
                return False, f"r={r} not minimal"
        return True, ""
    _check(out, "minimal length for r occurrences is >= 1 + 2 sqrt(r), r <= 100", min_length)

    return out


def constructions_suite(
    doubling_nmax: int = 6,
    witness_rmax: int = 12,
    dual_route_rmax: int = 4,
    table: GTable | None = None,
) -> list[CheckResult]:
    """Checks of the explicit constructions: the one-to-two prefix-12 map,
    the avoider doubling, the witness words, and the dual-route boundary
    consistency of the kernel pipeline."""
    table = table or shared_table(2)
    out: list[CheckResult] = []

    def doubling_bijection():
        for n in range(2, doubling_nmax + 1):
            images = []
            for sigma in itertools.permutations(range(1, n)):
                occ = perms.count_13_2(perms.flatten(sigma))
                pi, pi_prime = perms.doubling_pair(sigma)
                for tau in (pi, pi_prime):
                    word = perms.flatten(tau)
                    if word[:2] != (1, 2) or perms.count_13_2(word) != occ:
                        return False, f"n={n}, sigma={sigma}"
                if pi == pi_prime:
                    return False, f"n={n}, collision at sigma={sigma}"
                images.extend([pi, pi_prime])
            if len(set(images)) != len(images):
                return False, f"n={n}: images not distinct"
            targets = {
                p for p in itertools.permutations(range(1, n + 1))
                if perms.flatten(p)[:2] == (1, 2)
            }
            if set(images) != targets:
                return False, f"n={n}: images do not cover the prefix-12 class"
        return True, ""
    _check(out, f"one-to-two map is a bijection onto the prefix-12 class, n <= {doubling_nmax}", doubling_bijection)

    def aggregated_doubling():
        for n in range(2, doubling_nmax + 1):
            lhs = perms.distribution(n, (1, 2)).counts
            rhs = {r: 2 * c for r, c in perms.distribution(n - 1).counts.items()}
            if lhs != rhs:
                return False, f"n={n}"
        return True, ""
    _check(out, f"prefix-12 distribution doubles the shorter one, n <= {doubling_nmax}", aggregated_doubling)

    def avoider_doubling():
        for n in range(2, doubling_nmax + 1):
            if perms.distribution(n).count(0) != 2 * perms.distribution(n - 1).count(0):
                return False, f"n={n}"
        return True, ""
    _check(out, f"avoider counts double with n (enumeration, n <= {doubling_nmax})", avoider_doubling)

    def witnesses():
        for r in range(4, witness_rmax + 1):
            for i in range(r + 1):
                w = perms.witness_perm(r, i)
                if len(w) != r + 2 or w[:2] != (1, i + 2) or perms.count_13_2(w) != r:
                    return False, f"(r,i)=({r},{i})"
        return True, ""
    _check(out, f"witness words have exactly r occurrences, 4 <= r <= {witness_rmax}", witnesses)

    def dual_route():
        for r in range(0, dual_route_rmax + 1):
            Pipeline(r_max=r, table=table).htilde_over_kernel(r)  # raises on mismatch
        return True, ""
    _check(out, f"both routes to H~_r/(1-sv) agree for r <= {dual_route_rmax}", dual_route)

    def boundary_oracle():
        Pipeline(r_max=3, table=table, oracle_check=True).boundary(3)
        return True, ""
    _check(out, "boundary data matches enumeration (r = 3)", boundary_oracle)

    return out


def run_suite(
    suite: str,
    oracle_nmax: int = 7,
    r_max: int = 4,
    table: GTable | None = None,
) -> list[CheckResult]:
    if suite not in SUITE_NAMES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITE_NAMES}")
    table = table or shared_table(2)
    out: list[CheckResult] = []
    if suite in ("all", "recurrence"):
        out.extend(recurrence_suite(oracle_nmax=oracle_nmax, table=table))
    if suite in ("all", "genfun"):
        out.extend(genfun_suite(r_max=r_max, maximal_nmax=oracle_nmax, table=table))
    if suite in ("all", "constructions"):
        out.extend(
            constructions_suite(
                doubling_nmax=min(oracle_nmax, 6),
                dual_route_rmax=r_max,
                table=table,
            )
        )
    return out
