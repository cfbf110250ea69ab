"""Exact integer machinery behind the overlap law.

Catalan numbers, the rescaled Chebyshev polynomials ``f_k(x) = U_k(x/2)``,
the coefficients ``H(m, n)`` of ``theta^n`` in the limit of
``u^T (A + theta u u^T)^m u``, the Dyck-path-with-h-steps counts
``I[m][n]`` and the bivariate generating function

    W(x, y) = 1 / (1 - y - T(x)),    T(x) = (1 - sqrt(1 - 4x)) / 2.

Everything here is Python ``int`` arithmetic; no floating point is used.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

__all__ = [
    "BRUTEFORCE_MAX_M",
    "IntegerPolynomial",
    "PathCountTable",
    "PowerSeries2D",
    "IdentityCheck",
    "VerificationReport",
    "catalan",
    "chebyshev_u",
    "semicircle_moment_exact",
    "moment_functional_exact",
    "path_counts",
    "h_coefficient",
    "h_coefficient_bruteforce",
    "series_w",
    "verify_recurrences",
    "verify_all",
]

BRUTEFORCE_MAX_M = 24


@dataclass(frozen=True)
class IntegerPolynomial:
    """Polynomial in ``x`` with integer coefficients, lowest power first."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        coeffs = list(self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(int(c) for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __add__(self, other: IntegerPolynomial) -> IntegerPolynomial:
        a, b = self.coefficients, other.coefficients
        size = max(len(a), len(b))
        a = a + (0,) * (size - len(a))
        b = b + (0,) * (size - len(b))
        return IntegerPolynomial(tuple(p + q for p, q in zip(a, b)))

    def __neg__(self) -> IntegerPolynomial:
        return IntegerPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: IntegerPolynomial) -> IntegerPolynomial:
        return self + (-other)

    def shift(self, power: int = 1) -> IntegerPolynomial:
        """Multiply by ``x**power``."""
        if not self.coefficients:
            return self
        return IntegerPolynomial((0,) * power + self.coefficients)

    def __str__(self) -> str:
        terms = []
        for power in range(self.degree, -1, -1):
            c = self.coefficients[power]
            if c == 0:
                continue
            mag = abs(c)
            if power == 0:
                body = str(mag)
            else:
                mono = "x" if power == 1 else f"x^{power}"
                body = mono if mag == 1 else f"{mag}{mono}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(("+ " if c > 0 else "- ") + body)
        return " ".join(terms) if terms else "0"


@dataclass(frozen=True)
class PathCountTable:
    """``table[m][n]``: paths with Dyck length ``2m`` and ``n`` h-steps."""

    table: tuple[tuple[int, ...], ...]

    @property
    def max_m(self) -> int:
        return len(self.table) - 1

    @property
    def max_n(self) -> int:
        return len(self.table[0]) - 1

    def __getitem__(self, m: int) -> tuple[int, ...]:
        return self.table[m]


@dataclass(frozen=True)
class PowerSeries2D:
    """Coefficients ``w[m][n]`` of ``x^m y^n``, truncated at ``(max_m, max_n)``."""

    w: tuple[tuple[int, ...], ...]

    @property
    def max_m(self) -> int:
        return len(self.w) - 1

    @property
    def max_n(self) -> int:
        return len(self.w[0]) - 1

    def __getitem__(self, m: int) -> tuple[int, ...]:
        return self.w[m]


@dataclass
class IdentityCheck:
    name: str
    passed: bool = True
    checked: int = 0
    counterexample: str | None = None

    def record(self, ok: bool, where: str) -> None:
        self.checked += 1
        if not ok and self.passed:
            self.passed = False
            self.counterexample = where


@dataclass
class VerificationReport:
    checks: list[IdentityCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> IdentityCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            status = "ok" if c.passed else "FAIL"
            line = f"{status:4s} {c.name} ({c.checked} cases)"
            if c.counterexample:
                line += f": first counterexample {c.counterexample}"
            out.append(line)
        out.append("all identities hold" if self.passed else "some identities FAILED")
        return out


def _nonneg(name: str, value: int) -> None:
    if value < 0:
        raise ValueError(f"{name} must be non-negative, got {value}")


def catalan(k: int) -> int:
    """``binom(2k, k) / (k + 1)``."""
    _nonneg("k", k)
    return comb(2 * k, k) // (k + 1)


@lru_cache(maxsize=None)
def chebyshev_u(k: int) -> IntegerPolynomial:
    """``f_k(x) = U_k(x/2)`` from ``f_k = x f_{k-1} - f_{k-2}``."""
    _nonneg("k", k)
    if k == 0:
        return IntegerPolynomial((1,))
    if k == 1:
        return IntegerPolynomial((0, 1))
    return chebyshev_u(k - 1).shift() - chebyshev_u(k - 2)


def semicircle_moment_exact(k: int) -> int:
    """``integral x^k d(mu_sc)``: ``c_{k/2}`` for even ``k``, else 0."""
    _nonneg("k", k)
    return 0 if k % 2 else catalan(k // 2)


def moment_functional_exact(poly: IntegerPolynomial, m: int) -> int:
    """``integral x^m poly(x) d(mu_sc)``, evaluated term by term."""
    _nonneg("m", m)
    return sum(a * semicircle_moment_exact(i + m) for i, a in enumerate(poly.coefficients))


def path_counts(max_m: int, max_n: int) -> PathCountTable:
    """Count paths by splitting them into ``n + 1`` Dyck slots.

    ``I[m][0] = c_m`` and ``I[m][n] = sum_k c_k I[m-k][n-1]``: the first
    slot holds a Dyck path of length ``2k``, followed by an h-step and a
    path with one fewer h-step.
    """
    _nonneg("max_m", max_m)
    _nonneg("max_n", max_n)
    cat = [catalan(k) for k in range(max_m + 1)]
    cols = [cat[:]]
    for _ in range(max_n):
        prev = cols[-1]
        cols.append([sum(cat[k] * prev[m - k] for k in range(m + 1)) for m in range(max_m + 1)])
    return PathCountTable(tuple(tuple(cols[n][m] for n in range(max_n + 1)) for m in range(max_m + 1)))


def h_coefficient(m: int, n: int, table: PathCountTable | None = None) -> int:
    """``H(m, n) = I[(m - n)/2][n]`` when ``m - n`` is even and non-negative."""
    _nonneg("m", m)
    _nonneg("n", n)
    d = m - n
    if d < 0 or d % 2:
        return 0
    j = d // 2
    if table is None or table.max_m < j or table.max_n < n:
        table = path_counts(j, n)
    return table[j][n]


def h_coefficient_bruteforce(m: int, n: int) -> int:
    """Sum over all words of length ``m`` with ``n`` theta symbols.

    A word scores ``prod c_{r/2}`` over its maximal A-runs of lengths
    ``r`` when every run is even, and zero otherwise.
    """
    _nonneg("m", m)
    _nonneg("n", n)
    if m > BRUTEFORCE_MAX_M:
        raise ValueError(f"enumeration bound exceeded: m = {m} > {BRUTEFORCE_MAX_M}")
    if n > m:
        return 0
    total = 0
    for positions in itertools.combinations(range(m), n):
        score = 1
        start = 0
        for p in (*positions, m):
            run = p - start
            if run % 2:
                score = 0
                break
            score *= catalan(run // 2)
            start = p + 1
        total += score
    return total


def _mul(a: list[list[int]], b: list[list[int]], max_m: int, max_n: int) -> list[list[int]]:
    out = [[0] * (max_n + 1) for _ in range(max_m + 1)]
    for i, row in enumerate(a):
        for j, aij in enumerate(row):
            if not aij:
                continue
            for k in range(max_m + 1 - i):
                brow, orow = b[k], out[i + k]
                for l in range(max_n + 1 - j):
                    if brow[l]:
                        orow[j + l] += aij * brow[l]
    return out


def series_w(max_m: int, max_n: int) -> PowerSeries2D:
    """Truncated coefficients of ``W(x, y) = 1 / (1 - y - T(x))``.

    ``C(x)`` comes from the Catalan numbers, ``T = x C(x)``, and ``W`` is
    the geometric series ``sum_j (y + T)^j``; ``y + T`` has no constant
    term, so ``j <= max_m + max_n`` is exact at this truncation.
    """
    _nonneg("max_m", max_m)
    _nonneg("max_n", max_n)
    s = [[0] * (max_n + 1) for _ in range(max_m + 1)]
    for m in range(1, max_m + 1):
        s[m][0] = catalan(m - 1)
    if max_n >= 1:
        s[0][1] = 1
    w = [[0] * (max_n + 1) for _ in range(max_m + 1)]
    w[0][0] = 1
    power = [row[:] for row in w]
    for _ in range(max_m + max_n):
        power = _mul(power, s, max_m, max_n)
        for m in range(max_m + 1):
            for n in range(max_n + 1):
                w[m][n] += power[m][n]
    return PowerSeries2D(tuple(tuple(row) for row in w))


def verify_recurrences(max_m: int, max_n: int) -> VerificationReport:
    """Check the four recurrences with exact arithmetic.

    * ``I[m][n] = I[m+1][n-1] - I[m+1][n-2]`` for ``m < max_m``, ``2 <= n <= max_n``
    * ``H(m,n) = H(m+1,n-1) - H(m,n-2)`` on the same ``(m, n)`` range
    * ``int x^m f_n = int x^(m+1) f_{n-1} - int x^m f_{n-2}`` and the
      polynomial recurrence ``f_n = x f_{n-1} - f_{n-2}`` itself
    * ``W - W(x,0) = (y/x)(W - W(0,y)) - (y^2/x)(W - W(0,y))``
      coefficientwise on the truncated series, as a series identity
      independent of the ``I`` recurrence above
    """
    if max_m < 2 or max_n < 2:
        raise ValueError("max_m and max_n must both be >= 2")
    table = path_counts(max_m, max_n)
    report = VerificationReport()

    i_rec = IdentityCheck("I recurrence")
    for m in range(max_m):
        for n in range(2, max_n + 1):
            lhs = table[m][n]
            rhs = table[m + 1][n - 1] - table[m + 1][n - 2]
            i_rec.record(lhs == rhs, f"m={m}, n={n}: {lhs} != {rhs}")
    report.checks.append(i_rec)

    # H(m+1, n-1) needs I[(m-n)/2 + 1][n-1], so the table is enlarged
    big = path_counts(max_m + 1, max_n)
    h_rec = IdentityCheck("H recurrence")
    for m in range(max_m):
        for n in range(2, max_n + 1):
            lhs = h_coefficient(m, n, big)
            rhs = h_coefficient(m + 1, n - 1, big) - h_coefficient(m, n - 2, big)
            h_rec.record(lhs == rhs, f"m={m}, n={n}: {lhs} != {rhs}")
    report.checks.append(h_rec)

    f_rec = IdentityCheck("Chebyshev recurrence")
    for n in range(2, max_n + 1):
        f_rec.record(
            chebyshev_u(n) == chebyshev_u(n - 1).shift() - chebyshev_u(n - 2),
            f"n={n}: polynomial recurrence",
        )
        for m in range(max_m + 1):
            lhs = moment_functional_exact(chebyshev_u(n), m)
            rhs = moment_functional_exact(chebyshev_u(n - 1), m + 1) - moment_functional_exact(chebyshev_u(n - 2), m)
            f_rec.record(lhs == rhs, f"m={m}, n={n}: {lhs} != {rhs}")
    report.checks.append(f_rec)

    # W - W_{:0} has coefficient w[m][n] for n >= 1; the right-hand side
    # divides by x after dropping the x^0 row, which shifts m up by one
    w = series_w(max_m, max_n).w
    w_rec = IdentityCheck("W series identity")
    for m in range(max_m):
        for n in range(max_n + 1):
            lhs = w[m][n] if n >= 1 else 0
            rhs = (w[m + 1][n - 1] if n >= 1 else 0) - (w[m + 1][n - 2] if n >= 2 else 0)
            w_rec.record(lhs == rhs, f"x^{m} y^{n}: {lhs} != {rhs}")
    report.checks.append(w_rec)
    return report


def verify_all(max_m: int, max_n: int) -> VerificationReport:
    """:func:`verify_recurrences` plus the independent cross-checks.

    Adds the brute-force word oracle (capped at ``m <= 14``), series
    extraction against the slot DP, the Chebyshev moment bridge and the
    Catalan convolution identity.
    """
    report = verify_recurrences(max_m, max_n)
    table = path_counts(max_m, max_n)

    brute = IdentityCheck("H == word enumeration")
    for m in range(min(max_m, 14) + 1):
        for n in range(m + 1):
            a, b = h_coefficient(m, n), h_coefficient_bruteforce(m, n)
            brute.record(a == b, f"H({m},{n}): {a} != {b}")
    report.checks.append(brute)

    w = series_w(max_m, max_n)
    series = IdentityCheck("W coefficients == path counts")
    for m in range(max_m + 1):
        for n in range(max_n + 1):
            series.record(w[m][n] == table[m][n], f"m={m}, n={n}: {w[m][n]} != {table[m][n]}")
    report.checks.append(series)

    bridge = IdentityCheck("Chebyshev moment bridge")
    for m in range(max_m + 1):
        for n in range(max_n + 1):
            a, b = moment_functional_exact(chebyshev_u(n), m), h_coefficient(m, n)
            bridge.record(a == b, f"m={m}, n={n}: {a} != {b}")
    report.checks.append(bridge)

    conv = IdentityCheck("Catalan convolution")
    for k in range(max(max_m, max_n) + 1):
        lhs = catalan(k + 1)
        rhs = sum(catalan(j) * catalan(k - j) for j in range(k + 1))
        conv.record(lhs == rhs, f"k={k}: {lhs} != {rhs}")
    report.checks.append(conv)
    return report
