"""Closed-form quantities for random graph groups, evaluated in log space.

Covers expected Betti numbers, the critical edge probability for a given
dimension, Poisson probabilities, Matula's clique-number point ``z(n, p)``
and its window, the growth statistic ``C(n, r) p^C(r, 2) / r``, expected
bi-clique counts, and the second-moment decomposition

    E[X^2] / E[X]^2 = sum over alpha in D of F_alpha * q^L(alpha)

of the number ``X`` of ordered pairs of disjoint ``r``-cliques, together with
numerical diagnostics of how its terms vary along coordinate increments.

Large factorial ratios are formed as sums of logarithms of their factors
(``math.fsum``), which keeps about 14 correct digits even at ``n = 10**6``
where lgamma-difference formulas lose several.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

__all__ = [
    "DomainError",
    "AsymptoticParams",
    "SecondMomentTerm",
    "SecondMomentSummary",
    "TermRatioDiagnostic",
    "log_binomial",
    "log_falling",
    "log_sum_exp",
    "expected_betti",
    "log_expected_betti",
    "critical_p",
    "poisson_limit_mean",
    "poisson_pmf",
    "z_statistic",
    "matula_window",
    "lemma4_statistic",
    "log_lemma4_statistic",
    "expected_biclique_count",
    "log_expected_biclique_count",
    "second_moment_domain",
    "second_moment_terms",
    "second_moment_ratio",
    "second_moment_ratio_exact",
    "f0_bound_check",
    "default_split_lambda",
    "coordinate_class",
    "term_monotonicity_diagnostic",
    "terms_to_csv",
]

DEFAULT_EPSILON = 0.25


class DomainError(ValueError):
    """Arguments outside the region where a formula is defined."""


# -- primitives -------------------------------------------------------------


@lru_cache(maxsize=4096)
def _log_factorial(k: int) -> float:
    if k < 0:
        raise DomainError(f"factorial of negative integer {k}")
    if k < 256:
        return math.log(math.factorial(k))
    return math.lgamma(k + 1)


def log_falling(m: int, k: int) -> float:
    """``log(m (m-1) ... (m-k+1))``; ``-inf`` if the product is zero."""
    if k < 0:
        raise DomainError("falling factorial length must be non-negative")
    if k > m:
        return -math.inf
    return math.fsum(math.log(m - i) for i in range(k))


def log_binomial(n: int, k: int) -> float:
    """``log C(n, k)`` for integers; ``-inf`` when ``k`` is outside ``[0, n]``."""
    if k < 0 or k > n:
        return -math.inf
    k = min(k, n - k)
    return log_falling(n, k) - _log_factorial(k)


def log_sum_exp(values) -> float:
    """Max-shifted ``log(sum(exp(v)))`` with fixed left-to-right summation."""
    values = list(values)
    if not values:
        return -math.inf
    top = max(values)
    if top == -math.inf:
        return top
    return top + math.log(math.fsum(math.exp(v - top) for v in values))


def _exp(x: float) -> float:
    # values past the double range are reported as inf; the log is still available
    return math.inf if x > 709.78 else math.exp(x)


def _check_p_open(p: float) -> None:
    if not 0.0 < p < 1.0:
        raise DomainError(f"p must lie strictly between 0 and 1, got {p!r}")


def _log_q(x: float, p: float) -> float:
    return math.log(x) / -math.log(p)


# -- parameters -------------------------------------------------------------


@dataclass(frozen=True)
class AsymptoticParams:
    """One parameter point; ``q`` and the Poisson limit mean are derived."""

    n: int
    p: float
    r: int
    c: float | None = None
    epsilon: float = DEFAULT_EPSILON

    def __post_init__(self):
        _check_p_open(self.p)
        _check_epsilon(self.epsilon)
        if self.c is not None and self.c <= 0:
            raise DomainError("c must be positive")

    @property
    def q(self) -> float:
        return 1.0 / self.p

    @property
    def lambda_poisson(self) -> float | None:
        return None if self.c is None else poisson_limit_mean(self.c, self.r)


# -- Betti numbers and the Poisson regime -----------------------------------


def log_expected_betti(n: int, p: float, r: int) -> float:
    if not 0.0 < p <= 1.0:
        raise DomainError(f"p must lie in (0, 1], got {p!r}")
    if r < 0:
        raise DomainError("r must be non-negative")
    return log_binomial(n, r) + math.comb(r, 2) * math.log(p)


def expected_betti(n: int, p: float, r: int) -> float:
    """Expected number of ``r``-vertex complete subgraphs, ``C(n, r) p^C(r, 2)``.

    Zero when ``r > n``.  (For ``r = 0, 1`` this is the subgraph count ``1``
    and ``n``, which coincide with ``b_0`` and ``b_1``.)
    """
    return _exp(log_expected_betti(n, p, r))


def critical_p(n: int, r: int, c: float) -> float:
    """Edge probability with ``n p^((r-1)/2) = c`` exactly."""
    if r < 2:
        raise DomainError("critical scaling needs r >= 2")
    if c <= 0 or n < 1:
        raise DomainError("need c > 0 and n >= 1")
    p = (c / n) ** (2.0 / (r - 1))
    if p > 1.0:
        raise DomainError(f"n={n} too small for c={c}: critical p={p} exceeds 1")
    return p


def poisson_limit_mean(c: float, r: int) -> float:
    return c**r / math.factorial(r)


def poisson_pmf(lam: float, k: int) -> float:
    if lam < 0 or k < 0:
        raise DomainError("need lambda >= 0 and k >= 0")
    if lam == 0:
        return 1.0 if k == 0 else 0.0
    return math.exp(-lam + k * math.log(lam) - math.lgamma(k + 1))


# -- clique number concentration ---------------------------------------------


def z_statistic(n: float, p: float) -> float:
    """``2 log_q n - 2 log_q log_q n + 2 log_q(e/2) + 1`` with ``q = 1/p``.

    Requires ``log_q n >= 1`` so that the iterated logarithm is non-negative.
    """
    _check_p_open(p)
    if n <= 1:
        raise DomainError("n must exceed 1")
    lq = _log_q(n, p)
    if lq < 1.0:
        raise DomainError(f"log_q n = {lq:.4g} < 1: n={n} too small for p={p}")
    return 2.0 * lq - 2.0 * _log_q(lq, p) + 2.0 * _log_q(math.e / 2.0, p) + 1.0


def _check_epsilon(epsilon: float) -> None:
    # 1/2 itself still yields a window of width exactly one
    if not 0.0 < epsilon <= 0.5:
        raise DomainError(f"epsilon must lie in (0, 1/2], got {epsilon!r}")


def matula_window(n: float, p: float, epsilon: float = DEFAULT_EPSILON) -> tuple[int, int]:
    _check_epsilon(epsilon)
    z = z_statistic(n, p)
    return math.floor(z - epsilon), math.floor(z + epsilon)


def log_lemma4_statistic(n: int, p: float, epsilon: float = DEFAULT_EPSILON) -> float:
    r = matula_window(n, p, epsilon)[0]
    if r < 1:
        raise DomainError(f"floor(z - epsilon) = {r} < 1")
    return log_binomial(n, r) + math.comb(r, 2) * math.log(p) - math.log(r)


def lemma4_statistic(n: int, p: float, epsilon: float = DEFAULT_EPSILON) -> float:
    """``C(n, r) p^C(r, 2) / r`` at ``r = floor(z(n, p) - epsilon)``; grows without bound in n."""
    return _exp(log_lemma4_statistic(n, p, epsilon))


# -- bi-cliques and the second moment -----------------------------------------


def _log_multinomial2(m: int, i: int, j: int) -> float:
    """``log(m! / (i! j! (m-i-j)!))``."""
    if i < 0 or j < 0 or i + j > m:
        return -math.inf
    return log_falling(m, i + j) - _log_factorial(i) - _log_factorial(j)


def log_expected_biclique_count(n: int, p: float, r: int) -> float:
    if not 0.0 < p <= 1.0:
        raise DomainError(f"p must lie in (0, 1], got {p!r}")
    if r < 0:
        raise DomainError("r must be non-negative")
    return _log_multinomial2(n, r, r) + 2 * math.comb(r, 2) * math.log(p)


def expected_biclique_count(n: int, p: float, r: int) -> float:
    """Expected number of ordered pairs of disjoint ``r``-cliques; 0 if ``2r > n``."""
    return _exp(log_expected_biclique_count(n, p, r))


@dataclass(frozen=True)
class SecondMomentTerm:
    """Overlap pattern ``alpha = (a, b, c, d)`` of two bi-cliques.

    For bi-cliques ``(S, T)`` and ``(S', T')``: ``a = |S ∩ S'|``,
    ``b = |T ∩ S'|``, ``c = |S ∩ T'|``, ``d = |T ∩ T'|``.  ``logF`` is the log
    of the fraction of ``(S', T')`` with this pattern, ``L`` the number of
    shared edges, and ``logT = logF + L log q``.
    """

    alpha: tuple[int, int, int, int]
    ell: int
    logF: float
    L: int
    logT: float


class SecondMomentSummary(NamedTuple):
    ratio: float
    log_ratio: float
    f_sum: float
    n_terms: int


def second_moment_domain(r: int) -> list[tuple[int, int, int, int]]:
    """``alpha >= 0`` with ``max(a, d) + max(b, c) <= r``, in lexicographic order."""
    out = []
    for a in range(r + 1):
        for b in range(r + 1 - a):
            for c in range(r + 1 - a):
                for d in range(r + 1 - max(b, c)):
                    if max(a, d) + max(b, c) <= r:
                        out.append((a, b, c, d))
    return out


def _check_moment_args(n: int, p: float, r: int) -> None:
    _check_p_open(p)
    if r < 1:
        raise DomainError("r must be at least 1")
    if n < 4 * r:
        raise DomainError(f"second-moment terms need n >= 4r, got n={n}, r={r}")


def second_moment_terms(n: int, p: float, r: int) -> list[SecondMomentTerm]:
    _check_moment_args(n, p, r)
    log_q = -math.log(p)
    m = n - 2 * r
    # log of (n-2r)(n-2r-1)...(n-2r-k+1) for k = 0..2r
    outside = [math.fsum(math.log(m - i) for i in range(k)) for k in range(2 * r + 1)]
    log_total = log_falling(n, 2 * r) - 2 * _log_factorial(r)
    lf = _log_factorial
    terms = []
    for alpha in second_moment_domain(r):
        a, b, c, d = alpha
        ell = a + b + c + d
        # fsum is exactly rounded, so the value ignores summand order and the
        # coordinate symmetries of F hold bit for bit
        log_f = math.fsum((
            lf(r), -lf(a), -lf(c), -lf(r - a - c),
            lf(r), -lf(b), -lf(d), -lf(r - b - d),
            outside[2 * r - ell], -lf(r - a - b), -lf(r - c - d),
            -log_total,
        ))
        big_l = math.comb(a, 2) + math.comb(b, 2) + math.comb(c, 2) + math.comb(d, 2)
        terms.append(SecondMomentTerm(alpha, ell, log_f, big_l, log_f + big_l * log_q))
    return terms


def second_moment_ratio(n: int, p: float, r: int) -> SecondMomentSummary:
    """``E[X^2] / E[X]^2`` as the sum of all terms.

    ``f_sum`` is the raw sum of the pattern weights, 1 up to rounding.
    """
    terms = second_moment_terms(n, p, r)
    log_f_sum = log_sum_exp(t.logF for t in terms)
    # dividing by sum F (= 1 in exact arithmetic) cancels the rounding shared
    # by both sums; with every L = 0 the ratio comes out as exactly 1
    log_ratio = log_sum_exp(t.logT for t in terms) - log_f_sum
    return SecondMomentSummary(math.exp(log_ratio), log_ratio, math.exp(log_f_sum), len(terms))


def second_moment_ratio_exact(n: int, p, r: int) -> tuple[Fraction, Fraction]:
    """Exact rational ``(sum T_alpha, sum F_alpha)`` for the binary value of ``p``.

    Intended for small ``n`` and ``r``; independent of the log-space path.
    """
    _check_moment_args(n, float(p), r)
    p = Fraction(p)
    total = Fraction(math.factorial(n), math.factorial(r) ** 2 * math.factorial(n - 2 * r))
    t_sum = Fraction(0)
    f_sum = Fraction(0)
    for a, b, c, d in second_moment_domain(r):
        ways = (
            math.comb(r, a) * math.comb(r - a, c)
            * math.comb(r, b) * math.comb(r - b, d)
            * math.comb(n - 2 * r, r - a - b) * math.comb(n - 3 * r + a + b, r - c - d)
        )
        f = Fraction(ways) / total
        big_l = math.comb(a, 2) + math.comb(b, 2) + math.comb(c, 2) + math.comb(d, 2)
        f_sum += f
        t_sum += f / p**big_l
    return t_sum, f_sum


def f0_bound_check(n: int, r: int) -> tuple[float, float, bool]:
    """Weight of the no-overlap pattern against its lower bound ``1 - 4r^2/(n-2r+1)``."""
    if r < 1 or n < 4 * r:
        raise DomainError(f"need r >= 1 and n >= 4r, got n={n}, r={r}")
    f0 = math.exp(math.fsum(math.log1p(-2 * r / (n - k)) for k in range(2 * r)))
    bound = 1.0 - 4 * r * r / (n - 2 * r + 1)
    return f0, bound, f0 >= max(0.0, bound)


def terms_to_csv(terms: list[SecondMomentTerm]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["a", "b", "c", "d", "ell", "L", "logF", "logT"])
    for t in terms:
        w.writerow([*t.alpha, t.ell, t.L, f"{t.logF:.18g}", f"{t.logT:.18g}"])
    return buf.getvalue()


# -- term monotonicity diagnostics --------------------------------------------

# coordinate index -> the two coordinates sharing a domain constraint with it
_PARTNERS = {0: (1, 2), 1: (0, 3), 2: (0, 3), 3: (2, 1)}

SMALL_DECREASE = "small-decrease"
LARGE_INCREASE = "large-increase"
INTERMEDIATE_DECREASE = "intermediate-decrease"
RIDGE_CONVEXITY = "ridge-convexity"
RIDGE_MAX_BOUND = "ridge-max-bound"


@dataclass(frozen=True)
class TermRatioDiagnostic:
    """One failed prediction about ``T`` along a coordinate increment.

    ``ratio_bound_A`` is ``(r-x-y)(r-x-z)/((x+1) n)`` for incremented value
    ``x`` with partner coordinates ``y, z``; the exact term ratio lies
    within a factor two of ``A q^x`` once ``n`` is large.
    """

    kind: str
    alpha: tuple[int, int, int, int]
    incremented_coordinate: int
    ratio_class: str
    ratio_bound_A: float
    split_lambda: float
    log_ratio: float


def default_split_lambda(p: float) -> float:
    q = 1.0 / p
    return min(0.1, 0.9 / (1.0 + math.e * q))


def coordinate_class(x: int, n: int, p: float, split_lambda: float) -> str:
    lq = _log_q(n, p)
    if x <= (1.0 - split_lambda) * lq:
        return "small"
    if x >= (1.0 + split_lambda) * lq:
        return "large"
    return "intermediate"


def term_monotonicity_diagnostic(
    n: int, p: float, r: int, split_lambda: float | None = None
) -> list[TermRatioDiagnostic]:
    """Scan every term and coordinate increment for failed monotonicity predictions.

    Predictions checked when incrementing coordinate ``x`` of ``alpha``:

    * ``x`` small: the term decreases;
    * ``x`` large: the term increases;
    * ``x <= r/2`` and the larger partner coordinate not small: decreases;

    and on the ridge ``(a, 0, 0, d)``: ``log T`` is strictly convex in ``a``
    over intermediate ``a``, and ``T <= max(T(1,0,0,d), T(r-1,0,0,d))`` for
    ``1 <= a <= r - 1``.  These hold once ``n`` is large enough; the function
    reports failures instead of raising.
    """
    if split_lambda is None:
        split_lambda = default_split_lambda(p)
    _check_p_open(p)
    if not 0.0 < split_lambda < 1.0 / (1.0 + math.e / p):
        raise DomainError(f"split_lambda must lie in (0, 1/(1+e q)), got {split_lambda!r}")
    terms = {t.alpha: t for t in second_moment_terms(n, p, r)}
    cls = [coordinate_class(x, n, p, split_lambda) for x in range(r + 1)]
    out: list[TermRatioDiagnostic] = []

    for alpha, term in terms.items():
        for i in range(4):
            nxt = list(alpha)
            nxt[i] += 1
            other = terms.get(tuple(nxt))
            if other is None:
                continue
            x = alpha[i]
            j, k = _PARTNERS[i]
            bound_a = (r - x - alpha[j]) * (r - x - alpha[k]) / ((x + 1) * n)
            log_ratio = other.logT - term.logT
            kinds = []
            if cls[x] == "small" and not log_ratio < 0:
                kinds.append(SMALL_DECREASE)
            if cls[x] == "large" and not log_ratio > 0:
                kinds.append(LARGE_INCREASE)
            if (
                2 * x <= r
                and cls[max(alpha[j], alpha[k])] != "small"
                and not log_ratio < 0
            ):
                kinds.append(INTERMEDIATE_DECREASE)
            for kind in kinds:
                out.append(
                    TermRatioDiagnostic(kind, alpha, i, cls[x], bound_a, split_lambda, log_ratio)
                )

    for d in range(r + 1):
        ridge = {a: terms[(a, 0, 0, d)].logT for a in range(r + 1) if (a, 0, 0, d) in terms}
        for a in range(r - 1):
            if cls[a] != "intermediate" or a + 2 not in ridge:
                continue
            curvature = ridge[a] + ridge[a + 2] - 2 * ridge[a + 1]
            if not curvature > 0:
                out.append(
                    TermRatioDiagnostic(
                        RIDGE_CONVEXITY, (a, 0, 0, d), 0, cls[a],
                        (r - a) ** 2 / ((a + 1) * n), split_lambda, curvature,
                    )
                )
        if 1 in ridge and (r - 1) in ridge:
            cap = max(ridge[1], ridge[r - 1])
            for a in range(1, r):
                if a in ridge and ridge[a] > cap:
                    out.append(
                        TermRatioDiagnostic(
                            RIDGE_MAX_BOUND, (a, 0, 0, d), 0, cls[a],
                            (r - a) ** 2 / ((a + 1) * n), split_lambda, ridge[a] - cap,
                        )
                    )
    return out
