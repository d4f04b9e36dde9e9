"""Mittag-Leffler function family and related special-function series.

The central object is the three-parameter Mittag-Leffler function

    E[nu, mu, gamma](z) = sum_k  (gamma)_k / k! * z^k / Gamma(mu + k*nu)

with (gamma)_k the rising factorial.  gamma=1 collapses the Pochhammer
weight and gives the two-parameter function; mu=1 as well gives the
classical one-parameter function that interpolates between exponential
(nu=1) and power-law relaxation.  The module also provides the
Hartley-Lorenzo response functions (both reducible to the two-parameter
family), a generalized Wright series, the confluent hypergeometric 1F1
series, and the gamma-product integrand of the Mellin-Barnes (Fox H)
representation.

All series share one truncation contract (``SeriesConfig``): terms are
accumulated with compensated summation, built in log space so large
Gamma denominators never overflow, and the sum is accepted once the term
magnitude stays below ``rel_tol`` times the partial sum for three
consecutive terms (alternating series can produce a single deceptively
small term).  Arguments beyond ``max_abs_z`` are refused with
``DomainError``.

Alternating arguments are the numerically hostile direction: the terms
of E[1/2](-6) peak fourteen orders of magnitude above the final sum, so
a double-precision summation returns noise while appearing to converge.
Both ``ml_eval`` and ``wright_eval`` therefore track the peak term
magnitude and rerun the summation in mpmath arbitrary precision whenever
the cancellation estimate would eat into the promised digits; the
fallback widens its working precision until at least fifteen significant
digits survive the cancellation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import mpmath as mp
from scipy.special import gammaln, gammasgn, loggamma

from .errors import DomainError, NonConvergence, PoleError

__all__ = [
    "MLParams",
    "SeriesConfig",
    "WrightParams",
    "HFunctionParams",
    "DEFAULT_SERIES_CONFIG",
    "pochhammer",
    "ml_eval",
    "f_function",
    "r_function",
    "wright_eval",
    "hyp1f1",
    "h_integrand",
]

#: Absolute tolerance used to decide that a Gamma argument sits on a pole.
_POLE_TOL = 1e-12

#: Peak-term to final-sum ratio beyond which the double-precision sum is
#: rejected and the mpmath fallback takes over.  Float cancellation error
#: is roughly a few * eps * peak, so 300 keeps the delivered relative
#: error near 1e-13.
_MP_FALLBACK_RATIO = 300.0

#: Log of the largest term magnitude the float path will exponentiate.
_LOG_OVERFLOW = 690.0


@dataclass(frozen=True)
class MLParams:
    """Parameter triple (nu, mu, gamma) of the Mittag-Leffler family.

    ``nu`` scales the index inside the Gamma denominator, ``mu`` shifts it,
    and ``gamma`` is the Pochhammer (rising-factorial) index.  This package
    restricts all three to reals with nu > 0, mu > 0 and gamma != 0.
    """

    nu: float
    mu: float = 1.0
    gamma: float = 1.0

    def __post_init__(self) -> None:
        if not (self.nu > 0):
            raise DomainError(f"nu must be positive, got {self.nu}")
        if not (self.mu > 0):
            raise DomainError(f"mu must be positive, got {self.mu}")
        if self.gamma == 0:
            raise DomainError("gamma must be nonzero")


@dataclass(frozen=True)
class SeriesConfig:
    """Termination and domain policy for all series in this module."""

    rel_tol: float = 1e-14
    max_terms: int = 10_000
    abs_floor: float = 1e-300
    max_abs_z: float = 50.0

    def __post_init__(self) -> None:
        if not (0 < self.rel_tol < 1):
            raise DomainError(f"rel_tol must lie in (0, 1), got {self.rel_tol}")
        if self.max_terms < 1:
            raise DomainError(f"max_terms must be >= 1, got {self.max_terms}")
        if not (self.abs_floor > 0):
            raise DomainError(f"abs_floor must be positive, got {self.abs_floor}")


DEFAULT_SERIES_CONFIG = SeriesConfig()


@dataclass(frozen=True)
class WrightParams:
    """Gamma-weight lists ((a_j, A_j); (b_j, B_j)) of the generalized Wright series.

    The series converges for all z when 1 + sum(B_j) - sum(A_j) >= 0; parameter
    sets violating that are rejected at construction.
    """

    upper: tuple[tuple[float, float], ...]
    lower: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "upper", tuple((float(a), float(aa)) for a, aa in self.upper))
        object.__setattr__(self, "lower", tuple((float(b), float(bb)) for b, bb in self.lower))
        margin = 1.0 + sum(bb for _, bb in self.lower) - sum(aa for _, aa in self.upper)
        if margin < 0:
            raise DomainError(
                f"convergence condition 1 + sum(B) - sum(A) >= 0 violated (margin {margin})"
            )


@dataclass(frozen=True)
class HFunctionParams:
    """Orders (m, n, p, q) and parameter lists of the Mellin-Barnes integrand.

    ``upper`` holds the p pairs (a_j, A_j), ``lower`` the q pairs (b_j, B_j);
    all A_j, B_j must be positive.  Only the integrand is evaluated here --
    contour integration is out of scope.
    """

    m: int
    n: int
    upper: tuple[tuple[float, float], ...] = ()
    lower: tuple[tuple[float, float], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "upper", tuple((float(a), float(aa)) for a, aa in self.upper))
        object.__setattr__(self, "lower", tuple((float(b), float(bb)) for b, bb in self.lower))
        if self.m < 0 or self.n < 0:
            raise DomainError("orders m, n must be non-negative")
        if self.n > self.p:
            raise DomainError(f"n={self.n} exceeds p={self.p}")
        if self.m > self.q:
            raise DomainError(f"m={self.m} exceeds q={self.q}")
        if any(aa <= 0 for _, aa in self.upper) or any(bb <= 0 for _, bb in self.lower):
            raise DomainError("all A_j and B_j must be positive")

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)


def pochhammer(gamma: float, k: int) -> float:
    """Rising factorial (gamma)_k = gamma * (gamma+1) * ... * (gamma+k-1)."""
    if k < 0:
        raise DomainError(f"k must be a non-negative integer, got {k}")
    out = 1.0
    for j in range(k):
        out *= gamma + j
    return out


def _near_nonpositive_int(x: float, tol: float = _POLE_TOL) -> bool:
    r = round(x)
    return r <= 0 and abs(x - r) < tol


def ml_eval(params: MLParams, z: float, cfg: SeriesConfig = DEFAULT_SERIES_CONFIG) -> float:
    """Evaluate the three-parameter Mittag-Leffler series at real z.

    Terms are built in log space (log-Pochhammer, log-factorial and
    log-Gamma accumulate incrementally) with explicit sign tracking, then
    summed with Kahan compensation.  If the peak term magnitude dwarfs
    the final sum -- the cancellation regime of strongly negative z --
    the summation is redone in mpmath at a working precision wide enough
    to leave fifteen clean digits.

    Raises ``DomainError`` for |z| beyond ``cfg.max_abs_z`` and
    ``NonConvergence`` if the termination criterion is not met within
    ``cfg.max_terms`` terms.
    """
    z = float(z)
    if abs(z) > cfg.max_abs_z:
        raise DomainError(
            f"|z| = {abs(z)} exceeds the configured series domain bound {cfg.max_abs_z}"
        )
    if z == 0.0:
        return 1.0 / math.gamma(params.mu) if params.mu < 170 else math.exp(-math.lgamma(params.mu))

    nu, mu, gam = params.nu, params.mu, params.gamma
    lgamma = math.lgamma
    log_abs_z = math.log(abs(z))
    sign_z = 1.0 if z > 0 else -1.0

    # Only the slowly-growing log |(gamma)_k / k!| piece is accumulated;
    # the dominant k*log|z| piece is rebuilt fresh each term, otherwise
    # rounding in the running log compounds as O(k^2 eps) over long series.
    log_poch = 0.0
    sign_front = 1.0
    total = 0.0
    comp = 0.0  # Kahan compensation
    small_run = 0
    prev_mag = math.inf
    peak = 0.0

    for k in range(cfg.max_terms):
        if sign_front == 0.0:
            break  # Pochhammer hit zero: the series terminated exactly
        log_term = log_poch + k * log_abs_z - lgamma(mu + k * nu)
        if log_term > _LOG_OVERFLOW:
            return _ml_eval_mp(params, z, cfg, _ml_log10_peak(params, z, cfg))
        term = sign_front * math.exp(log_term)
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t

        mag = abs(term)
        if mag > peak:
            peak = mag
        # the floor cutoff only applies on the decaying tail, never while
        # terms are still growing toward the series peak
        if mag < cfg.abs_floor and k > 0 and mag <= prev_mag:
            break
        prev_mag = mag
        if mag < cfg.rel_tol * abs(total):
            small_run += 1
            if small_run >= 3:
                break
        else:
            small_run = 0

        g = gam + k
        if g == 0.0:
            sign_front = 0.0
        else:
            if gam != 1.0:
                log_poch += math.log(abs(g)) - math.log(k + 1.0)
            if g < 0:
                sign_front = -sign_front
            sign_front *= sign_z
    else:
        raise NonConvergence(
            f"Mittag-Leffler series did not converge in {cfg.max_terms} terms "
            f"(nu={nu}, mu={mu}, gamma={gam}, z={z})"
        )

    if peak > _MP_FALLBACK_RATIO * max(abs(total), cfg.abs_floor):
        return _ml_eval_mp(params, z, cfg, math.log10(peak))
    return total


def _ml_log10_peak(params: MLParams, z: float, cfg: SeriesConfig) -> float:
    """Scan the series in pure log space for its largest term magnitude."""
    lgamma = math.lgamma
    log_abs_z = math.log(abs(z))
    log_poch = 0.0
    best = -math.inf
    for k in range(cfg.max_terms):
        cur = log_poch + k * log_abs_z - lgamma(params.mu + k * params.nu)
        if cur > best:
            best = cur
        elif cur < best - 2000.0:
            break
        g = params.gamma + k
        if g == 0.0:
            break
        if params.gamma != 1.0:
            log_poch += math.log(abs(g)) - math.log(k + 1.0)
    return best / math.log(10.0)


def _mp_sum(make_term: Callable[[], Callable[[int], object]], cfg: SeriesConfig, log10_peak: float, what: str) -> float:
    """Sum a series in mpmath, widening precision until cancellation leaves
    at least fifteen significant digits.

    ``make_term`` is called once per attempt (under the working precision)
    and must return a stateful ``term(k)`` callable producing term k as an
    mpf, ``0`` for a term that vanishes identically, or ``None`` once the
    series has terminated exactly.
    """
    dps = 25 + max(0, int(log10_peak))
    for _ in range(4):
        with mp.workdps(dps):
            term_at = make_term()
            total = mp.mpf(0)
            peak = mp.mpf(0)
            small_run = 0
            cut = mp.mpf(10) ** (-(dps + 5))
            finished = False
            for k in range(cfg.max_terms):
                term = term_at(k)
                if term is None:
                    finished = True
                    break
                mag = abs(term)
                if mag == 0:
                    continue
                total += term
                if mag > peak:
                    peak = mag
                if mag < cut * peak:
                    small_run += 1
                    if small_run >= 3:
                        finished = True
                        break
                else:
                    small_run = 0
            if not finished:
                raise NonConvergence(
                    f"{what} did not converge in {cfg.max_terms} terms (mp fallback, dps={dps})"
                )
            if total == 0:
                lost = float(dps)
            elif peak > abs(total):
                lost = float(mp.log10(peak / abs(total)))
            else:
                lost = 0.0
            if dps - lost >= 15.0:
                return float(total)
        dps = int(lost) + 22
    raise NonConvergence(f"{what}: cancellation exceeded the precision budget")


def _ml_eval_mp(params: MLParams, z: float, cfg: SeriesConfig, log10_peak: float) -> float:
    nu, mu, gam = params.nu, params.mu, params.gamma

    def make_term():
        state = {"front": mp.mpf(1), "done": False}
        zz = mp.mpf(z)
        # Gamma arguments must be formed in mpf arithmetic: rounding
        # mu + k*nu in float64 perturbs huge terms by ~1e-13 relative,
        # which cancellation amplifies into a completely wrong sum
        nu_mp = mp.mpf(nu)
        mu_mp = mp.mpf(mu)

        def term(k: int):
            if state["done"]:
                return None
            val = state["front"] / mp.gamma(mu_mp + nu_mp * k)
            g = gam + k
            if g == 0.0:
                state["done"] = True
            else:
                state["front"] = state["front"] * g * zz / (k + 1)
            return val

        return term

    return _mp_sum(make_term, cfg, log10_peak, "Mittag-Leffler series")


def f_function(q: float, a: float, t: float, cfg: SeriesConfig = DEFAULT_SERIES_CONFIG) -> float:
    """Hartley-Lorenzo F-function: t^(q-1) * E[q, q](-a t^q) for q > 0, t > 0."""
    if not (q > 0):
        raise DomainError(f"q must be positive, got {q}")
    if not (t > 0):
        raise DomainError(f"t must be positive, got {t}")
    return t ** (q - 1.0) * ml_eval(MLParams(nu=q, mu=q), -a * t**q, cfg)


def r_function(
    nu: float,
    mu: float,
    a: float,
    delta: float,
    t: float,
    cfg: SeriesConfig = DEFAULT_SERIES_CONFIG,
) -> float:
    """Lorenzo-Hartley R-function: (t-d)^(nu-mu-1) * E[nu, nu-mu](a (t-d)^nu).

    Only the region t > delta with nu - mu > 0 is evaluated: there every
    Gamma((n+1)nu - mu) argument in the defining series is positive.
    """
    if not (nu - mu > 0):
        raise DomainError(f"nu - mu must be positive, got nu={nu}, mu={mu}")
    if not (t > delta):
        raise DomainError(f"t must exceed delta, got t={t}, delta={delta}")
    x = t - delta
    return x ** (nu - mu - 1.0) * ml_eval(MLParams(nu=nu, mu=nu - mu), a * x**nu, cfg)


def _wright_log_term(params: WrightParams, k: int, log_pow: float, sign_pow: float):
    """(log magnitude, sign) of Wright term k, or None when a lower-list
    Gamma pole makes the term vanish.  Raises on upper-list poles."""
    log_mag = log_pow
    sign = sign_pow
    for a, aa in params.upper:
        arg = a + aa * k
        if _near_nonpositive_int(arg):
            raise PoleError(f"upper Gamma argument {arg} hits a pole at term k={k}")
        log_mag += gammaln(arg)
        sign *= gammasgn(arg)
    for b, bb in params.lower:
        arg = b + bb * k
        if _near_nonpositive_int(arg):
            return None
        log_mag -= gammaln(arg)
        sign *= gammasgn(arg)
    return log_mag, sign


def wright_eval(
    params: WrightParams, z: float, cfg: SeriesConfig = DEFAULT_SERIES_CONFIG
) -> float:
    """Evaluate the generalized Wright series at real z.

    Term k carries prod Gamma(a_j + A_j k) / prod Gamma(b_j + B_j k) * z^k / k!.
    A lower-list Gamma pole makes the whole term vanish (1/Gamma is entire)
    and does not count toward the termination run; an upper-list pole makes
    the series undefined and raises ``PoleError``.  Heavy cancellation
    triggers the same mpmath fallback as ``ml_eval``.
    """
    z = float(z)
    if abs(z) > cfg.max_abs_z:
        raise DomainError(
            f"|z| = {abs(z)} exceeds the configured series domain bound {cfg.max_abs_z}"
        )

    total = 0.0
    comp = 0.0
    small_run = 0
    prev_mag = math.inf
    peak = 0.0
    log_abs_z = math.log(abs(z)) if z != 0.0 else 0.0
    sign_z = 1.0 if z >= 0 else -1.0
    sign_pow = 1.0
    converged = False
    n_used = 0

    for k in range(cfg.max_terms):
        n_used = k + 1
        # fresh log |z^k / k!| each term; see ml_eval on O(k^2 eps) drift
        lt = _wright_log_term(params, k, k * log_abs_z - math.lgamma(k + 1.0), sign_pow)
        if lt is not None:
            log_mag, sign = lt
            if log_mag > _LOG_OVERFLOW:
                return _wright_eval_mp(params, z, cfg, _wright_log10_peak(params, z, cfg))
            term = sign * math.exp(log_mag)
            y = term - comp
            t = total + y
            comp = (t - total) - y
            total = t

            mag = abs(term)
            if mag > peak:
                peak = mag
            if mag < cfg.abs_floor and k > 0 and mag <= prev_mag:
                converged = True
                break
            prev_mag = mag
            if mag < cfg.rel_tol * abs(total):
                small_run += 1
                if small_run >= 3:
                    converged = True
                    break
            else:
                small_run = 0

        if z == 0.0:
            converged = True
            break
        sign_pow *= sign_z

    if not converged:
        raise NonConvergence(f"Wright series did not converge in {cfg.max_terms} terms (z={z})")
    # long series hit the accuracy floor of float gammaln(k+1) against the
    # list Gammas; redo those in mpmath as well
    if n_used > 220 or peak > _MP_FALLBACK_RATIO * max(abs(total), cfg.abs_floor):
        return _wright_eval_mp(params, z, cfg, math.log10(max(peak, cfg.abs_floor)))
    return total


def _wright_log10_peak(params: WrightParams, z: float, cfg: SeriesConfig) -> float:
    log_abs_z = math.log(abs(z)) if z != 0.0 else 0.0
    best = -math.inf
    for k in range(cfg.max_terms):
        lt = _wright_log_term(params, k, k * log_abs_z - math.lgamma(k + 1.0), 1.0)
        if lt is not None:
            if lt[0] > best:
                best = lt[0]
            elif lt[0] < best - 2000.0:
                break
        if z == 0.0:
            break
    return best / math.log(10.0)


def _wright_eval_mp(params: WrightParams, z: float, cfg: SeriesConfig, log10_peak: float) -> float:
    def make_term():
        state = {"pow": mp.mpf(1)}
        zz = mp.mpf(z)
        # see _ml_eval_mp: Gamma arguments are formed in mpf arithmetic
        upper = tuple((mp.mpf(a), mp.mpf(aa)) for a, aa in params.upper)
        lower = tuple((mp.mpf(b), mp.mpf(bb)) for b, bb in params.lower)

        def term(k: int):
            val = state["pow"]
            state["pow"] = state["pow"] * zz / (k + 1)
            for a, aa in upper:
                if _near_nonpositive_int(float(a + aa * k)):
                    raise PoleError(f"upper Gamma argument {a + aa * k} hits a pole at term k={k}")
                val *= mp.gamma(a + aa * k)
            for b, bb in lower:
                if _near_nonpositive_int(float(b + bb * k)):
                    return mp.mpf(0)
                val /= mp.gamma(b + bb * k)
            return val

        return term

    return _mp_sum(make_term, cfg, log10_peak, "Wright series")


def hyp1f1(
    gamma1: float, beta1: float, x: float, cfg: SeriesConfig = DEFAULT_SERIES_CONFIG
) -> float:
    """Confluent hypergeometric series 1F1(gamma1; beta1; x) = sum (g)_k/((b)_k k!) x^k."""
    if _near_nonpositive_int(beta1):
        raise DomainError(f"beta1 must not be a non-positive integer, got {beta1}")
    x = float(x)
    term = 1.0
    total = 0.0
    comp = 0.0
    small_run = 0
    prev_mag = math.inf
    for k in range(cfg.max_terms):
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t

        mag = abs(term)
        if mag < cfg.abs_floor and k > 0 and mag <= prev_mag:
            return total
        prev_mag = mag
        if mag < cfg.rel_tol * abs(total):
            small_run += 1
            if small_run >= 3:
                return total
        else:
            small_run = 0

        term *= (gamma1 + k) / ((beta1 + k) * (k + 1.0)) * x
        if not math.isfinite(term):
            raise NonConvergence(f"1F1 term overflowed at k={k} (x={x})")

    raise NonConvergence(f"1F1 series did not converge in {cfg.max_terms} terms (x={x})")


def h_integrand(params: HFunctionParams, s: complex) -> complex:
    """Gamma-product ratio g(s) of the Mellin-Barnes representation.

    g(s) = [prod_{j<=m} Gamma(b_j + B_j s) * prod_{j<=n} Gamma(1 - a_j - A_j s)]
         / [prod_{j>m}  Gamma(1 - b_j - B_j s) * prod_{j>n}  Gamma(a_j + A_j s)]

    evaluated through the complex log-Gamma for stability.  ``PoleError`` is
    raised when any Gamma argument (numerator or denominator) falls on a
    non-positive integer within tolerance.
    """
    s = complex(s)

    def check(arg: complex) -> complex:
        if abs(arg.imag) < _POLE_TOL and _near_nonpositive_int(arg.real):
            raise PoleError(f"Gamma argument {arg} is a non-positive integer")
        return arg

    log_sum = 0.0 + 0.0j
    for j in range(params.m):
        b, bb = params.lower[j]
        log_sum += loggamma(check(b + bb * s))
    for j in range(params.n):
        a, aa = params.upper[j]
        log_sum += loggamma(check(1.0 - a - aa * s))
    for j in range(params.m, params.q):
        b, bb = params.lower[j]
        log_sum -= loggamma(check(1.0 - b - bb * s))
    for j in range(params.n, params.p):
        a, aa = params.upper[j]
        log_sum -= loggamma(check(a + aa * s))
    return cmath.exp(log_sum)
