"""Closed-form solvers for linear fractional kinetic equations.

Every equation handled here has the shape

    N(t) = source(t) - c**nu * (I^nu N)(t)

with I^nu the Riemann-Liouville integral of order nu. In transform space
the solution is rational in p**nu, and its inverse is a finite
combination of terms weight * t**power * E(-rate * t**nu) with E a
Mittag-Leffler function. ``solve`` returns that combination as a
:class:`SolutionSeries`; ``transform_of`` returns the matching
descriptor so the series can be cross-checked against numerical
inversion.

Transforms with a three-term denominator p**alpha + a p**beta + b fall
outside the single-rate family; ``invert_three_term`` sums their inverse
as an outer series of three-parameter Mittag-Leffler terms in powers of
a * t**(alpha-beta). The outer series is treated as convergent only for
|a| t**(alpha-beta) <= 20; beyond that the truncation estimate is
meaningless and a DomainError is raised instead.

All evaluation funnels through ``special_functions.ml_eval`` so there is
a single audited series implementation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError, NonConvergence, PoleError, TieError
from .laplace import (
    MLBasic,
    MLGeneral,
    ThreeTermAlpha,
    ThreeTermBeta,
    TransformDescriptor,
    TwoRateProduct,
)
from .special_functions import DEFAULT_SERIES_CONFIG, MLParams, SeriesConfig, ml_eval

# Relative gap under which the two destruction rates are considered tied
# and the squared-denominator branch is taken.
_TIE_REL_TOL = 1e-8

# Empirical divergence guard for the outer series in invert_three_term.
_OUTER_ARG_LIMIT = 20.0

# A finished outer series must have a tail estimate below this, relative
# to max(|sum|, 1).
_OUTER_TAIL_TOL = 1e-10


class ProblemKind(Enum):
    """Which source term drives the kinetic balance equation."""

    BASIC = "basic"
    POWER_SOURCE = "power-source"
    ML_GAMMA_SOURCE = "ml-gamma-source"
    ML_SOURCE = "ml-source"
    TWO_RATE = "two-rate"


@dataclass(frozen=True)
class KineticProblem:
    """A single linear fractional kinetic equation.

    kind selects the source term:

    * BASIC: constant source n0.
    * POWER_SOURCE: n0 * t**(mu-1).
    * ML_GAMMA_SOURCE: n0 * t**(mu-1) * E[nu, mu; gamma](-c**nu t**nu).
    * ML_SOURCE: n0 * t**(mu-1) * E[nu, mu](-c**nu t**nu), same rate c
      in source and loss term. Requires mu > 1 so the solution's
      lowered-index Mittag-Leffler term stays inside the supported
      parameter domain.
    * TWO_RATE: n0 * t**(mu-1) * E[nu, mu](-d**nu t**nu), production
      rate d distinct from the destruction rate c. Requires mu > nu for
      the same reason.
    """

    kind: ProblemKind
    n0: float
    c: float
    nu: float
    mu: float = 1.0
    gamma: float = 0.0
    d: float | None = None

    def __post_init__(self) -> None:
        # n0 = 0 is the empty system; kept legal so zero solutions can
        # round-trip through residual certification
        if self.n0 < 0.0:
            raise DomainError(f"n0 must be nonnegative, got {self.n0}")
        if self.c <= 0.0:
            raise DomainError(f"rate c must be positive, got {self.c}")
        if self.nu <= 0.0:
            raise DomainError(f"order nu must be positive, got {self.nu}")
        if self.mu <= 0.0:
            raise DomainError(f"exponent mu must be positive, got {self.mu}")
        if self.kind is ProblemKind.TWO_RATE:
            if self.d is None or self.d <= 0.0:
                raise DomainError("two-rate problems need a positive rate d")
            if self.mu <= self.nu:
                raise DomainError(
                    f"two-rate solutions need mu > nu, got mu={self.mu}, nu={self.nu}"
                )
        elif self.d is not None:
            raise DomainError("rate d only applies to two-rate problems")
        if self.kind is ProblemKind.ML_GAMMA_SOURCE:
            if self.gamma <= -1.0 or self.gamma == 0.0:
                raise DomainError(
                    f"source index gamma must be > -1 and nonzero, got {self.gamma}"
                )
        elif self.gamma != 0.0:
            raise DomainError("gamma only applies to ml-gamma-source problems")
        if self.kind is ProblemKind.ML_SOURCE and self.mu <= 1.0:
            raise DomainError(
                f"ml-source solutions need mu > 1, got mu={self.mu}"
            )


@dataclass(frozen=True)
class SeriesTerm:
    """One summand weight * t**power * E[ml](-rate * t**ml.nu)."""

    weight: float
    power: float
    ml: MLParams
    rate: float


@dataclass(frozen=True)
class SolutionSeries:
    """Finite Mittag-Leffler combination solving a kinetic equation.

    truncation, when present, records (outer terms used, tail estimate)
    for values obtained by truncating an infinite outer series.
    """

    terms: tuple[SeriesTerm, ...]
    notes: tuple[str, ...] = ()
    truncation: tuple[int, float] | None = None

    def evaluate(self, t: float, cfg: SeriesConfig = DEFAULT_SERIES_CONFIG) -> float:
        if t < 0.0:
            raise DomainError(f"time must be nonnegative, got {t}")
        total = 0.0
        for term in self.terms:
            if t == 0.0:
                if term.power < 0.0:
                    raise DomainError("series diverges at t=0, evaluate at t > 0")
                prefactor = term.weight if term.power == 0.0 else 0.0
                total += prefactor * ml_eval(term.ml, 0.0, cfg)
                continue
            z = -term.rate * t**term.ml.nu
            total += term.weight * t**term.power * ml_eval(term.ml, z, cfg)
        return total

    def __call__(self, t: float) -> float:
        return self.evaluate(t)


def solve(problem: KineticProblem) -> SolutionSeries:
    """Return the closed-form solution of the given kinetic equation."""
    n0, nu, mu = problem.n0, problem.nu, problem.mu
    c_nu = problem.c**nu
    kind = problem.kind
    if kind is ProblemKind.BASIC:
        terms = (SeriesTerm(n0, 0.0, MLParams(nu=nu), c_nu),)
        return SolutionSeries(terms)
    if kind is ProblemKind.POWER_SOURCE:
        terms = (SeriesTerm(n0 * math.gamma(mu), mu - 1.0, MLParams(nu=nu, mu=mu), c_nu),)
        return SolutionSeries(terms)
    if kind is ProblemKind.ML_GAMMA_SOURCE:
        ml = MLParams(nu=nu, mu=mu, gamma=problem.gamma + 1.0)
        return SolutionSeries((SeriesTerm(n0, mu - 1.0, ml, c_nu),))
    if kind is ProblemKind.ML_SOURCE:
        terms = (
            SeriesTerm(n0 / nu, mu - 1.0, MLParams(nu=nu, mu=mu - 1.0), c_nu),
            SeriesTerm(n0 * (1.0 - mu + nu) / nu, mu - 1.0, MLParams(nu=nu, mu=mu), c_nu),
        )
        return SolutionSeries(terms)
    d_nu = problem.d**nu
    if abs(c_nu - d_nu) < _TIE_REL_TOL * max(c_nu, d_nu):
        ml = MLParams(nu=nu, mu=mu, gamma=2.0)
        return SolutionSeries(
            (SeriesTerm(n0, mu - 1.0, ml, c_nu),),
            notes=("tie-break: rates coincide, squared-denominator branch",),
        )
    weight = n0 / (c_nu - d_nu)
    ml = MLParams(nu=nu, mu=mu - nu)
    terms = (
        SeriesTerm(weight, mu - nu - 1.0, ml, d_nu),
        SeriesTerm(-weight, mu - nu - 1.0, ml, c_nu),
    )
    return SolutionSeries(terms)


def transform_of(problem: KineticProblem) -> TransformDescriptor:
    """Descriptor of the Laplace transform of the problem's solution."""
    n0, c, nu, mu = problem.n0, problem.c, problem.nu, problem.mu
    kind = problem.kind
    if kind is ProblemKind.BASIC:
        return MLBasic(c=c, nu=nu, n0=n0)
    if kind is ProblemKind.POWER_SOURCE:
        return MLGeneral(c=c, nu=nu, mu=mu, gamma=0.0, n0=n0 * math.gamma(mu))
    if kind is ProblemKind.ML_GAMMA_SOURCE:
        return MLGeneral(c=c, nu=nu, mu=mu, gamma=problem.gamma, n0=n0)
    if kind is ProblemKind.ML_SOURCE:
        return MLGeneral(c=c, nu=nu, mu=mu, gamma=1.0, n0=n0)
    return TwoRateProduct(c=c, d=problem.d, nu=nu, mu=mu, n0=n0)


def source_term(problem: KineticProblem, t: float,
                cfg: SeriesConfig = DEFAULT_SERIES_CONFIG) -> float:
    """Evaluate the driving source of the kinetic equation at time t."""
    if t <= 0.0:
        raise DomainError(f"source evaluation needs t > 0, got {t}")
    n0, nu, mu = problem.n0, problem.nu, problem.mu
    kind = problem.kind
    if kind is ProblemKind.BASIC:
        return n0
    prefactor = n0 * t ** (mu - 1.0)
    if kind is ProblemKind.POWER_SOURCE:
        return prefactor
    if kind is ProblemKind.ML_GAMMA_SOURCE:
        ml = MLParams(nu=nu, mu=mu, gamma=problem.gamma)
        return prefactor * ml_eval(ml, -(problem.c**nu) * t**nu, cfg)
    if kind is ProblemKind.ML_SOURCE:
        return prefactor * ml_eval(MLParams(nu=nu, mu=mu), -(problem.c**nu) * t**nu, cfg)
    return prefactor * ml_eval(MLParams(nu=nu, mu=mu), -(problem.d**nu) * t**nu, cfg)


def partial_fraction_split(c: float, d: float, nu: float, p: complex) -> tuple[complex, complex]:
    """Both routes through the two-rate denominator split, for comparison.

    Returns (product form, split form) of
    1 / ((p**nu + c**nu)(p**nu + d**nu)); the caller asserts equality.
    """
    if c <= 0.0 or d <= 0.0 or nu <= 0.0:
        raise DomainError("rates and order must be positive")
    c_nu, d_nu = c**nu, d**nu
    if abs(c_nu - d_nu) < _TIE_REL_TOL * max(c_nu, d_nu):
        raise TieError(f"rates c={c}, d={d} coincide at order nu={nu}")
    p_nu = complex(p) ** nu
    den_c, den_d = p_nu + c_nu, p_nu + d_nu
    if min(abs(den_c), abs(den_d)) < 1e-12:
        raise PoleError(f"p={p} sits on a denominator zero")
    product = 1.0 / (den_c * den_d)
    split = (1.0 / den_d - 1.0 / den_c) / (c_nu - d_nu)
    return product, split


class NumeratorKind(Enum):
    """Numerator power of a three-term transform."""

    ALPHA_MINUS_ONE = "alpha-minus-one"
    BETA_MINUS_ONE = "beta-minus-one"


@dataclass(frozen=True)
class ThreeTermTransform:
    """Transform p**k / (p**alpha + a p**beta + b), k from numerator_kind."""

    alpha: float
    beta: float
    a: float
    b: float
    numerator_kind: NumeratorKind = NumeratorKind.ALPHA_MINUS_ONE

    def __post_init__(self) -> None:
        if not self.alpha > self.beta >= 0.0:
            raise DomainError(
                f"need alpha > beta >= 0, got alpha={self.alpha}, beta={self.beta}"
            )

    def descriptor(self) -> TransformDescriptor:
        """The equivalent transform-catalog descriptor (oracle hook)."""
        if self.numerator_kind is NumeratorKind.ALPHA_MINUS_ONE:
            return ThreeTermAlpha(a=self.a, b=self.b, alpha=self.alpha, beta=self.beta)
        return ThreeTermBeta(a=self.a, b=self.b, alpha=self.alpha, beta=self.beta)


def invert_three_term(tt: ThreeTermTransform, t: float, outer_terms: int = 64,
                      cfg: SeriesConfig = DEFAULT_SERIES_CONFIG) -> float:
    """Inverse transform of a three-term denominator at time t.

    Expands 1 / (p**alpha + a p**beta + b) in powers of
    a / (p**(alpha-beta) + b p**(-beta)) and inverts term by term,
    giving an outer series of three-parameter Mittag-Leffler values in
    x = -a * t**(alpha-beta). Truncation stops once two consecutive
    terms fall below the series tolerance; if the budget runs out first
    and the tail estimate (twice the last term) is above the accepted
    level, NonConvergence is raised.
    """
    if t <= 0.0:
        raise DomainError(f"time must be positive, got {t}")
    if outer_terms < 1:
        raise DomainError(f"outer_terms must be at least 1, got {outer_terms}")
    gap = tt.alpha - tt.beta
    if abs(tt.a) * t**gap > _OUTER_ARG_LIMIT:
        raise DomainError(
            f"outer series diverges: |a| t**(alpha-beta) = {abs(tt.a) * t ** gap:.3g} > "
            f"{_OUTER_ARG_LIMIT}"
        )
    shift = 0.0 if tt.numerator_kind is NumeratorKind.ALPHA_MINUS_ONE else gap
    z = -tt.b * t**tt.alpha
    total = 0.0
    comp = 0.0
    small_run = 0
    term = 0.0
    for r in range(outer_terms):
        power = gap * r + shift
        ml = MLParams(nu=tt.alpha, mu=power + 1.0, gamma=float(r + 1))
        term = (-tt.a) ** r * t**power * ml_eval(ml, z, cfg)
        y = term - comp
        s = total + y
        comp = (s - total) - y
        total = s
        if r > 0 and abs(term) <= cfg.rel_tol * max(abs(total), 1e-300):
            small_run += 1
            if small_run >= 2:
                return total
        else:
            small_run = 0
    tail = 2.0 * abs(term)
    if tail > _OUTER_TAIL_TOL * max(abs(total), 1.0):
        raise NonConvergence(
            f"outer series tail estimate {tail:.3g} after {outer_terms} terms"
        )
    return total
