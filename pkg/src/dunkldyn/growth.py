"""Critical growth rates, the weight-asymptotics band, Mittag-Leffler sums.

Everything here answers one of two questions about an entire function f and
the operator with parameter alpha:

* how fast may M_p(f, r) grow for f to remain a candidate (envelopes
  phi(r) e^r / r^a with the critical exponent a), and
* how the weights d_n and the comparison series sum_n r^{qn}/d_n^q actually
  behave, verified against their stated asymptotics on finite grids.

"Sufficiently large r" statements are operationalized on a bounded grid: a
profile is satisfied when its ratio stays at or below 1 from some grid index
to the end of the grid.  Band and supremum constants that the statements
leave unnamed are measured and frozen as golden values by the tests.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass

import mpmath
from mpmath import mp, mpf

from .dunkl import DunklWeights, _check_alpha
from .means import MeanParams, P_INF, conjugate_exponent, mean_p
from .series import TruncatedSeries

ENVELOPE_KINDS = ("to_infinity", "to_zero", "constant")

R_GRID_MIN = mpf("0.01")
R_GRID_MAX = mpf(400)
R_GRID_POINTS = 256

ML_MAX_TERMS = 10**6
ML_QUIET_STREAK = 8


def standard_r_grid(r_min=R_GRID_MIN, r_max=R_GRID_MAX, points=R_GRID_POINTS):
    """Log-spaced radius grid used as the default sup surrogate."""
    r_min, r_max = mpf(r_min), mpf(r_max)
    if not 0 < r_min < r_max:
        raise ValueError(f"need 0 < r_min < r_max, got ({r_min}, {r_max})")
    if points < 2:
        raise ValueError(f"need at least 2 grid points, got {points}")
    step = (mpmath.ln(r_max) - mpmath.ln(r_min)) / (points - 1)
    return tuple(r_min * mpmath.exp(i * step) for i in range(points))


class RateEnvelope:
    """Positive comparison function of r with a declared limiting behavior.

    kind "to_infinity" is a phi (nondecreasing, escaping), "to_zero" a psi
    (nonincreasing, vanishing), "constant" a plain C.  The limit claims are
    checked as finite-horizon monotonicity on whatever grid the envelope is
    validated against.
    """

    __slots__ = ("kind", "_fn", "label")

    def __init__(self, kind: str, fn, label: str = ""):
        if kind not in ENVELOPE_KINDS:
            raise ValueError(f"kind must be one of {ENVELOPE_KINDS}, got {kind!r}")
        self.kind = kind
        self._fn = fn
        self.label = label or kind

    def __call__(self, r) -> mpf:
        return mpf(self._fn(mpf(r)))

    @classmethod
    def log_growth(cls) -> "RateEnvelope":
        """phi(r) = ln(e + r): monotone, positive at 0, unbounded."""
        return cls("to_infinity", lambda r: mpmath.ln(mpmath.e + r), "ln(e+r)")

    @classmethod
    def constant(cls, value) -> "RateEnvelope":
        value = mpf(value)
        if not value > 0:
            raise ValueError(f"constant envelope must be positive, got {value}")
        return cls("constant", lambda r, v=value: v, f"C={mpmath.nstr(value, 8)}")

    @classmethod
    def decaying_log(cls) -> "RateEnvelope":
        """psi(r) = 1/ln(e + r): positive, nonincreasing, vanishing."""
        return cls("to_zero", lambda r: 1 / mpmath.ln(mpmath.e + r), "1/ln(e+r)")

    @classmethod
    def from_samples(cls, kind: str, r_grid, values, label: str = "") -> "RateEnvelope":
        """Piecewise-linear envelope through (r_grid, values), clamped outside."""
        r_grid = [mpf(r) for r in r_grid]
        values = [mpf(v) for v in values]
        if len(r_grid) != len(values) or len(r_grid) < 2:
            raise ValueError("need matching r/value samples, at least two")
        if any(b <= a for a, b in zip(r_grid, r_grid[1:])):
            raise ValueError("sample radii must be strictly increasing")

        def fn(r, xs=r_grid, ys=values):
            if r <= xs[0]:
                return ys[0]
            if r >= xs[-1]:
                return ys[-1]
            i = bisect.bisect_right(xs, r)
            t = (r - xs[i - 1]) / (xs[i] - xs[i - 1])
            return ys[i - 1] + t * (ys[i] - ys[i - 1])

        env = cls(kind, fn, label or f"sampled[{len(r_grid)}]")
        env.validate_on(r_grid)
        return env

    def validate_on(self, r_grid) -> None:
        """Positivity plus the monotonicity matching the declared kind."""
        vals = [self(r) for r in r_grid]
        if any(not v > 0 for v in vals):
            raise ValueError(f"envelope {self.label!r} not positive on the grid")
        pairs = zip(vals, vals[1:])
        if self.kind == "to_infinity":
            if any(b < a for a, b in pairs) or not vals[-1] > vals[0]:
                raise ValueError(f"envelope {self.label!r} not growing on the grid")
        elif self.kind == "to_zero":
            if any(b > a for a, b in pairs) or not vals[-1] < vals[0]:
                raise ValueError(f"envelope {self.label!r} not decaying on the grid")
        else:
            if any(b != a for a, b in pairs):
                raise ValueError(f"envelope {self.label!r} not constant on the grid")

    def __repr__(self) -> str:
        return f"RateEnvelope({self.kind}, {self.label!r})"


def rate_exponent(p, alpha, which: str) -> mpf:
    """Critical exponent a in the envelope e^r/r^a.

    hc: a = alpha + 1; fhc_upper: alpha + 1/2 + 1/(2 max(2,p));
    fhc_lower: alpha + 1/2 + 1/(2 min(2,p)), with 1/(2p) = 0 at p = inf.
    """
    alpha = _check_alpha(alpha)
    if p != P_INF:
        p = mpf(p)
        if not p >= 1:
            raise ValueError(f"p must lie in [1, inf], got {p}")
    if which == "hc":
        return alpha + 1
    if which == "fhc_upper":
        if p == P_INF or p > 2:
            half_over = mpf(0) if p == P_INF else 1 / (2 * p)
            return alpha + mpf(0.5) + half_over
        return alpha + mpf(0.5) + mpf(0.25)
    if which == "fhc_lower":
        small = mpf(2) if p == P_INF else min(mpf(2), p)
        return alpha + mpf(0.5) + 1 / (2 * small)
    raise ValueError(f"which must be hc, fhc_upper or fhc_lower, got {which!r}")


def lemma1_ratio(n: int, w: DunklWeights) -> mpf:
    """d_n e^{n+alpha+1} / (n+alpha+1)^{n+alpha+1}, evaluated in log domain.

    Two-sided boundedness of this ratio over n is the weight asymptotic; the
    band endpoints are empirical constants frozen by the calibration tests.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    x = n + w.alpha + 1
    return mpmath.exp(w.log_weight(n) + x - x * mpmath.ln(x))


def mittag_leffler(z, ml_alpha, theta, beta, tol=None):
    """E(z) = sum_n z^n / ((n+theta)^beta Gamma(ml_alpha n + 1)).

    Terms are accumulated until the upcoming term stays below tol times the
    running sum for 8 consecutive indices; integer ml_alpha uses an exact
    term recurrence, general ml_alpha recomputes each Gamma factor.
    """
    ml_alpha = mpf(ml_alpha)
    if not 0 < ml_alpha <= 2:
        raise ValueError(f"ml_alpha must lie in (0, 2], got {ml_alpha}")
    theta = mpf(theta)
    if not theta > 0:
        raise ValueError(f"theta must be > 0, got {theta}")
    beta = mpf(beta)
    if tol is None:
        tol = mpf(2) ** (16 - mp.prec)
    z = mpmath.mpmathify(z)

    int_alpha = int(ml_alpha) if ml_alpha == int(ml_alpha) else None
    total = mpmath.mpc(0)
    power_over_gamma = mpf(1)  # z^n / Gamma(ml_alpha n + 1) along the loop
    streak = 0
    for n in range(ML_MAX_TERMS):
        if int_alpha is None:
            term = z**n / mpmath.gamma(ml_alpha * n + 1)
        else:
            term = power_over_gamma
            denom = mpf(1)
            for i in range(int_alpha):
                denom *= int_alpha * n + 1 + i
            power_over_gamma = power_over_gamma * z / denom
        if beta != 0:
            term = term / (n + theta) ** beta
        total += term
        upcoming = abs(z) ** (n + 1) / mpmath.gamma(ml_alpha * (n + 1) + 1) \
            if int_alpha is None else abs(power_over_gamma)
        if beta > 0:
            upcoming = upcoming / (n + 1 + theta) ** beta
        elif beta < 0:
            upcoming = upcoming * (n + 1 + theta) ** (-beta)
        if upcoming < tol * abs(total):
            streak += 1
            if streak >= ML_QUIET_STREAK:
                break
        else:
            streak = 0
    else:
        raise RuntimeError(
            f"Mittag-Leffler sum not converged within {ML_MAX_TERMS} terms"
        )
    if mpmath.im(z) == 0 and mpmath.re(z) >= 0:
        return mpmath.re(total)
    return total


def barnes_asymptotic(r, ml_alpha, theta, beta) -> mpf:
    """Leading asymptotic term ml_alpha^{beta-1} r^{-beta/ml_alpha} e^{r^{1/ml_alpha}}."""
    r = mpf(r)
    if not r > 0:
        raise ValueError(f"r must be > 0, got {r}")
    ml_alpha = mpf(ml_alpha)
    if not 0 < ml_alpha <= 2:
        raise ValueError(f"ml_alpha must lie in (0, 2], got {ml_alpha}")
    beta = mpf(beta)
    return ml_alpha ** (beta - 1) * r ** (-beta / ml_alpha) * mpmath.exp(r ** (1 / ml_alpha))


def lemma3_ratio(r, q, w: DunklWeights, n_terms=None) -> mpf:
    """[sum_n r^{qn}/d_n^q] / [e^r / r^{alpha+1/2+1/(2p)}]^q with p conjugate to q.

    With n_terms omitted the sum runs until terms drop below 2^-prec of the
    running total; exhausting the weight table first is an error.
    """
    r = mpf(r)
    if not r > 0:
        raise ValueError(f"r must be > 0, got {r}")
    q = mpf(q)
    if not 1 <= q <= 2:
        raise ValueError(f"q must lie in [1, 2], got {q}")
    p = conjugate_exponent(q)
    a = rate_exponent(p, w.alpha, "fhc_upper")
    ln_r = mpmath.ln(r)
    cutoff = mpf(2) ** (-mp.prec)
    total = mpf(0)
    limit = w.n_max if n_terms is None else min(int(n_terms), w.n_max)
    for n in range(limit + 1):
        term = mpmath.exp(q * (n * ln_r - w.log_weight(n)))
        total += term
        if n_terms is None and term < cutoff * total and n > r:
            break
    else:
        if n_terms is None:
            raise ValueError(
                f"weight table (n_max={w.n_max}) exhausted before the sum settled at r={mpmath.nstr(r, 8)}"
            )
    log_den = q * (r - a * ln_r)
    return mpmath.exp(mpmath.ln(total) - log_den)


@dataclass(frozen=True)
class GrowthProfile:
    """Ratio table M_p(f,r) r^a / (env(r) e^r) over a radius grid."""

    r_grid: tuple
    ratios: tuple
    exponent: mpf
    p: object
    satisfied_from: int | None

    def satisfied(self) -> bool:
        return self.satisfied_from is not None


def growth_profile(f: TruncatedSeries, p, a, env: RateEnvelope, r_grid) -> GrowthProfile:
    """Measure f against the envelope env(r) e^r / r^a at exponent a.

    satisfied_from is the smallest grid index beyond which every ratio is
    at most 1, or None when even the last grid point violates the envelope.
    """
    r_grid = tuple(mpf(r) for r in r_grid)
    if any(not r > 0 for r in r_grid):
        raise ValueError("r_grid must be positive")
    if any(b <= a_ for a_, b in zip(r_grid, r_grid[1:])):
        raise ValueError("r_grid must be strictly increasing")
    a = mpf(a)
    params = MeanParams(p)
    ratios = []
    for r in r_grid:
        m_val = mean_p(f, r, params).value
        ratios.append(m_val * r**a / (env(r) * mpmath.exp(r)))
    satisfied_from = None
    for i in range(len(ratios) - 1, -1, -1):
        if ratios[i] > 1:
            break
        satisfied_from = i
    return GrowthProfile(r_grid, tuple(ratios), a, params.p, satisfied_from)
