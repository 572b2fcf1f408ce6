"""Dunkl weights d_n(alpha) and the induced operator actions on series.

The operator acts on entire functions as Lf(z) = f'(z) + (2a+1)(f(z)-f(-z))/(2z)
with parameter a > -1/2.  On coefficients it is the weighted backward shift
with ratio weights

    a_n = d_n/d_{n-1} = n            (n even)
          n + 2 alpha + 1            (n odd)

so L^k z^n = (d_n / d_{n-k}) z^{n-k}, with d_n = 0 understood for n < 0: powers
below the step are annihilated outright (strictly n > k survives to positive
degree; n == k maps to the constant d_n).

Two independent routes to the action are kept deliberately: ``apply_dunkl``
goes through the d_n table, ``apply_dunkl_direct`` recomputes each coefficient
from the defining formula without touching the table.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mp, mpf, mpc

from .numeric import LogScaled, log_gamma
from .series import TruncatedSeries

ALPHA_BOUNDARY_GAP = 1e-12


def _check_alpha(alpha) -> mpf:
    alpha = mpf(alpha)
    if not alpha > mpf(-0.5) + mpf(ALPHA_BOUNDARY_GAP):
        raise ValueError(
            f"alpha must exceed -1/2 + {ALPHA_BOUNDARY_GAP} (got {mpmath.nstr(alpha, 17)})"
        )
    return alpha


class DunklWeights:
    """Table of log d_n(alpha) for n = 0..n_max, built by the ratio recurrence.

    The closed Gamma form is available separately (``gamma_form_log_weight``)
    as an independent consistency route; the two agree to within a few ulps.
    """

    __slots__ = ("alpha", "n_max", "_log_d", "_ratios", "precision_bits")

    def __init__(self, alpha, n_max: int):
        self.alpha = _check_alpha(alpha)
        if n_max < 0:
            raise ValueError(f"n_max must be >= 0, got {n_max}")
        self.n_max = int(n_max)
        self.precision_bits = mp.prec
        two_alpha_plus_1 = 2 * self.alpha + 1
        ratios = [mpf(0)]  # a_0 unused
        log_d = [mpf(0)]  # d_0 = 1
        for n in range(1, self.n_max + 1):
            a_n = mpf(n) if n % 2 == 0 else mpf(n) + two_alpha_plus_1
            ratios.append(a_n)
            log_d.append(log_d[-1] + mpmath.ln(a_n))
        self._ratios = ratios
        self._log_d = log_d

    def ratio(self, n: int) -> mpf:
        """a_n = d_n / d_{n-1} for 1 <= n <= n_max."""
        if not 1 <= n <= self.n_max:
            raise IndexError(f"ratio index {n} outside [1, {self.n_max}]")
        return self._ratios[n]

    def log_weight(self, n: int) -> mpf:
        if not 0 <= n <= self.n_max:
            raise IndexError(f"weight index {n} outside [0, {self.n_max}]")
        return self._log_d[n]

    def weight(self, n: int) -> LogScaled:
        """d_n as a LogScaled value; identically zero for n < 0."""
        if n < 0:
            return LogScaled.zero()
        return LogScaled(1, self.log_weight(n))

    def gamma_form_log_weight(self, n: int) -> mpf:
        """Closed form ln d_n = n ln2 + ln G(floor(n/2)+1) + ln G(floor((n+1)/2)+alpha+1) - ln G(alpha+1)."""
        if not 0 <= n <= self.n_max:
            raise IndexError(f"weight index {n} outside [0, {self.n_max}]")
        return (
            n * mpmath.ln(mpf(2))
            + log_gamma(mpf(n // 2) + 1)
            + log_gamma(mpf((n + 1) // 2) + self.alpha + 1)
            - log_gamma(self.alpha + 1)
        )

    def __repr__(self) -> str:
        return f"DunklWeights(alpha={mpmath.nstr(self.alpha, 12)}, n_max={self.n_max})"


class WeightedShift:
    """A weighted backward shift B e_n = a_n e_{n-1} given by its weight list."""

    __slots__ = ("a", "cumlog", "n_max")

    def __init__(self, weights):
        a = [mpc(0)]  # index 0 unused
        cumlog = [mpf(0)]
        for n, w in enumerate(weights, start=1):
            w = mpc(w)
            if w == 0:
                raise ValueError(f"shift weight a_{n} must be nonzero")
            a.append(w)
            cumlog.append(cumlog[-1] + mpmath.ln(abs(w)))
        self.a = a
        self.cumlog = cumlog
        self.n_max = len(a) - 1

    @classmethod
    def from_dunkl(cls, w: DunklWeights) -> "WeightedShift":
        return cls(w.ratio(n) for n in range(1, w.n_max + 1))

    @classmethod
    def maclane(cls, n_max: int) -> "WeightedShift":
        """Plain differentiation weights a_n = n."""
        return cls(mpf(n) for n in range(1, n_max + 1))

    def weight_growth_bound(self) -> mpf:
        """max_n |a_n|^(1/n) over the stored range (finite by construction)."""
        return max(mpmath.exp(self.cumlog[n] - self.cumlog[n - 1]) ** (mpf(1) / n)
                   for n in range(1, self.n_max + 1)) if self.n_max else mpf(0)


@dataclass(frozen=True)
class ShiftDiagnostic:
    """Finite-horizon hypercyclicity diagnostic for a weighted shift."""

    g: tuple  # g_n = |prod_{k<=n} a_k|^(1/n), n = 1..n_max
    running_sup: tuple

    def final_sup(self) -> mpf:
        return self.running_sup[-1]


def shift_hypercyclicity_diagnostic(s: WeightedShift) -> ShiftDiagnostic:
    """g_n sequence whose unbounded growth is the hypercyclicity certificate.

    The shift is hypercyclic iff limsup g_n is infinite; at a finite horizon we
    report the sequence and its running supremum and leave the trend judgment
    to the caller.
    """
    g = []
    sup = []
    best = mpf("-inf")
    for n in range(1, s.n_max + 1):
        val = mpmath.exp(s.cumlog[n] / n)
        g.append(val)
        if val > best:
            best = val
        sup.append(best)
    return ShiftDiagnostic(tuple(g), tuple(sup))


def critical_rate_mu(s: WeightedShift, r) -> tuple[LogScaled, int]:
    """mu(r) = max_{0<=n<=n_max} r^n / |a_1 ... a_n| and its smallest argmax."""
    r = mpf(r)
    if r < 0:
        raise ValueError(f"r must be >= 0, got {r}")
    if r == 0:
        return LogScaled.one(), 0
    ln_r = mpmath.ln(r)
    best_log = mpf(0)  # n = 0 term: empty product, value 1
    best_n = 0
    for n in range(1, s.n_max + 1):
        lv = n * ln_r - s.cumlog[n]
        if lv > best_log:
            best_log = lv
            best_n = n
    return LogScaled(1, best_log), best_n


def _require_table(f: TruncatedSeries, w: DunklWeights) -> None:
    if f.degree() > w.n_max:
        raise ValueError(
            f"weight table too short: series degree {f.degree()} > n_max {w.n_max}"
        )


def apply_dunkl(f: TruncatedSeries, w: DunklWeights, k: int = 1) -> TruncatedSeries:
    """L^k f via the weight table: c_{n+k} d_{n+k}/d_n lands at degree n."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if k == 0:
        return f
    _require_table(f, w)
    table: dict[int, mpc] = {}
    for i, c in f.items():
        if i < k:
            continue  # annihilated: d_{i-k} = 0 convention for i - k < 0
        factor = mpmath.exp(w.log_weight(i) - w.log_weight(i - k))
        table[i - k] = c * factor
    return TruncatedSeries(table, f.trunc_degree)


def apply_dunkl_direct(f: TruncatedSeries, w: DunklWeights, k: int = 1) -> TruncatedSeries:
    """L^k f from the defining coefficient formula, independent of the d_n table.

    One step sends c to c' with c'_n = (n+1) c_{n+1} + (2 alpha + 1) c_{n+1}
    when n+1 is odd; iterating k times gives the oracle for L^k.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    two_alpha_plus_1 = 2 * w.alpha + 1
    out = f
    for _ in range(k):
        table: dict[int, mpc] = {}
        for i, c in out.items():
            if i < 1:
                continue
            factor = mpf(i) if i % 2 == 0 else mpf(i) + two_alpha_plus_1
            table[i - 1] = c * factor
        out = TruncatedSeries(table, f.trunc_degree)
    return out


def right_inverse(f: TruncatedSeries, w: DunklWeights, n: int = 1) -> TruncatedSeries:
    """S^n f with S z^k = (d_k / d_{k+1}) z^{k+1}; L^n S^n = identity.

    Raises if the shifted support would spill past the truncation order.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n == 0:
        return f
    d = f.degree()
    if d + n > f.trunc_degree:
        raise ValueError(
            f"right inverse overflow: degree {d} + shift {n} exceeds trunc_degree {f.trunc_degree}"
        )
    if d >= 0 and d + n > w.n_max:
        raise ValueError(
            f"weight table too short: need d_{d + n}, table ends at {w.n_max}"
        )
    table: dict[int, mpc] = {}
    for i, c in f.items():
        factor = mpmath.exp(w.log_weight(i) - w.log_weight(i + n))
        table[i + n] = c * factor
    return TruncatedSeries(table, f.trunc_degree)
