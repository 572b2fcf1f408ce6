"""Constructive builders for hypercyclic and frequently hypercyclic series.

The hypercyclic builder lays target polynomials Q_k into disjoint coefficient
blocks S^{m_k} Q_k, choosing each m_k as the smallest position satisfying

  (a) disjointness from the previous block,
  (b) the block's weighted-norm upper bound on the radius grid stays under
      an internal threshold eps_k / budget_tighten (so the stated budget
      eps_k = 2^-k holds with headroom), and
  (c) the block's shadow at every earlier position j < k, the circle sup of
      S^{m_k - m_j} Q_k at the build radius, stays under eps_k Phi(R)/safety,
      where Phi(R) = env(R) e^R / R^{alpha+1}.

Condition (c) is what makes the orbit verification budgets attainable: the
residual Lambda^{m_j} f - Q_j equals exactly the sum of those shadows of the
later blocks, so bounding the shadows term by term bounds every residual by
its tail budget.  Without it, consecutive blocks can sit a few slots apart
and leave residuals of order one against budgets of order 2^-K.

Optionally the builder pre-places positive "filler" monomials at low degrees
whose coefficients fill the envelope up to a fixed fraction: the running
total of their contributions to M_1(f, r) r^{alpha+1}/e^r touches
filler_sat * env(r) near each filler's peak radius and never exceeds it.
Fillers sit strictly below every target block, so Lambda^{m_k} annihilates
them and no residual changes; their job is to make the windowed growth
constant of the construction strictly increase as the radius window widens,
at every scale the grid can see rather than only near its upper edge.

The frequently hypercyclic builder uses the dyadic-residue schedule
A_j = {m_0 + B (2^j k + 2^{j-1})}: exact nominal densities 1/(B 2^j),
pairwise disjointness by 2-adic valuation, O(1) membership.  The start
offset m_0 is the smallest making the total weighted-norm bound of all
scheduled blocks fit the configured budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import mpmath
import numpy as np
from mpmath import mp, mpf, mpc

from .dunkl import DunklWeights, apply_dunkl
from .growth import RateEnvelope, rate_exponent, standard_r_grid
from .numeric import from_decimal, to_decimal
from .series import TruncatedSeries

Polynomial = tuple  # of Fraction, low degree first, no trailing zeros


class InfeasibleConstruction(Exception):
    """Raised when a schedule cannot fit the truncation order."""

    def __init__(self, message, achieved=0):
        super().__init__(message)
        self.achieved = achieved


# ---------------------------------------------------------------------------
# polynomials and their enumeration


def poly_degree(poly: Polynomial) -> int:
    return len(poly) - 1


def poly_is_zero(poly: Polynomial) -> bool:
    return len(poly) == 0


def poly_normalize(coeffs) -> Polynomial:
    coeffs = [Fraction(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def poly_to_series(poly: Polynomial, trunc_degree: int) -> TruncatedSeries:
    table = {}
    for i, c in enumerate(poly):
        if c != 0:
            table[i] = mpc(mpf(c.numerator) / c.denominator)
    return TruncatedSeries(table, trunc_degree)


def poly_label(poly: Polynomial) -> str:
    if poly_is_zero(poly):
        return "0"
    parts = []
    for i in range(len(poly) - 1, -1, -1):
        c = poly[i]
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            body = ("" if mag == 1 else f"{mag}") + ("z" if i == 1 else f"z^{i}")
        parts.append(("-" if c < 0 else "+" if parts else "") + body)
    return "".join(parts)


def _rationals_of_height(h: int):
    """Reduced fractions with max(|num|, den) == h, denominator-major order."""
    for den in range(1, h + 1):
        for num in range(1, h + 1):
            if max(num, den) == h and math.gcd(num, den) == 1:
                yield Fraction(num, den)
                yield Fraction(-num, den)


class TargetEnumeration:
    """Deterministic bijection index -> rational polynomial of degree <= max_degree.

    Index 1 is the zero polynomial.  Stage h >= 1 appends, in order of degree,
    then leading coefficient, then lower coefficients with the constant term
    varying fastest, every polynomial whose coefficient data has height
    max(|num|, den) exactly h.  Each polynomial therefore appears exactly once
    and every rational polynomial with bounded data is eventually reached.
    """

    def __init__(self, max_degree: int = 8):
        if max_degree < 0:
            raise ValueError(f"max_degree must be >= 0, got {max_degree}")
        self.max_degree = max_degree
        self._cache = [()]
        self._gen = self._generate()

    def _generate(self):
        h = 0
        values = [Fraction(0)]
        while True:
            h += 1
            values = values + list(_rationals_of_height(h))
            nonzero = [v for v in values if v != 0]
            for d in range(self.max_degree + 1):
                for lead in nonzero:
                    for lower in product(values, repeat=d):
                        data = lower + (lead,)
                        if max(max(abs(c.numerator), c.denominator) for c in data) != h:
                            continue
                        yield tuple(reversed(lower)) + (lead,)

    def polynomial(self, index: int) -> Polynomial:
        if index < 1:
            raise ValueError(f"index must be >= 1, got {index}")
        while len(self._cache) < index:
            self._cache.append(next(self._gen))
        return self._cache[index - 1]


_ENUMERATIONS: dict[int, TargetEnumeration] = {}


def enumerate_targets(index: int, cfg=None) -> Polynomial:
    max_degree = 8 if cfg is None else cfg.max_degree
    enum = _ENUMERATIONS.get(max_degree)
    if enum is None:
        enum = _ENUMERATIONS[max_degree] = TargetEnumeration(max_degree)
    return enum.polynomial(index)


# ---------------------------------------------------------------------------
# configuration and plan containers


@dataclass
class BuilderConfig:
    """Knobs shared by the builders; defaults match the shipped experiments."""

    max_degree: int = 8
    targets: tuple | None = None  # explicit Polynomial list overrides enumeration
    r_grid: tuple | None = None  # default standard_r_grid()
    r_build: float = 2.0  # circle radius for shadow control and verification
    budget_tighten: int = 8  # internal norm threshold = eps_k / this
    shadow_safety: int = 2  # shadow threshold = eps_k Phi(R) / this
    saturate_envelope: bool = True  # place filler monomials under the targets
    filler_base_degree: int = 4
    filler_cap_degree: int = 360
    filler_ratio: float = 1.75
    filler_sat: float = 0.35  # fillers fill the envelope up to this fraction
    block_width: int = 8  # B for the dyadic-residue schedule
    norm_budget: float = 1.0  # total weighted-norm budget for the schedule

    def grid(self):
        return self.r_grid if self.r_grid is not None else standard_r_grid()


@dataclass(frozen=True)
class ConstructionPlan:
    targets: tuple  # Polynomial per block
    indices: tuple  # enumeration index per block, or None for custom targets
    positions: tuple  # m_k
    budgets: tuple  # eps_k = 2^-k
    alpha: mpf
    trunc_degree: int
    r_build: float
    filler_degrees: tuple = ()
    filler_coeffs: tuple = ()

    def __post_init__(self):
        for k in range(1, len(self.positions)):
            gap = self.positions[k] - self.positions[k - 1]
            if gap <= max(poly_degree(self.targets[k - 1]), 0):
                raise ValueError(f"blocks {k} and {k + 1} overlap (gap {gap})")
        for m, q in zip(self.positions, self.targets):
            if m + max(poly_degree(q), 0) > self.trunc_degree:
                raise ValueError(f"block at {m} exceeds trunc_degree {self.trunc_degree}")


@dataclass(frozen=True)
class FhcSchedule:
    targets: tuple
    indices: tuple
    block_width: int
    m_0: int
    trunc_degree: int
    alpha: mpf
    p: object
    norm_budget: float

    def positions(self, j: int) -> tuple:
        """All placements of target j (1-based) inside the truncation."""
        B = self.block_width
        step = B * (1 << j)
        first = self.m_0 + B * (1 << (j - 1))
        last = self.trunc_degree - B
        return tuple(range(first, last + 1, step))

    def nominal_density(self, j: int) -> Fraction:
        return Fraction(1, self.block_width * (1 << j))

    def target_for(self, n: int):
        """Which target block starts at degree n, or None."""
        off = n - self.m_0
        if off <= 0 or off % self.block_width:
            return None
        k = off // self.block_width
        j = (k & -k).bit_length() - 1 + 1  # 2-adic valuation + 1
        return j if j <= len(self.targets) else None


# ---------------------------------------------------------------------------
# weighted-norm machinery (upper bounds via coefficient sums)


def _phi_at(env: RateEnvelope, w: DunklWeights, r) -> mpf:
    return env(r) * mpmath.exp(r) / r ** (w.alpha + 1)


class _GridNorm:
    """Grid evaluation of sup_r [sum_i |c_i| r^{n_i}] r^a / (env(r) e^r)."""

    def __init__(self, w: DunklWeights, env: RateEnvelope, a, r_grid):
        self.w = w
        self.a = mpf(a)
        self.r_grid = tuple(mpf(r) for r in r_grid)
        self.ln_r = [mpmath.ln(r) for r in self.r_grid]
        # log of r^a / (env(r) e^r) per grid point
        self.penalty = [
            self.a * lr - mpmath.ln(env(r)) - r
            for r, lr in zip(self.r_grid, self.ln_r)
        ]

    def block_norm_ub(self, poly: Polynomial, m: int) -> mpf:
        """Upper bound for the weighted norm of S^m poly over the grid."""
        if poly_is_zero(poly):
            return mpf(0)
        logc = [
            (m + i, mpmath.ln(abs(mpf(c.numerator)) / c.denominator)
             + self.w.log_weight(i) - self.w.log_weight(m + i))
            for i, c in enumerate(poly)
            if c != 0
        ]
        best = mpf("-inf")
        for lr, pen in zip(self.ln_r, self.penalty):
            terms = [mpmath.exp(lc + deg * lr) for deg, lc in logc]
            v = mpmath.ln(mpmath.fsum(terms)) + pen
            if v > best:
                best = v
        return mpmath.exp(best)


def _shadow_ub(poly: Polynomial, gap: int, w: DunklWeights, r) -> mpf:
    """Coefficient-sum bound for sup_{|z|=r} |S^gap poly|."""
    r = mpf(r)
    total = mpf(0)
    for i, c in enumerate(poly):
        if c != 0:
            total += (abs(mpf(c.numerator)) / c.denominator) * mpmath.exp(
                w.log_weight(i) - w.log_weight(i + gap)
            ) * r ** (i + gap)
    return total


def _calibrate_fillers(w: DunklWeights, env: RateEnvelope, cfg: BuilderConfig):
    """Degrees and coefficients of the envelope-saturating filler ladder.

    Walking a geometric ramp of degrees from the cap down, each coefficient
    gamma is the largest value keeping the running total of
    sum_j gamma_j r^{P_j + alpha + 1}/e^r at or below filler_sat * env(r)
    at every point where the new mode carries at least 1% of its peak (the
    grid is augmented with the analytic peak radii P + alpha + 1, so
    calibration does not depend on grid alignment).  Placing large degrees
    first matters: a mode's right tail at the next ramp radius down is
    negligible, so every ramp entry gets to drive the total up to the scaled
    envelope near its own peak before its small-degree neighbours are sized;
    the significance cutoff keeps an already-touched point far from the new
    peak from zeroing the new coefficient.  The total therefore touches
    filler_sat * env near every surviving ramp radius and exceeds it nowhere
    by more than about 1%, which is what makes the windowed growth constant
    climb with env across radius windows.
    """
    ramp = []
    P = cfg.filler_cap_degree
    while P >= cfg.filler_base_degree:
        ramp.append(P)
        nxt = math.floor(P / cfg.filler_ratio)
        P = nxt if nxt < P else P - 1
    points = sorted(set(float(r) for r in cfg.grid())
                    | {float(P + w.alpha + 1) for P in ramp})
    points = [mpf(repr(r)) for r in points]
    cap = [mpf(cfg.filler_sat) * env(r) for r in points]
    running = [mpf(0)] * len(points)
    significance = mpf("0.01")
    placed = []
    for P in ramp:
        exponent = P + w.alpha + 1
        mode = [mpmath.exp(exponent * mpmath.ln(r) - r) for r in points]
        peak = max(mode)
        gamma = None
        for mv, cv, rv in zip(mode, cap, running):
            if mv < peak * significance:
                continue  # the new mode is immaterial this far from its peak
            room = (cv - rv) / mv
            if gamma is None or room < gamma:
                gamma = room
        if gamma is None or gamma <= 0:
            continue
        placed.append((P, gamma))
        running = [rv + gamma * mv for rv, mv in zip(running, mode)]
    placed.sort()
    return tuple(P for P, _ in placed), tuple(g for _, g in placed)


# ---------------------------------------------------------------------------
# hypercyclic builder and verification


def build_hypercyclic(
    w: DunklWeights,
    env: RateEnvelope,
    K: int,
    cfg: BuilderConfig | None = None,
    trunc_degree: int = 4096,
):
    """f = sum_k S^{m_k} Q_k meeting per-block budgets eps_k = 2^-k.

    Returns (TruncatedSeries, ConstructionPlan).  Raises
    InfeasibleConstruction (with the largest achievable K attached) when the
    truncation order is exhausted first.
    """
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    cfg = cfg or BuilderConfig()
    if env.kind != "to_infinity":
        raise ValueError(f"builder needs a to_infinity envelope, got {env.kind}")
    env.validate_on(cfg.grid())
    if cfg.targets is not None:
        targets = tuple(poly_normalize(t) for t in cfg.targets)
        indices = tuple([None] * len(targets))
        if len(targets) != K:
            raise ValueError(f"cfg.targets has {len(targets)} entries, K={K}")
    else:
        targets = tuple(enumerate_targets(k, cfg) for k in range(1, K + 1))
        indices = tuple(range(1, K + 1))
    if any(poly_degree(q) > cfg.max_degree for q in targets):
        raise ValueError(f"targets must have degree <= {cfg.max_degree}")
    if w.n_max < trunc_degree:
        raise ValueError(f"weight table n_max={w.n_max} < trunc_degree={trunc_degree}")

    if cfg.saturate_envelope:
        filler_degrees, filler_coeffs = _calibrate_fillers(w, env, cfg)
    else:
        filler_degrees, filler_coeffs = (), ()

    norm = _GridNorm(w, env, w.alpha + 1, cfg.grid())
    r_build = mpf(cfg.r_build)
    phi_R = _phi_at(env, w, r_build)

    positions = []
    budgets = []
    floor = max(filler_degrees) if filler_degrees else 0
    for k in range(1, K + 1):
        q = targets[k - 1]
        eps = mpf(2) ** (-k)
        budgets.append(eps)
        lo = floor + 1
        if positions:
            lo = max(lo, positions[-1] + max(poly_degree(targets[k - 2]), 0) + 1)
        if poly_is_zero(q):
            m = lo
            if m > trunc_degree:
                raise InfeasibleConstruction(
                    f"truncation {trunc_degree} exhausted at block {k}", achieved=k - 1
                )
            positions.append(m)
            continue
        threshold = eps / cfg.budget_tighten
        shadow_cap = eps * phi_R / cfg.shadow_safety
        m = lo
        while True:
            if m + poly_degree(q) > trunc_degree:
                raise InfeasibleConstruction(
                    f"truncation {trunc_degree} exhausted at block {k} "
                    f"(searched from {lo})",
                    achieved=k - 1,
                )
            ok = norm.block_norm_ub(q, m) <= threshold
            if ok and positions:
                # nearest earlier block casts the largest shadow
                ok = _shadow_ub(q, m - positions[-1], w, r_build) <= shadow_cap
            if ok:
                break
            m += 1
        positions.append(m)

    coeffs: dict[int, mpc] = {}
    for P, gamma in zip(filler_degrees, filler_coeffs):
        coeffs[P] = mpc(gamma)
    for q, m in zip(targets, positions):
        for i, c in enumerate(q):
            if c != 0:
                coeffs[m + i] = mpc(
                    (mpf(c.numerator) / c.denominator)
                    * mpmath.exp(w.log_weight(i) - w.log_weight(m + i))
                )
    f = TruncatedSeries(coeffs, trunc_degree)
    plan = ConstructionPlan(
        targets,
        indices,
        tuple(positions),
        tuple(budgets),
        w.alpha,
        trunc_degree,
        float(cfg.r_build),
        filler_degrees,
        filler_coeffs,
    )
    return f, plan


@dataclass(frozen=True)
class OrbitHitReport:
    deltas: tuple
    budgets: tuple
    noise_floors: tuple
    passed: tuple
    r: mpf
    samples: int

    def all_passed(self) -> bool:
        return all(self.passed)


def verify_orbit_hits(
    f: TruncatedSeries,
    plan: ConstructionPlan,
    w: DunklWeights,
    R=None,
    m: int = 512,
    env: RateEnvelope | None = None,
) -> OrbitHitReport:
    """delta_k = sup |Lambda^{m_k} f - Q_k| on |z| = R against its tail budget.

    Budget_k = Phi(R) sum_{j>k} eps_j with Phi(R) = env(R) e^R / R^{alpha+1}.
    The last block's tail is empty, so its budget is zero; a rounding floor of
    a few units in the last place of |Q_k| on the circle is allowed on top of
    every budget, since block coefficients store d-ratios to finite precision
    and an exact zero residual is not representable.
    """
    env = env or RateEnvelope.log_growth()
    R = mpf(R) if R is not None else mpf(plan.r_build)
    phi_R = _phi_at(env, w, R)
    K = len(plan.targets)
    deltas = []
    budgets = []
    floors = []
    passed = []
    for k in range(1, K + 1):
        q = plan.targets[k - 1]
        m_k = plan.positions[k - 1]
        residual = apply_dunkl(f, w, m_k).add(poly_to_series(q, f.trunc_degree).scale(-1))
        delta = residual.sup_on_disk(R, m)
        budget = phi_R * mpmath.fsum(plan.budgets[k:]) if k < K else mpf(0)
        q_size = mpmath.fsum(
            (abs(mpf(c.numerator)) / c.denominator) * R**i for i, c in enumerate(q) if c
        )
        floor = (1 + q_size) * mpf(2) ** (40 - mp.prec)
        deltas.append(delta)
        budgets.append(budget)
        floors.append(floor)
        passed.append(delta <= budget + floor)
    return OrbitHitReport(
        tuple(deltas), tuple(budgets), tuple(floors), tuple(passed), R, m
    )


# ---------------------------------------------------------------------------
# frequently hypercyclic side


def _log_phi_grid(env: RateEnvelope, r_grid):
    return np.array([float(mpmath.ln(env(r))) for r in r_grid])


def _norm_factor_table(w: DunklWeights, env: RateEnvelope, a, r_grid, n_max: int):
    """g[nu] = max_r r^{nu+a} / (d_nu env(r) e^r) over the grid, as float64 logs.

    Shared kernel for tail norms and schedule budgeting: the weighted-norm
    upper bound of S^n y is sum_i |y_i| d_i g[n+i].
    """
    ln_r = np.array([float(mpmath.ln(r)) for r in r_grid])
    r_vals = np.array([float(r) for r in r_grid])
    pen = float(a) * ln_r - _log_phi_grid(env, r_grid) - r_vals
    logd = np.array([float(w.log_weight(n)) for n in range(n_max + 1)])
    nu = np.arange(n_max + 1)
    logs = nu[:, None] * ln_r[None, :] + pen[None, :] - logd[:, None]
    return np.max(logs, axis=1)


def _poly_weight_factors(poly: Polynomial, w: DunklWeights):
    return [
        (i, float(abs(mpf(c.numerator)) / c.denominator) * math.exp(float(w.log_weight(i))))
        for i, c in enumerate(poly)
        if c != 0
    ]


def fuc_tail_norms(
    poly: Polynomial,
    w: DunklWeights,
    p,
    env: RateEnvelope,
    N: int,
    trunc_degree: int = 4096,
) -> mpf:
    """Sum over n > N of the weighted-norm bound of S^n poly.

    The norm carries the frequent-hypercyclicity exponent a = rate_exponent
    (p, alpha, fhc_upper).  Summing norms dominates the norm of every finite
    subset of the tail by the triangle inequality, which is the quantity the
    unconditional-convergence condition needs; it is nonincreasing in N.  The
    sum stops at the truncation horizon, where the terms are far below any
    tolerance in use.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    poly = poly_normalize(poly)
    if poly_is_zero(poly):
        return mpf(0)
    a = rate_exponent(p, w.alpha, "fhc_upper")
    deg = poly_degree(poly)
    if w.n_max < trunc_degree:
        raise ValueError(f"weight table n_max={w.n_max} < trunc_degree={trunc_degree}")
    log_g = _norm_factor_table(w, env, a, standard_r_grid(), trunc_degree)
    g = np.where(log_g > -745.0, np.exp(np.maximum(log_g, -745.0)), 0.0)
    suffix = np.concatenate([np.cumsum(g[::-1])[::-1], [0.0]])
    total = 0.0
    last = trunc_degree - deg
    for i, fac in _poly_weight_factors(poly, w):
        lo = N + 1 + i
        hi = last + i + 1
        if lo < hi:
            total += fac * (suffix[lo] - suffix[hi])
    return mpf(total)


def build_frequently_hypercyclic(
    w: DunklWeights,
    p,
    env: RateEnvelope,
    J: int,
    cfg: BuilderConfig | None = None,
    trunc_degree: int = 4096,
):
    """f = sum_j sum_{n in A_j} S^n Q_j on the dyadic-residue schedule.

    Targets default to enumeration indices 2..J+1 (the zero polynomial is
    skipped; approximating zero needs no block at all).  m_0 is the smallest
    offset whose total weighted-norm bound over every scheduled block fits
    cfg.norm_budget.
    """
    if J < 1:
        raise ValueError(f"J must be >= 1, got {J}")
    cfg = cfg or BuilderConfig()
    if env.kind != "to_infinity":
        raise ValueError(f"builder needs a to_infinity envelope, got {env.kind}")
    env.validate_on(cfg.grid())
    if cfg.targets is not None:
        targets = tuple(poly_normalize(t) for t in cfg.targets)
        indices = tuple([None] * len(targets))
        if len(targets) != J:
            raise ValueError(f"cfg.targets has {len(targets)} entries, J={J}")
    else:
        targets = tuple(enumerate_targets(j + 1, cfg) for j in range(1, J + 1))
        indices = tuple(range(2, J + 2))
    B = cfg.block_width
    max_deg = max((poly_degree(q) for q in targets), default=-1)
    if B <= max_deg:
        raise InfeasibleConstruction(
            f"block width {B} must exceed the largest target degree {max_deg}"
        )
    if w.n_max < trunc_degree:
        raise ValueError(f"weight table n_max={w.n_max} < trunc_degree={trunc_degree}")

    a = rate_exponent(p, w.alpha, "fhc_upper")
    grid = cfg.grid()
    log_g = _norm_factor_table(w, env, a, grid, trunc_degree)
    g = np.where(log_g > -745.0, np.exp(np.maximum(log_g, -745.0)), 0.0)
    factors = [_poly_weight_factors(q, w) for q in targets]

    def total_norm(m_0: int) -> float:
        total = 0.0
        for j in range(1, len(targets) + 1):
            step = B * (1 << j)
            first = m_0 + B * (1 << (j - 1))
            ns = np.arange(first, trunc_degree - B + 1, step)
            if ns.size == 0:
                continue
            for i, fac in factors[j - 1]:
                total += fac * float(np.sum(g[ns + i]))
        return total

    budget = float(cfg.norm_budget)
    hi = trunc_degree - 2 * B * (1 << len(targets))
    if hi < 1 or total_norm(hi) > budget:
        raise InfeasibleConstruction(
            f"norm budget {budget} unreachable within trunc_degree {trunc_degree}"
        )
    lo = 1
    if total_norm(lo) > budget:
        while hi - lo > 1:  # smallest feasible m_0 by bisection (monotone)
            mid = (lo + hi) // 2
            if total_norm(mid) <= budget:
                hi = mid
            else:
                lo = mid
        m_0 = hi
    else:
        m_0 = 1

    schedule = FhcSchedule(
        targets, indices, B, m_0, trunc_degree, w.alpha, p, float(cfg.norm_budget)
    )
    coeffs: dict[int, mpc] = {}
    for j in range(1, len(targets) + 1):
        q = targets[j - 1]
        for n in schedule.positions(j):
            for i, c in enumerate(q):
                if c != 0:
                    key = n + i
                    if key in coeffs:
                        raise AssertionError("dyadic schedule produced an overlap")
                    coeffs[key] = mpc(
                        (mpf(c.numerator) / c.denominator)
                        * mpmath.exp(w.log_weight(i) - w.log_weight(key))
                    )
    return TruncatedSeries(coeffs, trunc_degree), schedule


@dataclass(frozen=True)
class FrequencyReport:
    densities: tuple  # empirical per target
    nominal: tuple
    counts: tuple
    n_window: int
    eps: float
    r: float
    samples: int


def frequency_report(
    f: TruncatedSeries,
    schedule: FhcSchedule,
    w: DunklWeights,
    N_window: int,
    eps,
    R,
    m: int = 64,
) -> FrequencyReport:
    """Per-target fraction of n <= N_window with sup |Lambda^n f - Q_j| < eps.

    The sup is over m uniform samples of the circle |z| = R, evaluated for
    all n at once in scaled float64 (hits and misses here are separated by
    orders of magnitude, far above the float noise floor; the unit tests
    cross-check single rows against the working-precision route).
    """
    if N_window > schedule.trunc_degree - schedule.block_width:
        raise ValueError(
            f"N_window {N_window} exceeds trunc_degree - B = "
            f"{schedule.trunc_degree - schedule.block_width}"
        )
    width = f.trunc_degree + 1
    if width * math.log(max(float(R), 1.0)) > 700.0:
        raise ValueError(
            f"R={R} with trunc_degree={f.trunc_degree} overflows the float64 "
            "sampling path; reduce R or the truncation"
        )
    entries = list(f.items())
    is_real = all(mpmath.im(c) == 0 for _, c in entries)
    mat = np.zeros((N_window + 1, width), dtype=np.float64 if is_real else np.complex128)
    logd = np.array([float(w.log_weight(n)) for n in range(f.trunc_degree + 1)])
    for s, c in entries:
        mag = mpmath.ln(abs(c))
        n_hi = min(N_window, s)
        rows = np.arange(1, n_hi + 1)
        if rows.size == 0:
            continue
        logs = float(mag + w.log_weight(s)) - logd[s - rows]
        vals = np.where(logs > -745.0, np.exp(np.maximum(logs, -745.0)), 0.0)
        if is_real:
            phase = 1.0 if mpmath.re(c) >= 0 else -1.0
        else:
            phase = complex(c / abs(c))
        mat[rows, s - rows] = phase * vals
    angles = 2.0 * np.pi * np.arange(m) / m
    zs = float(R) * np.exp(1j * angles)
    powers = zs[None, :] ** np.arange(width)[:, None]  # width x m
    if is_real:  # two real matmuls instead of promoting mat to complex
        samples = (mat @ powers.real) + 1j * (mat @ powers.imag)
    else:
        samples = mat @ powers
    densities = []
    counts = []
    nominal = []
    for j in range(1, len(schedule.targets) + 1):
        q = schedule.targets[j - 1]
        tvals = np.zeros(m, dtype=np.complex128)
        for i, c in enumerate(q):
            tvals += float(c) * zs**i
        sup = np.max(np.abs(samples[1:] - tvals[None, :]), axis=1)
        hits = int(np.sum(sup < float(eps)))
        counts.append(hits)
        densities.append(hits / N_window)
        nominal.append(float(schedule.nominal_density(j)))
    return FrequencyReport(
        tuple(densities), tuple(nominal), tuple(counts), N_window, float(eps), float(R), m
    )


@dataclass(frozen=True)
class DensityDecayReport:
    sigma: tuple  # sigma_m, m = 1..M
    event_density: tuple  # #{n <= m : |c_n| d_n > 1} / m
    bound_holds: bool  # event density <= sigma pointwise

    def final_sigma(self) -> mpf:
        return self.sigma[-1]


def density_decay_check(f: TruncatedSeries, w: DunklWeights, q, M: int) -> DensityDecayReport:
    """sigma_m = (1/m) sum_{n<=m} (|c_n| d_n)^q next to the orbit-event density.

    Each orbit event |c_n d_n| > 1 contributes more than one to the sum, so
    the event density can never exceed sigma_m; vanishing sigma therefore
    forces the event density to vanish, the obstruction that rules out
    frequent hypercyclicity below the critical rate.
    """
    q = mpf(q)
    if not 1 <= q <= 2:
        raise ValueError(f"q must lie in [1, 2], got {q}")
    if M > f.trunc_degree:
        raise ValueError(f"M={M} exceeds trunc_degree {f.trunc_degree}")
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    sigma = []
    events = []
    running = mpf(0)
    event_count = 0
    coeffs = dict(f.items())
    for n in range(1, M + 1):
        c = coeffs.get(n)
        if c is not None:
            v = mpmath.exp(mpmath.ln(abs(c)) + w.log_weight(n))
            running += v**q
            if v > 1:
                event_count += 1
        sigma.append(running / n)
        events.append(mpf(event_count) / n)
    holds = all(e <= s + mpf(2) ** (24 - mp.prec) for e, s in zip(events, sigma))
    return DensityDecayReport(tuple(sigma), tuple(events), holds)


# ---------------------------------------------------------------------------
# plan serialization (dunklplan v1)


def write_plan(plan, path, precision_bits=None) -> None:
    """Serialize a ConstructionPlan or FhcSchedule as dunklplan v1 text."""
    bits = precision_bits if precision_bits is not None else mp.prec
    lines = ["dunklplan v1"]
    if isinstance(plan, ConstructionPlan):
        lines.append("kind=hc")
        lines.append(f"alpha={to_decimal(plan.alpha)}")
        lines.append(f"precision_bits={bits}")
        lines.append(f"trunc_degree={plan.trunc_degree}")
        lines.append(f"r_build={plan.r_build!r}")
        lines.append(f"n_targets={len(plan.targets)}")
        for q, idx, m_k, eps in zip(plan.targets, plan.indices, plan.positions, plan.budgets):
            head = f"target {idx if idx is not None else -1} {m_k} {to_decimal(eps)}"
            body = " ".join(str(c) for c in q)
            lines.append(head + (" " + body if body else ""))
        lines.append(f"n_fillers={len(plan.filler_degrees)}")
        for P, gamma in zip(plan.filler_degrees, plan.filler_coeffs):
            lines.append(f"filler {P} {to_decimal(gamma)}")
    elif isinstance(plan, FhcSchedule):
        lines.append("kind=fhc")
        lines.append(f"alpha={to_decimal(plan.alpha)}")
        lines.append(f"precision_bits={bits}")
        lines.append(f"trunc_degree={plan.trunc_degree}")
        lines.append(f"block_width={plan.block_width}")
        lines.append(f"m_0={plan.m_0}")
        lines.append(f"p={'inf' if plan.p == mpmath.inf else to_decimal(mpf(plan.p))}")
        lines.append(f"norm_budget={plan.norm_budget!r}")
        lines.append(f"n_targets={len(plan.targets)}")
        for q, idx in zip(plan.targets, plan.indices):
            head = f"target {idx if idx is not None else -1}"
            body = " ".join(str(c) for c in q)
            lines.append(head + (" " + body if body else ""))
    else:
        raise TypeError(f"cannot serialize {type(plan).__name__}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _parse_header(lines, keys):
    out = {}
    for key in keys:
        line = lines.pop(0)
        name, _, value = line.partition("=")
        if name != key:
            raise ValueError(f"plan header: expected {key}=..., got {line!r}")
        out[key] = value
    return out


def read_plan(path):
    """Read a dunklplan v1 file back into its plan object."""
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
    if not lines or lines.pop(0) != "dunklplan v1":
        raise ValueError(f"{path}: not a dunklplan v1 file")
    kind_line = lines.pop(0)
    if not kind_line.startswith("kind="):
        raise ValueError(f"{path}: missing kind= line")
    kind = kind_line[5:]

    if kind == "hc":
        head = _parse_header(
            lines, ["alpha", "precision_bits", "trunc_degree", "r_build", "n_targets"]
        )
        with mp.workprec(int(head["precision_bits"])):
            alpha = from_decimal(head["alpha"])
            n_targets = int(head["n_targets"])
            targets, indices, positions, budgets = [], [], [], []
            for _ in range(n_targets):
                parts = lines.pop(0).split()
                if parts[0] != "target":
                    raise ValueError(f"{path}: expected target line")
                idx = int(parts[1])
                indices.append(None if idx < 0 else idx)
                positions.append(int(parts[2]))
                budgets.append(from_decimal(parts[3]))
                targets.append(poly_normalize([Fraction(s) for s in parts[4:]]))
            nf_line = lines.pop(0)
            if not nf_line.startswith("n_fillers="):
                raise ValueError(f"{path}: missing n_fillers=")
            fd, fc = [], []
            for _ in range(int(nf_line.split("=")[1])):
                parts = lines.pop(0).split()
                if parts[0] != "filler":
                    raise ValueError(f"{path}: expected filler line")
                fd.append(int(parts[1]))
                fc.append(from_decimal(parts[2]))
            return ConstructionPlan(
                tuple(targets),
                tuple(indices),
                tuple(positions),
                tuple(budgets),
                alpha,
                int(head["trunc_degree"]),
                float(head["r_build"]),
                tuple(fd),
                tuple(fc),
            )
    if kind == "fhc":
        head = _parse_header(
            lines,
            [
                "alpha",
                "precision_bits",
                "trunc_degree",
                "block_width",
                "m_0",
                "p",
                "norm_budget",
                "n_targets",
            ],
        )
        with mp.workprec(int(head["precision_bits"])):
            alpha = from_decimal(head["alpha"])
            p = mpmath.inf if head["p"] == "inf" else from_decimal(head["p"])
            targets, indices = [], []
            for _ in range(int(head["n_targets"])):
                parts = lines.pop(0).split()
                if parts[0] != "target":
                    raise ValueError(f"{path}: expected target line")
                idx = int(parts[1])
                indices.append(None if idx < 0 else idx)
                targets.append(poly_normalize([Fraction(s) for s in parts[2:]]))
            return FhcSchedule(
                tuple(targets),
                tuple(indices),
                int(head["block_width"]),
                int(head["m_0"]),
                int(head["trunc_degree"]),
                alpha,
                p,
                float(head["norm_budget"]),
            )
    raise ValueError(f"{path}: unknown plan kind {kind!r}")
