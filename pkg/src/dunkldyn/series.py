"""Truncated power series with complex coefficients at ambient precision.

A series is an immutable coefficient table c_0..c_N (N = trunc_degree) standing
in for an entire function's Taylor expansion at 0.  Only linear structure is
provided (add/scale/evaluate); series products are out of scope.

File format ``dunklseries v1``::

    dunklseries v1
    alpha=<decimal>
    precision_bits=<int>
    n_coeffs=<int>
    <n> <re-decimal> <im-decimal>     (n_coeffs lines, n strictly increasing)

Coefficient lines are sparse (zeros omitted), except that the final line always
carries n = trunc_degree so the truncation order survives the round trip.
Decimals are written with enough digits to reparse to the exact binary value.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator

import mpmath
from mpmath import mp, mpf, mpc

from .numeric import from_decimal, get_precision, precision, to_decimal

DEFAULT_TRUNC_DEGREE = 4096


class TruncatedSeries:
    """Coefficients c_0..c_N; immutable; all arithmetic at ambient precision."""

    __slots__ = ("_coeffs", "_trunc_degree")

    def __init__(self, coeffs: dict[int, mpc] | Iterable, trunc_degree: int = DEFAULT_TRUNC_DEGREE):
        if trunc_degree < 0:
            raise ValueError(f"trunc_degree must be >= 0, got {trunc_degree}")
        table: dict[int, mpc] = {}
        if isinstance(coeffs, dict):
            items = coeffs.items()
        else:
            items = enumerate(coeffs)
        for n, c in items:
            n = int(n)
            if n < 0 or n > trunc_degree:
                raise ValueError(f"coefficient index {n} outside [0, {trunc_degree}]")
            c = mpc(c)
            if c != 0:
                table[n] = c
        self._coeffs = table
        self._trunc_degree = int(trunc_degree)

    @classmethod
    def zero(cls, trunc_degree: int = DEFAULT_TRUNC_DEGREE) -> "TruncatedSeries":
        return cls({}, trunc_degree)

    @classmethod
    def monomial(cls, k: int, c=1, trunc_degree: int = DEFAULT_TRUNC_DEGREE) -> "TruncatedSeries":
        if k > trunc_degree:
            raise ValueError(f"monomial degree {k} exceeds trunc_degree {trunc_degree}")
        return cls({k: mpc(c)}, trunc_degree)

    @property
    def trunc_degree(self) -> int:
        return self._trunc_degree

    def coeff(self, n: int) -> mpc:
        return self._coeffs.get(n, mpc(0))

    def items(self) -> Iterator[tuple[int, mpc]]:
        """Nonzero (n, c_n) pairs in increasing n."""
        return iter(sorted(self._coeffs.items()))

    def n_nonzero(self) -> int:
        return len(self._coeffs)

    def degree(self) -> int:
        """Largest n with c_n != 0, or -1 for the zero series."""
        return max(self._coeffs) if self._coeffs else -1

    def is_zero(self) -> bool:
        return not self._coeffs

    def add(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if other.trunc_degree != self.trunc_degree:
            raise ValueError(
                f"trunc_degree mismatch: {self.trunc_degree} vs {other.trunc_degree}"
            )
        table = dict(self._coeffs)
        for n, c in other._coeffs.items():
            table[n] = table.get(n, mpc(0)) + c
        return TruncatedSeries(table, self.trunc_degree)

    def scale(self, c) -> "TruncatedSeries":
        c = mpc(c)
        return TruncatedSeries({n: v * c for n, v in self._coeffs.items()}, self.trunc_degree)

    def evaluate(self, z) -> mpc:
        """Horner evaluation over the dense range 0..degree."""
        z = mpc(z)
        d = self.degree()
        if d < 0:
            return mpc(0)
        acc = mpc(0)
        for n in range(d, -1, -1):
            acc = acc * z
            c = self._coeffs.get(n)
            if c is not None:
                acc += c
        return acc

    def evaluate_circle(self, r, m: int) -> list[mpc]:
        """Values f(r e^(2 pi i j / m)) for j = 0..m-1.

        Computed per nonzero coefficient with an incremental rotation, so the
        cost is (number of nonzero coefficients) x m regardless of degree.
        """
        if m < 1:
            raise ValueError(f"m must be >= 1, got {m}")
        r = mpf(r)
        vals = [mpc(0)] * m
        if not self._coeffs:
            return vals
        omega = mpmath.exp(2j * mp.pi / m)
        for n, c in self._coeffs.items():
            cur = c * r**n
            step = omega**n
            for j in range(m):
                vals[j] += cur
                cur *= step
        return vals

    def sup_on_disk(self, r, m: int) -> mpf:
        """max_j |f(r e^(2 pi i j/m))| over m circle samples.

        Coefficients whose contribution |c_n| r^n sits more than prec+48 bits
        below the largest are skipped; with m > degree the sampled maximum
        dominates max_n |c_n| r^n, so the skipped mass is far below the
        returned value's rounding error.
        """
        r = mpf(r)
        if not self._coeffs or r < 0:
            return mpf(0)
        if r == 0:
            return abs(self.coeff(0))
        logs = {n: mpmath.ln(abs(c)) + n * mpmath.ln(r) for n, c in self._coeffs.items()}
        top = max(logs.values())
        cut = top - (get_precision() + 48) * mpmath.ln(2)
        kept = {n: self._coeffs[n] for n, lv in logs.items() if lv >= cut}
        pruned = TruncatedSeries(kept, self.trunc_degree) if len(kept) < len(logs) else self
        return max(abs(v) for v in pruned.evaluate_circle(r, m))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedSeries)
            and self._trunc_degree == other._trunc_degree
            and self._coeffs == other._coeffs
        )

    def __hash__(self):
        return hash((self._trunc_degree, tuple(sorted((n, str(c)) for n, c in self._coeffs.items()))))

    def __repr__(self) -> str:
        d = self.degree()
        return f"TruncatedSeries(degree={d}, nonzero={len(self._coeffs)}, trunc={self._trunc_degree})"


def exp_truncation(n_terms: int, trunc_degree: int = DEFAULT_TRUNC_DEGREE) -> TruncatedSeries:
    """Truncation of e^z to degree n_terms (handy test subject)."""
    table = {}
    c = mpf(1)
    for n in range(n_terms + 1):
        table[n] = mpc(c)
        c = c / (n + 1)
    return TruncatedSeries(table, trunc_degree)


def write_series(f: TruncatedSeries, path: str, alpha, precision_bits: int | None = None) -> None:
    if precision_bits is None:
        precision_bits = get_precision()
    lines = ["dunklseries v1"]
    lines.append(f"alpha={to_decimal(mpf(alpha))}")
    lines.append(f"precision_bits={precision_bits}")
    rows = []
    for n, c in f.items():
        if n == f.trunc_degree:
            continue
        rows.append(f"{n} {to_decimal(c.real)} {to_decimal(c.imag)}")
    top = f.coeff(f.trunc_degree)
    rows.append(f"{f.trunc_degree} {to_decimal(top.real)} {to_decimal(top.imag)}")
    lines.append(f"n_coeffs={len(rows)}")
    lines.extend(rows)
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_series(path: str) -> tuple[TruncatedSeries, mpf, int]:
    """Read a ``dunklseries v1`` file; returns (series, alpha, precision_bits).

    Decimals are parsed at the precision recorded in the header so values
    round-trip exactly; the returned objects keep that precision.
    """
    with open(path) as fh:
        raw = [line.rstrip("\n") for line in fh]
    if not raw or raw[0].strip() != "dunklseries v1":
        raise ValueError(f"{path}: not a dunklseries v1 file")

    def header(idx: int, key: str) -> str:
        if idx >= len(raw) or not raw[idx].startswith(key + "="):
            raise ValueError(f"{path}: expected '{key}=' on line {idx + 1}")
        return raw[idx].split("=", 1)[1]

    bits = int(header(2, "precision_bits"))
    n_coeffs = int(header(3, "n_coeffs"))
    body = [line for line in raw[4:] if line.strip()]
    if len(body) != n_coeffs:
        raise ValueError(f"{path}: n_coeffs={n_coeffs} but {len(body)} coefficient lines")
    with precision(bits):
        alpha = from_decimal(header(1, "alpha"))
        table: dict[int, mpc] = {}
        last_n = -1
        for line in body:
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"{path}: bad coefficient line {line!r}")
            n = int(parts[0])
            if n <= last_n:
                raise ValueError(f"{path}: coefficient indices must increase")
            last_n = n
            table[n] = mpc(from_decimal(parts[1]), from_decimal(parts[2]))
        series = TruncatedSeries(table, trunc_degree=last_n)
    return series, alpha, bits
