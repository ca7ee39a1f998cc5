"""Exact truncated power series for boundary-map generating functions.

``B(x, y)`` counts rooted maps with a boundary by edges (``x``) and boundary
length (``y``); ``S(x, z)`` counts those whose boundary is simple.  ``B``
solves the functional equation

    B = 1 + y^2 x B^2 + x y / (1 - y) * (B(x, 1) - y B),

and ``S`` is tied to ``B`` through the substitution ``S(x, yB(x,y)) =
B(x,y)``: hanging a general map with a boundary from the tail of each
boundary edge of a simple-boundary map recovers all maps with a boundary.
``S`` is computed here both from the closed radical form and by inverting
the substitution; the two constructions must agree coefficientwise.

All arithmetic is exact over the rationals and never reads beyond the
declared truncation orders.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .errors import InternalMismatch, NonIntegral

Coeffs = dict[tuple[int, int], Fraction]


class TruncatedSeries2:
    """Bivariate power series truncated at orders ``(nx, ny)``.

    Coefficients are exact :class:`~fractions.Fraction` values; only
    nonzero entries are stored.  All operations truncate their result to
    the common orders of the operands.
    """

    __slots__ = ("nx", "ny", "coeffs")

    def __init__(self, nx: int, ny: int, coeffs: Coeffs | None = None):
        if nx < 0 or ny < 0:
            raise ValueError("truncation orders must be nonnegative")
        self.nx = nx
        self.ny = ny
        data: Coeffs = {}
        if coeffs:
            for (i, j), c in coeffs.items():
                if i <= nx and j <= ny:
                    c = Fraction(c)
                    if c:
                        data[i, j] = c
        self.coeffs = data

    # -- construction -----------------------------------------------------

    @classmethod
    def constant(cls, value, nx: int, ny: int) -> "TruncatedSeries2":
        return cls(nx, ny, {(0, 0): Fraction(value)})

    @classmethod
    def variable(cls, which: str, nx: int, ny: int) -> "TruncatedSeries2":
        if which == "x":
            return cls(nx, ny, {(1, 0): Fraction(1)})
        if which == "y":
            return cls(nx, ny, {(0, 1): Fraction(1)})
        raise ValueError(f"unknown variable {which!r}")

    # -- basics ------------------------------------------------------------

    def coeff(self, i: int, j: int) -> Fraction:
        return self.coeffs.get((i, j), Fraction(0))

    def __eq__(self, other) -> bool:
        return (isinstance(other, TruncatedSeries2)
                and self.nx == other.nx and self.ny == other.ny
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.nx, self.ny, frozenset(self.coeffs.items())))

    def __repr__(self) -> str:
        terms = ", ".join(f"x^{i} y^{j}: {c}" for (i, j), c
                          in sorted(self.coeffs.items()))
        return f"TruncatedSeries2({self.nx}, {self.ny}, {{{terms}}})"

    def truncate(self, nx: int, ny: int) -> "TruncatedSeries2":
        return TruncatedSeries2(nx, ny, self.coeffs)

    def _orders_with(self, other: "TruncatedSeries2") -> tuple[int, int]:
        return min(self.nx, other.nx), min(self.ny, other.ny)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other) -> "TruncatedSeries2":
        if not isinstance(other, TruncatedSeries2):
            other = TruncatedSeries2.constant(other, self.nx, self.ny)
        nx, ny = self._orders_with(other)
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out.get(key, Fraction(0)) + c
        return TruncatedSeries2(nx, ny, out)

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries2":
        return TruncatedSeries2(self.nx, self.ny,
                                {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other) -> "TruncatedSeries2":
        if not isinstance(other, TruncatedSeries2):
            other = TruncatedSeries2.constant(other, self.nx, self.ny)
        return self + (-other)

    def __rsub__(self, other) -> "TruncatedSeries2":
        return (-self) + other

    def __mul__(self, other) -> "TruncatedSeries2":
        if not isinstance(other, TruncatedSeries2):
            c = Fraction(other)
            return TruncatedSeries2(self.nx, self.ny,
                                    {k: v * c for k, v in self.coeffs.items()})
        nx, ny = self._orders_with(other)
        out: Coeffs = {}
        for (i1, j1), c1 in self.coeffs.items():
            if i1 > nx or j1 > ny:
                continue
            for (i2, j2), c2 in other.coeffs.items():
                i, j = i1 + i2, j1 + j2
                if i <= nx and j <= ny:
                    out[i, j] = out.get((i, j), Fraction(0)) + c1 * c2
        return TruncatedSeries2(nx, ny, out)

    __rmul__ = __mul__

    def shift_x(self, k: int) -> "TruncatedSeries2":
        """Multiply by ``x**k``; negative ``k`` divides, requiring every
        term to have x-degree at least ``-k``."""
        out: Coeffs = {}
        for (i, j), c in self.coeffs.items():
            if i + k < 0:
                raise NonIntegral("series is not divisible by that power of x")
            out[i + k, j] = c
        return TruncatedSeries2(self.nx + k, self.ny, out)

    def reciprocal(self) -> "TruncatedSeries2":
        """Multiplicative inverse; the constant term must be nonzero."""
        c0 = self.coeff(0, 0)
        if not c0:
            raise ZeroDivisionError("series has no constant term")
        inv = TruncatedSeries2.constant(1 / c0, self.nx, self.ny)
        order = 1
        # Newton iteration R <- R (2 - A R) doubles the correct total degree.
        while order <= self.nx + self.ny:
            inv = inv * (2 - self * inv)
            order *= 2
        return inv

    def __truediv__(self, other) -> "TruncatedSeries2":
        if isinstance(other, TruncatedSeries2):
            return self * other.reciprocal()
        return self * (1 / Fraction(other))

    def sqrt(self) -> "TruncatedSeries2":
        """Square root of a series with constant term 1."""
        if self.coeff(0, 0) != 1:
            raise NonIntegral("square root needs constant term 1")
        root = TruncatedSeries2.constant(1, self.nx, self.ny)
        order = 1
        # Newton iteration R <- (R + A / R) / 2 doubles the correct degree.
        while order <= self.nx + self.ny:
            root = (root + self * root.reciprocal()) * Fraction(1, 2)
            order *= 2
        return root

    def substitute(self, xs: "TruncatedSeries2",
                   ys: "TruncatedSeries2") -> "TruncatedSeries2":
        """Evaluate at ``x = xs``, ``y = ys``.

        Substituted series must have zero constant term so the result stays
        a well-defined truncated series.
        """
        for s, name in ((xs, "x"), (ys, "y")):
            if s.coeff(0, 0):
                raise NonIntegral(f"substitution for {name} must have no "
                                  "constant term")
        nx, ny = xs._orders_with(ys)
        one = TruncatedSeries2.constant(1, nx, ny)
        xpow = [one]
        for _ in range(self.nx):
            xpow.append(xpow[-1] * xs)
        ypow = [one]
        for _ in range(self.ny):
            ypow.append(ypow[-1] * ys)
        out = TruncatedSeries2(nx, ny)
        for (i, j), c in sorted(self.coeffs.items()):
            out = out + xpow[i] * ypow[j] * c
        return out

    def eval_y_one(self) -> "TruncatedSeries2":
        """Sum over all y powers, giving a series in x alone (ny = 0)."""
        out: Coeffs = {}
        for (i, _), c in self.coeffs.items():
            out[i, 0] = out.get((i, 0), Fraction(0)) + c
        return TruncatedSeries2(self.nx, 0, out)

    def integer_coefficients(self) -> dict[tuple[int, int], int]:
        """Coefficients as integers; raises NonIntegral on a fractional one."""
        out = {}
        for key, c in sorted(self.coeffs.items()):
            if c.denominator != 1:
                raise NonIntegral(f"coefficient at {key} is {c}")
            out[key] = int(c)
        return out


def _geometric_y(nx: int, ny: int) -> TruncatedSeries2:
    """1 / (1 - y) as the truncated geometric series."""
    return TruncatedSeries2(nx, ny, {(0, j): Fraction(1)
                                     for j in range(ny + 1)})


def series_B(nx: int, ny: int) -> TruncatedSeries2:
    """Maps with a boundary: coefficient of x^e y^p counts rooted maps with
    e edges whose root face has degree p.

    Solves B = 1 + y^2 x B^2 + x y/(1-y) (B(x,1) - y B) by fixed-point
    iteration in powers of x.  A map with e edges has boundary length at
    most 2e, so the iteration runs at y-order max(ny, 2 nx) to make the
    y = 1 specialization exact before truncating back.
    """
    ny_int = max(ny, 2 * nx)
    x = TruncatedSeries2.variable("x", nx, ny_int)
    y = TruncatedSeries2.variable("y", nx, ny_int)
    geom = _geometric_y(nx, ny_int)
    b = TruncatedSeries2.constant(1, nx, ny_int)
    for _ in range(nx + 1):
        b1 = b.eval_y_one().truncate(nx, ny_int)
        b = 1 + y * y * x * b * b + x * y * geom * (b1 - y * b)
    return b.truncate(nx, ny)


def series_B1(nx: int) -> TruncatedSeries2:
    """B(x, 1): all rooted maps by edge count, as a series in x (ny = 0).

    Coefficient of x^e is 2 * 3^e / ((e+1)(e+2)) * binom(2e, e).
    """
    coeffs = {(e, 0): Fraction(2 * 3 ** e * comb(2 * e, e),
                               (e + 1) * (e + 2))
              for e in range(nx + 1)}
    return TruncatedSeries2(nx, 0, coeffs)


def series_B1_radical(nx: int) -> TruncatedSeries2:
    """B(x, 1) from the closed form -(1 - 18x - (1-12x)^{3/2}) / (54 x^2)."""
    pad = nx + 2
    x = TruncatedSeries2.variable("x", pad, 0)
    base = 1 - 12 * x
    num = -(1 - 18 * x - base * base.sqrt())
    return (num / 54).shift_x(-2).truncate(nx, 0)


def _series_S_radical(nx: int, nz: int) -> TruncatedSeries2:
    pad = nx + 1
    x = TruncatedSeries2.variable("x", pad, nz)
    z = TruncatedSeries2.variable("y", pad, nz)
    base = 1 - 12 * x
    # (1 + 36x - (1-12x)^{3/2}) / (27x): the numerator vanishes at x = 0.
    ratio = ((1 + 36 * x - base * base.sqrt()) / 27).shift_x(-1)
    ratio = ratio.truncate(nx, nz)
    x = x.truncate(nx, nz)
    z = z.truncate(nx, nz)
    lin = 1 + z - x * z * z
    disc = lin * lin - 2 * z * ratio
    # The formal square root is normalized to constant term +1; at x = 0 it
    # expands to 1 - z, which is the opposite sign of the analytic branch
    # selected by the closed form, so the combinatorial solution (constant
    # term 1, nonnegative coefficients) takes the plus sign here.
    s = (1 + z + x * z * z + disc.sqrt()) * Fraction(1, 2)
    return s


def _series_S_substitution(nx: int, nz: int) -> TruncatedSeries2:
    # Invert z = y B(x, y): iterate Y <- z / B(x, Y), gaining one z-order
    # per pass since Y = z (1 + higher order).
    b = series_B(nx, nz)
    x = TruncatedSeries2.variable("x", nx, nz)
    z = TruncatedSeries2.variable("y", nx, nz)
    yser = z
    for _ in range(nz + 1):
        yser = z * b.substitute(x, yser).reciprocal()
    return b.substitute(x, yser)


def series_S(nx: int, nz: int) -> TruncatedSeries2:
    """Maps with a simple boundary: coefficient of x^e z^p counts rooted
    maps with e edges whose root face is a simple cycle of length p.

    Built two independent ways — expanding the closed radical form and
    transporting B through the inverse of z = y B(x, y) — and the results
    are asserted equal before returning.
    """
    if nx < 1 or nz < 1:
        raise ValueError("series_S needs orders >= 1")
    radical = _series_S_radical(nx, nz)
    transported = _series_S_substitution(nx, nz)
    if radical != transported:
        diff = {k: (radical.coeff(*k), transported.coeff(*k))
                for k in set(radical.coeffs) | set(transported.coeffs)
                if radical.coeff(*k) != transported.coeff(*k)}
        raise InternalMismatch(
            f"the two constructions of S disagree at {sorted(diff)[:5]}")
    return radical


def format_series(series: TruncatedSeries2, yname: str = "z") -> str:
    """One `x^i z^j : c` line per coefficient, in graded lexicographic
    order."""
    items = sorted(series.coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0]))
    lines = []
    for (i, j), c in items:
        value = int(c) if c.denominator == 1 else c
        lines.append(f"x^{i} {yname}^{j} : {value}")
    return "\n".join(lines)
