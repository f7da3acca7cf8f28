"""Truncated formal power series with exact rational coefficients.

Every generating function here is produced from its defining functional
equation, never from a radical closed form.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .exact import as_fraction, binom_gen

DEFAULT_ORDER = 24


class SeriesError(ValueError):
    pass


class TruncSeries:
    """Power series known through x**order (inclusive). Immutable."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        c = [as_fraction(v) for v in coeffs]
        if order is not None:
            if order < 0:
                raise SeriesError("order must be >= 0")
            c = (c + [Fraction(0)] * (order + 1))[: order + 1]
        if not c:
            raise SeriesError("a series needs at least one coefficient")
        self._c = tuple(c)

    # construction helpers
    @classmethod
    def constant(cls, value, order: int) -> "TruncSeries":
        return cls([value], order)

    @classmethod
    def x(cls, order: int) -> "TruncSeries":
        return cls([0, 1], order)

    @classmethod
    def geometric(cls, ratio, order: int) -> "TruncSeries":
        """1 / (1 - ratio*x)."""
        q = as_fraction(ratio)
        return cls([q**k for k in range(order + 1)])

    @classmethod
    def binomial(cls, alpha, order: int) -> "TruncSeries":
        """(1 + x)**alpha for rational alpha."""
        return cls([binom_gen(alpha, k) for k in range(order + 1)])

    @property
    def order(self) -> int:
        return len(self._c) - 1

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    def __getitem__(self, n: int) -> Fraction:
        if not 0 <= n <= self.order:
            raise SeriesError(f"coefficient x^{n} outside truncation order {self.order}")
        return self._c[n]

    def __len__(self):
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def __repr__(self):
        return f"TruncSeries({[str(v) for v in self._c]})"

    def __eq__(self, other):
        if isinstance(other, TruncSeries):
            return self._c == other._c
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise SeriesError(f"cannot raise order {self.order} to {order}")
        return TruncSeries(self._c[: order + 1])

    def _coerce(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return other
        return TruncSeries.constant(other, self.order)

    # ring operations
    def __add__(self, other):
        g = self._coerce(other)
        n = min(self.order, g.order)
        return TruncSeries([self._c[i] + g._c[i] for i in range(n + 1)])

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-v for v in self._c])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self.scale(other)
        n = min(self.order, other.order)
        a, b = self._c, other._c
        out = []
        for k in range(n + 1):
            s = Fraction(0)
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    s += a[i] * b[k - i]
            out.append(s)
        return TruncSeries(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise SeriesError("integer power must be a non-negative int; use power()")
        out = TruncSeries.constant(1, self.order)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __truediv__(self, other):
        if not isinstance(other, TruncSeries):
            return self.scale(1 / as_fraction(other))
        return self * other.reciprocal()

    def scale(self, c) -> "TruncSeries":
        c = as_fraction(c)
        return TruncSeries([c * v for v in self._c])

    def shift(self, k: int = 1) -> "TruncSeries":
        """Multiply by x**k, dropping terms beyond the order."""
        if k < 0:
            raise SeriesError("shift must be non-negative")
        return TruncSeries([0] * k + list(self._c[: max(0, len(self._c) - k)]), self.order)

    def dilate(self, c) -> "TruncSeries":
        """f(c*x)."""
        c = as_fraction(c)
        return TruncSeries([v * c**k for k, v in enumerate(self._c)])

    def derivative(self) -> "TruncSeries":
        """f'(x); the result has order one less (min 0)."""
        if self.order == 0:
            return TruncSeries([0])
        return TruncSeries([k * self._c[k] for k in range(1, self.order + 1)])

    def reciprocal(self) -> "TruncSeries":
        """1/f, solved coefficient by coefficient from f * g = 1."""
        a = self._c
        if a[0] == 0:
            raise SeriesError("reciprocal needs a nonzero constant term")
        g = [1 / a[0]]
        for n in range(1, len(a)):
            s = sum((a[k] * g[n - k] for k in range(1, n + 1)), Fraction(0))
            g.append(-s / a[0])
        return TruncSeries(g)

    def power(self, alpha) -> "TruncSeries":
        """f**alpha for rational alpha, requiring f(0) = 1."""
        alpha = as_fraction(alpha)
        a = self._c
        if a[0] != 1:
            raise SeriesError("rational power needs constant term 1")
        g = [Fraction(1)]
        for n in range(1, len(a)):
            s = Fraction(0)
            for k in range(1, n + 1):
                s += ((alpha + 1) * k - n) * a[k] * g[n - k]
            g.append(s / n)
        return TruncSeries(g)

    def compose(self, g: "TruncSeries") -> "TruncSeries":
        """f(g(x)) by Horner's scheme; g must have zero constant term."""
        return compose(self, g)

    def is_zero(self) -> bool:
        return not any(self._c)


def compose(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    if g[0] != 0:
        raise SeriesError("composition f(g) needs g(0) = 0")
    n = min(f.order, g.order)
    out = TruncSeries.constant(f[n], n)
    for k in range(n - 1, -1, -1):
        out = out * g + f[k]
    return out


def solve_quadratic_fe(u0: TruncSeries, u1: TruncSeries, u2: TruncSeries) -> TruncSeries:
    """Solve F = u0 + u1*F + u2*F**2 coefficient by coefficient.

    F(0) is taken to be u0(0); this must be consistent with the constant
    terms of u1 and u2, and every later coefficient must be uniquely
    determined, otherwise SeriesError names the first offending order.
    """
    n_max = min(u0.order, u1.order, u2.order)
    a, b, c = u0.coeffs, u1.coeffs, u2.coeffs
    f0 = a[0]
    if b[0] * f0 + c[0] * f0 * f0 != 0:
        raise SeriesError("inconsistent constant term at order 0")
    pivot = 1 - b[0] - 2 * c[0] * f0
    if n_max >= 1 and pivot == 0:
        raise SeriesError("coefficient at order 1 is not uniquely determined")
    f = [f0]
    sq = [f0 * f0]  # coefficients of F**2 for orders already settled
    for n in range(1, n_max + 1):
        # every term on the right except those involving f[n]
        partial_sq = sum((f[i] * f[n - i] for i in range(1, n)), Fraction(0))
        rhs = a[n]
        rhs += sum((b[k] * f[n - k] for k in range(1, n + 1)), Fraction(0))
        rhs += sum((c[k] * sq[n - k] for k in range(1, n + 1)), Fraction(0))
        rhs += c[0] * partial_sq
        fn = rhs / pivot
        f.append(fn)
        sq.append(partial_sq + 2 * f0 * fn)
    return TruncSeries(f)


def fe_residual(f: TruncSeries, u0: TruncSeries, u1: TruncSeries, u2: TruncSeries) -> TruncSeries:
    """u0 + u1*F + u2*F**2 - F, which vanishes for a solution."""
    return u0 + u1 * f + u2 * f * f - f


# -- generating functions of the counting sequences ---------------------------


def _x(n: int) -> TruncSeries:
    return TruncSeries.x(n)


def _const(v, n: int) -> TruncSeries:
    return TruncSeries.constant(v, n)


def fe_C(a, b, n: int):
    """(u0, u1, u2) for C = 1 + (a-b)xC + bxC^2."""
    a, b = as_fraction(a), as_fraction(b)
    return _const(1, n), _x(n).scale(a - b), _x(n).scale(b)


def fe_M(a, b, n: int):
    """(u0, u1, u2) for M = 1 + axM + bx^2M^2."""
    a, b = as_fraction(a), as_fraction(b)
    return _const(1, n), _x(n).scale(a), _x(n).shift(1).scale(b)


def fe_S(a, b, n: int):
    """(u0, u1, u2) for S = 1 + axS + bxS^2."""
    a, b = as_fraction(a), as_fraction(b)
    return _const(1, n), _x(n).scale(a), _x(n).scale(b)


def fe_T0(r: int, n: int):
    """(u0, u1, u2) for T0 = 1 + rx - (r-1)xT0 + (r-1)xT0^2."""
    return _const(1, n) + _x(n).scale(r), _x(n).scale(-(r - 1)), _x(n).scale(r - 1)


def series_C(a, b, order: int = DEFAULT_ORDER) -> TruncSeries:
    """Weight generating function of (a, b)-Dyck paths."""
    return solve_quadratic_fe(*fe_C(a, b, order))


def series_M(a, b, order: int = DEFAULT_ORDER) -> TruncSeries:
    """Weight generating function of (a, b)-Motzkin paths."""
    return solve_quadratic_fe(*fe_M(a, b, order))


def series_S(a, b, order: int = DEFAULT_ORDER) -> TruncSeries:
    """Weight generating function of (a, b)-Schroder paths."""
    return solve_quadratic_fe(*fe_S(a, b, order))


def series_Sr(r: int, order: int = DEFAULT_ORDER) -> TruncSeries:
    """Counts of r-colored Dyck paths without equal-colored dd steps: S(1, r-1; x)."""
    if r < 1:
        raise SeriesError("r must be >= 1")
    return series_S(1, r - 1, order)


def series_T0(r: int, order: int = DEFAULT_ORDER) -> TruncSeries:
    """Counts of udu-avoiding paths in A_{n,0}^{(r)}."""
    if r < 1:
        raise SeriesError("r must be >= 1")
    return solve_quadratic_fe(*fe_T0(r, order))


def series_A(r: int, y, order: int = DEFAULT_ORDER) -> TruncSeries:
    """A_r(x, y) at a fixed rational y: A = 1 + x(1-y)A + x(y+r-1)A^2."""
    y = as_fraction(y)
    return solve_quadratic_fe(_const(1, order), _x(order).scale(1 - y), _x(order).scale(y + r - 1))


def series_T(r: int, y, order: int = DEFAULT_ORDER) -> TruncSeries:
    """T_r(x, y) at a fixed rational y (y marks udu windows).

    T = 1 + rx + rxy(T-1) + (r-1)x(T-1)T, rearranged to
    T = (1 + rx - rxy) + (rxy - (r-1)x) T + (r-1)x T^2.
    """
    y = as_fraction(y)
    x = _x(order)
    u0 = _const(1, order) + x.scale(r) - x.scale(r * y)
    u1 = x.scale(r * y - (r - 1))
    u2 = x.scale(r - 1)
    return solve_quadratic_fe(u0, u1, u2)


def y_triangle(builder: Callable[[Fraction], TruncSeries], order: int) -> list[list[Fraction]]:
    """Split a bivariate series into its y-polynomial coefficients.

    ``builder(y)`` returns the univariate specialization at y; [x^n] is a
    polynomial in y of degree <= n. Row n of the result lists its
    coefficients, recovered by exact interpolation at y = 0..order.
    """
    specs = [builder(Fraction(y)) for y in range(order + 1)]
    rows = []
    for n in range(order + 1):
        pts = [(Fraction(y), specs[y][n]) for y in range(n + 1)]
        rows.append(_interpolate(pts))
    return rows


def _interpolate(pts: Sequence[tuple[Fraction, Fraction]]) -> list[Fraction]:
    """Monomial coefficients of the interpolating polynomial (Newton form)."""
    xs = [p[0] for p in pts]
    dd = [p[1] for p in pts]
    m = len(pts)
    for j in range(1, m):
        for i in range(m - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * m
    for i in range(m - 1, -1, -1):
        # poly = poly * (y - xs[i]) + dd[i]
        nxt = [Fraction(0)] * m
        for k in range(m - 1):
            nxt[k + 1] += poly[k]
            nxt[k] -= xs[i] * poly[k]
        nxt[0] += dd[i]
        poly = nxt
    return poly


def lagrange_coeff(psi: TruncSeries, u: TruncSeries, n: int) -> Fraction:
    """[x^n] psi(f(x)) where f = x*u(f), via (1/n)[t^(n-1)] psi'(t) u(t)^n."""
    if n < 1:
        raise SeriesError("Lagrange inversion coefficient needs n >= 1")
    if u[0] == 0:
        raise SeriesError("u(0) must be nonzero")
    if psi.order < n or u.order < n:
        raise SeriesError(f"psi and u must be known through order {n}")
    dpsi = psi.truncate(n).derivative()
    return (dpsi * u.truncate(n - 1) ** n)[n - 1] / n


def z_series(m: int, a, b, order: int = DEFAULT_ORDER) -> TruncSeries:
    """Z_m(a, b; x) built by the composition tower from Z_0 = S(-a, b; x)."""
    a, b = as_fraction(a), as_fraction(b)
    if a == 0:
        raise SeriesError("z_series needs a != 0")
    if m < 0:
        raise SeriesError("m must be >= 0")
    z = series_S(-a, b, order)
    for k in range(m):
        c = (b / a) ** (2**k)
        inner = (_x(order) * z * z).scale(c)
        z = z * compose(z, inner)
    return z


def z_parameter(m: int, a, b) -> Fraction:
    """b^(2^m) / a^(2^m - 1), the second S-parameter of Z_m."""
    a, b = as_fraction(a), as_fraction(b)
    return b ** (2**m) / a ** (2**m - 1)
