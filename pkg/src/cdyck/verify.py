"""Identity harness: finite-grid certification of the counting identities.

Each check evaluates both sides of an identity (often by more than one
route) over a parameter grid and returns a :class:`CheckReport`. Passing a
check certifies the identity on that grid only.
"""
from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from . import formulas as fm
from . import paths
from . import riordan as rd
from . import series as sr
from .exact import as_count, as_fraction, binom, binom_gen

F = Fraction


@dataclass
class CheckReport:
    check_id: str
    grid: dict
    status: str = "pass"
    instances: list = field(default_factory=list)
    counterexample: dict | None = None
    millis: float = 0.0
    scope: str = "finite-grid certification"

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def n_checked(self) -> int:
        return sum(1 for i in self.instances if i["status"] == "pass" or i["status"] == "fail")

    def to_dict(self, with_instances: bool = False) -> dict:
        d = asdict(self)
        if not with_instances:
            d["instances"] = {
                "total": len(self.instances),
                "pass": sum(1 for i in self.instances if i["status"] == "pass"),
                "fail": sum(1 for i in self.instances if i["status"] == "fail"),
                "skip": sum(1 for i in self.instances if i["status"] == "skip"),
            }
        return d

    def to_json(self, with_instances: bool = False) -> str:
        return json.dumps(self.to_dict(with_instances), indent=2, sort_keys=True)

    def summary(self) -> str:
        line = f"{self.check_id:<14} {self.status.upper():<4} {self.n_checked:>5} instances  {self.millis:9.1f} ms"
        if self.counterexample:
            line += f"  first counterexample: {self.counterexample['params']}"
        return line


def _fmt(v) -> str:
    return str(v)


def _run(check_id: str, grid: dict, instances: Iterable[dict], evaluate: Callable) -> CheckReport:
    """Evaluate every instance; ``evaluate(**params)`` returns named values or None to skip.

    Instances are visited in the given order (ascending n first), so the
    first failure recorded is the smallest one.
    """
    start = time.perf_counter()
    report = CheckReport(check_id, grid)
    for params in instances:
        values = evaluate(**params)
        if values is None:
            report.instances.append({"params": params, "status": "skip"})
            continue
        distinct = set(values.values())
        status = "pass" if len(distinct) == 1 else "fail"
        entry = {"params": params, "status": status, "values": {k: _fmt(v) for k, v in values.items()}}
        report.instances.append(entry)
        if status == "fail" and report.counterexample is None:
            report.status = "fail"
            report.counterexample = entry
    report.millis = (time.perf_counter() - start) * 1000
    return report


def _pairs(grid) -> list[tuple[Fraction, Fraction]]:
    out = [(as_fraction(a), as_fraction(b)) for a, b in grid]
    if not out:
        raise ValueError("empty (a, b) grid")
    return out


def _grid_json(pairs) -> list[list[str]]:
    return [[str(a), str(b)] for a, b in pairs]


def _rs(r_range) -> list[int]:
    rs = sorted(set(int(r) for r in r_range))
    if not rs:
        raise ValueError("empty r range")
    if rs[0] < 2:
        raise ValueError("r must be >= 2")
    return rs


class _SrCache:
    """S_n^{(r)} and S_n(-1, (r-1)^2) lookups shared by the corollary checks."""

    def __init__(self):
        self._s: dict[int, tuple[Fraction, ...]] = {}
        self._neg: dict[tuple[int, int], int] = {}

    def s(self, n: int, r: int) -> int:
        coeffs = self._s.get(r)
        if coeffs is None or len(coeffs) <= n:
            coeffs = sr.series_Sr(r, max(n, 2 * len(coeffs or ()), 16)).coeffs
            self._s[r] = coeffs
        return as_count(coeffs[n], f"S_{n}^({r})")

    def neg(self, n: int, r: int) -> int:
        key = (n, r)
        if key not in self._neg:
            self._neg[key] = as_count(fm.schroder_ab(n, -1, (r - 1) ** 2), f"S_{n}(-1,{(r - 1) ** 2})")
        return self._neg[key]


# -- weighted path relations ---------------------------------------------------


def check_schroder_catalan_motzkin(n_max: int = 16, grid=((1, 1), (2, 1), (1, 2), (3, 5), (-1, 2))) -> CheckReport:
    """S_n(a,b) = C_n(a+b,b) = (a+b) M_{n-1}(a+2b,(a+b)b), stated for n >= 1."""
    pairs = _pairs(grid)

    def ev(n, a, b):
        if n < 1:
            return None
        a, b = F(a), F(b)
        return {
            "schroder": fm.schroder_ab(n, a, b),
            "catalan": fm.catalan_ab(n, a + b, b),
            "motzkin": (a + b) * fm.motzkin_ab(n - 1, a + 2 * b, (a + b) * b),
        }

    inst = [{"n": n, "a": str(a), "b": str(b)} for n in range(0, n_max + 1) for a, b in pairs]
    return _run("eq1.5", {"n_max": n_max, "ab": _grid_json(pairs)}, inst, ev)


def _tower_rhs(n: int, m: int, a: Fraction, b: Fraction) -> Fraction:
    c_m = sr.z_parameter(m, a, b)
    p = 2**m
    total = F(0)
    for ell in range(n + 1):
        s_ell = fm.schroder_ab(ell, -a, c_m)
        for j in range(n - ell + 1):
            total += (
                (-1) ** j
                * F(2 * ell + 1, 2 * n - j + 1)
                * binom(2 * n - j + 1, n - ell)
                * binom(n - ell, j)
                * s_ell
                * a ** (n - ell - p * (n - j))
                * b ** (p * (n - j))
            )
    return total


def check_schroder_tower_sum(n_max: int = 10, m_max: int = 2, grid=((1, 2), (2, 3), (-1, 3))) -> CheckReport:
    """S_n(-a, b^(2^(m+1))/a^(2^(m+1)-1)) against its double-sum expansion in S_l(-a, ...)."""
    pairs = _pairs(grid)
    if any(a == 0 for a, _ in pairs):
        raise ValueError("tower identity requires a != 0")

    def ev(n, m, a, b):
        a, b = F(a), F(b)
        return {
            "lhs": fm.schroder_ab(n, -a, sr.z_parameter(m + 1, a, b)),
            "rhs": _tower_rhs(n, m, a, b),
        }

    inst = [{"n": n, "m": m, "a": str(a), "b": str(b)} for n in range(n_max + 1) for m in range(m_max + 1) for a, b in pairs]
    return _run("cor2.3", {"n_max": n_max, "m_max": m_max, "ab": _grid_json(pairs)}, inst, ev)


def check_z_tower(m_max: int = 3, grid=((1, 2), (2, 3), (3, -1)), order: int = 20) -> CheckReport:
    """The composition tower Z_m: functional equation, closed form, b -> -b symmetry, Z_m(a, a) = 1."""
    pairs = _pairs(grid)
    if any(a == 0 for a, _ in pairs):
        raise ValueError("Z_m tower requires a != 0")
    one = sr.TruncSeries.constant(1, order)

    def ev(m, a, b):
        a, b = F(a), F(b)
        z = sr.z_series(m, a, b, order)
        c = sr.z_parameter(m, a, b)
        residual = sr.fe_residual(z, *sr.fe_S(-a, c, order))
        out = {
            "tower": z,
            "closed_form": sr.series_S(-a, c, order),
            "residual_is_zero": z if residual.is_zero() else residual,
        }
        if m >= 1:
            out["sign_flipped"] = sr.z_series(m, a, -b, order)
        return out

    def ev_diag(m, a):
        a = F(a)
        return {"tower": sr.z_series(m, a, a, order), "one": one}

    inst = [{"m": m, "a": str(a), "b": str(b)} for m in range(m_max + 1) for a, b in pairs]
    report = _run("lemma2.2", {"m_max": m_max, "ab": _grid_json(pairs), "order": order}, inst, ev)
    diag = _run("lemma2.2", {}, [{"m": m, "a": str(a)} for m in range(m_max + 1) for a, _ in pairs], ev_diag)
    return _merge(report, diag)


def _merge(first: CheckReport, second: CheckReport) -> CheckReport:
    first.instances.extend(second.instances)
    first.millis += second.millis
    if first.status == "pass" and second.status != "pass":
        first.status = second.status
        first.counterexample = second.counterexample
    return first


def _sr_alt_lhs(n: int, r: int) -> Fraction:
    return sum(
        ((-1) ** k * binom(n + k, 2 * k) * fm.catalan(k) * F(r - 1) ** (2 * k) for k in range(n + 1)),
        F(0),
    )


def _sr_alt_rhs(n: int, r: int, cache: _SrCache) -> Fraction:
    total = F(0)
    for ell in range(n + 1):
        for j in range(n - ell + 1):
            total += (
                (-1) ** ell
                * F(2 * ell + 1, 2 * n - j + 1)
                * binom(2 * n - j + 1, n - ell)
                * binom(n - ell, j)
                * cache.s(ell, r)
                * (r - 1) ** (n - j)
            )
    return total


def check_sr_composition(r_range=(2, 3, 4, 5), order: int = 20) -> CheckReport:
    """S_r(x) S_r(-(r-1)x S_r(x)^2) = S(1, -(r-1)^2; x), its coefficient identity, and S(x)S(-xS(x)^2) = 1."""
    rs = _rs(r_range)
    cache = _SrCache()
    x = sr.TruncSeries.x(order)

    def ev_series(r):
        s = sr.series_Sr(r, order)
        inner = (x * s * s).scale(-(r - 1))
        out = {"product": s * sr.compose(s, inner), "target": sr.series_S(1, -((r - 1) ** 2), order)}
        if r == 2:
            out["one"] = sr.TruncSeries.constant(1, order)
        return out

    def ev_coeff(n, r):
        return {"alternating": _sr_alt_lhs(n, r), "double_sum": _sr_alt_rhs(n, r, cache), "schroder": fm.schroder_ab(n, 1, -((r - 1) ** 2))}

    rep = _run("eq2.5", {"r": rs, "order": order}, [{"r": r} for r in rs], ev_series)
    coeff = _run("eq2.5", {}, [{"n": n, "r": r} for n in range(order + 1) for r in rs], ev_coeff)
    return _merge(rep, coeff)


# -- points / u-steps / peaks identities ----------------------------------------


def _table(stat: str, n: int, r: int) -> list[int]:
    fn = {"points": fm.point_count, "usteps": fm.ustep_count, "peaks": fm.peak_count}[stat]
    return [fn(n, ell, r) for ell in range(n + 1)]


def _nr_instances(n_max: int, rs: list[int], n_min: int = 0) -> list[dict]:
    return [{"n": n, "r": r} for n in range(n_min, n_max + 1) for r in rs]


def check_points_alternating(n_max: int = 12, r_range=(2, 3, 4, 5)) -> CheckReport:
    """sum_l (-1)^l P_{n,l} = S_n^{(r)}; also read off the array acting on 1/(1+x)."""
    rs = _rs(r_range)
    cache = _SrCache()
    applied = {
        r: rd.points_array(r, n_max).apply(sr.TruncSeries.geometric(-1, n_max)) - F(1, r - 1) for r in rs
    }

    def ev(n, r):
        row = _table("points", n, r)
        return {
            "alternating": sum((-1) ** ell * v for ell, v in enumerate(row)),
            "array_action": applied[r][n],
            "S": cache.s(n, r),
        }

    return _run("cor3.2", {"n_max": n_max, "r": rs}, _nr_instances(n_max, rs), ev)


def check_points_weighted_alternating(n_max: int = 12, r_range=(2, 3, 4, 5)) -> CheckReport:
    """sum_{l=1}^{n+1} (-1)^(l-1) l P_{n+1,l} = sum_{l=0}^{n} S_{l+1}^{(r)}."""
    rs = _rs(r_range)
    cache = _SrCache()

    def ev(n, r):
        row = _table("points", n + 1, r)
        return {
            "lhs": sum((-1) ** (ell - 1) * ell * row[ell] for ell in range(1, n + 2)),
            "rhs": sum(cache.s(ell + 1, r) for ell in range(n + 1)),
        }

    return _run("cor3.3", {"n_max": n_max, "r": rs}, _nr_instances(n_max, rs), ev)


def check_usteps_against_sr(n_max: int = 12, r_range=(2, 3, 4, 5)) -> CheckReport:
    """sum_l (-1)^l U_{n,l} S_l = sum_l (-1)^(n-l) S_{l+1} S_{n-l}(-1,(r-1)^2); S_{n+1} when r = 2."""
    rs = _rs(r_range)
    cache = _SrCache()

    def ev(n, r):
        row = _table("usteps", n, r)
        out = {
            "lhs": sum((-1) ** ell * v * cache.s(ell, r) for ell, v in enumerate(row)),
            "rhs": sum((-1) ** (n - ell) * cache.s(ell + 1, r) * cache.neg(n - ell, r) for ell in range(n + 1)),
        }
        if r == 2:
            out["r2"] = cache.s(n + 1, 2)
        return out

    return _run("cor4.2", {"n_max": n_max, "r": rs}, _nr_instances(n_max, rs), ev)


def check_usteps_against_sr_differences(n_max: int = 12, r_range=(2, 3, 4, 5)) -> CheckReport:
    """sum_l (-1)^l U_{n,l}(S_{l+1}-S_l) against the S(-1,(r-1)^2) convolution; delta_{n,0} + S_n when r = 2."""
    rs = _rs(r_range)
    cache = _SrCache()

    def ev(n, r):
        row = _table("usteps", n, r)
        rhs = F(0)
        for ell in range(n + 1):
            head = (F(1, r - 1) if ell == 0 else 0) + cache.s(ell, r)
            rhs += (-1) ** (n - ell) * head * (cache.neg(n - ell, r) + cache.neg(n - ell + 1, r))
        out = {
            "lhs": sum((-1) ** ell * v * (cache.s(ell + 1, r) - cache.s(ell, r)) for ell, v in enumerate(row)),
            "rhs": as_count(rhs, "usteps-difference rhs"),
        }
        if r == 2:
            out["r2"] = (1 if n == 0 else 0) + cache.s(n, 2)
        return out

    return _run("cor4.3", {"n_max": n_max, "r": rs}, _nr_instances(n_max, rs), ev)


def check_usteps_weighted_alternating(n_max: int = 12, r_range=(2, 3, 4, 5)) -> CheckReport:
    """sum_l (-1)^l (l+1) U_{n,l} = (n+1) + (r-1) sum_l (l+1) S_{n-l}; also via the array acting on 1/(1+x)^2."""
    rs = _rs(r_range)
    cache = _SrCache()
    inv_sq = sr.TruncSeries.binomial(-2, n_max)
    applied = {r: rd.usteps_array(r, n_max).apply(inv_sq) for r in rs}

    def ev(n, r):
        row = _table("usteps", n, r)
        return {
            "lhs": sum((-1) ** ell * (ell + 1) * v for ell, v in enumerate(row)),
            "rhs": (n + 1) + (r - 1) * sum((ell + 1) * cache.s(n - ell, r) for ell in range(n + 1)),
            "array_action": applied[r][n],
        }

    return _run("cor4.4", {"n_max": n_max, "r": rs}, _nr_instances(n_max, rs), ev)


def check_peaks_against_sr(n_max: int = 12, r_range=(2, 3, 4, 5)) -> CheckReport:
    """Both peak identities against S_n(-1,(r-1)^2), with their r = 2 forms 2S_n and 2 delta_{n,0}."""
    rs = _rs(r_range)
    cache = _SrCache()

    def ev_first(n, r):
        row = _table("peaks", n, r)
        out = {
            "lhs": sum((-1) ** ell * v * cache.s(ell, r) for ell, v in enumerate(row)),
            "rhs": r * sum((-1) ** (n - ell) * cache.s(ell, r) * cache.neg(n - ell, r) for ell in range(n + 1)),
        }
        if r == 2:
            out["r2"] = 2 * cache.s(n, 2)
        return out

    def ev_second(n, r):
        row = _table("peaks", n, r)
        rhs = F(r, r - 1) * (-1) ** n * (cache.neg(n + 1, r) + cache.neg(n, r))
        out = {
            "lhs": sum((-1) ** ell * v * (cache.s(ell + 1, r) - cache.s(ell, r)) for ell, v in enumerate(row)),
            "rhs": as_count(rhs, "peaks-difference rhs"),
        }
        if r == 2:
            out["r2"] = 2 if n == 0 else 0
        return out

    inst = _nr_instances(n_max, rs)
    grid = {"n_max": n_max, "r": rs}
    first = _run("cor5.2", grid, [dict(i, form="S") for i in inst], lambda form, **kw: ev_first(**kw))
    second = _run("cor5.2", grid, [dict(i, form="dS") for i in inst], lambda form, **kw: ev_second(**kw))
    return _merge(first, second)


def _power_coeff(n_rest: int, j: int, m: Fraction) -> Fraction:
    """(1-m)/(t) * C(t, N) with t = N + j - m + 1, N = n_rest.

    For N = 0 (hence j = 0) the factor is identically 1, including at m = 1
    where the closed-form quotient is 0/0.
    """
    if n_rest == 0:
        return F(1)
    t = n_rest + j - m + 1
    falling = F(1)
    for i in range(1, n_rest):
        falling *= t - i
    for i in range(2, n_rest + 1):
        falling /= i
    return (1 - m) * falling


def check_peaks_binomial_transform(n_max: int = 12, r_range=(2, 3, 4, 5), m_grid=(0, 1, 2, F(1, 2), F(-1, 2))) -> CheckReport:
    """sum_l (-1)^l C(m+l, l) p_{n,l} against its double-sum form and [x^n] r S_r^(1-m)/(1-x)^(m+1)."""
    rs = _rs(r_range)
    ms = [as_fraction(m) for m in m_grid]
    if not ms:
        raise ValueError("empty m grid")
    cache = _SrCache()
    series_route = {}
    for r in rs:
        s = sr.series_Sr(r, n_max)
        arr = rd.peaks_array(r, n_max)
        for m in ms:
            gf = s.power(1 - m).scale(r) * sr.TruncSeries.binomial(-(m + 1), n_max).dilate(-1)
            series_route[r, m] = (gf, arr.apply(sr.TruncSeries.binomial(-(m + 1), n_max)))

    def ev(n, r, m):
        m = F(m)
        row = _table("peaks", n, r)
        rhs = F(0)
        for ell in range(n + 1):
            for j in range(n - ell + 1):
                rhs += binom_gen(m + ell, ell) * binom(n - ell, j) * r * _power_coeff(n - ell, j, m) * (r - 1) ** j
        gf, applied = series_route[r, m]
        out = {
            "lhs": sum((-1) ** ell * binom_gen(m + ell, ell) * v for ell, v in enumerate(row)),
            "rhs": rhs,
            "series": gf[n],
            "array_action": applied[n],
        }
        if m == 0:
            out["m0"] = r * sum(cache.s(ell, r) for ell in range(n + 1))
        if m == 1:
            out["m1"] = r * (n + 1)
        return out

    inst = [{"n": n, "r": r, "m": str(m)} for n in range(n_max + 1) for r in rs for m in ms]
    return _run("cor5.3", {"n_max": n_max, "r": rs, "m": [str(m) for m in ms]}, inst, ev)


def check_udu_first_moment(n_max: int = 12, r_range=(2, 3, 4, 5)) -> CheckReport:
    """sum_l l T_{n+1,l} = r n S_n^{(r)} for n >= 1, also via the y-derivative of T_r(x, y) at y = 1."""
    rs = _rs(r_range)
    cache = _SrCache()
    tri = {r: sr.y_triangle(lambda y, r=r: sr.series_T(r, y, n_max + 1), n_max + 1) for r in rs}

    def ev(n, r):
        if n < 1:
            return None
        poly = tri[r][n + 1]
        return {
            "lhs": sum(ell * fm.udu_count(n + 1, ell, r) for ell in range(1, n + 1)),
            "y_derivative": sum(k * c for k, c in enumerate(poly)),
            "rhs": r * n * cache.s(n, r),
        }

    return _run("thm6.2", {"n_max": n_max, "r": rs}, _nr_instances(n_max, rs), ev)


def check_dd_distribution(n_max: int = 12, r_range=(2, 3, 4, 5), oracle_n_max: int = 5) -> CheckReport:
    """A_{n,k}: closed form against the y-coefficients of A_r(x, y), and the oracle for small n."""
    rs = _rs(r_range)
    tri = {r: sr.y_triangle(lambda y, r=r: sr.series_A(r, y, n_max), n_max) for r in rs}

    def ev(n, k, r):
        out = {"formula": fm.colored_dd_count(n, k, r), "series": tri[r][n][k]}
        if n <= oracle_n_max and n <= paths.default_cap(r):
            out["oracle"] = paths.oracle_total(paths.SameColorDDCount(exactly=k), n, r)
        return out

    inst = [{"n": n, "k": k, "r": r} for n in range(n_max + 1) for k in range(n + 1) for r in rs]
    return _run("thm2.1", {"n_max": n_max, "r": rs, "oracle_n_max": oracle_n_max}, inst, ev)


def check_weighted_arrays(n_max: int = 10, r_range=(2, 3), grid=((3, 1), (1, 2)), oracle_n_max: int = 6) -> CheckReport:
    """(a, b)-arrays: specialization at (r, r-1), closed forms, and the weighted-path oracle."""
    rs = _rs(r_range)
    pairs = _pairs(grid)
    fns = {
        "points": (fm.point_count_ab, rd.points_array_ab, fm.point_count),
        "usteps": (fm.ustep_count_ab, rd.usteps_array_ab, fm.ustep_count),
        "peaks": (fm.peak_count_ab, rd.peaks_array_ab, fm.peak_count),
    }
    arrays = {}
    for stat, (_, build, _) in fns.items():
        for a, b in pairs + [(F(r), F(r - 1)) for r in rs]:
            arrays[stat, a, b] = build(a, b, n_max)

    def ev(stat, n, ell, a, b):
        a, b = F(a), F(b)
        closed, _, by_r = fns[stat]
        entry = arrays[stat, a, b].entry(n, ell)
        if stat == "points" and n == 0:
            entry -= (a - b) / b
        out = {"closed_form": closed(n, ell, a, b), "array": entry}
        if b == a - 1 and a >= 2:
            out["r_variant"] = by_r(n, ell, int(a))
        shift = 0 if stat == "points" else 1
        if n + shift <= oracle_n_max and a.denominator == b.denominator == 1 and a > 0 and b > 0:
            out["weighted_oracle"] = weighted_stat_total(stat, n, ell, a, b)
        return out

    inst = [
        {"stat": stat, "n": n, "ell": ell, "a": str(a), "b": str(b)}
        for n in range(n_max + 1)
        for ell in range(n + 1)
        for stat in fns
        for a, b in pairs + [(F(r), F(r - 1)) for r in rs]
    ]
    return _run("ab-arrays", {"n_max": n_max, "r": rs, "ab": _grid_json(pairs)}, inst, ev)


def weighted_stat_total(stat: str, n: int, ell: int, a, b) -> Fraction:
    """Sum of stat * weight over (a, b)-Dyck paths, in the table indexing of ``stat``."""
    if stat == "points":
        kind, size = paths.PointsAtLevel(ell), n
    elif stat == "usteps":
        kind, size = paths.UStepsAtLevel(ell + 1), n + 1
    elif stat == "peaks":
        kind, size = paths.PeaksAtLevel(ell + 1), n + 1
    else:
        raise ValueError(f"no weighted oracle for {stat!r}")
    return sum(
        (paths.stat_value(p, kind) * paths.path_weight(p, a, b) for p in paths.enumerate_paths(paths.Family.DYCK, size)),
        F(0),
    )


# -- recurrences and the route driver -------------------------------------------


def recurrence_table(stat: str, r: int, n_max: int) -> list[list[int]]:
    """Fill the triangle from the first-return convolution recurrences."""
    if r < 2:
        raise ValueError("r must be >= 2")
    if n_max < 0:
        return []
    S = [as_count(v) for v in sr.series_Sr(r, n_max + 1).coeffs]
    T = [[0] * (n_max + 2) for _ in range(n_max + 1)]

    def t(n, ell):
        return T[n][ell] if 0 <= ell <= n else 0

    if stat == "points":
        T[0][0] = 1
        for n in range(n_max):
            T[n + 1][0] = (r - 1) * sum(t(k, 0) * S[n - k] for k in range(n + 1)) + S[n + 1] + t(n, 0)
            T[n + 1][1] = (
                (r - 1) * sum(t(k, 1) * S[n - k] for k in range(1, n + 1))
                + (r - 1) * sum(S[k] * t(n - k, 0) for k in range(n + 1))
                + S[n]
                + t(n, 1)
            )
            for ell in range(2, n + 2):
                T[n + 1][ell] = (
                    (r - 1) * sum(t(k, ell) * S[n - k] for k in range(ell, n + 1))
                    + (r - 1) * sum(S[k] * t(n - k, ell - 1) for k in range(n - ell + 2))
                    + t(n, ell)
                )
    elif stat in ("usteps", "peaks"):
        T[0][0] = r
        for n in range(n_max):
            head = (r - 1) * sum(t(k, 0) * S[n - k] for k in range(n + 1)) + r * S[n + 1] + t(n, 0)
            if stat == "usteps":
                head += (r - 1) * sum(S[k + 1] * S[n - k] for k in range(n + 1))
            T[n + 1][0] = head
            for ell in range(1, n + 2):
                T[n + 1][ell] = (
                    (r - 1) * sum(t(k, ell) * S[n - k] for k in range(ell, n + 1))
                    + (r - 1) * sum(S[k] * t(n - k, ell - 1) for k in range(n - ell + 2))
                    + t(n, ell)
                )
    else:
        raise ValueError(f"no recurrence for statistic {stat!r}")
    return [T[n][: n + 1] for n in range(n_max + 1)]


def check_recurrences(n_max: int = 12, r_range=(2, 3, 4, 5)) -> CheckReport:
    """Recurrence-filled triangles equal the closed forms cell by cell."""
    rs = _rs(r_range)
    tables = {(s, r): recurrence_table(s, r, n_max) for s in ("points", "usteps", "peaks") for r in rs}

    def ev(stat, n, ell, r):
        return {"recurrence": tables[stat, r][n][ell], "closed_form": fm.evaluate(stat, n, ell, r).value}

    inst = [
        {"stat": s, "n": n, "ell": ell, "r": r}
        for n in range(n_max + 1)
        for ell in range(n + 1)
        for s in ("points", "usteps", "peaks")
        for r in rs
    ]
    return _run("recurrences", {"n_max": n_max, "r": rs}, inst, ev)


_ORACLE_KIND = {
    "points": lambda ell: paths.PointsAtLevel(ell),
    "usteps": lambda ell: paths.UStepsAtLevel(ell + 1),
    "peaks": lambda ell: paths.PeaksAtLevel(ell + 1),
    "udu": lambda ell: paths.UduCount(exactly=ell),
}


def udu_series_table(r: int, n_max: int) -> list[list[int]]:
    """T_{n,l} as y-coefficients of T_r(x, y)."""
    tri = sr.y_triangle(lambda y: sr.series_T(r, y, n_max), n_max)
    return [[as_count(c) for c in row] for row in tri]


def cross_check(stat: str, n_max: int = 6, r_range=(2, 3), cap: int | None = None, workers: int = 1) -> CheckReport:
    """Every route for one statistic over the whole triangle.

    points/usteps/peaks: oracle, closed form, Riordan entry, recurrence.
    udu: oracle, closed form, bivariate series (no Riordan array exists).
    """
    if stat not in _ORACLE_KIND:
        raise ValueError(f"unknown statistic {stat!r}; expected one of {sorted(_ORACLE_KIND)}")
    rs = _rs(r_range)
    shift = 1 if stat in ("usteps", "peaks") else 0
    for r in rs:
        paths.check_cap(n_max + shift, r, cap)
    if stat == "udu":
        other = {r: udu_series_table(r, n_max) for r in rs}
    else:
        other = {r: (rd.riordan_table(stat, r, n_max), recurrence_table(stat, r, n_max)) for r in rs}

    def ev(n, ell, r):
        out = {
            "oracle": paths.oracle_total(_ORACLE_KIND[stat](ell), n, r, cap=cap, workers=workers),
            "closed_form": fm.evaluate(stat, n, ell, r).value,
        }
        if stat == "udu":
            row = other[r][n]
            out["series"] = row[ell] if ell < len(row) else 0
        else:
            out["riordan"] = other[r][0][n][ell]
            out["recurrence"] = other[r][1][n][ell]
        return out

    inst = [{"n": n, "ell": ell, "r": r} for n in range(n_max + 1) for ell in range(n + 1) for r in rs]
    return _run(f"cross.{stat}", {"n_max": n_max, "r": rs}, inst, ev)


def rerun(report: CheckReport) -> CheckReport:
    """Re-evaluate only the counterexample instance of a failed report."""
    if report.counterexample is None:
        raise ValueError("report has no counterexample")
    spec = CHECKS[report.check_id]
    return spec.rerun(report.counterexample["params"])


# -- registry ------------------------------------------------------------------


@dataclass(frozen=True)
class CheckSpec:
    check_id: str
    fn: Callable[..., CheckReport]
    description: str
    # keyword arguments of ``fn`` that the CLI grid flags map onto
    accepts: tuple[str, ...] = ()

    def run(self, **kwargs) -> CheckReport:
        return self.fn(**{k: v for k, v in kwargs.items() if k in self.accepts and v is not None})

    def rerun(self, params: dict) -> CheckReport:
        kw = {}
        if "n" in params and "n_max" in self.accepts:
            kw["n_max"] = int(params["n"])
        if "r" in params and "r_range" in self.accepts:
            kw["r_range"] = (int(params["r"]),)
        if "a" in params and "grid" in self.accepts and "b" in params:
            kw["grid"] = ((params["a"], params["b"]),)
        if "m" in params and "m_max" in self.accepts:
            kw["m_max"] = int(params["m"])
        if "m" in params and "m_grid" in self.accepts:
            kw["m_grid"] = (params["m"],)
        return self.fn(**kw)


_NR = ("n_max", "r_range")

CHECKS: dict[str, CheckSpec] = {
    c.check_id: c
    for c in [
        CheckSpec("eq1.5", check_schroder_catalan_motzkin, "Schroder = Catalan = Motzkin weight relations", ("n_max", "grid")),
        CheckSpec("thm2.1", check_dd_distribution, "same-color dd distribution", _NR + ("oracle_n_max",)),
        CheckSpec("cor2.3", check_schroder_tower_sum, "Schroder tower double sum", ("n_max", "m_max", "grid")),
        CheckSpec("lemma2.2", check_z_tower, "Z_m composition tower", ("m_max", "grid", "order")),
        CheckSpec("eq2.5", check_sr_composition, "S_r composition identity", ("r_range", "order")),
        CheckSpec("cor3.2", check_points_alternating, "alternating points sum", _NR),
        CheckSpec("cor3.3", check_points_weighted_alternating, "level-weighted points sum", _NR),
        CheckSpec("cor4.2", check_usteps_against_sr, "u-steps against S_l", _NR),
        CheckSpec("cor4.3", check_usteps_against_sr_differences, "u-steps against S_{l+1}-S_l", _NR),
        CheckSpec("cor4.4", check_usteps_weighted_alternating, "level-weighted u-steps sum", _NR),
        CheckSpec("cor5.2", check_peaks_against_sr, "peaks against S_l and differences", _NR),
        CheckSpec("cor5.3", check_peaks_binomial_transform, "peaks binomial transform", _NR + ("m_grid",)),
        CheckSpec("thm6.2", check_udu_first_moment, "udu first moment", _NR),
        CheckSpec("recurrences", check_recurrences, "recurrences = closed forms", _NR),
        CheckSpec("ab-arrays", check_weighted_arrays, "(a, b)-weighted arrays", _NR + ("grid",)),
    ]
}


def run_all(**kwargs) -> list[CheckReport]:
    """Run every registered check; reports come back ordered by check id."""
    return [CHECKS[cid].run(**kwargs) for cid in sorted(CHECKS)]


def reports_to_json(reports: list[CheckReport], with_instances: bool = False) -> str:
    return json.dumps(
        {
            "status": "pass" if all(r.passed for r in reports) else "fail",
            "checks": [r.to_dict(with_instances) for r in sorted(reports, key=lambda r: r.check_id)],
        },
        indent=2,
    )
