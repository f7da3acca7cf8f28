"""Lattice paths, exhaustive enumerators and brute-force oracles.

Enumeration order is depth-first lexicographic in (step kind, color) with
``UP < DOWN < HORIZ < DOUBLE`` and colors ascending, so streams are stable.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .exact import as_fraction, binom
from .kernel import dd_histogram

CAP_ENV = "CDYCK_ORACLE_CAP"


class Kind(IntEnum):
    UP = 0
    DOWN = 1
    HORIZ = 2
    DOUBLE = 3


_RISE = {Kind.UP: 1, Kind.DOWN: -1, Kind.HORIZ: 0, Kind.DOUBLE: 0}
_RUN = {Kind.UP: 1, Kind.DOWN: 1, Kind.HORIZ: 1, Kind.DOUBLE: 2}


class Family(Enum):
    DYCK = "dyck"
    MOTZKIN = "motzkin"
    SCHRODER = "schroder"


_ALLOWED = {
    Family.DYCK: {Kind.UP, Kind.DOWN},
    Family.MOTZKIN: {Kind.UP, Kind.DOWN, Kind.HORIZ},
    Family.SCHRODER: {Kind.UP, Kind.DOWN, Kind.DOUBLE},
}


@dataclass(frozen=True, order=True)
class Step:
    kind: Kind
    color: int = 0  # 0 means uncolored

    def __post_init__(self):
        if self.color < 0:
            raise ValueError("color must be >= 0")
        if self.color and self.kind is not Kind.DOWN:
            raise ValueError("only down steps carry a color")

    def __str__(self):
        s = "udhH"[self.kind]
        return f"{s}{self.color}" if self.color else s


U = Step(Kind.UP)
H = Step(Kind.HORIZ)
HH = Step(Kind.DOUBLE)


def D(color: int = 0) -> Step:
    return Step(Kind.DOWN, color)


@dataclass(frozen=True)
class Path:
    """An immutable lattice path.

    ``colors`` is the palette size r for colored Dyck paths, 0 when uncolored.
    """

    steps: tuple[Step, ...]
    family: Family = Family.DYCK
    colors: int = 0

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        allowed = _ALLOWED[self.family]
        height = 0
        for step in self.steps:
            if step.kind not in allowed:
                raise ValueError(f"{step.kind.name} step not allowed in {self.family.value} path")
            if step.kind is Kind.DOWN:
                if self.colors and not 1 <= step.color <= self.colors:
                    raise ValueError(f"color {step.color} outside [1..{self.colors}]")
                if not self.colors and step.color:
                    raise ValueError("colored step in an uncolored path")
            height += _RISE[step.kind]
            if height < 0:
                raise ValueError("path goes below the axis")
        if height != 0:
            raise ValueError("path does not end on the axis")

    @classmethod
    def from_word(cls, word: str, colors=None, r: int = 0, family: Family = Family.DYCK) -> "Path":
        """Build from a word over ``u d h H``; ``colors`` labels the d's in order."""
        colors = list(colors or [])
        steps = []
        for ch in word:
            if ch == "u":
                steps.append(U)
            elif ch == "d":
                steps.append(D(colors.pop(0) if colors else 0))
            elif ch == "h":
                steps.append(H)
            elif ch == "H":
                steps.append(HH)
            else:
                raise ValueError(f"bad step letter {ch!r}")
        if colors:
            raise ValueError("more colors than down steps")
        return cls(tuple(steps), family, r)

    @property
    def length(self) -> int:
        return sum(_RUN[s.kind] for s in self.steps)

    def heights(self) -> list[int]:
        """Ordinates of the path's points, starting at the origin."""
        out = [0]
        for step in self.steps:
            out.append(out[-1] + _RISE[step.kind])
        return out

    def word(self) -> str:
        return "".join("udhH"[s.kind] for s in self.steps)

    def __str__(self):
        return " ".join(map(str, self.steps))


# -- statistics ---------------------------------------------------------------


@dataclass(frozen=True)
class StatKind:
    level: int = 0

    def __post_init__(self):
        if self.level < 0:
            raise ValueError("level must be >= 0")


@dataclass(frozen=True)
class PointsAtLevel(StatKind):
    """Points with ordinate ``level``."""


@dataclass(frozen=True)
class UStepsAtLevel(StatKind):
    """Up steps whose endpoint has ordinate ``level``."""


@dataclass(frozen=True)
class PeaksAtLevel(StatKind):
    """``ud`` occurrences whose apex has ordinate ``level``."""


@dataclass(frozen=True)
class UduCount(StatKind):
    """Number of ``udu`` windows; ``exactly`` is the oracle's target value."""

    exactly: int | None = None


@dataclass(frozen=True)
class SameColorDDCount(StatKind):
    """Adjacent down-step pairs with equal colors; ``exactly`` as for UduCount."""

    exactly: int | None = None


def stat_value(p: Path, s: StatKind) -> int:
    kinds = [step.kind for step in p.steps]
    if isinstance(s, PointsAtLevel):
        return sum(1 for h in p.heights() if h == s.level)
    if isinstance(s, UStepsAtLevel):
        hs = p.heights()
        return sum(1 for i, k in enumerate(kinds) if k is Kind.UP and hs[i + 1] == s.level)
    if isinstance(s, PeaksAtLevel):
        hs = p.heights()
        return sum(
            1
            for i in range(len(kinds) - 1)
            if kinds[i] is Kind.UP and kinds[i + 1] is Kind.DOWN and hs[i + 1] == s.level
        )
    if isinstance(s, UduCount):
        return sum(
            1
            for i in range(len(kinds) - 2)
            if (kinds[i], kinds[i + 1], kinds[i + 2]) == (Kind.UP, Kind.DOWN, Kind.UP)
        )
    if isinstance(s, SameColorDDCount):
        if not p.colors:
            raise ValueError("SameColorDDCount needs a colored path")
        steps = p.steps
        return sum(
            1
            for i in range(len(steps) - 1)
            if steps[i].kind is Kind.DOWN
            and steps[i + 1].kind is Kind.DOWN
            and steps[i].color == steps[i + 1].color
        )
    raise TypeError(f"unknown statistic {s!r}")


# -- enumeration --------------------------------------------------------------


class OracleCapError(RuntimeError):
    """Raised when an enumeration would exceed the configured size cap."""

    def __init__(self, n: int, r: int, cap: int, estimate: int):
        self.n, self.r, self.cap, self.estimate = n, r, cap, estimate
        super().__init__(
            f"n={n} exceeds oracle cap {cap} for r={r} "
            f"(would enumerate {estimate} colored paths); raise the cap explicitly"
        )


def catalan(n: int) -> int:
    return binom(2 * n, n) // (n + 1)


def default_cap(r: int = 1) -> int:
    env = os.environ.get(CAP_ENV)
    if env:
        return int(env)
    return 8 if r <= 3 else 7


def check_cap(n: int, r: int = 1, cap: int | None = None) -> None:
    cap = default_cap(r) if cap is None else cap
    if n > cap:
        raise OracleCapError(n, r, cap, catalan(n) * r**n)


def _walk(n_len: int, family: Family) -> Iterator[tuple[Kind, ...]]:
    """Uncolored step-kind words of x-length ``n_len``, in lexicographic order."""
    kinds = sorted(_ALLOWED[family])
    word: list[Kind] = []

    def rec(x: int, h: int):
        if x == n_len:
            if h == 0:
                yield tuple(word)
            return
        for k in kinds:
            x2, h2 = x + _RUN[k], h + _RISE[k]
            if h2 < 0 or x2 > n_len or h2 > n_len - x2:
                continue
            word.append(k)
            yield from rec(x2, h2)
            word.pop()

    yield from rec(0, 0)


def dyck_words(n: int) -> Iterator[tuple[Kind, ...]]:
    return _walk(2 * n, Family.DYCK)


def enumerate_paths(family: Family, n: int, cap: int | None = None) -> Iterator[Path]:
    """Uncolored paths: Dyck/Schroder of length 2n, Motzkin of length n."""
    check_cap(n, 1, cap)
    n_len = n if family is Family.MOTZKIN else 2 * n
    for word in _walk(n_len, family):
        yield Path(tuple(Step(k) for k in word), family)


def enumerate_colored_dyck(n: int, r: int, cap: int | None = None) -> Iterator[Path]:
    """Every r-colored Dyck path of length 2n, each exactly once."""
    if r < 1:
        raise ValueError("r must be >= 1")
    check_cap(n, r, cap)
    steps: list[Step] = []

    def rec(ups: int, downs: int):
        if downs == n:
            yield Path(tuple(steps), Family.DYCK, r)
            return
        if ups < n:
            steps.append(U)
            yield from rec(ups + 1, downs)
            steps.pop()
        if downs < ups:
            for c in range(1, r + 1):
                steps.append(D(c))
                yield from rec(ups, downs + 1)
                steps.pop()

    yield from rec(0, 0)


# -- aggregate oracle ---------------------------------------------------------


@dataclass
class OracleScan:
    """Aggregates over all r-colored Dyck paths of length 2n.

    ``dd_hist[k]`` counts paths with exactly k same-color dd pairs. The
    remaining fields aggregate over the paths with none (the set A_{n,0}):
    ``points[l]``, ``usteps[l]`` and ``peaks[l]`` are totals at geometric level
    l, ``udu_hist[c]`` counts paths with exactly c udu windows.
    """

    n: int
    r: int
    total: int = 0
    dd_hist: list[int] = field(default_factory=list)
    points: list[int] = field(default_factory=list)
    usteps: list[int] = field(default_factory=list)
    peaks: list[int] = field(default_factory=list)
    udu_hist: list[int] = field(default_factory=list)

    @property
    def valid(self) -> int:
        return self.dd_hist[0]

    def merge(self, other: "OracleScan") -> None:
        self.total += other.total
        for name in ("dd_hist", "points", "usteps", "peaks", "udu_hist"):
            mine, theirs = getattr(self, name), getattr(other, name)
            for i, v in enumerate(theirs):
                mine[i] += v


def _empty_scan(n: int, r: int) -> OracleScan:
    size = n + 1
    return OracleScan(n, r, 0, [0] * size, [0] * size, [0] * size, [0] * size, [0] * size)


def _scan_shapes(n: int, r: int, shapes: list[tuple[Kind, ...]]) -> OracleScan:
    out = _empty_scan(n, r)
    for word in shapes:
        path = Path(tuple(Step(k) for k in word))
        downs = [i for i, k in enumerate(word) if k is Kind.DOWN]
        rank = {pos: j for j, pos in enumerate(downs)}
        pairs = [(rank[i], rank[i + 1]) for i in downs if i + 1 in rank]
        hist = dd_histogram(n, r, pairs)
        out.total += sum(hist)
        for k, v in enumerate(hist):
            out.dd_hist[k] += v
        valid = hist[0]
        if not valid:
            continue
        for lvl in range(n + 1):
            out.points[lvl] += valid * stat_value(path, PointsAtLevel(lvl))
            out.usteps[lvl] += valid * stat_value(path, UStepsAtLevel(lvl))
            out.peaks[lvl] += valid * stat_value(path, PeaksAtLevel(lvl))
        out.udu_hist[stat_value(path, UduCount())] += valid
    return out


def _scan_job(args):
    return _scan_shapes(*args)


@lru_cache(maxsize=64)
def _scan_cached(n: int, r: int, workers: int) -> OracleScan:
    shapes = list(dyck_words(n))
    if workers <= 1 or len(shapes) < 2 * workers:
        return _scan_shapes(n, r, shapes)
    chunks = [shapes[i::workers] for i in range(workers)]
    out = _empty_scan(n, r)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_scan_job, [(n, r, c) for c in chunks]):
            out.merge(part)
    return out


def clear_oracle_cache() -> None:
    """Forget memoized scans (used by timing runs)."""
    _scan_cached.cache_clear()


def oracle_scan(n: int, r: int, cap: int | None = None, workers: int = 1) -> OracleScan:
    """Brute-force aggregates for r-colored Dyck paths of length 2n.

    With ``workers > 1`` the Dyck shapes are sharded across processes; the
    result does not depend on the sharding.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    if n < 0:
        raise ValueError("n must be >= 0")
    check_cap(n, r, cap)
    return _scan_cached(n, r, workers)


def oracle_total(stat: StatKind, n: int, r: int, cap: int | None = None, workers: int = 1) -> int:
    """Total of ``stat`` in the indexing used by the count tables.

    Points: summed over A_{n,0}. Up steps and peaks at geometric level L:
    summed over A_{n+1,0}, so ``UStepsAtLevel(l + 1)`` at ``n`` is U_{n,l}.
    UduCount(exactly=l): number of paths in A_{n,0} with exactly l udu's.
    SameColorDDCount(exactly=k): number of colored paths with exactly k
    same-color dd pairs (A_{n,k}).
    """
    if isinstance(stat, PointsAtLevel):
        scan = oracle_scan(n, r, cap, workers)
        return scan.points[stat.level] if stat.level <= n else 0
    if isinstance(stat, (UStepsAtLevel, PeaksAtLevel)):
        scan = oracle_scan(n + 1, r, cap, workers)
        values = scan.usteps if isinstance(stat, UStepsAtLevel) else scan.peaks
        return values[stat.level] if stat.level <= n + 1 else 0
    if isinstance(stat, (UduCount, SameColorDDCount)):
        if stat.exactly is None:
            raise ValueError(f"{type(stat).__name__} oracle needs exactly=<target>")
        scan = oracle_scan(n, r, cap, workers)
        values = scan.udu_hist if isinstance(stat, UduCount) else scan.dd_hist
        return values[stat.exactly] if 0 <= stat.exactly < len(values) else 0
    raise TypeError(f"unknown statistic {stat!r}")


def path_weight(p: Path, a, b) -> Fraction:
    """Product of step weights for the (a, b)-weighted family of ``p``."""
    a, b = as_fraction(a), as_fraction(b)
    w = Fraction(1)
    kinds = [s.kind for s in p.steps]
    for i, k in enumerate(kinds):
        if k is Kind.DOWN:
            if p.family is Family.DYCK and i > 0 and kinds[i - 1] is Kind.UP:
                w *= a
            else:
                w *= b
        elif k in (Kind.HORIZ, Kind.DOUBLE):
            w *= a
    return w


def weighted_count(family: Family | str, n: int, a, b, cap: int | None = None) -> Fraction:
    """Sum of (a, b)-weights over all paths of the family (length 2n; n for Motzkin)."""
    family = Family(family) if isinstance(family, str) else family
    return sum((path_weight(p, a, b) for p in enumerate_paths(family, n, cap)), Fraction(0))
