"""One-way ANOVA and Kruskal-Wallis with self-contained p-values."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Sequence

_EPS = 1e-16
_TINY = 1e-300
_MAX_ITER = 10_000


class StatsError(ValueError):
    pass


def _betacf(a: float, b: float, x: float) -> float:
    # modified Lentz evaluation of the incomplete beta continued fraction
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    d = _TINY if abs(d) < _TINY else d
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = _TINY if abs(d) < _TINY else d
        c = 1.0 + aa / c
        c = _TINY if abs(c) < _TINY else c
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = _TINY if abs(d) < _TINY else d
        c = 1.0 + aa / c
        c = _TINY if abs(c) < _TINY else c
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise StatsError("incomplete beta continued fraction did not converge")


def betainc(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta I_x(a, b)."""
    if a <= 0 or b <= 0:
        raise StatsError("a and b must be positive")
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def gammainc_upper(s: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(s, x)."""
    if s <= 0:
        raise StatsError("s must be positive")
    if x <= 0.0:
        return 1.0
    ln_front = -x + s * math.log(x) - math.lgamma(s)
    if x < s + 1.0:
        term = total = 1.0 / s
        ap = s
        for _ in range(_MAX_ITER):
            ap += 1.0
            term *= x / ap
            total += term
            if abs(term) < abs(total) * _EPS:
                return max(0.0, 1.0 - total * math.exp(ln_front))
        raise StatsError("incomplete gamma series did not converge")
    b = x + 1.0 - s
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER + 1):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        d = _TINY if abs(d) < _TINY else d
        c = b + an / c
        c = _TINY if abs(c) < _TINY else c
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return math.exp(ln_front) * h
    raise StatsError("incomplete gamma continued fraction did not converge")


def f_sf(f: float, d1: float, d2: float) -> float:
    """Upper tail of the F distribution."""
    if math.isinf(f):
        return 0.0
    if f <= 0.0:
        return 1.0
    return betainc(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f))


def chi2_sf(x: float, df: float) -> float:
    if math.isinf(x):
        return 0.0
    return gammainc_upper(df / 2.0, x / 2.0)


@dataclass(frozen=True)
class AnovaTable:
    ss_columns: float
    ss_error: float
    ss_total: float
    df_columns: int
    df_error: int
    df_total: int
    ms_columns: float
    ms_error: float
    f_stat: float
    p_value: float

    def as_row(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class KruskalTable:
    ss_columns: float
    ss_error: float
    ss_total: float
    df_columns: int
    df_error: int
    df_total: int
    ms_columns: float
    ms_error: float
    h_stat: float
    p_value: float

    def as_row(self) -> dict:
        return asdict(self)


def _validate(groups: Sequence[Sequence[float]]) -> list[list[float]]:
    gs = [[float(v) for v in g] for g in groups]
    if len(gs) < 2:
        raise StatsError("need at least two groups")
    for k, g in enumerate(gs):
        if not g:
            raise StatsError(f"group {k} is empty")
        if not all(math.isfinite(v) for v in g):
            raise StatsError(f"group {k} has non-finite values")
    if sum(len(g) for g in gs) <= len(gs):
        raise StatsError("need more observations than groups")
    return gs


def _decompose(gs: list[list[float]]) -> tuple[float, float, float]:
    pooled = [v for g in gs for v in g]
    grand = math.fsum(pooled) / len(pooled)
    ssb = math.fsum(len(g) * (math.fsum(g) / len(g) - grand) ** 2 for g in gs)
    ssw = math.fsum((v - math.fsum(g) / len(g)) ** 2 for g in gs for v in g)
    sst = math.fsum((v - grand) ** 2 for v in pooled)
    return ssb, ssw, sst


def anova_one_way(groups: Sequence[Sequence[float]]) -> AnovaTable:
    gs = _validate(groups)
    n = sum(len(g) for g in gs)
    dfc, dfe = len(gs) - 1, n - len(gs)
    ssb, ssw, sst = _decompose(gs)
    msb, msw = ssb / dfc, ssw / dfe
    scale = max(sst, _TINY)
    if msw <= 1e-15 * scale:
        f = 0.0 if msb <= 1e-15 * scale else math.inf
    else:
        f = msb / msw
    return AnovaTable(ssb, ssw, sst, dfc, dfe, n - 1, msb, msw, f, f_sf(f, dfc, dfe))


def rankdata(values: Sequence[float]) -> list[float]:
    """Mid-ranks starting at 1."""
    order = sorted(range(len(values)), key=lambda k: values[k])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        mid = (i + j) / 2.0 + 1.0
        for k in range(i, j + 1):
            ranks[order[k]] = mid
        i = j + 1
    return ranks


def kruskal_wallis(groups: Sequence[Sequence[float]]) -> KruskalTable:
    """Rank ANOVA; H = SS_between / (SS_total / (N - 1)), which folds in the tie correction."""
    gs = _validate(groups)
    pooled = [v for g in gs for v in g]
    ranks = rankdata(pooled)
    rgs, pos = [], 0
    for g in gs:
        rgs.append(ranks[pos:pos + len(g)])
        pos += len(g)
    n = len(pooled)
    dfc, dfe = len(gs) - 1, n - len(gs)
    ssb, ssw, sst = _decompose(rgs)
    h = 0.0 if sst <= 0.0 else ssb / (sst / (n - 1))
    return KruskalTable(ssb, ssw, sst, dfc, dfe, n - 1, ssb / dfc, ssw / dfe, h, chi2_sf(h, dfc))
