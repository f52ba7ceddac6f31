"""Log-domain evaluation of local polynomials and the Local Lemma condition.

A local polynomial is a sum of monomials ``Pr(A) * z^|vbl(A)|`` over bad events
``A`` that depend on a fixed variable. If a polynomial ``w`` dominating all of
them satisfies ``w(1/(1-tau0)) <= tau0`` then every bad event can be avoided
simultaneously. The families below are the dominating polynomials for the
simple, arithmetic-progression and b-simple cases; each term stores
``(log probability bound, exponent, log multiplicity)`` so that values of size
``2^(+-n)`` never leave the log domain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Mapping, NamedTuple, Optional, Sequence, Union

LOG2 = math.log(2.0)
NEG_INF = float("-inf")


class ConstantValidityError(ValueError):
    """A numeric constant used in the b-simple families is not valid for (p, K)."""


class Term(NamedTuple):
    log_prob: float
    exponent: int
    log_mult: float

    def log_value(self, log_z: float) -> float:
        return self.log_prob + self.log_mult + self.exponent * log_z


@dataclass(frozen=True)
class MonomialFamily:
    name: str
    terms: tuple[Term, ...]

    def log_value(self, z: float) -> float:
        if not z >= 1.0:
            raise ValueError(f"evaluation point must be >= 1, got {z}")
        return logsumexp([t.log_value(math.log(z)) for t in self.terms])

    def value(self, z: float) -> float:
        return math.exp(self.log_value(z))

    def max_log_prob(self) -> float:
        return max((t.log_prob for t in self.terms), default=NEG_INF)


def logsumexp(xs: Sequence[float]) -> float:
    xs = [x for x in xs if x != NEG_INF]
    for x in xs:
        if math.isnan(x):
            raise ValueError("NaN in log-domain sum")
    if not xs:
        return NEG_INF
    m = max(xs)
    if m == float("inf"):
        return m
    return m + math.log(math.fsum(math.exp(x - m) for x in xs))


@dataclass(frozen=True)
class ParamSet:
    n: int
    p: float
    d: float
    K: int
    tau0: float
    r: int = 2
    b: int = 1
    epsilon: float = 0.1

    def __post_init__(self):
        for name in ("p", "d", "tau0", "epsilon"):
            if math.isnan(getattr(self, name)):
                raise ValueError(f"{name} is NaN")
        if not 0.0 < self.tau0 < 1.0:
            raise ValueError(f"tau0 must lie in (0, 1), got {self.tau0}")
        if self.K < 1:
            raise ValueError(f"K must be >= 1, got {self.K}")
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if self.r < 2:
            raise ValueError(f"r must be >= 2, got {self.r}")
        upper = 0.5 if self.r == 2 else 1.0
        if not 0.0 < self.p < upper:
            raise ValueError(f"p must lie in (0, {upper}), got {self.p}")
        if not self.d > 0:
            raise ValueError(f"d must be positive, got {self.d}")

    @property
    def z0(self) -> float:
        return 1.0 / (1.0 - self.tau0)

    @property
    def log_d(self) -> float:
        return math.log(self.d)

    def with_d(self, d: float) -> "ParamSet":
        return replace(self, d=d)

    @classmethod
    def simple(cls, n: int, d: Optional[float] = None, K: Optional[int] = None) -> "ParamSet":
        """p = ln n / n, tau0 = 1/n, K = ceil(ln n) + 4, d = floor(2^(n-1) / (2e ln n))."""
        ln = math.log(n)
        if d is None:
            d = float(math.floor(2.0 ** (n - 1) / (2 * math.e * ln)))
        if K is None:
            K = math.ceil(ln) + 4
        return cls(n=n, p=ln / n, d=d, K=K, tau0=1.0 / n, r=2, b=1)

    @classmethod
    def vdw(cls, n: int, r: int = 2, d: Optional[float] = None, K: Optional[int] = None) -> "ParamSet":
        """As :meth:`simple` with d = floor(r^(n-1) / (2e ln n))."""
        ln = math.log(n)
        if d is None:
            d = float(math.floor(float(r) ** (n - 1) / (2 * math.e * ln)))
        if K is None:
            K = math.ceil(ln) + 4
        return cls(n=n, p=ln / n, d=d, K=K, tau0=1.0 / n, r=r, b=1)

    @classmethod
    def bsimple(
        cls, n: int, r: int = 2, b: int = 1, epsilon: float = 0.1,
        d: Optional[float] = None, K: Optional[int] = None,
    ) -> "ParamSet":
        """p = ln n / n, tau0 = 1/n, K = floor(ln n), d = r^(n-b) / ((1+eps) e^2 ln n)."""
        ln = math.log(n)
        if d is None:
            d = float(r) ** (n - b) / ((1 + epsilon) * math.e ** 2 * ln)
        if K is None:
            K = math.floor(ln)
        return cls(n=n, p=ln / n, d=d, K=K, tau0=1.0 / n, r=r, b=b, epsilon=epsilon)


@dataclass
class LllReport:
    names: list[str]
    log_values: list[float]
    log_total: float
    tau0: float
    z0: float
    passed: bool
    params: Optional[dict] = field(default=None)

    @property
    def values(self) -> list[float]:
        return [math.exp(x) for x in self.log_values]

    @property
    def total(self) -> float:
        return math.exp(self.log_total)

    def value_of(self, name: str) -> float:
        return math.exp(self.log_values[self.names.index(name)])

    def to_dict(self) -> dict:
        return {
            "families": [
                {"name": nm, "log_value": lv, "value": math.exp(lv), "below_tau0": lv <= math.log(self.tau0)}
                for nm, lv in zip(self.names, self.log_values)
            ],
            "log_total": self.log_total,
            "total": self.total,
            "tau0": self.tau0,
            "z0": self.z0,
            "verdict": "pass" if self.passed else "fail",
            "params": self.params,
        }


def lll_condition(families: Sequence[MonomialFamily], tau0: float, params: Optional[ParamSet] = None) -> LllReport:
    if math.isnan(tau0) or not 0.0 < tau0 < 1.0:
        raise ValueError(f"tau0 must lie in (0, 1), got {tau0}")
    z0 = 1.0 / (1.0 - tau0)
    logs = [f.log_value(z0) for f in families]
    total = logsumexp(logs)
    return LllReport(
        names=[f.name for f in families],
        log_values=logs,
        log_total=total,
        tau0=tau0,
        z0=z0,
        passed=total <= math.log(tau0),
        params=None if params is None else params.__dict__.copy(),
    )


# ---------------------------------------------------------------------------
# families

def _w_d(P: ParamSet) -> MonomialFamily:
    return MonomialFamily("w_D", (Term(P.n * math.log(P.p), P.n, P.log_d),))


def _log_chains(P: ParamSet, k: int) -> float:
    """log of d k (nd)^(k-1)."""
    return P.log_d + math.log(k) + (k - 1) * (math.log(P.n) + P.log_d)


def families_simple2(P: ParamSet) -> list[MonomialFamily]:
    """w_D, w_CC and w_AC for two-coloring simple n-uniform hypergraphs."""
    if P.r != 2:
        raise ValueError("the simple-case families are for r = 2")
    n, p = P.n, P.p
    lp2 = math.log(p / 2)
    cc = []
    for k in range(1, P.K + 1):
        lprob = LOG2 + (k - 1) * lp2 + k * (n - 2) * (math.log1p(-p / k) - LOG2)
        cc.append(Term(lprob, k * n, _log_chains(P, k)))
    ac = []
    for k in range(3, P.K + 1):
        lprob = LOG2 + (k - 1) * lp2 + k * (n - 2) * (math.log1p(p / k) - LOG2)
        lmult = (k - 1) * P.log_d + k * math.log(n) + 2 * math.log(k)
        ac.append(Term(lprob, k * n, lmult))
    return [_w_d(P), MonomialFamily("w_CC", tuple(cc)), MonomialFamily("w_AC", tuple(ac))]


UNK = Union[Callable[..., float], Sequence[float], Mapping[tuple[int, int], float]]


def polynomial(coeffs: Union[Sequence[float], Mapping[tuple[int, int], float]]) -> Callable[..., float]:
    """Build u(k) from ``[c0, c1, ...]`` or u(n, k) from ``{(i, j): c}`` meaning sum c n^i k^j."""
    if isinstance(coeffs, Mapping):
        items = dict(coeffs)
        return lambda n, k: sum(c * n ** i * k ** j for (i, j), c in items.items())
    cs = list(coeffs)
    return lambda k: sum(c * k ** i for i, c in enumerate(cs))


def _as_callable(u: Optional[UNK]) -> Optional[Callable[..., float]]:
    if u is None or callable(u):
        return u
    return polynomial(u)


def _log_u(value: float, where: str) -> float:
    if value < 0 or math.isnan(value):
        raise ValueError(f"u must be nonnegative, got {value} at {where}")
    return math.log(value) if value > 0 else NEG_INF


def families_vdw(P: ParamSet, u: Optional[UNK] = None, include_ge2: bool = False) -> list[MonomialFamily]:
    """w_D, w_CC, w_AC(1) and optionally w_AC(>=2) for arithmetic-progression hypergraphs.

    ``u(n, k)`` bounds the cycles whose end edges share two or more vertices; it
    is not known in closed form and has to be supplied when ``include_ge2``.
    """
    n, p, r = P.n, P.p, P.r
    lr = math.log(r)
    lpr = math.log(p / r)
    cc = []
    for k in range(1, P.K + 1):
        lprob = lr + (k - 1) * lpr + k * (n - 2) * (math.log1p(-p / k) - lr)
        cc.append(Term(lprob, k * n, _log_chains(P, k)))
    ac1 = []
    for k in range(3, P.K + 1):
        lprob = lr + (k - 1) * lpr + k * (n - 2) * (math.log1p(p / k) - lr)
        lmult = (k - 1) * P.log_d + (k + 2) * math.log(n) + 2 * math.log(k)
        ac1.append(Term(lprob, k * n, lmult))
    out = [_w_d(P), MonomialFamily("w_CC", tuple(cc)), MonomialFamily("w_AC1", tuple(ac1))]
    if include_ge2:
        uf = _as_callable(u)
        if uf is None:
            raise ValueError("w_AC(>=2) needs the polynomial u(n, k)")
        ac2 = []
        for k in range(3, P.K + 1):
            lprob = lr + (k - 2) * lpr + (k - 1) * (n - 2) * (math.log1p(p / (k - 1)) - lr)
            lmult = (k - 2) * (math.log(n) + P.log_d) + _log_u(uf(n, k), f"k={k}")
            ac2.append(Term(lprob, k * n, lmult))
        out.append(MonomialFamily("w_AC2", tuple(ac2)))
    return out


def dc_constant_ok(p: float, K: int) -> bool:
    """((1+p)/(1-p/k))^(k^2) < 6 for every k = 1..K-1."""
    return all(k * k * (math.log1p(p) - math.log1p(-p / k)) < math.log(6) for k in range(1, K))


def di_constant_ok(p: float, K: int) -> bool:
    """(1+p)^(K^2) < 4."""
    return K * K * math.log1p(p) < math.log(4)


def families_bsimple(
    P: ParamSet, u: Optional[UNK] = None, include_u: bool = False, fallback: bool = False
) -> list[MonomialFamily]:
    """w_D, w_DC, w_DI and optionally w_NC, w_NI for r-coloring b-simple hypergraphs.

    The constants 6 (in w_DC) and 4 (in w_DI) are only used when the
    inequalities that justify them hold at (p, K). Otherwise a
    :class:`ConstantValidityError` is raised, or with ``fallback=True`` the exact
    factors ``((1+p)/(1-p/k))^(k^2)`` and ``(1+p)^(K^2)`` are used instead.
    """
    n, p, r, b, K = P.n, P.p, P.r, P.b, P.K
    if K < 2:
        raise ValueError(f"b-simple families need K >= 2, got K={K}")
    if b < 1:
        raise ValueError(f"b must be >= 1, got {b}")
    lr = math.log(r)
    lpr = math.log(p / r)
    dc_ok, di_ok = dc_constant_ok(p, K), di_constant_ok(p, K)
    if not fallback and not (dc_ok and di_ok):
        which = [nm for nm, ok in (("((1+p)/(1-p/k))^(k^2) < 6", dc_ok), ("(1+p)^(K^2) < 4", di_ok)) if not ok]
        raise ConstantValidityError(f"p={p}, K={K}: {', '.join(which)} fails")
    dc = []
    for k in range(1, K):
        const = math.log(6) if dc_ok else k * k * (math.log1p(p) - math.log1p(-p / k))
        lprob = const + lr + (k - 1) * lpr + (n - b - 1) * k * (math.log1p(-p / k) - lr)
        dc.append(Term(lprob, n * k, _log_chains(P, k)))
    const = math.log(4) if di_ok else K * K * math.log1p(p)
    di = Term(const + lr + (K - 1) * lpr - (n - b - 1) * K * lr, n * K, _log_chains(P, K))
    out = [_w_d(P), MonomialFamily("w_DC", tuple(dc)), MonomialFamily("w_DI", (di,))]
    if include_u:
        uf = _as_callable(u)
        if uf is None:
            raise ValueError("w_NC and w_NI need the polynomial u(k)")

        def nterm(k: int) -> Term:
            lprob = lr + (k - 1) * lpr - (n - K * b) * k * lr
            lmult = (k - 1) * P.log_d + (k + b) * math.log(n) + _log_u(uf(k), f"k={k}")
            return Term(lprob, n * k, lmult)

        out.append(MonomialFamily("w_NC", tuple(nterm(k) for k in range(3, K))))
        out.append(MonomialFamily("w_NI", (nterm(K),)))
    return out


FAMILY_BUILDERS: dict[str, Callable[[ParamSet], list[MonomialFamily]]] = {
    "simple2": families_simple2,
    "vdw": families_vdw,
    "bsimple": families_bsimple,
}


# ---------------------------------------------------------------------------
# closed-form probability bounds

class ChainBounds(NamedTuple):
    alternating: float
    conflicting: float
    complete: float


def prob_bounds_chain(m: int, k: int, r: int, p: float) -> ChainBounds:
    """Bounds for an (m+2)-uniform disjoint chain of sets (or cycle with |s_1 ∩ s_k| = 1)."""
    if m < 0 or k < 1:
        raise ValueError(f"need m >= 0 and k >= 1, got m={m}, k={k}")
    head = r * (p / r) ** (k - 1)
    return ChainBounds(
        alternating=head * ((1 + p / k) / r) ** (m * k),
        conflicting=head * (1.0 / r) ** (m * k),
        complete=head * ((1 - p / k) / r) ** (m * k),
    )


class BDisjointBounds(NamedTuple):
    conflicting: float
    complete: float


def prob_bounds_bdisjoint(n: int, b: int, k: int, r: int, p: float) -> BDisjointBounds:
    """Bounds for an n-uniform b-disjoint chain of k edges; needs n - b - k - 2 > k."""
    if not n - b - k - 2 > k:
        raise ValueError(f"hypothesis n - b - k - 2 > k fails for n={n}, b={b}, k={k}")
    head = r * (p / r) ** (k - 1)
    m = (n - b - 1) * k
    return BDisjointBounds(
        conflicting=head * (1.0 / r) ** m * (1 + p) ** (k * k),
        complete=head * ((1 - p / k) / r) ** m * ((1 + p) / (1 - p / k)) ** (k * k),
    )


# ---------------------------------------------------------------------------
# threshold search

def max_degree_threshold(
    P: ParamSet,
    family_builder: Callable[[ParamSet], Sequence[MonomialFamily]],
    rel_tol: float = 1e-6,
) -> float:
    """Largest d (to relative precision ``rel_tol``) for which the condition holds.

    Every multiplicity is a positive power of d, so the total is increasing in d
    and bisection on log d is valid.
    """

    def passes(log_d: float) -> bool:
        Q = P.with_d(math.exp(log_d))
        return lll_condition(family_builder(Q), Q.tau0).passed

    lo = 0.0
    if not passes(lo):
        raise ValueError("the condition fails already at d = 1")
    step = 1.0
    hi = lo + step
    while passes(hi):
        lo = hi
        step *= 2
        hi = lo + step
        if math.exp(hi) == float("inf"):
            raise OverflowError("threshold exceeds floating-point range")
    tol = math.log1p(rel_tol)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if passes(mid):
            lo = mid
        else:
            hi = mid
    return math.exp(lo)
