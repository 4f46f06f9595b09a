"""Irregular D-GLDPC ensembles and their derived parameters.

Degree fractions are exact rationals throughout; floating point first
appears in the coefficients of the ``Q1``/``Q2``/``P`` polynomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .binary_codes import (
    BivariateEnumerator,
    ComponentCode,
    WeightEnumerator,
    repetition_code,
    spc_code,
)
from .errors import NotApplicableError, RealizabilityError, SpecError


def as_fraction(value, what: str = "value") -> Fraction:
    """Exact rational from an int, Fraction or string such as ``"7/15"``.

    Floats are accepted only when they are exactly representable as short
    decimals; ``0.1`` becomes ``1/10``.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise SpecError(f"{what}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise SpecError(f"{what}: cannot parse rational {value!r}") from exc
    raise SpecError(f"{what}: expected a rational, got {type(value).__name__}")


@dataclass(frozen=True)
class VNType:
    code: ComponentCode
    fraction: Fraction  # edge fraction lambda_t
    id: str = ""


@dataclass(frozen=True)
class CNType:
    code: ComponentCode
    fraction: Fraction  # edge fraction rho_t
    id: str = ""


def _merge(types, cls, role):
    merged: dict = {}
    order = []
    for idx, t in enumerate(types):
        frac = as_fraction(t.fraction, f"{role}[{idx}] fraction")
        if not 0 < frac <= 1:
            raise SpecError(f"{role}[{idx}] fraction {frac} is not in (0, 1]")
        key = t.code.key
        if key in merged:
            prev = merged[key]
            merged[key] = cls(prev.code, prev.fraction + frac, prev.id)
        else:
            merged[key] = cls(t.code, frac, t.id or str(idx + 1))
            order.append(key)
    out = tuple(merged[k] for k in order)
    total = sum((t.fraction for t in out), Fraction(0))
    if total != 1:
        raise SpecError(f"{role} fractions sum to {total}, not 1")
    return out


@dataclass(frozen=True)
class Ensemble:
    """Irregular D-GLDPC ensemble given by edge fractions per node type.

    Types with identical generator matrices (same role) are merged with
    their fractions summed, since the representation is what identifies a
    type.
    """

    vn_types: tuple[VNType, ...]
    cn_types: tuple[CNType, ...]
    name: str = ""

    def __post_init__(self):
        if not self.vn_types:
            raise SpecError("ensemble needs at least one variable-node type")
        if not self.cn_types:
            raise SpecError("ensemble needs at least one check-node type")
        object.__setattr__(self, "vn_types", _merge(self.vn_types, VNType, "vn_types"))
        object.__setattr__(self, "cn_types", _merge(self.cn_types, CNType, "cn_types"))

    @classmethod
    def ldpc(cls, lam: Mapping[int, object], rho: Mapping[int, object], name: str = "") -> Ensemble:
        """LDPC ensemble from ``{degree: edge fraction}`` maps.

        ``lam`` and ``rho`` use node degrees, so ``lambda(x) = x^2`` is ``{3: 1}``.
        """
        vns = [VNType(repetition_code(d), as_fraction(f), str(d)) for d, f in sorted(lam.items())]
        cns = [CNType(spc_code(d), as_fraction(f), str(d)) for d, f in sorted(rho.items())]
        return cls(tuple(vns), tuple(cns), name)

    @property
    def lambdas(self) -> tuple[Fraction, ...]:
        return tuple(t.fraction for t in self.vn_types)

    @property
    def rhos(self) -> tuple[Fraction, ...]:
        return tuple(t.fraction for t in self.cn_types)

    @property
    def int_lambda(self) -> Fraction:
        return sum((t.fraction / t.code.length for t in self.vn_types), Fraction(0))

    @property
    def int_rho(self) -> Fraction:
        return sum((t.fraction / t.code.length for t in self.cn_types), Fraction(0))


@dataclass(frozen=True)
class RealPolynomial:
    """Polynomial with real coefficients, stored sparsely by exponent."""

    terms: Mapping[int, float] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", {int(e): float(c) for e, c in sorted(dict(self.terms).items()) if c})

    def __call__(self, x: float) -> float:
        return math.fsum(c * x**e for e, c in self.terms.items())

    def derivative(self) -> RealPolynomial:
        return RealPolynomial({e - 1: e * c for e, c in self.terms.items() if e})

    @property
    def degree(self) -> int:
        return max(self.terms, default=0)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def all_positive(self) -> bool:
        return bool(self.terms) and all(c > 0 for c in self.terms.values())


@dataclass(frozen=True)
class DominantSet:
    T: Fraction
    Y_v: frozenset[int]
    P: Mapping[int, tuple[tuple[int, int], ...]]
    chi: Fraction | None  # None when every point attains T

    def pairs(self) -> set[tuple[int, int]]:
        return {pair for pts in self.P.values() for pair in pts}


@dataclass(frozen=True)
class DerivedParams:
    """Every ensemble-level quantity used by the growth-rate analysis.

    Type indices are 0-based positions in ``Ensemble.vn_types`` /
    ``Ensemble.cn_types``.  With ``stopping=True`` the stopping-set
    enumerators replace the weight enumerators, and ``r``/``p`` etc. are the
    smallest local stopping-set sizes.
    """

    ensemble: Ensemble
    stopping: bool
    vn_enums: tuple[BivariateEnumerator, ...]
    cn_enums: tuple[WeightEnumerator, ...]
    lambdas: tuple[Fraction, ...]
    rhos: tuple[Fraction, ...]
    q: tuple[int, ...]
    k: tuple[int, ...]
    s: tuple[int, ...]
    h: tuple[int, ...]
    int_lambda: Fraction
    int_rho: Fraction
    delta: tuple[Fraction, ...]
    gamma: tuple[Fraction, ...]
    edges_per_n: Fraction
    cns_per_n: Fraction
    codeword_len_per_n: Fraction
    checks_per_n: Fraction
    design_rate: Fraction
    r_t: tuple[int, ...]
    p_t: tuple[int, ...]
    r: int
    r_bar: int | None
    p: int
    p_bar: int | None
    psi: Fraction
    C: Fraction
    V: Fraction | None
    X_c: frozenset[int]
    X_v: frozenset[int]
    U: tuple[tuple[int, ...], ...]
    S_minus: tuple[tuple[tuple[int, int], ...], ...]
    dominant: DominantSet | None
    issues: tuple[str, ...] = ()

    @property
    def expansion_applicable(self) -> bool:
        return self.dominant is not None

    @property
    def T(self) -> Fraction:
        return self._dom().T

    @property
    def Y_v(self) -> frozenset[int]:
        return self._dom().Y_v

    @property
    def P_t(self) -> Mapping[int, tuple[tuple[int, int], ...]]:
        return self._dom().P

    @property
    def chi(self) -> Fraction | None:
        return self._dom().chi

    def _dom(self) -> DominantSet:
        if self.dominant is None:
            raise NotApplicableError("growth-rate expansion undefined: " + "; ".join(self.issues))
        return self.dominant

    @property
    def cn_counts_per_n(self) -> tuple[Fraction, ...]:
        """Number of type-t check nodes per variable node."""
        return tuple(self.cns_per_n * g for g in self.gamma)

    @property
    def rp2(self) -> bool:
        return self.r == 2 and self.p == 2


def _enumerators(ens: Ensemble, stopping: bool):
    if stopping:
        vn = tuple(t.code.vn_stopping_enum for t in ens.vn_types)
        cn = tuple(t.code.cn_stopping_enum for t in ens.cn_types)
    else:
        vn = tuple(t.code.io_enum for t in ens.vn_types)
        cn = tuple(t.code.weight_enum for t in ens.cn_types)
    return vn, cn


def derive(ensemble: Ensemble, stopping: bool = False) -> DerivedParams:
    """Compute all derived parameters of an ensemble in exact arithmetic."""
    ens = ensemble
    vn_enums, cn_enums = _enumerators(ens, stopping)
    lambdas, rhos = ens.lambdas, ens.rhos
    q = tuple(t.code.length for t in ens.vn_types)
    k = tuple(t.code.dimension for t in ens.vn_types)
    s = tuple(t.code.length for t in ens.cn_types)
    h = tuple(t.code.dimension for t in ens.cn_types)

    int_lambda = ens.int_lambda
    int_rho = ens.int_rho
    delta = tuple(lam / qt / int_lambda for lam, qt in zip(lambdas, q))
    gamma = tuple(rho / st / int_rho for rho, st in zip(rhos, s))
    edges_per_n = 1 / int_lambda
    cns_per_n = int_rho / int_lambda
    codeword_len_per_n = edges_per_n * sum((lam * kt / qt for lam, kt, qt in zip(lambdas, k, q)), Fraction(0))
    checks_per_n = edges_per_n * sum((rho * (st - ht) / st for rho, st, ht in zip(rhos, s, h)), Fraction(0))
    vn_rate = sum((lam * Fraction(kt, qt) for lam, kt, qt in zip(lambdas, k, q)), Fraction(0))
    cn_loss = sum((rho * (1 - Fraction(ht, st)) for rho, st, ht in zip(rhos, s, h)), Fraction(0))
    design_rate = 1 - cn_loss / vn_rate

    issues = []
    U = tuple(tuple(a.support(include_zero=True)) for a in cn_enums)
    S_minus = tuple(tuple(b.support(include_zero=False)) for b in vn_enums)
    for idx, pts in enumerate(S_minus):
        if not pts:
            raise SpecError(f"variable-node type {ens.vn_types[idx].id} has no nonzero local codeword")
    r_t = tuple(a.min_nonzero_weight() for a in cn_enums)
    if any(rt is None for rt in r_t):
        raise SpecError("a check-node type has no nonzero local codeword")
    p_t = tuple(min(j for _, j in pts) for pts in S_minus)
    r = min(r_t)
    p = min(p_t)
    if r < 2:
        raise SpecError(f"smallest check-node minimum distance is {r}; at least 2 is required")
    if p < 2:
        issues.append(f"smallest variable-node minimum distance is {p} < 2")

    X_c = frozenset(t for t, rt in enumerate(r_t) if rt == r)
    X_v = frozenset(t for t, pt in enumerate(p_t) if pt == p)
    psi = Fraction(r, r - 1)
    C = r * sum((rhos[t] * cn_enums[t][r] / s[t] for t in X_c), Fraction(0))
    above_r = [i for a in cn_enums for i in a.support(include_zero=False) if i > r]
    r_bar = min(above_r) if above_r else None
    above_p = [j for pts in S_minus for _, j in pts if j > p]
    p_bar = min(above_p) if above_p else None
    V = None
    if p == 2:
        V = 2 * sum(
            (lambdas[t] * sum(vn_enums[t].output_slice(2).values()) / q[t] for t in X_v),
            Fraction(0),
        )

    params = DerivedParams(
        ensemble=ens,
        stopping=stopping,
        vn_enums=vn_enums,
        cn_enums=cn_enums,
        lambdas=lambdas,
        rhos=rhos,
        q=q,
        k=k,
        s=s,
        h=h,
        int_lambda=int_lambda,
        int_rho=int_rho,
        delta=delta,
        gamma=gamma,
        edges_per_n=edges_per_n,
        cns_per_n=cns_per_n,
        codeword_len_per_n=codeword_len_per_n,
        checks_per_n=checks_per_n,
        design_rate=design_rate,
        r_t=r_t,
        p_t=p_t,
        r=r,
        r_bar=r_bar,
        p=p,
        p_bar=p_bar,
        psi=psi,
        C=C,
        V=V,
        X_c=X_c,
        X_v=X_v,
        U=U,
        S_minus=S_minus,
        dominant=None,
        issues=tuple(issues),
    )
    if not issues:
        object.__setattr__(params, "dominant", _dominant_set(S_minus, psi))
    return params


def _params(obj, stopping: bool = False) -> DerivedParams:
    if isinstance(obj, DerivedParams):
        return obj
    if isinstance(obj, Ensemble):
        return derive(obj, stopping=stopping)
    raise TypeError(f"expected Ensemble or DerivedParams, got {type(obj).__name__}")


def _dominant_set(S_minus, psi: Fraction) -> DominantSet:
    slopes = {(i, j): (j - psi) / i for pts in S_minus for (i, j) in pts}
    T = min(slopes.values())
    Y_v = frozenset(t for t, pts in enumerate(S_minus) if min(slopes[pt] for pt in pts) == T)
    P = {t: tuple(pt for pt in S_minus[t] if slopes[pt] == T) for t in sorted(Y_v)}
    gaps = [(slope - T) * i for (i, _), slope in slopes.items() if slope > T]
    chi = min(gaps) if gaps else None
    return DominantSet(T=T, Y_v=Y_v, P=P, chi=chi)


def dominant_set(ensemble_or_params) -> DominantSet:
    """Points of ``S^-`` first touched by a line pivoting about ``(0, psi)``.

    ``T`` is the smallest slope ``(j - psi) / i``; ``Y_v`` the VN types with a
    point on that line and ``P[t]`` those points.  ``chi`` is
    ``min (T_ij - T) i`` over points strictly above the line, or ``None``
    when no such point exists.
    """
    return _params(ensemble_or_params)._dom()


def q_polynomials(ensemble_or_params):
    """``(Q1, Q2, P)``; ``P`` is ``None`` unless ``r = p = 2``."""
    par = _params(ensemble_or_params)
    dom = par._dom()
    r = par.r
    ratio = float(dom.T / par.psi)
    log_c = math.log(par.C)
    log_scale = math.log(par.int_lambda) - 1.0
    q1: dict[int, float] = {}
    q2: dict[int, float] = {}
    for t in sorted(dom.Y_v):
        weight = float(par.lambdas[t] / par.q[t])
        b = par.vn_enums[t]
        for i, j in dom.P[t]:
            common = weight * b[(i, j)] * math.exp(j / r * log_c + i * ratio * log_scale)
            q1[i] = q1.get(i, 0.0) + j * common
            q2[i] = q2.get(i, 0.0) + i * common
    Q1, Q2 = RealPolynomial(q1), RealPolynomial(q2)
    P = None
    if par.rp2:
        pterms: dict[int, float] = {}
        for t in sorted(par.X_v):
            weight = 2 * par.lambdas[t] / par.q[t]
            for i, count in par.vn_enums[t].output_slice(2).items():
                pterms[i] = pterms.get(i, 0.0) + float(weight * count)
        P = RealPolynomial(pterms)
        c = float(par.C)
        for e in set(Q1.terms) | set(P.terms):
            a, b = Q1.terms.get(e, 0.0), c * P.terms.get(e, 0.0)
            if abs(a - b) > 1e-12 * max(abs(a), abs(b)):
                raise ArithmeticError(f"Q1 != C*P at x^{e}: {a} vs {b}")
    return Q1, Q2, P


# ---------------------------------------------------------------------------
# Finite graphs


@dataclass(frozen=True)
class GraphCounts:
    n: int
    edges: int
    vn_counts: tuple[int, ...]
    cn_counts: tuple[int, ...]

    def with_dims(self, ens: Ensemble) -> tuple[int, int]:
        """``(N, M)``: number of code bits and parity checks."""
        N = sum(c * t.code.dimension for c, t in zip(self.vn_counts, ens.vn_types))
        M = sum(c * (t.code.length - t.code.dimension) for c, t in zip(self.cn_counts, ens.cn_types))
        return N, M


def _per_n_counts(ens: Ensemble):
    il = ens.int_lambda
    vn = [t.fraction / t.code.length / il for t in ens.vn_types]
    cn = [t.fraction / t.code.length / il for t in ens.cn_types]
    return 1 / il, vn, cn


def realizability_period(ensemble: Ensemble) -> int:
    """Smallest ``n`` for which every node count is an integer."""
    e, vn, cn = _per_n_counts(ensemble)
    period = 1
    for f in [e, *vn, *cn]:
        period = math.lcm(period, f.denominator)
    return period


def validate_graph_realizability(ensemble: Ensemble, n: int) -> GraphCounts:
    """Per-type node counts for ``n`` variable nodes.

    Raises :class:`RealizabilityError` if any count is fractional; the error
    carries ``suggested_n``, the smallest realizable ``n`` at or above the
    request.
    """
    if not isinstance(n, int) or n <= 0:
        raise RealizabilityError(f"n must be a positive integer, got {n!r}", n=n)
    e, vn, cn = _per_n_counts(ensemble)
    period = realizability_period(ensemble)
    suggested = -(-n // period) * period
    checks = [("edges", e, "")]
    checks += [("vn", f, t.id) for f, t in zip(vn, ensemble.vn_types)]
    checks += [("cn", f, t.id) for f, t in zip(cn, ensemble.cn_types)]
    for kind, f, tid in checks:
        count = f * n
        if count.denominator != 1:
            label = "edge count" if kind == "edges" else f"{kind} type {tid} count"
            raise RealizabilityError(
                f"{label} is {count} at n={n}; smallest realizable n >= {n} is {suggested}",
                n=n,
                suggested_n=suggested,
                period=period,
            )
    return GraphCounts(
        n=n,
        edges=int(e * n),
        vn_counts=tuple(int(f * n) for f in vn),
        cn_counts=tuple(int(f * n) for f in cn),
    )


def smallest_realizable_n(ensemble: Ensemble, at_least: int = 1) -> int:
    period = realizability_period(ensemble)
    return max(1, -(-at_least // period)) * period
