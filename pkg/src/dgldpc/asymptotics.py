"""Growth rate of the ensemble-average weight (and stopping-set) spectrum.

Two routes are provided and are meant to be checked against each other:

* the closed-form small-weight expansion
  ``G(a) = (T/psi) a log a + K a + O(a^xi)``, with ``K`` built from the
  dominant-set polynomials ``Q1``/``Q2``;
* a direct numerical evaluation of the variational program for ``G(a)`` at
  any ``a``: maximize over the normalized edge weight ``b`` the sum of the
  variable-side exponent, the check-side exponent and minus the binomial
  exponent.  Each inner exponent is a Legendre transform of a log generating
  function, computed by damped Newton on the (convex) dual.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import brentq, linprog, minimize_scalar

from .binary_codes import BivariateEnumerator, WeightEnumerator
from .ensemble import DerivedParams, Ensemble, RealPolynomial, derive, q_polynomials
from .errors import InfeasibleError, NotApplicableError, NumericalError

MOMENT_RTOL = 1e-12
BETA_GRID = 24


@dataclass(frozen=True)
class Expansion:
    alpha_log_alpha_coeff: Fraction
    linear_coeff: float
    xi: Fraction

    def __call__(self, alpha: float) -> float:
        """Truncated expansion, without the ``O(alpha^xi)`` remainder."""
        return float(self.alpha_log_alpha_coeff) * alpha * math.log(alpha) + self.linear_coeff * alpha


@dataclass(frozen=True)
class Classification:
    verdict: str  # "Good", "Bad" or "Boundary"
    discriminant: Fraction  # C*V when r = p = 2, else T
    rule: str  # "dominant-slope" or "stability-product"


@dataclass(frozen=True)
class SolverState:
    alpha: float
    beta: float
    x: float
    y: float
    z: float
    value: float


@dataclass(frozen=True)
class GrowthCurve:
    states: tuple[SolverState, ...]
    alpha_star: float | None

    @property
    def points(self) -> list[tuple[float, float]]:
        return [(s.alpha, s.value) for s in self.states]


def _params(obj, stopping: bool = False) -> DerivedParams:
    if isinstance(obj, DerivedParams):
        if obj.stopping != stopping:
            return derive(obj.ensemble, stopping=stopping)
        return obj
    if isinstance(obj, Ensemble):
        return derive(obj, stopping=stopping)
    raise TypeError(f"expected Ensemble or DerivedParams, got {type(obj).__name__}")


# ---------------------------------------------------------------------------
# Closed forms


def invert_monotone_poly(Q: RealPolynomial, target: float, max_steps: int = 200) -> float:
    """Unique ``x >= 0`` with ``Q(x) = target`` for positive-coefficient ``Q``."""
    if not Q.all_positive() or Q.degree == 0:
        raise ValueError("polynomial must have positive coefficients and a positive-degree term")
    if not target > 0:
        raise ValueError(f"target must be positive, got {target}")
    tol = 1e-12 * max(1.0, target)
    if Q.terms.get(0, 0.0) > target:
        raise ValueError("target lies below Q(0)")
    dQ = Q.derivative()
    lo, hi = 0.0, 1.0
    while Q(hi) < target:
        lo, hi = hi, 2.0 * hi
    x = 0.5 * (lo + hi)
    for _ in range(max_steps):
        fx = Q(x) - target
        if abs(fx) <= tol:
            return x
        if fx > 0:
            hi = x
        else:
            lo = x
        slope = dQ(x)
        step = x - fx / slope if slope > 0 else None
        x = step if step is not None and lo < step < hi else 0.5 * (lo + hi)
        if hi - lo <= 4 * np.finfo(float).eps * hi:
            break
    if abs(Q(x) - target) <= tol:
        return x
    raise NumericalError(f"polynomial inversion stalled at x={x!r}, residual {Q(x) - target:.3e}")


def _xi(par: DerivedParams) -> Fraction:
    candidates = [Fraction(2)]
    if par.r_bar is not None:
        candidates.append(Fraction(par.r_bar, par.r))
    if par.chi is not None:
        candidates.append(par.chi / par.psi + 1)
    return min(candidates)


def small_alpha_expansion(ensemble_or_params) -> Expansion:
    """Coefficients of ``a log a`` and ``a`` plus the remainder exponent."""
    par = _params(ensemble_or_params)
    Q1, Q2, _ = q_polynomials(par)
    ratio = par.T / par.psi
    x1 = invert_monotone_poly(Q1, 1.0)
    linear = -math.log(x1)
    if ratio:
        linear -= float(ratio) * math.log(Q2(x1))
    return Expansion(alpha_log_alpha_coeff=ratio, linear_coeff=linear, xi=_xi(par))


def single_pair_linear_coeff(ensemble_or_params) -> float:
    """Linear coefficient when one ``(i, j)`` pair is dominant.

    The pair may be shared by several variable-node types.
    """
    par = _params(ensemble_or_params)
    dom = par._dom()
    pairs = dom.pairs()
    if len(pairs) != 1:
        raise NotApplicableError(f"dominant set has {len(pairs)} pairs; exactly one is required")
    (i, j), = pairs
    mass = sum((par.vn_enums[t][(i, j)] * par.delta[t] for t in dom.Y_v), Fraction(0))
    inner = (
        math.log(i * mass)
        + j / par.r * math.log(par.C)
        + float(j / par.psi) * math.log(j * par.int_lambda / i)
    )
    return inner / i - float(dom.T / par.psi)


def classify(ensemble_or_params) -> Classification:
    """Good/Bad verdict on the small-weight behaviour of the spectrum."""
    par = _params(ensemble_or_params)
    dom = par._dom()
    if par.rp2:
        cv = par.C * par.V
        verdict = "Good" if cv < 1 else "Bad" if cv > 1 else "Boundary"
        return Classification(verdict, cv, "stability-product")
    return Classification("Good", dom.T, "dominant-slope")


def stability_bound(ensemble_or_params) -> float:
    """``P^{-1}(1/C)``, the erasure-threshold bound tied to ``C * V``."""
    par = _params(ensemble_or_params)
    if not (par.expansion_applicable and par.rp2):
        raise NotApplicableError(f"defined only when r = p = 2 (r={par.r}, p={par.p})")
    _, _, P = q_polynomials(par)
    return invert_monotone_poly(P, float(1 / par.C))


def stopping_set_expansion(ensemble_or_params) -> Expansion:
    """Small-size expansion of the stopping-set growth rate.

    Only the ``r = p = 2`` case (with ``r``, ``p`` taken from the
    stopping-set enumerators) has a closed form; its remainder is always
    ``O(a^{3/2})``.
    """
    par = _params(ensemble_or_params, stopping=True)
    if not (par.expansion_applicable and par.rp2):
        raise NotApplicableError(f"closed form needs r = p = 2 for stopping sets (r={par.r}, p={par.p})")
    _, _, P = q_polynomials(par)
    linear = -math.log(invert_monotone_poly(P, float(1 / par.C)))
    return Expansion(alpha_log_alpha_coeff=Fraction(0), linear_coeff=linear, xi=Fraction(3, 2))


# ---------------------------------------------------------------------------
# Tilted families: Legendre transforms of mixtures of log generating functions


class TiltedFamily:
    """``F(theta) = sum_t w_t log M_t(exp(theta))`` for count tables ``M_t``.

    ``tables[t]`` maps exponent tuples to positive integer counts.  The
    Legendre transform ``min_theta F(theta) - theta . target`` is the
    exponential growth rate of the coefficient of ``x^(l*target)`` in
    ``prod_t M_t(x)^(l*w_t)``.
    """

    def __init__(self, weights: Sequence[float], tables: Sequence[dict]):
        self.weights = np.asarray([float(w) for w in weights])
        exps, logc, seg = [], [], [0]
        for table in tables:
            for e, c in table.items():
                exps.append(e if isinstance(e, tuple) else (e,))
                logc.append(math.log(c))
            seg.append(len(logc))
        self.exps = np.asarray(exps, dtype=float)
        self.logc = np.asarray(logc)
        self.starts = np.asarray(seg[:-1])
        self.type_of = np.repeat(np.arange(len(tables)), np.diff(seg))
        self.dim = self.exps.shape[1]

    def evaluate(self, theta: np.ndarray):
        """Value, mean vector and covariance matrix at ``theta``."""
        t = self.logc + self.exps @ theta
        m = np.maximum.reduceat(t, self.starts)
        scaled = np.exp(t - m[self.type_of])
        total = np.add.reduceat(scaled, self.starts)
        L = m + np.log(total)
        prob = scaled / total[self.type_of] * self.weights[self.type_of]
        value = float(self.weights @ L)
        mean = prob @ self.exps
        second = (self.exps * prob[:, None]).T @ self.exps
        per_type_mean = np.add.reduceat(self.exps * (prob / self.weights[self.type_of])[:, None], self.starts)
        cov = second - (per_type_mean * self.weights[:, None]).T @ per_type_mean
        return value, mean, cov

    def legendre(self, target: Sequence[float], start: Sequence[float] | None = None, max_iter: int = 400):
        """Return ``(value, theta)`` minimizing ``F(theta) - theta . target``."""
        target = np.asarray(target, dtype=float)
        theta = np.zeros(self.dim) if start is None else np.array(start, dtype=float)
        scale = np.maximum(np.abs(target), 1e-300)
        value, mean, cov = self.evaluate(theta)
        obj = value - theta @ target
        for _ in range(max_iter):
            grad = mean - target
            if np.all(np.abs(grad) <= MOMENT_RTOL * scale):
                return float(obj), theta
            hess = cov + 1e-14 * np.eye(self.dim)
            try:
                step = -np.linalg.solve(hess, grad)
            except np.linalg.LinAlgError as exc:
                raise NumericalError("singular tilt Hessian") from exc
            # covariances vanish far from the optimum, so cap the step length
            norm = float(np.max(np.abs(step)))
            if norm > 8.0:
                step *= 8.0 / norm
            slope = float(grad @ step)
            t = 1.0
            gnorm = float(np.max(np.abs(grad) / scale))
            while True:
                cand = theta + t * step
                v2, m2, c2 = self.evaluate(cand)
                obj2 = v2 - cand @ target
                if obj2 <= obj + 1e-4 * t * slope or (
                    obj2 <= obj + 1e-15 * (1 + abs(obj)) and np.max(np.abs(m2 - target) / scale) < gnorm
                ):
                    break
                t *= 0.5
                if t < 1e-12:
                    if gnorm < 1e-9:
                        return float(obj), theta
                    raise NumericalError(f"tilt line search failed at target {target.tolist()}")
            theta, value, mean, cov, obj = cand, v2, m2, c2, obj2
        if np.all(np.abs(mean - target) <= 1e-9 * scale):
            return float(obj), theta
        raise NumericalError(f"tilt solver did not converge for target {target.tolist()}")


def check_exponent(A: WeightEnumerator, weight_ratio: float):
    """``lim (1/l) log Coeff[A(x)^l, x^(l*weight_ratio)]`` and its tilt ``z``."""
    fam = TiltedFamily([1.0], [{u: c for u, c in enumerate(A.coeffs) if c}])
    if not 0 < weight_ratio < A.degree:
        raise InfeasibleError(f"weight ratio {weight_ratio} outside (0, {A.degree})")
    value, theta = fam.legendre([weight_ratio])
    return value, math.exp(theta[0])


def variable_exponent(B: BivariateEnumerator, in_ratio: float, out_ratio: float):
    """``lim (1/l) log Coeff[B(x,y)^l, x^(l*in) y^(l*out)]`` and the tilts ``(x, y)``."""
    fam = TiltedFamily([1.0], [dict(B.items())])
    value, theta = fam.legendre([in_ratio, out_ratio])
    return value, math.exp(theta[0]), math.exp(theta[1])


# ---------------------------------------------------------------------------
# Exact growth rate


def _ray_slope(par: DerivedParams) -> Fraction | None:
    """``c`` if every nonzero local point satisfies ``j = c i``, else ``None``."""
    slopes = {Fraction(j, i) if i else None for pts in par.S_minus for i, j in pts}
    if len(slopes) == 1 and None not in slopes:
        return slopes.pop()
    return None


class GrowthSolver:
    """Evaluates the variational program for one ensemble.

    Warm starts are kept between calls, so sweeping ``alpha`` in order is
    cheaper than scattered evaluations.
    """

    def __init__(self, params: DerivedParams):
        self.params = par = params
        self.int_lambda = float(par.int_lambda)
        self.alpha_max = float(sum(d * b.input_degree for d, b in zip(par.delta, par.vn_enums)))
        self.cn_max = float(par.cns_per_n * sum(g * a.degree for g, a in zip(par.gamma, par.cn_enums)))
        self.ray = _ray_slope(par)
        if self.ray is None:
            tables = [dict(b.items()) for b in par.vn_enums]
        else:
            # on a single ray B(x, y) depends on x * y^c only
            tables = [{i: c for (i, _), c in b.items()} for b in par.vn_enums]
        self.vn = TiltedFamily([float(d) for d in par.delta], tables)
        self.cn = TiltedFamily(
            [float(par.cns_per_n * g) for g in par.gamma],
            [{u: c for u, c in enumerate(a.coeffs) if c} for a in par.cn_enums],
        )
        self._vn_start: np.ndarray | None = None
        self._cn_start: np.ndarray | None = None

    # -- feasibility -------------------------------------------------------

    def beta_range(self, alpha: float) -> tuple[float, float]:
        """Open interval of normalized edge weights compatible with ``alpha``."""
        par = self.params
        if self.ray is not None:
            b = float(self.ray) * alpha
            return b, b
        rows_eq, rhs = [], []
        cols = [(t, pt) for t, b in enumerate(par.vn_enums) for pt in b.support(include_zero=True)]
        for t in range(len(par.vn_enums)):
            rows_eq.append([1.0 if ct == t else 0.0 for ct, _ in cols])
            rhs.append(float(par.delta[t]))
        rows_eq.append([float(pt[0]) for _, pt in cols])
        rhs.append(alpha)
        cost = np.array([float(pt[1]) for _, pt in cols])
        bounds = []
        for sign in (1.0, -1.0):
            res = linprog(sign * cost, A_eq=np.array(rows_eq), b_eq=np.array(rhs), bounds=(0, None), method="highs")
            if res.status != 0:
                raise InfeasibleError(f"no split assignment with input weight ratio {alpha}")
            bounds.append(sign * res.fun)
        lo, hi = bounds
        return lo, min(hi, self.cn_max, 1.0 / self.int_lambda)

    # -- objective ---------------------------------------------------------

    def _phi(self, alpha: float, beta: float):
        """Objective at fixed ``beta``, its derivative and the tilts."""
        if self.ray is None:
            start = self._vn_start if self._vn_start is not None else self._vn_guess(alpha, beta)
            f_vn, th_vn = self.vn.legendre([alpha, beta], start)
            log_x, log_y = th_vn
        else:
            start = self._vn_start if self._vn_start is not None else np.zeros(1)
            f_vn, th_vn = self.vn.legendre([alpha], start)
            log_x, log_y = th_vn[0], 0.0
        self._vn_start = th_vn
        start = self._cn_start if self._cn_start is not None else np.zeros(1)
        g_cn, th_cn = self.cn.legendre([beta], start)
        self._cn_start = th_cn
        b = beta * self.int_lambda
        binom = -(b * math.log(b) + (1 - b) * math.log1p(-b)) / self.int_lambda
        value = f_vn + g_cn - binom
        deriv = -log_y - th_cn[0] - math.log((1 - b) / b)
        return value, deriv, math.exp(log_x), math.exp(log_y), math.exp(th_cn[0])

    def _vn_guess(self, alpha: float, beta: float) -> np.ndarray:
        return np.array([math.log(alpha / self.alpha_max), math.log(beta * self.int_lambda)])

    def point(self, alpha: float) -> SolverState:
        if not 0 < alpha < self.alpha_max:
            raise InfeasibleError(f"alpha={alpha} outside (0, {self.alpha_max})")
        lo, hi = self.beta_range(alpha)
        if self.ray is not None:
            if not 0 < lo < min(self.cn_max, 1.0 / self.int_lambda):
                raise InfeasibleError(f"edge weight {lo} infeasible on the check side")
            value, _, x, y, z = self._phi(alpha, lo)
            return SolverState(alpha, lo, x, y, z, value)
        if not hi > lo * (1 + 1e-12):
            raise InfeasibleError(f"empty edge-weight range at alpha={alpha}")

        cache: dict[float, tuple] = {}

        def phi(beta):
            if beta not in cache:
                cache[beta] = self._phi(alpha, beta)
            return cache[beta]

        grid = [lo + (hi - lo) * k / (BETA_GRID + 1) for k in range(1, BETA_GRID + 1)]
        # reset warm starts for each alpha; the grid walks upwards from lo
        self._vn_start = self._vn_guess(alpha, grid[0])
        self._cn_start = None
        vals = [phi(b)[0] for b in grid]
        k = int(np.argmax(vals))
        left = grid[k - 1] if k > 0 else None
        right = grid[k + 1] if k + 1 < len(grid) else None
        mid = grid[k]
        a = b = None
        if phi(mid)[1] > 0:
            a, b = mid, right
            if b is None:
                # maximum squeezed against the upper end of the range
                for m in range(1, 60):
                    cand = hi - (hi - mid) / 2**m
                    if phi(cand)[1] < 0:
                        b = cand
                        break
                    a = cand
                else:
                    b = a
        else:
            a, b = left, mid
            if a is None:
                for m in range(1, 60):
                    cand = lo + (mid - lo) / 2**m
                    if phi(cand)[1] > 0:
                        a = cand
                        break
                    b = cand
                else:
                    a = b
        if a == b:
            beta = a
        elif phi(a)[1] > 0 > phi(b)[1]:
            beta = brentq(lambda x: phi(x)[1], a, b, xtol=1e-15 * b, rtol=1e-15, maxiter=200)
        else:
            res = minimize_scalar(lambda x: -phi(x)[0], bounds=(a, b), method="bounded", options={"xatol": 1e-13 * b})
            beta = float(res.x)
        value, _, x, y, z = phi(beta)
        return SolverState(alpha, beta, x, y, z, value)


def _solver(ensemble, stopping: bool) -> GrowthSolver:
    if isinstance(ensemble, GrowthSolver):
        return ensemble
    return GrowthSolver(_params(ensemble, stopping=stopping))


def growth_point(ensemble, alpha: float, stopping: bool = False) -> SolverState:
    """Optimal edge weight, tilts and ``G(alpha)``."""
    return _solver(ensemble, stopping).point(alpha)


def exact_growth_rate(ensemble, alpha: float) -> float:
    """``G(alpha)`` from the full variational program (no truncation)."""
    return growth_point(ensemble, alpha).value


def stopping_set_growth(ensemble, alpha: float) -> float:
    """Growth rate of the average stopping-set size spectrum at ``alpha``."""
    return growth_point(ensemble, alpha, stopping=True).value


def _scan_grid(alpha_max: float) -> list[float]:
    logs = list(np.geomspace(1e-7 * alpha_max, 0.02 * alpha_max, 30))
    lin = list(np.linspace(0.02 * alpha_max, alpha_max, 100, endpoint=False)[1:])
    return [float(a) for a in logs + lin]


def critical_exponent(ensemble, stopping: bool = False, tol: float = 1e-8) -> float | None:
    """``inf {a > 0 : G(a) >= 0}``; 0 for Bad ensembles, ``None`` if no crossing."""
    solver = _solver(ensemble, stopping)
    par = solver.params
    if par.expansion_applicable and (not stopping or par.rp2):
        if par.rp2 and par.C * par.V >= 1:
            return 0.0

    def g(a):
        try:
            return solver.point(a).value
        except InfeasibleError:
            return -math.inf

    prev_a, prev_g = None, None
    for a in _scan_grid(solver.alpha_max):
        ga = g(a)
        if ga >= 0:
            if prev_a is None:
                return 0.0
            if not math.isfinite(prev_g):
                return a
            return brentq(g, prev_a, a, xtol=tol, rtol=1e-15)
        prev_a, prev_g = a, ga
    return None


def growth_curve(ensemble, alphas: Iterable[float], stopping: bool = False, with_alpha_star: bool = True) -> GrowthCurve:
    solver = _solver(ensemble, stopping)
    states = tuple(solver.point(float(a)) for a in alphas)
    star = critical_exponent(solver, stopping=stopping) if with_alpha_star else None
    return GrowthCurve(states, star)
