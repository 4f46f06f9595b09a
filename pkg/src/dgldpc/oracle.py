"""Finite-length ground truth for the ensemble-average spectrum.

The exact route expands generating functions with arbitrary-precision
integers.  The Monte Carlo route samples Tanner graphs as uniform
permutations of edge sockets and counts codewords (or stopping sets) of each
sampled graph exhaustively.  Since the expectation formula averages over
exactly this permutation model, the two must agree up to sampling noise.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .binary_codes import (
    BitMatrix,
    _check_limit,
    enumeration_limit,
    nullspace,
    span_words,
    stopping_masks,
)
from .ensemble import Ensemble, GraphCounts, validate_graph_realizability
from .errors import NotApplicableError, SizeLimitError

MAX_EXACT_EDGES = 5000


# ---------------------------------------------------------------------------
# Arbitrary-precision polynomials (dense lists of nonnegative ints)


def _trim(coeffs: list[int]) -> list[int]:
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def poly_mul(a: Sequence[int], b: Sequence[int], limit: int | None = None) -> list[int]:
    """Product of nonnegative integer polynomials, truncated above ``x^limit``.

    Uses Kronecker substitution, so the work is one big-integer product.
    """
    if limit is not None:
        a, b = a[: limit + 1], b[: limit + 1]
    if not a or not b:
        return [0]
    bound = max(a) * max(b) * min(len(a), len(b))
    if bound == 0:
        return [0]
    width = (bound.bit_length() + 8) // 8
    pa = int.from_bytes(b"".join(c.to_bytes(width, "little") for c in a), "little")
    pb = int.from_bytes(b"".join(c.to_bytes(width, "little") for c in b), "little")
    size = len(a) + len(b) - 1
    raw = (pa * pb).to_bytes(size * width, "little")
    out = [int.from_bytes(raw[i * width : (i + 1) * width], "little") for i in range(size)]
    if limit is not None:
        out = out[: limit + 1]
    return _trim(out)


def poly_power(a: Sequence[int], ell: int, limit: int | None = None) -> list[int]:
    """``a(x)**ell`` by repeated squaring, truncated above ``x^limit``."""
    if ell < 0:
        raise ValueError("exponent must be nonnegative")
    result = [1]
    base = list(a)
    while ell:
        if ell & 1:
            result = poly_mul(result, base, limit)
        ell >>= 1
        if ell:
            base = poly_mul(base, base, limit)
    return result


def miller_power(a: Sequence[int], ell: int, limit: int) -> list[int]:
    """``a(x)**ell`` up to ``x^limit`` by the J.C.P. Miller recurrence.

    Needs ``a[0] != 0``; every division in the recurrence is exact.
    """
    a = list(a)
    if not a or a[0] == 0:
        raise ValueError("constant term must be nonzero")
    a0 = a[0]
    deg = len(a) - 1
    out = [a0**ell]
    for k in range(1, limit + 1):
        acc = 0
        for i in range(1, min(k, deg) + 1):
            if a[i]:
                acc += (ell * i - k + i) * a[i] * out[k - i]
        q, rem = divmod(acc, k * a0)
        if rem:
            raise ArithmeticError("non-integral coefficient in power recurrence")
        out.append(q)
    return _trim(out)


def poly_power_coeff(a: Sequence[int], ell: int, w: int) -> int:
    """Coefficient of ``x^w`` in ``a(x)**ell``."""
    if w < 0:
        return 0
    p = poly_power(a, ell, limit=w)
    return p[w] if w < len(p) else 0


def naive_power(a: Sequence[int], ell: int) -> list[int]:
    out = [1]
    for _ in range(ell):
        out = [int(c) for c in np.convolve(np.array(out, dtype=object), np.array(list(a), dtype=object))]
    return _trim(out)


def bivariate_power(terms: dict, ell: int, max_x: int) -> list[list[int]]:
    """``B(x, y)**ell`` as ``out[u][v]`` for ``u <= max_x``.

    ``B`` must have constant term 1 and no pure-``y`` terms, which holds for
    every input-output enumerator (zero input encodes to zero output).
    """
    by_x: dict[int, dict[int, int]] = {}
    for (u, v), c in terms.items():
        by_x.setdefault(u, {})[v] = c
    if by_x.get(0) != {0: 1}:
        raise ValueError("bivariate power needs B(0, y) = 1")
    steps = sorted(i for i in by_x if i)
    out = [[1]]
    for k in range(1, max_x + 1):
        acc: list[int] = [0]
        for i in steps:
            if i > k:
                break
            coef = ell * i - k + i
            prev = out[k - i]
            if not coef or prev == [0]:
                continue
            for v, c in by_x[i].items():
                need = len(prev) + v
                if len(acc) < need:
                    acc.extend([0] * (need - len(acc)))
                m = coef * c
                for idx, val in enumerate(prev):
                    if val:
                        acc[idx + v] += m * val
        row = []
        for val in acc:
            q, rem = divmod(val, k)
            if rem:
                raise ArithmeticError("non-integral coefficient in bivariate recurrence")
            row.append(q)
        out.append(_trim(row))
    return out


def bivariate_mul(a: list[list[int]], b: list[list[int]], max_x: int) -> list[list[int]]:
    out = []
    for k in range(max_x + 1):
        acc = [0]
        for k1 in range(max(0, k - len(b) + 1), min(k, len(a) - 1) + 1):
            prod = poly_mul(a[k1], b[k - k1])
            if len(prod) > len(acc):
                acc.extend([0] * (len(prod) - len(acc)))
            for idx, val in enumerate(prod):
                acc[idx] += val
        out.append(_trim(acc))
    return out


# ---------------------------------------------------------------------------
# Exact ensemble averages


def _counts(ensemble: Ensemble, n: int, max_edges: int | None) -> GraphCounts:
    counts = validate_graph_realizability(ensemble, n)
    cap = MAX_EXACT_EDGES if max_edges is None else max_edges
    if counts.edges > cap:
        raise SizeLimitError(f"exact spectrum at n={n} needs E={counts.edges} edges, above the cap {cap}")
    return counts


def _cn_enums(ensemble: Ensemble, stopping: bool):
    return [t.code.cn_stopping_enum if stopping else t.code.weight_enum for t in ensemble.cn_types]


def _vn_enums(ensemble: Ensemble, stopping: bool):
    return [t.code.vn_stopping_enum if stopping else t.code.io_enum for t in ensemble.vn_types]


def check_side_polynomial(ensemble: Ensemble, n: int, stopping: bool = False, max_edges: int | None = None) -> list[int]:
    """Coefficients of ``prod_t A_t(x)**m_t`` (all edge weights ``0..E``)."""
    counts = _counts(ensemble, n, max_edges)
    total = [1]
    for enum, m in zip(_cn_enums(ensemble, stopping), counts.cn_counts):
        total = poly_mul(total, miller_power(enum.coeffs, m, m * enum.degree))
    return total


def check_side_count(ensemble: Ensemble, n: int, v: int, stopping: bool = False) -> int:
    """Number of check-valid edge assignments of weight ``v``."""
    poly = check_side_polynomial(ensemble, n, stopping)
    return poly[v] if 0 <= v < len(poly) else 0


def p_valid(ensemble: Ensemble, n: int, v: int, stopping: bool = False) -> tuple[Fraction, float]:
    """Probability that a uniform weight-``v`` edge assignment is check-valid.

    Returns the exact value and its natural log (``-inf`` when zero).
    """
    counts = validate_graph_realizability(ensemble, n)
    if not 0 <= v <= counts.edges:
        raise ValueError(f"edge weight {v} outside [0, {counts.edges}]")
    value = Fraction(check_side_count(ensemble, n, v, stopping), math.comb(counts.edges, v))
    return value, log_fraction(value)


def log_fraction(value: Fraction) -> float:
    if value <= 0:
        return -math.inf
    return math.log(value.numerator) - math.log(value.denominator)


def variable_side_table(ensemble: Ensemble, n: int, max_weight: int, stopping: bool = False) -> list[list[int]]:
    """``prod_t B_t(x, y)**n_t`` truncated to ``x^max_weight``."""
    counts = validate_graph_realizability(ensemble, n)
    total: list[list[int]] | None = None
    for enum, nt in zip(_vn_enums(ensemble, stopping), counts.vn_counts):
        part = bivariate_power(dict(enum.items()), nt, max_weight)
        total = part if total is None else bivariate_mul(total, part, max_weight)
    return total


@dataclass(frozen=True)
class SpectrumEstimate:
    """Average number of codewords (or stopping sets) per weight."""

    n: int
    weights: tuple[int, ...]
    mean: tuple  # Fraction in exact mode, float in Monte Carlo mode
    variance: tuple
    trials: int
    mode: str  # "exact" or "mc"
    stopping: bool = False
    seed: int | None = None

    def __getitem__(self, w: int):
        return self.mean[self.weights.index(w)]

    def standard_error(self, w: int) -> float:
        if self.trials <= 1:
            return 0.0
        return math.sqrt(float(self.variance[self.weights.index(w)]) / self.trials)

    def log_growth(self, w: int) -> float:
        """``(1/n) log E[N_w]``."""
        m = self[w]
        lg = log_fraction(m) if isinstance(m, Fraction) else (math.log(m) if m > 0 else -math.inf)
        return lg / self.n

    def rows(self):
        for w, m, var in zip(self.weights, self.mean, self.variance):
            yield {"weight": w, "mean": str(m) if isinstance(m, Fraction) else repr(float(m)),
                   "variance": str(var) if isinstance(var, Fraction) else repr(float(var)),
                   "trials": self.trials, "mode": self.mode}

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=["weight", "mean", "variance", "trials", "mode"], lineterminator="\n")
        writer.writeheader()
        writer.writerows(self.rows())
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode,
            "stopping": self.stopping,
            "seed": self.seed,
            "trials": self.trials,
            "rows": [dict(r, mean_float=float(m)) for r, m in zip(self.rows(), self.mean)],
        }


def exact_average_spectrum(
    ensemble: Ensemble,
    n: int,
    weights: Iterable[int] | None = None,
    stopping: bool = False,
    max_edges: int | None = None,
) -> SpectrumEstimate:
    """Exact ``E[N_w]`` over the permutation ensemble, as rationals.

    With ``stopping=True`` the stopping-set enumerators are used and ``w``
    is the stopping-set size.
    """
    counts = _counts(ensemble, n, max_edges)
    N, _ = counts.with_dims(ensemble)
    ws = tuple(range(N + 1)) if weights is None else tuple(sorted(set(int(w) for w in weights)))
    if any(w < 0 or w > N for w in ws):
        raise ValueError(f"weights must lie in [0, {N}]")
    vn_table = variable_side_table(ensemble, n, max(ws), stopping)
    cn_poly = check_side_polynomial(ensemble, n, stopping, max_edges)
    E = counts.edges
    means = []
    for w in ws:
        row = vn_table[w] if w < len(vn_table) else [0]
        total = Fraction(0)
        for v, c in enumerate(row):
            if c and v < len(cn_poly) and cn_poly[v]:
                total += Fraction(c * cn_poly[v], math.comb(E, v))
        means.append(total)
    return SpectrumEstimate(n, ws, tuple(means), tuple(Fraction(0) for _ in ws), 0, "exact", stopping)


def exact_average_stopping_spectrum(ensemble: Ensemble, n: int, weights=None, max_edges=None) -> SpectrumEstimate:
    return exact_average_spectrum(ensemble, n, weights, stopping=True, max_edges=max_edges)


# ---------------------------------------------------------------------------
# Sampled Tanner graphs


@dataclass(frozen=True, eq=False)
class TannerInstance:
    """One graph of the ensemble.

    VN sockets are numbered consecutively node by node, and so are CN
    sockets; edge ``e`` joins VN socket ``e`` to CN socket ``perm[e]``.
    """

    ensemble: Ensemble
    counts: GraphCounts
    perm: np.ndarray
    vn_type: np.ndarray  # type index per variable node
    cn_type: np.ndarray
    seed: int | None = None

    @property
    def n(self) -> int:
        return self.counts.n

    @property
    def edges(self) -> int:
        return self.counts.edges

    @property
    def code_length(self) -> int:
        return self.counts.with_dims(self.ensemble)[0]

    @property
    def num_checks(self) -> int:
        return self.counts.with_dims(self.ensemble)[1]

    def vn_sockets(self) -> list[np.ndarray]:
        qs = [self.ensemble.vn_types[t].code.length for t in self.vn_type]
        starts = np.concatenate([[0], np.cumsum(qs)])
        return [np.arange(starts[v], starts[v + 1]) for v in range(len(qs))]

    def cn_edges(self) -> list[np.ndarray]:
        """Edge indices entering each check node, in local socket order."""
        inv = np.argsort(self.perm)
        ss = [self.ensemble.cn_types[t].code.length for t in self.cn_type]
        starts = np.concatenate([[0], np.cumsum(ss)])
        return [inv[starts[c] : starts[c + 1]] for c in range(len(ss))]

    def info_offsets(self) -> np.ndarray:
        ks = [self.ensemble.vn_types[t].code.dimension for t in self.vn_type]
        return np.concatenate([[0], np.cumsum(ks)])


def _layout(counts: GraphCounts) -> tuple[np.ndarray, np.ndarray]:
    vn = np.repeat(np.arange(len(counts.vn_counts)), counts.vn_counts)
    cn = np.repeat(np.arange(len(counts.cn_counts)), counts.cn_counts)
    return vn, cn


def sample_instance(ensemble: Ensemble, n: int, seed) -> TannerInstance:
    """Draw a graph; the result is a deterministic function of ``seed``."""
    counts = validate_graph_realizability(ensemble, n)
    rng = np.random.default_rng(seed)
    vn, cn = _layout(counts)
    seed_record = seed if isinstance(seed, int) else None
    return TannerInstance(ensemble, counts, rng.permutation(counts.edges), vn, cn, seed_record)


def _require_generators(ensemble: Ensemble) -> None:
    for t in (*ensemble.vn_types, *ensemble.cn_types):
        if not t.code.has_generator:
            raise NotApplicableError(f"type {t.id} is given only by enumerators; graphs need generator matrices")


def _encode_table(gen: BitMatrix) -> np.ndarray:
    """Local codeword (as int over output columns) for every information word."""
    return span_words(gen.row_masks, gen.cols)[:, 0].astype(np.int64)


def _socket_starts(lengths) -> np.ndarray:
    return np.concatenate([[0], np.cumsum(lengths)]).astype(np.int64)


def _spread(local: np.ndarray, width: int) -> np.ndarray:
    """Integer patterns to a ``(len(local), width)`` bit array."""
    return ((local[:, None] >> np.arange(width)) & 1).astype(np.uint8)


def _codeword_configs(ensemble: Ensemble, vn_type: np.ndarray, limit: int | None):
    """Edge bits induced by each of the ``2**N`` information words, and their weights."""
    ks = [ensemble.vn_types[t].code.dimension for t in vn_type]
    qs = [ensemble.vn_types[t].code.length for t in vn_type]
    N = int(sum(ks))
    _check_limit(N, "exhaustive codeword search", limit)
    words = np.arange(1 << N, dtype=np.int64)
    offs, starts = _socket_starts(ks), _socket_starts(qs)
    enc = [_encode_table(t.code.generator) for t in ensemble.vn_types]
    edge_bits = np.zeros((words.size, int(starts[-1])), dtype=np.uint8)
    for v, t in enumerate(vn_type):
        local = enc[t][(words >> offs[v]) & ((1 << ks[v]) - 1)]
        edge_bits[:, starts[v] : starts[v + 1]] = _spread(local, qs[v])
    return edge_bits, np.bitwise_count(words.astype(np.uint64)).astype(np.int64), N


def _stopping_configs(ensemble: Ensemble, vn_type: np.ndarray, limit: int | None):
    """Edge bits and sizes of every product of local stopping sets of ``[G | I]``."""
    options = []
    for t in ensemble.vn_types:
        q = t.code.length
        masks = stopping_masks(t.code.generator, with_inputs=True).astype(np.int64)
        sizes = np.bitwise_count((masks >> q).astype(np.uint64)).astype(np.int64)
        options.append((_spread(masks & ((1 << q) - 1), q), sizes))
    total = math.prod(len(options[t][1]) for t in vn_type)
    _check_limit(max(0, math.ceil(math.log2(total))), "stopping-set census", limit)
    edge_bits = np.zeros((1, 0), dtype=np.uint8)
    sizes = np.zeros(1, dtype=np.int64)
    for t in vn_type:
        local, u = options[t]
        m = len(u)
        edge_bits = np.hstack([np.repeat(edge_bits, m, axis=0), np.tile(local, (len(sizes), 1))])
        sizes = (sizes[:, None] + u[None, :]).ravel()
    N = sum(ensemble.vn_types[t].code.dimension for t in vn_type)
    return edge_bits, sizes, N


def _cn_tables(ensemble: Ensemble, stopping: bool) -> list[np.ndarray]:
    tables = []
    for t in ensemble.cn_types:
        gen = t.code.generator
        table = np.zeros(2**gen.cols, dtype=bool)
        masks = stopping_masks(gen) if stopping else _encode_table(gen)
        table[np.asarray(masks, dtype=np.int64)] = True
        tables.append(table)
    return tables


def _tally(edge_bits, sizes, N, ensemble, cn_type, perms, stopping) -> np.ndarray:
    """Per-size count of configurations valid at every check, summed over ``perms``."""
    tables = _cn_tables(ensemble, stopping)
    starts = _socket_starts([ensemble.cn_types[t].code.length for t in cn_type])
    total = np.zeros(N + 1, dtype=np.int64)
    for lo in range(0, len(perms), 2048):
        inv = np.argsort(perms[lo : lo + 2048], axis=1)
        ok = np.ones((len(sizes), len(inv)), dtype=bool)
        for c, t in enumerate(cn_type):
            pattern = np.zeros(ok.shape, dtype=np.int64)
            for pos, sock in enumerate(range(starts[c], starts[c + 1])):
                pattern |= edge_bits[:, inv[:, sock]].astype(np.int64) << pos
            ok &= tables[t][pattern]
        np.add.at(total, sizes, ok.sum(axis=1))
    return total


def enumerate_codewords_bruteforce(inst: TannerInstance, limit: int | None = None) -> list[int]:
    """Codeword count per weight, by trying all ``2**N`` information words.

    Each variable node encodes its share of the information bits; a word is
    a codeword when every check node sees one of its local codewords.
    """
    _require_generators(inst.ensemble)
    edge_bits, weights, N = _codeword_configs(inst.ensemble, inst.vn_type, limit)
    return [int(c) for c in _tally(edge_bits, weights, N, inst.ensemble, inst.cn_type, inst.perm[None, :], False)]


def parity_check_matrix(inst: TannerInstance) -> BitMatrix | None:
    """Global parity checks on the ``N`` code bits (``None`` if there are none)."""
    ens = inst.ensemble
    _require_generators(ens)
    N = inst.code_length
    offs = inst.info_offsets()
    sockets = inst.vn_sockets()
    # each edge bit as a linear form (bitmask) over the code bits
    edge_form = np.zeros(inst.edges, dtype=object)
    for v, t in enumerate(inst.vn_type):
        gen = ens.vn_types[t].code.generator
        for pos, e in enumerate(sockets[v]):
            form = 0
            for b in range(gen.rows):
                if gen.data[b, pos]:
                    form |= 1 << (offs[v] + b)
            edge_form[e] = form
    rows = []
    for c, t in enumerate(inst.cn_type):
        h = nullspace(ens.cn_types[t].code.generator)
        if h is None:
            continue
        edges = inst.cn_edges()[c]
        for check in h.data:
            form = 0
            for pos, bit in enumerate(check):
                if bit:
                    form ^= edge_form[edges[pos]]
            rows.append(form)
    if not rows:
        return None
    return BitMatrix(np.array([[(r >> b) & 1 for b in range(N)] for r in rows], dtype=np.uint8))


def codeword_weights(inst: TannerInstance, limit: int | None = None) -> list[int]:
    """Codeword count per weight via a kernel basis of the global checks."""
    N = inst.code_length
    H = parity_check_matrix(inst)
    if H is None:
        basis = BitMatrix.identity(N).row_masks
    else:
        K = nullspace(H)
        basis = [] if K is None else K.row_masks
    _check_limit(len(basis), "codeword enumeration", limit)
    words = span_words(basis, max(N, 1))
    weights = np.bitwise_count(words).sum(axis=1).astype(np.int64)
    return [int(c) for c in np.bincount(weights, minlength=N + 1)]


def stopping_set_census(inst: TannerInstance, limit: int | None = None) -> list[int]:
    """Stopping-set count per size on one graph, by exhaustive search.

    A global stopping set picks a local stopping set of ``[G | I]`` at every
    variable node such that each check node's incoming edges form a local
    stopping set there; its size is the number of information bits picked.
    """
    _require_generators(inst.ensemble)
    edge_bits, sizes, N = _stopping_configs(inst.ensemble, inst.vn_type, limit)
    return [int(c) for c in _tally(edge_bits, sizes, N, inst.ensemble, inst.cn_type, inst.perm[None, :], True)]


def ldpc_stopping_sets(inst: TannerInstance) -> list[int]:
    """Stopping sets of an LDPC graph in the classical sense.

    Counts variable-node subsets ``S`` such that no check node has exactly
    one edge into ``S``.
    """
    n = inst.n
    vn_of_edge = np.repeat(np.arange(n), [len(s) for s in inst.vn_sockets()])
    cn_edges = inst.cn_edges()
    counts = [0] * (n + 1)
    for subset in range(1 << n):
        if all(sum((subset >> int(vn_of_edge[e])) & 1 for e in es) != 1 for es in cn_edges):
            counts[bin(subset).count("1")] += 1
    return counts


def monte_carlo_spectrum(
    ensemble: Ensemble,
    n: int,
    trials: int,
    seed: int,
    stopping: bool = False,
    limit: int | None = None,
) -> SpectrumEstimate:
    """Sample mean and variance of the per-weight counts over ``trials`` graphs."""
    if trials < 1:
        raise ValueError("trials must be positive")
    counts = validate_graph_realizability(ensemble, n)
    N, _ = counts.with_dims(ensemble)
    _check_limit(N, "exhaustive codeword search", limit)
    children = np.random.SeedSequence(seed).spawn(trials)
    table = np.zeros((trials, N + 1), dtype=np.float64)
    for k, child in enumerate(children):
        inst = sample_instance(ensemble, n, child)
        row = stopping_set_census(inst, limit) if stopping else codeword_weights(inst, limit)
        table[k] = row
    mean = table.mean(axis=0)
    var = table.var(axis=0, ddof=1) if trials > 1 else np.zeros(N + 1)
    return SpectrumEstimate(
        n, tuple(range(N + 1)), tuple(float(x) for x in mean), tuple(float(x) for x in var), trials, "mc", stopping, seed
    )


def exhaustive_matching_average(ensemble: Ensemble, n: int, stopping: bool = False, max_edges: int = 8) -> SpectrumEstimate:
    """Average per-weight count over every one of the ``E!`` socket matchings."""
    _require_generators(ensemble)
    counts = validate_graph_realizability(ensemble, n)
    if counts.edges > max_edges:
        raise SizeLimitError(f"{counts.edges}! matchings exceed the cap of {max_edges}!")
    vn, cn = _layout(counts)
    configs = _stopping_configs if stopping else _codeword_configs
    edge_bits, sizes, N = configs(ensemble, vn, None)
    perms = np.array(list(itertools.permutations(range(counts.edges))), dtype=np.int64).reshape(-1, counts.edges)
    total = _tally(edge_bits, sizes, N, ensemble, cn, perms, stopping)
    means = tuple(Fraction(int(t), len(perms)) for t in total)
    return SpectrumEstimate(n, tuple(range(N + 1)), means, tuple(Fraction(0) for _ in means), len(perms), "exact", stopping)
