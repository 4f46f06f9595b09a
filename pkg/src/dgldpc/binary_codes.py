"""Exact combinatorics of a single binary linear component code.

Everything here is computed by exhaustive enumeration over GF(2), so the
counts are exact integers.  Enumeration is capped (default ``2**24``
codewords or column subsets); the cap can be raised with the
``DGLDPC_MAX_ENUM`` environment variable, which holds the base-2 exponent.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import NotApplicableError, SizeLimitError, SpecError

DEFAULT_MAX_ENUM_BITS = 24


def enumeration_limit() -> int:
    """Largest enumeration exponent allowed (``k`` or ``n`` in ``2**k``)."""
    raw = os.environ.get("DGLDPC_MAX_ENUM")
    if not raw:
        return DEFAULT_MAX_ENUM_BITS
    try:
        value = int(raw)
    except ValueError as exc:
        raise SpecError(f"DGLDPC_MAX_ENUM must be an integer, got {raw!r}") from exc
    if value < 1:
        raise SpecError("DGLDPC_MAX_ENUM must be positive")
    return value


def _check_limit(bits: int, what: str, limit: int | None) -> None:
    limit = enumeration_limit() if limit is None else limit
    if bits > limit:
        raise SizeLimitError(
            f"{what} requires enumerating 2^{bits} objects, above the cap 2^{limit}; "
            "raise DGLDPC_MAX_ENUM or supply precomputed enumerators"
        )


# ---------------------------------------------------------------------------
# GF(2) matrices


@dataclass(frozen=True, eq=False)
class BitMatrix:
    """Dense immutable GF(2) matrix stored as a read-only ``uint8`` array."""

    data: np.ndarray

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.int64, copy=True)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise SpecError(f"bit matrix must be 2-D and non-empty, got shape {arr.shape}")
        if np.any((arr != 0) & (arr != 1)):
            raise SpecError("bit matrix entries must be 0 or 1")
        arr = arr.astype(np.uint8)
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> BitMatrix:
        rows = list(rows)
        if not rows:
            raise SpecError("bit matrix needs at least one row")
        width = len(rows[0])
        for idx, row in enumerate(rows):
            if len(row) != width or set(row) - {"0", "1"}:
                raise SpecError(f"row {idx} ({row!r}) is not a bit string of length {width}")
        return cls(np.array([[int(ch) for ch in row] for row in rows]))

    @classmethod
    def identity(cls, k: int) -> BitMatrix:
        return cls(np.eye(k, dtype=np.uint8))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple(int(b) for b in self.data.ravel())

    def to_strings(self) -> list[str]:
        return ["".join(str(int(b)) for b in row) for row in self.data]

    @cached_property
    def row_masks(self) -> tuple[int, ...]:
        """Rows as integers, column ``j`` mapped to bit ``j``."""
        return tuple(_bits_to_int(row) for row in self.data)

    @cached_property
    def column_masks(self) -> tuple[int, ...]:
        """Columns as integers, row ``i`` mapped to bit ``i``."""
        return tuple(_bits_to_int(col) for col in self.data.T)

    def hstack(self, other: BitMatrix) -> BitMatrix:
        return BitMatrix(np.hstack([self.data, other.data]))

    def __eq__(self, other):
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.data.shape == other.data.shape and bool(np.all(self.data == other.data))

    def __hash__(self):
        return hash((self.data.shape, self.data.tobytes()))

    def __repr__(self):
        return f"BitMatrix({self.to_strings()})"


def _bits_to_int(bits: Iterable[int]) -> int:
    value = 0
    for pos, b in enumerate(bits):
        if b:
            value |= 1 << pos
    return value


def _xor_basis(vectors: Iterable[int]) -> dict[int, int]:
    """Echelon basis keyed by leading bit."""
    basis: dict[int, int] = {}
    for vec in vectors:
        vec = _reduce(vec, basis)
        if vec:
            basis[vec.bit_length() - 1] = vec
    return basis


def _reduce(vec: int, basis: Mapping[int, int]) -> int:
    while vec:
        top = vec.bit_length() - 1
        pivot = basis.get(top)
        if pivot is None:
            return vec
        vec ^= pivot
    return 0


def rank(matrix: BitMatrix) -> int:
    """GF(2) row rank by XOR elimination."""
    return len(_xor_basis(matrix.row_masks))


def nullspace(matrix: BitMatrix) -> BitMatrix | None:
    """Basis of ``{h : matrix @ h = 0}`` as the rows of a BitMatrix.

    Returns ``None`` for a trivial null space.  Applied to a generator
    matrix this yields a parity-check matrix (generator of the dual code).
    """
    a = matrix.data.astype(np.uint8).copy()
    n_rows, n_cols = a.shape
    pivots = []
    row = 0
    for col in range(n_cols):
        hits = np.nonzero(a[row:, col])[0]
        if hits.size == 0:
            continue
        pr = row + hits[0]
        if pr != row:
            a[[row, pr]] = a[[pr, row]]
        others = np.nonzero(a[:, col])[0]
        for r in others:
            if r != row:
                a[r] ^= a[row]
        pivots.append(col)
        row += 1
        if row == n_rows:
            break
    free = [c for c in range(n_cols) if c not in pivots]
    if not free:
        return None
    basis = np.zeros((len(free), n_cols), dtype=np.uint8)
    for idx, fc in enumerate(free):
        basis[idx, fc] = 1
        for prow, pc in enumerate(pivots):
            basis[idx, pc] = a[prow, fc]
    return BitMatrix(basis)


def unrecoverable_subset(generator: BitMatrix, selected: Iterable[int]) -> bool:
    """True iff every selected column lies outside the span of the others.

    This is the local stopping-set test: erasing the selected positions
    leaves MAP erasure decoding unable to recover any of them.
    """
    selected = set(selected)
    cols = generator.column_masks
    for idx in selected:
        if not 0 <= idx < len(cols):
            raise IndexError(f"column {idx} out of range for {len(cols)} columns")
    rest = _xor_basis(cols[j] for j in range(len(cols)) if j not in selected)
    return all(_reduce(cols[j], rest) != 0 for j in selected)


# ---------------------------------------------------------------------------
# Enumerators


@dataclass(frozen=True)
class WeightEnumerator:
    """Univariate enumerator ``sum_w coeffs[w] x^w`` with exact integer counts."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if not coeffs:
            raise SpecError("weight enumerator needs at least one coefficient")
        if any(c < 0 for c in coeffs):
            raise SpecError("weight enumerator coefficients must be nonnegative")
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coeffs", coeffs)

    def __getitem__(self, w: int) -> int:
        return self.coeffs[w] if 0 <= w < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def total(self) -> int:
        return sum(self.coeffs)

    def support(self, include_zero: bool = True) -> list[int]:
        return [w for w, c in enumerate(self.coeffs) if c and (include_zero or w)]

    def min_nonzero_weight(self) -> int | None:
        nz = self.support(include_zero=False)
        return nz[0] if nz else None

    def __call__(self, x: float) -> float:
        return float(sum(c * x**w for w, c in enumerate(self.coeffs) if c))

    def __str__(self):
        terms = []
        for w, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if w == 0 else ("x" if w == 1 else f"x^{w}")
            if w == 0:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(terms)


@dataclass(frozen=True)
class BivariateEnumerator:
    """Sparse enumerator ``sum terms[(u, v)] x^u y^v`` (input weight ``u``, output ``v``)."""

    terms: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key, count in dict(self.terms).items():
            u, v = (int(key[0]), int(key[1]))
            count = int(count)
            if u < 0 or v < 0:
                raise SpecError(f"negative weight in bivariate entry {key}")
            if count < 0:
                raise SpecError(f"negative count at {key}")
            if count:
                clean[(u, v)] = clean.get((u, v), 0) + count
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.terms.get(key, 0)

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __eq__(self, other):
        if not isinstance(other, BivariateEnumerator):
            return NotImplemented
        return self.terms == other.terms

    def items(self):
        return self.terms.items()

    def support(self, include_zero: bool = True) -> list[tuple[int, int]]:
        return [k for k in self.terms if include_zero or k != (0, 0)]

    @property
    def input_degree(self) -> int:
        return max(u for u, _ in self.terms)

    @property
    def output_degree(self) -> int:
        return max(v for _, v in self.terms)

    def output_marginal(self) -> WeightEnumerator:
        """Sum over input weights; for an IO enumerator this is A(x)."""
        out = [0] * (self.output_degree + 1)
        for (_, v), c in self.terms.items():
            out[v] += c
        return WeightEnumerator(tuple(out))

    def input_marginal(self) -> WeightEnumerator:
        out = [0] * (self.input_degree + 1)
        for (u, _), c in self.terms.items():
            out[u] += c
        return WeightEnumerator(tuple(out))

    def min_output_weight(self) -> int | None:
        vs = [v for (u, v) in self.terms if (u, v) != (0, 0)]
        return min(vs) if vs else None

    def output_slice(self, v: int) -> dict[int, int]:
        """``{u: count}`` for a fixed output weight."""
        return {u: c for (u, vv), c in self.terms.items() if vv == v}


def _rows_to_words(masks: Sequence[int], nbits: int) -> np.ndarray:
    nwords = max(1, (nbits + 63) // 64)
    out = np.zeros((len(masks), nwords), dtype=np.uint64)
    for r, m in enumerate(masks):
        for w in range(nwords):
            out[r, w] = (m >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
    return out


def span_words(masks: Sequence[int], nbits: int) -> np.ndarray:
    """All ``2**len(masks)`` XOR combinations, index bit ``i`` selecting mask ``i``.

    Returned as an array of 64-bit words with shape ``(2**k, ceil(nbits/64))``.
    """
    rows = _rows_to_words(masks, nbits)
    words = np.zeros((1, rows.shape[1]), dtype=np.uint64)
    for r in rows:
        words = np.concatenate([words, words ^ r])
    return words


def _words_to_ints(words: np.ndarray) -> np.ndarray:
    if words.shape[1] == 1:
        return words[:, 0]
    raise ValueError("integer view requires at most 64 bits")


def _codeword_table(generator: BitMatrix, limit: int | None):
    k, n = generator.rows, generator.cols
    _check_limit(k, "codeword enumeration", limit)
    words = span_words(generator.row_masks, n)
    out_w = np.bitwise_count(words).sum(axis=1).astype(np.int64)
    in_w = np.bitwise_count(np.arange(2**k, dtype=np.uint64)).astype(np.int64)
    return words, in_w, out_w


def _enumerate_weights(generator: BitMatrix, limit: int | None = None) -> WeightEnumerator:
    _, _, out_w = _codeword_table(generator, limit)
    return WeightEnumerator(tuple(int(c) for c in np.bincount(out_w, minlength=generator.cols + 1)))


def _enumerate_io(generator: BitMatrix, limit: int | None = None) -> BivariateEnumerator:
    _, in_w, out_w = _codeword_table(generator, limit)
    n = generator.cols
    keys = in_w * (n + 1) + out_w
    counts = np.bincount(keys)
    terms = {(int(key) // (n + 1), int(key) % (n + 1)): int(c) for key, c in enumerate(counts) if c}
    return BivariateEnumerator(terms)


def _minimal_supports(supports: np.ndarray) -> list[int]:
    """Supports (as ints, nonzero) that contain no other nonzero support."""
    uniq = np.unique(supports[supports != 0])
    order = np.argsort(np.bitwise_count(uniq), kind="stable")
    minimal = np.zeros(0, dtype=np.uint64)
    for s in uniq[order]:
        if minimal.size and np.any((minimal & ~s) == 0):
            continue
        minimal = np.append(minimal, s)
    return [int(m) for m in minimal]


def _stopping_closure(generator: BitMatrix, limit: int | None) -> np.ndarray:
    """Boolean table over column subsets marking local stopping sets.

    A column subset passes ``unrecoverable_subset`` exactly when it is a union
    of codeword supports: column ``c`` is outside the span of the unselected
    columns iff some codeword is 1 at ``c`` and vanishes off the subset.  So
    the table is the union-closure of the minimal codeword supports.
    """
    n = generator.cols
    _check_limit(n, "stopping-set enumeration", limit)
    _check_limit(generator.rows, "stopping-set enumeration", limit)
    words = span_words(generator.row_masks, n)
    minimal = _minimal_supports(_words_to_ints(words))
    reach = np.zeros(2**n, dtype=bool)
    reach[0] = True
    for m in minimal:
        idx = np.nonzero(reach)[0].astype(np.uint64) | np.uint64(m)
        reach[idx] = True
    return reach


def stopping_masks(generator: BitMatrix, with_inputs: bool = False, limit: int | None = None) -> np.ndarray:
    """Local stopping sets as column bitmasks.

    With ``with_inputs`` the columns are those of ``[G | I_k]``: bit ``c`` for
    ``c < q`` is output (edge) ``c`` and bit ``q + b`` is information bit ``b``.
    """
    target = generator.hstack(BitMatrix.identity(generator.rows)) if with_inputs else generator
    return np.nonzero(_stopping_closure(target, limit))[0].astype(np.uint64)


def _cn_stopping(generator: BitMatrix, limit: int | None = None) -> WeightEnumerator:
    reach = _stopping_closure(generator, limit)
    sizes = np.bitwise_count(np.nonzero(reach)[0].astype(np.uint64)).astype(np.int64)
    return WeightEnumerator(tuple(int(c) for c in np.bincount(sizes, minlength=generator.cols + 1)))


def _vn_stopping(generator: BitMatrix, limit: int | None = None) -> BivariateEnumerator:
    k, q = generator.rows, generator.cols
    extended = generator.hstack(BitMatrix.identity(k))
    reach = _stopping_closure(extended, limit)
    sets = np.nonzero(reach)[0].astype(np.uint64)
    out_mask = np.uint64((1 << q) - 1)
    v = np.bitwise_count(sets & out_mask).astype(np.int64)
    u = np.bitwise_count(sets >> np.uint64(q)).astype(np.int64)
    counts = np.bincount(u * (q + 1) + v)
    terms = {(key // (q + 1), key % (q + 1)): int(c) for key, c in enumerate(counts) if c}
    return BivariateEnumerator(terms)


# ---------------------------------------------------------------------------
# Component codes


@dataclass(frozen=True, eq=False)
class ComponentCode:
    """A binary linear code attached to a Tanner-graph node.

    Usually built from a generator matrix.  For codes too large to
    enumerate, the weight enumerator (check nodes) or the input-output
    enumerator (variable nodes) may be supplied instead; such codes have no
    generator, so stopping-set enumerators are unavailable for them.
    """

    generator: BitMatrix | None = None
    length: int = 0
    dimension: int = 0
    weights: WeightEnumerator | None = None
    io: BivariateEnumerator | None = None
    name: str = ""

    def __post_init__(self):
        if self.generator is not None:
            g = self.generator
            if not isinstance(g, BitMatrix):
                g = BitMatrix(np.asarray(g))
                object.__setattr__(self, "generator", g)
            if rank(g) != g.rows:
                raise SpecError(
                    f"generator of {self.name or 'component code'} has rank {rank(g)} < {g.rows} rows"
                )
            object.__setattr__(self, "length", g.cols)
            object.__setattr__(self, "dimension", g.rows)
            return
        if self.io is not None:
            io = self.io
            if io[(0, 0)] != 1:
                raise SpecError("io enumerator must contain (0,0) with count 1")
            k = io.input_degree
            for u in range(k + 1):
                row = sum(c for (uu, _), c in io.items() if uu == u)
                if row != math.comb(k, u):
                    raise SpecError(f"io enumerator row u={u} sums to {row}, expected C({k},{u})")
            if self.length and self.length < io.output_degree:
                raise SpecError("io enumerator has output weights above the code length")
            object.__setattr__(self, "length", self.length or io.output_degree)
            object.__setattr__(self, "dimension", k)
            object.__setattr__(self, "weights", io.output_marginal())
            return
        if self.weights is not None:
            a = self.weights
            if a[0] != 1:
                raise SpecError("weight enumerator must have A_0 = 1")
            total = a.total
            k = total.bit_length() - 1
            if total != 1 << k:
                raise SpecError(f"weight enumerator sums to {total}, not a power of two")
            if self.length and self.length < a.degree:
                raise SpecError("weight enumerator has weights above the code length")
            object.__setattr__(self, "length", self.length or a.degree)
            object.__setattr__(self, "dimension", k)
            return
        raise SpecError("component code needs a generator matrix or an enumerator table")

    @classmethod
    def from_strings(cls, rows: Sequence[str], name: str = "") -> ComponentCode:
        return cls(generator=BitMatrix.from_strings(rows), name=name)

    @property
    def n(self) -> int:
        return self.length

    @property
    def k(self) -> int:
        return self.dimension

    @property
    def rate(self):
        from fractions import Fraction

        return Fraction(self.dimension, self.length)

    @property
    def has_generator(self) -> bool:
        return self.generator is not None

    @property
    def key(self):
        """Identity of the code representation, used to merge node types."""
        if self.generator is not None:
            return ("G", self.generator)
        if self.io is not None:
            return ("B", self.length, self.io)
        return ("A", self.length, self.weights)

    def _require_generator(self, what: str) -> BitMatrix:
        if self.generator is None:
            raise NotApplicableError(f"{what} needs a generator matrix; {self.name or 'code'} is tabulated")
        return self.generator

    @cached_property
    def weight_enum(self) -> WeightEnumerator:
        if self.generator is None:
            return self.weights
        return _enumerate_weights(self.generator)

    @cached_property
    def io_enum(self) -> BivariateEnumerator:
        if self.io is not None:
            return self.io
        return _enumerate_io(self._require_generator("io weight enumerator"))

    @cached_property
    def min_distance(self) -> int:
        d = self.weight_enum.min_nonzero_weight()
        if d is None:
            raise SpecError("code has no nonzero codeword")
        return d

    @cached_property
    def cn_stopping_enum(self) -> WeightEnumerator:
        return _cn_stopping(self._require_generator("stopping-set enumerator"))

    @cached_property
    def vn_stopping_enum(self) -> BivariateEnumerator:
        return _vn_stopping(self._require_generator("stopping-set enumerator"))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"ComponentCode{label}(n={self.length}, k={self.dimension})"


def weight_enumerator(code: ComponentCode) -> WeightEnumerator:
    """Number of codewords of each Hamming weight, ``A(x)``."""
    return code.weight_enum


def io_weight_enumerator(code: ComponentCode) -> BivariateEnumerator:
    """Input-output weight enumerator ``B(x, y)`` under the code's own generator.

    The result depends on the generator matrix, not only on the code.
    """
    return code.io_enum


def min_distance(code: ComponentCode) -> int:
    return code.min_distance


def cn_stopping_enumerator(code: ComponentCode) -> WeightEnumerator:
    """Local stopping-set size enumerator for a check node."""
    return code.cn_stopping_enum


def vn_stopping_enumerator(code: ComponentCode) -> BivariateEnumerator:
    """Local stopping-set split-size enumerator on ``[G | I_k]``.

    ``terms[(u, v)]`` counts ``u`` erased information bits together with
    ``v`` erased code bits forming a local stopping set.
    """
    return code.vn_stopping_enum


def brute_force_cn_stopping(generator: BitMatrix) -> WeightEnumerator:
    """Subset-by-subset version of :func:`cn_stopping_enumerator` (slow)."""
    n = generator.cols
    counts = [0] * (n + 1)
    for size in range(n + 1):
        for subset in itertools.combinations(range(n), size):
            if unrecoverable_subset(generator, subset):
                counts[size] += 1
    return WeightEnumerator(tuple(counts))


def brute_force_vn_stopping(generator: BitMatrix) -> BivariateEnumerator:
    k, q = generator.rows, generator.cols
    extended = generator.hstack(BitMatrix.identity(k))
    terms: dict[tuple[int, int], int] = {}
    for size in range(q + k + 1):
        for subset in itertools.combinations(range(q + k), size):
            if unrecoverable_subset(extended, subset):
                v = sum(1 for c in subset if c < q)
                key = (size - v, v)
                terms[key] = terms.get(key, 0) + 1
    return BivariateEnumerator(terms)


def macwilliams_dual_enumerator(code: ComponentCode, limit: int | None = None) -> WeightEnumerator:
    """Weight enumerator of the dual code, by enumerating the dual itself."""
    g = code._require_generator("dual enumeration")
    h = nullspace(g)
    if h is None:
        return WeightEnumerator((1,))
    _check_limit(h.rows, "dual code enumeration", limit)
    return _enumerate_weights(h, limit)


def macwilliams_transform(dual: WeightEnumerator, length: int) -> WeightEnumerator:
    """Weight enumerator of a code from that of its dual.

    ``A(x) = |C_dual|^{-1} sum_w B_w (1 - x)^w (1 + x)^(n - w)``, in exact
    integer arithmetic.
    """
    size = dual.total
    acc = [0] * (length + 1)
    for w, bw in enumerate(dual.coeffs):
        if not bw:
            continue
        # coefficients of (1 - x)^w (1 + x)^(n - w)
        poly = [1]
        for sign, times in ((-1, w), (1, length - w)):
            for _ in range(times):
                nxt = [0] * (len(poly) + 1)
                for i, c in enumerate(poly):
                    nxt[i] += c
                    nxt[i + 1] += sign * c
                poly = nxt
        for i, c in enumerate(poly):
            acc[i] += bw * c
    out = []
    for c in acc:
        q, rem = divmod(c, size)
        if rem:
            raise ArithmeticError("MacWilliams transform did not divide exactly")
        out.append(q)
    return WeightEnumerator(tuple(out))


# ---------------------------------------------------------------------------
# Standard constructions


def repetition_code(q: int) -> ComponentCode:
    return ComponentCode(BitMatrix(np.ones((1, q), dtype=np.uint8)), name=f"rep({q})")


def spc_code(s: int) -> ComponentCode:
    """Single parity-check code of length ``s`` (dimension ``s - 1``)."""
    if s < 2:
        raise SpecError("single parity-check code needs length >= 2")
    g = np.zeros((s - 1, s), dtype=np.uint8)
    for i in range(s - 1):
        g[i, i] = 1
        g[i, s - 1] = 1
    return ComponentCode(BitMatrix(g), name=f"spc({s})")


def code_from_parity_check(h: BitMatrix, name: str = "") -> ComponentCode:
    g = nullspace(h)
    if g is None:
        raise SpecError("parity-check matrix leaves no codewords")
    return ComponentCode(g, name=name)


def hamming_code(m: int) -> ComponentCode:
    """Hamming code of length ``2**m - 1`` with a systematic generator ``[I | P]``."""
    n = 2**m - 1
    cols = [c for c in range(1, n + 1) if c & (c - 1)]  # non-unit columns first
    k = len(cols)
    g = np.zeros((k, n), dtype=np.uint8)
    for i, c in enumerate(cols):
        g[i, i] = 1
        for b in range(m):
            g[i, k + b] = (c >> (m - 1 - b)) & 1
    return ComponentCode(BitMatrix(g), name=f"hamming({n},{k})")


def reed_muller_first_order(m: int) -> ComponentCode:
    """First-order Reed-Muller code RM(1, m): all-ones row plus ``m`` coordinate rows."""
    n = 2**m
    rows = [np.ones(n, dtype=np.uint8)]
    for b in range(m):
        rows.append(np.array([((x >> (m - 1 - b)) & 1) ^ 1 for x in range(n)], dtype=np.uint8))
    return ComponentCode(BitMatrix(np.array(rows)), name=f"rm(1,{m})")
