"""Classical linear codes over GF(q): duals, Frobenius conjugates, the Hermitian-type
pairing ⟨x, y^{p^m}⟩, exhaustive minimum weights, cyclic/BCH codes and puncturing.
"""
import logging
import functools
import itertools
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import galois
import numpy as np

from config import ENUMERATION_CHUNK, MAX_ENUMERATION
from exceptions import (
    DependentGeneratorsError,
    DimensionMismatchError,
    FieldParameterError,
    MathPreconditionError,
    ResourceBoundError,
)
from finite_field import Field, field_create
from symplectic import trace_inner_normalized
from utils import encode_digits, null_space, row_basis, solve_particular

logger = logging.getLogger(__name__)

WeightFunction = Callable[[galois.FieldArray], np.ndarray]


def hamming_weights(words: galois.FieldArray) -> np.ndarray:
    return np.count_nonzero(np.asarray(words), axis=1)


@dataclass(frozen=True, eq=False)
class LinearCode:
    """[n, r]_q code; `gen` is kept in reduced row echelon form without zero rows."""
    field: Field
    n: int
    gen: galois.FieldArray

    @classmethod
    def from_rows(cls, field: Field, rows, n: int, strict: bool = False) -> "LinearCode":
        raw = np.asarray(rows, dtype=np.int64)
        if raw.size == 0:
            matrix = field.gf.Zeros((0, n))
        else:
            if raw.ndim == 1:
                raw = raw.reshape(1, -1)
            if raw.ndim != 2 or raw.shape[1] != n:
                raise DimensionMismatchError(f"generator rows must have length {n}")
            matrix = field.gf(raw)
        basis = row_basis(matrix)
        if strict and basis.shape[0] != matrix.shape[0]:
            raise DependentGeneratorsError(
                f"{matrix.shape[0]} generator rows span only dimension {basis.shape[0]}")
        return cls(field, n, basis)

    @classmethod
    def zero(cls, field: Field, n: int) -> "LinearCode":
        return cls(field, n, field.gf.Zeros((0, n)))

    @classmethod
    def full(cls, field: Field, n: int) -> "LinearCode":
        return cls(field, n, field.gf.Identity(n))

    @property
    def dimension(self) -> int:
        return self.gen.shape[0]

    @property
    def q(self) -> int:
        return self.field.order

    @functools.cached_property
    def parity_check(self) -> galois.FieldArray:
        """Rows spanning the standard dual"""
        return null_space(self.gen, self.n)

    def contains(self, words) -> np.ndarray:
        """Membership for each row of `words` (or a single vector)"""
        words = self.field.gf(words)
        single = words.ndim == 1
        words = words.reshape(-1, self.n)
        H = self.parity_check
        if H.shape[0] == 0:
            result = np.ones(words.shape[0], dtype=bool)
        else:
            result = np.all(np.asarray(words @ H.T) == 0, axis=1)
        return bool(result[0]) if single else result

    def is_subcode_of(self, other: "LinearCode") -> bool:
        return self.dimension == 0 or bool(np.all(other.contains(self.gen)))

    def rows_as_strings(self) -> List[str]:
        return [encode_digits(row, self.q) for row in np.asarray(self.gen)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return (self.field.order == other.field.order and self.n == other.n
                and self.gen.shape == other.gen.shape and np.array_equal(self.gen, other.gen))

    __hash__ = None

    def __repr__(self) -> str:
        return f"LinearCode([{self.n},{self.dimension}]_{self.q})"


# ===========================================
# DUALS AND CONJUGATES
# ===========================================

def dual(code: LinearCode) -> LinearCode:
    return LinearCode(code.field, code.n, code.parity_check)


def conjugate(code: LinearCode, power: int) -> LinearCode:
    """C^{power}: every generator entry raised to `power` (a power of p)"""
    return LinearCode(code.field, code.n, row_basis(code.gen ** power))


def hermitian_inner(x: galois.FieldArray, y: galois.FieldArray, field: Field) -> galois.FieldArray:
    """⟨x, y^{p^m}⟩"""
    return np.sum(x * y ** field.conjugation_power)


def hermitian_dual(code: LinearCode) -> LinearCode:
    """(C^{p^m})^⊥, the orthogonal space of C under ⟨x, y^{p^m}⟩"""
    return dual(conjugate(code, code.field.conjugation_power))


def hermitian_violation(code: LinearCode) -> Optional[Tuple[int, int]]:
    """First generator pair (i, j) with ⟨g_i, g_j^{p^m}⟩ != 0, or None."""
    if code.dimension == 0:
        return None
    gram = code.gen @ (code.gen ** code.field.conjugation_power).T
    bad = np.argwhere(np.asarray(gram) != 0)
    if bad.size == 0:
        return None
    i, j = sorted((int(bad[0][0]), int(bad[0][1])))
    return i, j


def is_hermitian_self_orthogonal(code: LinearCode) -> bool:
    return hermitian_violation(code) is None


def trace_orthogonal_basis(code: LinearCode) -> galois.FieldArray:
    """F_p-basis of {x : trace_inner(c, x) = 0 for all c in C}, for codes over GF(p^2).

    Computed with F_p linear algebra only; it coincides with (C^p)^⊥.
    """
    field = code.field
    if field.k != 2:
        raise FieldParameterError("the trace pairing is defined over GF(p^2)")
    n, p = code.n, field.p
    basis = field.power_basis
    spanning = [code.gen[i] * basis[l] for i in range(code.dimension) for l in range(2)]
    units = []
    for i in range(n):
        for l in range(2):
            unit = field.gf.Zeros(n)
            unit[i] = basis[l]
            units.append(unit)
    GFp = field.prime
    if not spanning:
        kernel = GFp.Identity(2 * n)
    else:
        M = GFp([[trace_inner_normalized(c, u, field) for u in units] for c in spanning])
        kernel = null_space(M, 2 * n)
    if kernel.shape[0] == 0:
        return field.gf.Zeros((0, n))
    # coordinate 2i + l is the coefficient of basis[l] at position i
    return field.from_vectors(np.asarray(kernel).reshape(-1, 2)).reshape(kernel.shape[0], n)


# ===========================================
# MINIMUM WEIGHT BY ENUMERATION
# ===========================================

def _codeword_chunks(code: LinearCode, max_enum: Optional[int]):
    limit = MAX_ENUMERATION if max_enum is None else max_enum
    q, r = code.q, code.dimension
    total = q ** r
    if total > limit:
        raise ResourceBoundError(f"enumerating {q}^{r} = {total} codewords exceeds the bound {limit}")
    powers = q ** np.arange(r, dtype=np.int64)
    for start in range(0, total, ENUMERATION_CHUNK):
        stop = min(start + ENUMERATION_CHUNK, total)
        idx = np.arange(start, stop, dtype=np.int64)
        messages = code.field.gf((idx[:, None] // powers) % q)
        yield messages @ code.gen


def _enumerated_distribution(code: LinearCode, max_enum: Optional[int]) -> List[int]:
    counts = np.zeros(code.n + 1, dtype=np.int64)
    if code.dimension == 0:
        counts[0] = 1
        return [int(c) for c in counts]
    for words in _codeword_chunks(code, max_enum):
        counts += np.bincount(hamming_weights(words), minlength=code.n + 1)
    return [int(c) for c in counts]


def _krawtchouk(w: int, i: int, n: int, q: int) -> int:
    return sum((-1) ** j * (q - 1) ** (w - j) * math.comb(i, j) * math.comb(n - i, w - j)
               for j in range(w + 1))


def weight_distribution(code: LinearCode, max_enum: Optional[int] = None) -> List[int]:
    """Hamming weight distribution A_0..A_n.

    Enumerates the code or its dual, whichever is smaller; the dual side goes
    through the MacWilliams transform in exact integers.
    """
    n, q, r = code.n, code.q, code.dimension
    if r <= n - r:
        return _enumerated_distribution(code, max_enum)
    B = _enumerated_distribution(dual(code), max_enum)
    size = q ** (n - r)
    distribution = []
    for w in range(n + 1):
        total = sum(B[i] * _krawtchouk(w, i, n, q) for i in range(n + 1) if B[i])
        if total % size:
            raise MathPreconditionError(f"MacWilliams transform left a remainder at weight {w}")
        distribution.append(total // size)
    return distribution


def _first_positive(values: Sequence[int]) -> Optional[int]:
    return next((w for w, a in enumerate(values) if w > 0 and a > 0), None)


def min_weight(code: LinearCode, weight: WeightFunction = hamming_weights,
               max_enum: Optional[int] = None) -> int:
    """Minimum nonzero weight.

    Hamming weight uses weight_distribution (code or dual side); any other
    weight enumerates the message space.
    """
    if code.dimension == 0:
        raise MathPreconditionError("the zero code has no nonzero codewords")
    if weight is hamming_weights:
        return _first_positive(weight_distribution(code, max_enum))
    best = None
    for words in _codeword_chunks(code, max_enum):
        w = weight(words)
        w = w[np.any(np.asarray(words) != 0, axis=1)]
        if w.size:
            low = int(w.min())
            best = low if best is None else min(best, low)
    return best


def min_weight_diff(outer: LinearCode, inner: LinearCode, weight: WeightFunction = hamming_weights,
                    max_enum: Optional[int] = None) -> int:
    """Minimum weight over outer \\ inner.

    With Hamming weight and inner ⊆ outer this is the first weight where the
    two distributions differ; otherwise outer is enumerated and inner
    membership solved against its generator.
    """
    if weight is hamming_weights and inner.is_subcode_of(outer):
        gap = [a - b for a, b in zip(weight_distribution(outer, max_enum), weight_distribution(inner, max_enum))]
        best = _first_positive(gap)
        if best is None:
            raise MathPreconditionError("outer code is contained in inner code; the difference is empty")
        return best
    best = None
    for words in _codeword_chunks(outer, max_enum):
        outside = ~inner.contains(words)
        if np.any(outside):
            low = int(weight(words[outside]).min())
            best = low if best is None else min(best, low)
    if best is None:
        raise MathPreconditionError("outer code is contained in inner code; the difference is empty")
    return best


# ===========================================
# CYCLIC CODES
# ===========================================

def multiplicative_order(q: int, n: int) -> int:
    if n == 1:
        return 1
    s, value = 1, q % n
    while value != 1:
        value = value * q % n
        s += 1
    return s


def cyclotomic_closure(exponents: Sequence[int], q: int, n: int) -> Tuple[int, ...]:
    closed = set()
    for j in exponents:
        j %= n
        while j not in closed:
            closed.add(j)
            j = j * q % n
    return tuple(sorted(closed))


def cyclotomic_cosets(q: int, n: int) -> List[Tuple[int, ...]]:
    cosets, seen = [], set()
    for j in range(n):
        if j not in seen:
            coset = cyclotomic_closure([j], q, n)
            seen.update(coset)
            cosets.append(coset)
    return cosets


def bch_run(zeros: Sequence[int], n: int) -> Tuple[int, int]:
    """(designed distance, run start) from the longest cyclic run of consecutive zeros"""
    Z = set(zeros)
    if not Z:
        return 1, 0
    if len(Z) == n:
        return n + 1, 0
    best_len, best_start = 0, 0
    for j in sorted(Z):
        if (j - 1) % n in Z:
            continue
        length = 0
        while (j + length) % n in Z:
            length += 1
        if length > best_len:
            best_len, best_start = length, j
    return best_len + 1, best_start


@dataclass(frozen=True, eq=False)
class CyclicCode:
    """Cyclic code of length n with zeros γ^j, j in `zeros`, γ a primitive n-th root of unity"""
    base: LinearCode
    roots: Tuple[int, ...]
    zeros: Tuple[int, ...]
    gpoly: galois.Poly
    designed_distance: int
    bch_start: int
    ext: Field  # splitting field GF(q^s)
    gamma: galois.FieldArray
    embed_powers: galois.FieldArray  # images of 1, x, ..., x^{k-1} of the base field

    @property
    def field(self) -> Field:
        return self.base.field

    @property
    def n(self) -> int:
        return self.base.n

    def embed(self, values) -> galois.FieldArray:
        """Base field elements as elements of the splitting field"""
        values = self.field.gf(values)
        vec = self.ext.gf(np.asarray(self.field.vectors(values)))
        return (vec @ self.embed_powers).reshape(values.shape)

    @functools.cached_property
    def _subfield_table(self) -> np.ndarray:
        table = np.full(self.ext.order, -1, dtype=np.int64)
        images = np.asarray(self.embed(self.field.elements), dtype=np.int64)
        table[images] = np.arange(self.field.order, dtype=np.int64)
        return table

    def restrict(self, values) -> Optional[galois.FieldArray]:
        """Inverse of embed; None when some value is outside the base field"""
        idx = self._subfield_table[np.asarray(self.ext.gf(values), dtype=np.int64)]
        if np.any(idx < 0):
            return None
        return self.field.gf(idx)

    def power_sum_rows(self, exponents: Sequence[int]) -> galois.FieldArray:
        """Rows (γ^{j l})_{l < n} for each exponent j"""
        j = np.asarray(exponents, dtype=np.int64).reshape(-1, 1)
        l = np.arange(self.n, dtype=np.int64).reshape(1, -1)
        return self.gamma ** ((j * l) % self.n)


def cyclic_from_roots(field: Field, n: int, root_exponents: Sequence[int]) -> CyclicCode:
    """Cyclic code with generator polynomial Π (x − γ^j) over the q-cyclotomic closure of the roots"""
    p, q = field.p, field.order
    if n < 1:
        raise DimensionMismatchError("cyclic codes need n >= 1")
    if math.gcd(n, p) != 1:
        raise FieldParameterError(f"n = {n} is not coprime to p = {p}")
    roots = tuple(int(j) % n for j in root_exponents)
    zeros = cyclotomic_closure(roots, q, n)
    if set(zeros) != set(roots):
        logger.warning(f"Корни {sorted(set(roots))} дополнены до циклотомического замыкания {list(zeros)}")

    s = multiplicative_order(q, n)
    ext = field_create(p, field.k * s)
    if field.k == 1:
        embed_powers = ext.gf([1])
    else:
        modulus = galois.Poly(list(field.modulus)[::-1], field=ext.gf)
        root = min(modulus.roots(), key=int)
        embed_powers = root ** np.arange(field.k)
    gamma = ext.primitive ** ((ext.order - 1) // n)

    if zeros:
        g_ext = galois.Poly.Roots(gamma ** np.asarray(zeros, dtype=np.int64))
    else:
        g_ext = galois.Poly.One(field=ext.gf)
    draft = CyclicCode(
        base=LinearCode.zero(field, n), roots=roots, zeros=zeros, gpoly=galois.Poly.One(field=field.gf),
        designed_distance=1, bch_start=0, ext=ext, gamma=gamma, embed_powers=embed_powers,
    )
    coeffs = draft.restrict(g_ext.coefficients(order="asc"))
    if coeffs is None:
        raise MathPreconditionError("generator polynomial is not defined over the base field")
    gpoly = galois.Poly(coeffs, field=field.gf, order="asc")

    deg = len(zeros)
    rows = field.gf.Zeros((n - deg, n))
    for i in range(n - deg):
        rows[i, i:i + deg + 1] = coeffs
    delta, start = bch_run(zeros, n)
    code = CyclicCode(
        base=LinearCode(field, n, row_basis(rows)),
        roots=roots,
        zeros=zeros,
        gpoly=gpoly,
        designed_distance=delta,
        bch_start=start,
        ext=ext,
        gamma=gamma,
        embed_powers=embed_powers,
    )
    logger.info(f"Циклический код [{n},{code.base.dimension}]_{q}: нули {list(zeros)}, "
                f"конструктивное расстояние {delta}")
    return code


# ===========================================
# PUNCTURING
# ===========================================

@dataclass(frozen=True, eq=False)
class PunctureExpansion:
    """0h_i = Σ_j a_ij h'_j for child check rows h_i and parent check rows h'_j"""
    position: int  # 1-based
    parent_rows: galois.FieldArray
    child_rows: galois.FieldArray
    a: galois.FieldArray

    def padded_child_rows(self) -> galois.FieldArray:
        """h_i with a zero inserted at the punctured position"""
        GF = type(self.parent_rows)
        rows = GF.Zeros((self.child_rows.shape[0], self.parent_rows.shape[1]))
        keep = [j for j in range(self.parent_rows.shape[1]) if j != self.position - 1]
        rows[:, keep] = self.child_rows
        return rows

    def verify(self) -> bool:
        if self.child_rows.shape[0] == 0:
            return True
        return np.array_equal(self.a @ self.parent_rows, self.padded_child_rows())


def puncture_expansion(parent_rows: galois.FieldArray, child_rows: galois.FieldArray,
                       position: int) -> PunctureExpansion:
    GF = type(parent_rows)
    r = parent_rows.shape[0]
    draft = PunctureExpansion(position, parent_rows, child_rows, GF.Zeros((child_rows.shape[0], r)))
    padded = draft.padded_child_rows()
    a = GF.Zeros((child_rows.shape[0], r))
    for i, target in enumerate(padded):
        solution = solve_particular(parent_rows.T, target)
        if solution is None:
            raise MathPreconditionError(f"child check row {i} is not in the span of the parent check rows")
        a[i] = solution
    expansion = PunctureExpansion(position, parent_rows, child_rows, a)
    if not expansion.verify():
        raise MathPreconditionError("puncture expansion identity does not hold")
    return expansion


def puncture(code: LinearCode, position: int = 1) -> Tuple[LinearCode, PunctureExpansion]:
    """Delete coordinate `position` (1-based); returns the child code and the check-row expansion"""
    n = code.n
    if not 1 <= position <= n:
        raise DimensionMismatchError(f"puncture position {position} outside 1..{n}")
    keep = [j for j in range(n) if j != position - 1]
    child = LinearCode(code.field, n - 1, row_basis(code.gen[:, keep]) if code.dimension else
                       code.field.gf.Zeros((0, n - 1)))
    if child.dimension < code.dimension:
        logger.warning(f"Выкалывание позиции {position} уменьшило размерность: "
                       f"{code.dimension} -> {child.dimension}")
    expansion = puncture_expansion(code.parity_check, child.parity_check, position)
    return child, expansion


def weight_layer(n: int, w: int, alphabet: int) -> np.ndarray:
    """All length-n symbol vectors with exactly w nonzero entries in 1..alphabet-1, lexicographically sorted"""
    if w == 0:
        return np.zeros((1, n), dtype=np.int64)
    values = np.array(list(itertools.product(range(1, alphabet), repeat=w)), dtype=np.int64)
    blocks = []
    for support in itertools.combinations(range(n), w):
        block = np.zeros((values.shape[0], n), dtype=np.int64)
        block[:, list(support)] = values
        blocks.append(block)
    layer = np.concatenate(blocks, axis=0)
    order = np.lexsort(layer.T[::-1])
    return layer[order]
