"""The symplectic picture F_p^{2mn}: alternating inner product, symplectic weight,
the map φ of GF(p^2) (m = 1) and the normal-basis map Φ of GF(p^{2m}) together
with the form T, the matrix D (D T D^t = S) and the functional P / P_{2m}.

Coordinates are laid out as (a_{1,1..m}, ..., a_{n,1..m} | b_{1,1..m}, ..., b_{n,1..m}).
"""
import logging
import functools
from dataclasses import dataclass
from typing import Iterable, NewType, Tuple

import galois
import numpy as np
from pydantic import BaseModel, ConfigDict

from exceptions import DimensionMismatchError, FieldParameterError, MathPreconditionError, SpecParseError
from finite_field import DualBasisData, Field, NormalBasis, coords, dual_basis_for_P, frobenius
from utils import decode_digits, encode_digits, matrix_rank, null_space

logger = logging.getLogger(__name__)

# exponent of λ in the commutation relation; λ itself is never materialized
SyndromeExponent = NewType("SyndromeExponent", int)


class SymplecticVector(BaseModel):
    """(a|b) in F_p^{2mn}; an error or a stabilizer generator"""
    model_config = ConfigDict(frozen=True)

    p: int
    m: int
    n: int
    a: Tuple[int, ...]
    b: Tuple[int, ...]

    def __init__(self, p: int, m: int, n: int, a: Iterable[int], b: Iterable[int]):
        a, b = tuple(int(v) for v in a), tuple(int(v) for v in b)
        size = m * n
        if len(a) != size or len(b) != size:
            raise DimensionMismatchError(f"(a|b) needs two blocks of length {size}, got {len(a)} and {len(b)}")
        if any(not 0 <= v < p for v in a + b):
            raise DimensionMismatchError(f"entries must lie in [0, {p})")
        super().__init__(p=p, m=m, n=n, a=a, b=b)

    @classmethod
    def zeros(cls, p: int, m: int, n: int) -> "SymplecticVector":
        return cls(p, m, n, (0,) * (m * n), (0,) * (m * n))

    @classmethod
    def from_array(cls, p: int, m: int, n: int, values) -> "SymplecticVector":
        flat = [int(v) % p for v in np.asarray(values).ravel()]
        size = m * n
        if len(flat) != 2 * size:
            raise DimensionMismatchError(f"expected {2 * size} entries, got {len(flat)}")
        return cls(p, m, n, tuple(flat[:size]), tuple(flat[size:]))

    @classmethod
    def parse(cls, text: str, p: int, m: int, n: int) -> "SymplecticVector":
        """Read 'a|b' digit strings."""
        if text.count("|") != 1:
            raise SpecParseError(f"symplectic vector {text!r} must look like a|b")
        left, right = text.split("|")
        try:
            a = decode_digits(left, p, m * n)
            b = decode_digits(right, p, m * n)
        except ValueError as e:
            raise SpecParseError(f"symplectic vector {text!r}: {e}") from e
        return cls(p, m, n, tuple(a), tuple(b))

    def to_string(self) -> str:
        return f"{encode_digits(self.a, self.p)}|{encode_digits(self.b, self.p)}"

    def to_array(self) -> galois.FieldArray:
        return galois.GF(self.p)(list(self.a + self.b))

    def is_zero(self) -> bool:
        return not any(self.a) and not any(self.b)

    def _check(self, other: "SymplecticVector") -> None:
        if (self.p, self.m, self.n) != (other.p, other.m, other.n):
            raise DimensionMismatchError(
                f"vectors over F_{self.p}^(2*{self.m}*{self.n}) and F_{other.p}^(2*{other.m}*{other.n})")

    def __add__(self, other: "SymplecticVector") -> "SymplecticVector":
        self._check(other)
        p = self.p
        return SymplecticVector(p, self.m, self.n,
                                tuple((x + y) % p for x, y in zip(self.a, other.a)),
                                tuple((x + y) % p for x, y in zip(self.b, other.b)))

    def __neg__(self) -> "SymplecticVector":
        p = self.p
        return SymplecticVector(p, self.m, self.n, tuple(-x % p for x in self.a), tuple(-x % p for x in self.b))

    def __sub__(self, other: "SymplecticVector") -> "SymplecticVector":
        return self + (-other)

    def scale(self, c: int) -> "SymplecticVector":
        p = self.p
        return SymplecticVector(p, self.m, self.n, tuple(c * x % p for x in self.a), tuple(c * x % p for x in self.b))

    def __str__(self) -> str:
        return self.to_string()


# ===========================================
# ALTERNATING FORM AND WEIGHT
# ===========================================

def alt_inner(u: SymplecticVector, v: SymplecticVector) -> SyndromeExponent:
    """⟨a, b'⟩ − ⟨a', b⟩ mod p"""
    u._check(v)
    total = sum(x * y for x, y in zip(u.a, v.b)) - sum(x * y for x, y in zip(v.a, u.b))
    return SyndromeExponent(total % u.p)


def sym_weight(u: SymplecticVector) -> int:
    """Number of positions whose 2m coordinates are not all zero"""
    m = u.m
    return sum(1 for i in range(u.n) if any(u.a[i * m:(i + 1) * m]) or any(u.b[i * m:(i + 1) * m]))


def symplectic_weights(words, m: int, n: int) -> np.ndarray:
    """Vectorized sym_weight over the rows of a (N, 2mn) array"""
    words = np.asarray(words)
    count = words.shape[0]
    a = words[:, :m * n].reshape(count, n, m)
    b = words[:, m * n:].reshape(count, n, m)
    active = np.any(a != 0, axis=2) | np.any(b != 0, axis=2)
    return np.count_nonzero(active, axis=1)


def form_matrix(p: int, m: int, n: int) -> galois.FieldArray:
    """J with alt_inner(u, v) = u J v^t"""
    GF = galois.GF(p)
    size = m * n
    J = GF.Zeros((2 * size, 2 * size))
    J[:size, size:] = GF.Identity(size)
    J[size:, :size] = -GF.Identity(size)
    return J


def alt_dual(rows: galois.FieldArray, p: int, m: int, n: int) -> galois.FieldArray:
    """Basis of the alternating-orthogonal space of the row span"""
    if rows.shape[0] == 0:
        return galois.GF(p).Identity(2 * m * n)
    return null_space(rows @ form_matrix(p, m, n), 2 * m * n)


# ===========================================
# φ FOR m = 1
# ===========================================

def _require_quadratic(field: Field) -> None:
    if field.k != 2:
        raise DimensionMismatchError(f"φ needs GF(p^2), got GF({field.p}^{field.k})")


def phi(u: SymplecticVector, field: Field) -> galois.FieldArray:
    """φ(a|b) = ωa + ω^p b, componentwise"""
    _require_quadratic(field)
    if u.m != 1:
        raise DimensionMismatchError(f"φ is defined for m = 1, got m = {u.m}")
    if u.p != field.p:
        raise DimensionMismatchError(f"vector over F_{u.p} but field GF({field.p}^2)")
    w = field.omega
    return w * field.gf(list(u.a)) + frobenius(w, 1) * field.gf(list(u.b))


def phi_inv(c, field: Field) -> SymplecticVector:
    _require_quadratic(field)
    c = field.gf(c)
    basis = field.gf([int(field.omega), int(frobenius(field.omega, 1))])
    ab = coords(c, basis, field).reshape(-1, 2)
    return SymplecticVector(field.p, 1, ab.shape[0],
                            tuple(int(x) for x in ab[:, 0]), tuple(int(x) for x in ab[:, 1]))


def trace_inner(c: galois.FieldArray, d: galois.FieldArray) -> galois.FieldArray:
    """⟨c, d^p⟩ − ⟨c^p, d⟩ in GF(p^2); F_p-bilinear, values of the form z − z^p"""
    if type(c) is not type(d) or c.shape != d.shape:
        raise DimensionMismatchError("trace_inner needs two vectors of one field and one length")
    p = type(c).characteristic
    return np.sum(c * d ** p) - np.sum(c ** p * d)


def phi_scale(field: Field) -> galois.FieldArray:
    """ω² − ω^{2p}, the factor relating trace_inner on φ-images to alt_inner"""
    w = field.omega
    scale = w ** 2 - w ** (2 * field.p)
    if scale == 0:
        raise FieldParameterError(f"ω = {int(w)} gives ω² = ω^(2p)")
    return scale


def trace_inner_normalized(c, d, field: Field) -> int:
    """trace_inner divided by ω² − ω^{2p}; lands in F_p"""
    value = trace_inner(field.gf(c), field.gf(d)) / phi_scale(field)
    if int(value) >= field.p:
        raise MathPreconditionError("normalized trace inner product left F_p")
    return int(value)


# ===========================================
# NORMAL BASIS FORM T, MATRIX D, Φ
# ===========================================

def t_form(x, y, field: Field) -> int:
    """T = c_{m+1} − c_1 where x·y^{p^m} = Σ c_i θ^{p^{i-1}}"""
    z = field.gf(x) * field.gf(y) ** field.conjugation_power
    c = field.normal_basis.coordinates(z)[0]
    m = field.k // 2
    return int(c[m] - c[0])


def p_functional(x, field: Field) -> np.ndarray:
    """P(x) = c_{m+1} − c_1 in normal-basis coordinates; vectorized over arrays"""
    c = field.normal_basis.coordinates(x)
    m = field.k // 2
    values = np.asarray(c[:, m] - c[:, 0], dtype=np.int64)
    return values[0] if np.ndim(x) == 0 else values


def t_matrix(field: Field) -> galois.FieldArray:
    """Representation matrix of T in the standard basis of F_p^{2m}"""
    nb = field.normal_basis
    k = field.k
    T = field.prime.Zeros((k, k))
    for i in range(k):
        for j in range(k):
            T[i, j] = t_form(nb.powers[i], nb.powers[j], field)
    return T


def standard_s(GF: type, m: int) -> galois.FieldArray:
    S = GF.Zeros((2 * m, 2 * m))
    S[:m, m:] = GF.Identity(m)
    S[m:, :m] = -GF.Identity(m)
    return S


def compute_D(T: galois.FieldArray) -> galois.FieldArray:
    """D with D T D^t = S, by symplectic Gram–Schmidt with lowest-index pivots."""
    GF = type(T)
    size = T.shape[0]
    if size % 2 or T.shape != (size, size):
        raise MathPreconditionError("T must be a square matrix of even size")
    if np.any(np.diag(T) != 0) or not np.array_equal(T, -T.T):
        raise MathPreconditionError("T is not alternating")
    if matrix_rank(T) != size:
        raise MathPreconditionError("T is degenerate")
    m = size // 2

    def form(x, y):
        return x @ T @ y

    work = [row for row in GF.Identity(size)]
    es, fs = [], []
    while work:
        u = work[0]
        partner = next((j for j in range(1, len(work)) if form(u, work[j]) != 0), None)
        if partner is None:
            raise MathPreconditionError("T is degenerate on the remaining subspace")
        v = work[partner] / form(u, work[partner])
        rest = [w for idx, w in enumerate(work) if idx not in (0, partner)]
        # project onto the orthogonal complement of span{u, v}
        work = [w - form(w, v) * u + form(w, u) * v for w in rest]
        es.append(u)
        fs.append(v)

    D = GF(np.vstack([np.asarray(r) for r in es + fs]))
    if not np.array_equal(D @ T @ D.T, standard_s(GF, m)):
        raise MathPreconditionError("symplectic Gram–Schmidt failed: D T D^t != S")
    return D


@dataclass(frozen=True, eq=False)
class SymplecticStructure:
    """T, D, D^{-1} and S for GF(p^{2m}) with its fixed normal basis"""
    field: Field
    normal_basis: NormalBasis
    T: galois.FieldArray
    D: galois.FieldArray
    D_inv: galois.FieldArray
    S: galois.FieldArray

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def m(self) -> int:
        return self.field.k // 2


@functools.lru_cache(maxsize=None)
def symplectic_structure(field: Field) -> SymplecticStructure:
    if field.k % 2:
        raise DimensionMismatchError(f"Φ needs GF(p^(2m)), got GF({field.p}^{field.k})")
    T = t_matrix(field)
    D = compute_D(T)
    logger.debug(f"Матрица D для GF({field.p}^{field.k}) вычислена")
    return SymplecticStructure(
        field=field,
        normal_basis=field.normal_basis,
        T=T,
        D=D,
        D_inv=np.linalg.inv(D),
        S=standard_s(field.prime, field.k // 2),
    )


def big_phi(c, structure: SymplecticStructure) -> SymplecticVector:
    """Φ(c): per position (a_i | b_i) = φ^{-1}(c_i) D^{-1}, then all a-blocks, then all b-blocks"""
    field = structure.field
    c = field.gf(c).reshape(-1)
    n, m = c.size, structure.m
    rows = structure.normal_basis.coordinates(c) @ structure.D_inv
    a = np.asarray(rows[:, :m]).ravel()
    b = np.asarray(rows[:, m:]).ravel()
    return SymplecticVector(field.p, m, n, tuple(int(x) for x in a), tuple(int(x) for x in b))


def big_phi_inv(u: SymplecticVector, structure: SymplecticStructure) -> galois.FieldArray:
    field = structure.field
    if u.p != field.p or u.m != structure.m:
        raise DimensionMismatchError(f"vector over F_{u.p} with m = {u.m} does not match GF({field.p}^{field.k})")
    m, n = u.m, u.n
    a = np.asarray(u.a, dtype=np.int64).reshape(n, m)
    b = np.asarray(u.b, dtype=np.int64).reshape(n, m)
    rows = field.prime(np.concatenate([a, b], axis=1)) @ structure.D
    return structure.normal_basis.combine(rows)


# ===========================================
# P_{2m} AND ITS INVERSE
# ===========================================

def default_alphas(field: Field) -> galois.FieldArray:
    """Power basis 1, x, ..., x^{2m-1}"""
    return field.power_basis


def dual_basis(field: Field, alphas: Iterable = None) -> DualBasisData:
    alphas = default_alphas(field) if alphas is None else field.gf(list(alphas))
    return dual_basis_for_P(field, alphas, lambda x: int(p_functional(x, field)))


def p2m(x, data: DualBasisData) -> galois.FieldArray:
    """(P(α_1^{p^m} x), ..., P(α_{2m}^{p^m} x))"""
    field = data.field
    conj = data.alphas ** field.conjugation_power
    return field.prime(p_functional(conj * field.gf(x), field))


def p2m_inv(s, data: DualBasisData) -> galois.FieldArray:
    """Σ s_j β_j"""
    field = data.field
    s = field.prime(np.asarray(s, dtype=np.int64).reshape(-1))
    if s.size != field.k:
        raise DimensionMismatchError(f"P_2m^-1 expects {field.k} values, got {s.size}")
    return field.from_vectors(s @ field.vectors(data.betas))[0]
