"""Exact arithmetic in GF(p^k): deterministic field construction, Frobenius maps,
primitive and normal elements, coordinates and the dual basis of a functional.

Elements are galois FieldArray scalars (or arrays); their integer representation
is sum(c_i * p**i) where c_i is the coefficient of x^i in the power basis of the
modulus root. "Least" element always means least integer representation.
"""
import logging
import functools
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence, Tuple, Union

import galois
import numpy as np

from config import MAX_FIELD_ORDER
from exceptions import (
    FieldMismatchError,
    FieldParameterError,
    MathPreconditionError,
    ResourceBoundError,
    SingularBasisError,
)
from models import FieldRecord
from utils import matrix_rank

logger = logging.getLogger(__name__)

Scalar = Union[galois.FieldArray, int]


class ArithOp(str, Enum):
    """Operations accepted by arith()"""
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    DIV = "div"
    NEG = "neg"
    INV = "inv"
    POW = "pow"


class Field:
    """GF(p^k) with a fixed monic irreducible modulus, primitive element and ω.

    ω defaults to the primitive element; over GF(p^2) it may be replaced by any
    element with {ω, ω^p} independent over F_p.
    """

    def __init__(self, p: int, k: int, gf: type, modulus: Tuple[int, ...],
                 primitive: int, omega: Optional[int] = None):
        self.p = p
        self.k = k
        self.order = p ** k
        self.gf = gf
        self.prime = galois.GF(p)
        self.modulus = tuple(modulus)
        self._primitive = int(primitive)
        self._omega = int(primitive if omega is None else omega)

    def __repr__(self) -> str:
        return f"Field(GF({self.p}^{self.k}), modulus={list(self.modulus)}, omega={self._omega})"

    def __call__(self, value) -> galois.FieldArray:
        return self.gf(value)

    @property
    def primitive(self) -> galois.FieldArray:
        return self.gf(self._primitive)

    @property
    def omega(self) -> galois.FieldArray:
        return self.gf(self._omega)

    @property
    def elements(self) -> galois.FieldArray:
        return self.gf.elements

    # --- coefficient vectors -------------------------------------------

    def vectors(self, values) -> galois.FieldArray:
        """Power-basis coefficient vectors over F_p, one row per element."""
        ints = np.asarray(self.gf(values), dtype=np.int64).reshape(-1)
        powers = self.p ** np.arange(self.k, dtype=np.int64)
        return self.prime((ints[:, None] // powers) % self.p)

    def from_vectors(self, rows) -> galois.FieldArray:
        """Elements with the given power-basis coefficient rows."""
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.k)
        powers = self.p ** np.arange(self.k, dtype=np.int64)
        return self.gf(rows @ powers)

    def coeffs(self, x) -> Tuple[int, ...]:
        return tuple(int(c) for c in self.vectors(x)[0])

    @functools.cached_property
    def power_basis(self) -> galois.FieldArray:
        return self.gf(self.p ** np.arange(self.k, dtype=np.int64))

    @functools.cached_property
    def normal_basis(self) -> "NormalBasis":
        return find_normal_basis(self)

    @property
    def conjugation_power(self) -> int:
        """p^m for GF(p^{2m}); the exponent of the Hermitian-type conjugation."""
        if self.k % 2:
            raise FieldParameterError(f"GF({self.p}^{self.k}) has odd degree; no conjugation x -> x^(p^(k/2))")
        return self.p ** (self.k // 2)

    def with_omega(self, omega: Scalar) -> "Field":
        """Copy of this field using another ω (only meaningful for k = 2)."""
        w = self.gf(int(omega))
        if self.k != 2:
            raise FieldParameterError("an ω override is only supported for GF(p^2)")
        orbit = self.gf([int(w), int(w ** self.p)])
        if matrix_rank(self.vectors(orbit)) != 2:
            raise FieldParameterError(f"ω = {int(w)}: ω and ω^p are linearly dependent over F_{self.p}")
        if int(w) != self._primitive:
            logger.info(f"Используется ω = {int(w)} вместо примитивного элемента {self._primitive}")
        return Field(self.p, self.k, self.gf, self.modulus, self._primitive, int(w))

    def describe(self) -> FieldRecord:
        return FieldRecord(
            p=self.p,
            k=self.k,
            modulus=list(self.modulus),
            primitive=list(self.coeffs(self.primitive)),
            omega=list(self.coeffs(self.omega)),
        )


@dataclass(frozen=True, eq=False)
class NormalBasis:
    """θ, θ^p, ..., θ^{p^{k-1}} and the change of basis from power coordinates."""
    field: Field
    theta: galois.FieldArray
    powers: galois.FieldArray
    change_of_basis: galois.FieldArray  # power coords -> normal coords
    inverse: galois.FieldArray  # normal coords -> power coords

    def coordinates(self, values) -> galois.FieldArray:
        return self.field.vectors(values) @ self.change_of_basis

    def combine(self, rows) -> galois.FieldArray:
        rows = self.field.prime(np.asarray(rows, dtype=np.int64).reshape(-1, self.field.k))
        return self.field.from_vectors(rows @ self.inverse)


@dataclass(frozen=True, eq=False)
class DualBasisData:
    """α_1..α_{2m} and β_1..β_{2m} with P(α_j^{p^m} β_k) = δ_jk."""
    field: Field
    alphas: galois.FieldArray
    betas: galois.FieldArray
    functional: Callable[[galois.FieldArray], int]

    def gram(self) -> galois.FieldArray:
        q = self.field.conjugation_power
        k = self.field.k
        G = self.field.prime.Zeros((k, k))
        for j in range(k):
            for l in range(k):
                G[j, l] = self.functional(self.alphas[j] ** q * self.betas[l])
        return G


# ===========================================
# FIELD CONSTRUCTION
# ===========================================

def _is_primitive(gf: type, x: galois.FieldArray, prime_factors: Sequence[int]) -> np.ndarray:
    n = gf.order - 1
    ok = np.asarray(x != 0)
    for r in prime_factors:
        ok &= np.asarray(x ** (n // r) != 1)
    return ok


def _scan_primitive(gf: type, chunk: int = 4096) -> int:
    primes, _ = galois.factors(gf.order - 1) if gf.order > 2 else ([], [])
    start = 1
    while start < gf.order:
        stop = min(start + chunk, gf.order)
        candidates = gf(np.arange(start, stop, dtype=np.int64))
        hits = np.flatnonzero(_is_primitive(gf, candidates, primes))
        if hits.size:
            return start + int(hits[0])
        start = stop
    raise MathPreconditionError(f"no primitive element in GF({gf.order})")


@functools.lru_cache(maxsize=None)
def field_create(p: int, k: int, allow_large: bool = False) -> Field:
    """GF(p^k) with the least monic irreducible modulus and the least primitive element.

    Args:
        p: prime characteristic
        k: extension degree, k >= 1
        allow_large: permit p^k above MAX_FIELD_ORDER (arithmetic-only use)

    Returns:
        Field: deterministic across runs
    """
    if not isinstance(p, (int, np.integer)) or p < 2 or not galois.is_prime(int(p)):
        raise FieldParameterError(f"p = {p} is not prime")
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise FieldParameterError(f"extension degree k = {k} must be a positive integer")
    p, k = int(p), int(k)
    order = p ** k
    if order > MAX_FIELD_ORDER and not allow_large:
        raise ResourceBoundError(f"GF({p}^{k}) has {order} elements, above the bound {MAX_FIELD_ORDER}")

    if k == 1:
        gf = galois.GF(p)
        # prime field: the modulus is x itself
        modulus = (0, 1)
    else:
        poly = galois.irreducible_poly(p, k, method="min")
        gf = galois.GF(order, irreducible_poly=poly)
        modulus = tuple(int(c) for c in poly.coeffs[::-1])

    primitive = _scan_primitive(gf)
    logger.debug(f"Построено поле GF({p}^{k}): модуль {list(modulus)}, примитивный элемент {primitive}")
    return Field(p, k, gf, modulus, primitive)


def find_primitive(field: Field) -> galois.FieldArray:
    """Least element of multiplicative order p^k - 1."""
    return field.gf(_scan_primitive(field.gf))


# ===========================================
# ARITHMETIC
# ===========================================

def _check_operand(field_gf: type, value, name: str) -> None:
    if not isinstance(value, galois.FieldArray):
        raise FieldMismatchError(f"{name} is not a field element")
    if type(value) is not field_gf:
        raise FieldMismatchError(f"{name} belongs to {type(value).name}, expected {field_gf.name}")


def arith(op: Union[ArithOp, str], x: galois.FieldArray, y: Optional[Scalar] = None) -> galois.FieldArray:
    """Field operation on elements of one field; pow takes an integer exponent."""
    op = ArithOp(op)
    _check_operand(type(x), x, "x")
    gf = type(x)

    if op == ArithOp.NEG:
        return -x
    if op == ArithOp.INV:
        if np.any(x == 0):
            raise MathPreconditionError("division by zero in GF(q): inverse of 0")
        return gf(1) / x
    if op == ArithOp.POW:
        if not isinstance(y, (int, np.integer)):
            raise FieldMismatchError("pow expects an integer exponent")
        if y < 0 and np.any(x == 0):
            raise MathPreconditionError("division by zero in GF(q): negative power of 0")
        return x ** int(y)

    _check_operand(gf, y, "y")
    if op == ArithOp.ADD:
        return x + y
    if op == ArithOp.SUB:
        return x - y
    if op == ArithOp.MUL:
        return x * y
    if np.any(y == 0):
        raise MathPreconditionError("division by zero in GF(q)")
    return x / y


def frobenius(x: galois.FieldArray, j: int) -> galois.FieldArray:
    """x^(p^j); the identity for j a multiple of the degree."""
    if j < 0:
        raise FieldParameterError("frobenius exponent must be non-negative")
    gf = type(x)
    j %= gf.degree
    return x ** (gf.characteristic ** j)


# ===========================================
# BASES
# ===========================================

def find_normal_basis(field: Field) -> NormalBasis:
    """Least θ whose Frobenius orbit is a basis of GF(p^k) over F_p."""
    p, k = field.p, field.k
    for candidate in range(1, field.order):
        theta = field.gf(candidate)
        orbit = field.gf([int(frobenius(theta, i)) for i in range(k)])
        M = field.vectors(orbit)
        if matrix_rank(M) == k:
            logger.debug(f"Нормальный базис GF({p}^{k}): θ = {candidate}")
            return NormalBasis(
                field=field,
                theta=theta,
                powers=orbit,
                change_of_basis=np.linalg.inv(M),
                inverse=M,
            )
    raise MathPreconditionError(f"no normal element in GF({p}^{k})")


def coords(x, basis: galois.FieldArray, field: Field) -> galois.FieldArray:
    """Coordinates of x (scalar or array) over F_p in the given basis of GF(p^k)."""
    basis = field.gf(basis)
    if basis.size != field.k:
        raise SingularBasisError(f"a basis of GF({field.p}^{field.k}) needs {field.k} elements, got {basis.size}")
    B = field.vectors(basis)
    if matrix_rank(B) != field.k:
        raise SingularBasisError("basis elements are linearly dependent over F_p")
    result = field.vectors(x) @ np.linalg.inv(B)
    return result[0] if np.ndim(x) == 0 else result


def dual_basis_for_P(field: Field, alphas, functional: Callable[[galois.FieldArray], int]) -> DualBasisData:
    """β_k with functional(α_j^{p^m} β_k) = δ_jk, solved as a k×k system over F_p."""
    alphas = field.gf(alphas)
    k = field.k
    q = field.conjugation_power
    if matrix_rank(field.vectors(alphas)) != k or alphas.size != k:
        raise SingularBasisError("alphas are not a basis over F_p")

    # A[j, l] = P(α_j^{p^m} x^l); β_k has power coordinates A^{-1} e_k
    A = field.prime.Zeros((k, k))
    for j in range(k):
        conj = alphas[j] ** q
        for l in range(k):
            A[j, l] = functional(conj * field.power_basis[l])
    if matrix_rank(A) != k:
        raise SingularBasisError("the functional is zero or alphas are dependent; no dual basis")
    B = np.linalg.inv(A)
    betas = field.from_vectors(B.T)
    data = DualBasisData(field=field, alphas=alphas, betas=betas, functional=functional)
    assert np.array_equal(data.gram(), field.prime.Identity(k)), "dual basis Gram matrix is not the identity"
    return data
