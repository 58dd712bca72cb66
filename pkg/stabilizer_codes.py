"""[[n,k,d]]_{p^m} stabilizer codes: from raw symplectic bases, or from Hermitian
self-orthogonal classical codes over GF(p^{2m}) through φ (m = 1) or Φ.
"""
import logging
import functools
import itertools
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import galois
import numpy as np

from config import DEFAULT_SEED
from classical_codes import (
    CyclicCode,
    LinearCode,
    PunctureExpansion,
    conjugate,
    cyclic_from_roots,
    cyclotomic_cosets,
    dual,
    hermitian_dual,
    hermitian_inner,
    hermitian_violation,
    min_weight,
    min_weight_diff,
    puncture,
    puncture_expansion,
)
from exceptions import (
    DependentGeneratorsError,
    DimensionMismatchError,
    DimensionParityError,
    FieldParameterError,
    MathPreconditionError,
    NonAbelianError,
    NotSelfOrthogonalError,
    ResourceBoundError,
    SpecParseError,
    UsageError,
)
from finite_field import DualBasisData, Field, field_create
from models import (
    CodeSpecFile,
    Construction,
    CyclicRecord,
    DistanceKind,
    Pathway,
    SpecOptions,
    StabilizerCodeRecord,
)
from symplectic import (
    SymplecticStructure,
    SymplecticVector,
    alt_dual,
    alt_inner,
    big_phi,
    big_phi_inv,
    dual_basis,
    form_matrix,
    phi,
    phi_inv,
    symplectic_structure,
    symplectic_weights,
)
from utils import decode_digits, encode_digits, int_vector, matrix_rank, row_basis

logger = logging.getLogger(__name__)

# classical and symplectic distances are compared when the symplectic side is this small
CROSS_CHECK_LIMIT = 2 ** 12


@dataclass(eq=False)
class StabilizerCode:
    p: int
    m: int
    n: int
    k: int
    d: int
    distance_kind: DistanceKind
    pathway: Pathway
    generators: List[SymplecticVector]
    field: Optional[Field] = None
    classical: Optional[LinearCode] = None  # C over GF(p^{2m})
    structure: Optional[SymplecticStructure] = None
    dual_data: Optional[DualBasisData] = None
    cyclic: Optional[CyclicCode] = None  # parent decoding code for cyclic constructions
    expansion: Optional[PunctureExpansion] = None
    puncture_position: Optional[int] = None

    @property
    def label(self) -> str:
        return f"[[{self.n},{self.k},{self.d}]]_{self.p ** self.m}"

    @property
    def classical_check_rows(self) -> Optional[galois.FieldArray]:
        """g_i^{p^m}; their kernel is the decoding code (C^{p^m})^⊥"""
        if self.classical is None:
            return None
        return self.classical.gen ** self.field.conjugation_power

    @functools.cached_property
    def generator_matrix(self) -> galois.FieldArray:
        GF = galois.GF(self.p)
        if not self.generators:
            return GF.Zeros((0, 2 * self.m * self.n))
        return GF(np.array([g.a + g.b for g in self.generators], dtype=np.int64))

    @functools.cached_property
    def stabilizer_space(self) -> LinearCode:
        """Row space of the generators, as a code over F_p of length 2mn"""
        return LinearCode(field_create(self.p, 1), 2 * self.m * self.n, row_basis(self.generator_matrix))

    @functools.cached_property
    def _measurement(self) -> galois.FieldArray:
        return self.generator_matrix @ form_matrix(self.p, self.m, self.n)

    def raw_syndrome(self, e: SymplecticVector) -> tuple:
        """s_i = alt_inner(generator_i, e)"""
        if (e.p, e.m, e.n) != (self.p, self.m, self.n):
            raise DimensionMismatchError(f"error over F_{e.p}, m={e.m}, n={e.n} does not match {self.label}")
        if not self.generators:
            return ()
        return int_vector(self._measurement @ e.to_array())

    def in_stabilizer(self, r: SymplecticVector) -> bool:
        return bool(self.stabilizer_space.contains(r.to_array()))

    def to_classical(self, u: SymplecticVector) -> galois.FieldArray:
        if self.pathway == Pathway.PHI:
            return phi(u, self.field)
        if self.pathway == Pathway.BIG_PHI:
            return big_phi_inv(u, self.structure)
        raise UsageError("a symplectic code has no classical picture")

    def from_classical(self, c) -> SymplecticVector:
        if self.pathway == Pathway.PHI:
            return phi_inv(c, self.field)
        if self.pathway == Pathway.BIG_PHI:
            return big_phi(c, self.structure)
        raise UsageError("a symplectic code has no classical picture")


# ===========================================
# DISTANCE
# ===========================================

def _symplectic_distance(generator_matrix: galois.FieldArray, p: int, m: int, n: int,
                         max_enum: Optional[int] = None) -> int:
    """min sym_weight over C^⊥ \\ C (or over C when C^⊥ = C)"""
    GFp = field_create(p, 1)
    inner = LinearCode(GFp, 2 * m * n, generator_matrix)
    outer = LinearCode(GFp, 2 * m * n, alt_dual(generator_matrix, p, m, n))

    def weight(words):
        return symplectic_weights(words, m, n)

    if outer.dimension == inner.dimension:
        return min_weight(inner, weight=weight, max_enum=max_enum)
    return min_weight_diff(outer, inner, weight=weight, max_enum=max_enum)


def _classical_distance(C: LinearCode, max_enum: Optional[int] = None) -> int:
    """min Hamming weight over (C^{p^m})^⊥ \\ C (or over C when they coincide)"""
    outer = hermitian_dual(C)
    if outer.dimension == C.dimension:
        return min_weight(C, max_enum=max_enum)
    return min_weight_diff(outer, C, max_enum=max_enum)


# ===========================================
# CONSTRUCTIONS
# ===========================================

def from_symplectic_basis(vectors: Sequence[SymplecticVector], p: int, m: int, n: int,
                          max_enum: Optional[int] = None) -> StabilizerCode:
    """Stabilizer code whose stabilizer is the span of commuting, independent vectors"""
    vectors = list(vectors)
    for v in vectors:
        if (v.p, v.m, v.n) != (p, m, n):
            raise DimensionMismatchError(f"generator {v} is not in F_{p}^(2*{m}*{n})")
    for i, j in itertools.combinations(range(len(vectors)), 2):
        if alt_inner(vectors[i], vectors[j]) != 0:
            raise NonAbelianError(f"generators {i} and {j} do not commute: alt_inner = "
                                  f"{alt_inner(vectors[i], vectors[j])}", (i, j))
    GF = galois.GF(p)
    matrix = (GF(np.array([v.a + v.b for v in vectors], dtype=np.int64)) if vectors
              else GF.Zeros((0, 2 * m * n)))
    if matrix_rank(matrix) != len(vectors):
        raise DependentGeneratorsError(f"{len(vectors)} generators are linearly dependent over F_{p}")
    if len(vectors) % m:
        raise DimensionParityError(f"{len(vectors)} generators is not a multiple of m = {m}")
    k = n - len(vectors) // m
    d = _symplectic_distance(matrix, p, m, n, max_enum)
    code = StabilizerCode(p=p, m=m, n=n, k=k, d=d, distance_kind=DistanceKind.EXACT,
                          pathway=Pathway.SYMPLECTIC, generators=vectors)
    logger.info(f"Построен код {code.label} из симплектического базиса")
    return code


def _default_pathway(m: int) -> Pathway:
    return Pathway.PHI if m == 1 else Pathway.BIG_PHI


def from_classical_code(C: LinearCode, pathway: Optional[Pathway] = None, alphas: Optional[Sequence] = None,
                        max_enum: Optional[int] = None, cyclic: Optional[CyclicCode] = None,
                        expansion: Optional[PunctureExpansion] = None,
                        puncture_position: Optional[int] = None) -> StabilizerCode:
    """Stabilizer code from a Hermitian self-orthogonal code C ⊆ (C^{p^m})^⊥ over GF(p^{2m}).

    Args:
        C: the classical code
        pathway: Pathway.PHI (m = 1 only) or Pathway.BIG_PHI; defaults by m
        alphas: scalar basis α_1..α_{2m} for Φ; defaults to the power basis
        max_enum: enumeration bound for the distance
        cyclic: parent cyclic decoding code; enables the BCH fallback for d

    Returns:
        StabilizerCode with k = n − 2 dim C
    """
    field = C.field
    if field.k % 2:
        raise FieldParameterError(f"C must be over GF(p^(2m)), got GF({field.p}^{field.k})")
    p, m, n = field.p, field.k // 2, C.n
    pathway = pathway or _default_pathway(m)
    if pathway == Pathway.PHI and m != 1:
        raise FieldParameterError("the φ pathway needs m = 1")
    if pathway == Pathway.SYMPLECTIC:
        raise UsageError("classical codes use the phi or big_phi pathway")

    pair = hermitian_violation(C)
    if pair is not None:
        raise NotSelfOrthogonalError(f"C ⊄ (C^(p^m))^⊥: rows {pair[0]} and {pair[1]}", pair)

    structure, dual_data = None, None
    generators: List[SymplecticVector] = []
    if pathway == Pathway.PHI:
        # (φ^{-1}(g_1), φ^{-1}(ω g_1), φ^{-1}(g_2), ...)
        for g in C.gen:
            generators.append(phi_inv(g, field))
            generators.append(phi_inv(field.omega * g, field))
    else:
        structure = symplectic_structure(field)
        dual_data = dual_basis(field, alphas)
        for g in C.gen:
            for alpha in dual_data.alphas:
                generators.append(big_phi(alpha * g, structure))

    k = n - 2 * C.dimension
    try:
        d = _classical_distance(C, max_enum)
        kind = DistanceKind.EXACT
    except ResourceBoundError:
        if cyclic is None:
            raise
        d = max(1, cyclic.designed_distance - (1 if puncture_position else 0))
        kind = DistanceKind.BCH_LOWER_BOUND
        logger.warning(f"Перебор слишком велик; используется оценка БЧХ d >= {d}")

    code = StabilizerCode(p=p, m=m, n=n, k=k, d=d, distance_kind=kind, pathway=pathway,
                          generators=generators, field=field, classical=C, structure=structure,
                          dual_data=dual_data, cyclic=cyclic, expansion=expansion,
                          puncture_position=puncture_position)

    if kind == DistanceKind.EXACT and p ** (2 * m * n - len(generators)) <= CROSS_CHECK_LIMIT:
        d_sym = _symplectic_distance(code.generator_matrix, p, m, n)
        assert d_sym == d, f"classical distance {d} differs from symplectic distance {d_sym}"
    logger.info(f"Построен код {code.label} ({kind.value}) по пути {pathway.value}")
    return code


def from_cyclic(field: Field, n: int, roots: Sequence[int], puncture_at: Optional[int] = None,
                pathway: Optional[Pathway] = None, alphas: Optional[Sequence] = None,
                max_enum: Optional[int] = None) -> StabilizerCode:
    """Stabilizer code whose decoding code is the cyclic code D with the given zeros.

    C = ((D)^⊥)^{p^m}, so that (C^{p^m})^⊥ = D; with `puncture_at`, D is punctured first.
    """
    D = cyclic_from_roots(field, n, roots)
    power = field.conjugation_power
    if puncture_at is None:
        C = conjugate(dual(D.base), power)
        expansion = None
    else:
        child, _ = puncture(D.base, puncture_at)
        C = conjugate(dual(child), power)
        expansion = puncture_expansion(D.base.parity_check, C.gen ** power, puncture_at)
    return from_classical_code(C, pathway=pathway, alphas=alphas, max_enum=max_enum, cyclic=D,
                               expansion=expansion, puncture_position=puncture_at)


def _parse_rows(rows: Sequence[str], base: int, length: int, what: str) -> List[List[int]]:
    parsed = []
    for i, text in enumerate(rows):
        try:
            parsed.append(decode_digits(text, base, length))
        except ValueError as e:
            raise SpecParseError(f"construction.{what}.{i}: {e}") from e
    return parsed


def build_code(spec: CodeSpecFile, max_enum: Optional[int] = None) -> StabilizerCode:
    """Build and verify the code a spec file describes"""
    p, m, n = spec.p, spec.m, spec.n
    options = spec.options
    construction = spec.construction
    kind = construction.kind

    if options.puncture and kind != "cyclic_roots":
        raise UsageError("puncture is only supported for cyclic_roots constructions")
    if kind == "symplectic_generators":
        if options.pathway not in (None, Pathway.SYMPLECTIC):
            raise UsageError("symplectic_generators use the symplectic pathway")
        vectors = []
        for i, text in enumerate(construction.symplectic_generators):
            try:
                vectors.append(SymplecticVector.parse(text, p, m, n))
            except SpecParseError as e:
                raise SpecParseError(f"construction.symplectic_generators.{i}: {e}") from e
        code = from_symplectic_basis(vectors, p, m, n, max_enum)
    else:
        field = field_create(p, 2 * m)
        if options.omega is not None:
            field = field.with_omega(options.omega)
        if options.pathway == Pathway.SYMPLECTIC:
            raise UsageError("classical constructions use the phi or big_phi pathway")
        alphas = options.alpha_basis
        if spec.k is not None and (n - spec.k) % 2:
            raise DimensionParityError(f"n − k = {n - spec.k} is odd; C would have dimension (n − k)/2")
        if kind == "generator_rows":
            rows = _parse_rows(construction.generator_rows, field.order, n, "generator_rows")
            C = LinearCode.from_rows(field, rows, n, strict=True)
            code = from_classical_code(C, pathway=options.pathway, alphas=alphas, max_enum=max_enum)
        else:
            position = options.puncture[0] if options.puncture else None
            if position is not None and position > n:
                raise UsageError(f"puncture position {position} is outside 1..{n}")
            code = from_cyclic(field, n, construction.cyclic_roots, puncture_at=position,
                               pathway=options.pathway, alphas=alphas, max_enum=max_enum)

    if spec.k is not None and spec.k != code.k:
        raise DimensionParityError(f"spec declares k = {spec.k} but the construction gives k = {code.k}")
    return code


# ===========================================
# RECORDS
# ===========================================

def to_record(code: StabilizerCode) -> StabilizerCodeRecord:
    record = StabilizerCodeRecord(
        p=code.p, m=code.m, n=code.n, k=code.k, d=code.d,
        distance_kind=code.distance_kind, pathway=code.pathway,
        generators=[g.to_string() for g in code.generators],
    )
    if code.field is not None:
        q = code.field.order
        record.field = code.field.describe()
        record.classical_generator = code.classical.rows_as_strings()
        record.classical_check_rows = [encode_digits(row, q) for row in np.asarray(code.classical_check_rows)]
    if code.structure is not None:
        record.theta = list(code.field.coeffs(code.structure.normal_basis.theta))
        record.D = [encode_digits(row, code.p) for row in np.asarray(code.structure.D)]
        record.alphas = [int(a) for a in code.dual_data.alphas]
    if code.cyclic is not None:
        record.cyclic = CyclicRecord(
            length=code.cyclic.n,
            roots=list(code.cyclic.roots),
            zeros=list(code.cyclic.zeros),
            designed_distance=code.cyclic.designed_distance,
            bch_start=code.cyclic.bch_start,
            puncture=code.puncture_position,
        )
    return record


def to_spec(code: StabilizerCode) -> CodeSpecFile:
    """A spec file that rebuilds this code"""
    options = SpecOptions()
    if code.pathway == Pathway.SYMPLECTIC:
        construction = Construction(symplectic_generators=[g.to_string() for g in code.generators])
        n = code.n
    else:
        field = code.field
        if int(field.omega) != int(field.primitive):
            options.omega = int(field.omega)
        if code.pathway != _default_pathway(code.m):
            options.pathway = code.pathway
        if code.dual_data is not None and not np.array_equal(code.dual_data.alphas, field.power_basis):
            options.alpha_basis = [int(a) for a in code.dual_data.alphas]
        if code.cyclic is not None:
            construction = Construction(cyclic_roots=list(code.cyclic.roots))
            n = code.cyclic.n
            if code.puncture_position:
                options.puncture = [code.puncture_position]
        else:
            construction = Construction(generator_rows=code.classical.rows_as_strings())
            n = code.n
    return CodeSpecFile(p=code.p, m=code.m, n=n, k=code.k, construction=construction, options=options)


def check_record(code: StabilizerCode, record: StabilizerCodeRecord) -> None:
    """A rebuilt code must reproduce the stored parameters and generator strings"""
    rebuilt = to_record(code)
    if (rebuilt.n, rebuilt.k, rebuilt.d) != (record.n, record.k, record.d):
        raise MathPreconditionError(f"code file says {record.label} but the spec rebuilds {rebuilt.label}")
    if rebuilt.generators != record.generators:
        raise MathPreconditionError("code file generators differ from the rebuilt generators")


# ===========================================
# SEARCH
# ===========================================

def _rank_key(code: StabilizerCode):
    return -code.d, 0 if code.distance_kind == DistanceKind.EXACT else 1


def search_codes(p: int, m: int, n: int, target_k: int, budget: int, seed: int = DEFAULT_SEED,
                 max_enum: Optional[int] = None) -> List[StabilizerCode]:
    """Candidates for [[n, target_k]]_{p^m}: cyclic root sets first, then random
    Hermitian self-orthogonal generator matrices grown row by row. Ranked by d."""
    if budget <= 0:
        return []
    if not 0 <= target_k <= n or (n - target_k) % 2:
        logger.warning(f"Нет линейных кодов [[{n},{target_k}]]: n − k должно быть четным и 0 <= k <= n")
        return []
    field = field_create(p, 2 * m)
    q = field.order
    r = (n - target_k) // 2
    found: List[StabilizerCode] = []
    seen = set()
    attempts = 0

    def keep(code: StabilizerCode) -> None:
        key = tuple(int_vector(code.classical.gen))
        if key not in seen:
            seen.add(key)
            found.append(code)
            logger.debug(f"Найден кандидат {code.label}")

    if math.gcd(n, p) == 1:
        cosets = cyclotomic_cosets(q, n)
        for count in range(len(cosets) + 1):
            for combo in itertools.combinations(cosets, count):
                zeros = sorted(j for coset in combo for j in coset)
                if len(zeros) != r:
                    continue
                if attempts >= budget:
                    break
                attempts += 1
                try:
                    keep(from_cyclic(field, n, zeros, max_enum=max_enum))
                except (NotSelfOrthogonalError, ResourceBoundError) as e:
                    logger.debug(f"Нули {zeros} отклонены: {e}")

    rng = np.random.default_rng(seed)
    while attempts < budget:
        rows = []
        current = LinearCode.zero(field, n)
        while len(rows) < r and attempts < budget:
            space = hermitian_dual(current)
            attempts += 1
            candidate = field.gf(rng.integers(0, q, size=space.dimension)) @ space.gen
            if hermitian_inner(candidate, candidate, field) != 0 or current.contains(candidate):
                continue
            rows.append(candidate)
            current = LinearCode.from_rows(field, np.stack([np.asarray(row) for row in rows]), n)
        if len(rows) != r:
            break
        try:
            keep(from_classical_code(current, max_enum=max_enum))
        except ResourceBoundError as e:
            logger.warning(f"Кандидат пропущен: {e}")
        if r == 0:
            break

    found.sort(key=_rank_key)
    logger.info(f"Поиск [[{n},{target_k}]]_{p ** m}: {len(found)} кодов за {attempts} попыток")
    return found
