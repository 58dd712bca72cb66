"""Syndrome conversion and classical decoders.

Raw syndromes s_i = alt_inner(generator_i, e) are turned into classical syndromes
⟨g_i^{p^m}, e⟩ and decoded with a coset-leader table or, for cyclic codes, an
error-and-erasure Berlekamp–Massey decoder. Decoders never raise on undecodable
input; they return DecodeStatus.FAILURE_DETECTED.
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Tuple

import galois
import numpy as np

from config import ENUMERATION_CHUNK, MAX_ENUMERATION, SYNDROME_TABLE_LIMIT
from classical_codes import CyclicCode, PunctureExpansion, weight_layer
from exceptions import DimensionMismatchError, MathPreconditionError, ResourceBoundError, UsageError
from models import DecodeStatus, DecoderKind, Pathway
from stabilizer_codes import StabilizerCode
from symplectic import SymplecticVector, form_matrix, phi_scale
from utils import int_vector, matrix_rank, solve_particular

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Syndrome:
    raw: Tuple[int, ...]
    classical: Optional[galois.FieldArray] = None


@dataclass(frozen=True, eq=False)
class DecodeResult:
    status: DecodeStatus
    error_estimate: Optional[galois.FieldArray] = None  # classical picture
    symplectic: Optional[SymplecticVector] = None

    @property
    def ok(self) -> bool:
        return self.status == DecodeStatus.UNIQUE

    @classmethod
    def failure(cls) -> "DecodeResult":
        return cls(DecodeStatus.FAILURE_DETECTED)


# ===========================================
# SYNDROME CONVERSION
# ===========================================

def convert_syndrome_m1(raw: Sequence[int], code: StabilizerCode) -> Syndrome:
    """⟨g_i^p, e⟩ = (ω² − ω^{2p})(ω s_{2i−1} − s_{2i}) / (ω^p − ω)"""
    if code.pathway != Pathway.PHI:
        raise UsageError(f"the m = 1 conversion needs a phi-pathway code, got {code.pathway.value}")
    raw = tuple(int(s) for s in raw)
    if len(raw) != len(code.generators):
        raise DimensionMismatchError(f"expected {len(code.generators)} syndrome values, got {len(raw)}")
    field = code.field
    if not raw:
        return Syndrome(raw, field.gf.Zeros(0))
    s = field.gf(np.asarray(raw, dtype=np.int64).reshape(-1, 2))
    w = field.omega
    classical = phi_scale(field) * (w * s[:, 0] - s[:, 1]) / (w ** field.p - w)
    return Syndrome(raw, classical)


def convert_syndrome_general(raw: Sequence[int], code: StabilizerCode) -> Syndrome:
    """⟨g_i^{p^m}, e⟩ = P_{2m}^{-1}(−s) per block of 2m raw values.

    The raw values are alt_inner(Φ(α_j g_i), Φ(e)) = −P(α_j^{p^m} ⟨g_i^{p^m}, e⟩), hence the sign.
    """
    if code.pathway != Pathway.BIG_PHI:
        raise UsageError(f"the P_2m conversion needs a big_phi-pathway code, got {code.pathway.value}")
    raw = tuple(int(s) for s in raw)
    if len(raw) != len(code.generators):
        raise DimensionMismatchError(f"expected {len(code.generators)} syndrome values, got {len(raw)}")
    field, data = code.field, code.dual_data
    if not raw:
        return Syndrome(raw, field.gf.Zeros(0))
    blocks = field.prime((-np.asarray(raw, dtype=np.int64).reshape(-1, field.k)) % field.p)
    classical = field.from_vectors(blocks @ field.vectors(data.betas))
    return Syndrome(raw, classical)


def convert_syndrome(raw: Sequence[int], code: StabilizerCode) -> Syndrome:
    if code.pathway == Pathway.PHI:
        return convert_syndrome_m1(raw, code)
    if code.pathway == Pathway.BIG_PHI:
        return convert_syndrome_general(raw, code)
    return Syndrome(tuple(int(s) for s in raw))


# ===========================================
# COSET-LEADER TABLES
# ===========================================

class CosetLeaderTable:
    """Minimum-weight leader for every syndrome.

    Filled weight layer by weight layer; inside a layer the lexicographically
    least symbol vector wins.
    """

    def __init__(self, n: int, alphabet: int, expand: Callable[[np.ndarray], galois.FieldArray],
                 measure: Callable[[galois.FieldArray], np.ndarray], size: int,
                 limit: Optional[int] = None):
        limit = SYNDROME_TABLE_LIMIT if limit is None else limit
        if size > limit:
            raise ResourceBoundError(f"syndrome table with {size} entries exceeds the bound {limit}")
        self.size = size
        self.expand = expand
        self.measure = measure
        self.leaders: Dict[Tuple[int, ...], np.ndarray] = {}
        for w in range(n + 1):
            if len(self.leaders) == size:
                break
            layer_size = math.comb(n, w) * (alphabet - 1) ** w
            if layer_size > MAX_ENUMERATION:
                raise ResourceBoundError(f"weight-{w} layer has {layer_size} vectors, above {MAX_ENUMERATION}")
            layer = weight_layer(n, w, alphabet)
            for start in range(0, layer.shape[0], ENUMERATION_CHUNK):
                block = layer[start:start + ENUMERATION_CHUNK]
                keys = np.asarray(measure(expand(block)), dtype=np.int64)
                for row, key in zip(block, map(tuple, keys.tolist())):
                    if key not in self.leaders:
                        self.leaders[key] = row
        logger.debug(f"Таблица лидеров смежных классов: {len(self.leaders)} синдромов")

    def lookup(self, key: Sequence[int]) -> Optional[np.ndarray]:
        return self.leaders.get(tuple(int(v) for v in key))


class CosetLeaderDecoder:
    """Coset-leader decoding for the code with the given check rows"""

    def __init__(self, check_rows: galois.FieldArray, limit: Optional[int] = None):
        self.check_rows = check_rows
        GF = type(check_rows)
        self.GF = GF
        n = check_rows.shape[1]
        size = GF.order ** matrix_rank(check_rows)
        self.table = CosetLeaderTable(
            n, GF.order,
            expand=lambda symbols: GF(symbols),
            measure=lambda words: words @ check_rows.T if check_rows.shape[0] else np.zeros((words.shape[0], 0)),
            size=size, limit=limit,
        )

    def decode(self, syndrome) -> DecodeResult:
        syndrome = self.GF(np.asarray(syndrome, dtype=np.int64).reshape(-1))
        leader = self.table.lookup(int_vector(syndrome))
        if leader is None:
            return DecodeResult.failure()
        return DecodeResult(DecodeStatus.UNIQUE, self.GF(leader))


def coset_leader_decode(check_rows: galois.FieldArray, syndrome) -> DecodeResult:
    return CosetLeaderDecoder(check_rows).decode(syndrome)


class SymplecticTableDecoder:
    """Minimum symplectic-weight leader for every raw syndrome (codes without a classical picture)"""

    def __init__(self, code: StabilizerCode, limit: Optional[int] = None):
        self.code = code
        p, m, n = code.p, code.m, code.n
        GF = galois.GF(p)
        measurement = code.generator_matrix @ form_matrix(p, m, n)
        digits = p ** np.arange(2 * m, dtype=np.int64)

        def expand(symbols: np.ndarray) -> galois.FieldArray:
            local = (symbols[:, :, None] // digits) % p
            a = local[:, :, :m].reshape(symbols.shape[0], n * m)
            b = local[:, :, m:].reshape(symbols.shape[0], n * m)
            return GF(np.concatenate([a, b], axis=1))

        self.expand = expand
        self.table = CosetLeaderTable(
            n, p ** (2 * m), expand=expand,
            measure=lambda words: words @ measurement.T if measurement.shape[0] else np.zeros((words.shape[0], 0)),
            size=p ** len(code.generators), limit=limit,
        )

    def decode(self, raw: Sequence[int]) -> DecodeResult:
        leader = self.table.lookup(raw)
        if leader is None:
            return DecodeResult.failure()
        vector = self.expand(leader.reshape(1, -1))[0]
        code = self.code
        return DecodeResult(DecodeStatus.UNIQUE, symplectic=SymplecticVector.from_array(code.p, code.m, code.n, vector))


def symplectic_table_decode(code: StabilizerCode, raw: Sequence[int]) -> DecodeResult:
    return SymplecticTableDecoder(code).decode(raw)


# ===========================================
# BERLEKAMP–MASSEY WITH ERASURES
# ===========================================

def _const(GF: type, value) -> galois.Poly:
    return galois.Poly(GF([int(value)]))


class BerlekampMasseyDecoder:
    """Error-and-erasure decoding of a cyclic code up to 2t + f < designed distance.

    Power sums S_j = Σ_l e_l γ^{jl} over the BCH run are recovered from the
    classical syndrome H e by solving λ_j H = (γ^{jl})_l over the splitting field.
    """

    def __init__(self, cyclic: CyclicCode, check_rows: galois.FieldArray):
        self.cyclic = cyclic
        self.check_rows = check_rows
        self.GF = cyclic.ext.gf
        n = cyclic.n
        self.span = cyclic.designed_distance - 1
        self.b = cyclic.bch_start
        self.exponents = [(self.b + i) % n for i in range(self.span)]
        H = cyclic.embed(check_rows) if check_rows.shape[0] else self.GF.Zeros((0, n))
        lam = self.GF.Zeros((self.span, H.shape[0]))
        for i, v in enumerate(cyclic.power_sum_rows(self.exponents) if self.span else []):
            solution = solve_particular(H.T, v)
            if solution is None:
                raise MathPreconditionError(f"γ^{self.exponents[i]} is not a zero of the code")
            lam[i] = solution
        self.lam = lam

    def power_sums(self, syndrome: galois.FieldArray) -> galois.FieldArray:
        if self.span == 0:
            return self.GF.Zeros(0)
        return self.lam @ self.cyclic.embed(syndrome)

    def _verify(self, estimate: galois.FieldArray, syndrome: galois.FieldArray) -> DecodeResult:
        if self.check_rows.shape[0] and not np.array_equal(self.check_rows @ estimate, syndrome):
            return DecodeResult.failure()
        return DecodeResult(DecodeStatus.UNIQUE, estimate)

    def decode(self, syndrome, erasures: Sequence[int] = ()) -> DecodeResult:
        """Decode a classical syndrome; erasures are 0-based positions"""
        cyclic, GF = self.cyclic, self.GF
        n, span, b = cyclic.n, self.span, self.b
        field = cyclic.field
        syndrome = field.gf(np.asarray(syndrome, dtype=np.int64).reshape(-1))
        erasures = sorted(set(int(l) for l in erasures))
        rho = len(erasures)
        if rho > span:
            return DecodeResult.failure()
        S = self.power_sums(syndrome)
        if span == 0 or (not np.any(S != 0) and not rho):
            return self._verify(field.gf.Zeros(n), syndrome)

        x = galois.Poly([1, 0], field=GF)
        gamma_locator = galois.Poly.One(field=GF)
        for l in erasures:
            gamma_locator *= galois.Poly(GF([int(-(cyclic.gamma ** l)), 1]))  # 1 − X_l x
        locator, B, L = gamma_locator, gamma_locator, 0
        for r in range(rho + 1, span + 1):
            coeffs = locator.coefficients(order="asc")
            delta = GF(0)
            for j in range(min(len(coeffs), r)):
                delta += coeffs[j] * S[r - 1 - j]
            if delta == 0:
                B = x * B
            elif 2 * L <= r - 1 - rho:
                previous = locator
                locator = locator - _const(GF, delta) * x * B
                B = previous * _const(GF, delta ** -1)
                L = r - L - rho
            else:
                locator = locator - _const(GF, delta) * x * B
                B = x * B

        if 2 * L + rho > span or locator.degree != L + rho:
            return DecodeResult.failure()

        # Chien search over γ^{-l}
        inverse_points = cyclic.gamma ** ((-np.arange(n, dtype=np.int64)) % n)
        positions = np.flatnonzero(np.asarray(locator(inverse_points)) == 0)
        if positions.size != locator.degree:
            return DecodeResult.failure()

        # Forney: Y = −X^{1−b} Ω(X^{-1}) / Λ'(X^{-1}), Ω = S Λ mod x^{δ−1}
        product = galois.Poly(S, order="asc") * locator
        omega_coeffs = product.coefficients(order="asc")[:span]
        evaluator = galois.Poly(omega_coeffs, order="asc")
        derivative = locator.derivative()
        estimate = GF.Zeros(n)
        for l in positions:
            X_inv = inverse_points[l]
            denominator = derivative(X_inv)
            if denominator == 0:
                return DecodeResult.failure()
            X_shift = cyclic.gamma ** ((int(l) * (1 - b)) % n)
            estimate[l] = -X_shift * evaluator(X_inv) / denominator
        values = cyclic.restrict(estimate)
        if values is None:
            return DecodeResult.failure()
        return self._verify(values, syndrome)


def bm_decode(code: CyclicCode, syndrome, erasures: Sequence[int] = (),
              check_rows: Optional[galois.FieldArray] = None) -> DecodeResult:
    rows = code.base.parity_check if check_rows is None else check_rows
    return BerlekampMasseyDecoder(code, rows).decode(syndrome, erasures)


def punctured_decode(expansion: PunctureExpansion, syndrome, parent_decoder: BerlekampMasseyDecoder) -> DecodeResult:
    """Lift child syndromes s_i = Σ_j a_ij s'_j to one s' (free variables zero), decode the
    parent with an erasure at the punctured position and drop that coordinate."""
    GF = type(expansion.a)
    syndrome = GF(np.asarray(syndrome, dtype=np.int64).reshape(-1))
    r = expansion.parent_rows.shape[0]
    if expansion.a.shape[0] == 0:
        lifted = GF.Zeros(r)
    else:
        lifted = solve_particular(expansion.a, syndrome)
        if lifted is None:
            return DecodeResult.failure()
    result = parent_decoder.decode(lifted, erasures=(expansion.position - 1,))
    if not result.ok:
        return DecodeResult.failure()
    keep = [j for j in range(result.error_estimate.size) if j != expansion.position - 1]
    child = result.error_estimate[keep]
    if expansion.child_rows.shape[0] and not np.array_equal(expansion.child_rows @ child, syndrome):
        return DecodeResult.failure()
    return DecodeResult(DecodeStatus.UNIQUE, child)


# ===========================================
# FULL PIPELINE
# ===========================================

class StabilizerDecoder:
    """raw syndrome -> classical syndrome -> classical decoder -> symplectic estimate"""

    def __init__(self, code: StabilizerCode, kind: DecoderKind = DecoderKind.TABLE):
        self.code = code
        self.kind = DecoderKind(kind)
        self._symplectic = None
        self._classical = None
        self._bm = None
        if code.pathway == Pathway.SYMPLECTIC:
            if self.kind != DecoderKind.TABLE:
                raise UsageError("codes given by symplectic generators support only the table decoder")
            self._symplectic = SymplecticTableDecoder(code)
        elif self.kind == DecoderKind.TABLE:
            self._classical = CosetLeaderDecoder(code.classical_check_rows)
        else:
            if code.cyclic is None:
                raise UsageError("the bm decoder needs a code built from cyclic_roots")
            if code.expansion is not None:
                self._bm = BerlekampMasseyDecoder(code.cyclic, code.expansion.parent_rows)
            else:
                self._bm = BerlekampMasseyDecoder(code.cyclic, code.classical_check_rows)

    def convert(self, raw: Sequence[int]) -> Syndrome:
        return convert_syndrome(raw, self.code)

    def decode_classical(self, classical: galois.FieldArray) -> DecodeResult:
        if self._classical is not None:
            return self._classical.decode(classical)
        if self.code.expansion is not None:
            return punctured_decode(self.code.expansion, classical, self._bm)
        return self._bm.decode(classical)

    def decode(self, raw: Sequence[int]) -> Tuple[Syndrome, DecodeResult]:
        syndrome = self.convert(raw)
        if self._symplectic is not None:
            return syndrome, self._symplectic.decode(syndrome.raw)
        result = self.decode_classical(syndrome.classical)
        if not result.ok:
            return syndrome, result
        estimate = self.code.from_classical(result.error_estimate)
        return syndrome, DecodeResult(DecodeStatus.UNIQUE, result.error_estimate, estimate)
