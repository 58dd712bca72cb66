import logging
import time
from typing import Iterator, Optional, Sequence, Tuple

import numpy as np

from classical_codes import weight_layer
from config import ENUMERATION_CHUNK, MAX_ENUMERATION
from decoders import DecodeResult, StabilizerDecoder
from exceptions import QCodesError, ResourceBoundError, UsageError
from models import ChannelKind, ChannelSpec, DecodeTranscript, DecoderKind, ResidualClass, TrialReport
from stabilizer_codes import StabilizerCode
from symplectic import SymplecticVector, sym_weight
from utils import encode_digits

logger = logging.getLogger(__name__)


class SimulationService:
    """Error-correction cycles in the symplectic picture: sample, measure, decode, classify"""

    def __init__(self, code: StabilizerCode, decoder: DecoderKind = DecoderKind.TABLE):
        self.code = code
        self.decoder_kind = DecoderKind(decoder)
        self.decoder = StabilizerDecoder(code, self.decoder_kind)

    @property
    def local_size(self) -> int:
        """Number of local blocks (a_i | b_i) at one position"""
        return self.code.p ** (2 * self.code.m)

    def _block_vector(self, symbols: np.ndarray) -> SymplecticVector:
        code = self.code
        p, m, n = code.p, code.m, code.n
        digits = (np.asarray(symbols, dtype=np.int64)[:, None] // p ** np.arange(2 * m)) % p
        a = digits[:, :m].reshape(-1)
        b = digits[:, m:].reshape(-1)
        return SymplecticVector(p, m, n, tuple(int(v) for v in a), tuple(int(v) for v in b))

    def sample_error(self, spec: ChannelSpec, trial_index: int) -> SymplecticVector:
        """Deterministic in (seed, trial_index)"""
        n = self.code.n
        rng = np.random.default_rng([spec.seed, trial_index])
        symbols = np.zeros(n, dtype=np.int64)
        if spec.kind == ChannelKind.FIXED_WEIGHT:
            if spec.weight > n:
                raise UsageError(f"weight {spec.weight} exceeds n = {n}")
            positions = rng.choice(n, size=spec.weight, replace=False)
            symbols[positions] = rng.integers(1, self.local_size, size=spec.weight)
        else:
            hit = rng.random(n) < spec.rate
            symbols[hit] = rng.integers(1, self.local_size, size=int(hit.sum()))
        return self._block_vector(symbols)

    def enumerate_errors(self, weight: int) -> Iterator[SymplecticVector]:
        """Every error of symplectic weight exactly `weight`, in lexicographic block order"""
        n = self.code.n
        if not 0 <= weight <= n:
            raise UsageError(f"weight {weight} outside 0..{n}")
        layer = weight_layer(n, weight, self.local_size)
        if layer.shape[0] > MAX_ENUMERATION:
            raise ResourceBoundError(f"{layer.shape[0]} errors of weight {weight} exceed the bound {MAX_ENUMERATION}")
        for row in layer:
            yield self._block_vector(row)

    def measure(self, e: SymplecticVector) -> Tuple[int, ...]:
        return self.code.raw_syndrome(e)

    def classify_residual(self, estimate: Optional[SymplecticVector], error: SymplecticVector) -> ResidualClass:
        if estimate is None:
            return ResidualClass.FAILURE_DETECTED
        residual = estimate - error
        if residual.is_zero():
            return ResidualClass.EXACT
        assert not any(self.measure(residual)), "decoder estimate does not reproduce the syndrome"
        if self.code.in_stabilizer(residual):
            return ResidualClass.DEGENERATE
        return ResidualClass.LOGICAL_ERROR

    def correct(self, error: SymplecticVector) -> Tuple[Tuple[int, ...], DecodeResult, ResidualClass]:
        raw = self.measure(error)
        try:
            _, result = self.decoder.decode(raw)
        except QCodesError as e:
            logger.debug(f"Декодер не справился: {e}")
            result = DecodeResult.failure()
        outcome = self.classify_residual(result.symplectic if result.ok else None, error)
        return raw, result, outcome

    def transcript(self, error: SymplecticVector) -> DecodeTranscript:
        syndrome, result = self.decoder.decode(self.measure(error))
        outcome = self.classify_residual(result.symplectic if result.ok else None, error)
        classical = "-"
        if syndrome.classical is not None:
            classical = encode_digits(syndrome.classical, self.code.field.order) or "-"
        return DecodeTranscript(
            error=error.to_string(),
            raw_syndrome=encode_digits(syndrome.raw, self.code.p) or "-",
            classical_syndrome=classical,
            estimate=result.symplectic.to_string() if result.ok else "-",
            residual=outcome,
        )

    def _report(self, channel: str, seed: Optional[int]) -> TrialReport:
        return TrialReport(code_label=self.code.label, decoder=self.decoder_kind, channel=channel, seed=seed)

    def run_trials(self, spec: ChannelSpec, n_trials: int) -> TrialReport:
        """Monte-Carlo trials; the report depends only on (code, decoder, spec, n_trials)"""
        if n_trials < 0:
            raise UsageError("the number of trials must be non-negative")
        report = self._report(spec.describe(), spec.seed)
        started = time.perf_counter()
        for start in range(0, n_trials, ENUMERATION_CHUNK):
            batch = self._report(report.channel, spec.seed)
            for index in range(start, min(start + ENUMERATION_CHUNK, n_trials)):
                _, _, outcome = self.correct(self.sample_error(spec, index))
                batch.record(outcome)
            report.merge(batch)
        report.elapsed = time.perf_counter() - started
        logger.info(report.summary_line())
        return report

    def run_exhaustive(self, weight: int) -> TrialReport:
        """Decode every error of the given symplectic weight"""
        report = self._report(f"exhaustive t={weight}", None)
        started = time.perf_counter()
        for error in self.enumerate_errors(weight):
            _, _, outcome = self.correct(error)
            report.record(outcome)
        report.elapsed = time.perf_counter() - started
        guaranteed = weight <= (self.code.d - 1) // 2
        if guaranteed and report.successes != report.trials:
            logger.error(f"Ошибки внутри гарантированного радиуса: {report.summary_line()}")
        logger.info(report.summary_line())
        return report

    def decode_strings(self, errors: Sequence[str]) -> list:
        """Transcripts for errors given as 'a|b' strings"""
        code = self.code
        vectors = [SymplecticVector.parse(text, code.p, code.m, code.n) for text in errors]
        for v in vectors:
            logger.debug(f"Ошибка {v} веса {sym_weight(v)}")
        return [self.transcript(v) for v in vectors]
