from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator
from typing import List, Optional, Tuple
from enum import Enum
import json
import os
import logging

from config import DEFAULT_SEED
from exceptions import SpecParseError
from utils import parse_json_document

logger = logging.getLogger(__name__)


class DistanceKind(str, Enum):
    """How the minimum distance was obtained"""
    EXACT = "exact"  # полная переборная проверка
    BCH_LOWER_BOUND = "bch-lower-bound"  # конструктивная оценка БЧХ


class Pathway(str, Enum):
    """Construction pathway of a stabilizer code"""
    SYMPLECTIC = "symplectic"  # raw generators in F_p^{2mn}
    PHI = "phi"  # m = 1, φ(a|b) = ωa + ω^p b
    BIG_PHI = "big_phi"  # normal basis, D matrix and Φ


class DecodeStatus(str, Enum):
    UNIQUE = "unique"
    FAILURE_DETECTED = "failure-detected"


class DecoderKind(str, Enum):
    TABLE = "table"
    BM = "bm"


class ChannelKind(str, Enum):
    FIXED_WEIGHT = "fixed-weight-uniform"
    IID = "iid-depolarizing-analog"


class ResidualClass(str, Enum):
    """Outcome of one correction cycle"""
    EXACT = "exact"
    DEGENERATE = "degenerate"
    LOGICAL_ERROR = "logical-error"
    FAILURE_DETECTED = "failure-detected"


class FieldRecord(BaseModel):
    """Reproducible description of GF(p^k); coefficient lists are ascending"""
    p: int
    k: int
    modulus: List[int]
    primitive: List[int]
    omega: List[int]


# ===========================================
# SPEC FILES
# ===========================================

class Construction(BaseModel):
    """Exactly one construction pathway"""
    model_config = ConfigDict(extra="forbid")

    generator_rows: Optional[List[str]] = None  # rows of C over GF(p^{2m})
    cyclic_roots: Optional[List[int]] = None  # zeros of the cyclic decoding code
    symplectic_generators: Optional[List[str]] = None  # "a|b" strings over F_p

    @model_validator(mode="after")
    def exactly_one(self) -> "Construction":
        chosen = [name for name in ("generator_rows", "cyclic_roots", "symplectic_generators")
                  if getattr(self, name) is not None]
        if len(chosen) != 1:
            raise ValueError(f"exactly one construction is required, got {chosen or 'none'}")
        return self

    @property
    def kind(self) -> str:
        for name in ("generator_rows", "cyclic_roots", "symplectic_generators"):
            if getattr(self, name) is not None:
                return name
        raise AssertionError("unreachable")


class SpecOptions(BaseModel):
    model_config = ConfigDict(extra="forbid")

    omega: Optional[int] = None  # integer representation of ω in GF(p^2)
    alpha_basis: Optional[List[int]] = None  # α_1..α_{2m}, integer representations
    puncture: List[int] = Field(default_factory=list)  # 1-based positions; at most one
    pathway: Optional[Pathway] = None

    @field_validator("puncture")
    @classmethod
    def single_puncture(cls, v: List[int]) -> List[int]:
        if len(v) > 1:
            raise ValueError("only one puncture position is supported")
        if any(pos < 1 for pos in v):
            raise ValueError("puncture positions are 1-based")
        return v


class CodeSpecFile(BaseModel):
    """Input document for `build`"""
    model_config = ConfigDict(extra="forbid")

    p: int
    m: int = 1
    n: int
    k: Optional[int] = None  # optional expected k, checked after construction
    construction: Construction
    options: SpecOptions = Field(default_factory=SpecOptions)

    @field_validator("m", "n")
    @classmethod
    def positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("must be a positive integer")
        return v


# ===========================================
# CODE RECORDS
# ===========================================

class CyclicRecord(BaseModel):
    length: int
    roots: List[int]  # as given
    zeros: List[int]  # cyclotomic closure
    designed_distance: int
    bch_start: int
    puncture: Optional[int] = None  # 1-based


class StabilizerCodeRecord(BaseModel):
    """Everything needed to reproduce decoding bit-exactly"""
    p: int
    m: int
    n: int
    k: int
    d: int
    distance_kind: DistanceKind
    pathway: Pathway
    field: Optional[FieldRecord] = None
    theta: Optional[List[int]] = None
    D: Optional[List[str]] = None
    alphas: Optional[List[int]] = None
    generators: List[str] = []
    classical_generator: List[str] = []
    classical_check_rows: List[str] = []
    cyclic: Optional[CyclicRecord] = None

    @property
    def label(self) -> str:
        return f"[[{self.n},{self.k},{self.d}]]_{self.p ** self.m}"

    def to_report(self) -> str:
        """Human-readable summary for the CLI"""
        flag = "d exact" if self.distance_kind == DistanceKind.EXACT else "d bch-lower-bound"
        lines = [f"{self.label} ({flag})", f"pathway: {self.pathway.value}"]
        if self.field is not None:
            lines.append(f"field: GF({self.field.p}^{self.field.k}) modulus={self.field.modulus} "
                         f"omega={self.field.omega}")
        lines.append(f"generators: {len(self.generators)}")
        for g in self.generators:
            lines.append(f"  {g}")
        if self.classical_check_rows:
            lines.append("classical check rows g_i^(p^m):")
            for row in self.classical_check_rows:
                lines.append(f"  {row}")
        if self.cyclic is not None:
            lines.append(f"cyclic: n={self.cyclic.length} zeros={self.cyclic.zeros} "
                         f"designed distance={self.cyclic.designed_distance}"
                         + (f" punctured at {self.cyclic.puncture}" if self.cyclic.puncture else ""))
        return "\n".join(lines)


# ===========================================
# SIMULATION
# ===========================================

class ChannelSpec(BaseModel):
    """Discrete symplectic error model"""
    kind: ChannelKind = ChannelKind.FIXED_WEIGHT
    weight: Optional[int] = None
    rate: Optional[float] = None
    seed: int = DEFAULT_SEED

    @model_validator(mode="after")
    def check_parameters(self) -> "ChannelSpec":
        if self.kind == ChannelKind.FIXED_WEIGHT:
            if self.weight is None or self.weight < 0:
                raise ValueError("fixed-weight channel needs a weight t >= 0")
        else:
            if self.rate is None or not 0.0 <= self.rate <= 1.0:
                raise ValueError("iid channel needs a rate in [0, 1]")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")
        return self

    def describe(self) -> str:
        if self.kind == ChannelKind.FIXED_WEIGHT:
            return f"{self.kind.value} t={self.weight} (convention)"
        return f"{self.kind.value} rate={self.rate} (convention)"


class TrialReport(BaseModel):
    code_label: str
    decoder: DecoderKind
    channel: str
    seed: Optional[int] = None
    trials: int = 0
    successes: int = 0
    exact_recoveries: int = 0
    degenerate_recoveries: int = 0
    detected_failures: int = 0
    logical_errors: int = 0
    elapsed: float = 0.0

    @property
    def success_rate(self) -> float:
        return self.successes / self.trials if self.trials else 1.0

    def record(self, outcome: ResidualClass) -> None:
        self.trials += 1
        if outcome == ResidualClass.EXACT:
            self.exact_recoveries += 1
            self.successes += 1
        elif outcome == ResidualClass.DEGENERATE:
            self.degenerate_recoveries += 1
            self.successes += 1
        elif outcome == ResidualClass.FAILURE_DETECTED:
            self.detected_failures += 1
        else:
            self.logical_errors += 1

    def merge(self, other: "TrialReport") -> None:
        for name in ("trials", "successes", "exact_recoveries", "degenerate_recoveries",
                     "detected_failures", "logical_errors"):
            setattr(self, name, getattr(self, name) + getattr(other, name))

    def summary_line(self) -> str:
        return (f"SUMMARY code={self.code_label} decoder={self.decoder.value} trials={self.trials} "
                f"successes={self.successes} exact={self.exact_recoveries} "
                f"degenerate={self.degenerate_recoveries} failures={self.detected_failures} "
                f"logical={self.logical_errors} rate={self.success_rate:.6f}")

    def render(self, include_timing: bool = False) -> str:
        """Plain-text report; timing is left out so that reports are reproducible"""
        lines = [
            f"code: {self.code_label}",
            f"decoder: {self.decoder.value}",
            f"channel: {self.channel}",
            f"seed: {self.seed if self.seed is not None else '-'}",
            f"trials: {self.trials}",
            f"successes: {self.successes} ({self.successes}/{self.trials})",
            f"  exact recoveries: {self.exact_recoveries}",
            f"  degenerate recoveries: {self.degenerate_recoveries}",
            f"detected failures: {self.detected_failures}",
            f"logical errors: {self.logical_errors}",
        ]
        if include_timing:
            lines.append(f"elapsed: {self.elapsed:.3f}s")
        lines.append(self.summary_line())
        return "\n".join(lines)


class DecodeTranscript(BaseModel):
    """One line of a decode transcript"""
    error: str
    raw_syndrome: str
    classical_syndrome: str
    estimate: str
    residual: ResidualClass

    def to_line(self) -> str:
        return (f"error={self.error} raw={self.raw_syndrome} classical={self.classical_syndrome} "
                f"estimate={self.estimate} residual={self.residual.value}")


# ===========================================
# STORAGE
# ===========================================

class CodeStorage:
    """JSON storage for spec files and built code files"""

    @classmethod
    def read_text(cls, path: str) -> str:
        if not os.path.exists(path):
            raise SpecParseError("file not found", path=path)
        with open(path, 'r', encoding='utf-8') as f:
            return f.read()

    @classmethod
    def parse_spec(cls, data: dict, path: Optional[str] = None) -> CodeSpecFile:
        try:
            return CodeSpecFile.model_validate(data)
        except ValidationError as e:
            first = e.errors()[0]
            location = ".".join(str(part) for part in first["loc"]) or "<root>"
            raise SpecParseError(f"{location}: {first['msg']}", path=path) from e

    @classmethod
    def load_spec(cls, path: str) -> CodeSpecFile:
        """Load a code spec file"""
        data = parse_json_document(cls.read_text(path), path=path)
        # a built code file embeds its spec
        if "spec" in data and "code" in data:
            data = data["spec"]
        spec = cls.parse_spec(data, path=path)
        logger.info(f"Загружен файл спецификации {path}")
        return spec

    @classmethod
    def load_code_file(cls, path: str) -> Tuple[CodeSpecFile, StabilizerCodeRecord]:
        """Load a code file written by save_code"""
        data = parse_json_document(cls.read_text(path), path=path)
        if "spec" not in data or "code" not in data:
            raise SpecParseError("not a code file (expected keys 'spec' and 'code')", path=path)
        spec = cls.parse_spec(data["spec"], path=path)
        try:
            record = StabilizerCodeRecord.model_validate(data["code"])
        except ValidationError as e:
            first = e.errors()[0]
            location = ".".join(str(part) for part in first["loc"])
            raise SpecParseError(f"code.{location}: {first['msg']}", path=path) from e
        logger.info(f"Загружен файл кода {path}: {record.label}")
        return spec, record

    @classmethod
    def dump_spec(cls, spec: CodeSpecFile) -> str:
        return json.dumps(spec.model_dump(mode="json", exclude_none=True), indent=2, ensure_ascii=False)

    @classmethod
    def dump_code(cls, spec: CodeSpecFile, record: StabilizerCodeRecord) -> str:
        data = {
            "spec": spec.model_dump(mode="json", exclude_none=True),
            "code": record.model_dump(mode="json"),
        }
        return json.dumps(data, indent=2, ensure_ascii=False)

    @classmethod
    def write_text(cls, path: str, text: str) -> None:
        with open(path, 'w', encoding='utf-8') as f:
            f.write(text)
            if not text.endswith("\n"):
                f.write("\n")
        logger.info(f"Сохранен файл {path}")
