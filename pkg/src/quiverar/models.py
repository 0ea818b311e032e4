"""
Data models for quiverar.

This module defines the configuration model and the report models printed
by the command line, including classification flags, translate results and
almost split sequence verification.
"""

import logging
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator

from quiverar.errors import InputError

logger = logging.getLogger(__name__)

LOG_LEVELS = ("CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG")


class Truth(str, Enum):
    """Enum representing a three-valued answer."""
    TRUE = "true"
    FALSE = "false"
    UNDECIDED = "undecided"


class Certificate(str, Enum):
    """Enum representing how indecomposability of a summand was established."""
    CERTIFIED = "certified"
    PROBABLE = "probably-indecomposable"


class WitnessKind(str, Enum):
    """Enum representing the kind of evidence attached to a false flag."""
    IDEMPOTENT = "idempotent"
    NONZERO_PATH = "nonzero-path"
    CYCLE_POWER = "cycle-power"


class Direction(str, Enum):
    """Enum representing the direction of an Auslander-Reiten translate."""
    TAU = "tau"
    TAU_MINUS = "tau-minus"


class ConclusionStatus(str, Enum):
    """Enum representing the status of an implication."""
    HOLDS = "holds"
    UNDECIDED = "undecided"


class AppConfig(BaseModel):
    """Model representing the application configuration."""
    completion_degree: int = Field(default=10, ge=2)
    saturation_length: int = Field(default=12, ge=2)
    path_length_cap: int = Field(default=12, ge=2)
    multiserial_n_cap: int = Field(default=6, ge=2)
    seed: int = 0
    iso_enumeration_cap: int = Field(default=4096, ge=2)
    random_attempts: int = Field(default=64, ge=2)
    sweep_dimension_cap: int = Field(default=4, ge=2)
    log_level: str = "WARNING"

    @field_validator("log_level")
    @classmethod
    def check_log_level(cls, value: str) -> str:
        level = value.upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"unknown log level {value!r}")
        return level


def load_config(path: Optional[Path] = None) -> AppConfig:
    """Load the configuration.

    Args:
        path: Optional JSON file; defaults apply to every missing field.

    Returns:
        The validated configuration.
    """
    if path is None:
        return AppConfig()
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read configuration {path}: {e}") from e
    try:
        config = AppConfig.model_validate_json(text)
    except ValidationError as e:
        raise InputError(f"invalid configuration {path}: {e}") from e
    logger.info(f"Loaded configuration from {path}")
    return config


class WitnessTerm(BaseModel):
    """Model representing one term of an algebra element."""
    path: str
    coefficient: str


class Witness(BaseModel):
    """Model representing checkable evidence for a false flag."""
    kind: WitnessKind
    vertex: Optional[str] = None
    path: Optional[str] = None
    terms: List[WitnessTerm] = []
    length: Optional[int] = None


class Flag(BaseModel):
    """Model representing a three-valued classification flag."""
    value: Truth
    bound: Optional[int] = None
    witness: Optional[Witness] = None
    per_vertex: Dict[str, Truth] = {}
    thresholds: Dict[str, Optional[int]] = {}


class ClassificationReport(BaseModel):
    """Model representing the structural classification of an algebra."""
    field: str
    status: str
    left_locally_finite: bool
    right_locally_finite: bool
    locally_finite: bool
    locally_semiperfect: Flag
    locally_semiprimary: Flag
    locally_left_bounded: Flag
    locally_right_bounded: Flag
    left_eventually_multiserial: Flag
    right_eventually_multiserial: Flag
    oriented_cycles: List[str] = []
    oriented_cycles_nilpotent: Flag
    semiprimary_via_cycles: Flag


class Conclusion(BaseModel):
    """Model representing one implication drawn from a classification."""
    key: str
    statement: str
    hypotheses: List[str]
    status: ConclusionStatus


class ConclusionsReport(BaseModel):
    """Model representing the implications available for an algebra."""
    conclusions: List[Conclusion]


class BuildReport(BaseModel):
    """Model representing a built algebra."""
    field: str
    status: str
    complete: bool
    rules: List[str]
    dimension: Optional[int] = None
    nilpotency_index: Optional[int] = None
    basis: Dict[str, List[str]] = {}


class ModuleSummary(BaseModel):
    """Model representing a module by name and dimension vector."""
    name: str
    dims: Dict[str, int]
    certificate: Optional[Certificate] = None


class DecompositionReport(BaseModel):
    """Model representing a Krull-Schmidt decomposition."""
    module: ModuleSummary
    summands: List[ModuleSummary]
    seed: int


class SummandTranslate(BaseModel):
    """Model representing the translate of one indecomposable summand."""
    summand: ModuleSummary
    translate: ModuleSummary
    p0: List[str] = []
    p1: List[str] = []
    note: Optional[str] = None


class TranslateReport(BaseModel):
    """Model representing an Auslander-Reiten translate."""
    module: ModuleSummary
    direction: Direction
    result: ModuleSummary
    summands: List[ModuleSummary] = []
    parts: List[SummandTranslate] = []
    p0: List[str] = []
    p1: List[str] = []
    note: Optional[str] = None
    window_unsafe: bool = False


class ClauseResult(BaseModel):
    """Model representing one clause of an almost split verification."""
    name: str
    passed: bool
    witness: Optional[str] = None
    detail: Optional[str] = None


class VerificationReport(BaseModel):
    """Model representing the verification of a short exact sequence."""
    clauses: List[ClauseResult]
    probes: List[str] = []

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses)


class AlmostSplitReport(BaseModel):
    """Model representing an almost split sequence."""
    module: str
    direction: Direction
    start: ModuleSummary
    middle: ModuleSummary
    end: ModuleSummary
    certificates: Dict[str, bool]
    verification: Optional[VerificationReport] = None
    window_unsafe: bool = False


class DualityRow(BaseModel):
    """Model representing the dimension identities for one probe."""
    probe: str
    ext_probe_tau: int
    stable_module_probe: int
    ext_module_probe: int
    costable_probe_tau: int
    holds: bool


class DualityReport(BaseModel):
    """Model representing an Auslander-Reiten duality check."""
    module: str
    tau: ModuleSummary
    rows: List[DualityRow]
    passed: bool
    window_unsafe: bool = False


class SixTermReport(BaseModel):
    """Model representing the Hom dimensions around a short exact sequence."""
    hom_end_tau: int
    hom_middle_tau: int
    hom_start_tau: int
    hom_module_end: int
    hom_module_middle: int
    hom_module_start: int
    alternating_sum: int
    restriction_injective: bool


class DualizeReport(BaseModel):
    """Model representing the dual of a module over the opposite algebra."""
    module: str
    dims: Dict[str, int]
    matrices: Dict[str, List[List[str]]]


class CanonicalFormReport(BaseModel):
    """Model representing the canonical text of a workspace."""
    text: str
