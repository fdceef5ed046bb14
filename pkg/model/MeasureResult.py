import math
from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing_extensions import Self

from model.MeasureConfig import MeasureConfig


class MeasureConvention(StrEnum):
    CONCURRENCE = "concurrence"
    ALL_MODES = "all-modes"
    THREE_QUBIT_EXPLICIT = "three-qubit-explicit"
    ORDERED_SUM = "ordered-sum"
    PURITY = "purity"


class MeasureResult(BaseModel):
    """
    A class representing the value of an entanglement measure.

    Every partial sum is 4 times the sum of |minor|^2 over the unordered minors of one mode, which equals the
    ordered index sum where each unordered minor appears 4 times.

    Attributes:
        value (float): The non-negative measure value.
        per_mode (list[tuple[int, float]]): The (mode, partial sum) breakdown, empty when not requested.
        config (MeasureConfig): The configuration the value was computed with.
        convention (MeasureConvention): The formula that produced the value.

    Methods:
        validate_measure_result (model_validator): Validates that the value matches sqrt(N * sum of partials).

    Raises:
        ValueError: If the value is negative or inconsistent with the breakdown.

    """

    model_config = ConfigDict(frozen=True)

    value: float = Field(..., ge=0.0, description="The measure value")
    per_mode: list[tuple[int, float]] = Field(default_factory=list, description="The per-mode partial sums")
    config: MeasureConfig = Field(default_factory=MeasureConfig, description="The measure configuration")
    convention: MeasureConvention = Field(MeasureConvention.ALL_MODES, description="The formula used")

    @model_validator(mode='after')
    def validate_measure_result(self) -> Self:
        if self.per_mode:
            expected = math.sqrt(self.config.norm_const * math.fsum(partial for _, partial in self.per_mode))
            if abs(expected - self.value) > 1e-12 * max(1.0, expected):
                raise ValueError(f"The measure value {self.value} does not match its breakdown ({expected})")
        return self
