import math
from typing import ClassVar

from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing_extensions import Self

from model.EntanglementError import DegenerateMode, ShapeTooLarge, SubsystemOutOfRange


class Shape(BaseModel):
    """
    A class representing the local dimensions of a composite system.

    Attributes:
        dims (tuple[int, ...]): The dimensions (N_1, ..., N_m) of the m subsystems, each at least 1.

    Methods:
        validate_shape (model_validator): Validates that the total dimension stays within the supported range.

    Raises:
        ValueError: If the shape has no subsystem or its total dimension exceeds 2**24.

    """

    MAX_TOTAL_DIM: ClassVar[int] = 2 ** 24

    model_config = ConfigDict(frozen=True)

    dims: tuple[int, ...] = Field(..., min_length=1, description="The dimension of every subsystem")

    @model_validator(mode='after')
    def validate_shape(self) -> Self:
        if any(n < 1 for n in self.dims):
            raise ValueError("Every subsystem dimension must be at least 1")
        if math.prod(self.dims) > self.MAX_TOTAL_DIM:
            raise ValueError(f"The total dimension must not exceed {self.MAX_TOTAL_DIM}")
        return self

    @classmethod
    def of(cls, dims) -> "Shape":
        """
        Build a shape, raising ``ShapeTooLarge`` instead of a validation error for oversized systems.

        Args:
            dims: The subsystem dimensions.

        Returns:
            Shape: The validated shape.
        """
        dims = tuple(int(n) for n in dims)
        if dims and all(n >= 1 for n in dims) and math.prod(dims) > cls.MAX_TOTAL_DIM:
            raise ShapeTooLarge(f"Shape {dims} has total dimension {math.prod(dims)} > {cls.MAX_TOTAL_DIM}")
        return cls(dims=dims)

    @property
    def m(self) -> int:
        return len(self.dims)

    @property
    def total_dim(self) -> int:
        return math.prod(self.dims)

    def require_analyzable(self) -> None:
        """Raise ``DegenerateMode`` unless every subsystem has dimension at least 2."""
        degenerate = [j + 1 for j, n in enumerate(self.dims) if n < 2]
        if degenerate:
            raise DegenerateMode(f"Subsystems {degenerate} of shape {self.dims} have dimension 1")

    def require_subsystem(self, j: int) -> None:
        if not 1 <= j <= self.m:
            raise SubsystemOutOfRange(f"Subsystem {j} is out of range 1..{self.m}")

    def complement_dim(self, j: int) -> int:
        """The product of every dimension except the one of subsystem ``j`` (1-based)."""
        return math.prod(n for i, n in enumerate(self.dims, start=1) if i != j)
