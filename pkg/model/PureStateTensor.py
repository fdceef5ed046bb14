from enum import StrEnum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing_extensions import Self

from model.Shape import Shape


class NormPolicy(StrEnum):
    REQUIRE_NORMALIZED = "RequireNormalized"
    AUTO_NORMALIZE = "AutoNormalize"


class PureStateTensor(BaseModel):
    """
    A class representing the coefficient tensor of a pure multipartite state.

    The amplitudes are stored flat in row-major order, the last subsystem index varying fastest, so that
    ``amps.reshape(shape.dims)[i_1 - 1, ..., i_m - 1]`` is the coefficient of |i_1, ..., i_m>.

    Attributes:
        shape (Shape): The local dimensions of the composite system.
        amps (numpy.ndarray): The read-only flat complex128 amplitude array of length shape.total_dim.
        norm_policy (NormPolicy): The normalization policy the state was built under.

    Methods:
        validate_state (model_validator): Validates the amplitude array against the shape.

    Raises:
        ValueError: If the amplitudes are not a flat complex array of the right length.

    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    shape: Shape = Field(..., description="The local dimensions of the composite system")
    amps: np.ndarray = Field(..., description="The flat row-major amplitude array")
    norm_policy: NormPolicy = Field(NormPolicy.REQUIRE_NORMALIZED, description="The normalization policy")

    @model_validator(mode='after')
    def validate_state(self) -> Self:
        if self.amps.ndim != 1 or self.amps.dtype != np.complex128:
            raise ValueError("The amplitudes must be a flat complex128 array")
        if self.amps.size != self.shape.total_dim:
            raise ValueError(f"Expected {self.shape.total_dim} amplitudes, got {self.amps.size}")
        if self.amps.flags.writeable:
            raise ValueError("The amplitude array must be read-only")
        return self

    @property
    def dims(self) -> tuple[int, ...]:
        return self.shape.dims

    @property
    def m(self) -> int:
        return self.shape.m

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def tensor(self) -> np.ndarray:
        """The amplitudes as an m-dimensional box-shape array (a read-only view)."""
        return self.amps.reshape(self.dims)

    def amplitude(self, *index: int) -> complex:
        """The amplitude of the 1-based multi-index ``index``."""
        return complex(self.tensor()[tuple(i - 1 for i in index)])
