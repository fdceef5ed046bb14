from pydantic import BaseModel, Field, model_validator
from typing_extensions import Self


class StateFile(BaseModel):
    """
    A class representing the JSON state file format.

    Example: ``{"dims": [2, 2], "amps": [[0.7071067811865476, 0], [0, 0], [0, 0], [0.7071067811865476, 0]]}``.
    Amplitudes are listed row-major with the last subsystem index varying fastest; the first entry is the
    coefficient of |1, ..., 1> in the 1-based convention.

    Attributes:
        dims (list[int]): The local dimensions (N_1, ..., N_m).
        amps (list[tuple[float, float]]): The amplitudes as [re, im] pairs.
        normalize (bool): Whether the amplitudes are rescaled to unit norm on loading.

    Methods:
        validate_state_file (model_validator): Validates that every dimension is positive.

    Raises:
        ValueError: If a dimension is smaller than 1.

    """

    dims: list[int] = Field(..., min_length=1, description="The local dimensions")
    amps: list[tuple[float, float]] = Field(..., description="The amplitudes as [re, im] pairs")
    normalize: bool = Field(False, description="Whether or not the amplitudes are normalized on loading")

    @model_validator(mode='after')
    def validate_state_file(self) -> Self:
        if any(n < 1 for n in self.dims):
            raise ValueError("Every dimension must be at least 1")
        return self
