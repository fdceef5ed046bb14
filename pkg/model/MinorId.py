from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing_extensions import Self


class MinorId(BaseModel):
    """
    A class identifying one 2x2 minor of a mode matricization.

    Attributes:
        mode (int): The 1-based subsystem whose index runs along the rows.
        row_pair (tuple[int, int]): The 1-based row indices (k, l) with k < l.
        col_pair (tuple[int, int]): The 1-based linearized column indices (c, c') with c < c'.

    Methods:
        validate_minor_id (model_validator): Validates the canonical (strictly increasing) form of both pairs.

    Raises:
        ValueError: If an index pair is not strictly increasing or not 1-based.

    """

    model_config = ConfigDict(frozen=True)

    mode: int = Field(..., ge=1, description="The subsystem indexing the rows of the matricization")
    row_pair: tuple[int, int] = Field(..., description="The rows (k, l) of the minor")
    col_pair: tuple[int, int] = Field(..., description="The linearized columns (c, c') of the minor")

    @model_validator(mode='after')
    def validate_minor_id(self) -> Self:
        for name, (low, high) in (("row", self.row_pair), ("column", self.col_pair)):
            if not 1 <= low < high:
                raise ValueError(f"The {name} pair must be strictly increasing and 1-based")
        return self
