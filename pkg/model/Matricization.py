import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing_extensions import Self

from model.Shape import Shape


class Matricization(BaseModel):
    """
    A class representing a matrix unfolding of a pure state tensor.

    Attributes:
        shape (Shape): The shape of the source tensor.
        row_subsystems (tuple[int, ...]): The ordered 1-based subsystems indexing the rows.
        col_subsystems (tuple[int, ...]): The complementary ordered subsystems indexing the columns.
        matrix (numpy.ndarray): The read-only dense complex matrix; rows and columns are linearized row-major
            over their subsystems, last index fastest.

    Methods:
        validate_matricization (model_validator): Validates that rows and columns split the subsystems and that the
            matrix has the matching size.

    Raises:
        ValueError: If the subsystem split or the matrix size is inconsistent.

    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    shape: Shape = Field(..., description="The shape of the source tensor")
    row_subsystems: tuple[int, ...] = Field(..., min_length=1, description="The subsystems indexing the rows")
    col_subsystems: tuple[int, ...] = Field(..., min_length=1, description="The subsystems indexing the columns")
    matrix: np.ndarray = Field(..., description="The unfolded matrix")

    @model_validator(mode='after')
    def validate_matricization(self) -> Self:
        rows, cols = set(self.row_subsystems), set(self.col_subsystems)
        if rows & cols or rows | cols != set(range(1, self.shape.m + 1)):
            raise ValueError("The row and column subsystems must partition the subsystems")
        if len(rows) != len(self.row_subsystems) or len(cols) != len(self.col_subsystems):
            raise ValueError("A subsystem is listed twice")
        expected = (self.row_dims_product, self.col_dims_product)
        if self.matrix.shape != expected:
            raise ValueError(f"Expected a {expected} matrix, got {self.matrix.shape}")
        return self

    @property
    def row_dims(self) -> tuple[int, ...]:
        return tuple(self.shape.dims[j - 1] for j in self.row_subsystems)

    @property
    def col_dims(self) -> tuple[int, ...]:
        return tuple(self.shape.dims[j - 1] for j in self.col_subsystems)

    @property
    def row_dims_product(self) -> int:
        return int(np.prod(self.row_dims))

    @property
    def col_dims_product(self) -> int:
        return int(np.prod(self.col_dims))
