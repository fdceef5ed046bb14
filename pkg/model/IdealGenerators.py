from enum import StrEnum
from math import comb
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing_extensions import Self

from model.PartitionSpec import PartitionSpec
from model.Shape import Shape
from model.SymbolicGenerator import SymbolicGenerator


class IdealKind(StrEnum):
    MODE = "Mode"
    SEGRE = "Segre"
    BIPARTITION = "Bipartition"


class IdealLabel(BaseModel):
    """
    A class naming which ideal a list of generators spans.

    Attributes:
        kind (IdealKind): Mode(j), Segre or Bipartition(cut).
        mode (Optional[int]): The subsystem j for a mode ideal.
        partition (Optional[PartitionSpec]): The cut for a bipartition ideal.

    """

    model_config = ConfigDict(frozen=True)

    kind: IdealKind = Field(..., description="The kind of ideal")
    mode: Optional[int] = Field(None, ge=1, description="The subsystem of a mode ideal")
    partition: Optional[PartitionSpec] = Field(None, description="The cut of a bipartition ideal")

    @model_validator(mode='after')
    def validate_label(self) -> Self:
        if (self.kind == IdealKind.MODE) != (self.mode is not None):
            raise ValueError("The mode must be provided exactly for mode ideals")
        if (self.kind == IdealKind.BIPARTITION) != (self.partition is not None):
            raise ValueError("The partition must be provided exactly for bipartition ideals")
        return self

    def __str__(self) -> str:
        if self.kind == IdealKind.MODE:
            return f"Mode({self.mode})"
        if self.kind == IdealKind.BIPARTITION:
            return f"Bipartition({self.partition.label})"
        return "Segre"


class IdealGenerators(BaseModel):
    """
    A class representing the generators of a determinantal ideal.

    Attributes:
        label (IdealLabel): Which ideal the generators span.
        shape (Shape): The shape whose amplitudes are the variables.
        gens (list[SymbolicGenerator]): The canonical generators, pairwise distinct.

    Methods:
        validate_ideal (model_validator): Validates generator uniqueness and the mode ideal count
            C(N_j, 2) * C(prod_{i != j} N_i, 2).

    Raises:
        ValueError: If a generator is repeated or a mode ideal has the wrong size.

    """

    model_config = ConfigDict(frozen=True)

    label: IdealLabel = Field(..., description="Which ideal the generators span")
    shape: Shape = Field(..., description="The shape of the variables")
    gens: list[SymbolicGenerator] = Field(..., description="The canonical generators")

    @model_validator(mode='after')
    def validate_ideal(self) -> Self:
        keys = {gen.canonical_key for gen in self.gens}
        if len(keys) != len(self.gens):
            raise ValueError("The generators must be pairwise distinct")
        if self.label.kind == IdealKind.MODE:
            j = self.label.mode
            expected = comb(self.shape.dims[j - 1], 2) * comb(self.shape.complement_dim(j), 2)
            if len(self.gens) != expected:
                raise ValueError(f"Mode({j}) needs {expected} generators, got {len(self.gens)}")
        return self
