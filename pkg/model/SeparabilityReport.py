from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing_extensions import Self

from model.MeasureResult import MeasureResult
from model.MinorValue import MinorValue
from model.PartitionSpec import PartitionSpec


class BipartitionVerdict(BaseModel):
    """
    A class holding the factorability verdict of one cut.

    Attributes:
        partition (PartitionSpec): The cut.
        factorable (bool): Whether the state factors across the cut.
        second_singular_value (float): The second largest singular value of the matricization along the cut.
        max_minor_modulus (Optional[float]): The largest modulus of a 2x2 minor of that matricization, None when the
            minor scan was skipped for size.

    """

    model_config = ConfigDict(frozen=True)

    partition: PartitionSpec = Field(..., description="The cut")
    factorable: bool = Field(..., description="Whether or not the state factors across the cut")
    second_singular_value: float = Field(..., ge=0.0, description="The second singular value of the cut")
    max_minor_modulus: Optional[float] = Field(None, ge=0.0, description="The largest 2x2 minor modulus of the cut")


class SeparabilityReport(BaseModel):
    """
    A class representing the full separability analysis of a pure state.

    Attributes:
        dims (tuple[int, ...]): The shape of the analysed state.
        fully_separable (bool): Whether every single-subsystem cut is factorable.
        per_bipartition (list[BipartitionVerdict]): One verdict per canonical cut, by block size then lexicographic.
        measure_E (MeasureResult): The multipartite measure summed over all modes.
        concurrence (Optional[MeasureResult]): The bipartite concurrence, for two-partite states only.
        on_segre_variety (bool): Whether every 2x2 minor of every mode matricization vanishes within the tolerance.
        witness (Optional[MinorValue]): A minor of maximal modulus when the state is off the Segre variety.
        tolerance (float): The absolute threshold shared by the singular value and minor tests.
        consistency_error (Optional[str]): A description of any disagreement between the rank and minor tests.

    Methods:
        validate_report (model_validator): Validates the verdicts against the tolerance and the full separability
            flag against the single-subsystem cuts.

    Raises:
        ValueError: If a verdict or the full separability flag is inconsistent.

    """

    model_config = ConfigDict(frozen=True)

    dims: tuple[int, ...] = Field(..., description="The shape of the analysed state")
    fully_separable: bool = Field(..., description="Whether or not the state is a product of m local states")
    per_bipartition: list[BipartitionVerdict] = Field(..., description="The verdict of every cut")
    measure_E: MeasureResult = Field(..., description="The multipartite entanglement measure")
    concurrence: Optional[MeasureResult] = Field(None, description="The bipartite concurrence (m = 2 only)")
    on_segre_variety: bool = Field(..., description="Whether or not all mode minors vanish")
    witness: Optional[MinorValue] = Field(None, description="A maximal minor of a state off the variety")
    tolerance: float = Field(..., gt=0.0, description="The absolute decision threshold")
    consistency_error: Optional[str] = Field(None, description="The rank and minor tests disagreement, if any")

    @model_validator(mode='after')
    def validate_report(self) -> Self:
        for verdict in self.per_bipartition:
            if verdict.factorable != (verdict.second_singular_value < self.tolerance):
                raise ValueError(f"The verdict of {verdict.partition.label} contradicts its singular value")
        single = [v.factorable for v in self.per_bipartition if v.partition.single_mode is not None]
        if self.fully_separable != all(single):
            raise ValueError("The full separability flag contradicts the single-subsystem cuts")
        return self

    @property
    def factorable_partitions(self) -> list[PartitionSpec]:
        return [v.partition for v in self.per_bipartition if v.factorable]
