from pydantic import BaseModel, ConfigDict, Field


class MeasureConfig(BaseModel):
    """
    A class representing the settings of the entanglement measures.

    Attributes:
        norm_const (float): The normalization constant N multiplying every sum of squared minors (default 1.0).
        report_breakdown (bool): Whether the per-mode partial sums are reported with the result.

    """

    model_config = ConfigDict(frozen=True)

    norm_const: float = Field(1.0, gt=0.0, description="The normalization constant of the measures")
    report_breakdown: bool = Field(True, description="Whether or not the per-mode contributions are reported")
