from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field

from model.MeasureConfig import MeasureConfig


class OutputMode(StrEnum):
    HUMAN = "Human"
    JSON = "Json"


class CliConfig(BaseModel):
    """
    A class representing the command-line settings shared by the subcommands.

    Attributes:
        eps (float): The absolute decision threshold for singular values and minors (default 1e-9).
        norm_const (float): The normalization constant of the measures (default 1.0).
        output (OutputMode): Human-readable or JSON output.
        normalize (bool): Whether input states are rescaled to unit norm instead of rejected.
        seed (int): The seed of the random state generators.

    """

    model_config = ConfigDict(frozen=True)

    eps: float = Field(1e-9, gt=0.0, description="The absolute decision threshold")
    norm_const: float = Field(1.0, gt=0.0, description="The normalization constant of the measures")
    output: OutputMode = Field(OutputMode.HUMAN, description="The output format")
    normalize: bool = Field(False, description="Whether or not input states are normalized on loading")
    seed: int = Field(0, ge=0, lt=2 ** 64, description="The seed of the random state generators")

    @property
    def measure_config(self) -> MeasureConfig:
        return MeasureConfig(norm_const=self.norm_const)
