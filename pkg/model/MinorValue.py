from pydantic import BaseModel, ConfigDict, Field, field_serializer

from model.MinorId import MinorId


class MinorValue(BaseModel):
    """
    A class holding the value of a 2x2 minor evaluated on a state.

    Attributes:
        id (MinorId): The index data of the minor.
        value (complex): alpha[k, c] * alpha[l, c'] - alpha[k, c'] * alpha[l, c] read from the mode matricization.

    """

    model_config = ConfigDict(frozen=True)

    id: MinorId = Field(..., description="The index data of the minor")
    value: complex = Field(..., description="The determinant of the 2x2 submatrix")

    @property
    def modulus(self) -> float:
        return abs(self.value)

    @field_serializer("value")
    def serialize_value(self, value: complex) -> list[float]:
        return [value.real, value.imag]
