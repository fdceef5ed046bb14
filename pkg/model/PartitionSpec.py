from typing import Iterable, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing_extensions import Self

from model.EntanglementError import EmptyPartition


class PartitionSpec(BaseModel):
    """
    A class representing a bipartition S | S-bar of the subsystems of an m-partite system.

    The canonical block is the side containing subsystem 1; testing a cut for factorability tests both sides at once.

    Attributes:
        m (int): The number of subsystems.
        block (tuple[int, ...]): The sorted 1-based subsystems of the side containing subsystem 1.

    Methods:
        validate_partition (model_validator): Validates the canonical form of the block.

    Raises:
        ValueError: If the block is not a canonical nonempty proper subset of 1..m.

    """

    model_config = ConfigDict(frozen=True)

    m: int = Field(..., ge=2, description="The number of subsystems")
    block: tuple[int, ...] = Field(..., min_length=1, description="The side of the cut containing subsystem 1")

    @model_validator(mode='after')
    def validate_partition(self) -> Self:
        if list(self.block) != sorted(set(self.block)):
            raise ValueError("The block must be sorted without repetitions")
        if self.block[0] != 1:
            raise ValueError("The canonical block must contain subsystem 1")
        if self.block[-1] > self.m or len(self.block) == self.m:
            raise ValueError("The block must be a proper subset of the subsystems")
        return self

    @classmethod
    def of(cls, block: Iterable[int], m: int) -> "PartitionSpec":
        """
        Canonicalize either side of a cut.

        Args:
            block: The 1-based subsystems of one side of the cut.
            m: The number of subsystems.

        Raises:
            EmptyPartition: If the side is empty, covers every subsystem or lies outside 1..m.

        Returns:
            PartitionSpec: The cut with the block containing subsystem 1.
        """
        side = set(block)
        if not side or any(not 1 <= j <= m for j in side) or len(side) == m:
            raise EmptyPartition(f"{sorted(side)} is not a nonempty proper subset of 1..{m}")
        if 1 not in side:
            side = set(range(1, m + 1)) - side
        return cls(m=m, block=tuple(sorted(side)))

    @property
    def complement(self) -> tuple[int, ...]:
        return tuple(j for j in range(1, self.m + 1) if j not in self.block)

    @property
    def single_mode(self) -> Optional[int]:
        """The subsystem split off alone by this cut, or None when both sides hold several subsystems."""
        if len(self.block) == 1:
            return self.block[0]
        if len(self.complement) == 1:
            return self.complement[0]
        return None

    @property
    def label(self) -> str:
        left = ",".join(map(str, self.block))
        right = ",".join(map(str, self.complement))
        return f"{{{left}}}|{{{right}}}"
