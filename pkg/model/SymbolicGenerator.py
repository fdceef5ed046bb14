from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing_extensions import Self

MultiIndex = tuple[int, ...]
Term = tuple[MultiIndex, MultiIndex]


def variable_name(index: MultiIndex) -> str:
    return "a_{" + ",".join(map(str, index)) + "}"


class SymbolicGenerator(BaseModel):
    """
    A class representing a binomial ideal generator a_{v1} * a_{v2} - a_{v3} * a_{v4}.

    Variables are named by 1-based multi-indices. The canonical form sorts the two indices inside each term and
    makes the lexicographically smaller term positive, so two generators equal up to sign share one canonical form.

    Attributes:
        positive_term (tuple): The indices (v1, v2) of the positive monomial.
        negative_term (tuple): The indices (v3, v4) of the negative monomial.

    Methods:
        validate_generator (model_validator): Validates that the binomial is nonzero and in canonical form.

    Raises:
        ValueError: If both monomials are equal or the generator is not canonical.

    """

    model_config = ConfigDict(frozen=True)

    positive_term: Term = Field(..., description="The positive monomial")
    negative_term: Term = Field(..., description="The negative monomial")

    @model_validator(mode='after')
    def validate_generator(self) -> Self:
        if self.positive_term == self.negative_term:
            raise ValueError("The two monomials of a generator must differ")
        for term in (self.positive_term, self.negative_term):
            if term[0] > term[1]:
                raise ValueError("The indices of a monomial must be sorted")
        if self.positive_term > self.negative_term:
            raise ValueError("The positive monomial must be the lexicographically smaller one")
        return self

    @classmethod
    def from_terms(cls, positive: Term, negative: Term) -> tuple["SymbolicGenerator", int]:
        """
        Canonicalize the binomial positive - negative.

        Args:
            positive: The two multi-indices of the positive monomial, in any order.
            negative: The two multi-indices of the negative monomial, in any order.

        Returns:
            tuple: The canonical generator and the sign (+1 or -1) relating it to the input binomial.
        """
        positive = tuple(sorted(tuple(i) for i in positive))
        negative = tuple(sorted(tuple(i) for i in negative))
        if positive <= negative:
            return cls(positive_term=positive, negative_term=negative), 1
        return cls(positive_term=negative, negative_term=positive), -1

    @property
    def canonical_key(self) -> str:
        (v1, v2), (v3, v4) = self.positive_term, self.negative_term
        return f"{variable_name(v1)}*{variable_name(v2)} - {variable_name(v3)}*{variable_name(v4)}"
