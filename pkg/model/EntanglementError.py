class EntanglementError(ValueError):
    """
    Base class of every error raised while building or analysing a pure state.

    Model validators keep raising plain ``ValueError`` (pydantic reports those as a ``ValidationError``);
    the processing code raises the subclasses below so that callers can tell the failure classes apart.
    """


class LengthMismatch(EntanglementError):
    pass


class ZeroState(EntanglementError):
    pass


class NotFinite(EntanglementError):
    pass


class NotNormalized(EntanglementError):
    pass


class ShapeTooLarge(EntanglementError):
    pass


class BadArity(EntanglementError):
    pass


class UnnormalizedFactor(EntanglementError):
    pass


class BadPartition(EntanglementError):
    pass


class EmptyPartition(EntanglementError):
    pass


class DegenerateMode(EntanglementError):
    pass


class WrongArity(EntanglementError):
    pass


class WrongShape(EntanglementError):
    pass


class TooManySubsystems(EntanglementError):
    pass


class NotSeparable(EntanglementError):
    pass


class ParseError(EntanglementError):
    pass


class SubsystemOutOfRange(EntanglementError):
    pass
