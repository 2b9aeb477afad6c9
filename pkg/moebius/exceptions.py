class MoebiusError(ValueError):
    """Base class for argument errors raised by the moebius package."""


class DomainError(MoebiusError):
    pass


class RangeTooLargeError(MoebiusError):
    pass


class CutoffExceededError(MoebiusError):
    pass
