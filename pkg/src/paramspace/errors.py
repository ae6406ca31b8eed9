"""Exception types raised across the package."""


class ParamSpaceError(Exception):
    pass


class MalformedWord(ParamSpaceError, ValueError):
    def __init__(self, position, reason):
        super().__init__(f"position {position}: {reason}")
        self.position = position
        self.reason = reason


class SubstitutionArity(ParamSpaceError, ValueError):
    pass


class BoundTooLarge(ParamSpaceError):
    pass


class NotInSubspace(ParamSpaceError, ValueError):
    def __init__(self, word, reason="no preimage"):
        super().__init__(f"{reason}: {word!r}")
        self.word = word


class SizeCap(ParamSpaceError):
    pass


class NotTriangleFree(ParamSpaceError, ValueError):
    pass


class NotPartialOrder(ParamSpaceError, ValueError):
    pass


class NotAnEmbedding(ParamSpaceError, ValueError):
    pass


class InternalCheckFailed(ParamSpaceError, AssertionError):
    pass


class CapExceeded(ParamSpaceError):
    def __init__(self, message, estimate=None):
        super().__init__(message if estimate is None else f"{message} (estimate {estimate})")
        self.estimate = estimate


class InvalidTriple(ParamSpaceError, ValueError):
    pass


class ExtensionConflict(ParamSpaceError):
    pass


class NotAChain(ParamSpaceError, ValueError):
    pass


class KindUnsupported(ParamSpaceError, ValueError):
    pass


class SearchCapExceeded(ParamSpaceError):
    pass


class UnknownSuite(ParamSpaceError, KeyError):
    pass
