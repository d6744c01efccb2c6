"""Exception types raised by the bicomplex toolkit."""


class BicomplexError(Exception):
    """Base class for all errors raised by this package."""


class NotInvertible(BicomplexError, ArithmeticError):
    def __init__(self, message, component=None):
        super().__init__(message)
        self.component = component


class DimensionMismatch(BicomplexError, ValueError):
    pass


class NotHermitian(BicomplexError, ValueError):
    def __init__(self, message, defect=None):
        super().__init__(message)
        self.defect = defect


class NotSelfAdjoint(BicomplexError, ValueError):
    def __init__(self, message, defect=None):
        super().__init__(message)
        self.defect = defect


class NoConvergence(BicomplexError, RuntimeError):
    def __init__(self, message, off_diagonal=None, sweeps=None):
        super().__init__(message)
        self.off_diagonal = off_diagonal
        self.sweeps = sweeps


class NotCyclic(BicomplexError, ValueError):
    def __init__(self, message, ranks=None):
        super().__init__(message)
        self.ranks = ranks


class ZeroComponent(NotCyclic):
    """A component of the supplied vector vanishes and cannot be normalized."""


class GridMismatch(BicomplexError, ValueError):
    pass


class ParseError(BicomplexError, ValueError):
    pass
