"""Exception hierarchy shared by every module of the package."""


class ChirotopeError(Exception):
    """Base class for all errors raised by chirotree."""


class UnknownLabel(ChirotopeError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class RepeatedLabel(ChirotopeError, ValueError):
    pass


class TooSmall(ChirotopeError, ValueError):
    pass


class NotBijective(ChirotopeError, ValueError):
    pass


class AxiomViolation(ChirotopeError, ValueError):
    """A sign function fails the interiority or transitivity axiom.

    ``axiom`` is ``"interiority"`` or ``"transitivity"``; ``tuple`` holds the
    labels in the order used by the axiom statement, i.e. ``(t, x, y, z)`` for
    interiority and ``(s, t, x, y, z)`` for transitivity.
    """

    def __init__(self, axiom, labels):
        self.axiom = axiom
        self.tuple = tuple(labels)
        super().__init__(f"{axiom} axiom violated on {self.tuple}")


class NotExtreme(ChirotopeError, ValueError):
    pass


class ProxyNotExtreme(NotExtreme):
    pass


class GroundOverlap(ChirotopeError, ValueError):
    pass


class NotAModule(ChirotopeError, ValueError):
    pass


class NotQuasiModule(ChirotopeError, ValueError):
    pass


class LabelCollision(ChirotopeError, ValueError):
    pass


class SizeCapExceeded(ChirotopeError, ValueError):
    pass


class TreeViolation(ChirotopeError, ValueError):
    def __init__(self, kind, location, detail=""):
        self.kind = kind
        self.location = location
        msg = f"{kind} at {location!r}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class UnknownNode(ChirotopeError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class UnknownEdge(ChirotopeError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class VariableMismatch(ChirotopeError, ValueError):
    pass


class DivisionRemainder(ChirotopeError, ArithmeticError):
    pass


class Collinear(ChirotopeError, ValueError):
    def __init__(self, labels):
        self.labels = tuple(labels)
        super().__init__(f"collinear points {self.labels}")


class RealizationNotFound(ChirotopeError, RuntimeError):
    def __init__(self, attempts, node=None, reason=""):
        self.attempts = attempts
        self.node = node
        self.reason = reason
        msg = f"no verified realization after {attempts} attempts"
        if node is not None:
            msg += f" (node {node!r})"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)


class ParseError(ChirotopeError, ValueError):
    def __init__(self, message, line=None, offset=None):
        self.line = line
        self.offset = offset
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", col {offset}" if offset is not None else "") + ")"
        elif offset is not None:
            where = f" (offset {offset})"
        super().__init__(message + where)


class IndexOutOfRange(ChirotopeError, IndexError):
    pass


class CollinearRecord(ChirotopeError, ValueError):
    pass


class GenerationBudgetExceeded(ChirotopeError, RuntimeError):
    pass
