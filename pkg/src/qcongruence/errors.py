"""Exception types shared across the package."""


class QCongruenceError(Exception):
    pass


class ZeroDenominator(QCongruenceError, ZeroDivisionError):
    pass


class DenominatorVanishes(QCongruenceError, ZeroDivisionError):
    """A substitution or evaluation made a denominator identically zero."""


class NotInvertible(QCongruenceError, ZeroDivisionError):
    """Inverse requested for zero in a cyclotomic residue field."""


class BadModulus(QCongruenceError, ValueError):
    """Verifier precondition on n, p or d violated."""


class NoConvergence(QCongruenceError, RuntimeError):
    pass


class ParseError(QCongruenceError, ValueError):
    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field:
            where.append(f"field {field!r}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.line = line
        self.field = field


class ValidationError(QCongruenceError, ValueError):
    pass
