"""Exception hierarchy.

Errors split into two families so the CLI can map them to exit codes:
``InputError`` (malformed input, exit 1) and ``DomainError`` (well-formed
input outside an operation's mathematical domain, exit 2).
"""


class LaurentKError(Exception):
    pass


class InputError(LaurentKError):
    pass


class DomainError(LaurentKError):
    pass


class ParseError(InputError):
    def __init__(self, message, column=None, line=None, text=None):
        self.message = message
        self.column = column
        self.line = line
        self.text = text
        super().__init__(self._render())

    def _render(self):
        where = []
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.column is not None:
            where.append(f"column {self.column}")
        prefix = ", ".join(where)
        msg = f"{prefix}: {self.message}" if prefix else self.message
        if self.text is not None and self.column is not None:
            msg += f"\n  {self.text}\n  {' ' * (self.column - 1)}^"
        return msg

    def at_line(self, line, text=None):
        return ParseError(self.message, self.column, line, text if text is not None else self.text)


class DimensionMismatch(InputError):
    pass


class ZeroPolynomial(DomainError):
    pass


class ZeroEvaluationPoint(DomainError):
    pass


class NonzeroConstantTerm(DomainError):
    pass


class NotAnEndomorphism(DomainError):
    pass


class SingularAction(DomainError):
    pass


class DegeneratePower(DomainError):
    pass


class NotSymmetric(DomainError):
    pass


class NotZeroOne(DomainError):
    pass


class FullSupport(DomainError):
    pass


class GammaOffCircle(DomainError):
    pass


class GaloisOrbitMismatch(DomainError):
    """Root-of-unity data that does not descend to rational coefficients."""


class OracleMismatch(LaurentKError):
    """Two independent computations of the same quantity disagree."""
