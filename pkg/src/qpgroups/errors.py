"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`QpError`
and carries a stable machine-readable ``code`` used by the command line.
"""


class QpError(Exception):
    code = "error"

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details


class ContextMismatch(QpError):
    code = "context_mismatch"


class PrecisionError(QpError):
    code = "precision"


class DomainError(QpError):
    code = "domain"


class ZeroDivision(DomainError):
    code = "division_by_zero"


class HenselError(QpError):
    code = "hensel_precondition"


class ConvergenceError(QpError):
    code = "convergence"


class LiteralError(QpError):
    code = "literal_syntax"


class SingularCurve(DomainError):
    code = "singular_equation"


class NotMinimal(DomainError):
    code = "not_minimal"


class NotOnCurve(DomainError):
    code = "off_curve"


class MembershipError(DomainError):
    code = "membership"


class DescriptorMismatch(DomainError):
    code = "descriptor_mismatch"


class NotASubgroup(DomainError):
    code = "not_a_subgroup"


class PresburgerSyntaxError(QpError):
    code = "presburger_syntax"

    def __init__(self, message, line, column, token=None):
        super().__init__(f"{message} at line {line}, column {column}",
                         line=line, column=column, token=token)
        self.line = line
        self.column = column
        self.token = token


class ResourceLimit(QpError):
    code = "resource_limit"
