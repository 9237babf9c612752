"""Domain errors shared across the package.

Every error carries a stable machine-readable ``code`` so the CLI can
report failures uniformly (and map them to exit status 3).  Parse errors
are deliberately not domain errors: they map to usage errors (exit 2).
"""


class DomainError(Exception):
    code = "domain-error"


class InvalidRadicandError(DomainError):
    code = "invalid-radicand"


class IncompatibleFieldsError(DomainError):
    code = "incompatible-fields"


class UndecidableInputError(DomainError):
    code = "undecidable-input"


class InvalidInputError(DomainError):
    code = "invalid-input"


class InvalidDiscriminantError(DomainError):
    code = "invalid-discriminant"


class IncompatibleFormsError(DomainError):
    code = "incompatible-forms"


class NotInvertibleError(DomainError):
    code = "not-invertible"


class DegeneratePointError(DomainError):
    code = "degenerate-point"


class NotTransverseError(DomainError):
    code = "not-transverse"


class InvalidModulusError(DomainError):
    code = "invalid-modulus"


class SquarefreeRequiredError(DomainError):
    code = "squarefree-required"


class NotTotallyRealError(DomainError):
    code = "not-totally-real"


class WrongSignatureError(DomainError):
    code = "wrong-signature"


class BudgetExceededError(DomainError):
    code = "budget-exceeded"


class ParseError(Exception):
    """Malformed expression or polynomial text (usage error, exit 2)."""

    code = "parse-error"
