"""Exception hierarchy shared by all modules."""


class CutvalError(Exception):
    """Base class for all errors raised by this package."""


class RankMismatchError(CutvalError):
    """Operands live in value groups of different ranks."""


class StructuralError(CutvalError):
    """Malformed input data (dependent basis, non-basis lattice, bad table)."""


class DomainError(CutvalError):
    """Arguments outside an operation's stated domain."""


class ConfigError(CutvalError):
    """Inconsistent configuration (non-prime p, mismatched fields/algebras)."""


class BudgetError(CutvalError):
    """A brute-force enumeration would exceed its configured budget."""
