"""
Centralized exceptions for expcong

Every error raised by the library derives from ExpCongError. The CLI maps
them onto its exit-code table with get_exit_code and prints format_error.

Version: 1.0.0
"""

# Exit codes of the command-line front end
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID_INPUT = 2
EXIT_SOLVER_CAP = 3
EXIT_INCONSISTENT = 4
EXIT_INTERNAL = 5


# Base exception
class ExpCongError(Exception):
    """Base exception for expcong"""
    pass


# Input validation errors (exit 2)
class ValidationError(ExpCongError):
    """Invalid user input - maps to exit code 2"""
    pass


class DomainError(ValidationError):
    """A mathematical precondition does not hold (p | a, even root of a negative, ...)"""
    pass


class BadPrimeError(DomainError):
    """p = 2 or p divides a*b; every per-prime lemma excludes these"""
    pass


class DimensionError(DomainError):
    """Matrix and vector shapes do not fit"""
    pass


class DependenceError(DomainError):
    """Integers expected to be multiplicatively dependent (or independent) are not"""
    pass


class TrivialPairError(DomainError):
    """A pair expected to be non-trivial is trivial"""
    pass


class OddPairError(DomainError):
    """A pair expected to have a core is of the form b = -a^k"""
    pass


class MinusOneProductError(DomainError):
    """Some product of the generators equals -1"""

    def __init__(self, message: str, exponents=None):
        super().__init__(message)
        self.exponents = exponents


# Configuration errors (exit 2)
class ConfigurationError(ExpCongError):
    """Missing/invalid configuration - maps to exit code 2"""
    pass


# Internal errors
class CertificateError(ExpCongError):
    """An exact re-verification of a computed identity failed - maps to exit code 5"""
    pass


class SolverCapExceeded(ExpCongError):
    """Incongruence search space above the configured cap - maps to exit code 3"""

    def __init__(self, message: str, space: int = None, cap: int = None):
        super().__init__(message)
        self.space = space
        self.cap = cap


class ConsistencyError(ExpCongError):
    """Empirical ground truth disagrees with a lemma or a verdict - maps to exit code 4"""

    def __init__(self, message: str, discrepancies=None):
        super().__init__(message)
        self.discrepancies = discrepancies or []


def get_exit_code(exception):
    """Get CLI exit code for exception"""
    if isinstance(exception, (ValidationError, ConfigurationError)):
        return EXIT_INVALID_INPUT
    elif isinstance(exception, SolverCapExceeded):
        return EXIT_SOLVER_CAP
    elif isinstance(exception, ConsistencyError):
        return EXIT_INCONSISTENT
    else:
        return EXIT_INTERNAL


def format_error(exception):
    """Format error message for the diagnostic stream"""
    if isinstance(exception, ValidationError):
        return f"Invalid input: {str(exception)}"
    elif isinstance(exception, ConfigurationError):
        return f"Configuration error: {str(exception)}"
    elif isinstance(exception, SolverCapExceeded):
        return f"Solver cap exceeded: {str(exception)}"
    elif isinstance(exception, ConsistencyError):
        return f"Consistency failure: {str(exception)}"
    else:
        return f"Internal error: {str(exception)}"
