"""
Error hierarchy for cubic_orbits.

Every error carries the process exit code the CLI should use when it
surfaces uncaught: 2 for bad input, 3 for guardrails, 1 for failed
internal consistency checks.
"""


class CubicOrbitsError(Exception):
    """Base class for all package errors"""

    exit_code = 2


# Field construction and arithmetic

class FieldOrderError(CubicOrbitsError):
    pass


class NotPrimePower(FieldOrderError):
    def __init__(self, q):
        super().__init__(f"{q} is not a prime power")
        self.q = q


class FieldTooSmall(FieldOrderError):
    def __init__(self, q):
        super().__init__(f"field order {q} is below the supported minimum 4")
        self.q = q


class TooLarge(FieldOrderError):
    def __init__(self, q, bound):
        super().__init__(f"field order {q} exceeds the configured bound {bound}")
        self.q = q
        self.bound = bound


class DivisionByZero(CubicOrbitsError, ZeroDivisionError):
    pass


# Geometry

class IdenticalPoints(CubicOrbitsError, ValueError):
    pass


class NotALine(CubicOrbitsError, ValueError):
    pass


class BadLineSpec(CubicOrbitsError, ValueError):
    pass


class Char3Axis(CubicOrbitsError):
    pass


class Char3Polarity(CubicOrbitsError):
    pass


# Group

class Singular(CubicOrbitsError, ValueError):
    pass


class NotClosed(CubicOrbitsError):
    pass


# Families

class Char3NotApplicable(CubicOrbitsError):
    pass


class NotChar3(CubicOrbitsError):
    pass


class BadMu(CubicOrbitsError, ValueError):
    pass


class NotEnG(CubicOrbitsError):
    pass


# Runtime

class InvalidRunConfig(CubicOrbitsError, ValueError):
    pass


class GuardrailExceeded(CubicOrbitsError):
    exit_code = 3

    def __init__(self, q, max_q, what="census"):
        super().__init__(f"q={q} exceeds the {what} guardrail q <= {max_q} (raise it with --max-q)")
        self.q = q
        self.max_q = max_q


class OrbitStabilizerMismatch(CubicOrbitsError):
    exit_code = 1
