#!/usr/bin/env python3
"""
Error types for the Scarf Hypersphere Verifier
Library modules raise these; main.py turns them into exit codes

Version: 2.0.0 (Exact Decompositions + Spectral Audit)
Developer: 8roku8.hl
"""


class ScarfVerifyError(Exception):
    """Base class for every error raised by the verifier"""


class DegreeMismatch(ScarfVerifyError):
    """Target polynomial is not in the span of a graded basis"""


class InexactDivision(ScarfVerifyError):
    """A polynomial division in Q[b] left a nonzero remainder"""


class NonNormalizable(ScarfVerifyError):
    """Jacobi parameters leave the integrable range (alpha, beta > -1)"""

    def __init__(self, message, alpha=None, beta=None):
        super().__init__(message)
        self.alpha = alpha
        self.beta = beta


class ConvergenceFailure(ScarfVerifyError):
    """An iterative solver hit its iteration cap or produced non-finite values"""


class DomainError(ScarfVerifyError, ValueError):
    """Argument outside the domain of a function (|x| > 1 or |chi| >= pi/2)"""


class UsageError(ScarfVerifyError):
    """Invalid command-line usage; always names the offending flag"""

    def __init__(self, flag, message):
        super().__init__(f"{flag}: {message}")
        self.flag = flag
