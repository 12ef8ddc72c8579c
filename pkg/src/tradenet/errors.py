"""Exception hierarchy.

Input problems (bad files, invalid instances) derive from :class:`InputError`;
failures of a solve on valid input derive from :class:`SolverError`. The CLI
maps the two families to distinct exit codes.
"""

from __future__ import annotations


class TradenetError(Exception):
    pass


class InputError(TradenetError, ValueError):
    """Malformed or invalid input; ``errors`` holds one message per problem."""

    def __init__(self, errors: list[str] | str):
        if isinstance(errors, str):
            errors = [errors]
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


class SolverError(TradenetError):
    def __init__(self, message: str, system=None):
        super().__init__(message)
        self.system = system


class SingularSystemError(SolverError):
    pass


class InconsistentSystemError(SolverError):
    pass


class NoFeasibleSupportError(SolverError):
    pass


class UnpriceableSiteError(SolverError):
    pass
