"""
Exception hierarchy shared by the services and the CLI.

Every error carries a machine-readable ``code``, a human ``detail`` and the
process exit status the CLI reports for it.
"""
from typing import Any, Dict, Optional


class SpreadLabError(Exception):
    exit_status: int = 2
    default_code: str = "error"

    def __init__(self, detail: str, code: Optional[str] = None, **context: Any):
        super().__init__(detail)
        self.detail = detail
        self.code = code or self.default_code
        self.context = {k: v for k, v in context.items() if v is not None}

    def to_dict(self) -> Dict[str, Any]:
        return {"code": self.code, "detail": self.detail, **self.context}


class GraphFormatError(SpreadLabError):
    """Bad vertex ids, self-loops, duplicate edges or a malformed edge-list file."""
    default_code = "malformed_edge"

    def __init__(self, detail: str, code: Optional[str] = None, *, line: Optional[int] = None,
                 edge_index: Optional[int] = None):
        super().__init__(detail, code, line=line, edge_index=edge_index)
        self.line = line
        self.edge_index = edge_index


class InvalidParameterError(SpreadLabError):
    default_code = "invalid_params"


class PreconditionError(SpreadLabError):
    exit_status = 3
    default_code = "precondition_failed"

    def __init__(self, detail: str, code: Optional[str] = None, *, subject: Optional[str] = None):
        super().__init__(detail, code, subject=subject)
        self.subject = subject


class SolverLimitError(SpreadLabError):
    exit_status = 4
    default_code = "solver_limit"


class VerificationError(SpreadLabError):
    exit_status = 5
    default_code = "verification_failed"
