from dataclasses import dataclass, field
from typing import Any, Dict, List


@dataclass
class CommandOutcome:
    result: Dict[str, Any]
    text: List[str] = field(default_factory=list)
    exit_status: int = 0
