"""Pass/fail records for verification runs, with serializers.

A ``Check`` names the verified identity in mathematical terms and carries
the first offending coefficient when it fails.  Reports are lists of
checks; serialization is deterministic and free of floating point.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

__all__ = ["Check", "report_text", "report_json", "all_passed"]


@dataclass
class Check:
    name: str
    identity: str
    passed: bool
    detail: str = ""


def all_passed(checks: list[Check]) -> bool:
    return all(c.passed for c in checks)


def report_text(checks: list[Check]) -> str:
    lines = []
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        line = f"{status}  {c.name}: {c.identity}"
        if c.detail:
            line += f"  [{c.detail}]"
        lines.append(line)
    return "\n".join(lines)


def report_json(checks: list[Check]) -> str:
    return json.dumps({"checks": [asdict(c) for c in checks],
                       "passed": all_passed(checks)},
                      indent=2, sort_keys=True)
