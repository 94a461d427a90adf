"""
Reference tables shipped with the package, and small helpers to read them.
"""
from __future__ import annotations

import json
import re
from functools import lru_cache
from importlib import resources

TABLES = ("table_pp", "table_weights", "intersections", "table_extgraph", "table_intsct",
          "table_weyl1", "adm_counts")


@lru_cache(maxsize=None)
def load(name: str) -> dict:
    if name not in TABLES:
        raise KeyError(f"unknown table {name!r}")
    text = resources.files("gl3ext").joinpath("data", f"{name}.json").read_text(encoding="utf-8")
    return json.loads(text)


def pair(obj) -> tuple:
    """[[m1, m2], a] -> ((m1, m2), a)."""
    return (tuple(obj[0]), int(obj[1]))


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*([a-z]?)")


def eval_linear(expr: str, env: dict) -> int:
    """Evaluate a sum of terms like 'z+p-2' or '2x-1' with variables from env."""
    text = expr.replace(" ", "")
    pos, total = 0, 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {expr!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) else 1
        var = m.group(3)
        if not m.group(2) and not var:
            raise ValueError(f"cannot parse {expr!r}")
        total += sign * coeff * (env[var] if var else 1)
        pos = m.end()
    return total
