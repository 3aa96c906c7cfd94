import re
import json
from typing import Any, Dict, List, Optional, Sequence, Tuple
import logging

from utils.errors import ParamError

logger = logging.getLogger(__name__)

_PARAM_RE = re.compile(r'^\s*([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(\S+)\s*$')


def parse_param(text: str) -> Tuple[str, str]:
    """Split a ``key=value`` command-line parameter."""
    match = _PARAM_RE.match(text or "")
    if not match:
        raise ParamError(f"Parameter '{text}' is not of the form key=value", "param")
    return match.group(1), match.group(2)


def parse_params(items: Optional[Sequence[str]]) -> Dict[str, str]:
    params: Dict[str, str] = {}
    for item in items or []:
        key, value = parse_param(item)
        if key in params:
            raise ParamError(f"Parameter '{key}' given twice", key)
        params[key] = value
    return params


def parse_tuple(text: str) -> Tuple[int, ...]:
    """Read a point tuple such as ``0,3,5`` or ``(0 3 5)``."""
    cleaned = (text or "").strip().strip('()[]')
    if not cleaned:
        return ()
    try:
        return tuple(int(part) for part in re.split(r'[,\s]+', cleaned) if part)
    except ValueError:
        raise ParamError(f"Tuple '{text}' must list integer point indices", "tuple")


def format_tuple(points: Sequence[int]) -> str:
    return "(" + ", ".join(str(p) for p in points) + ")"


def save_json_to_file(data: Any, file_path: str, indent: int = 2) -> bool:
    """Write JSON; returns False (and logs) on failure."""
    try:
        with open(file_path, 'w', encoding='utf-8') as f:
            json.dump(data, f, ensure_ascii=False, indent=indent)
        return True
    except Exception as e:
        logger.error(f"Error saving JSON to {file_path}: {e}")
        return False
