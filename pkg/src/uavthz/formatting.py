"""Locale-independent number formatting and atomic file output."""

import json
import math
import os
import tempfile

import numpy as np

SIG_DIGITS = 9


def fmt(value):
    """Format a float with 9 significant digits; NaN becomes an empty field."""
    value = float(value)
    if math.isnan(value):
        return ""
    return f"{value:.{SIG_DIGITS}g}"


def round_sig(value):
    return float(f"{float(value):.{SIG_DIGITS}g}")


def _jsonable(obj):
    if isinstance(obj, float):
        return None if not math.isfinite(obj) else round_sig(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.ndarray, np.generic)):
        return _jsonable(obj.tolist())
    return obj


def dumps_json(doc):
    return json.dumps(_jsonable(doc), indent=2, sort_keys=False) + "\n"


def atomic_write_text(path, text):
    """Write ``text`` to ``path`` via a temp file in the same directory + rename."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
