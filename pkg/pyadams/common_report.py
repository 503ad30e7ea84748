"""
Deterministic plain-text reports: `key: value` lines in insertion order,
nested records indented by two spaces, list items prefixed with "- ".
"""
import sys

from pyadams.common_dict import to_plain
from pyadams.common_json import json_save, scalar_json


##
def plain_value(obj):
    """Fallback for `to_plain`: exact scalars as "a/b", everything else by `str`."""
    rendered = scalar_json(obj)
    if rendered is not None:
        return rendered
    return str(obj)


def report_plain(record):
    return to_plain(record, fallback=plain_value)


def _atom(value):
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _simple_p(value):
    return not isinstance(value, (dict, list))


def _lines(value, indent):
    pad = " " * indent
    res = []
    if isinstance(value, dict):
        for key, v in value.items():
            if _simple_p(v):
                res.append(f"{pad}{key}: {_atom(v)}")
            elif isinstance(v, list) and all(_simple_p(x) for x in v):
                res.append(f"{pad}{key}: [{', '.join(_atom(x) for x in v)}]")
            elif not v:
                res.append(f"{pad}{key}: {'[]' if isinstance(v, list) else '{}'}")
            else:
                res.append(f"{pad}{key}:")
                res.extend(_lines(v, indent + 2))
    elif isinstance(value, list):
        for v in value:
            if _simple_p(v):
                res.append(f"{pad}- {_atom(v)}")
            else:
                inner = _lines(v, indent + 2)
                if inner:
                    inner[0] = f"{pad}- {inner[0][indent + 2:]}"
                res.extend(inner)
    else:
        res.append(f"{pad}{_atom(value)}")
    return res


def report_text(record):
    """The text form of a report record (a SimpleObject or a dict)."""
    return "\n".join(_lines(report_plain(record), 0)) + "\n"


def report_emit(record, *, json_report=None, file=None):
    """
    Prints the text report to `file` (stdout by default) and, given a path,
    writes its JSON twin there.
    """
    text = report_text(record)
    (file or sys.stdout).write(text)
    if json_report:
        json_save(report_plain(record), file=json_report)
    return text


##
