"""CSV and JSON writers.

CSV files start with ``#`` provenance lines (one JSON object), then a
header row; floats are written with ``repr`` so they round-trip exactly.
JSON files hold a single object with ``metadata`` and ``series``.
"""

import json
import sys

import numpy as np

from . import __version__


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def provenance(metadata):
    return {"tool": "thermozeno", "version": __version__, **_plain(metadata)}


def _fmt(x):
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def render_csv(header, rows, metadata):
    lines = ["# " + json.dumps(provenance(metadata), sort_keys=True)]
    lines.append(",".join(header))
    lines.extend(",".join(_fmt(x) for x in row) for row in rows)
    return "\n".join(lines) + "\n"


def render_json(metadata, series, **extra):
    doc = {"metadata": provenance(metadata), "series": _plain(series)}
    doc.update(_plain(extra))
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def curves_table(times, columns):
    """Wide table: t followed by one column per labelled curve."""
    header = ["t"] + list(columns)
    data = [np.asarray(times)] + [np.asarray(v) for v in columns.values()]
    return header, list(zip(*data))


def write_text(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def read_csv(path):
    """Inverse of render_csv: (metadata, header, rows as float arrays)."""
    meta, header, rows = {}, None, []
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                meta = json.loads(line[1:])
            elif header is None:
                header = line.split(",")
            else:
                rows.append(line.split(","))
    return meta, header, rows
