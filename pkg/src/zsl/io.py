"""Number formatting and JSON/CSV helpers shared by every report writer."""

import csv
import io
import json

SIG_DIGITS = 12


def sig(x, digits=SIG_DIGITS):
    """Round a float to ``digits`` significant digits."""
    return float(f"{float(x):.{digits}g}")


def cnum(z):
    z = complex(z)
    return {"re": sig(z.real), "im": sig(z.imag)}


def dumps(obj):
    """Deterministic JSON text; key order is the insertion order of ``obj``."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def write_text(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()
