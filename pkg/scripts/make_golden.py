"""Regenerate tests/golden/*.json from tests/golden/cases.json.

Only run this after a deliberate output change; the golden test compares bytes.
"""
import contextlib
import io
import json
import pathlib
import sys

from quadfact.cli import main

GOLDEN = pathlib.Path(__file__).resolve().parent.parent / "tests" / "golden"


def render(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(list(argv[:1]) + ["--json"] + list(argv[1:]))
    return code, buf.getvalue()


if __name__ == "__main__":
    cases = json.loads((GOLDEN / "cases.json").read_text())
    for case in cases:
        code, out = render(case["argv"])
        if code != 0:
            sys.exit(f"{case['name']}: exit code {code}")
        (GOLDEN / f"{case['name']}.json").write_text(out)
        print(f"wrote {case['name']}.json")
