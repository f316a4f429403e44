"""Validate perronkit JSON output against the schema file.

usage: check_cli_schema.py PERRONKIT SCHEMA DATA_DIR
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def run(exe, args):
    proc = subprocess.run([exe, *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout


def main():
    exe, schema_path, data = sys.argv[1], Path(sys.argv[2]), Path(sys.argv[3])
    schema = json.loads(schema_path.read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    defs = schema["$defs"]

    scratch = tempfile.TemporaryDirectory(prefix="perronkit_schema_")
    tmp = Path(scratch.name)
    strong = tmp / "strong.tns"
    broken = tmp / "broken.tns"
    mismatch = tmp / "mismatch.tns"

    cases = [
        ("gen", 0, ["gen", "--blocks", "3,2,3", "--seed", "5", "-o", str(strong)]),
        ("gen", 0, ["gen", "--blocks", "3,3", "--not-strong", "--mode", "inflate",
                    "--seed", "4", "-o", str(broken)]),
        ("gen", 0, ["gen", "--blocks", "3,3", "--not-strong", "--mode", "second-genuine",
                    "--seed", "4", "-o", str(mismatch)]),
        ("partition", 0, ["partition", str(data / "example61.tns")]),
        ("partition", 0, ["partition", str(data / "example63.tns")]),
        ("majorization", 0, ["majorization", str(data / "example61.tns")]),
        ("radius", 0, ["radius", str(data / "example63.tns")]),
        ("radius", 0, ["radius", str(strong)]),
        ("classify", 0, ["classify", str(data / "example63.tns")]),
        ("classify", 2, ["classify", str(broken)]),
        ("classify", 2, ["classify", str(mismatch)]),
        ("perron", 0, ["perron", str(data / "example63.tns"), "--gamma", "0.5", "--tol", "1e-6"]),
        ("perron", 0, ["perron", str(strong)]),
        ("perron", 2, ["perron", str(broken)]),
        ("verify", 0, ["verify", "--instances", "10"]),
        ("repro-example", 0, ["repro-example"]),
    ]

    failures = 0
    for name, code, args in cases:
        label = " ".join(args)
        got_code, out = run(exe, args)
        problems = []
        if got_code != code:
            problems.append(f"exit code {got_code}, expected {code}")
        try:
            doc = json.loads(out)
            jsonschema.validate(doc, defs[name] | {"$defs": defs})
            jsonschema.validate(doc, schema)
            again = json.loads(json.dumps(doc))
            if doc != again:
                problems.append("document does not round-trip")
        except (json.JSONDecodeError, jsonschema.ValidationError) as e:
            problems.append(str(e).splitlines()[0])
        if run(exe, args)[1] != out:
            problems.append("repeated run gave different output")
        status = "ok" if not problems else "FAIL " + "; ".join(problems)
        print(f"{status}: {label}")
        failures += bool(problems)

    print(f"{len(cases) - failures} of {len(cases)} outputs valid")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
