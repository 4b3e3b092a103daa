"""Validates `bbsolve analyze --format json` output for the corpus against the shipped schema."""
import json
import subprocess
import sys

try:
    import jsonschema
except ImportError:
    print("jsonschema not installed; skipping")
    sys.exit(0)

tool, schema_path, corpus = sys.argv[1:4]
with open(schema_path) as f:
    schema = json.load(f)
validator = jsonschema.Draft202012Validator(schema)
failures = 0
with open(corpus) as f:
    equations = [l.strip() for l in f if l.strip() and not l.startswith("#")]
for eq in equations:
    out = subprocess.run([tool, "analyze", "--format", "json", eq], capture_output=True, text=True)
    if out.returncode not in (0, 2):
        print(f"FAIL {eq}: exit {out.returncode}: {out.stderr.strip()}")
        failures += 1
        continue
    errors = sorted(validator.iter_errors(json.loads(out.stdout)), key=lambda e: list(e.path))
    for e in errors[:3]:
        print(f"FAIL {eq}: {list(e.path)}: {e.message}")
    failures += bool(errors)
print(f"{len(equations) - failures} of {len(equations)} reports valid")
sys.exit(1 if failures else 0)
