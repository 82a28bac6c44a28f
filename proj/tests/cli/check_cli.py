"""End-to-end checks of the mongesym executable: exit codes, JSON schemas,
--out, and byte-for-byte determinism."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource

BINARY = sys.argv[1]
SCHEMAS = pathlib.Path(sys.argv[2])

registry = Registry()
schemas = {}
for path in SCHEMAS.glob("*.schema.json"):
    contents = json.loads(path.read_text())
    registry = registry.with_resource(path.name, Resource.from_contents(contents))
    schemas[path.name.removesuffix(".schema.json")] = contents
for contents in schemas.values():
    jsonschema.Draft202012Validator.check_schema(contents)

S = ["S1", "S2", "S3", "S4", "S5", "S6"]
JSON_FIELD = json.dumps({"chart": "J20", "coefficients": {"z": "1"}})

# (arguments, expected exit code, schema of stdout or None)
CASES = [
    (["genericity", "eq2", "--json"], 0, "genericity"),
    (["genericity", "x + y*y2", "--json"], 0, "genericity"),
    (["genericity", "strazzullo", "--json"], 0, "genericity"),
    (["genericity", "eq3"], 2, None),
    (["genericity", "y2^"], 2, None),
    (["verify", "eq2", *S, "--json"], 0, "verify"),
    (["verify", "eq2", "d/dy", "--json"], 1, "verify"),
    (["verify", "flat", "d/dz", JSON_FIELD, "--json"], 0, "verify"),
    (["verify", "eq2", "S7"], 2, None),
    (["verify", "eq2", "equiaffine1"], 2, None),
    (["verify", "eq2"], 2, None),
    (["structure", "eq2", *S, "--json"], 0, "structure"),
    (["structure", "eq2", "S4", "--json"], 0, "structure"),
    (["structure", "eq2", "S1", "S3", "--json"], 0, "structure"),
    (["structure", "eq2", "S1", "d/dy"], 1, None),
    (["structure", "eq2", "S1", "S4", "--cap", "3"], 1, None),
    (["solve", "flat", "--method", "poly", "--degree", "3", "--verify", "--json"], 0, "solve"),
    (["solve", "dz13(1,1)", "--degree", "6", "--json", "--timings"], 0, "solve"),
    (["solve", "eq2", "--method", "poly", "--degree", "1", "--offsets", "1/3,-1/3", "--json"], 0, "solve"),
    (["solve", "strazzullo"], 2, None),
    (["solve", "flat", "--method", "exact"], 2, None),
    (["solve", "flat", "--offsets", "1/0x"], 2, None),
    (["solve", "eq2", "--base-point", "0,0,0,2,0", "--degree", "4"], 2, None),
    (["reproduce", "--json"], 0, "reproduce"),
    (["reproduce", "--inject-fault", "lemma-fields", "--json"], 1, "reproduce"),
    (["reproduce", "--inject-fault", "nonsense"], 2, None),
    (["catalog", "--json"], 0, "catalog"),
    (["frobnicate"], 2, None),
    ([], 2, None),
]

failures = []


def run(args):
    return subprocess.run([BINARY, *args], capture_output=True, text=True)


for args, code, schema in CASES:
    label = " ".join(args) or "(no arguments)"
    result = run(args)
    if result.returncode != code:
        failures.append(f"{label}: exit {result.returncode}, expected {code}\n{result.stderr}")
        continue
    if code == 2 and "error" not in result.stderr:
        failures.append(f"{label}: usage error without a message")
    if schema is None:
        continue
    try:
        document = json.loads(result.stdout)
        validator = jsonschema.Draft202012Validator(schemas[schema], registry=registry)
        errors = sorted(validator.iter_errors(document), key=lambda e: list(e.path))
        for e in errors:
            failures.append(f"{label}: {'/'.join(map(str, e.path))}: {e.message}")
    except json.JSONDecodeError as e:
        failures.append(f"{label}: stdout is not JSON ({e})")

# Specific contents.
report = json.loads(run(["verify", "eq2", "d/dy", "--json"]).stdout)
if report["fields"][0]["residuals"] != ["0", "0", "0", "0", "0", "1"]:
    failures.append("verify d/dy: expected residual 1 on the d/dz membership equation of [S, X2]")
structure = json.loads(run(["structure", "eq2", *S, "--json"]).stdout)
if structure["structure"]["verdict"] != "sl2_semidirect_heisenberg":
    failures.append("structure: wrong verdict")
if structure["projection"]["kernel"] != ["S6"] or not structure["projection"]["all_images_matched"]:
    failures.append("structure: projection kernel is not <S6> or an image is unmatched")
sl2 = json.loads(run(["structure", "eq2", "S1", "S2", "S3", "--json"]).stdout)
if sl2["structure"]["verdict"] != "sl2" or sl2["structure"]["killing"]["signature"] != [2, 1]:
    failures.append("structure S1 S2 S3: expected sl2 with Killing signature (2, 1)")
one = json.loads(run(["structure", "eq2", "S4", "--json"]).stdout)
if one["structure"]["dimension"] != 1 or not one["structure"]["abelian"]:
    failures.append("structure S4: expected a 1-dimensional abelian algebra")

# Determinism and --out.
first = run(["solve", "dz13(1,1)", "--degree", "7", "--json"]).stdout
second = run(["solve", "dz13(1,1)", "--degree", "7", "--json"]).stdout
if first != second:
    failures.append("solve reports differ between identical runs")
with tempfile.TemporaryDirectory() as tmp:
    out = pathlib.Path(tmp) / "report.json"
    result = run(["solve", "dz13(1,1)", "--degree", "7", "--json", "--out", str(out)])
    if result.returncode != 0 or result.stdout != "" or out.read_text() != first:
        failures.append("--out does not write the same report as stdout")
    if run(["catalog", "--out", str(pathlib.Path(tmp) / "missing" / "x.txt")]).returncode != 2:
        failures.append("unwritable --out path is not a usage error")

progress = run(["solve", "flat", "--method", "poly", "--degree", "2"]).stderr.splitlines()
if progress != [f"degree {d}: " + s for d, s in
                [(0, "5 unknowns, 3 rows, dimension 3"), (1, "30 unknowns, 36 rows, dimension 6"),
                 (2, "105 unknowns, 152 rows, dimension 8")]]:
    failures.append(f"unexpected progress lines: {progress}")

for f in failures:
    print("FAIL", f)
print(f"{len(CASES)} command cases, {len(failures)} failures")
sys.exit(1 if failures else 0)
