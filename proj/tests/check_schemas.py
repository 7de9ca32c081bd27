"""Validate shipped data and CLI --json output against schemas/."""
import glob
import json
import os
import subprocess
import sys

import jsonschema

root, exe = sys.argv[1], sys.argv[2]


def schema(name):
    s = json.load(open(os.path.join(root, "schemas", name + ".schema.json")))
    jsonschema.Draft202012Validator.check_schema(s)
    return s


def run(*args):
    p = subprocess.run([exe, *args], cwd=root, capture_output=True, text=True)
    if p.returncode not in (0, 1):
        sys.exit(f"{args}: exit {p.returncode}\n{p.stderr}")
    return json.loads(p.stdout)


tri, curve, elem, report = (schema(n) for n in ("triangulation", "curve", "element", "report"))
for f in glob.glob(os.path.join(root, "data/surfaces/*.json")):
    jsonschema.validate(json.load(open(f)), tri)
for f in glob.glob(os.path.join(root, "data/curves/*.json")):
    jsonschema.validate(json.load(open(f)), curve)
for f in glob.glob(os.path.join(root, "data/elements/*.json")):
    jsonschema.validate(json.load(open(f)), elem)

jsonschema.validate(run("surf", "export", "builtin:thrice-punctured-sphere"), tri)
jsonschema.validate(run("curve", "build", "builtin:annulus-1-2", "e1=1", "e2=1", "e4=1"), curve)
t = run("trace", "data/surfaces/annulus.json", "data/curves/annulus_core.json", "--json")
jsonschema.validate(t["shear"], elem)
jsonschema.validate(t["skein"], elem)
for suite in ("duality", "transfer", "corrupted"):
    jsonschema.validate(run("verify", suite, "--trials", "2", "--json"), report)
print("schemas ok")
