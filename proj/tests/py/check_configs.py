"""Validate every suite config against the JSON schema with the reference validator."""
import json
import pathlib
import sys

import jsonschema

root = pathlib.Path(sys.argv[1])
schema = json.loads((root / "schemas" / "suite_config.schema.json").read_text())
jsonschema.Draft7Validator.check_schema(schema)
validator = jsonschema.Draft7Validator(schema)
bad = 0
for path in sorted((root / "configs").glob("*.json")):
    errors = list(validator.iter_errors(json.loads(path.read_text())))
    for e in errors:
        print(f"{path.name}: {e.message}")
    bad += bool(errors)
    print(f"{path.name}: {'ok' if not errors else 'invalid'}")
sys.exit(1 if bad else 0)
