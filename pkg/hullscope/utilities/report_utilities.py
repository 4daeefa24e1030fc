"""Common functions for writing and reading report artifacts."""

import csv
import hashlib
import json
import os

from jsonschema import validate as schema_validate, ValidationError

import hullscope.exceptions


def ensure_directory(path):
    """Create the directory if it does not exist and return its path."""
    os.makedirs(path, exist_ok=True)
    return path


def _format_cell(value):
    if isinstance(value, float):
        return repr(value)
    return value


def write_csv(path, header, rows):
    """Write rows to a CSV file with floats at full precision."""
    with open(path, 'w', newline='') as csv_file:
        writer = csv.writer(csv_file, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([_format_cell(value) for value in row])
    return path


def dump_json(data):
    """Serialise data the same way on every run."""
    return json.dumps(data, indent=2, sort_keys=True, allow_nan=True) + '\n'


def write_json(path, data, schema=None):
    """Write a JSON document, validating it first when a schema is given."""
    if schema is not None:
        schema_validate(data, schema)
    with open(path, 'w') as json_file:
        json_file.write(dump_json(data))
    return path


def read_json(path, schema=None):
    """Read a JSON document and validate it against the schema."""
    try:
        with open(path) as json_file:
            data = json.load(json_file)
    except (OSError, ValueError) as error:
        raise hullscope.exceptions.FormatException(
            'Could not read JSON from %s: %s' % (path, error))
    if schema is not None:
        try:
            schema_validate(data, schema)
        except ValidationError as error:
            raise hullscope.exceptions.FormatException(
                '%s does not conform to the schema: %s' % (path, error.message))
    return data


def file_digest(path, chunk_bytes=1 << 20):
    """SHA-256 digest of a file."""
    digest = hashlib.sha256()
    with open(path, 'rb') as input_file:
        for chunk in iter(lambda: input_file.read(chunk_bytes), b''):
            digest.update(chunk)
    return digest.hexdigest()
