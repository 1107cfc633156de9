'''
Copyright 2024 the levyx authors
This file is part of levyx.

levyx is free software: you can redistribute it and/or modify it under
the terms of the GNU General Public License as published by the Free
Software Foundation, either version 3 of the License, or (at your option)
any later version.

levyx is distributed in the hope that it will be useful, but WITHOUT ANY
WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS
FOR A PARTICULAR PURPOSE. See the GNU General Public License for more
details: <http://www.gnu.org/licenses/>.
'''

import csv
import json
from dataclasses import dataclass, field
from typing import Any, TextIO

import numpy as np

from levyx.auxiliary import f2s
from levyx.enums import EExitCodes, EOutputFormats

SCHEMA_VERSION = 1
"""Version of the column layout of all commands"""

@dataclass
class Report:
    """
    Rows produced by one command.

    Args:
        command: Subcommand, names the schema
        columns: Column names
        rows: One sequence of values per row
        meta: Optional. (key, value) pairs written ahead of the header
        exit_code: Optional. Exit code of the run
    """
    command:str
    columns:list[str]
    rows:list[list[Any]] = field(default_factory=list)
    meta:list[tuple[str, Any]] = field(default_factory=list)
    exit_code:EExitCodes = EExitCodes.OK

def cell(value:Any) -> str:
    """Formats one value, numbers with 10 significant digits"""
    if value is None:
        return ''
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f2s(float(value))
    return str(getattr(value, 'value', value))

def _json_value(value:Any) -> Any:
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(f2s(float(value)))
    return None if value is None else str(getattr(value, 'value', value))

def write_report(report:Report, stream:TextIO, fmt:EOutputFormats=EOutputFormats.CSV):
    """
    Writes a report.

    CSV output starts with '# schema levyx-<command> <version>' and one
    '# key = value' line per meta entry, followed by the header row.
    JSON lines output starts with one object holding schema and meta.
    """
    schema = f'levyx-{report.command}'
    if EOutputFormats(fmt) == EOutputFormats.JSON_LINES:
        head = {'schema': schema, 'version': SCHEMA_VERSION,
                **{k: _json_value(v) for k, v in report.meta}}
        stream.write(json.dumps(head) + '\n')
        for row in report.rows:
            stream.write(json.dumps(dict(zip(report.columns, map(_json_value, row)))) + '\n')
        return

    stream.write(f'# schema {schema} {SCHEMA_VERSION}\n')
    for k, v in report.meta:
        stream.write(f'# {k} = {cell(v)}\n')
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(report.columns)
    for row in report.rows:
        writer.writerow([cell(v) for v in row])
