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

from .config import RunConfig, COMMANDS, read_ini, preset_section
from .output import Report, SCHEMA_VERSION, cell, write_report
from .commands import (COMMAND_FUNCS, cmd_price, cmd_table, cmd_density, cmd_iv, cmd_bond, cmd_bound,
                       cmd_mc, cmd_compare, ordered_map)
from .main import build_parser, resolve, main
