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

import unittest
from levyx.test.test_jets import *
from levyx.test.test_models import *
from levyx.test.test_basis import *
from levyx.test.test_expand import *
from levyx.test.test_transform import *
from levyx.test.test_pricing import *
from levyx.test.test_bounds import *
from levyx.test.test_mc import *
from levyx.test.test_cli import *

if __name__ == '__main__':
    unittest.main()
