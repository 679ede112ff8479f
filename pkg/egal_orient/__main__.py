"""python -m egal_orient"""

import sys

from egal_orient.cli import main

sys.exit(main())
