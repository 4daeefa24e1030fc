import sys

from hullscope.cli import main

sys.exit(main())
