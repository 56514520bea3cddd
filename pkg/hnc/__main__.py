import sys

from hnc.cli import main

sys.exit(main())
