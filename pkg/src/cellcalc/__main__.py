import sys

from cellcalc.cli import main

sys.exit(main())
