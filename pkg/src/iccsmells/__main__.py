import sys

from iccsmells.cli import main

sys.exit(main())
