import sys

from senrel.cli import main

sys.exit(main())
