import sys

from brandrank.cli import main

sys.exit(main())
