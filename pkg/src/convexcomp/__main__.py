import sys

from convexcomp.cli import main

sys.exit(main())
