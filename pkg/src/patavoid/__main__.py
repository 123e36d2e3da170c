import sys

from patavoid.cli import main

sys.exit(main())
