import sys

from fuzzalloc.cli import main

sys.exit(main())
