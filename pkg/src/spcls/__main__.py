import sys

from spcls.cli import main

sys.exit(main())
