import sys

from penaltylogic.cli import main

sys.exit(main())
