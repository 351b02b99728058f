import sys

from nilcox.cli import main

sys.exit(main())
