import sys

from lulc.cli import main

sys.exit(main())
