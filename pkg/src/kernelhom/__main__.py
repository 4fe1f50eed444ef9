import sys

from kernelhom.cli import main

sys.exit(main())
