import sys

from ilvm.cli import main

sys.exit(main())
