import sys

from imaginarity.cli import main

sys.exit(main())
