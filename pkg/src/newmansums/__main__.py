import sys

from newmansums.cli import main

sys.exit(main())
