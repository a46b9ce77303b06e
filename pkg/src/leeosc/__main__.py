import sys

from leeosc.cli import main

sys.exit(main())
