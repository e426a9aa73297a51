import sys

from sudocrypt.cli.main import main

sys.exit(main())
