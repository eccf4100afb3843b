import sys

from semigalois.cli import main

sys.exit(main())
