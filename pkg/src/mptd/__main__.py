from mptd.cli import main
import sys

sys.exit(main())
