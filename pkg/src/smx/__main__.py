from smx.cli import main
import sys

sys.exit(main())
