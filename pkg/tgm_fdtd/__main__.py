import sys

from tgm_fdtd.cli import main

sys.exit(main())
