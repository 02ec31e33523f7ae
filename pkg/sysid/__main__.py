import sys

from sysid.main import main

sys.exit(main())
