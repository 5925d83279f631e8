import sys

from spreadlab.main import main

sys.exit(main())
