import sys

from ginkit.main import main

sys.exit(main())
