import sys

from memchan.cli import main

sys.exit(main())
