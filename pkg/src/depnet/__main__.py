# /src/depnet/__main__.py
# python -m depnet

import sys

from .cli import main

sys.exit(main())
