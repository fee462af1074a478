import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

SEED = 0xE15731
