import sys
from pathlib import Path

# make tests/factories.py and tests/oracles.py importable as plain modules
sys.path.insert(0, str(Path(__file__).parent))
