import sys
from pathlib import Path

# Make the sibling oracle/helper modules importable as plain modules.
sys.path.insert(0, str(Path(__file__).parent))
