import sys
from pathlib import Path

# Make the sibling oracle/corpus helper modules importable regardless of
# the directory pytest is launched from.
sys.path.insert(0, str(Path(__file__).resolve().parent))
