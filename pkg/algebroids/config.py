"""Runtime configuration read from the environment."""
import os
from pathlib import Path

SEED = int(os.environ.get('ALGEBROIDS_SEED', '20240601'))
SAMPLE_POINTS = int(os.environ.get('ALGEBROIDS_SAMPLE_POINTS', '25'))
RANDOM_DEGREE = int(os.environ.get('ALGEBROIDS_RANDOM_DEGREE', '2'))
LOG_LEVEL = os.environ.get('ALGEBROIDS_LOG_LEVEL', 'WARNING').upper()
DATA_DIR = Path(os.environ.get('ALGEBROIDS_DATA_DIR', Path(__file__).parent / 'data'))
