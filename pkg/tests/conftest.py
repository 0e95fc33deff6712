import sys
from pathlib import Path

import numpy as np
import pytest

# make `import oracles` work regardless of pytest's import mode
sys.path.insert(0, str(Path(__file__).resolve().parent))


@pytest.fixture
def rng():
    """Fresh deterministic generator; tests needing several streams seed
    their own."""
    return np.random.default_rng(20240817)
