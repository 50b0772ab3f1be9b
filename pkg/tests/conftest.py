"""
Shared golden data: populations of every correlation of length 4.
"""
import pytest

FIG2 = {
    "0000": {2: 74, 3: 3678, 4: 45132, 5: 297020},
    "0001": {2: 82, 3: 1866, 4: 15108, 5: 74380},
    "0010": {2: 30, 3: 480, 4: 3060, 5: 12480},
    "0011": {2: 24, 3: 216, 4: 960, 5: 3000},
    "0100": {2: 16, 3: 162, 4: 768, 5: 2500},
    "0101": {2: 8, 3: 54, 4: 192, 5: 500},
    "0111": {2: 6, 3: 24, 4: 60, 5: 120},
    "1000": {2: 6, 3: 48, 4: 180, 5: 480},
    "1001": {2: 6, 3: 24, 4: 60, 5: 120},
    "1010": {2: 2, 3: 6, 4: 12, 5: 20},
    "1111": {2: 2, 3: 3, 4: 4, 5: 5},
}


@pytest.fixture
def fig2():
    """Population sizes of Δ4 for alphabet sizes 2 to 5."""
    return FIG2
