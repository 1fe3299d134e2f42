import pytest

from macc import Pda, build_scheme, mn_pda

# Hand-built 5x5 array with Z=2, S=14 that passes C1-C4 but breaks the
# window-crossing condition at access degree 2: the integer 1 sits at
# (1,3) and (2,1), and the shifted column 5 of the first occurrence lands
# outside row 2's retrieve window {3,4,6,7}.
PNEG_ROWS = (
    (0, 0, 1, 2, 3),
    (1, 4, 0, 5, 0),
    (0, 6, 7, 0, 8),
    (9, 0, 0, 10, 11),
    (12, 13, 14, 0, 0),
)


@pytest.fixture(scope="session")
def pneg() -> Pda:
    return Pda(rows=5, cols=5, entries=PNEG_ROWS, z=2, s=14)


@pytest.fixture(scope="session")
def scheme832():
    """The worked (K, L, t) = (8, 3, 2) instance built from the 4x6 array."""
    return build_scheme(mn_pda(4, 2), 8, 3)
