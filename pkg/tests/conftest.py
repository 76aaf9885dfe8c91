from __future__ import annotations

import pytest

from flatperm.genfun import Pipeline
from flatperm.recurrence import GTable


@pytest.fixture(scope="session")
def table() -> GTable:
    """One recurrence table shared across the whole run; grows on demand."""
    return GTable(9)


@pytest.fixture(scope="session")
def pipeline6(table: GTable) -> Pipeline:
    """Kernel pipeline through r = 6 at the default order 4*6 + 10 = 34."""
    return Pipeline(r_max=6, table=table)
