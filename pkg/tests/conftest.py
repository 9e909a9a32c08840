from __future__ import annotations

import pytest

from qschemes.spectra import SchemeParams


@pytest.fixture
def g522() -> SchemeParams:
    return SchemeParams.grassmann(5, 2, 2)
