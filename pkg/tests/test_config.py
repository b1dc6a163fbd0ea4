import pytest

from reflectron.config import (
    DEFAULT_BUDGET_ENTRIES,
    DimensionBudgetError,
    budget_entries,
    ensure_operator_budget,
)
from reflectron.tensor_core import permutation_operator


def test_default_budget():
    assert budget_entries() == DEFAULT_BUDGET_ENTRIES == 2**22


def test_env_override(monkeypatch):
    monkeypatch.setenv("REFLECTRON_BUDGET", "63")
    assert budget_entries() == 63
    ensure_operator_budget(7)
    with pytest.raises(DimensionBudgetError):
        ensure_operator_budget(8)
    with pytest.raises(DimensionBudgetError):
        permutation_operator((1, 0, 2), 2)
    monkeypatch.setenv("REFLECTRON_BUDGET", "-5")
    with pytest.raises(ValueError):
        budget_entries()
