import os

DEFAULT_MAX_ORDER = 512
DEFAULT_ENUM_ORDER = 64
DEFAULT_BUDGET = 10**8
DEFAULT_MALCEV_LEVEL = 4


def default_budget():
    """Iteration budget, overridable through the ``ISW_BUDGET`` env var."""
    raw = os.environ.get("ISW_BUDGET")
    if raw:
        return int(float(raw))
    return DEFAULT_BUDGET
