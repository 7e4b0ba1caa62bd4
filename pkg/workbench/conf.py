from __future__ import annotations

from typing import Any

from django.conf import settings

DEFAULTS: dict[str, Any] = {
    'HARDY_BUDGET': 10_000_000,
    'GAME_BUDGET': 200_000,
    'STATE_BUDGET': 20_000,
    'ENUMERATION_BUDGET': 1_000_000,
    'MAX_THRESHOLD': 100_000,
    'EPSILON_STEP_BUDGET': 100_000,
    'VARIABLE_MODE': 'self_loop',
}


def workbench_setting(name: str, override: Any = None) -> Any:
    """Return ``override`` when given, else the configured value, else the default."""
    if override is not None:
        return override
    configured = getattr(settings, 'WORKBENCH', {}) or {}
    if name in configured and configured[name] is not None:
        return configured[name]
    return DEFAULTS[name]
