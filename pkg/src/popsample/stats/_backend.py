"""Pick the compiled drawing loops when built, else the pure-Python ones."""

from __future__ import annotations

from types import ModuleType

from . import _pure

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS: dict[str, ModuleType] = {"pure": _pure}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled

DEFAULT = "compiled" if _compiled is not None else "pure"


def get_backend(name: str | None = None) -> ModuleType:
    if name is None:
        name = DEFAULT
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown or unavailable backend {name!r}; have {sorted(BACKENDS)}") from None
