from __future__ import annotations

from logging import getLogger

LOGGER = getLogger("bichromatic")


__all__ = ["LOGGER"]
