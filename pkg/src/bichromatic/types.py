from __future__ import annotations

from typing import Any, Literal

import numpy as np
from numpy.typing import NDArray

type ComplexArray = NDArray[np.complex128]
type FloatArray = NDArray[np.float64]
type IntArray = NDArray[np.int64]
type SpectrumMethod = Literal["auto", "series", "fft"]
type StrDict = dict[str, Any]
type TableSubcommand = Literal[
    "born", "dressed", "inelastic", "phase-scan", "ratio-scan", "total"
]
type Subcommand = TableSubcommand | Literal["validate"]

# settings choices; typed-settings resolves these at runtime, so plain aliases
ArgumentFormula = Literal["exact", "simplified"]
BornNormalization = Literal["calibrated", "standard"]
OutputFormat = Literal["csv", "json"]
PhaseUnits = Literal["rad", "pi"]
RadiusConvention = Literal["reduced", "absolute"]


__all__ = [
    "ArgumentFormula",
    "BornNormalization",
    "ComplexArray",
    "FloatArray",
    "IntArray",
    "OutputFormat",
    "PhaseUnits",
    "RadiusConvention",
    "SpectrumMethod",
    "StrDict",
    "Subcommand",
    "TableSubcommand",
]
