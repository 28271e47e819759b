"""Tolerance record and key-value config loading."""
from __future__ import annotations

import configparser
from dataclasses import dataclass, fields, replace
from pathlib import Path


@dataclass(frozen=True)
class Tolerances:
    identity: float = 1e-9
    geometric: float = 1e-7
    tangency: float = 1e-7
    boundary_band: float = 1e-8
    eigen_cluster: float = 1e-6
    line_residual: float = 1e-9
    line_samples: int = 64
    cert_grid: int = 2048
    cert_gap: float = 1e-3
    moduli: float = 1e-9

    def with_overrides(self, **kw) -> "Tolerances":
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw)


DEFAULT = Tolerances()


def read_config(path: str | Path) -> dict[str, str]:
    """Read a ``key = value`` file (no section header needed).

    Keys are normalised to use underscores, so ``tol-id`` and ``tol_id`` are
    the same key.
    """
    text = Path(path).read_text()
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    parser.read_string("[config]\n" + text)
    return {k.strip().replace("-", "_"): v.strip() for k, v in parser["config"].items()}


def tolerance_names() -> list[str]:
    return [f.name for f in fields(Tolerances)]
