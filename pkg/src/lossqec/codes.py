"""Bundled test codes and code-construction helpers."""

from __future__ import annotations

from pathlib import Path

from .pauli import PauliOp
from .stab import CodeMeta, StabilizerGroup, load_code

__all__ = ["codes_dir", "available_codes", "named_code", "rotated_surface_code"]


def codes_dir() -> Path:
    return Path(__file__).parent / "codes"


def available_codes() -> list[str]:
    return sorted(p.stem for p in codes_dir().glob("*.code"))


def named_code(name: str) -> StabilizerGroup:
    path = codes_dir() / f"{name}.code"
    if not path.exists():
        raise FileNotFoundError(
            f"unknown code {name!r}; available: {', '.join(available_codes())}"
        )
    return load_code(path)


def rotated_surface_code(d: int) -> StabilizerGroup:
    """Rotated surface code [[d*d, 1, d]] on a d x d data grid (odd d).

    Bulk plaquettes are checkerboard-colored X/Z; weight-2 boundary checks
    continue the coloring with X cells on the top/bottom edges and Z cells on
    the left/right edges.  The logical X is a vertical X column, logical Z a
    horizontal Z row.
    """
    if d % 2 == 0 or d < 3:
        raise ValueError("rotated surface code needs odd d >= 3")
    n = d * d

    def q(r, c):
        return r * d + c

    def op(kind, qubits):
        x = [0] * n
        z = [0] * n
        for i in qubits:
            if kind == "X":
                x[i] = 1
            else:
                z[i] = 1
        return PauliOp(2, tuple(x), tuple(z), 0)

    gens = []
    for r in range(d - 1):
        for c in range(d - 1):
            kind = "X" if (r + c) % 2 == 0 else "Z"
            gens.append(op(kind, [q(r, c), q(r, c + 1), q(r + 1, c), q(r + 1, c + 1)]))
    for c in range(d - 1):  # top / bottom X boundary cells
        if c % 2 == 1:
            gens.append(op("X", [q(0, c), q(0, c + 1)]))
        if (d - 1 + c) % 2 == 0:
            gens.append(op("X", [q(d - 1, c), q(d - 1, c + 1)]))
    for r in range(d - 1):  # left / right Z boundary cells
        if r % 2 == 0:
            gens.append(op("Z", [q(r, 0), q(r + 1, 0)]))
        if (r + d - 1) % 2 == 1:
            gens.append(op("Z", [q(r, d - 1), q(r + 1, d - 1)]))
    logical_x = op("X", [q(r, 0) for r in range(d)])
    logical_z = op("Z", [q(0, c) for c in range(d)])
    return StabilizerGroup(
        2, n, tuple(gens), CodeMeta(k=1, dist=d), (logical_x,), (logical_z,)
    )
