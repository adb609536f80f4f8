"""Exact qudit Pauli arithmetic in symplectic form with phase tracking.

An operator is stored as ``w^a * X^xvec * Z^zvec`` where the per-qudit factor
is ``X_q^{x_q} Z_q^{z_q}`` (X left of Z) and ``w = exp(2*pi*i/D)`` with
``D = d`` for odd qudit dimension ``d`` and ``D = 2d`` for even ``d``.  The
doubled phase group for even ``d`` keeps the group generated by phased
operators closed; for ``d = 2`` it makes ``w = i`` and ``Y = w * X * Z`` an
order-two letter.

Multiplication follows the single-qudit reordering rule
``Z^s X^t = omega^{st} X^t Z^s`` with ``omega = w^{D/d}``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import DimensionMismatch

__all__ = [
    "PauliOp",
    "phase_order",
    "identity",
    "single",
    "from_letters",
    "parse_pauli",
    "multiply",
    "commutator_exponent",
    "weight",
    "support",
    "restrict",
    "embed",
    "order_d_phase",
    "pauli_matrix",
]


def phase_order(dim: int) -> int:
    """Order D of the tracked phase group: d for odd d, 2d for even d."""
    return dim if dim % 2 else 2 * dim


def order_d_phase(xvec, zvec, dim: int) -> int:
    """Phase exponent making X^x Z^z an order-d operator (0 for odd d)."""
    if dim % 2:
        return 0
    return sum(int(a) * int(b) for a, b in zip(xvec, zvec)) % 2


@dataclass(frozen=True)
class PauliOp:
    """Immutable n-qudit Pauli operator ``w^phase * X^x * Z^z``."""

    dim: int
    x: tuple[int, ...]
    z: tuple[int, ...]
    phase: int = 0

    def __post_init__(self):
        d = self.dim
        if d < 2:
            raise ValueError("qudit dimension must be at least 2")
        if len(self.x) != len(self.z):
            raise DimensionMismatch("X and Z exponent vectors differ in length")
        object.__setattr__(self, "x", tuple(int(v) % d for v in self.x))
        object.__setattr__(self, "z", tuple(int(v) % d for v in self.z))
        object.__setattr__(self, "phase", int(self.phase) % phase_order(d))

    # -- basic queries ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def phase_unit_order(self) -> int:
        return phase_order(self.dim)

    def is_identity(self, up_to_phase: bool = False) -> bool:
        trivial = not any(self.x) and not any(self.z)
        return trivial if up_to_phase else trivial and self.phase == 0

    def support(self) -> frozenset[int]:
        return frozenset(
            q for q in range(self.n) if self.x[q] or self.z[q]
        )

    def weight(self) -> int:
        return sum(1 for q in range(self.n) if self.x[q] or self.z[q])

    def symplectic(self) -> tuple[int, ...]:
        """Exponent row (x_1..x_n, z_1..z_n) used by the linear algebra."""
        return self.x + self.z

    # -- group arithmetic --------------------------------------------------

    def _check(self, other: "PauliOp"):
        if self.dim != other.dim:
            raise DimensionMismatch(
                f"dimension mismatch: {self.dim} vs {other.dim}"
            )
        if self.n != other.n:
            raise DimensionMismatch(f"qudit count mismatch: {self.n} vs {other.n}")

    def __mul__(self, other: "PauliOp") -> "PauliOp":
        self._check(other)
        d = self.dim
        e = phase_order(d) // d
        cross = sum(a * b for a, b in zip(self.z, other.x))
        phase = self.phase + other.phase + e * cross
        x = tuple((a + b) % d for a, b in zip(self.x, other.x))
        z = tuple((a + b) % d for a, b in zip(self.z, other.z))
        return PauliOp(d, x, z, phase)

    def inverse(self) -> "PauliOp":
        d = self.dim
        e = phase_order(d) // d
        cross = sum(a * b for a, b in zip(self.z, self.x))
        x = tuple((-a) % d for a in self.x)
        z = tuple((-a) % d for a in self.z)
        return PauliOp(d, x, z, -self.phase + e * cross)

    def __pow__(self, k: int) -> "PauliOp":
        if k < 0:
            return self.inverse() ** (-k)
        d = self.dim
        e = phase_order(d) // d
        cross = sum(a * b for a, b in zip(self.z, self.x))
        phase = k * self.phase + e * (k * (k - 1) // 2) * cross
        x = tuple((k * a) % d for a in self.x)
        z = tuple((k * a) % d for a in self.z)
        return PauliOp(d, x, z, phase)

    def with_phase(self, phase: int = 0) -> "PauliOp":
        return PauliOp(self.dim, self.x, self.z, phase)

    def commutes_with(self, other: "PauliOp") -> bool:
        return commutator_exponent(self, other) == 0

    # -- slicing -----------------------------------------------------------

    def restrict(self, region) -> "PauliOp":
        """Projection onto the (sorted) qudit subset ``region``."""
        idx = sorted(region)
        for q in idx:
            if not 0 <= q < self.n:
                raise IndexError(f"qudit index {q} out of range")
        return PauliOp(
            self.dim,
            tuple(self.x[q] for q in idx),
            tuple(self.z[q] for q in idx),
            self.phase,
        )

    def embed(self, region, n: int) -> "PauliOp":
        """Place this operator at positions ``region`` of an n-qudit identity."""
        idx = sorted(region)
        if len(idx) != self.n:
            raise IndexError("region size does not match operator size")
        for q in idx:
            if not 0 <= q < n:
                raise IndexError(f"qudit index {q} out of range")
        x = [0] * n
        z = [0] * n
        for src, dst in enumerate(idx):
            x[dst] = self.x[src]
            z[dst] = self.z[src]
        return PauliOp(self.dim, tuple(x), tuple(z), self.phase)

    # -- text forms ----------------------------------------------------------

    def to_text(self) -> str:
        if self.dim == 2:
            return self._to_letters()
        parts = []
        if self.phase:
            parts.append(f"w^{self.phase}")
        for q in range(self.n):
            if self.x[q]:
                parts.append(f"X{q + 1}" + (f"^{self.x[q]}" if self.x[q] != 1 else ""))
            if self.z[q]:
                parts.append(f"Z{q + 1}" + (f"^{self.z[q]}" if self.z[q] != 1 else ""))
        if len(parts) == (1 if self.phase else 0):
            parts.append("I")
        return " ".join(parts)

    def _to_letters(self) -> str:
        letters = []
        ys = 0
        for xq, zq in zip(self.x, self.z):
            if xq and zq:
                letters.append("Y")
                ys += 1
            elif xq:
                letters.append("X")
            elif zq:
                letters.append("Z")
            else:
                letters.append("I")
        lead = (self.phase - ys) % 4
        prefix = {0: "", 1: "i", 2: "-", 3: "-i"}[lead]
        return prefix + "".join(letters)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"PauliOp(d={self.dim}, {self.to_text()!r})"


# -- constructors -----------------------------------------------------------


def identity(dim: int, n: int) -> PauliOp:
    return PauliOp(dim, (0,) * n, (0,) * n, 0)


def single(dim: int, n: int, qudit: int, x: int, z: int, phase: int = 0) -> PauliOp:
    """Operator acting as X^x Z^z on one qudit and trivially elsewhere."""
    if not 0 <= qudit < n:
        raise IndexError(f"qudit index {qudit} out of range")
    xs = [0] * n
    zs = [0] * n
    xs[qudit] = x
    zs[qudit] = z
    return PauliOp(dim, tuple(xs), tuple(zs), phase)


_LETTER_XZ = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}


def from_letters(s: str) -> PauliOp:
    """Qubit operator from a compact letter string like ``-iXZZXI``."""
    m = re.fullmatch(r"([+-]?)(i?)([IXYZ]+)", s.strip())
    if not m:
        raise ValueError(f"not a letter-form Pauli string: {s!r}")
    sign, imag, body = m.groups()
    phase = (2 if sign == "-" else 0) + (1 if imag else 0)
    x, z = [], []
    for ch in body:
        a, b = _LETTER_XZ[ch]
        x.append(a)
        z.append(b)
        if ch == "Y":
            phase += 1
    return PauliOp(2, tuple(x), tuple(z), phase)


_FACTOR_RE = re.compile(r"([XZ])(\d+)(?:\^(-?\d+))?$")


def parse_pauli(s: str, dim: int, n: int) -> PauliOp:
    """Parse either grammar: ``w^a X1^r1 Z1^s1 ...`` or (d=2) letter strings."""
    s = s.strip()
    if dim == 2 and re.fullmatch(r"[+-]?i?[IXYZ]+", s):
        op = from_letters(s)
        if op.n != n:
            raise ValueError(f"expected {n} qudits, got {op.n}")
        return op
    phase = 0
    x = [0] * n
    z = [0] * n
    tokens = s.split()
    if tokens and tokens[0].startswith("w^"):
        phase = int(tokens[0][2:])
        tokens = tokens[1:]
    if tokens == ["I"]:
        tokens = []
    for tok in tokens:
        m = _FACTOR_RE.match(tok)
        if not m:
            raise ValueError(f"bad Pauli factor {tok!r} in {s!r}")
        kind, idx, exp = m.group(1), int(m.group(2)) - 1, m.group(3)
        if not 0 <= idx < n:
            raise ValueError(f"qudit index {idx + 1} out of range in {s!r}")
        e = int(exp) if exp is not None else 1
        if kind == "X":
            x[idx] = (x[idx] + e) % dim
        else:
            z[idx] = (z[idx] + e) % dim
    return PauliOp(dim, tuple(x), tuple(z), phase)


# -- free-function forms of the operations ------------------------------------


def multiply(p: PauliOp, q: PauliOp) -> PauliOp:
    return p * q


def commutator_exponent(p: PauliOp, q: PauliOp) -> int:
    """Exponent c of the group commutator [p, q] = omega^c I, in [0, d)."""
    p._check(q)
    d = p.dim
    st = sum(a * b for a, b in zip(p.z, q.x))
    ru = sum(a * b for a, b in zip(p.x, q.z))
    return (st - ru) % d


def weight(p: PauliOp) -> int:
    return p.weight()


def support(p: PauliOp) -> frozenset[int]:
    return p.support()


def restrict(p: PauliOp, region) -> PauliOp:
    return p.restrict(region)


def embed(p: PauliOp, region, n: int) -> PauliOp:
    return p.embed(region, n)


# -- dense matrices (for small-system oracles) --------------------------------


def _x_matrix(d: int) -> np.ndarray:
    m = np.zeros((d, d), dtype=complex)
    for j in range(d):
        m[(j + 1) % d, j] = 1.0
    return m


def _z_matrix(d: int) -> np.ndarray:
    omega = np.exp(2j * np.pi / d)
    return np.diag([omega ** j for j in range(d)])


def pauli_matrix(p: PauliOp) -> np.ndarray:
    """Dense matrix of the operator; intended for n small enough to afford d^n."""
    d = p.dim
    w = np.exp(2j * np.pi / phase_order(d))
    X, Z = _x_matrix(d), _z_matrix(d)
    factors = []
    for xq, zq in zip(p.x, p.z):
        f = np.linalg.matrix_power(X, xq) @ np.linalg.matrix_power(Z, zq)
        factors.append(f)
    full = reduce(np.kron, factors, np.eye(1, dtype=complex))
    return w ** p.phase * full
