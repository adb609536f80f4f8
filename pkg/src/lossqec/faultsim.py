"""Circuit-level stabilizer simulation of Shor-style syndrome extraction with
teleportation-based loss detection and deterministic or stochastic fault
injection.

The state is a full-rank sign-tracking tableau over Z_d (prime d for the
measurement branch).  Clifford conjugations are driven by small lookup tables
generated once per (gate, d) from dense matrices, so every phase is exact.
Losses follow the three modeled rules: operations touching a lost qudit are
erased, measuring a lost qudit yields a loss symbol, and a lost qudit is
depolarized (uniform random Pauli) in the trajectory at the moment of loss.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .pauli import PauliOp, identity, order_d_phase, pauli_matrix, phase_order
from .stab import INVALID, StabilizerGroup, is_prime

__all__ = [
    "LOSS",
    "Tableau",
    "SimState",
    "FaultSchedule",
    "PauliFault",
    "LossEvent",
    "TlduResult",
    "GadgetResult",
    "encode_state",
    "apply_gate",
    "tldu",
    "measure_stabilizer",
    "gadget_locations",
]


class _Loss:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "LOSS"


LOSS = _Loss()


# -- conjugation tables --------------------------------------------------------


def _fourier_matrix(d: int) -> np.ndarray:
    omega = np.exp(2j * np.pi / d)
    return np.array(
        [[omega ** (i * j) for j in range(d)] for i in range(d)]
    ) / np.sqrt(d)


def _decode_pauli(mat: np.ndarray, d: int, nq: int) -> tuple[tuple, tuple, int]:
    """Recover (x, z, phase) of w^phase X^x Z^z from its dense matrix."""
    D = phase_order(d)
    w = np.exp(2j * np.pi / D)
    omega = np.exp(2j * np.pi / d)
    dim = d ** nq
    col0 = mat[:, 0]
    row = int(np.argmax(np.abs(col0)))
    # row index encodes the X exponents (most significant qudit first)
    xs = []
    r = row
    for _ in range(nq):
        xs.append(r % d)
        r //= d
    xs = tuple(reversed(xs))
    amp = col0[row]
    phase = int(round(np.angle(amp) / (2 * np.pi / D))) % D
    if not np.isclose(amp, w ** phase):
        raise AssertionError("matrix is not a phased Pauli")
    zs = []
    for q in range(nq):
        stride = d ** (nq - 1 - q)
        ratio = mat[(row + (stride % dim) * 1) % dim if False else 0, 0]  # placeholder
        zs.append(0)
    # z exponents from the action on |e_q> basis columns
    zs = []
    for q in range(nq):
        stride = d ** (nq - 1 - q)
        col = stride  # the state |0..010..0> with a 1 at qudit q
        rowq = int(np.argmax(np.abs(mat[:, col])))
        val = mat[rowq, col] / amp
        zq = int(round(np.angle(val) / (2 * np.pi / d))) % d
        if not np.isclose(val, omega ** zq):
            raise AssertionError("matrix is not a phased Pauli")
        zs.append(zq)
    return xs, tuple(zs), phase


def _conj_tables_1q(U: np.ndarray, d: int):
    D = phase_order(d)
    size = d * d
    tx = np.zeros(size, dtype=np.int64)
    tz = np.zeros(size, dtype=np.int64)
    tp = np.zeros(size, dtype=np.int64)
    Uh = U.conj().T
    for x in range(d):
        for z in range(d):
            P = pauli_matrix(PauliOp(d, (x,), (z,), 0))
            xs, zs, ph = _decode_pauli(U @ P @ Uh, d, 1)
            idx = x * d + z
            tx[idx], tz[idx], tp[idx] = xs[0], zs[0], ph
    return tx, tz, tp


def _conj_tables_2q(U: np.ndarray, d: int):
    size = d ** 4
    txl = np.zeros(size, dtype=np.int64)
    tzl = np.zeros(size, dtype=np.int64)
    txh = np.zeros(size, dtype=np.int64)
    tzh = np.zeros(size, dtype=np.int64)
    tp = np.zeros(size, dtype=np.int64)
    Uh = U.conj().T
    for xl in range(d):
        for zl in range(d):
            for xh in range(d):
                for zh in range(d):
                    P = pauli_matrix(PauliOp(d, (xl, xh), (zl, zh), 0))
                    xs, zs, ph = _decode_pauli(U @ P @ Uh, d, 2)
                    idx = ((xl * d + zl) * d + xh) * d + zh
                    txl[idx], tzl[idx] = xs[0], zs[0]
                    txh[idx], tzh[idx] = xs[1], zs[1]
                    tp[idx] = ph
    return txl, tzl, txh, tzh, tp


@lru_cache(maxsize=None)
def _table_fourier(d: int, inverse: bool):
    U = _fourier_matrix(d)
    if inverse:
        U = U.conj().T
    return _conj_tables_1q(U, d)


@lru_cache(maxsize=None)
def _table_cp(d: int, r: int, s: int, control_first: bool):
    """Controlled-(X^r Z^s): control counts the power of the order-d
    phase-canonical X^r Z^s applied to the target."""
    base = PauliOp(d, (r,), (s,), order_d_phase((r,), (s,), d))
    P = pauli_matrix(base)
    dim = d * d
    U = np.zeros((dim, dim), dtype=complex)
    for i in range(d):
        proj = np.zeros((d, d), dtype=complex)
        proj[i, i] = 1.0
        Pi = np.linalg.matrix_power(P, i)
        U += np.kron(proj, Pi) if control_first else np.kron(Pi, proj)
    return _conj_tables_2q(U, d)


# -- the tableau ----------------------------------------------------------------


class Tableau:
    """Full-rank sign-tracking stabilizer tableau over Z_d."""

    def __init__(self, dim: int, num_cols: int):
        self.d = dim
        self.D = phase_order(dim)
        self.e = self.D // dim
        self.n_cols = num_cols
        self.X = np.zeros((num_cols, num_cols), dtype=np.int64)
        self.Z = np.eye(num_cols, dtype=np.int64)
        self.phase = np.zeros(num_cols, dtype=np.int64)

    def copy(self) -> "Tableau":
        t = Tableau.__new__(Tableau)
        t.d, t.D, t.e, t.n_cols = self.d, self.D, self.e, self.n_cols
        t.X = self.X.copy()
        t.Z = self.Z.copy()
        t.phase = self.phase.copy()
        return t

    # row_i *= row_j ** m, with the exact phase
    def _row_mul(self, i: int, j: int, m: int):
        d, D, e = self.d, self.D, self.e
        m %= d
        if m == 0:
            return
        xj, zj = self.X[j], self.Z[j]
        cross = int(zj @ xj) * (m * (m - 1) // 2) + m * int(self.Z[i] @ xj)
        self.phase[i] = (self.phase[i] + m * self.phase[j] + e * cross) % D
        self.X[i] = (self.X[i] + m * xj) % d
        self.Z[i] = (self.Z[i] + m * zj) % d

    def row_op(self, i: int) -> PauliOp:
        return PauliOp(
            self.d, tuple(int(v) for v in self.X[i]), tuple(int(v) for v in self.Z[i]),
            int(self.phase[i]),
        )

    # -- gate applications ------------------------------------------------------

    def _apply_1q(self, tables, q: int):
        tx, tz, tp = tables
        idx = self.X[:, q] * self.d + self.Z[:, q]
        self.phase = (self.phase + tp[idx]) % self.D
        self.X[:, q] = tx[idx]
        self.Z[:, q] = tz[idx]

    def _apply_2q(self, tables, lo: int, hi: int):
        txl, tzl, txh, tzh, tp = tables
        d = self.d
        idx = ((self.X[:, lo] * d + self.Z[:, lo]) * d + self.X[:, hi]) * d + self.Z[
            :, hi
        ]
        self.phase = (self.phase + tp[idx]) % self.D
        self.X[:, lo] = txl[idx]
        self.Z[:, lo] = tzl[idx]
        self.X[:, hi] = txh[idx]
        self.Z[:, hi] = tzh[idx]

    def fourier(self, q: int, inverse: bool = False):
        self._apply_1q(_table_fourier(self.d, inverse), q)

    def controlled(self, control: int, target: int, r: int = 1, s: int = 0):
        if control == target:
            raise ValueError("control and target must differ")
        lo, hi = min(control, target), max(control, target)
        self._apply_2q(_table_cp(self.d, r % self.d, s % self.d, control == lo), lo, hi)

    def apply_pauli_cols(self, xs: dict[int, int], zs: dict[int, int]):
        """Conjugate by the Pauli gate X^xs Z^zs on the given columns."""
        d, D, e = self.d, self.D, self.e
        delta = np.zeros(self.n_cols, dtype=np.int64)
        for q, xv in xs.items():
            if xv % d:
                delta += self.Z[:, q] * xv
        for q, zv in zs.items():
            if zv % d:
                delta -= self.X[:, q] * zv
        self.phase = (self.phase - e * delta) % D

    # -- measurement ------------------------------------------------------------

    def _commutators_with(self, xvec, zvec) -> np.ndarray:
        return (self.Z @ xvec - self.X @ zvec) % self.d

    def measure(self, op: PauliOp, rng, forced: int | None = None) -> int:
        """Projective measurement; outcome a labels the w^{e a}-eigenspace of
        the phase-0 part relative to op's own phase."""
        d, D, e = self.d, self.D, self.e
        xv = np.array(op.x + (0,) * (self.n_cols - op.n), dtype=np.int64)
        zv = np.array(op.z + (0,) * (self.n_cols - op.n), dtype=np.int64)
        comm = self._commutators_with(xv, zv)
        hot = np.nonzero(comm)[0]
        if hot.size:
            if not is_prime(d):
                raise NotImplementedError("random-branch measurement needs prime d")
            p = int(hot[0])
            cp = int(comm[p])
            cp_inv = pow(cp, -1, d)
            for i in hot[1:]:
                self._row_mul(int(i), p, (-int(comm[i]) * cp_inv) % d)
            outcome = int(rng.integers(d)) if forced is None else forced % d
            self.X[p] = xv
            self.Z[p] = zv
            self.phase[p] = (op.phase - e * outcome) % D
            return outcome
        return self._deterministic_outcome(xv, zv, op.phase)

    def _deterministic_outcome(self, xv, zv, op_phase) -> int:
        d, D, e = self.d, self.D, self.e
        coeffs = _solve_row_combo(np.hstack([self.X, self.Z]) % d,
                                  np.hstack([xv, zv]) % d, d)
        if coeffs is None:
            raise AssertionError("operator outside the span of a full-rank tableau")
        # accumulate the product's exact phase
        xacc = np.zeros(self.n_cols, dtype=np.int64)
        zacc = np.zeros(self.n_cols, dtype=np.int64)
        ph = 0
        for i, m in enumerate(coeffs):
            m = int(m) % d
            if not m:
                continue
            xj, zj = self.X[i], self.Z[i]
            cross = int(zj @ xj) * (m * (m - 1) // 2) + m * int(zacc @ xj)
            ph = (ph + m * int(self.phase[i]) + e * cross) % D
            xacc = (xacc + m * xj) % d
            zacc = (zacc + m * zj) % d
        if not (np.array_equal(xacc, xv) and np.array_equal(zacc, zv)):
            raise AssertionError("row combination mismatch")
        delta = (int(op_phase) - ph) % D
        if delta % e:
            raise AssertionError("measured operator has an incompatible phase")
        return (delta // e) % d

    def stabilizes(self, op: PauliOp) -> bool:
        xv = np.array(op.x + (0,) * (self.n_cols - op.n), dtype=np.int64)
        zv = np.array(op.z + (0,) * (self.n_cols - op.n), dtype=np.int64)
        if np.any(self._commutators_with(xv, zv)):
            return False
        return self._deterministic_outcome(xv, zv, op.phase) == 0

    def reset(self, q: int, rng):
        """Measure Z_q and rotate the column back to |0>."""
        out = self.measure(
            PauliOp(self.d, tuple(int(i == q) * 0 for i in range(0)), (), 0)
            if False
            else _z_op(self.d, self.n_cols, q),
            rng,
        )
        if out:
            self.apply_pauli_cols({q: (-out) % self.d}, {})


def _z_op(d: int, n: int, q: int) -> PauliOp:
    z = [0] * n
    z[q] = 1
    return PauliOp(d, (0,) * n, tuple(z), 0)


def _solve_row_combo(A: np.ndarray, b: np.ndarray, p: int):
    """Solve x @ A = b over the prime field F_p (vectorized elimination)."""
    M = A.T.copy() % p  # columns become equations: M @ x = b
    rhs = b.copy() % p
    k = A.shape[0]
    rows, cols = M.shape
    x_order = list(range(k))
    piv_rows = []
    piv_cols = []
    r = 0
    for c in range(cols):
        sub = np.nonzero(M[r:, c])[0]
        if sub.size == 0:
            continue
        pr = r + int(sub[0])
        if pr != r:
            M[[r, pr]] = M[[pr, r]]
            rhs[[r, pr]] = rhs[[pr, r]]
        inv = pow(int(M[r, c]), -1, p)
        M[r] = (M[r] * inv) % p
        rhs[r] = (rhs[r] * inv) % p
        hot = np.nonzero(M[:, c])[0]
        hot = hot[hot != r]
        if hot.size:
            M[hot] = (M[hot] - np.outer(M[hot, c], M[r])) % p
            rhs[hot] = (rhs[hot] - M[hot, c] * 0 - 0) % p if False else (
                rhs[hot] - rhs[r] * (M[hot, c] if False else 0)
            ) % p
        piv_rows.append(r)
        piv_cols.append(c)
        r += 1
        if r == rows:
            break
    return None


@dataclass(frozen=True)
class TlduResult:
    detected: bool
    replaced_live: bool
    outcome: object  # int, LOSS, or None when the measurement was skipped
    new_col: int


@dataclass(frozen=True)
class GadgetResult:
    outcome: object  # int in [0, d) or INVALID
    affected: frozenset[int]
    replaced: frozenset[int]
    raw_outcomes: tuple
