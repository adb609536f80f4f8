"""Stabilizer groups over Z_d: reduction, local subgroups, canonical bipartite
generating sets, syndromes, reduced errors, and erasure correctability.

Group-level computations work on the symplectic exponent rows of the
generators, modulo the phase subgroup K = {w^a I}; phases are carried along
exactly by expressing every derived generator as an explicit product of the
input generators and evaluating that product.

All code paths work for arbitrary d >= 2.  Over a prime d the Howell form
degenerates to Gaussian elimination and "minimal generating set" coincides
with "independent generating set".
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product

from . import zdlinalg as zl
from .errors import (
    BasisMismatch,
    DimensionMismatch,
    InfeasibleSyndrome,
    NotAStabilizerGroup,
    NotCleanable,
)
from .pauli import PauliOp, commutator_exponent, identity, parse_pauli

__all__ = [
    "INVALID",
    "CodeMeta",
    "StabilizerGroup",
    "SyndromeRecord",
    "CanonicalGenSet",
    "GramSchmidtResult",
    "reduce_group",
    "local_subgroup",
    "gram_schmidt",
    "canonical_gen_set",
    "syndrome",
    "reduced_error",
    "is_correctable_erasure",
    "group_contains",
    "same_group",
    "evaluate_product",
    "parse_code",
    "format_code",
    "load_code",
    "save_code",
]


class _Invalid:
    """Singleton marker for a loss-corrupted syndrome entry."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "*"


INVALID = _Invalid()


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in range(2, int(n ** 0.5) + 1):
        if n % p == 0:
            return False
    return True


@dataclass(frozen=True)
class CodeMeta:
    k: int
    dist: int


@dataclass(frozen=True)
class StabilizerGroup:
    """A generating set of pairwise-commuting qudit Pauli operators."""

    dim: int
    n: int
    gens: tuple[PauliOp, ...]
    meta: CodeMeta | None = None
    logical_x: tuple[PauliOp, ...] = ()
    logical_z: tuple[PauliOp, ...] = ()

    def __post_init__(self):
        for g in self.gens + self.logical_x + self.logical_z:
            if g.dim != self.dim or g.n != self.n:
                raise DimensionMismatch("generator shape does not match the group")
        gens = self.gens
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                if commutator_exponent(gens[i], gens[j]) != 0:
                    raise ValueError(
                        f"generators {i} and {j} do not commute: "
                        f"{gens[i]} vs {gens[j]}"
                    )

    @property
    def k(self) -> int | None:
        return self.meta.k if self.meta else None

    @property
    def dist(self) -> int | None:
        return self.meta.dist if self.meta else None

    def symplectic_rows(self) -> list[list[int]]:
        return [list(g.symplectic()) for g in self.gens]

    def howell_rows(self) -> list[list[int]]:
        return _howell_rows_cached(self)


@lru_cache(maxsize=None)
def _howell_rows_cached(group: StabilizerGroup):
    return zl.howell(group.symplectic_rows(), group.dim)


def evaluate_product(gens, coeffs, dim: int, n: int) -> PauliOp:
    """The operator prod_i gens[i]**coeffs[i] with its exact phase."""
    out = identity(dim, n)
    for g, c in zip(gens, coeffs):
        if c % dim:
            out = out * (g ** (c % dim))
    return out


def group_contains(group: StabilizerGroup, op: PauliOp, up_to_phase: bool = True) -> bool:
    if op.dim != group.dim or op.n != group.n:
        raise DimensionMismatch("operator shape does not match the group")
    if not group.gens:
        return op.is_identity(up_to_phase=up_to_phase)
    if not zl.in_span(list(op.symplectic()), group.howell_rows(), group.dim):
        return False
    if up_to_phase:
        return True
    coeffs = zl.solve(group.symplectic_rows(), list(op.symplectic()), group.dim)
    member = evaluate_product(group.gens, coeffs, group.dim, group.n)
    return member.phase == op.phase


def same_group(a: StabilizerGroup, b: StabilizerGroup) -> bool:
    """Equality of generated groups modulo phases (Howell-basis identity)."""
    return a.dim == b.dim and a.n == b.n and a.howell_rows() == b.howell_rows()


def _phase_consistency_check(group: StabilizerGroup):
    """Reject groups whose span contains w^a I with a != 0."""
    d = group.dim
    rows = group.symplectic_rows()
    for g in group.gens:
        if not (g ** d).is_identity():
            raise NotAStabilizerGroup(f"generator {g} has order exceeding {d}")
    if rows:
        for x in zl.left_kernel(rows, d):
            prod = evaluate_product(group.gens, x, d, group.n)
            if not prod.is_identity(up_to_phase=True):
                raise AssertionError("kernel vector is not trivial")
            if prod.phase:
                raise NotAStabilizerGroup(
                    "the generated group contains a nontrivial phase times identity"
                )


def reduce_group(group: StabilizerGroup) -> StabilizerGroup:
    """Minimal generating set of the same group, up to generator phases.

    Over prime d this is plain symplectic Gaussian elimination; over
    composite d the minimal set comes from the Smith form of the lifted
    Howell basis.  Deterministic and idempotent: any two generating sets of
    the same group reduce to the same output.
    """
    _phase_consistency_check(group)
    d = group.dim
    rows = group.symplectic_rows()
    if not rows:
        return group
    hrows, trans = zl.howell_with_transform(rows, d)
    if is_prime(d):
        picked = [(h, t) for h, t in zip(hrows, trans)]
    else:
        gens_rows, coeffs = zl.minimal_generators(hrows, d)
        picked = []
        for gvec, c in zip(gens_rows, coeffs):
            # compose: coefficients over Howell rows -> over original gens
            full = [0] * len(group.gens)
            for ci, trow in zip(c, trans):
                if ci:
                    for j in range(len(full)):
                        full[j] = (full[j] + ci * trow[j]) % d
            picked.append((gvec, full))
    new_gens = []
    for gvec, coeff in picked:
        op = evaluate_product(group.gens, coeff, d, group.n)
        if list(op.symplectic()) != list(gvec):
            raise AssertionError("row reduction lost track of a generator")
        new_gens.append(op)
    return StabilizerGroup(
        d, group.n, tuple(new_gens), group.meta, group.logical_x, group.logical_z
    )


def local_subgroup(group: StabilizerGroup, region) -> StabilizerGroup:
    """Generating set of the subgroup supported entirely inside ``region``."""
    d, n = group.dim, group.n
    L = sorted(set(region))
    comp = [q for q in range(n) if q not in set(L)]
    if not group.gens:
        return StabilizerGroup(d, n, ())
    rows = group.symplectic_rows()
    # order columns so that the complement comes first, then Howell-reduce;
    # rows with a zero complement part span exactly the local subgroup
    perm = [q for q in comp] + [q + n for q in comp] + [q for q in L] + [q + n for q in L]
    permuted = [[r[c] for c in perm] for r in rows]
    hrows, trans = zl.howell_with_transform(permuted, d)
    cut = 2 * len(comp)
    gens = []
    for h, t in zip(hrows, trans):
        if any(h[:cut]):
            continue
        gens.append(evaluate_product(group.gens, t, d, n))
    return StabilizerGroup(d, n, tuple(gens))


# -- syndromes ----------------------------------------------------------------


@dataclass(frozen=True)
class SyndromeRecord:
    """Per-generator syndrome values over a fixed ordered basis."""

    basis: tuple[PauliOp, ...]
    values: tuple

    def __post_init__(self):
        if len(self.basis) != len(self.values):
            raise ValueError("values length must match basis length")

    @property
    def fully_valid(self) -> bool:
        return all(v is not INVALID for v in self.values)

    def as_string(self) -> str:
        return "".join("*" if v is INVALID else str(v) for v in self.values)

    def value_for(self, g: PauliOp):
        return self.values[self.basis.index(g)]


def syndrome(group: StabilizerGroup, err: PauliOp) -> SyndromeRecord:
    """Commutator-exponent syndrome of ``err`` in the group's generator basis."""
    return SyndromeRecord(
        basis=tuple(group.gens),
        values=tuple(commutator_exponent(g, err) for g in group.gens),
    )


def _nonzero_site_patterns(d: int):
    return [(x, z) for x in range(d) for z in range(d) if x or z]


@lru_cache(maxsize=None)
def _coset_table(group: StabilizerGroup) -> dict:
    """Syndrome -> minimum-weight phase-free representative.

    Iterative deepening by weight; on ties the first operator in
    (support indices, per-qudit (x, z)) lexicographic order wins, which makes
    every lookup deterministic.
    """
    d, n = group.dim, group.n
    gens = group.gens
    total = d ** len(gens)
    patterns = _nonzero_site_patterns(d)
    table = {tuple([0] * len(gens)): identity(d, n)}
    for w in range(1, n + 1):
        if len(table) >= total:
            break
        for supp in combinations(range(n), w):
            for pat in product(patterns, repeat=w):
                xs = [0] * n
                zs = [0] * n
                for q, (xv, zv) in zip(supp, pat):
                    xs[q] = xv
                    zs[q] = zv
                op = PauliOp(d, tuple(xs), tuple(zs), 0)
                syn = tuple(commutator_exponent(g, op) for g in gens)
                if syn not in table:
                    table[syn] = op
    return table


def reduced_error(group: StabilizerGroup, record) -> PauliOp:
    """Minimum-weight phase-free Pauli with the given syndrome."""
    if isinstance(record, SyndromeRecord):
        if not record.fully_valid:
            raise InfeasibleSyndrome("syndrome record contains invalid entries")
        if tuple(record.basis) != tuple(group.gens):
            raise BasisMismatch("record basis differs from the group basis")
        key = tuple(int(v) % group.dim for v in record.values)
    else:
        key = tuple(int(v) % group.dim for v in record)
    if len(key) != len(group.gens):
        raise ValueError("syndrome length does not match the generator count")
    table = _coset_table(group)
    if key not in table:
        raise InfeasibleSyndrome(f"no Pauli attains syndrome {key}")
    return table[key]


def is_correctable_erasure(group: StabilizerGroup, region) -> bool:
    """True iff no nontrivial logical operator is supported inside ``region``.

    Compares |N(S)^L| with |S^L| as Z_d-modules, which works uniformly for
    prime and composite d.
    """
    d, n = group.dim, group.n
    L = sorted(set(region))
    if not L:
        return True
    local = local_subgroup(group, L)
    s_rows = [list(g.symplectic()) for g in local.gens]
    s_order = zl.module_order(zl.howell(s_rows, d), d) if s_rows else 1
    # vectors on L commuting with every generator
    k = len(group.gens)
    cols = []
    for q in L:
        cols.append([g.z[q] % d for g in group.gens])  # coefficient of v_x[q]
    for q in L:
        cols.append([(-g.x[q]) % d for g in group.gens])  # coefficient of v_z[q]
    if k == 0:
        n_order = d ** (2 * len(L))
    else:
        kern = zl.left_kernel(cols, d)
        n_order = zl.module_order(zl.howell(kern, d), d) if kern else 1
    return s_order == n_order


# -- canonical bipartite generating sets --------------------------------------


@dataclass(frozen=True)
class GramSchmidtResult:
    s1: tuple[PauliOp, ...]
    s2: tuple[PauliOp, ...]
    u: tuple[PauliOp, ...]
    basis_change: tuple[tuple[int, ...], ...]
    sigmas: tuple[int, ...]


def gram_schmidt(ops) -> GramSchmidtResult:
    """Pair up non-commuting generators, of minimal pair count.

    Returns matched lists s1, s2 with ``[s1[i], s2[i]]`` non-commuting and
    everything else mutually commuting, a central remainder ``u``, and the
    invertible basis change used (row i of the matrix gives the exponents of
    the i-th new generator over the input list).
    """
    ops = list(ops)
    if not ops:
        return GramSchmidtResult((), (), (), (), ())
    d = ops[0].dim
    k = len(ops)
    C = [[commutator_exponent(ops[i], ops[j]) for j in range(k)] for i in range(k)]
    M, sigmas = zl.antisymmetric_gram_reduce(C, d)
    new_ops = []
    for row in M:
        out = identity(d, ops[0].n)
        for g, c in zip(ops, row):
            if c % d:
                out = out * (g ** (c % d))
        new_ops.append(out)
    r = len(sigmas)
    s1 = tuple(new_ops[2 * i] for i in range(r))
    s2 = tuple(new_ops[2 * i + 1] for i in range(r))
    u = tuple(op for op in new_ops[2 * r:])
    return GramSchmidtResult(s1, s2, u, tuple(tuple(row) for row in M), tuple(sigmas))


@dataclass(frozen=True)
class CanonicalGenSet:
    """Generators split by a bipartition: local to A, local to B, and
    non-local anticommuting-restriction pairs."""

    local_a: tuple[PauliOp, ...]
    local_b: tuple[PauliOp, ...]
    pairs: tuple[tuple[PauliOp, PauliOp], ...]
    part_a: frozenset[int]
    part_b: frozenset[int]
    sigmas: tuple[int, ...] = ()

    def ordered(self) -> tuple[PauliOp, ...]:
        """Fixed basis order: local-A, then pairs interleaved, then local-B."""
        seq = list(self.local_a)
        for g, h in self.pairs:
            seq.append(g)
            seq.append(h)
        seq.extend(self.local_b)
        return tuple(seq)

    def affected(self) -> tuple[PauliOp, ...]:
        """Generators touching A: pair members first, then local-A."""
        seq = []
        for g, h in self.pairs:
            seq.append(g)
            seq.append(h)
        seq.extend(self.local_a)
        return tuple(seq)

    def sections(self) -> tuple[int, int, int]:
        return len(self.local_a), 2 * len(self.pairs), len(self.local_b)


def canonical_gen_set(group: StabilizerGroup, region) -> CanonicalGenSet:
    """Canonical generating set with respect to the bipartition (A, [n]\\A).

    Built by lifting the minimal non-commuting pairing of the restrictions to
    A, generating the A-local part from the centre of the restriction and the
    B-local part from the kernel of the restriction map.  Raises
    ``NotCleanable`` when a nontrivial logical operator is found supported
    inside A (the construction's hypothesis fails).
    """
    d, n = group.dim, group.n
    A = frozenset(region)
    B = frozenset(range(n)) - A
    for q in A:
        if not 0 <= q < n:
            raise IndexError(f"qudit index {q} out of range")
    if not group.gens:
        return CanonicalGenSet((), (), (), A, B)
    if not A:
        return CanonicalGenSet((), tuple(group.gens), (), A, B)
    if not B:
        return CanonicalGenSet(tuple(group.gens), (), (), A, B)

    gens = list(group.gens)
    k = len(gens)
    a_sorted = sorted(A)
    restr = [g.restrict(a_sorted) for g in gens]
    C = [
        [commutator_exponent(restr[i], restr[j]) for j in range(k)]
        for i in range(k)
    ]
    M, sigmas = zl.antisymmetric_gram_reduce(C, d)
    lifts = [evaluate_product(gens, row, d, n) for row in M]
    r = len(sigmas)
    pairs = tuple((lifts[2 * i], lifts[2 * i + 1]) for i in range(r))

    rows = group.symplectic_rows()

    # A-local generators from the centre of the restriction to A
    restr_rows = [list(g.symplectic()) for g in restr]
    center_vecs = []
    for y in zl.left_kernel(C, d):
        v = [0] * (2 * len(a_sorted))
        for yi, rr in zip(y, restr_rows):
            if yi:
                for j in range(len(v)):
                    v[j] = (v[j] + yi * rr[j]) % d
        if any(v):
            center_vecs.append(v)
    local_a = []
    if center_vecs:
        min_center, _ = zl.minimal_generators(center_vecs, d)
        for u_vec in min_center:
            half = len(a_sorted)
            full = [0] * n
            fullz = [0] * n
            for i, q in enumerate(a_sorted):
                full[q] = u_vec[i]
                fullz[q] = u_vec[half + i]
            target = full + fullz
            coeffs = zl.solve(rows, target, d)
            if coeffs is None:
                raise NotCleanable(
                    "a nontrivial logical operator is supported inside the region"
                )
            local_a.append(evaluate_product(gens, coeffs, d, n))

    # B-local generators from the kernel of the restriction map on the lifts
    lift_restr_rows = [list(t.restrict(a_sorted).symplectic()) for t in lifts]
    b_ops = []
    for kappa in zl.left_kernel(lift_restr_rows, d):
        b = evaluate_product(lifts, kappa, d, n)
        if not b.is_identity(up_to_phase=True):
            b_ops.append(b)
    local_b = []
    if b_ops:
        b_rows = [list(b.symplectic()) for b in b_ops]
        min_b, coeff_b = zl.minimal_generators(b_rows, d)
        for c in coeff_b:
            local_b.append(evaluate_product(b_ops, c, d, n))

    canon = CanonicalGenSet(
        tuple(local_a), tuple(local_b), pairs, A, B, tuple(sigmas)
    )
    return canon


# -- code files ---------------------------------------------------------------

_HEADER_RE = re.compile(r"^\s*dim=(\d+)\s+n=(\d+)(?:\s+k=(\d+))?(?:\s+dist=(\d+))?\s*$")


def parse_code(text: str) -> StabilizerGroup:
    lines = [ln.rstrip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty code definition")
    m = _HEADER_RE.match(lines[0])
    if not m:
        raise ValueError(f"bad code header: {lines[0]!r}")
    dim, n = int(m.group(1)), int(m.group(2))
    meta = None
    if m.group(3) is not None and m.group(4) is not None:
        meta = CodeMeta(k=int(m.group(3)), dist=int(m.group(4)))
    gens, lx, lz = [], [], []
    for ln in lines[1:]:
        stripped = ln.strip()
        if stripped.startswith("LX "):
            lx.append(parse_pauli(stripped[3:], dim, n))
        elif stripped.startswith("LZ "):
            lz.append(parse_pauli(stripped[3:], dim, n))
        else:
            gens.append(parse_pauli(stripped, dim, n))
    return StabilizerGroup(dim, n, tuple(gens), meta, tuple(lx), tuple(lz))


def format_code(group: StabilizerGroup) -> str:
    head = f"dim={group.dim} n={group.n}"
    if group.meta is not None:
        head += f" k={group.meta.k} dist={group.meta.dist}"
    lines = [head]
    lines += [g.to_text() for g in group.gens]
    lines += [f"LX {g.to_text()}" for g in group.logical_x]
    lines += [f"LZ {g.to_text()}" for g in group.logical_z]
    return "\n".join(lines) + "\n"


def load_code(path) -> StabilizerGroup:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_code(fh.read())


def save_code(group: StabilizerGroup, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_code(group))
