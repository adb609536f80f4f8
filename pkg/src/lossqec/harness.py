"""Verification harness: randomized audits, brute-force oracles, exhaustive
fault-tolerance checks and the Monte Carlo experiment runner."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from . import zdlinalg as zl
from .errors import NotAStabilizerGroup, NotCleanable, OracleBudgetExceeded
from .pauli import PauliOp, commutator_exponent, identity, order_d_phase
from .stab import (
    CanonicalGenSet,
    StabilizerGroup,
    canonical_gen_set,
    evaluate_product,
    group_contains,
    is_correctable_erasure,
    local_subgroup,
    reduce_group,
    same_group,
)

__all__ = [
    "random_stabilizer_group",
    "check_canonical",
    "canon_audit",
]


def random_stabilizer_group(
    rng: random.Random, dim: int, n: int, num_gens: int | None = None
) -> StabilizerGroup:
    """Rejection-sample a valid stabilizer group over Z_dim on n qudits."""
    target = num_gens if num_gens is not None else rng.randint(1, n)
    gens: list[PauliOp] = []
    tries = 0
    while len(gens) < target and tries < 2000:
        tries += 1
        x = tuple(rng.randrange(dim) for _ in range(n))
        z = tuple(rng.randrange(dim) for _ in range(n))
        op = PauliOp(dim, x, z, order_d_phase(x, z, dim))
        if op.is_identity(up_to_phase=True):
            continue
        if any(commutator_exponent(g, op) != 0 for g in gens):
            continue
        try:
            reduce_group(StabilizerGroup(dim, n, tuple(gens + [op])))
        except NotAStabilizerGroup:
            continue
        gens.append(op)
    return StabilizerGroup(dim, n, tuple(gens))


def check_canonical(group: StabilizerGroup, canon: CanonicalGenSet) -> list[str]:
    """All violations of the canonical-form invariants (empty list = sound)."""
    problems = []
    d = group.dim
    a_sorted = sorted(canon.part_a)
    b_sorted = sorted(canon.part_b)
    for op in canon.local_a:
        if not op.support() <= canon.part_a:
            problems.append(f"local-A generator {op} escapes A")
    for op in canon.local_b:
        if not op.support() <= canon.part_b:
            problems.append(f"local-B generator {op} escapes B")
    members = list(canon.local_a) + [x for p in canon.pairs for x in p] + list(
        canon.local_b
    )
    for op in members:
        if not group_contains(group, op):
            problems.append(f"canonical generator {op} is not a group member")
    for i, (g, h) in enumerate(canon.pairs):
        if not (g.support() & canon.part_a and g.support() & canon.part_b):
            problems.append(f"pair {i} first member not nontrivial on both parts")
        if not (h.support() & canon.part_a and h.support() & canon.part_b):
            problems.append(f"pair {i} second member not nontrivial on both parts")
        ca = commutator_exponent(g.restrict(a_sorted), h.restrict(a_sorted))
        cb = commutator_exponent(g.restrict(b_sorted), h.restrict(b_sorted))
        if ca == 0:
            problems.append(f"pair {i} restrictions commute on A")
        if cb == 0:
            problems.append(f"pair {i} restrictions commute on B")
        if (ca + cb) % d != 0:
            problems.append(f"pair {i} members do not commute as full operators")
    # restrictions of everything else must commute pairwise on each side
    tagged = [("a", op) for op in canon.local_a]
    for idx, (g, h) in enumerate(canon.pairs):
        tagged.append((f"p{idx}g", g))
        tagged.append((f"p{idx}h", h))
    tagged += [("b", op) for op in canon.local_b]
    for (t1, o1), (t2, o2) in itertools.combinations(tagged, 2):
        if t1.startswith("p") and t2.startswith("p") and t1[:-1] == t2[:-1]:
            continue  # the matched pair itself
        if a_sorted:
            if commutator_exponent(o1.restrict(a_sorted), o2.restrict(a_sorted)):
                problems.append(f"{t1} and {t2} restrictions anticommute on A")
        if b_sorted:
            if commutator_exponent(o1.restrict(b_sorted), o2.restrict(b_sorted)):
                problems.append(f"{t1} and {t2} restrictions anticommute on B")
    # the union regenerates the group (modulo phases)
    regen = StabilizerGroup(d, group.n, tuple(members))
    if not same_group(regen, group):
        problems.append("canonical set does not regenerate the group")
    # pair count equals half the minimal generator count of the restriction
    # commutator module, computed independently through the Smith form
    gens = list(group.gens)
    if a_sorted and b_sorted and gens:
        restr = [g.restrict(a_sorted) for g in gens]
        C = [
            [commutator_exponent(restr[i], restr[j]) for j in range(len(gens))]
            for i in range(len(gens))
        ]
        expected_pairs = zl.theta_column_module(C, d)
        if 2 * len(canon.pairs) != expected_pairs:
            problems.append(
                f"pair count {len(canon.pairs)} != theta/2 = {expected_pairs / 2}"
            )
    return problems


def _enumerable(group: StabilizerGroup) -> bool:
    return group.dim ** len(group.gens) <= 4096


def _element_set(group: StabilizerGroup) -> set:
    out = set()
    for coeffs in itertools.product(range(group.dim), repeat=len(group.gens)):
        out.add(
            evaluate_product(group.gens, coeffs, group.dim, group.n).symplectic()
        )
    return out


@dataclass
class CanonAuditReport:
    groups: int = 0
    partitions: int = 0
    skipped_uncleanable: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def canon_audit(
    dim: int,
    max_n: int,
    groups: int = 50,
    seed: int = 2024,
    enumerate_groups: bool = False,
) -> CanonAuditReport:
    """Randomized soundness audit of the canonical-form construction.

    Every sampled group is canonicalized against every bipartition; the
    invariants are checked each time, and regions declared uncleanable must
    agree with the independent correctable-erasure test.  With
    ``enumerate_groups`` set, group equality is additionally confirmed by full
    element enumeration (small groups only).
    """
    rng = random.Random(seed)
    report = CanonAuditReport()
    while report.groups < groups:
        n = rng.randint(2, max_n)
        g = random_stabilizer_group(rng, dim, n)
        if not g.gens:
            continue
        g = reduce_group(g)
        report.groups += 1
        for size in range(n + 1):
            for region in itertools.combinations(range(n), size):
                report.partitions += 1
                try:
                    canon = canonical_gen_set(g, set(region))
                except NotCleanable:
                    # the raise must be justified by an actual logical
                    # operator inside the region
                    report.skipped_uncleanable += 1
                    if is_correctable_erasure(g, set(region)):
                        report.violations.append(
                            f"dim={dim} gens={[str(x) for x in g.gens]} A={region}: "
                            "NotCleanable raised for a cleanable region"
                        )
                    continue
                for problem in check_canonical(g, canon):
                    report.violations.append(
                        f"dim={dim} gens={[str(x) for x in g.gens]} A={region}: {problem}"
                    )
                if enumerate_groups and _enumerable(g):
                    regen = StabilizerGroup(
                        g.dim, g.n, canon.ordered()
                    )
                    if _element_set(regen) != _element_set(g):
                        report.violations.append(
                            f"dim={dim} A={region}: element sets differ"
                        )
    return report
