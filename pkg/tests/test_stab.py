"""Stabilizer-group machinery: reduction, local subgroups, syndromes,
reduced errors, erasure correctability, code-file round trips."""

import itertools
import random

import pytest

from lossqec import stab
from lossqec.errors import BasisMismatch, InfeasibleSyndrome, NotAStabilizerGroup
from lossqec.pauli import PauliOp, from_letters, identity, parse_pauli
from lossqec.stab import (
    StabilizerGroup,
    format_code,
    group_contains,
    is_correctable_erasure,
    local_subgroup,
    parse_code,
    reduce_group,
    reduced_error,
    same_group,
    syndrome,
)


def enumerate_elements(group):
    """All group elements as phase-free symplectic tuples (small groups only)."""
    d = group.dim
    out = set()
    for coeffs in itertools.product(range(d), repeat=len(group.gens)):
        op = stab.evaluate_product(group.gens, coeffs, d, group.n)
        out.add(op.symplectic())
    return out


def grp(dim, n, *texts, **kw):
    return StabilizerGroup(dim, n, tuple(parse_pauli(t, dim, n) for t in texts), **kw)


class TestReduce:
    def test_duplicate_removal(self):
        g = grp(2, 2, "ZZ", "ZZ")
        assert len(reduce_group(g).gens) == 1
        assert same_group(reduce_group(g), g)

    def test_five_qubit_already_independent(self, five_qubit):
        r = reduce_group(five_qubit)
        assert len(r.gens) == 4
        assert same_group(r, five_qubit)

    def test_composite_minimal(self):
        g = grp(4, 1, "X1^2", "X1^2 Z1^2")
        r = reduce_group(g)
        assert len(r.gens) == 2
        assert same_group(r, g)

    def test_idempotent(self):
        rng = random.Random(3)
        for d in (2, 3, 4):
            g = grp(d, 2, "Z1", "Z2", "Z1 Z2")
            once = reduce_group(g)
            twice = reduce_group(once)
            assert [x.symplectic() for x in once.gens] == [
                x.symplectic() for x in twice.gens
            ]

    def test_rejects_order_violation(self):
        # XZ on a qubit squares to -I
        g = StabilizerGroup(2, 1, (PauliOp(2, (1,), (1,), 0),))
        with pytest.raises(NotAStabilizerGroup):
            reduce_group(g)

    def test_rejects_minus_identity_combination(self):
        a = from_letters("ZZ")
        b = from_letters("-ZZ")
        with pytest.raises(NotAStabilizerGroup):
            reduce_group(StabilizerGroup(2, 2, (a, b)))


class TestLocalSubgroup:
    def test_empty_region_trivial(self, five_qubit):
        assert len(local_subgroup(five_qubit, set()).gens) == 0

    def test_five_qubit_drop_first(self, five_qubit):
        sub = local_subgroup(five_qubit, {1, 2, 3, 4})
        assert len(sub.gens) == 2
        for g in sub.gens:
            assert 0 not in g.support()
        # brute-force: exactly the elements trivial on qubit 0
        full = enumerate_elements(five_qubit)
        expected = {v for v in full if v[0] == 0 and v[5] == 0}
        assert enumerate_elements(sub) == expected

    def test_steane_drop_first(self, steane):
        sub = local_subgroup(steane, set(range(1, 7)))
        assert len(sub.gens) == 4

    def test_members_are_group_elements(self, five_qubit):
        sub = local_subgroup(five_qubit, {0, 1, 2})
        for g in sub.gens:
            assert group_contains(five_qubit, g)


class TestSyndrome:
    def test_identity_error(self, five_qubit):
        rec = syndrome(five_qubit, identity(2, 5))
        assert rec.values == (0, 0, 0, 0)
        assert rec.fully_valid

    def test_x1(self, five_qubit):
        rec = syndrome(five_qubit, from_letters("XIIII"))
        assert rec.values == (0, 0, 0, 1)

    def test_generators_have_zero_syndrome(self, steane):
        for g in steane.gens:
            assert syndrome(steane, g).values == (0,) * 6

    @pytest.mark.parametrize("codename", ["five_qubit", "steane", "qutrit_513"])
    def test_homomorphism(self, codename, request):
        code = request.getfixturevalue(codename)
        rng = random.Random(42)
        d, n = code.dim, code.n
        for _ in range(1000):
            e1 = PauliOp(d, tuple(rng.randrange(d) for _ in range(n)),
                         tuple(rng.randrange(d) for _ in range(n)))
            e2 = PauliOp(d, tuple(rng.randrange(d) for _ in range(n)),
                         tuple(rng.randrange(d) for _ in range(n)))
            s1 = syndrome(code, e1).values
            s2 = syndrome(code, e2).values
            s12 = syndrome(code, e1 * e2).values
            assert s12 == tuple((a + b) % d for a, b in zip(s1, s2))


class TestReducedError:
    def test_zero_syndrome(self, five_qubit):
        assert reduced_error(five_qubit, (0, 0, 0, 0)) == identity(2, 5)

    def test_five_qubit_weight_one(self, five_qubit):
        err = from_letters("XIIII")
        rec = syndrome(five_qubit, err)
        assert reduced_error(five_qubit, rec) == err

    def test_steane_z3(self, steane):
        err = from_letters("IIZIIII")
        rec = syndrome(steane, err)
        assert reduced_error(steane, rec) == err

    def test_all_weight_one_unique_on_five_qubit(self, five_qubit):
        # perfect code: the 15 weight-1 Paulis hit 15 distinct syndromes
        seen = {}
        for q in range(5):
            for x, z in [(1, 0), (1, 1), (0, 1)]:
                err = PauliOp(2, tuple(x if i == q else 0 for i in range(5)),
                              tuple(z if i == q else 0 for i in range(5)))
                rec = syndrome(five_qubit, err)
                assert rec.values not in seen
                seen[rec.values] = err
                assert reduced_error(five_qubit, rec) == err

    def test_weight_bound(self, five_qubit, steane, qutrit_513):
        rng = random.Random(7)
        for code in (five_qubit, steane, qutrit_513):
            t = (code.meta.dist - 1) // 2
            d, n = code.dim, code.n
            for _ in range(100):
                w = rng.randint(0, t)
                supp = rng.sample(range(n), w)
                x = [0] * n
                z = [0] * n
                for q in supp:
                    xv, zv = rng.choice([(a, b) for a in range(d) for b in range(d)
                                         if a or b])
                    x[q], z[q] = xv, zv
                err = PauliOp(d, tuple(x), tuple(z))
                rec = syndrome(code, err)
                assert reduced_error(code, rec).weight() <= err.weight()

    def test_basis_mismatch(self, five_qubit, steane):
        rec = syndrome(steane, identity(2, 7))
        with pytest.raises((BasisMismatch, ValueError)):
            reduced_error(five_qubit, rec)

    def test_infeasible_for_redundant_generators(self):
        g = grp(2, 2, "ZZ", "ZZ")
        with pytest.raises(InfeasibleSyndrome):
            reduced_error(g, (0, 1))


class TestCorrectableErasure:
    def test_empty(self, five_qubit):
        assert is_correctable_erasure(five_qubit, set())

    def test_five_qubit_all_pairs(self, five_qubit):
        for pair in itertools.combinations(range(5), 2):
            assert is_correctable_erasure(five_qubit, set(pair))

    def test_whole_system_uncorrectable(self, five_qubit):
        assert not is_correctable_erasure(five_qubit, set(range(5)))

    def test_det422_logical_region(self, det422):
        # logical XXII lives on {0, 1}
        assert not is_correctable_erasure(det422, {0, 1})
        assert is_correctable_erasure(det422, {0})

    def test_sufficient_condition(self, five_qubit, steane, qutrit_513):
        # |L| <= dist - 1 is sufficient
        for code in (five_qubit, steane, qutrit_513):
            for size in range(code.meta.dist):
                for L in itertools.combinations(range(code.n), size):
                    assert is_correctable_erasure(code, set(L))


class TestCodeIO:
    @pytest.mark.parametrize(
        "name", ["five_qubit", "steane", "det422", "qutrit_513", "ghz3", "d4_ghz", "d6_pair"]
    )
    def test_roundtrip_bit_exact(self, name):
        from lossqec.codes import codes_dir

        text = (codes_dir() / f"{name}.code").read_text()
        code = parse_code(text)
        assert format_code(code) == text
        again = parse_code(format_code(code))
        assert again == code

    def test_qutrit_code_is_valid(self, qutrit_513):
        assert len(qutrit_513.gens) == 4
        reduce_group(qutrit_513)  # no phase violations
        for lx in qutrit_513.logical_x:
            for g in qutrit_513.gens:
                assert stab.commutator_exponent(g, lx) == 0

    def test_qutrit_distance_is_three(self, qutrit_513):
        # no nontrivial logical of weight <= 2
        d, n = 3, 5
        for w in (1, 2):
            for supp in itertools.combinations(range(n), w):
                sites = [(x, z) for x in range(d) for z in range(d) if x or z]
                for pat in itertools.product(sites, repeat=w):
                    xs = [0] * n
                    zs = [0] * n
                    for q, (xv, zv) in zip(supp, pat):
                        xs[q], zs[q] = xv, zv
                    op = PauliOp(d, tuple(xs), tuple(zs))
                    if all(
                        stab.commutator_exponent(g, op) == 0 for g in qutrit_513.gens
                    ):
                        assert group_contains(qutrit_513, op)
