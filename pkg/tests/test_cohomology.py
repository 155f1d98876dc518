import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from discred.abgroup import (AbHom, DiagonalizableGroup, FGAbelianGroup,
                             torsion_at)
from discred.cohomology import (Cochain, cochain_sum, cohomology_group,
                                differential, eckmann_check, gamma_module,
                                is_cocycle, push_cochain, stabilized_h2,
                                trivial_module)
from discred.errors import ValidationError
from discred.exactlin import IntMatrix
from discred.grouptable import cyclic, direct_product, from_generators


def Z(*f):
    return FGAbelianGroup(0, f)


def inversion_module(gamma2, n):
    a = Z(n)
    inv = AbHom(a, a, IntMatrix.from_rows([[n - 1]]))
    return gamma_module(gamma2, a, (AbHom.identity(a), inv))


class TestGammaModule:
    def test_action_must_be_homomorphism(self):
        c3 = cyclic(3)
        a = Z(4)
        inv = AbHom(a, a, IntMatrix.from_rows([[3]]))
        with pytest.raises(ValidationError):
            gamma_module(c3, a, (AbHom.identity(a), inv, inv))

    def test_identity_must_act_trivially(self):
        c2 = cyclic(2)
        a = Z(4)
        inv = AbHom(a, a, IntMatrix.from_rows([[3]]))
        with pytest.raises(ValidationError):
            gamma_module(c2, a, (inv, inv))


class TestDifferential:
    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.integers(0, 3), min_size=2, max_size=2))
    def test_dd_zero_degree_one(self, vals):
        M = inversion_module(cyclic(2), 4)
        c = Cochain.from_map(1, {(g,): (vals[g],) for g in range(2)})
        dd = differential(M, differential(M, c))
        assert all(v == (0,) for _, v in dd.values)

    @settings(max_examples=20, deadline=None)
    @given(st.lists(st.integers(0, 5), min_size=9, max_size=9))
    def test_dd_zero_degree_zero_and_one_c3(self, vals):
        M = trivial_module(cyclic(3), Z(6))
        c = Cochain.from_map(1, {(g,): (vals[g],) for g in range(3)})
        dd = differential(M, differential(M, c))
        assert all(v == (0,) for _, v in dd.values)

    def test_coboundaries_are_cocycles(self):
        M = inversion_module(cyclic(2), 8)
        b = Cochain.from_map(1, {(0,): (0,), (1,): (5,)})
        assert is_cocycle(M, differential(M, b))


class TestKnownGroups:
    def test_h0_invariants(self):
        M = inversion_module(cyclic(2), 8)
        H = cohomology_group(M, 0)
        # fixed points of inversion on Z/8: {0, 4}
        assert H.group.invariant_factors == (2,)

    def test_h1_h2_cyclic(self):
        # H^odd(Z/n, Z/n triv) = H^even = Z/n
        for n in (2, 3, 4):
            M = trivial_module(cyclic(n), Z(n))
            assert cohomology_group(M, 1).group.invariant_factors == (n,)
            assert cohomology_group(M, 2).group.invariant_factors == (n,)

    def test_coprime_vanishing(self):
        M = trivial_module(cyclic(2), Z(3))
        for p in (1, 2):
            assert cohomology_group(M, p).group.invariant_factors == ()

    def test_klein_h2(self):
        k4 = direct_product(cyclic(2), cyclic(2))
        M = trivial_module(k4, Z(2))
        assert cohomology_group(M, 2).group.invariant_factors == (2, 2, 2)

    def test_s3_h2(self):
        s3 = from_generators(3, [(1, 0, 2), (1, 2, 0)])
        M = trivial_module(s3, Z(4))
        assert cohomology_group(M, 2).group.invariant_factors == (2,)

    def test_inversion_h2(self):
        M = inversion_module(cyclic(2), 4)
        assert cohomology_group(M, 2).group.invariant_factors == (2,)

    def test_trivial_gamma(self):
        M = trivial_module(cyclic(1), Z(6))
        assert cohomology_group(M, 1).group.invariant_factors == ()
        assert cohomology_group(M, 2).group.invariant_factors == ()


class TestGenerators:
    def test_generators_are_normalized_cocycles(self):
        for M in (trivial_module(cyclic(4), Z(4)),
                  inversion_module(cyclic(2), 8),
                  trivial_module(direct_product(cyclic(2), cyclic(2)), Z(2))):
            H = cohomology_group(M, 2)
            for gen in H.generators:
                assert is_cocycle(M, gen)
                assert gen.is_normalized()

    def test_coordinates_round_trip(self):
        M = trivial_module(cyclic(4), Z(4))
        H = cohomology_group(M, 2)
        for cls in H.classes():
            assert H.coordinates_of(cls.representative) == cls.coordinates

    def test_coordinates_reject_non_cocycle(self):
        M = trivial_module(cyclic(3), Z(3))
        vals = {(a, b): (0,) for a in range(3) for b in range(3)}
        vals[(1, 1)] = (1,)
        with pytest.raises(ValidationError):
            cohomology_group(M, 2).coordinates_of(Cochain.from_map(2, vals))

    def test_witness_round_trip(self):
        M = inversion_module(cyclic(2), 8)
        H = cohomology_group(M, 2)
        b = Cochain.from_map(1, {(0,): (0,), (1,): (3,)})
        db = differential(M, b)
        w = H.coboundary_witness(db)
        assert w is not None
        assert differential(M, w).as_dict() == \
            {k: M.coeff.reduce(v) for k, v in db.as_dict().items()}

    def test_witness_none_for_nontrivial_class(self):
        M = trivial_module(cyclic(2), Z(2))
        H = cohomology_group(M, 2)
        nontriv = H.class_representative((1,))
        assert H.coboundary_witness(nontriv) is None
        assert not H.is_coboundary(nontriv)


class TestEckmann:
    def test_degree_zero_rejected(self):
        with pytest.raises(ValidationError):
            eckmann_check(trivial_module(cyclic(2), Z(8)), 0)

    @pytest.mark.parametrize("p", [1, 2])
    def test_various_modules(self, p):
        mods = [trivial_module(cyclic(2), Z(8)),
                inversion_module(cyclic(2), 4),
                trivial_module(cyclic(3), Z(6)),
                trivial_module(direct_product(cyclic(2), cyclic(2)), Z(4))]
        for M in mods:
            assert eckmann_check(M, p)


class TestTower:
    def _cstar(self):
        return DiagonalizableGroup(1, Z())

    def test_trivial_action_stabilizes_to_zero(self):
        c2 = cyclic(2)
        Zg = self._cstar()
        res = stabilized_h2(c2, Zg,
                            lambda m: trivial_module(c2, torsion_at(Zg, m)))
        assert res.group.invariant_factors == ()
        assert res.tower_orders[0] == 2  # each level alone is Z/2

    def test_inversion_stabilizes_to_z2(self):
        c2 = cyclic(2)
        Zg = self._cstar()

        def module_at(m):
            a = torsion_at(Zg, m)
            inv = AbHom(a, a, IntMatrix.from_rows([[m - 1]]))
            return gamma_module(c2, a, (AbHom.identity(a), inv))

        res = stabilized_h2(c2, Zg, module_at)
        assert res.group.invariant_factors == (2,)
        (rep,) = res.representatives
        assert is_cocycle(res.module, rep)
        assert res.cohomology.coordinates_of(rep) != \
            (0,) * len(res.cohomology.group.invariant_factors)

    def test_finite_center_tower_is_constant(self):
        c2 = cyclic(2)
        Zg = DiagonalizableGroup(0, Z(2))
        res = stabilized_h2(c2, Zg,
                            lambda m: trivial_module(c2, torsion_at(Zg, m)))
        assert res.group.invariant_factors == (2,)
        assert set(res.tower_orders) == {2}


class TestHelpers:
    def test_cochain_sum(self):
        a = Z(4)
        c1 = Cochain.from_map(1, {(0,): (1,), (1,): (2,)})
        c2 = Cochain.from_map(1, {(0,): (3,), (1,): (3,)})
        s = cochain_sum(a, [(1, c1), (2, c2)])
        assert s.as_dict() == {(0,): (3,), (1,): (0,)}

    def test_push_cochain(self):
        z2, z4 = Z(2), Z(4)
        inc = AbHom(z2, z4, IntMatrix.from_rows([[2]]))
        c = Cochain.from_map(1, {(0,): (0,), (1,): (1,)})
        assert push_cochain(inc, c).as_dict() == {(0,): (0,), (1,): (2,)}
