import pytest

from discred import standard
from discred.abgroup import AbHom, torsion_at
from discred.autbrd import (BRDAutomorphism, ad_from_generator_images,
                            brd_automorphism, diagram_automorphisms,
                            induced_center_action, is_brd_automorphism,
                            trivial_ad, validate_ad)
from discred.errors import ValidationError
from discred.exactlin import IntMatrix
from discred.grouptable import cyclic, from_generators
from discred.rootdatum import center_data


class TestIsBrdAutomorphism:
    def test_identity(self):
        based = standard.sl3()
        chk = is_brd_automorphism(based, IntMatrix.identity(2))
        assert chk.ok and chk.permutation == (0, 1)

    def test_a2_flip(self):
        based = standard.sl3()
        T = IntMatrix.from_rows([[0, 1], [1, 0]])
        chk = is_brd_automorphism(based, T)
        assert chk.ok and chk.permutation == (1, 0)

    def test_minus_identity_rejected(self):
        based = standard.sl3()
        T = IntMatrix.from_rows([[-1, 0], [0, -1]])
        chk = is_brd_automorphism(based, T)
        assert not chk.ok and "simple root" in chk.witness

    def test_non_unimodular_rejected(self):
        based = standard.sl2()
        chk = is_brd_automorphism(based, IntMatrix.from_rows([[2]]))
        assert not chk.ok and "unimodular" in chk.witness

    def test_raising_constructor(self):
        based = standard.sl2()
        with pytest.raises(ValidationError):
            brd_automorphism(based, IntMatrix.from_rows([[-1]]))


class TestDiagramAutomorphisms:
    @pytest.mark.parametrize("builder,count", [
        (standard.sl2, 1), (standard.pgl2, 1), (standard.sl3, 2),
        (standard.pgl3, 2), (standard.a1xa1_adjoint, 2), (standard.b2, 1),
        (standard.g2, 1), (standard.d4_adjoint, 6),
    ])
    def test_counts(self, builder, count):
        res = diagram_automorphisms(builder())
        assert len(res.automorphisms) == count
        assert res.non_lifting == ()

    def test_group_closure(self):
        autos = diagram_automorphisms(standard.d4_adjoint()).automorphisms
        perms = {a.simple_root_permutation for a in autos}
        for a in autos:
            for b in autos:
                assert a.compose(b).simple_root_permutation in perms

    def test_torus_rejected(self):
        with pytest.raises(ValidationError, match="semisimple"):
            diagram_automorphisms(standard.gl2())


class TestInducedCenterAction:
    def test_gl2_swap_inverts(self):
        cd = center_data(standard.gl2().datum)
        T = brd_automorphism(standard.gl2(),
                             IntMatrix.from_rows([[0, -1], [-1, 0]]))
        for n in (2, 4, 8):
            act = induced_center_action(cd, T, n)
            x = (1,)
            assert act.apply(x) == ((n - 1) % n,)

    def test_identity_acts_trivially(self):
        cd = center_data(standard.sl3().datum)
        ident = BRDAutomorphism.identity(standard.sl3())
        act = induced_center_action(cd, ident, 3)
        assert act.equal_as_map(AbHom.identity(torsion_at(cd.group, 3)))

    def test_sl3_flip_inverts(self):
        cd = center_data(standard.sl3().datum)
        T = brd_automorphism(standard.sl3(),
                             IntMatrix.from_rows([[0, 1], [1, 0]]))
        act = induced_center_action(cd, T, 3)
        assert act.apply((1,)) == (2,)

    def test_functorial(self):
        cd = center_data(standard.gl2().datum)
        T = brd_automorphism(standard.gl2(),
                             IntMatrix.from_rows([[0, -1], [-1, 0]]))
        act = induced_center_action(cd, T, 8)
        assert act.compose(act).equal_as_map(
            AbHom.identity(torsion_at(cd.group, 8)))


class TestAdHom:
    def test_trivial_valid(self):
        based = standard.sl2()
        ad = trivial_ad(based, cyclic(3))
        assert validate_ad(based, ad) is None

    def test_flip_under_z2(self):
        based = standard.sl3()
        ad = ad_from_generator_images(based, cyclic(2), [[[0, 1], [1, 0]]])
        assert validate_ad(based, ad) is None

    def test_flip_under_z3_rejected(self):
        based = standard.sl3()
        ad = ad_from_generator_images(based, cyclic(3), [[[0, 1], [1, 0]]])
        msg = validate_ad(based, ad)
        assert msg is not None and "homomorphism" in msg

    def test_triality(self):
        based = standard.d4_adjoint()
        s3 = from_generators(3, [(1, 0, 2), (1, 2, 0)])
        swap02 = [[0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1]]
        cyc = [[0, 0, 0, 1], [0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0]]
        ad = ad_from_generator_images(based, s3, [swap02, cyc])
        assert validate_ad(based, ad) is None
        perms = {a.simple_root_permutation for a in ad.images}
        assert len(perms) == 6
