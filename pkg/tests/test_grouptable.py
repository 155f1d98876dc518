import pytest

from discred.errors import ValidationError
from discred.grouptable import (cyclic, direct_product, find_isomorphism,
                                from_generators, hom_check, is_normal,
                                is_subgroup, quotient, semidirect_product,
                                subgroup_closure, validate_table)


def s3():
    return from_generators(3, [(1, 0, 2), (1, 2, 0)])


class TestValidateTable:
    def test_identity_found(self):
        g = validate_table([[1, 0], [0, 1]])
        assert g.identity == 1
        assert g.order == 2

    def test_no_identity(self):
        with pytest.raises(ValidationError, match="identity"):
            validate_table([[1, 0], [1, 0]])

    def test_non_associative(self):
        # a quasigroup table without associativity
        with pytest.raises(ValidationError, match="associativity"):
            validate_table([[0, 1, 2, 3, 4],
                            [1, 0, 3, 4, 2],
                            [2, 4, 0, 1, 3],
                            [3, 2, 4, 0, 1],
                            [4, 3, 1, 2, 0]])

    def test_entry_range(self):
        with pytest.raises(ValidationError, match="range"):
            validate_table([[0, 1], [1, 5]])


class TestGenerators:
    def test_s3(self):
        g = s3()
        assert g.order == 6
        assert not g.is_abelian()
        assert sorted(g.element_order(x) for x in g.elements()) == \
            [1, 2, 2, 2, 3, 3]

    def test_identity_is_zero(self):
        assert s3().identity == 0

    def test_words_reconstruct(self):
        g = s3()
        gen_elem = {w[0]: i for i, w in enumerate(g.generator_words)
                    if len(w) == 1}
        for i, word in enumerate(g.generator_words):
            x = g.identity
            for gi in word:
                x = g.mul(x, gen_elem[gi])
            assert x == i

    def test_cyclic(self):
        c = cyclic(6)
        assert c.order == 6
        assert c.element_order(1) == 6


class TestSubgroupsQuotients:
    def test_closure(self):
        g = s3()
        three = next(x for x in g.elements() if g.element_order(x) == 3)
        sub = subgroup_closure(g, [three])
        assert len(sub) == 3
        assert is_subgroup(g, sub) and is_normal(g, sub)

    def test_non_normal(self):
        g = s3()
        two = next(x for x in g.elements() if g.element_order(x) == 2)
        sub = subgroup_closure(g, [two])
        assert is_subgroup(g, sub) and not is_normal(g, sub)

    def test_quotient(self):
        g = s3()
        three = next(x for x in g.elements() if g.element_order(x) == 3)
        q, coset_of = quotient(g, subgroup_closure(g, [three]))
        assert q.order == 2
        assert hom_check(coset_of, g, q)

    def test_quotient_rejects_non_normal(self):
        g = s3()
        two = next(x for x in g.elements() if g.element_order(x) == 2)
        with pytest.raises(ValidationError):
            quotient(g, subgroup_closure(g, [two]))


class TestProducts:
    def test_direct(self):
        k4 = direct_product(cyclic(2), cyclic(2))
        assert k4.order == 4 and k4.is_abelian()
        assert all(k4.element_order(x) <= 2 for x in k4.elements())

    def test_semidirect_s3(self):
        c3, c2 = cyclic(3), cyclic(2)
        inv = (0, 2, 1)  # inversion on Z/3
        sd = semidirect_product(c3, c2, (tuple(range(3)), inv))
        assert find_isomorphism(sd, s3()) is not None

    def test_semidirect_rejects_bad_action(self):
        c3, c2 = cyclic(3), cyclic(2)
        with pytest.raises(ValidationError):
            semidirect_product(c3, c2, (tuple(range(3)), (1, 2, 0)))


class TestIsomorphism:
    def test_positive(self):
        f = find_isomorphism(cyclic(4), cyclic(4))
        assert f is not None
        assert hom_check(f, cyclic(4), cyclic(4))

    def test_negative_same_order(self):
        assert find_isomorphism(cyclic(4),
                                direct_product(cyclic(2), cyclic(2))) is None
        assert find_isomorphism(cyclic(6), s3()) is None

    def test_semidirect_vs_direct(self):
        c3, c2 = cyclic(3), cyclic(2)
        triv = semidirect_product(c3, c2, (tuple(range(3)), tuple(range(3))))
        assert find_isomorphism(triv, cyclic(6)) is not None
