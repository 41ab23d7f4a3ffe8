import pytest

from dlperiods.cyclotomic import Cyclotomic
from dlperiods.errors import UnsupportedError
from dlperiods.groups import GroupSpec, group
from dlperiods.tori import (
    TorusClass,
    characters,
    class_from_label,
    instantiate,
    restrict_character,
    torus_classes,
)


def T(family, n, q, parts):
    return instantiate(TorusClass(family, n, tuple(parts)), GroupSpec(family, n, q))


class TestClasses:
    def test_gl2_classes(self):
        assert {c.parts for c in torus_classes("GL", 2)} == {(1, 1), (2,)}

    def test_u2_orders(self):
        for q in (2, 3):
            split = TorusClass("U", 2, (1, 1))
            nonsplit = TorusClass("U", 2, (2,))
            assert split.cyclic_orders(q) == (q + 1, q + 1)
            assert nonsplit.cyclic_orders(q) == (q * q - 1,)

    def test_u4_paper_torus(self):
        cls = TorusClass("U", 4, (3, 1))
        assert cls.cyclic_orders(2) == (9, 3)  # C_{q^3+1} x C_{q+1} at q = 2

    def test_sigma(self):
        assert TorusClass("GL", 3, (2, 1)).sigma() == 2
        assert TorusClass("U", 3, (2, 1)).sigma() == 1
        assert TorusClass("U", 4, (3, 1)).sigma() == 0

    def test_refine(self):
        assert TorusClass("GL", 2, (2,)).refine(2).parts == (1, 1)
        assert TorusClass("GL", 4, (4,)).refine(2).parts == (2, 2)
        assert TorusClass("GL", 3, (3,)).refine(2).parts == (3,)
        assert TorusClass("U", 4, (3, 1)).refine(3).parts == (1, 1, 1, 1)

    def test_labels(self):
        assert class_from_label("GL", 2, "split").parts == (1, 1)
        assert class_from_label("GL", 2, "nonsplit").parts == (2,)
        assert class_from_label("U", 4, "3+1").parts == (3, 1)


class TestInstances:
    @pytest.mark.parametrize(
        "family,n,q,parts",
        [
            ("GL", 2, 2, (1, 1)),
            ("GL", 2, 2, (2,)),
            ("GL", 2, 3, (2,)),
            ("GL", 3, 2, (3,)),
            ("GL", 3, 2, (2, 1)),
            ("U", 2, 2, (1, 1)),
            ("U", 2, 2, (2,)),
            ("U", 2, 3, (1, 1)),
            ("U", 2, 3, (2,)),
            ("U", 3, 2, (3,)),
            ("U", 3, 2, (2, 1)),
            ("U", 3, 2, (1, 1, 1)),
            ("U", 3, 3, (2, 1)),
            ("U", 4, 2, (3, 1)),
            ("U", 4, 2, (1, 1, 1, 1)),
        ],
    )
    def test_instance_counts_and_rationality(self, family, n, q, parts):
        t = T(family, n, q, parts)
        expected = 1
        for m in t.orders:
            expected *= m
        assert len(t.elements) == expected
        G = t.group
        for elt in t.elements[: min(len(t.elements), 64)]:
            assert G.is_rational(elt)
        # abelian spot check
        a, b = t.elements[1 % len(t.elements)], t.elements[-1]
        assert G.mul(a, b) == G.mul(b, a)

    def test_gl2_split_is_diagonal(self):
        t = T("GL", 2, 3, (1, 1))
        for elt in t.elements:
            assert elt[0][1] == 0 and elt[1][0] == 0

    def test_membership_in_group_enumeration(self):
        t = T("U", 2, 3, (2,))
        G = t.group
        idx = G.index()
        for elt in t.elements:
            assert G.key(elt) in idx

    def test_coordinates_are_group_iso(self):
        # exhaustive multiplication table check on small instances
        for t in (T("GL", 2, 3, (2,)), T("U", 2, 2, (1, 1))):
            G = t.group
            for a in t.elements:
                for b in t.elements:
                    ca, cb = t.coords[G.key(a)], t.coords[G.key(b)]
                    expect = tuple((x + y) % m for x, y, m in zip(ca, cb, t.orders))
                    assert t.coords[G.key(G.mul(a, b))] == expect

    def test_central_normalization(self):
        # the canonical central C_{q+1} generator is the documented power of each block generator
        t = T("U", 4, 2, (3, 1))
        G = t.group
        q = 2
        x0 = G.ops.elem_of_order(q + 1)
        scalar = tuple(tuple(x0 if i == j else 0 for j in range(4)) for i in range(4))
        k4 = (q**3 + 1) // (q + 1)
        assert G.key(scalar) in t.keys
        assert t.coords[G.key(scalar)] == (k4 % 9, 1)


class TestNormMap:
    def test_nu_one_identity(self):
        t = T("GL", 2, 3, (2,))
        lvl = t.level(1)
        for elt in t.elements[:5]:
            assert lvl.norm(elt) == elt

    def test_gl1_norm_c8_onto_c2(self):
        t = T("GL", 1, 3, (1,))
        lvl = t.level(2)
        assert len(lvl.elements) == 8
        images = {t.group.key(lvl.norm(x)) for x in lvl.elements}
        assert images == {t.group.key(e) for e in t.elements}  # surjective (Lang)
        from collections import Counter

        fibers = Counter(t.group.key(lvl.norm(x)) for x in lvl.elements)
        assert all(v == 4 for v in fibers.values())

    def test_nonsplit_gl2_refines(self):
        t = T("GL", 2, 2, (2,))
        lvl = t.level(2)
        assert len(lvl.elements) == 9  # (q^2-1)^2 at q=2 after refinement
        for x in lvl.elements[:9]:
            assert t.group.key(lvl.norm(x)) in t.keys

    def test_norm_multiplicative(self):
        t = T("GL", 2, 2, (2,))
        lvl = t.level(3)
        G = lvl.group
        els = lvl.elements
        for a in els[:6]:
            for b in els[:6]:
                lhs = lvl.norm(G.mul(a, b))
                rhs = t.group.mul(lvl.norm(a), lvl.norm(b))
                assert lhs == rhs

    def test_u_torus_level(self):
        t = T("U", 2, 2, (1, 1))
        lvl = t.level(3)
        assert len(lvl.elements) == (2**3 + 1) ** 2
        images = {t.group.key(lvl.norm(x)) for x in lvl.elements}
        assert len(images) == 9

    def test_u_even_level_rejected(self):
        t = T("U", 2, 2, (1, 1))
        with pytest.raises(UnsupportedError):
            t.level(2)


class TestCharacters:
    def test_trivial_character(self):
        t = T("U", 2, 2, (1, 1))
        chi = characters(t)[0]
        assert chi.is_trivial()
        for elt in t.elements:
            assert chi.evaluate(elt) == 1

    def test_u1_f2_three_characters(self):
        t = T("U", 1, 2, (1,))
        chis = characters(t)
        assert len(chis) == 3
        from dlperiods.cyclotomic import cyclo

        g = t.element((1,))
        vals = sorted(c.root_exponent((1,)) for c in chis)
        assert vals == [0, 1, 2]
        assert chis[1].evaluate(g) == cyclo(3, 1)

    def test_character_sum_vanishes(self):
        t = T("U", 1, 3, (1,))
        chi = characters(t)[1]
        total = Cyclotomic.zero(4)
        for elt in t.elements:
            total = total + chi.evaluate(elt)
        assert total == 0

    @pytest.mark.parametrize(
        "family,n,q,parts",
        [("GL", 2, 3, (1, 1)), ("GL", 2, 3, (2,)), ("U", 2, 2, (1, 1)), ("U", 2, 2, (2,)), ("U", 2, 3, (2,)), ("U", 4, 2, (3, 1))],
    )
    def test_orthogonality(self, family, n, q, parts):
        t = T(family, n, q, parts)
        if len(t.elements) > 200:
            pytest.skip("orthogonality checked for |T^F| <= 200")
        chis = characters(t)
        for c1 in chis:
            for c2 in chis:
                total = Cyclotomic.from_rational(0)
                for elt in t.elements:
                    total = total + c1.evaluate(elt) * c2.evaluate(elt).conj()
                expect = len(t.elements) if c1.exponents == c2.exponents else 0
                assert total == expect

    def test_norm_composed_character(self):
        t = T("GL", 1, 2, (1,))  # trivial group; use q=3 for substance
        t = T("GL", 1, 3, (1,))
        lvl = t.level(2)
        chi = characters(t)[1]
        # chi(N(ab)) = chi(N(a)) chi(N(b))
        G = lvl.group
        for a in lvl.elements:
            for b in lvl.elements:
                lhs = chi.evaluate(lvl.norm(G.mul(a, b)))
                rhs = chi.evaluate(lvl.norm(a)) * chi.evaluate(lvl.norm(b))
                assert lhs == rhs


class TestRestriction:
    def test_restrict_trivial(self):
        t = T("U", 4, 2, (3, 1))
        chi = characters(t)[0]
        sub = t.subgroup([(3, 0)])  # order-3 subgroup of C_9
        r = restrict_character(chi, sub)
        assert r.is_trivial()

    def test_theta4_restriction_dichotomy(self):
        # C_{q^3+1} restricted to its order q+1 subgroup: trivial iff (q^2-q+1) | e
        q = 2
        t = T("U", 4, 2, (3, 1))
        k4 = (q**3 + 1) // (q + 1)
        sub = t.subgroup([(k4, 0)])
        assert len(sub) == q + 1
        from dlperiods.tori import TorusCharacter

        for e in range(9):
            chi = TorusCharacter(t, (e, 0))
            r = restrict_character(chi, sub)
            assert r.is_trivial() == (e % k4 == 0)

    def test_restrict_to_full_group(self):
        t = T("GL", 2, 3, (2,))
        chi = characters(t)[3]
        r = restrict_character(chi, list(t.elements))
        for elt in t.elements:
            assert r.evaluate(elt) == chi.evaluate(elt)

    def test_non_subgroup_rejected(self):
        t = T("GL", 2, 3, (2,))
        chi = characters(t)[1]
        bad = [t.elements[1]]  # not closed, missing identity powers
        with pytest.raises(UnsupportedError):
            restrict_character(chi, bad)
