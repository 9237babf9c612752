import itertools
import math
import random
from fractions import Fraction

import pytest

from modgeo.errors import (
    IncompatibleFieldsError,
    InvalidInputError,
    InvalidModulusError,
    NotTransverseError,
    UndecidableInputError,
)
from modgeo.exact import QuadElem, make_quad, normalize_quad, sign_of
from modgeo.mtgroups import FULL_GL2, RM_TORUS, classify_mt
from modgeo.nctorus import (
    LevelStructure,
    OrderedK0,
    PreLilac,
    count_level_structures,
    k0_positive,
    leaf_equal,
    lilac_iso,
    morita_equivalent,
    pair_to_geodesic,
    pseudolattice_member,
)
from modgeo.slopes import GenericSlope
from oracles import gl2z_word_search

S2 = normalize_quad(2)
S3 = normalize_quad(3)
S5 = normalize_quad(5)
GOLDEN = make_quad(5, Fraction(1, 2), Fraction(1, 2))


class TestIso:
    def test_translation(self):
        assert lilac_iso(PreLilac(S2), PreLilac(S2 + 1)) is True

    def test_different_fields(self):
        assert lilac_iso(PreLilac(S2), PreLilac(S3)) is False

    def test_rationals(self):
        assert lilac_iso(PreLilac(Fraction(1, 2)), PreLilac(Fraction(7, 5))) is True

    def test_generic_rejected(self):
        with pytest.raises(UndecidableInputError):
            lilac_iso(PreLilac(GenericSlope("e")), PreLilac(S2))


class TestMorita:
    def test_inversion(self):
        assert morita_equivalent(S2, S2 / 2) is True

    def test_golden_vs_sqrt5(self):
        # the two generate different orders (disc 5 vs 20) and have
        # periods (1) vs (4), so they are NOT equivalent; the bounded
        # word search over GL2(Z) confirms no short homography works
        assert morita_equivalent(GOLDEN, S5) is False
        assert not gl2z_word_search(GOLDEN, S5, depth=6)

    def test_rational_vs_irrational(self):
        assert morita_equivalent(S2, Fraction(1, 3)) is False

    def test_extensionally_equal_to_lilac_iso(self):
        rng = random.Random(3)
        slopes = [Fraction(rng.randint(-6, 6), rng.randint(1, 6)) for _ in range(8)]
        slopes += [
            QuadElem(rng.choice([2, 3, 5]), Fraction(rng.randint(-4, 4)),
                     Fraction(rng.choice([-2, -1, 1, 2])))
            for _ in range(17)
        ]
        for x, y in itertools.product(slopes, repeat=2):
            assert morita_equivalent(x, y) == lilac_iso(PreLilac(x), PreLilac(y))

    def test_word_search_agrees_on_sample(self):
        # positive cases found by the independent homography search
        pairs = [(S2, 1 / S2), (GOLDEN, GOLDEN + 3), (S3, 1 + S3)]
        for x, y in pairs:
            assert morita_equivalent(x, y) is True
            assert gl2z_word_search(x, y, depth=6)


class TestOrderedK0:
    def test_order_unit_positive(self):
        for theta in (S2, Fraction(1, 3), -S5):
            assert k0_positive((1, 0), OrderedK0(theta)) is True

    def test_examples(self):
        K = OrderedK0(S2)
        assert k0_positive((-1, 1), K) is True
        assert k0_positive((3, -2), K) is True  # 9 > 8 exactly
        assert k0_positive((-3, 2), K) is False

    def test_valuation_injective_iff_irrational(self):
        # rational theta = p/q: (p, 0) and (0, q) collide; irrational theta:
        # distinct pairs always separate
        t = Fraction(2, 7)
        K = OrderedK0(t)
        assert K.value(2, 0) == K.value(0, 7)
        Ki = OrderedK0(S2)
        seen = {}
        for m in range(-5, 6):
            for n in range(-5, 6):
                v = Ki.value(m, n)
                key = (v.d, v.a, v.b) if isinstance(v, QuadElem) else v
                assert key not in seen
                seen[key] = (m, n)

    def test_density_via_convergents(self):
        from modgeo.cfrac import cf_expand, convergents

        for theta in (S2, GOLDEN, S3 + 2):
            K = OrderedK0(theta)
            for eps in (Fraction(1, 10**3), Fraction(1, 10**6)):
                found = False
                for pq in convergents(cf_expand(theta), 40):
                    for m, n in ((-pq.numerator, pq.denominator),
                                 (pq.numerator, -pq.denominator)):
                        val = m + n * theta
                        if sign_of(val) > 0 and sign_of(val - eps) < 0:
                            found = True
                            break
                    if found:
                        break
                assert found


class TestPseudolattice:
    def test_read_off_coordinates(self):
        assert pseudolattice_member(3 + 2 * S2, S2) == (3, 2)

    def test_half_not_member(self):
        assert pseudolattice_member(Fraction(1, 2), S2) is None

    def test_rational_theta(self):
        assert pseudolattice_member(Fraction(5, 6), Fraction(1, 3)) is None
        m, n = pseudolattice_member(Fraction(5, 3), Fraction(1, 3))
        assert m + Fraction(n, 3) == Fraction(5, 3)

    def test_uniqueness_irrational(self):
        sol = pseudolattice_member(5 - 3 * S2, S2)
        assert sol == (5, -3)
        m, n = sol
        # no second solution in a window
        for dm in range(-10, 11):
            for dn in range(-10, 11):
                if (dm, dn) != (0, 0):
                    assert (m + dm) + (n + dn) * S2 != 5 - 3 * S2

    def test_incompatible(self):
        with pytest.raises(IncompatibleFieldsError):
            pseudolattice_member(S3, S2)
        with pytest.raises(IncompatibleFieldsError):
            pseudolattice_member(S2, Fraction(1, 3))

    def test_generic_rejected(self):
        with pytest.raises(UndecidableInputError):
            pseudolattice_member(Fraction(1), GenericSlope("e"))


class TestLeafEqual:
    def test_examples(self):
        assert leaf_equal(S2, 3 * S2 - 2, S2) is True
        assert leaf_equal(Fraction(0), Fraction(1, 2), S2) is False
        assert leaf_equal(Fraction(1, 3), Fraction(2, 3), Fraction(1, 3)) is True

    def test_equivalence_relation(self):
        rng = random.Random(7)
        theta = S2
        values = [rng.randint(-3, 3) + rng.randint(-3, 3) * theta for _ in range(6)]
        values += [Fraction(rng.randint(-3, 3), rng.choice([1, 2, 3])) for _ in range(6)]
        n = len(values)
        rel = {}
        for i in range(n):
            for j in range(n):
                rel[i, j] = leaf_equal(values[i], values[j], theta)
        for i in range(n):
            assert rel[i, i]
            for j in range(n):
                assert rel[i, j] == rel[j, i]
                for k in range(n):
                    if rel[i, j] and rel[j, k]:
                        assert rel[i, k]


class TestLevels:
    def test_formula_values(self):
        assert count_level_structures(2) == 6
        assert count_level_structures(3) == 48
        assert count_level_structures(4) == 96

    def test_against_enumeration(self):
        for N in range(2, 9):
            brute = 0
            for a, b, c, d in itertools.product(range(N), repeat=4):
                if math.gcd((a * d - b * c) % N, N) == 1:
                    brute += 1
            assert count_level_structures(N) == brute

    def test_invalid_modulus(self):
        with pytest.raises(InvalidModulusError):
            count_level_structures(1)

    def test_level_structure_validation(self):
        LevelStructure(4, ((1, 1), (0, 1)))
        with pytest.raises(InvalidInputError):
            LevelStructure(4, ((2, 0), (0, 2)))
        with pytest.raises(InvalidModulusError):
            LevelStructure(1, ((1, 0), (0, 1)))


class TestPairToGeodesic:
    def test_conjugate_pair(self):
        p = pair_to_geodesic(S2, -S2)
        assert classify_mt(p).kind == RM_TORUS and classify_mt(p).d == 2

    def test_not_transverse(self):
        with pytest.raises(NotTransverseError):
            pair_to_geodesic(Fraction(0), Fraction(0))

    def test_borel_promotes(self):
        p = pair_to_geodesic(Fraction(1, 2), GenericSlope("e"))
        assert classify_mt(p).kind == FULL_GL2
