"""Normal ordering, conjugation and the shift identity.

The multiplication oracle is a string rewriting engine over words in a, b
that applies ba -> ab - bb until no reducible pair remains; the class under
test never sees it.
"""

from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lamconn.algebra import (
    ABElement,
    HomogeneousPart,
    ab_mul,
    as_homogeneous,
    conj_b,
    homogeneous_components,
    linear_factor_product,
    shift_identity_check,
)
from lamconn.errors import ContractError, InputError
from lamconn.exact import LaurentPoly

A = ABElement.gen_a()
B = ABElement.gen_b()

small_fraction = st.fractions(min_value=-5, max_value=5, max_denominator=6)


_WORD_MEMO = {}


def _normalize_word(word):
    """Oracle normal form of one word over {a, b} by leftmost ba -> ab - bb.

    Memoized per distinct word; naive branch-per-rewrite blows up on inputs
    like b^k a^k while the set of same-length words stays small.
    """
    stack = [word]
    while stack:
        w = stack[-1]
        if w in _WORD_MEMO:
            stack.pop()
            continue
        idx = w.find("ba")
        if idx < 0:
            _WORD_MEMO[w] = {w: F(1)}
            stack.pop()
            continue
        swapped = w[:idx] + "ab" + w[idx + 2 :]
        doubled = w[:idx] + "bb" + w[idx + 2 :]
        pending = [x for x in (swapped, doubled) if x not in _WORD_MEMO]
        if pending:
            stack.extend(pending)
            continue
        out = dict(_WORD_MEMO[swapped])
        for ww, c in _WORD_MEMO[doubled].items():
            out[ww] = out.get(ww, F(0)) - c
        _WORD_MEMO[w] = {ww: c for ww, c in out.items() if c != 0}
        stack.pop()
    return _WORD_MEMO[word]


def rewrite_words(word_sums):
    """Oracle normal form of a rational combination of words over {a, b}."""
    out = {}
    for word, coeff in word_sums.items():
        for w, c in _normalize_word(word).items():
            out[w] = out.get(w, F(0)) + coeff * c
    return {w: c for w, c in out.items() if c != 0}


def word_to_element(word):
    out = ABElement.one()
    for ch in word:
        out = out * (A if ch == "a" else B)
    return out


def element_to_word_map(x):
    out = {}
    for (i, j), coeff in x.terms.items():
        assert coeff.is_const()
        out["a" * i + "b" * j] = coeff.const_value()
    return out


class TestNormalForm:
    def test_b2_times_a_frozen(self):
        # b^2 * a = a*b^2 - 2*b^3
        assert (B * B) * A == ABElement({(1, 2): 1, (0, 3): -2})

    def test_abab_frozen(self):
        # (ab)(ab) = a^2*b^2 - a*b^3, first derived with the word oracle
        assert rewrite_words({"abab": F(1)}) == {"aabb": F(1), "abbb": F(-1)}
        assert (A * B) * (A * B) == ABElement({(2, 2): 1, (1, 3): -1})

    @pytest.mark.parametrize("j", range(7))
    def test_induction_identity(self, j):
        b_j = ABElement.monomial(0, j)
        lhs = b_j * A
        rhs = (A - B.scale(j)) * b_j
        assert lhs == rhs

    @given(st.lists(st.text(alphabet="ab", max_size=5), min_size=1, max_size=3))
    def test_products_match_word_oracle(self, words):
        product_word = "".join(words)
        oracle = rewrite_words({product_word: F(1)})
        element = ABElement.one()
        for word in words:
            element = element * word_to_element(word)
        assert element_to_word_map(element) == oracle

    def test_identity_element(self):
        x = ABElement({(2, 1): F(3, 2), (0, 0): -1})
        assert x * ABElement.one() == x
        assert ABElement.one() * x == x
        assert x * ABElement.zero() == ABElement.zero()

    def test_negative_powers_rejected(self):
        with pytest.raises(InputError):
            ABElement({(-1, 0): 1})


abelement = st.dictionaries(
    st.tuples(st.integers(min_value=0, max_value=3), st.integers(min_value=0, max_value=3)),
    small_fraction,
    max_size=4,
).map(ABElement)


class TestRingAxioms:
    @given(abelement, abelement, abelement)
    def test_associative(self, x, y, z):
        assert (x * y) * z == x * (y * z)

    @given(abelement, abelement, abelement)
    def test_distributive(self, x, y, z):
        assert x * (y + z) == x * y + x * z
        assert (x + y) * z == x * z + y * z

    @given(abelement, abelement)
    def test_degree_additive(self, x, y):
        if x.is_zero() or y.is_zero():
            assert (x * y).is_zero()
        else:
            assert (x * y).degree() == x.degree() + y.degree()

    def test_commutator(self):
        assert A * B - B * A == B * B


class TestConjugation:
    def test_frozen_examples(self):
        assert conj_b(A) == A - B
        assert conj_b(B) == B
        assert conj_b(A * A) == ABElement({(2, 0): 1, (1, 1): -2, (0, 2): 2})

    @given(abelement, abelement)
    def test_homomorphism(self, x, y):
        assert conj_b(x * y) == conj_b(x) * conj_b(y)
        assert conj_b(x + y) == conj_b(x) + conj_b(y)

    @given(abelement)
    def test_degree_preserved(self, x):
        assert conj_b(x).support_degrees() == x.support_degrees()

    @given(abelement)
    def test_bijective(self, x):
        # the inverse substitutes a + b for a; (a + b) is the factor (a - (-1)*b)
        plus = linear_factor_product([F(-1)])
        powers = [ABElement.one()]
        for _ in range(4):
            powers.append(powers[-1] * plus)
        inverse = ABElement.zero()
        for (i, j), coeff in x.terms.items():
            inverse = inverse + powers[i].shift_b(j).scale(coeff)
        assert conj_b(inverse) == x

    def test_preserves_lam_coefficients(self):
        x = ABElement({(1, 0): LaurentPoly({-2: -4})})
        assert conj_b(x) == ABElement({(1, 0): LaurentPoly({-2: -4}), (0, 1): LaurentPoly({-2: 4})})


class TestLinearFactors:
    def test_frozen_product(self):
        assert linear_factor_product([F(5, 2), F(1)]) == ABElement(
            {(2, 0): 1, (1, 1): F(-7, 2), (0, 2): 5}
        )

    def test_empty_product(self):
        assert linear_factor_product([]) == ABElement.one()

    def test_order_matters(self):
        r1, r2 = F(1), F(3)
        assert linear_factor_product([r1, r2]) != linear_factor_product([r2, r1])

    @given(st.lists(small_fraction, max_size=4))
    def test_monic_of_right_degree(self, roots):
        p = linear_factor_product(roots)
        d = len(roots)
        assert p.is_homogeneous()
        assert p.degree() == d
        assert p.coefficient(d, 0) == LaurentPoly.const(1)


class TestHomogeneous:
    def test_components_order(self):
        x = A * A + B
        parts = homogeneous_components(x)
        assert [p.degree for p in parts] == [2, 1]
        assert parts[0].element == A * A
        assert parts[1].element == B

    def test_sum_of_components(self):
        x = ABElement({(2, 1): 1, (1, 0): F(1, 2), (0, 0): -3})
        total = ABElement.zero()
        for part in homogeneous_components(x):
            total = total + part.element
        assert total == x

    def test_as_homogeneous_rejects_mixed(self):
        with pytest.raises(ContractError):
            as_homogeneous(A + A * A)

    def test_part_validates(self):
        with pytest.raises(ContractError):
            HomogeneousPart(2, A)

    def test_zero_is_homogeneous(self):
        assert as_homogeneous(ABElement.zero()).degree == 0


class TestTextFormat:
    def test_canonical_example(self):
        x = ABElement(
            {
                (3, 0): 1,
                (2, 1): -5,
                (1, 1): LaurentPoly({-2: -4}),
                (0, 2): F(7, 2),
            }
        )
        assert str(x) == "a^3 - 5*a^2*b + (-4*lam^-2)*a*b + 7/2*b^2"
        assert ABElement.parse(str(x)) == x

    def test_term_ordering(self):
        # descending total degree, then descending a power within a degree
        x = ABElement({(0, 2): 1, (1, 1): 1, (2, 0): 1, (0, 1): 1})
        assert str(x) == "a^2 + a*b + b^2 + b"

    def test_units(self):
        assert str(ABElement.zero()) == "0"
        assert str(ABElement.one()) == "1"
        assert str(-A) == "-a"
        assert str(A - B) == "a - b"
        assert str(ABElement.monomial(0, 1, LaurentPoly({2: 1}))) == "(lam^2)*b"

    def test_parse_variants(self):
        assert ABElement.parse("2*a - 2*b") == A.scale(2) - B.scale(2)
        assert ABElement.parse("a*a*b") == ABElement.monomial(2, 1)
        assert ABElement.parse("3*lam^2*a") == ABElement.monomial(1, 0, LaurentPoly({2: 3}))
        assert ABElement.parse("(1 + lam)*b^2") == ABElement.monomial(
            0, 2, LaurentPoly({0: 1, 1: 1})
        )
        assert ABElement.parse("0") == ABElement.zero()

    def test_parse_rejects_unordered(self):
        with pytest.raises(InputError):
            ABElement.parse("b*a")

    @pytest.mark.parametrize("bad", ["a^-1", "c", "a^", "2**a", "(a + b)*b"])
    def test_parse_rejects_malformed(self, bad):
        with pytest.raises(InputError):
            ABElement.parse(bad)

    @given(abelement)
    def test_round_trip(self, x):
        assert ABElement.parse(str(x)) == x

    @given(
        st.dictionaries(
            st.tuples(
                st.integers(min_value=0, max_value=2), st.integers(min_value=0, max_value=2)
            ),
            st.dictionaries(
                st.integers(min_value=-3, max_value=3), small_fraction, max_size=3
            ).map(LaurentPoly),
            max_size=3,
        ).map(ABElement)
    )
    def test_round_trip_with_lam(self, x):
        assert ABElement.parse(str(x)) == x


class TestShiftIdentity:
    def test_frozen_degree_one(self):
        left, right = shift_identity_check(as_homogeneous(B), 0)
        assert left == right == A * B - ABElement.monomial(0, 2)
        left, right = shift_identity_check(as_homogeneous(A), F(2))
        assert left == right == ABElement({(2, 0): 1, (1, 1): -3, (0, 2): 3})

    @given(
        st.integers(min_value=0, max_value=4),
        st.data(),
        small_fraction,
    )
    def test_identity_on_random_homogeneous(self, degree, data, mu):
        terms = {}
        for i in range(degree + 1):
            value = data.draw(small_fraction)
            if value:
                terms[(i, degree - i)] = value
        q = HomogeneousPart(degree, ABElement(terms))
        left, right = shift_identity_check(q, mu)
        assert left == right
