import pytest
from hypothesis import given, settings, strategies as st

from confext.exactnum import (
    RAT,
    DivisionByZero,
    MixedExtension,
    Scalar,
    UniPoly,
    ZeroPolynomial,
    extract_roots,
    parse_scalar,
    squarefree_part,
)


def S(a, b=0, d=0):
    return Scalar(RAT(a), RAT(b), d)


def frac(a, b):
    return Scalar(RAT(a, b))


class TestScalarArithmetic:
    def test_componentwise_addition(self):
        # (1/2) + (1/2 + sqrt(19)) = 1 + sqrt(19)
        x = Scalar(RAT(1, 2))
        y = Scalar(RAT(1, 2), RAT(1), 19)
        assert x + y == S(1, 1, 19)

    def test_norm_product(self):
        # the two roots of 2x^2 + 10x + 3 multiply to constant/leading = 3/2
        r1 = Scalar(RAT(-5, 2), RAT(1, 2), 19)
        r2 = Scalar(RAT(-5, 2), RAT(-1, 2), 19)
        assert r1 * r2 == frac(3, 2)

    def test_sqrt_inverse(self):
        root19 = Scalar(RAT(0), RAT(1), 19)
        assert root19.inverse() == Scalar(RAT(0), RAT(1, 19), 19)
        assert root19 * root19.inverse() == S(1)

    def test_mixed_extension_rejected(self):
        with pytest.raises(MixedExtension):
            S(0, 1, 2) + S(0, 1, 3)

    def test_rational_embeds_into_any_extension(self):
        assert S(2) * S(0, 1, 19) == S(0, 2, 19)

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            S(1) / S(0)

    def test_sqrt_normalizes_squarefree_part(self):
        assert Scalar.sqrt(RAT(76)) == S(0, 2, 19)
        assert Scalar.sqrt(RAT(9, 4)) == frac(3, 2)

    def test_exact_ordering(self):
        assert S(0, 1, 2) < S(3, 0, 0)      # sqrt(2) < 3
        assert S(0, 1, 2) > S(1)            # sqrt(2) > 1
        assert S(4, -1, 2) > S(0)           # 4 - sqrt(2) > 0
        assert S(1, -1, 2) < S(0)           # 1 - sqrt(2) < 0

    def test_string_round_trip(self):
        for s in [frac(7, 2), S(-5, 1, 19), Scalar(RAT(-5, 2), RAT(-1, 2), 19), S(0)]:
            assert parse_scalar(str(s)) == s
        assert parse_scalar("7/2+1/2*sqrt(19)") == Scalar(RAT(7, 2), RAT(1, 2), 19)
        assert parse_scalar("sqrt(19)") == S(0, 1, 19)


rationals = st.builds(
    lambda p, q: RAT(p, q),
    st.integers(min_value=-50, max_value=50),
    st.integers(min_value=1, max_value=12),
)


def scalars(d):
    return st.builds(lambda a, b: Scalar(RAT(a), RAT(b), d if b else 0), rationals, rationals)


@settings(max_examples=60, deadline=None)
@given(scalars(19), scalars(19), scalars(19))
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x
    if x:
        assert x * x.inverse() == Scalar(RAT(1))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=4000))
def test_squarefree_split(n):
    s, r = squarefree_part(n)
    assert s * r * r == n
    for p in range(2, 64):
        assert s % (p * p) != 0


class TestRootExtraction:
    def test_quadratic_pair(self):
        p = UniPoly([3, 10, 2])  # 2x^2 + 10x + 3
        res = extract_roots(p)
        assert res.rational_roots == []
        assert res.quadratic_roots == [
            Scalar(RAT(-5, 2), RAT(-1, 2), 19),
            Scalar(RAT(-5, 2), RAT(1, 2), 19),
        ]
        assert res.residual == UniPoly([1])

    def test_rational_roots(self):
        p = UniPoly([0, 4, 1])  # x(x+4)
        res = extract_roots(p)
        assert res.rational_roots == [RAT(-4), RAT(0)]
        assert not res.quadratic_roots

    def test_irreducible_cubic_left_alone(self):
        p = UniPoly([-2, 0, 0, 1])  # x^3 - 2
        res = extract_roots(p)
        assert res.rational_roots == [] and res.quadratic_roots == []
        assert res.residual == p.monic()

    def test_degree_bookkeeping(self):
        # (x-1)(x+2)(x^2-19)(x^3-2), with a repeated factor thrown in
        p = (
            UniPoly([-1, 1])
            * UniPoly([2, 1])
            * UniPoly([2, 1])
            * UniPoly([-19, 0, 1])
            * UniPoly([-2, 0, 0, 1])
        )
        res = extract_roots(p)
        assert res.rational_roots == [RAT(-2), RAT(1)]
        assert [str(r) for r in res.quadratic_roots] == ["0-1*sqrt(19)", "0+1*sqrt(19)"]
        sf_degree = p.squarefree_part().degree()
        assert res.residual.degree() + len(res.rational_roots) + len(res.quadratic_roots) == sf_degree
        for r in res.rational_roots:
            assert p(r) == 0
        for r in res.quadratic_roots:
            assert p(r).is_zero()

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ZeroPolynomial):
            extract_roots(UniPoly())

    def test_mixed_fields_in_one_answer(self):
        p = UniPoly([-2, 0, 1]) * UniPoly([-3, 0, 1])  # (x^2-2)(x^2-3)
        res = extract_roots(p)
        ds = sorted({r.d for r in res.quadratic_roots})
        assert ds == [2, 3] and len(res.quadratic_roots) == 4
