from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kcat.errors import FormatError, NonPrimeCharacteristic
from kcat.scalars import QQ, FieldSpec, Residue, is_prime, make_field

PRIMES = [2, 3, 5, 7, 101, 2_147_483_647]


def test_rational_sum():
    F = make_field("q")
    assert F.add(F.parse("1/2"), F.parse("1/3")) == Fraction(5, 6)


def test_inverse_mod_5():
    F = make_field("fp:5")
    assert F.inv(F(3)) == 2
    assert F.mul(F(3), F.inv(F(3))) == F.one


@pytest.mark.parametrize("p", [4, 1, 0, 9, 2**31 + 11])
def test_non_prime_characteristic(p):
    with pytest.raises(NonPrimeCharacteristic):
        make_field("PrimeField", p)


def test_notation_round_trip():
    assert FieldSpec.parse("q").render() == "q"
    assert FieldSpec.parse("fp:7").render() == "fp:7"
    assert make_field("fp:7") == make_field("PrimeField", 7)


def test_bad_literals():
    with pytest.raises(FormatError):
        QQ.parse("1/0")
    with pytest.raises(FormatError):
        QQ.parse("1.5")
    with pytest.raises(FormatError):
        make_field("fp:5").parse("1/2")


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        QQ.inv(QQ.zero)
    with pytest.raises(ZeroDivisionError):
        make_field("fp:3").inv(0)


def test_residues_are_canonical():
    assert Residue(-1, 5) == Residue(4, 5)
    assert hash(Residue(7, 5)) == hash(Residue(2, 5))
    assert str(Residue(-1, 5)) == "4"


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x.numerator) < 10**6)


def field_and_elements(k):
    return st.sampled_from(["q"] + [f"fp:{p}" for p in PRIMES]).flatmap(
        lambda spec: st.tuples(
            st.just(make_field(spec)),
            *[rationals if spec == "q" else st.integers(-(10**12), 10**12)] * k,
        )
    )


@given(field_and_elements(3))
def test_field_axioms(data):
    F, a, b, c = data
    a, b, c = F(a), F(b), F(c)
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + F.zero == a and a * F.one == a
    assert a + F.neg(a) == F.zero
    if a != F.zero:
        assert F.mul(a, F.inv(a)) == F.one


@given(rationals)
def test_rational_print_parse_round_trip(x):
    text = QQ.format(x)
    assert QQ.parse(text) == x
    assert QQ.format(QQ.parse(text)) == text
    num, den = text.split("/")
    assert int(den) > 0


@given(st.sampled_from(PRIMES[:5]), st.integers(-1000, 1000))
def test_residue_print_parse_round_trip(p, n):
    F = make_field("PrimeField", p)
    text = F.format(F(n))
    assert 0 <= int(text) < p
    assert F.parse(text) == F(n)


def test_canonical_rational_strings():
    assert QQ.format(QQ.parse("-6/4")) == "-3/2"
    assert QQ.format(QQ.parse("7")) == "7/1"
