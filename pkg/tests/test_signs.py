import pytest

from src.errors import LengthMismatchError, ParseError
from src.signs.sign_vector import Sign, SignVector, compose, compose_all, conformal, separation


def sv(text):
    return SignVector.from_string(text)


def test_composition_takes_first_nonzero():
    assert compose(sv("+0-0"), sv("-++0")).to_string() == "++-0"
    assert compose(sv("0000"), sv("-+0+")) == sv("-+0+")


def test_separation_and_conformality():
    assert separation(sv("+-0+"), sv("--+-")) == frozenset({0, 3})
    assert not conformal(sv("+-0+"), sv("--+-"))
    assert conformal(sv("+0-"), sv("++0"))


def test_length_mismatch_is_rejected():
    with pytest.raises(LengthMismatchError):
        sv("+-").compose(sv("+-0"))


def test_bad_character():
    with pytest.raises(ParseError):
        sv("+x-")


def test_negation_and_entries():
    x = sv("+0-")
    assert (-x).to_string() == "-0+"
    assert x[0] is Sign.PLUS and x[1] is Sign.ZERO and x[2] is Sign.MINUS
    assert x.support() == frozenset({0, 2})
    assert x.zero_set() == frozenset({1})
    assert x.append(Sign.MINUS).to_string() == "+0--"
    assert x.with_entry(1, 1).to_string() == "++-"


def test_reorient_restrict_permute():
    x = sv("+0-+")
    assert x.reorient(0b1001).to_string() == "-0--"
    assert x.restrict([3, 2]).to_string() == "+-"
    assert x.permute([3, 2, 1, 0]).to_string() == "+-0+"
    assert x.pad(1, 2).to_string() == "0+0-+00"


def test_conforms_to():
    assert sv("+00").conforms_to(sv("+-+"))
    assert not sv("-00").conforms_to(sv("+-+"))


def test_compose_all():
    assert compose_all([sv("0+0"), sv("-00"), sv("+-+")], 3).to_string() == "-++"
