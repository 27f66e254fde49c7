import pytest

from src.errors import ParseError, PerturbationError, PreconditionError
from src.extensions.properties import (
    contravariant_mutation_check,
    creation_check,
    destruction_check,
    non_adjacent_mutations_preserved,
    orient_versus_mutation,
    swap_isomorphic,
    swap_isomorphism_check,
    swapped_spec,
)
from src.extensions.lexicographic import (
    LexExtensionSpec,
    corresponding_cocircuit,
    expected_cocircuit_count,
    fprime_zero_relation_holds,
    lex_extend,
    lex_paths_agree,
    localization_of,
    new_cocircuits,
    parse_spec,
)
from src.extensions.mandel import flip_lex_commute, mandel_from_euclidean_mutant
from src.extensions.perturbation import perturb_extension
from src.faces.mutations import mutations
from src.matroid.operations import Inseparability, delete_element, inseparability
from src.programs.program import Program, is_euclidean
from src.signs.sign_vector import Sign, SignVector


def sv(text):
    return SignVector.from_string(text)


def signed(*texts):
    vectors = {sv(t) for t in texts}
    return vectors | {-x for x in vectors}


W3_EXT = signed("0---", "+0-+", "++0+", "+--0")


@pytest.fixture(scope="module")
def w3_ext(w3):
    return lex_extend(w3, parse_spec("0:+,1:+"))


def _first_mutation_outside(om):
    cert = mutations(om)[0]
    g = next(e for e in range(om.n) if e not in cert.basis)
    return cert.basis, g


class TestSpecs:
    def test_parse(self):
        spec = parse_spec("0+, 1-")
        assert spec.to_string() == "0:+,1:-"
        assert spec.head == 0
        assert spec.signs == (Sign.PLUS, Sign.MINUS)

    @pytest.mark.parametrize("text", ["0:*", "a:+", "", "0:+,:-"])
    def test_parse_errors(self, text):
        with pytest.raises(ParseError):
            parse_spec(text)

    def test_repeated_element(self):
        with pytest.raises(PreconditionError):
            parse_spec("0:+,0:-")

    def test_too_long(self, w3):
        with pytest.raises(PreconditionError):
            lex_extend(w3, parse_spec("0:+,1:+,2:+"))

    def test_swapped_signs(self):
        assert swapped_spec(parse_spec("2:-,0:+,1:-")).to_string() == "2:-,0:-,1:+"
        assert swapped_spec(parse_spec("2:+,0:+,1:-")).to_string() == "2:+,0:-,1:+"


class TestLexicographic:
    def test_w3_extension(self, w3_ext):
        assert w3_ext.n == 4 and w3_ext.rank == 2
        assert w3_ext.cocircuits == W3_EXT
        assert w3_ext.chirotope.to_string() == "+++" + "+--"

    def test_paths_agree(self, w3, c36):
        assert lex_paths_agree(w3, parse_spec("0:+,1:+"))
        assert lex_paths_agree(c36, parse_spec("0:+,2:-,4:+"))

    def test_short_spec_uses_localization(self, c36):
        ext = lex_extend(c36, parse_spec("3:-"))
        assert ext.n == 7
        assert delete_element(ext, 6).cocircuits == c36.cocircuits
        assert inseparability(ext, 3, 6) is not None

    def test_localization_recovers_signs(self, w3, w3_ext):
        localization = localization_of(w3_ext)
        assert localization(sv("0--")) == Sign.MINUS
        assert localization(sv("+0-")) == Sign.PLUS
        assert localization(sv("++0")) == Sign.PLUS

    def test_new_cocircuits(self, w3, w3_ext):
        assert set(new_cocircuits(w3, w3_ext)) == {sv("+--0"), sv("-++0")}

    def test_uniform_count(self, c36):
        ext = lex_extend(c36, parse_spec("0:+,1:-,2:+"))
        assert len(ext.cocircuits) == expected_cocircuit_count(7, 3) == 42

    def test_head_is_contravariant(self, w3_ext):
        assert inseparability(w3_ext, 0, 3) is Inseparability.CONTRAVARIANT

    def test_corresponding_cocircuit(self, w3_ext):
        assert corresponding_cocircuit(w3_ext, sv("+--0"), 0, 3) == sv("0---")
        assert corresponding_cocircuit(w3_ext, sv("0---"), 0, 3) == sv("+--0")
        with pytest.raises(PreconditionError):
            corresponding_cocircuit(w3_ext, sv("+0-+"), 0, 3)
        with pytest.raises(PreconditionError):
            corresponding_cocircuit(w3_ext, sv("+--0"), 0, 1)

    def test_fprime_zero_relation(self, w3, c36):
        assert fprime_zero_relation_holds(w3, parse_spec("0:+,1:+"))
        assert fprime_zero_relation_holds(c36, parse_spec("1:-,0:+,5:-"))


class TestExtensionProperties:
    def test_creation(self, w3, c36):
        cert = creation_check(w3, parse_spec("0:+,1:+"))
        assert cert is not None and cert.basis == (0, 3)
        assert creation_check(c36, parse_spec("0:+,1:+,2:+")) is not None
        with pytest.raises(PreconditionError):
            creation_check(w3, parse_spec("0:+,1:-"))

    def test_swap_isomorphism(self, w3, c36):
        assert swap_isomorphism_check(w3, parse_spec("0:+,1:+"))
        assert swap_isomorphism_check(c36, parse_spec("0:+,2:-,4:+"))

    @pytest.mark.parametrize("text", ["0:-,2:-,4:+", "0:-,2:+,4:+", "3:-,0:-,5:-", "1:-,4:-,2:+"])
    def test_swap_isomorphism_with_negative_head(self, c36, text):
        assert swap_isomorphism_check(c36, parse_spec(text))

    def test_negative_head_needs_reorientation(self, w3):
        spec = parse_spec("0:-,1:+")
        second = lex_extend(w3, spec)
        third = lex_extend(w3, swapped_spec(spec))
        assert swap_isomorphic(third, second, 0, 3, Sign.MINUS)
        assert not swap_isomorphic(third, second, 0, 3, Sign.PLUS)

    def test_non_adjacent_mutations(self, w3, c36):
        assert non_adjacent_mutations_preserved(w3, parse_spec("0:+,1:+"))
        assert non_adjacent_mutations_preserved(c36, parse_spec("3:-,1:+,5:+"))

    def test_orient_versus_mutation(self, w3):
        oriented = orient_versus_mutation(w3, (0, 1))
        assert oriented.reoriented == (1,)
        assert oriented.certificate.tope[0] == Sign.PLUS
        assert oriented.certificate.tope[1] == Sign.PLUS
        towards_g = orient_versus_mutation(w3, (0, 1), g=2)
        assert towards_g.reoriented == (0,)

    def test_destruction(self, c36):
        basis, g = _first_mutation_outside(c36)
        report = destruction_check(c36, basis, g)
        assert report.m_prime_is_mutation
        assert report.destroyed and report.ok
        with pytest.raises(PreconditionError):
            destruction_check(c36, basis, basis[0])

    def test_contravariant_mutation(self, c36):
        ext = lex_extend(c36, LexExtensionSpec.of((0, 1), (1, 1), (2, 1)))
        report = contravariant_mutation_check(ext, 0, 6)
        assert report.negative_part_empty
        assert report.mutation is not None and 0 in report.mutation
        assert inseparability(c36, 0, 3) is None
        with pytest.raises(PreconditionError):
            contravariant_mutation_check(c36, 0, 3)


class TestPerturbation:
    def test_move_off_cocircuit(self, w3_ext):
        moved = perturb_extension(w3_ext, sv("0---"), 3, Sign.PLUS)
        assert moved.cocircuits == signed("0--+", "+0-+", "++0+", "+++0")
        assert delete_element(moved, 3).cocircuits == delete_element(w3_ext, 3).cocircuits

    def test_rejects_non_cocircuit(self, w3_ext):
        with pytest.raises(PreconditionError):
            perturb_extension(w3_ext, sv("0+--"), 3)

    def test_rejects_new_cocircuit(self, w3_ext):
        with pytest.raises(PerturbationError):
            perturb_extension(w3_ext, sv("+--0"), 3)


class TestMandelConstruction:
    def test_flip_lex_commute(self, c36):
        basis, g = _first_mutation_outside(c36)
        report = flip_lex_commute(c36, basis, g)
        assert report.isomorphic
        assert report.mutations_survive

    def test_euclidean_mutant_extension(self, c36):
        basis, g = _first_mutation_outside(c36)
        construction = mandel_from_euclidean_mutant(c36, basis, g)
        ext, p = construction.extension, construction.element
        assert p == 6 and ext.n == 7
        assert delete_element(ext, p).cocircuits == c36.cocircuits
        assert all(is_euclidean(Program(ext, e, p)).euclidean for e in range(6))
        assert construction.as_dict()["flipped"] == list(construction.basis)
