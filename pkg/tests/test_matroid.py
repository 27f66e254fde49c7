from fractions import Fraction

import pytest

from src.errors import ParseError, PreconditionError, ValidationError
from src.matroid import linear
from src.matroid.canonical import canonical_form, element_classes, is_exact_canonical
from src.matroid.chirotope import Chirotope, chirotope_from_points
from src.matroid.io import load, save
from src.matroid.operations import (
    Inseparability,
    contract_element,
    delete_element,
    dual,
    exists_u24_minor,
    inseparability,
    is_general_position,
    minor,
    relabel,
    reorient,
)
from src.matroid.oriented_matroid import Provenance, cocircuits_from_chirotope
from src.matroid.realizable import (
    cyclic,
    cyclic_configuration,
    om_from_points,
    point_cocircuits,
    random_configuration,
    realizable_extend_through,
    w3_configuration,
)
from src.matroid.validation import validate_chirotope, validate_cocircuit_axioms
from src.signs.sign_vector import SignVector


def strings(om):
    return sorted(x.to_string() for x in om.cocircuits)


class TestLinear:
    def test_exact_determinant_and_rank(self):
        assert linear.determinant([[1, 2], [3, 4]]) == -2
        assert linear.determinant([[Fraction(1, 2), 0], [0, 4]]) == 2
        assert linear.rank([[1, 2, 3], [2, 4, 6]]) == 1

    def test_null_space_is_orthogonal(self):
        rows = [[1, 1, 1]]
        for v in linear.null_space(rows, 3):
            assert linear.dot(linear.to_fractions(rows)[0], v) == 0


class TestChirotope:
    def test_w3_chirotope_is_all_positive(self, w3):
        assert w3.chirotope.to_string() == "+++"
        assert w3.chirotope(1, 0) == -1

    def test_moment_curve_is_alternating(self):
        chi = chirotope_from_points(cyclic_configuration(4, 8))
        assert chi.to_string() == "+" * 70

    def test_wrong_length_is_a_parse_error(self):
        with pytest.raises(ParseError):
            Chirotope.from_string(2, 4, "+++")

    def test_gp3_violation_is_reported(self):
        chi = Chirotope.from_string(2, 4, "++++-+")
        report = validate_chirotope(chi)
        assert not report.ok
        assert report.violations[0].axiom == "gp3"

    def test_invalid_chirotope_is_refused(self):
        with pytest.raises(ValidationError) as info:
            cocircuits_from_chirotope(Chirotope.from_string(2, 4, "++++-+"))
        assert not info.value.report.ok


class TestCocircuits:
    def test_w3_cocircuits(self, w3):
        assert strings(w3) == sorted(["0--", "0++", "+0-", "-0+", "++0", "--0"])
        assert w3.rank == 2 and w3.n == 3
        assert w3.provenance is Provenance.FROM_POINTS

    def test_uniform_count(self, c48, c36):
        assert len(c48.cocircuits) == 112
        assert len(c36.cocircuits) == 2 * 15

    def test_axioms_hold(self, c36):
        assert validate_cocircuit_axioms(c36.cocircuits).ok

    def test_missing_negative_breaks_c1(self, w3):
        vectors = set(w3.cocircuits) - {SignVector.from_string("++0")}
        report = validate_cocircuit_axioms(vectors)
        assert "C1" in {v.axiom for v in report.violations}

    def test_chirotope_and_point_oracles_agree(self, rng):
        for r in (2, 3, 4):
            config = random_configuration(rng, r, r + 3)
            assert cocircuits_from_chirotope(chirotope_from_points(config)).cocircuits == point_cocircuits(config)

    def test_structure(self, w3, c48):
        assert w3.is_uniform() and w3.is_simple() and w3.is_connected()
        assert c48.proper_elements() == list(range(8))
        assert c48.is_basis([0, 1, 2, 3])
        assert len(c48.bases()) == 70


class TestOperations:
    def test_w3_dual(self, w3):
        d = dual(w3)
        assert d.rank == 1
        assert strings(d) == sorted(["+-+", "-+-"])

    def test_double_dual(self, c36):
        assert dual(dual(c36)).cocircuits == c36.cocircuits

    def test_deletion_and_contraction(self, c36):
        deleted = delete_element(c36, 5)
        assert deleted.n == 5 and deleted.rank == 3
        assert deleted.cocircuits == cyclic(3, 5).cocircuits
        contracted = contract_element(c36, 0)
        assert contracted.rank == 2 and contracted.n == 5
        assert len(contracted.cocircuits) == 10

    def test_minor_rejects_overlap(self, c36):
        with pytest.raises(PreconditionError):
            minor(c36, delete=[0], contract=[0])

    def test_reorientation_is_an_involution(self, c36):
        assert reorient(reorient(c36, [1, 4]), [1, 4]).cocircuits == c36.cocircuits
        assert reorient(c36, [2]).chirotope != c36.chirotope

    def test_relabel_moves_entries(self, w3):
        moved = relabel(w3, [2, 0, 1])
        expected = {SignVector.from_string(t) for t in ("0-+", "--0", "+0+")}
        assert moved.cocircuits == expected | {-x for x in expected}
        assert validate_chirotope(moved.chirotope).ok

    def test_sum_of_w3(self, w3_sum):
        assert w3_sum.rank == 4 and w3_sum.n == 6
        assert len(w3_sum.cocircuits) == 12
        assert not w3_sum.is_connected()

    def test_general_position_and_u24(self, c36, w3):
        assert all(is_general_position(c36, e) for e in range(6))
        assert exists_u24_minor(c36)
        assert not exists_u24_minor(w3)

    def test_parallel_elements_are_not_in_general_position(self):
        om = om_from_points([(1, 0), (2, 0), (0, 1)])
        assert not is_general_position(om, 0)
        assert inseparability(om, 0, 1) is Inseparability.CONTRAVARIANT

    def test_antiparallel_elements_are_covariant(self):
        om = om_from_points([(1, 0), (-1, 0), (0, 1)])
        assert inseparability(om, 0, 1) is Inseparability.COVARIANT


class TestRealizableExtensions:
    def test_extension_through_two_lines(self, c36):
        config = cyclic_configuration(3, 6)
        ext = realizable_extend_through(config, [[0, 1], [2, 3]], seed=3)
        om = om_from_points(ext.config)
        zero_sets = {frozenset(x.zero_set()) for x in om.cocircuits}
        assert frozenset({0, 1, 6}) in zero_sets
        assert frozenset({2, 3, 6}) in zero_sets

    def test_too_many_targets(self):
        with pytest.raises(PreconditionError):
            realizable_extend_through(w3_configuration(), [[0], [1]], seed=1)


class TestCanonicalForm:
    def test_invariant_under_relabel_and_reorientation(self, c36):
        key = canonical_form(c36)
        assert canonical_form(relabel(c36, [3, 5, 0, 1, 4, 2])) == key
        assert canonical_form(reorient(c36, [0, 2])) == key
        assert is_exact_canonical(key)
        assert key.startswith("3 6:")

    def test_fixed_point(self, c36):
        key = canonical_form(c36)
        signs = key.split(":", 1)[1]
        again = cocircuits_from_chirotope(Chirotope.from_string(3, 6, signs))
        assert canonical_form(again) == key

    def test_hash_above_limit(self, c36):
        key = canonical_form(c36, max_n=4)
        assert not is_exact_canonical(key)
        assert canonical_form(relabel(c36, [1, 2, 3, 4, 5, 0]), max_n=4) == key

    def test_mutant_keys_survive_relabel_and_reorientation(self, c36):
        from src.faces.mutations import flip, mutations

        mutant = flip(c36, mutations(c36)[0])
        moved = reorient(relabel(mutant, [5, 3, 1, 0, 2, 4]), [1, 3])
        assert canonical_form(moved) == canonical_form(mutant)

    def test_precomputed_mutation_bases(self, c36):
        from src.faces.mutations import mutations

        moved = relabel(c36, [2, 4, 0, 5, 1, 3])
        bases = [c.basis for c in mutations(moved)]
        assert canonical_form(moved, mutation_bases=bases) == canonical_form(c36)

    def test_classes_partition_ground_set(self, c36):
        classes = element_classes(c36)
        assert sorted(e for c in classes for e in c) == list(range(6))

    def test_needs_chirotope(self, w3_sum):
        with pytest.raises(PreconditionError):
            canonical_form(w3_sum)

    @pytest.mark.slow
    def test_c48_fixed_point(self, c48):
        key = canonical_form(c48)
        again = cocircuits_from_chirotope(Chirotope.from_string(4, 8, key.split(":", 1)[1]))
        assert canonical_form(again) == key


class TestFiles:
    def test_chi_roundtrip(self, tmp_path, c36):
        path = tmp_path / "c36.chi"
        save(c36, path)
        loaded = load(path).om
        assert loaded.cocircuits == c36.cocircuits
        assert loaded.provenance is Provenance.FROM_FILE

    def test_cocircuit_file(self, tmp_path, w3_sum):
        path = tmp_path / "sum.ccj"
        save(w3_sum, path)
        assert load(path).om == w3_sum

    def test_points_file(self, tmp_path):
        path = tmp_path / "w3.pts"
        path.write_text("2 3\n1 1\n1 2\n1 3\n")
        loaded = load(path)
        assert loaded.config == ((1, 1), (1, 2), (1, 3))
        assert loaded.om.provenance is Provenance.FROM_POINTS

    def test_unknown_suffix(self, tmp_path):
        with pytest.raises(ParseError):
            load(tmp_path / "x.txt")
