import pytest

from src.errors import PreconditionError, StaleCertificateError
from src.faces.mutations import (
    adjacency_table,
    base_cocircuit,
    flip,
    flip_basis,
    l_statistic,
    mutation_flip_valid,
    mutation_from_basis,
    mutations,
    shared_cocircuits,
)
from src.faces.topes import covectors, is_simplicial_tope, is_tope, simplicial_topes, topes
from src.matroid.operations import contract_element, dual, minor
from src.signs.sign_vector import SignVector


def sv(text):
    return SignVector.from_string(text)


class TestTopes:
    def test_w3_topes(self, w3):
        found = topes(w3)
        assert len(found) == 6
        assert all(t.size == 2 for t in found)
        assert simplicial_topes(w3) == frozenset(t.vector for t in found)

    def test_covectors_include_cocircuits(self, w3):
        assert w3.cocircuits <= covectors(w3)
        assert len(covectors(w3)) == 12

    def test_tope_recognition(self, w3):
        assert is_tope(w3, sv("+--"))
        assert not is_tope(w3, sv("+-+"))
        assert is_simplicial_tope(w3, sv("++-"))
        with pytest.raises(PreconditionError):
            is_simplicial_tope(w3, sv("+-+"))

    def test_rank3_tope_count(self, c36):
        # n great circles in general position cut the sphere into n(n-1) + 2 regions
        assert len(topes(c36)) == 6 * 5 + 2


class TestMutations:
    def test_w3_has_three(self, w3):
        certificates = mutations(w3, cross_check=True)
        assert [c.basis for c in certificates] == [(0, 1), (0, 2), (1, 2)]
        assert adjacency_table(w3, certificates) == {0: 2, 1: 2, 2: 2}
        assert l_statistic(w3, certificates) == 2

    def test_base_cocircuit(self, w3):
        assert base_cocircuit(w3, (0, 2), 0) == sv("++0")
        assert base_cocircuit(w3, (0, 2), 2) == sv("0++")

    def test_certificate_tope_is_composition(self, w3):
        cert = mutation_from_basis(w3, (0, 1))
        assert cert.tope in (sv("+--"), sv("-++"))
        assert all(x.conforms_to(cert.tope) for x in cert.cocircuits)
        assert cert.oriented(0, 1).tope[0] == 1

    def test_c48_every_element_has_rank_many(self, c48):
        certificates = mutations(c48, cross_check=True)
        table = adjacency_table(c48, certificates)
        assert min(table.values()) >= 4
        assert mutation_from_basis(c48, (0, 1, 2, 3)) is not None

    def test_direct_sum_counting(self, w3, w3_sum):
        assert len(mutations(w3_sum)) == 9
        assert set(adjacency_table(w3_sum).values()) == {6}
        assert len(mutations(w3_sum)) >= 3 * w3_sum.n - 9

    def test_mutations_share_at_most_one_cocircuit(self, c36):
        certificates = mutations(c36)
        for i, a in enumerate(certificates):
            for b in certificates[i + 1:]:
                shared = shared_cocircuits(a, b)
                assert len(shared) <= 1
                if shared:
                    assert len(set(a.basis) ^ set(b.basis)) == 2

    def test_dual_has_as_many_mutations(self, w3, c36):
        assert len(mutations(dual(w3))) == len(mutations(w3))
        assert len(mutations(dual(c36))) == len(mutations(c36))

    def test_non_basis(self):
        from src.matroid.realizable import om_from_points

        om = om_from_points([(1, 0), (2, 0), (0, 1)])
        with pytest.raises(PreconditionError):
            mutation_from_basis(om, (0, 1))


class TestFlips:
    def test_flip_is_an_involution(self, w3, c36):
        assert flip_basis(flip_basis(w3, (0, 1)), (0, 1)).cocircuits == w3.cocircuits
        basis = mutations(c36)[0].basis
        assert mutation_flip_valid(c36, basis)
        assert flip_basis(flip_basis(c36, basis), basis).cocircuits == c36.cocircuits

    def test_flip_changes_one_sign(self, w3):
        assert flip_basis(w3, (0, 1)).chirotope.to_string() == "-++"

    def test_stale_certificate(self, w3):
        cert = mutation_from_basis(w3, (0, 1))
        mutant = flip(w3, cert)
        with pytest.raises(StaleCertificateError):
            flip(mutant, cert)

    def test_non_mutation_basis_cannot_flip(self, c48):
        bases = {c.basis for c in mutations(c48)}
        other = next(b for b in c48.bases() if b not in bases)
        with pytest.raises(PreconditionError):
            flip_basis(c48, other)

    def test_contraction_commutes_with_flip(self, c36):
        cert = mutations(c36)[0]
        g = next(e for e in range(6) if e not in cert.basis)
        assert minor(flip(c36, cert), contract={g}).cocircuits == contract_element(c36, g).cocircuits
