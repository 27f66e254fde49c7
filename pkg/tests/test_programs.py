import pytest

from src.errors import NotAnEdgeError, NotComodularError, NotInSeparatorError, PreconditionError
from src.programs.cycles import (
    analyze_cycle,
    cycle_tope_facts,
    mutation_cocircuits_in_cycles,
    reduce_cycle_chordless,
    verify_cycle,
    very_strong_component_report,
    very_strong_components,
)
from src.programs.program import (
    DirectedCycleWitness,
    Program,
    cocircuit_graph,
    edge_direction,
    eliminate,
    euclidean_all,
    exchange_cross_check,
    is_euclidean,
    is_euclidean_om,
    is_totally_non_euclidean,
    valid_pairs,
)
from src.signs.sign_vector import Sign, SignVector


def sv(text):
    return SignVector.from_string(text)


class TestElimination:
    def test_w3_elimination(self, w3):
        assert eliminate(w3, sv("-0+"), sv("++0"), 0) == sv("0++")

    def test_not_in_separator(self, w3):
        with pytest.raises(NotInSeparatorError):
            eliminate(w3, sv("+0-"), sv("++0"), 0)

    def test_not_comodular(self, c36):
        x = c36.ordered_cocircuits[0]
        e = min(x.support())
        with pytest.raises(NotComodularError):
            eliminate(c36, x, -x, e)


class TestCocircuitGraph:
    def test_w3_program(self, w3):
        program = Program(w3, 0, 1)
        graph = cocircuit_graph(program)
        assert set(graph.vertices) == {sv("+0-"), sv("++0")}
        assert len(graph.edges) == 1
        assert edge_direction(program, sv("+0-"), sv("++0")) is Sign.PLUS
        assert graph.direction(sv("++0"), sv("+0-")) is Sign.MINUS
        assert is_euclidean(program).euclidean

    def test_vertex_count(self, c48):
        assert len(cocircuit_graph(Program(c48, 0, 1)).vertices) == 35

    def test_positive_and_negative_parts(self, w3):
        graph = cocircuit_graph(Program(w3, 0, 2))
        assert [graph.vertices[i] for i in graph.negative_part()] == [sv("+0-")]
        assert [graph.vertices[i] for i in graph.positive_part()] == []

    def test_not_an_edge(self, w3):
        program = Program(w3, 0, 1)
        with pytest.raises(NotAnEdgeError):
            edge_direction(program, sv("+0-"), sv("+0-"))
        with pytest.raises(NotAnEdgeError):
            edge_direction(program, sv("0--"), sv("++0"))

    def test_invalid_programs(self, w3):
        with pytest.raises(PreconditionError):
            Program(w3, 1, 1)
        assert len(valid_pairs(w3)) == 6

    def test_export(self, w3):
        graph = cocircuit_graph(Program(w3, 0, 1)).to_networkx()
        assert graph.number_of_nodes() == 2 and graph.number_of_edges() == 1


class TestEuclideanness:
    def test_realizable_programs_have_no_cycles(self, c36, c48):
        assert all(v.euclidean for v in euclidean_all(c36).values())
        assert is_euclidean_om(c48)
        assert not is_totally_non_euclidean(c36)

    def test_exchanging_target_and_infinity(self, c36):
        assert exchange_cross_check(c36) == []

    def test_random_realizable_batch(self, rng):
        from src.matroid.realizable import om_from_points, random_configuration

        for r, n in ((3, 6), (4, 7), (3, 7)):
            assert is_euclidean_om(om_from_points(random_configuration(rng, r, n)))

    def test_euclidean_program_has_singleton_components(self, c36):
        program = Program(c36, 0, 1)
        assert all(len(c) == 1 for c in very_strong_components(program))
        assert very_strong_component_report(program) == []


class TestCycles:
    def test_short_witness_is_not_a_cycle(self, w3):
        program = Program(w3, 0, 1)
        witness = DirectedCycleWitness((sv("+0-"), sv("++0")), (sv("0--"), sv("0++")))
        assert not verify_cycle(program, witness)
        with pytest.raises(PreconditionError):
            reduce_cycle_chordless(program, witness)



def _strict_chords(graph, cycle):
    k = len(cycle)
    return [
        (i, j)
        for i in range(k)
        for j in range(i + 2, k)
        if not (i == 0 and j == k - 1)
        and graph.has_edge(cycle[i], cycle[j])
        and graph.direction(cycle[i], cycle[j]) != Sign.ZERO
    ]


class TestEightPointCycle:
    def test_non_euclidean_programs(self, mutant48):
        failing = sorted(pair for pair, verdict in euclidean_all(mutant48).items() if not verdict.euclidean)
        assert (0, 2) in failing
        assert len(failing) == 8
        assert all((f, g) in failing for g, f in failing)
        assert not is_totally_non_euclidean(mutant48)

    def test_directed_cycle(self, mutant48):
        program = Program(mutant48, 0, 2)
        verdict = is_euclidean(program)
        assert not verdict.euclidean
        assert verify_cycle(program, verdict.witness)

        reduced = reduce_cycle_chordless(program, verdict.witness)
        assert verify_cycle(program, reduced)
        assert len(reduced) <= len(verdict.witness)
        assert _strict_chords(cocircuit_graph(program), reduced.cocircuits) == []

        _, on_simplicial, uses_all = cycle_tope_facts(program, reduced)
        assert not on_simplicial
        assert not uses_all
        assert mutation_cocircuits_in_cycles(program) == []

    def test_strong_components(self, mutant48):
        program = Program(mutant48, 0, 2)
        cyclic = [c for c in very_strong_components(program) if len(c) > 1]
        assert sum(len(c) for c in cyclic) == 12
        assert very_strong_component_report(program)

    def test_cycle_report(self, mutant48):
        program = Program(mutant48, 0, 2)
        reduced = reduce_cycle_chordless(program, is_euclidean(program).witness)
        report = analyze_cycle(program, reduced)
        assert report.length == len(reduced)
        assert len(report.elements) == 8
        assert report.cycle == [x.to_string() for x in reduced.cocircuits]
        assert report.elements[0].constant_sign and report.elements[0].signs == "+"
        assert not report.on_single_simplicial_tope
