import pandas as pd
import pytest

from src.classify.mutation_graph import flip_distance_to_euclidean, mutation_graph_bfs
from src.classify.report import classify
from src.classify.search import (
    MandelWitness,
    is_las_vergnas,
    mandel_witness_search,
    witness_certifies_minor,
    witness_extension,
)
from src.classify.summary import reports_frame, summary_table
from src.errors import PreconditionError
from src.faces.mutations import flip_basis
from src.matroid.operations import delete_element
from src.programs.program import is_euclidean_om


class TestClassify:
    def test_w3(self, w3):
        report = classify(w3)
        assert report.realizable_by_construction
        assert report.euclidean_all_programs and not report.totally_non_euclidean
        assert report.las_vergnas
        assert report.L == 2
        assert report.mutation_count == 3
        assert report.adjacency == {0: 2, 1: 2, 2: 2}
        assert report.mandel_status == "witnessed"
        assert report.mandel_witness.kind == "lexicographic"
        assert report.mandel_witness.spec == "0:+,1:+"
        assert report.chain_violations() == []

    def test_dual_and_bound(self, c36):
        report = classify(c36, mandel=False, with_dual=True, canonical=True)
        assert report.mandel_status == "skipped"
        assert report.mutation_lower_bound == 6
        assert report.mutation_count >= 6
        assert report.L >= 3
        assert report.canonical.startswith("3 6:")
        assert report.dual.rank == 3 and report.dual.n == 6
        assert report.dual.mutation_count == report.mutation_count
        assert report.chain_violations() == []

    def test_serializes(self, w3):
        dumped = classify(w3).model_dump(mode="json")
        assert dumped["mandel_witness"]["spec"] == "0:+,1:+"
        assert dumped["dual"] is None

    def test_disconnected_sum(self, w3_sum):
        report = classify(w3_sum, mandel=False)
        assert not report.connected
        assert report.mutation_count == 9
        assert report.mutation_lower_bound is None
        assert is_las_vergnas(w3_sum)


class TestMandelSearch:
    def test_first_lexicographic_witness(self, w3, c36):
        assert mandel_witness_search(w3).spec == "0:+,1:+"
        witness = mandel_witness_search(c36)
        assert witness.kind == "lexicographic" and witness.element == 6

    def test_zero_budget_is_undetermined(self, c36):
        assert mandel_witness_search(c36, max_candidates=0) is None

    def test_rebuilds_extension(self, c36):
        witness = mandel_witness_search(c36)
        ext = witness_extension(c36, witness)
        assert delete_element(ext, witness.element).cocircuits == c36.cocircuits

    def test_witness_survives_minors(self, c36):
        witness = mandel_witness_search(c36)
        assert witness_certifies_minor(c36, witness, delete=[5])
        assert witness_certifies_minor(c36, witness, contract=[4])

    def test_non_uniform_is_skipped(self, w3_sum):
        witness = MandelWitness(kind="lexicographic", spec="0:+,1:+", element=6)
        assert witness.flip_basis is None
        assert mandel_witness_search(w3_sum) is None


class TestMutationGraph:
    def test_rank3_six_points(self, c36):
        graph = mutation_graph_bfs(c36, max_nodes=50, max_depth=10)
        assert graph.complete and graph.stopped_by is None
        assert graph.exact_keys
        assert len(graph) == 4
        assert graph.is_connected()
        assert all(node.euclidean for node in graph.nodes.values())
        assert all(node.L >= 3 for node in graph.nodes.values())
        assert graph.nodes[graph.seed_key].depth == 0

    def test_budget_marks_incomplete(self, c36):
        graph = mutation_graph_bfs(c36, max_nodes=1, max_depth=10, classify_nodes=False)
        assert len(graph) == 1
        assert not graph.complete and graph.stopped_by == "max_nodes"
        assert graph.nodes[graph.seed_key].euclidean is None

    def test_depth_zero(self, c36):
        graph = mutation_graph_bfs(c36, max_nodes=50, max_depth=0, classify_nodes=False)
        assert len(graph) == 1 and graph.stopped_by == "max_depth"

    def test_needs_uniform_seed(self, w3_sum):
        with pytest.raises(PreconditionError):
            mutation_graph_bfs(w3_sum)

    def test_flip_distance(self, w3, c36):
        assert flip_distance_to_euclidean(w3) == 0
        assert flip_distance_to_euclidean(c36, radius=0) == 0

    def test_non_euclidean_has_euclidean_mutant(self, mutant48):
        assert flip_distance_to_euclidean(mutant48, radius=0) is None
        assert flip_distance_to_euclidean(mutant48, radius=1) == 1
        assert is_euclidean_om(flip_basis(mutant48, (0, 1, 2, 6)))
        assert not is_euclidean_om(flip_basis(mutant48, (0, 3, 5, 6)))


class TestSummary:
    def test_table(self, w3, c36):
        reports = [classify(w3, mandel=False), classify(c36, mandel=False)]
        frame = reports_frame(reports)
        assert list(frame["rank"]) == [2, 3]
        table = summary_table(reports)
        euclidean = table[table["class"] == "euclidean"].set_index("rank")
        assert euclidean.loc[2, "L_min"] == 2
        assert pd.isna(euclidean.loc[2, "mutation_floor"])
        assert euclidean.loc[3, "mutation_floor"] == 6
        assert euclidean.loc[3, "L_min"] >= 3
        assert "mandel" not in set(table["class"])

    def test_empty(self):
        assert summary_table([]).empty
