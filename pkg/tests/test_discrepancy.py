from fractions import Fraction

import pytest

from diagramkit import (
    BudgetExceededError,
    SingularityClass,
    SingularSystemError,
    WeightedGraph,
    canonical_class,
    chain,
    classify_singularity,
    cycle,
    is_log_terminal_graph,
    log_discrepancies,
    star,
)
from diagramkit.diagrams import e9_tower
from oracles import brute_force_log_terminal

F = Fraction


class TestLogDiscrepancies:
    def test_minus_two_curve(self):
        assert log_discrepancies(chain([2])).f == (1,)

    @pytest.mark.parametrize("n", range(1, 13))
    def test_single_vertex_law(self, n):
        # (n - 2) + (1 - f)(-n) = 0  =>  f = 2/n
        assert log_discrepancies(chain([n])).f == (F(2, n),)

    def test_du_val_chain(self):
        disc = log_discrepancies(chain([2, 2]))
        assert disc.f == (1, 1)

    def test_genus_one_vertex(self):
        g = WeightedGraph([("a", 3, 1)])
        # (3 - 2 + 2) + (1 - f)(-3) = 0  =>  f = 0
        assert log_discrepancies(g).f == (0,)

    def test_parabolic_cycle_is_singular(self):
        with pytest.raises(SingularSystemError) as info:
            log_discrepancies(cycle([2, 2, 2]))
        assert info.value.rank == 2

    def test_resubstitution_identity(self, star_corpus_half):
        for g in star_corpus_half[:60]:
            disc = log_discrepancies(g)
            b = dict(zip(disc.ids, disc.b))
            k = canonical_class(g)
            for j in g.ids:
                lhs = F(k[j]) + b[j] * (-g.vertex(j).weight)
                lhs += sum(b[u] * m for u, m in g.adjacency[j].items())
                assert lhs == 0

    def test_extending_min_weight_chain_never_raises_min_f(self):
        # exact recomputation, not an assumed monotonicity
        for base_weights in ([2], [3], [2, 2], [3, 2], [4], [2, 3, 2]):
            base = chain(base_weights)
            base_min = log_discrepancies(base).min_f
            for w in (2, 3, 4):
                ext = chain(base_weights + [w])
                assert log_discrepancies(ext).min_f <= base_min


class TestClassify:
    def test_du_val_at_eps_half(self):
        out = classify_singularity(chain([2]), F(1, 2))
        assert out.strongest is SingularityClass.EPS_LOG_TERMINAL
        assert out.min_f == 1
        assert out.is_canonical and not out.is_terminal

    def test_weight_four_boundary(self):
        out = classify_singularity(chain([4]), F(1, 2))
        assert out.strongest is SingularityClass.EPS_LOG_CANONICAL
        assert SingularityClass.EPS_LOG_TERMINAL not in out.classes
        assert out.min_f == F(1, 2)

    def test_weight_five_below_eps(self):
        out = classify_singularity(chain([5]), F(1, 2))
        assert out.strongest is SingularityClass.KAWAMATA_LOG_TERMINAL
        assert SingularityClass.EPS_LOG_CANONICAL not in out.classes
        assert out.min_f == F(2, 5)

    def test_genus_one_is_log_canonical_only(self):
        g = WeightedGraph([("a", 3, 1)])
        out = classify_singularity(g, F(1, 2))
        assert out.strongest is SingularityClass.LOG_CANONICAL

    def test_none_of_these(self):
        g = WeightedGraph([("a", 3, 2)])  # f = (3 - 2 + 4 - 3)/(-3)... min f < 0
        out = classify_singularity(g, F(1, 2))
        assert out.min_f < 0
        assert out.strongest is SingularityClass.NONE_OF_THESE

    def test_convention_flag(self):
        # min f = 2/3: not canonical under the discrepancy reading,
        # but canonical and terminal under the literal one
        g = chain([3])
        strict = classify_singularity(g, F(1, 2))
        assert not strict.is_canonical
        literal = classify_singularity(g, F(1, 2), convention="literal")
        assert literal.is_canonical and literal.is_terminal

    def test_eps_validated(self):
        with pytest.raises(ValueError):
            classify_singularity(chain([2]), F(0))
        with pytest.raises(ValueError):
            classify_singularity(chain([2]), F(3, 2))


class TestLogTerminalGraph:
    def test_du_val_chain_true(self):
        assert is_log_terminal_graph(chain([2, 2])).ok

    def test_empty_graph_vacuous(self):
        assert is_log_terminal_graph(WeightedGraph([])).ok

    def test_e9_tower_failure_has_witness(self):
        report = is_log_terminal_graph(e9_tower(6))
        assert not report.ok
        assert report.witness is not None
        assert report.witness_min_f <= 0

    def test_genus_one_single_vertex_fails(self):
        g = WeightedGraph([("a", 2, 1)])
        report = is_log_terminal_graph(g)
        assert not report.ok and report.witness == ("a",)

    def test_budget_is_enforced(self):
        with pytest.raises(BudgetExceededError):
            is_log_terminal_graph(chain([2] * 6), budget=3)

    def test_matches_brute_force_oracle(self, random_corpus):
        small = [g for g in random_corpus if g.n <= 7][:60]
        assert small
        for g in small:
            assert is_log_terminal_graph(g).ok == brute_force_log_terminal(g)

    def test_witness_is_deterministic(self):
        g = e9_tower(6)
        first = is_log_terminal_graph(g)
        second = is_log_terminal_graph(g)
        assert first.witness == second.witness

    def test_boundary_star_graph(self):
        # (3,3,3)-star around a weight-2 center: min f exactly 0
        g = star(2, [3, 3], prefix="s")
        g = WeightedGraph(
            list(g.vertices) + [("t00", 2), ("t01", 2)],
            list(g.edges) + [("sc", "t00", 1), ("t00", "t01", 1)],
        )
        report = is_log_terminal_graph(g)
        assert not report.ok and report.witness_min_f == 0
