import random
import re

import pytest

from spectral_cycles import Bipartition, Graph
from spectral_cycles.cycles import (
    CycleWitness,
    PathAbsent,
    PathWitness,
    bipartite_path_between,
    claim1_bound_check,
    common_neighbors,
    extend_c5_to_c2k1,
    has_cycle_of_length,
    naive_cycle_oracle,
    odd_cycle_profile,
)
from spectral_cycles.families import (
    complete_bipartite,
    complete_graph,
    cycle_graph,
    kab_dot_k3,
    path_graph,
)


def petersen() -> Graph:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    return Graph(10, edges)


def random_bipartite(rng: random.Random, max_side: int = 6) -> tuple[Graph, Bipartition]:
    a = rng.randint(1, max_side)
    b = rng.randint(1, max_side)
    p = rng.uniform(0.2, 0.9)
    edges = [(u, a + v) for u in range(a) for v in range(b) if rng.random() < p]
    g = Graph(a + b, edges)
    return g, Bipartition(frozenset(range(a)), frozenset(range(a, a + b)))


def pentagon_on_core(case: str, a: int = 6, b: int = 6):
    """K_{a,b} core plus a pentagon attached per the named case.

    Returns (g, pentagon, h0, vmap, bip). The case is the number of pentagon
    vertices inside the core: three for i, two for ii, one for iii, none for
    iv (where two pentagon vertices instead send an edge into the core).
    """
    core = complete_bipartite(a, b)
    n0 = a + b
    bip = Bipartition(frozenset(range(a)), frozenset(range(a, n0)))
    vmap = tuple(range(n0))
    edges = core.edges()
    if case == "i":
        pent = (0, a, 1, n0, n0 + 1)
        edges += [(1, n0), (n0, n0 + 1), (n0 + 1, 0)]
        n = n0 + 2
    elif case == "ii":
        pent = (0, a, n0, n0 + 1, n0 + 2)
        edges += [(a, n0), (n0, n0 + 1), (n0 + 1, n0 + 2), (n0 + 2, 0)]
        n = n0 + 3
    elif case == "ii_same_side":
        pent = (0, n0, 1, n0 + 1, n0 + 2)
        edges += [(0, n0), (n0, 1), (1, n0 + 1), (n0 + 1, n0 + 2), (n0 + 2, 0)]
        n = n0 + 3
    elif case in ("iii", "iii_near"):
        # one anchor in the core; a far pentagon vertex also reaches the core,
        # on the opposite side for iii and on the anchor's side for iii_near
        pent = (0, n0, n0 + 1, n0 + 2, n0 + 3)
        edges += [
            (0, n0),
            (n0, n0 + 1),
            (n0 + 1, n0 + 2),
            (n0 + 2, n0 + 3),
            (n0 + 3, 0),
        ]
        edges += [(n0 + 2, a)] if case == "iii" else [(n0 + 1, 1)]
        n = n0 + 4
    elif case == "iv":
        pent = tuple(range(n0, n0 + 5))
        edges += [(n0 + i, n0 + (i + 1) % 5) for i in range(5)]
        edges += [(n0, 0), (n0 + 2, a)]
        n = n0 + 5
    else:
        raise ValueError(case)
    return Graph(n, edges), CycleWitness(pent), core, vmap, bip


class TestWitnessValidation:
    def test_good_cycle(self):
        CycleWitness((0, 1, 2, 3, 4)).validate(cycle_graph(5))

    def test_cycle_too_short(self):
        with pytest.raises(ValueError, match=">= 3"):
            CycleWitness((0, 1)).validate(complete_graph(3))

    def test_cycle_repeats(self):
        with pytest.raises(ValueError, match="repeats"):
            CycleWitness((0, 1, 0)).validate(complete_graph(3))

    def test_cycle_out_of_range(self):
        with pytest.raises(ValueError, match="out of range"):
            CycleWitness((0, 1, 5)).validate(complete_graph(3))

    def test_cycle_missing_closure(self):
        with pytest.raises(ValueError, match=r"missing cycle edge \(3,0\)"):
            CycleWitness((0, 1, 2, 3)).validate(path_graph(4))

    def test_good_path(self):
        PathWitness((0, 1, 2, 3)).validate(path_graph(4))

    def test_path_missing_edge(self):
        with pytest.raises(ValueError, match="missing path edge"):
            PathWitness((0, 2)).validate(path_graph(3))


class TestCycleSearch:
    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            has_cycle_of_length(complete_graph(4), 2)
        with pytest.raises(ValueError):
            has_cycle_of_length(complete_graph(4), 3, budget=0)

    def test_length_above_order_absent(self):
        res = has_cycle_of_length(complete_graph(4), 5)
        assert res.verdict == "absent"
        assert res.expansions == 0

    def test_bipartite_odd_shortcut(self):
        res = has_cycle_of_length(complete_bipartite(3, 3), 5)
        assert res.verdict == "absent"
        assert res.expansions == 0

    def test_petersen_profile_matches_oracle(self):
        # girth five, hypo-Hamiltonian: lengths 5, 6, 8, 9 only
        g = petersen()
        expected = {5, 6, 8, 9}
        for length in range(3, 11):
            res = has_cycle_of_length(g, length)
            oracle = naive_cycle_oracle(g, length)
            assert res.verdict == ("present" if length in expected else "absent")
            assert (oracle is not None) == (length in expected)
            if res.witness is not None:
                res.witness.validate(g)
                assert len(res.witness) == length

    def test_matches_oracle_on_corpus(self, connected_upto7):
        for n in range(3, 7):
            for g in connected_upto7[n]:
                for length in range(3, n + 1):
                    res = has_cycle_of_length(g, length)
                    oracle = naive_cycle_oracle(g, length)
                    assert res.verdict != "unknown"
                    assert (res.verdict == "present") == (oracle is not None)

    def test_tiny_budget_gives_unknown(self):
        res = has_cycle_of_length(complete_bipartite(8, 8), 16, budget=10)
        assert res.verdict == "unknown"
        assert res.witness is None
        assert res.expansions > 10

    def test_bipartite_never_yields_odd_witness(self):
        rng = random.Random("odd-cycle-invariant")
        for trial in range(10_000):
            g, _ = random_bipartite(rng)
            length = rng.choice([3, 5, 7])
            res = has_cycle_of_length(g, length)
            assert res.verdict == "absent", trial
            if trial < 200:
                assert naive_cycle_oracle(g, length) is None


class TestOddProfile:
    def test_glued_triangle_has_only_the_triangle(self):
        profile = odd_cycle_profile(kab_dot_k3(4, 4), 9)
        assert profile[3].verdict == "present"
        assert profile[3].witness.vertices == (4, 8, 9)
        for length in (5, 7, 9):
            assert profile[length].verdict == "absent"

    def test_seven_cycle(self):
        profile = odd_cycle_profile(cycle_graph(7), 7)
        assert {l: r.verdict for l, r in profile.items()} == {
            3: "absent",
            5: "absent",
            7: "present",
        }


class TestCommonNeighbors:
    def test_matching_removed(self):
        g = complete_bipartite(5, 5)
        edges = [e for e in g.edges() if e[1] - e[0] != 5]
        h = Graph(10, edges)
        assert common_neighbors(h, 0, 1) == (7, 8, 9)

    def test_cross_pair_in_bipartite_has_none(self):
        assert common_neighbors(complete_bipartite(3, 3), 0, 3) == ()

    def test_ascending(self):
        g = complete_graph(6)
        assert common_neighbors(g, 4, 5) == (0, 1, 2, 3)


class TestClaim1:
    def test_dense_corpus_meets_bound(self, dense_bipartite_small):
        theta = 1 / 321
        for g, bip in dense_bipartite_small:
            report = claim1_bound_check(g, bip, k=6, theta=theta)
            assert report.n == 80
            assert report.bound == pytest.approx((0.2 - 6 * theta) * 80)
            assert report.pairs_checked == 2 * (40 * 39 // 2)
            assert report.min_common >= 24
            assert report.meets_bound
            assert report.exceeds_k
            assert report.min_side in ("a", "b")
            u, v = report.min_pair
            assert common_neighbors(g, u, v) != ()

    def test_reports_minimum_pair(self):
        # remove one matching edge so the pair (0, 1) dips below the rest
        g = complete_bipartite(4, 4)
        edges = [e for e in g.edges() if e != (0, 4)]
        h = Graph(8, edges)
        bip = Bipartition(frozenset(range(4)), frozenset(range(4, 8)))
        report = claim1_bound_check(h, bip, k=1, theta=0.02)
        assert report.min_common == 3
        assert report.min_pair in {(0, 1), (0, 2), (0, 3)}

    def test_rejects_bad_theta_and_k(self):
        g = complete_bipartite(4, 4)
        bip = Bipartition(frozenset(range(4)), frozenset(range(4, 8)))
        with pytest.raises(ValueError, match="theta"):
            claim1_bound_check(g, bip, k=1, theta=0.2)
        with pytest.raises(ValueError, match="k must"):
            claim1_bound_check(g, bip, k=0, theta=0.01)

    def test_rejects_low_degree(self):
        g = path_graph(4)
        bip = Bipartition(frozenset({0, 2}), frozenset({1, 3}))
        with pytest.raises(ValueError, match="degree"):
            claim1_bound_check(g, bip, k=1, theta=0.01)

    def test_rejects_broken_bipartition(self):
        g = complete_bipartite(3, 3)
        bad = Bipartition(frozenset({0, 1, 2, 3}), frozenset({4, 5}))
        with pytest.raises(ValueError, match="inside one side"):
            claim1_bound_check(g, bad, k=1, theta=0.01)


class TestBipartitePath:
    BIP66 = Bipartition(frozenset(range(6)), frozenset(range(6, 12)))

    @pytest.mark.parametrize("order", [4, 6, 8, 10, 12])
    @pytest.mark.parametrize("mode", ["constructive", "exact"])
    def test_complete_bipartite_all_orders(self, order, mode):
        g = complete_bipartite(6, 6)
        witness = bipartite_path_between(g, self.BIP66, 0, 6, order, mode=mode)
        assert isinstance(witness, PathWitness)
        witness.validate(g)
        assert len(witness) == order
        assert witness.vertices[0] == 0
        assert witness.vertices[-1] == 6

    def test_order_validation(self):
        g = complete_bipartite(6, 6)
        for bad in (2, 5, 7):
            with pytest.raises(ValueError, match="order must be even"):
                bipartite_path_between(g, self.BIP66, 0, 6, bad)

    def test_order_above_n_is_precheck_absent(self):
        g = complete_bipartite(6, 6)
        res = bipartite_path_between(g, self.BIP66, 0, 6, 14)
        assert isinstance(res, PathAbsent)
        assert res.stage == "precheck"

    def test_endpoint_side_enforced(self):
        g = complete_bipartite(6, 6)
        with pytest.raises(ValueError, match="side_a"):
            bipartite_path_between(g, self.BIP66, 6, 0, 4)

    def test_unknown_mode_rejected(self):
        g = complete_bipartite(6, 6)
        with pytest.raises(ValueError, match="mode"):
            bipartite_path_between(g, self.BIP66, 0, 6, 4, mode="fast")

    def test_greedy_stalls_where_exact_succeeds(self):
        # on the 8-cycle the greedy family selection paints itself in
        g = cycle_graph(8)
        bip = Bipartition(frozenset({0, 2, 4, 6}), frozenset({1, 3, 5, 7}))
        greedy = bipartite_path_between(g, bip, 0, 7, 8)
        assert isinstance(greedy, PathAbsent)
        assert greedy.stage == "v1_1"
        exact = bipartite_path_between(g, bip, 0, 7, 8, mode="exact")
        assert isinstance(exact, PathWitness)
        exact.validate(g)

    def test_first_selection_can_stall(self):
        g = Graph(4, [(0, 3), (2, 1), (2, 3)])
        bip = Bipartition(frozenset({0, 2}), frozenset({1, 3}))
        res = bipartite_path_between(g, bip, 0, 3, 4)
        assert isinstance(res, PathAbsent)
        assert res.stage == "v2_1"

    def test_constructive_implies_exact(self):
        rng = random.Random("path-modes")
        stages = set()
        for _ in range(400):
            g, bip = random_bipartite(rng, max_side=5)
            v1 = rng.choice(sorted(bip.side_a))
            v2 = rng.choice(sorted(bip.side_b))
            order = rng.choice([4, 6, 8])
            greedy = bipartite_path_between(g, bip, v1, v2, order)
            if isinstance(greedy, PathWitness):
                greedy.validate(g)
                exact = bipartite_path_between(g, bip, v1, v2, order, mode="exact")
                assert isinstance(exact, PathWitness)
            else:
                stages.add(greedy.stage)
        # stall stages name the step that ran out of candidates
        assert all(re.fullmatch(r"precheck|v[12]_\d+", s) for s in stages)
        assert len(stages) >= 3

    def test_exact_absence_is_genuine(self):
        # the only way into vertex 4 is through the start vertex
        g = Graph(5, [(0, 3), (0, 4), (1, 3), (2, 3)])
        bip = Bipartition(frozenset({0, 1, 2}), frozenset({3, 4}))
        res = bipartite_path_between(g, bip, 0, 4, 4, mode="exact")
        assert isinstance(res, PathAbsent)


class TestExtension:
    CASE_LABEL = {"ii_same_side": "ii", "iii_near": "iii"}

    @pytest.mark.parametrize("case", ["i", "ii", "ii_same_side", "iii", "iii_near", "iv"])
    @pytest.mark.parametrize("k", [3, 4, 5])
    def test_all_cases_extend(self, case, k):
        g, pent, h0, vmap, bip = pentagon_on_core(case)
        result = extend_c5_to_c2k1(g, pent, h0, vmap, bip, k)
        assert result.witness is not None, (case, k, result.detail)
        result.witness.validate(g)
        assert len(result.witness) == 2 * k + 1
        assert result.case == self.CASE_LABEL.get(case, case)
        assert result.detail.endswith("pairs") or result.detail.endswith("anchor")

    def test_pentagon_identity_at_k2(self):
        g, pent, h0, vmap, bip = pentagon_on_core("iii")
        result = extend_c5_to_c2k1(g, pent, h0, vmap, bip, 2)
        assert result.case == "pentagon_identity"
        assert result.witness.vertices == pent.vertices

    def test_triangle_at_k1(self):
        # pentagon plus an ear over one pentagon edge
        g = Graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 0), (5, 1)])
        h0 = Graph(2, [(0, 1)])
        vmap = (2, 3)
        bip = Bipartition(frozenset({0}), frozenset({1}))
        result = extend_c5_to_c2k1(g, (0, 1, 2, 3, 4), h0, vmap, bip, 1)
        assert result.case == "triangle"
        assert sorted(result.witness.vertices) == [0, 1, 5]

    def test_triangle_free_neighborhood_reports_none(self):
        g, pent, h0, vmap, bip = pentagon_on_core("i")
        result = extend_c5_to_c2k1(g, pent, h0, vmap, bip, 1)
        assert result.case == "triangle"
        assert result.witness is None

    def test_small_core_stalls_with_case_label(self):
        g, pent, h0, vmap, bip = pentagon_on_core("iv", a=2, b=2)
        result = extend_c5_to_c2k1(g, pent, h0, vmap, bip, 4)
        assert result.witness is None
        assert result.case == "iv"
        assert "stalled" in result.detail

    def test_rejects_non_pentagon(self):
        g, _, h0, vmap, bip = pentagon_on_core("iii")
        with pytest.raises(ValueError):
            extend_c5_to_c2k1(g, (0, 12, 13), h0, vmap, bip, 3)

    def test_rejects_bad_k(self):
        g, pent, h0, vmap, bip = pentagon_on_core("iii")
        with pytest.raises(ValueError, match="k must"):
            extend_c5_to_c2k1(g, pent, h0, vmap, bip, 0)

    def test_rejects_non_induced_vmap(self):
        g, pent, h0, vmap, bip = pentagon_on_core("iii")
        h0_wrong = Graph(h0.n, h0.edges()[:-1])
        with pytest.raises(ValueError, match="induced"):
            extend_c5_to_c2k1(g, pent, h0_wrong, vmap, bip, 3)

    def test_rejects_repeating_vmap(self):
        g, pent, h0, vmap, bip = pentagon_on_core("iii")
        bad = (0,) + vmap[1:-1] + (0,)
        with pytest.raises(ValueError, match="repeats"):
            extend_c5_to_c2k1(g, pent, h0, bad, bip, 3)


class TestSingleAttachmentParity:
    """A pentagon tied to the core by one bridge cannot make longer odd cycles.

    Every cycle would have to cross the bridge twice, so nothing mixes core
    and pentagon vertices; core cycles are even, and the pentagon alone only
    offers the C5.
    """

    @staticmethod
    def bridged(a: int, b: int):
        core = complete_bipartite(a, b)
        n0 = a + b
        edges = core.edges()
        edges += [(n0 + i, n0 + (i + 1) % 5) for i in range(5)]
        edges += [(n0, 0)]
        g = Graph(n0 + 5, edges)
        pent = CycleWitness(tuple(range(n0, n0 + 5)))
        bip = Bipartition(frozenset(range(a)), frozenset(range(a, n0)))
        return g, pent, core, tuple(range(n0)), bip

    def test_extension_stalls(self):
        g, pent, h0, vmap, bip = self.bridged(6, 6)
        for k in (3, 4):
            result = extend_c5_to_c2k1(g, pent, h0, vmap, bip, k)
            assert result.witness is None
            assert result.case == "iv"

    def test_search_confirms_absence(self):
        g, _, _, _, _ = self.bridged(6, 6)
        for length in (7, 9):
            assert has_cycle_of_length(g, length).verdict == "absent"

    def test_oracle_confirms_on_small_analog(self):
        g, _, _, _, _ = self.bridged(3, 3)
        for length in (7, 9):
            assert naive_cycle_oracle(g, length) is None

    def test_second_attachment_restores_the_cycle(self):
        g, pent, h0, vmap, bip = pentagon_on_core("iv")
        result = extend_c5_to_c2k1(g, pent, h0, vmap, bip, 4)
        assert result.witness is not None
        assert len(result.witness) == 9
        assert has_cycle_of_length(g, 9).verdict == "present"
