import json
import math

import pytest

from oddspec.constructions import (FamilySpec, complete, cycle, fixtures, join_clique_empty, t2_plus_edge,
                                   turan_t2, wheel)
from oddspec.graph import induced_subgraph, is_bipartite
from oddspec.verify import (CheckReport, StabilityCertificate, expand_corpus, fact1_observation, fact2_bound,
                            fact2_check, greedy_bipartite_extract, join_exceeds_half, join_threshold_sweep,
                            run_suite, theorem2_certificate_check, triangle_threshold_search)


def test_fact2_examples():
    r = fact2_check(complete(6).graph)
    assert r.status == "pass"
    assert fact2_bound(5, 6) == pytest.approx(6)
    assert r.slack == pytest.approx(14, abs=1e-9)
    assert fact2_bound(2, 5) < 0 and fact2_check(cycle(5).graph).status == "pass"
    for n in (4, 9, 30):
        r = fact2_check(turan_t2(n).graph)
        assert r.status == "pass" and r.witnesses["triangles"] == 0


def test_triangle_threshold_examples():
    corpus = [("join5_2", join_clique_empty(5, 2).graph)]
    corpus += [(f"t2e{n}", t2_plus_edge(n, n)) for n in (4, 7, 12, 25)]
    corpus += [(f"t2_{n}", turan_t2(n).graph) for n in (4, 9)]
    rep = triangle_threshold_search(corpus)
    by_id = {r.graph_id: r for r in rep.results}
    assert by_id["join5_2"].status == "pass"
    assert sorted(by_id["join5_2"].witnesses["triangle"]) in ([0, 1, 2], [0, 1, 3], [0, 1, 4])
    for n in (4, 7, 12, 25):
        assert by_id[f"t2e{n}"].status == "pass"
    for n in (4, 9):
        assert by_id[f"t2_{n}"].status == "na"


def test_fact1_examples():
    obs = fact1_observation(complete(5).graph)
    assert obs.applicable and obs.found == [4, 5]
    obs = fact1_observation(wheel(6).graph)
    assert obs.t_range == (4, 4) and obs.found == [4]
    obs = fact1_observation(cycle(5).graph)
    # 3*delta = 6 >= n, so the hypothesis holds, but the length window is empty
    assert obs.applicable and obs.vacuous and obs.found == []
    obs = fact1_observation(turan_t2(8).graph)
    assert not obs.applicable


@pytest.mark.parametrize("n", [4, 10, 50, 100])
def test_theorem2_t2_full_vertex_set(n):
    theta = 1e-5
    cert = StabilityCertificate(theta, tuple(range(n)))
    chk = theorem2_certificate_check(turan_t2(n).graph, cert)
    c = theta ** (1 / 3)
    assert c == pytest.approx(0.021544, abs=1e-6)
    assert chk.order_bound == pytest.approx(0.9138226 * n, rel=1e-6)
    assert chk.degree_bound == pytest.approx(0.3491896 * n, rel=1e-6)
    assert chk.premise and chk.bipartite and chk.passed


def test_theorem2_failures():
    n = 20
    g = t2_plus_edge(n, 0)
    cert = StabilityCertificate(1e-5, tuple(range(n)))
    chk = theorem2_certificate_check(g, cert)
    assert not chk.bipartite and not chk.passed
    half = StabilityCertificate(1e-5, tuple(range(0, n, 2)))
    chk = theorem2_certificate_check(turan_t2(n).graph, half)
    assert chk.order_slack < 0 and not chk.passed


def test_theta_range():
    with pytest.raises(ValueError):
        StabilityCertificate(2.0 ** -16, (0,))
    with pytest.raises(ValueError):
        StabilityCertificate(0.0, (0,))


def test_greedy_bipartite_extract():
    g = turan_t2(9).graph
    assert greedy_bipartite_extract(g) == list(range(9))
    assert len(greedy_bipartite_extract(cycle(5).graph)) == 4
    for seed in range(5):
        g = t2_plus_edge(20, seed)
        s = greedy_bipartite_extract(g)
        assert len(s) >= 19 and is_bipartite(induced_subgraph(g, s))


@pytest.mark.parametrize("name", sorted(fixtures()))
def test_greedy_output_always_bipartite(name):
    g = fixtures()[name]
    assert is_bipartite(induced_subgraph(g, greedy_bipartite_extract(g)))


def test_join_exceeds_half_matches_closed_form():
    for n in range(4, 120):
        for k in range(1, n + 1):
            mu = ((k - 1) + math.sqrt((k - 1) ** 2 + 4 * k * (n - k))) / 2
            if abs(mu - n / 2) > 1e-9:
                assert join_exceeds_half(n, k) == (mu > n / 2), (n, k)


def test_sweep_examples():
    res = join_threshold_sweep([4, 20, 200])
    e4, e20, e200 = res.entries
    assert e20.k_min == 5
    assert e20.mu_below == pytest.approx(9.639, abs=5e-4)
    assert e20.mu_at_k_min == pytest.approx(10.888, abs=5e-4)
    brute = min(k for k in range(1, 5) if join_exceeds_half(4, k))
    assert e4.k_min == brute
    assert abs(e200.ratio - (3 - math.sqrt(5)) / 4) <= 0.02
    with pytest.raises(ValueError):
        join_threshold_sweep([3])


def test_run_suite_fixtures_all_pass():
    corpus = sorted(fixtures().items())
    for stmt in ("lemma1", "lemma2", "fact2", "triangle_threshold", "theorem1"):
        rep = run_suite(stmt, corpus)
        assert not rep.failed, stmt
        assert rep.summary["total"] == len(corpus)


def test_run_suite_observational_statements():
    corpus = sorted(fixtures().items())
    for stmt in ("fact1", "theorem2"):
        rep = run_suite(stmt, corpus)
        assert rep.summary["fail"] == 0


def test_run_suite_theorem3_join_lattice():
    from oddspec.extremal import premise_check
    from oddspec.verify import DEFAULT_THEOREM3_PARAMS
    corpus = [FamilySpec("join_clique_empty", n, k) for n in (128, 160) for k in (22, 24, 28, 30)]
    rep = run_suite("theorem3", corpus)
    assert not rep.failed
    for spec, r in zip(corpus, rep.results):
        holds = premise_check(spec.build(), DEFAULT_THEOREM3_PARAMS).holds
        assert r.status == ("pass" if holds else "na"), r.graph_id
    assert rep.summary["pass"] >= 4


def test_run_suite_unknown_statement():
    with pytest.raises(ValueError):
        run_suite("lemma9", [])


def test_report_is_deterministic_and_keyed():
    corpus = expand_corpus("gnp", 15, 7, n=20, p=0.3)
    a = run_suite("lemma1", corpus, 7)
    b = run_suite("lemma1", corpus, 7)
    assert a.to_json() == b.to_json()
    d = json.loads(a.to_json())
    assert set(d) == {"statement", "corpus", "seed", "results", "summary"}
    assert "wall_time" in json.loads(a.to_json(timing=True))
    rev = run_suite("lemma1", list(reversed(corpus)), 7)
    assert sorted(r.slack for r in rev.results) == sorted(r.slack for r in a.results)


def test_failures_carry_counterexample():
    # feed a deliberately false statement through the report machinery
    from oddspec.verify import _result
    g = cycle(5).graph
    r = _result("c5", g, -1.0)
    assert r.status == "fail" and r.counterexample.startswith("5 5\n")
    rep = CheckReport("lemma1", [], 0, [r])
    assert rep.failed and "counterexample" in rep.to_json()


def test_csv_summary():
    rep = run_suite("fact2", sorted(fixtures().items()))
    lines = rep.to_csv().splitlines()
    assert lines[0].startswith("statement,seed,total")
    assert lines[1].startswith("fact2,")
