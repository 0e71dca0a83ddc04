import math

import pytest

from oddspec.constructions import _rng, join_clique_empty, star, turan_t2
from oddspec.extremal import (ParameterError, ProcedureParams, check_theorem3_conclusion, premise_check,
                              run_procedure_p, validate_params)
from oddspec.graph import build
from oddspec.spectral import spectral_radius

DEMO_PARAMS = ProcedureParams(0.25, 0.5, 0.4375, 0.0)


def test_gate_k0_boundary():
    gate = validate_params(DEMO_PARAMS, 128)
    assert gate.satisfied and gate.n_min == 128
    with pytest.raises(ParameterError):
        validate_params(DEMO_PARAMS, 127)


def test_gate_theorem1_parameters():
    gate = validate_params(ProcedureParams(1 / 10, 1 / 2, 1 / 2, 1), 9200)
    assert gate.satisfied and gate.n_min == pytest.approx(9200)


def test_gate_lists_every_violation():
    with pytest.raises(ParameterError) as exc:
        validate_params(ProcedureParams(0.3, 0.6, 0.2, -1), 10)
    v = exc.value.violations
    assert "0 < 4*alpha <= 1" in v and "0 < 2*beta <= 1" in v
    assert "1/2 - alpha/4 <= gamma < 1" in v and "K >= 0" in v
    # K < 0 makes n_min negative, so the size clause still holds
    assert len(v) == 4


def test_gate_non_strict_warns_only():
    gate = validate_params(ProcedureParams(0.3, 0.5, 0.45, 0, strict=False), 10)
    assert not gate.satisfied
    assert gate.violations == ["0 < 4*alpha <= 1", "n >= (42K+4)/(alpha^2 beta)"]


def test_premise_join():
    pc = premise_check(join_clique_empty(128, 24).graph, DEMO_PARAMS)
    assert pc.mu == pytest.approx((23 + math.sqrt(10513)) / 2, abs=1e-9)
    assert pc.mu == pytest.approx(62.765, abs=2e-3)
    assert pc.mu_bound == 56 and pc.delta == 24 and pc.delta_bound == 24
    assert pc.holds


def test_premise_t2_fails_on_degree():
    pc = premise_check(turan_t2(128).graph, DEMO_PARAMS)
    assert pc.delta == 64 and not pc.delta_ok and not pc.holds


def test_premise_empty_graph():
    pc = premise_check(build(128, []), DEMO_PARAMS)
    assert pc.mu == 0 and not pc.mu_ok


def test_procedure_join_trace():
    g = join_clique_empty(128, 24).graph
    tr = run_procedure_p(g, DEMO_PARAMS)
    assert tr.k == 1
    step = tr.steps[0]
    assert step.deleted_vertex == 24  # lowest-id vertex of the independent side
    assert step.delta_k == 24
    r = spectral_radius(g)
    assert r.x[24] / r.x[0] == pytest.approx(24 / r.mu, abs=1e-9)
    assert r.x[24] / r.x[0] == pytest.approx(0.382, abs=1e-3)
    assert tr.branch == "ii"
    assert len(tr.final_subgraph) == 127 and 24 not in tr.final_subgraph
    assert tr.mu_final == pytest.approx((23 + math.sqrt(10417)) / 2, abs=1e-9)
    assert tr.delta_final == 24


def test_procedure_trace_replay_is_byte_identical():
    g = join_clique_empty(128, 24).graph
    assert run_procedure_p(g, DEMO_PARAMS).to_json() == run_procedure_p(g, DEMO_PARAMS).to_json()


def test_procedure_zero_steps_when_guard_false():
    g = turan_t2(40).graph
    tr = run_procedure_p(g, ProcedureParams(0.25, 0.5, 0.4375, 0, strict=False))
    assert tr.k == 0 and tr.branch == "ii" and tr.final_subgraph == list(range(40))
    chk = check_theorem3_conclusion(tr, DEMO_PARAMS)
    assert chk.checks["in[0]"] == 0
    assert chk.checks["branch_ii_mu"] == pytest.approx(20 - 0.4375 * 40, abs=1e-9)


def test_procedure_star_non_strict():
    g = star(100).graph
    tr = run_procedure_p(g, ProcedureParams(0.25, 0.1, 0.4375, 0, strict=False))
    assert [s.deleted_vertex for s in tr.steps] == list(range(1, 11))
    assert tr.branch == "i"


def test_strict_rejects_failed_premise():
    with pytest.raises(ParameterError):
        run_procedure_p(turan_t2(128).graph, DEMO_PARAMS)
    tr = run_procedure_p(turan_t2(128).graph, DEMO_PARAMS, override=True)
    assert tr.k == 0


def test_conclusion_join():
    g = join_clique_empty(128, 24).graph
    tr = run_procedure_p(g, DEMO_PARAMS)
    chk = check_theorem3_conclusion(tr, DEMO_PARAMS, g)
    assert chk.passed and chk.asserted and chk.branch == "ii"
    assert chk.checks["branch_ii_delta"] == pytest.approx(24 - 23.8125)
    assert tr.mu_final > 55.5625
    assert chk.checks["in[0]"] == 0.0


def _lowered_t2(n, seed):
    """T2(n) with vertex 0 cut down to a few neighbours: premises hold for
    the demo parameters when n >= 128."""
    rng = _rng(seed)
    a, b = range(n // 2), range(n // 2, n)
    keep = int(rng.integers(1, int(0.1875 * n) + 1))
    nb0 = set(rng.choice(list(b), size=keep, replace=False).tolist())
    edges = [(i, j) for i in a for j in b if i != 0 or j in nb0]
    return build(n, edges)


@pytest.mark.parametrize("seed", range(6))
def test_strict_conclusion_on_perturbed_t2(seed):
    n = 128 + 17 * seed
    g = _lowered_t2(n, seed)
    assert premise_check(g, DEMO_PARAMS).holds
    tr = run_procedure_p(g, DEMO_PARAMS)
    assert tr.steps[0].deleted_vertex == 0
    chk = check_theorem3_conclusion(tr, DEMO_PARAMS, g)
    assert chk.passed, chk.failures()
    ratios = tr.normalized_mu()
    assert all(b - a >= -1e-9 for a, b in zip(ratios, ratios[1:]))


def test_deleted_entries_below_uniform():
    g = join_clique_empty(200, 32).graph
    tr = run_procedure_p(g, DEMO_PARAMS)
    assert tr.k > 1
    for s in tr.steps:
        assert s.min_entry <= 1 / math.sqrt(200 - s.k) + 1e-9
