import numpy as np
import pytest

from curvlab.catalog import FamilySpec, instantiate
from curvlab.connection import ConnectionSpec, curvature_of, ricci_and_scalar
from curvlab.flow import (
    FlowState,
    _structure_array,
    exact_lc_ricci,
    float_lc_ricci,
    flow_state_from_hermitian,
    hermitian_deviation,
    integrate_flow,
    ricci_rhs,
    trace_to_csv,
)
from curvlab.metric import MetricParams, build_metric
from curvlab.scalars import gr
from curvlab.tensors import INDICES

from conftest import rand_metric


def _real_frame_ricci(alg, g6_float):
    """Textbook oracle: Koszul formula and Ricci trace on a real frame."""
    basis = np.zeros((6, 6), dtype=complex)
    for k in range(3):
        basis[2 * k, k] = 1
        basis[2 * k, k + 3] = 1
        basis[2 * k + 1, k] = 1j
        basis[2 * k + 1, k + 3] = -1j
    binv = np.linalg.inv(basis.T)
    c = np.zeros((6, 6, 6), dtype=complex)
    for (i, h, k), v in alg.c.nonzero():
        c[i, h, k] = complex(float(v.re), float(v.im))
    f = np.zeros((6, 6, 6))
    for a in range(6):
        for b in range(6):
            coords = binv @ np.einsum("i,h,ihk->k", basis[a], basis[b], c)
            assert np.allclose(coords.imag, 0, atol=1e-10)
            f[a, b] = coords.real
    gram = (basis @ g6_float @ basis.T).real
    kos = 0.5 * (np.einsum("abd,dc->abc", f, gram)
                 - np.einsum("bcd,da->abc", f, gram)
                 + np.einsum("cad,db->abc", f, gram))
    gm = np.einsum("abc,cd->abd", kos, np.linalg.inv(gram))
    rop = (np.einsum("bcd,ade->abce", gm, gm)
           - np.einsum("acd,bde->abce", gm, gm)
           - np.einsum("abd,dce->abce", f, gm))
    return np.einsum("abca->bc", rop), basis


def _to_float(mat):
    return np.array([[complex(float(v.re), float(v.im)) for v in row] for row in mat])


def test_exact_matches_float_and_real_frame_oracle(rng):
    alg = instantiate(FamilySpec.make("Ni", rho=0, **{"lambda": 0}, D="i"))
    state = flow_state_from_hermitian(build_metric(rand_metric(rng)), alg)
    ric_exact = _to_float(exact_lc_ricci(state.g6, alg))
    ric_float = float_lc_ricci(state.as_float_matrix(), _structure_array(alg))
    assert np.allclose(ric_exact, ric_float, atol=1e-12)
    ric_real, basis = _real_frame_ricci(alg, state.as_float_matrix())
    assert np.allclose(ric_real, (basis @ ric_float @ basis.T).real, atol=1e-9)


def test_oracle_on_non_hermitian_state():
    alg = instantiate(FamilySpec.make("Sii", x="1/2"))
    state = flow_state_from_hermitian(build_metric(MetricParams.make(r2=2, s2=1, t2=1)), alg)
    g6 = [row[:] for row in state.g6]
    g6[0][0] = g6[0][0] + gr("1/10")
    g6[3][3] = g6[3][3] + gr("1/10")  # conjugation-real partner
    st = FlowState(0.0, g6, alg)
    st.validate()
    ric_exact = _to_float(exact_lc_ricci(g6, alg))
    ric_real, basis = _real_frame_ricci(alg, st.as_float_matrix())
    assert np.allclose(ric_real, (basis @ ric_exact @ basis.T).real, atol=1e-9)


def test_ric_lc_consistency_with_connection_module(rng):
    alg = instantiate(FamilySpec.make("Sv"))
    h = build_metric(rand_metric(rng))
    rd = ricci_and_scalar(curvature_of(ConnectionSpec.preset("lc"), h, alg), h)
    ric = exact_lc_ricci(flow_state_from_hermitian(h, alg).g6, alg)
    for i in INDICES:
        for j in INDICES:
            assert rd.ric_lc[i, j] == ric[i][j]


def test_rhs_zero_on_flat_structures(rng):
    torus = instantiate(FamilySpec.make("Np", rho=0))
    state = flow_state_from_hermitian(build_metric(rand_metric(rng)), torus)
    assert all(v.is_zero() for row in ricci_rhs(state) for v in row)

    g20 = instantiate(FamilySpec.make("Si", A="i"))
    state = flow_state_from_hermitian(build_metric(MetricParams.make(r2=2, s2=1, t2=3)), g20)
    assert all(v.is_zero() for row in ricci_rhs(state) for v in row)


def test_rhs_nonzero_on_h2():
    alg = instantiate(FamilySpec.make("Ni", rho=0, **{"lambda": 0}, D="i"))
    state = flow_state_from_hermitian(build_metric(MetricParams.make()), alg)
    rhs = ricci_rhs(state)
    assert any(not v.is_zero() for row in rhs for v in row)


def test_hermitian_deviation():
    alg = instantiate(FamilySpec.make("Np", rho=0))
    state = flow_state_from_hermitian(build_metric(MetricParams.make()), alg)
    assert hermitian_deviation(state.g6) == 0.0
    g6 = [row[:] for row in state.g6]
    g6[0][0] = gr("1/10")
    assert abs(hermitian_deviation(g6) - 0.1) < 1e-15
    m = state.as_float_matrix()
    m[1, 2] = 0.25j
    assert abs(hermitian_deviation(m) - 0.25) < 1e-15


def test_state_validation():
    alg = instantiate(FamilySpec.make("Np", rho=0))
    bad = np.zeros((6, 6), dtype=complex)
    bad[0, 1] = 1.0  # not symmetric
    with pytest.raises(ValueError):
        FlowState(0.0, bad, alg).validate()
    sym = np.eye(6, dtype=complex)  # symmetric, conjugation-real, but pure-type diag
    # pure-type identity has zero mixed block: not positive definite as a real metric
    with pytest.raises(ValueError):
        FlowState(0.0, sym, alg).validate()


def test_torus_flow_constant(rng):
    alg = instantiate(FamilySpec.make("Np", rho=0))
    state = flow_state_from_hermitian(build_metric(rand_metric(rng)), alg)
    trace = integrate_flow(state, horizon=1.0, step=0.01)
    assert trace.completed and len(trace.samples) == 101
    assert max(s.deviation for s in trace.samples) <= 1e-12
    drift = max(np.abs(s.g6 - trace.samples[0].g6).max() for s in trace.samples)
    assert drift <= 1e-12
    assert trace.samples[-1].deviation == 0.0


def test_g20_kahler_flow_constant():
    alg = instantiate(FamilySpec.make("Si", A="i"))
    state = flow_state_from_hermitian(build_metric(MetricParams.make(r2=2, s2=1, t2="3/2")), alg)
    trace = integrate_flow(state, horizon=1.0, step=0.01)
    assert max(s.deviation for s in trace.samples) <= 1e-12
    drift = max(np.abs(s.g6 - trace.samples[0].g6).max() for s in trace.samples)
    assert drift <= 1e-12


def test_h2_flow_records_deviation_column():
    alg = instantiate(FamilySpec.make("Ni", rho=0, **{"lambda": 0}, D="i"))
    state = flow_state_from_hermitian(build_metric(MetricParams.make()), alg)
    trace = integrate_flow(state, horizon=1.0, step=0.01)
    assert len(trace.samples) == 101
    assert all(s.ricci_norm >= 0 for s in trace.samples)
    # no guarantee here: the connection is not Kahler-like, deviation may grow
    csv_text = trace_to_csv(trace)
    lines = csv_text.strip().splitlines()
    assert len(lines) == 102
    header = lines[0].split(",")
    assert header[0] == "t" and header[-2:] == ["deviation", "ricci_norm"]
    assert len(header) == 1 + 21 + 2


def test_integrator_rejects_bad_steps():
    alg = instantiate(FamilySpec.make("Np", rho=0))
    state = flow_state_from_hermitian(build_metric(MetricParams.make()), alg)
    with pytest.raises(ValueError):
        integrate_flow(state, horizon=1.0, step=0.0)
    with pytest.raises(ValueError):
        integrate_flow(state, horizon=-1.0, step=0.1)


def test_rk4_order_round_trip():
    # perturb the Kahler stationary point, then integrate the true field
    # forward and time-reversed; the exact round trip is the identity
    alg = instantiate(FamilySpec.make("Si", A="i"))
    g_star = flow_state_from_hermitian(
        build_metric(MetricParams.make(r2=2, s2=1, t2="3/2")), alg).as_float_matrix()
    rng = np.random.default_rng(0)
    pert = rng.normal(size=(6, 6)) * 0.05
    pert = 0.5 * (pert + pert.T)
    bar_image = np.array([[np.conj(pert[(i + 3) % 6, (j + 3) % 6]) for j in range(6)]
                          for i in range(6)])
    pert = 0.5 * (pert + bar_image)
    g0 = g_star + pert
    FlowState(0.0, g0, alg).validate()

    c = _structure_array(alg)
    forward = lambda m: -float_lc_ricci(m, c)
    backward = lambda m: +float_lc_ricci(m, c)

    def defect(step):
        out = integrate_flow(FlowState(0.0, g0.copy(), alg), horizon=0.5, step=step,
                             rhs=forward)
        assert out.completed
        back = integrate_flow(FlowState(0.0, out.samples[-1].g6.copy(), alg),
                              horizon=0.5, step=step, rhs=backward)
        assert back.completed
        return np.abs(back.samples[-1].g6 - g0).max()

    d1, d2 = defect(0.05), defect(0.025)
    assert d1 > 0
    assert d1 / d2 >= 8.0
