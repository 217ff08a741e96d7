"""Invariant Ricci flow: the ODE reduction of dg/dt = -Ric(g) on a fixed frame.

The flow state is a symmetric, conjugation-real 6x6 component matrix of the
metric in the complexified frame; it may carry nonzero pure-type blocks
g_{ij}, so the machinery here evaluates the Levi-Civita curvature of an
arbitrary invariant (pseudo-)metric rather than going through the Hermitian
constructor.  The first evaluation at t = 0 is exact; the integration
itself runs in floating point with a classical fourth-order scheme.

hermitian_deviation monitors max |g_{ij}| over the pure-type block; for
initial data whose Levi-Civita connection is Kahler-like the flow must keep
it at zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import LieAlgebraCx
from .metric import HermitianData
from .scalars import GaussianRational, ZERO
from .tensors import DIM, INDICES, bar, index_name

__all__ = [
    "FlowState",
    "FlowSample",
    "FlowTrace",
    "exact_lc_ricci",
    "ricci_rhs",
    "hermitian_deviation",
    "integrate_flow",
    "flow_state_from_hermitian",
    "trace_to_csv",
]

_HALF = GaussianRational("1/2")


# -- exact path ----------------------------------------------------------------

def _invert6_exact(g):
    """Gauss-Jordan inverse of a 6x6 GaussianRational matrix."""
    a = [row[:] for row in g]
    inv = [[GaussianRational(1) if i == j else ZERO for j in range(DIM)] for i in range(DIM)]
    for col in range(DIM):
        pivot = next((r for r in range(col, DIM) if not a[r][col].is_zero()), None)
        if pivot is None:
            raise ZeroDivisionError("singular metric matrix")
        a[col], a[pivot] = a[pivot], a[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        scale = a[col][col]
        a[col] = [x / scale for x in a[col]]
        inv[col] = [x / scale for x in inv[col]]
        for r in range(DIM):
            if r == col or a[r][col].is_zero():
                continue
            factor = a[r][col]
            a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
            inv[r] = [x - factor * y for x, y in zip(inv[r], inv[col])]
    return inv


def exact_lc_ricci(g6, alg: LieAlgebraCx):
    """Riemannian Ricci of an arbitrary symmetric invariant metric, exactly.

    Ric(y, z) = tr(x -> R(x, y) z) with R(x, y) = [nabla_x, nabla_y] - nabla_[x,y];
    the trace needs no metric, so only the Christoffel raise uses g^{-1}.
    """
    ginv = _invert6_exact(g6)
    c = alg.c

    low = [[[ZERO] * DIM for _ in INDICES] for _ in INDICES]
    for (x, y, b), val in c.nonzero():
        hv = _HALF * val
        for l in INDICES:
            gv = g6[b][l]
            if gv.is_zero():
                continue
            term = hv * gv
            low[x][y][l] = low[x][y][l] + term
            low[l][x][y] = low[l][x][y] - term
            low[x][l][y] = low[x][l][y] - term

    gm = [[[ZERO] * DIM for _ in INDICES] for _ in INDICES]
    for i in INDICES:
        for h in INDICES:
            row = low[i][h]
            for k in INDICES:
                acc = ZERO
                for l in INDICES:
                    v = row[l]
                    if not v.is_zero():
                        w = ginv[l][k]
                        if not w.is_zero():
                            acc = acc + v * w
                gm[i][h][k] = acc

    ric = [[ZERO] * DIM for _ in INDICES]
    for h in INDICES:
        for k in INDICES:
            acc = ZERO
            for a in INDICES:
                # [R(phi_a, phi_h) phi_k]^a
                for b in INDICES:
                    v = gm[h][k][b]
                    if not v.is_zero():
                        acc = acc + v * gm[a][b][a]
                    w = gm[a][k][b]
                    if not w.is_zero():
                        acc = acc - w * gm[h][b][a]
                for b, cv in alg.bracket_row(a, h):
                    w = gm[b][k][a]
                    if not w.is_zero():
                        acc = acc - cv * w
            ric[h][k] = acc
    return ric


# -- float path ----------------------------------------------------------------

def _structure_array(alg: LieAlgebraCx) -> np.ndarray:
    c = np.zeros((DIM, DIM, DIM), dtype=complex)
    for (i, h, k), v in alg.c.nonzero():
        c[i, h, k] = complex(float(v.re), float(v.im))
    return c


def float_lc_ricci(g6: np.ndarray, c: np.ndarray) -> np.ndarray:
    ginv = np.linalg.inv(g6)
    low = 0.5 * (np.einsum("ihb,bl->ihl", c, g6)
                 - np.einsum("hlb,bi->ihl", c, g6)
                 - np.einsum("ilb,bh->ihl", c, g6))
    gm = np.einsum("ihl,lk->ihk", low, ginv)
    rop = (np.einsum("hkb,iba->ihka", gm, gm)
           - np.einsum("ikb,hba->ihka", gm, gm)
           - np.einsum("ihb,bka->ihka", c, gm))
    return np.einsum("ahka->hk", rop)


# -- states and traces -----------------------------------------------------------

@dataclass
class FlowState:
    """Metric components at one flow time; exact entries at t = 0, floats after."""

    t: float
    g6: object  # 6x6 nested list of GaussianRational, or complex ndarray
    structure: LieAlgebraCx

    @property
    def is_exact(self) -> bool:
        return not isinstance(self.g6, np.ndarray)

    def as_float_matrix(self) -> np.ndarray:
        if not self.is_exact:
            return np.array(self.g6, dtype=complex)
        return np.array([[complex(float(v.re), float(v.im)) for v in row]
                         for row in self.g6], dtype=complex)

    def validate(self):
        """Symmetry, conjugation-reality, and positive-definiteness as a real metric."""
        m = self.as_float_matrix()
        if not np.allclose(m, m.T, atol=1e-12):
            raise ValueError("flow metric must be symmetric")
        conj = np.array([[np.conj(m[bar(i), bar(j)]) for j in INDICES] for i in INDICES])
        if not np.allclose(m, conj, atol=1e-12):
            raise ValueError("flow metric must be conjugation-real")
        if not _real_positive_definite(m):
            raise ValueError("flow metric must be positive-definite as a real metric")


def flow_state_from_hermitian(h: HermitianData, alg: LieAlgebraCx) -> FlowState:
    g6 = [[h.g[i, j] for j in INDICES] for i in INDICES]
    return FlowState(0.0, g6, alg)


def _real_basis_gram(m: np.ndarray) -> np.ndarray:
    # real frame X_k = phi_k + phi_kb, Y_k = i(phi_k - phi_kb)
    basis = np.zeros((DIM, DIM), dtype=complex)
    for k in range(3):
        basis[2 * k, k] = 1.0
        basis[2 * k, k + 3] = 1.0
        basis[2 * k + 1, k] = 1.0j
        basis[2 * k + 1, k + 3] = -1.0j
    gram = basis @ m @ basis.T
    return gram.real


def _real_positive_definite(m: np.ndarray) -> bool:
    gram = _real_basis_gram(m)
    try:
        np.linalg.cholesky(gram)
        return True
    except np.linalg.LinAlgError:
        return False


def ricci_rhs(state: FlowState):
    """-Ric of the current metric; exact for exact states, floating otherwise."""
    if state.is_exact:
        ric = exact_lc_ricci(state.g6, state.structure)
        return [[-v for v in row] for row in ric]
    return -float_lc_ricci(state.g6, _structure_array(state.structure))


def hermitian_deviation(g6) -> float:
    """Max modulus over the pure-type components g_{ij}, i, j in {1, 2, 3}."""
    dev = 0.0
    for i in range(3):
        for j in range(3):
            v = g6[i][j] if not isinstance(g6, np.ndarray) else g6[i, j]
            if isinstance(v, GaussianRational):
                mag = abs(complex(float(v.re), float(v.im)))
            else:
                mag = abs(v)
            dev = max(dev, mag)
    return dev


@dataclass(frozen=True)
class FlowSample:
    t: float
    g6: np.ndarray
    deviation: float
    ricci_norm: float


@dataclass
class FlowTrace:
    samples: list = field(default_factory=list)
    halt_reason: str | None = None

    @property
    def completed(self) -> bool:
        return self.halt_reason is None


def integrate_flow(g0: FlowState, horizon: float, step: float, rhs=None) -> FlowTrace:
    """Classical fourth-order integration of dg/dt = rhs(g) from g0.

    By default rhs is -Ric; a custom field (same signature, ndarray in and
    out) supports the integrator-order tests.  The trace records every
    accepted step with its Hermitian deviation and the Frobenius norm of
    the Ricci term; it truncates with a halt reason if positivity fails.
    """
    if step <= 0 or horizon <= 0:
        raise ValueError("horizon and step must be positive")
    g0.validate()
    c = _structure_array(g0.structure)
    default_field = rhs is None
    if default_field:
        rhs = lambda m: -float_lc_ricci(m, c)

    def project(m):
        # keep the flow inside symmetric conjugation-real matrices (these are
        # preserved exactly by the equation; this only damps rounding noise)
        m = 0.5 * (m + m.T)
        conj = np.array([[np.conj(m[bar(i), bar(j)]) for j in INDICES] for i in INDICES])
        return 0.5 * (m + conj)

    n_steps = int(round(horizon / step))
    m = g0.as_float_matrix()
    trace = FlowTrace()
    if g0.is_exact and default_field:
        # the t = 0 record comes from the exact evaluation
        ric0 = exact_lc_ricci(g0.g6, g0.structure)
        norm0 = float(np.linalg.norm(np.array(
            [[complex(float(v.re), float(v.im)) for v in row] for row in ric0])))
    else:
        norm0 = float(np.linalg.norm(rhs(m)))
    trace.samples.append(FlowSample(0.0, m.copy(), hermitian_deviation(m), norm0))
    t = 0.0
    for _ in range(n_steps):
        k1 = rhs(m)
        k2 = rhs(project(m + 0.5 * step * k1))
        k3 = rhs(project(m + 0.5 * step * k2))
        k4 = rhs(project(m + step * k3))
        m_next = project(m + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4))
        if not _real_positive_definite(m_next):
            trace.halt_reason = f"positivity lost at t={t + step:.6g}"
            break
        m = m_next
        t += step
        trace.samples.append(FlowSample(t, m.copy(), hermitian_deviation(m),
                                        float(np.linalg.norm(rhs(m)))))
    return trace


def trace_to_csv(trace: FlowTrace) -> str:
    """CSV with t, the 21 independent metric components, deviation, and ricci_norm."""
    pairs = [(i, j) for i in INDICES for j in range(i, DIM)]
    header = ["t"] + [f"g_{index_name(i)}_{index_name(j)}" for i, j in pairs]
    header += ["deviation", "ricci_norm"]
    lines = [",".join(header)]
    for s in trace.samples:
        row = [f"{s.t:.12g}"]
        for i, j in pairs:
            v = s.g6[i, j]
            row.append(f"{v.real:.12g}{v.imag:+.12g}j")
        row.append(f"{s.deviation:.12g}")
        row.append(f"{s.ricci_norm:.12g}")
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"
