"""Invariant Hermitian metrics: construction, positivity, torsion forms, classification.

The fundamental form in the (1,0)-coframe is

    2*omega = i r2 phi^{1 1b} + i s2 phi^{2 2b} + i t2 phi^{3 3b}
              + u phi^{1 2b} - conj(u) phi^{2 1b}
              + v phi^{2 3b} - conj(v) phi^{3 2b}
              + z phi^{1 3b} - conj(z) phi^{3 1b},

and the sign conventions are pinned in docs/conventions.md:
omega(x, y) = g(x, J y) with J phi_a = -i phi_a, so the Hermitian block is
g(phi_a, phi_bbar) = -i Omega_ab with Omega the coefficient matrix above,
which is positive-definite exactly when the stated inequalities hold.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .algebra import (
    LieAlgebraCx,
    d_component,
    exterior_d,
    form_type_project,
    wedge,
    wedge_component,
)
from .scalars import I, GaussianRational, Rat, gr, rat_from_str
from .tensors import BARRED, INDICES, MultiTensor, UNBARRED, is_barred

__all__ = [
    "MetricParams",
    "MetricValidationError",
    "HermitianData",
    "build_metric",
    "torsion_forms",
    "MetricClassification",
    "classify_metric",
    "j_factor",
    "metric_params_to_json",
    "metric_params_from_json",
]

_HALF = Rat(1, 2)
_MINUS_I = GaussianRational(0, -1)


def j_factor(idx: int) -> GaussianRational:
    """Eigenvalue of the complex structure on a frame vector, as used by the
    torsion forms: -i on the unbarred frame, +i on the barred frame.

    This orientation is pinned jointly with omega(x, y) = g(x, Jy) by the
    golden component tables and by the structural characterizations of the
    named connections (see docs/conventions.md); flipping it relabels the
    torsion forms as (-T, -C) and misplaces the Chern point.
    """
    return I if is_barred(idx) else _MINUS_I


class MetricValidationError(ValueError):
    """Raised when metric parameters violate a positivity constraint."""

    def __init__(self, constraint: str):
        super().__init__(f"invalid Hermitian metric: violated {constraint}")
        self.constraint = constraint


@dataclass(frozen=True)
class MetricParams:
    """Coefficients (r2, s2, t2, u, v, z) of the generic invariant Hermitian form."""

    r2: Rat
    s2: Rat
    t2: Rat
    u: GaussianRational
    v: GaussianRational
    z: GaussianRational

    @classmethod
    def make(cls, r2="1", s2="1", t2="1", u="0", v="0", z="0") -> "MetricParams":
        def as_rat(x):
            return rat_from_str(x) if isinstance(x, str) else Rat(x)

        return cls(as_rat(r2), as_rat(s2), as_rat(t2), gr(u), gr(v), gr(z))

    def constraint_failures(self):
        """Names of the positivity constraints this parameter set violates."""
        r2, s2, t2, u, v, z = self.r2, self.s2, self.t2, self.u, self.v, self.z
        bad = []
        if not r2 > 0:
            bad.append("r2 > 0")
        if not s2 > 0:
            bad.append("s2 > 0")
        if not t2 > 0:
            bad.append("t2 > 0")
        if not r2 * s2 > u.abs2():
            bad.append("r2*s2 > |u|^2")
        if not r2 * t2 > z.abs2():
            bad.append("r2*t2 > |z|^2")
        if not s2 * t2 > v.abs2():
            bad.append("s2*t2 > |v|^2")
        if not determinant_scaled(self).re > 0:
            bad.append("r2*s2*t2 + 2*Re(i*conj(u)*conj(v)*z) > t2*|u|^2 + r2*|v|^2 + s2*|z|^2")
        return bad


def determinant_scaled(p: MetricParams) -> GaussianRational:
    """8*i*det(Omega) = r2 s2 t2 - r2|v|^2 - s2|z|^2 - t2|u|^2 + 2 Re(i conj(u) conj(v) z)."""
    triple = I * p.u.conjugate() * p.v.conjugate() * p.z
    value = (p.r2 * p.s2 * p.t2
             - p.r2 * p.v.abs2()
             - p.s2 * p.z.abs2()
             - p.t2 * p.u.abs2()
             + 2 * triple.re)
    return GaussianRational(value)


def _omega_matrix(p: MetricParams):
    """The 3x3 coefficient matrix Omega with omega(phi_a, phi_bbar) = Omega[a][b]."""
    ih = GaussianRational(0, _HALF)
    half = GaussianRational(_HALF)
    return [
        [ih * gr(p.r2), half * p.u, half * p.z],
        [-half * p.u.conjugate(), ih * gr(p.s2), half * p.v],
        [-half * p.z.conjugate(), -half * p.v.conjugate(), ih * gr(p.t2)],
    ]


def _invert3(m):
    """Exact inverse of a 3x3 GaussianRational matrix via the adjugate."""
    a, b, c = m[0]
    d, e, f = m[1]
    g, h, i = m[2]
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    if det.is_zero():
        raise ZeroDivisionError("singular 3x3 matrix")
    cof = [
        [e * i - f * h, c * h - b * i, b * f - c * e],
        [f * g - d * i, a * i - c * g, c * d - a * f],
        [d * h - e * g, b * g - a * h, a * e - b * d],
    ]
    return [[cof[r][s] / det for s in range(3)] for r in range(3)]


@dataclass(frozen=True)
class HermitianData:
    """A validated invariant Hermitian structure: g, its inverse, and omega."""

    params: MetricParams
    g: MultiTensor
    g_inv: MultiTensor
    omega: MultiTensor
    det_scaled: GaussianRational

    def g_rows(self):
        """Sparse rows of g: rows[K] = [(L, g_KL), ...]."""
        rows = [[] for _ in INDICES]
        for (k, l), v in self.g.nonzero():
            rows[k].append((l, v))
        return rows

    def g_inv_rows(self):
        rows = [[] for _ in INDICES]
        for (k, l), v in self.g_inv.nonzero():
            rows[k].append((l, v))
        return rows


def build_metric(p: MetricParams) -> HermitianData:
    """Validate the positivity constraints and assemble g, g^{-1}, and omega.

    Raises MetricValidationError naming the first violated inequality.
    """
    bad = p.constraint_failures()
    if bad:
        raise MetricValidationError(bad[0])

    om = _omega_matrix(p)

    omega = MultiTensor(2)
    g = MultiTensor(2)
    for a in range(3):
        for b in range(3):
            w = om[a][b]
            if w.is_zero():
                continue
            omega[a, b + 3] = w
            omega[b + 3, a] = -w
            gv = _MINUS_I * w  # omega(x, y) = g(x, Jy) with J phi_a = -i phi_a
            g[a, b + 3] = gv
            g[b + 3, a] = gv

    # block inverse: if g = [[0, G], [G^T, 0]] then g^{-1} = [[0, (G^{-1})^T], [G^{-1}, 0]]
    gblock = [[g[a, b + 3] for b in range(3)] for a in range(3)]
    ginv_block = _invert3(gblock)
    g_inv = MultiTensor(2)
    for a in range(3):
        for b in range(3):
            w = ginv_block[a][b]
            if w.is_zero():
                continue
            g_inv[a + 3, b] = w
            g_inv[b, a + 3] = w

    return HermitianData(p, g, g_inv, omega, determinant_scaled(p))


def torsion_forms(h: HermitianData, alg: LieAlgebraCx):
    """The torsion 3-forms of the connection family.

    T(x, y, z) = -d(omega)(Jx, Jy, Jz) and C(x, y, z) = d(omega)(Jx, y, z),
    with J acting as multiplication by +/- i on the frame.  T is fully skew;
    C is skew only in its last two slots.
    """
    domega = exterior_d(h.omega, alg)
    t = MultiTensor(3)
    c = MultiTensor(3)
    for idx, w in domega.nonzero():
        i0, i1, i2 = idx
        t[idx] = -(j_factor(i0) * j_factor(i1) * j_factor(i2)) * w
        c[idx] = j_factor(i0) * w
    return t, c


@dataclass(frozen=True)
class MetricClassification:
    kahler: bool
    balanced: bool
    pluriclosed: bool

    def as_dict(self):
        return {"kahler": self.kahler, "balanced": self.balanced, "pluriclosed": self.pluriclosed}


def classify_metric(h: HermitianData, alg: LieAlgebraCx) -> MetricClassification:
    """Kahler (d omega = 0), balanced (d omega ^ omega = 0), pluriclosed (del delbar omega = 0)."""
    domega = exterior_d(h.omega, alg)
    kahler = domega.is_zero()
    if kahler:
        return MetricClassification(True, True, True)

    balanced = all(
        wedge_component(domega, h.omega, idx).is_zero()
        for idx in itertools.combinations(INDICES, 5)
    )

    # del delbar omega is the (2,2) part of d applied to the (1,2) part of d omega
    delbar = form_type_project(domega, 2)
    pluriclosed = True
    for ii in itertools.combinations(UNBARRED, 2):
        for jj in itertools.combinations(BARRED, 2):
            idx = tuple(sorted(ii + jj))
            if not d_component(delbar, alg, idx).is_zero():
                pluriclosed = False
                break
        if not pluriclosed:
            break

    return MetricClassification(kahler, balanced, pluriclosed)


def balanced_via_omega_squared(h: HermitianData, alg: LieAlgebraCx) -> bool:
    """Independent balanced test: d(omega ^ omega) = 0."""
    omega2 = wedge(h.omega, h.omega)
    return all(
        d_component(omega2, alg, idx).is_zero()
        for idx in itertools.combinations(INDICES, 5)
    )


# -- JSON wire format -------------------------------------------------------

def metric_params_to_json(p: MetricParams) -> str:
    rec = {
        "r2": str(p.r2), "s2": str(p.s2), "t2": str(p.t2),
        "u": str(p.u), "v": str(p.v), "z": str(p.z),
    }
    return json.dumps(rec, separators=(",", ":"))


def metric_params_from_json(text: str) -> MetricParams:
    rec = json.loads(text)
    return MetricParams.make(**rec)
