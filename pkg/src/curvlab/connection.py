"""Christoffel symbols, curvature, Ricci traces, and the torsion Bianchi identity.

The two-parameter family of metric connections is

    Gamma^{eps,rho}_{IH}^K = Gamma^{LC}_{IH}^K + eps g^{KL} T_{IHL} + rho g^{KL} C_{IHL},

with the Levi-Civita symbols

    Gamma^{LC}_{IH}^K = 1/2 c_{IH}^K - 1/2 g^{KA} g_{BI} c_{HA}^B - 1/2 g^{KA} g_{BH} c_{IA}^B.

The Hermitian (Gauduchon) connections sit on the line eps + rho = 1/2.
The curvature operator is R(x, y) = [nabla_x, nabla_y] - nabla_[x,y]; the
stored (4,0)-tensor is R_{IHKL} = g(R(phi_I, phi_H) phi_L, phi_K), the
component orientation that reproduces the golden closed-form tables
(see docs/conventions.md).  The Riemannian Ricci trace ric_lc keeps the
standard operator orientation, so the Ricci flow below has its usual sign.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .algebra import LieAlgebraCx
from .metric import HermitianData, torsion_forms
from .scalars import ZERO, GaussianRational, Rat, gr, rat_from_str
from .tensors import (
    DIM,
    INDICES,
    MultiTensor,
    UNBARRED,
    all_indices,
    bar,
    index_name,
    is_barred,
    parse_index,
)

__all__ = [
    "ConnectionSpec",
    "PRESETS",
    "ChristoffelTable",
    "christoffel",
    "CurvatureTensor",
    "curvature",
    "curvature_of",
    "RicciData",
    "ricci_and_scalar",
    "torsion_and_bianchi_defect",
    "curvature_to_json",
    "curvature_from_json",
]

_HALF = Rat(1, 2)

PRESETS = {
    "lc": (Rat(0), Rat(0)),
    "chern": (Rat(0), Rat(1, 2)),
    "bismut": (Rat(1, 2), Rat(0)),
    "anti-bismut": (Rat(-1, 2), Rat(0)),
    "first-canonical": (Rat(1, 4), Rat(1, 4)),
    "minimal-gauduchon": (Rat(1, 6), Rat(1, 3)),
}


@dataclass(frozen=True)
class ConnectionSpec:
    """A point (eps, rho) in the plane of metric connections, optionally named."""

    eps: Rat
    rho: Rat
    name: str | None = None

    @classmethod
    def preset(cls, name: str) -> "ConnectionSpec":
        key = name.strip().lower()
        if key == "minimal":
            key = "minimal-gauduchon"
        if key not in PRESETS:
            raise ValueError(f"unknown connection preset {name!r}; known: {sorted(PRESETS)}")
        eps, rho = PRESETS[key]
        return cls(eps, rho, key)

    @classmethod
    def gauduchon(cls, eps) -> "ConnectionSpec":
        """The Hermitian connection with parameter eps on the line eps + rho = 1/2."""
        e = rat_from_str(eps) if isinstance(eps, str) else Rat(eps)
        for key, (pe, pr) in PRESETS.items():
            if pe == e and pr == _HALF - e:
                return cls(pe, pr, key)
        return cls(e, _HALF - e)

    @classmethod
    def parse(cls, text: str) -> "ConnectionSpec":
        """Parse a preset name or an explicit 'eps=a/b,rho=c/d' pair."""
        s = text.strip()
        if "=" not in s:
            return cls.preset(s)
        fields = {}
        for item in s.split(","):
            key, _, val = item.partition("=")
            key = key.strip()
            if key not in ("eps", "rho") or not val:
                raise ValueError(f"bad connection spec {text!r}; expected eps=a/b,rho=c/d")
            fields[key] = rat_from_str(val)
        if "eps" not in fields:
            raise ValueError(f"bad connection spec {text!r}: missing eps")
        if "rho" not in fields:
            return cls.gauduchon(fields["eps"])
        return cls(fields["eps"], fields["rho"])

    @property
    def is_gauduchon(self) -> bool:
        return self.eps + self.rho == _HALF

    @property
    def is_lc(self) -> bool:
        return self.eps == 0 and self.rho == 0

    def label(self) -> str:
        if self.name:
            return self.name
        return f"eps={self.eps},rho={self.rho}"

    def as_dict(self):
        return {"eps": str(self.eps), "rho": str(self.rho), "name": self.name}


@dataclass(frozen=True)
class ChristoffelTable:
    """Raised symbols Gamma_{IH}^K plus the lowered table Gamma_{IH,L} = Gamma_{IH}^A g_{AL}."""

    spec: ConnectionSpec
    gamma: MultiTensor
    lowered: MultiTensor


def christoffel(spec: ConnectionSpec, h: HermitianData, alg: LieAlgebraCx) -> ChristoffelTable:
    g = h.g
    g_rows = h.g_rows()
    g_inv_rows = h.g_inv_rows()
    half = GaussianRational(_HALF)

    # lowered Levi-Civita: 1/2 (c_{IH}^B g_{BL} - c_{HL}^B g_{BI} - c_{IL}^B g_{BH})
    low = MultiTensor(3)
    for (x, y, b), val in alg.c.nonzero():
        hv = half * val
        for (l, gv) in g_rows[b]:
            term = hv * gv
            # c_{IH}^B g_{BL} contributes at (I,H,L) = (x,y,l)
            low[x, y, l] = low[x, y, l] + term
            # -c_{HL}^B g_{BI} contributes at (I,H,L) = (l,x,y)
            low[l, x, y] = low[l, x, y] - term
            # -c_{IL}^B g_{BH} contributes at (I,H,L) = (x,l,y)
            low[x, l, y] = low[x, l, y] - term

    if spec.eps != 0 or spec.rho != 0:
        t_form, c_form = torsion_forms(h, alg)
        eps = GaussianRational(spec.eps)
        rho = GaussianRational(spec.rho)
        if spec.eps != 0:
            for idx, tv in t_form.nonzero():
                low[idx] = low[idx] + eps * tv
        if spec.rho != 0:
            for idx, cv in c_form.nonzero():
                low[idx] = low[idx] + rho * cv

    gamma = MultiTensor(3)
    for (i, hh, l), lv in low.nonzero():
        for (k, giv) in g_inv_rows[l]:
            gamma[i, hh, k] = gamma[i, hh, k] + lv * giv

    return ChristoffelTable(spec, gamma, low)


@dataclass(frozen=True)
class CurvatureTensor:
    """The full (4,0)-curvature R_{IHKL} of one connection."""

    spec: ConnectionSpec
    tensor: MultiTensor

    def component(self, i, h, k, l) -> GaussianRational:
        return self.tensor[i, h, k, l]


def curvature(gamma: ChristoffelTable, h: HermitianData, alg: LieAlgebraCx) -> CurvatureTensor:
    """Assemble the (4,0)-curvature in the pinned component orientation.

    g(R(phi_I, phi_H) phi_K, phi_A) = Gamma_{HK}^B Gamma_{IB,A}
        - Gamma_{IK}^B Gamma_{HB,A} - c_{IH}^B Gamma_{BK,A},
    and the stored component is R_{IHKL} = g(R(phi_I, phi_H) phi_L, phi_K),
    i.e. the negative of the expression above at (K, L) = (K, A).
    """
    gm = gamma.gamma
    low = gamma.lowered
    r = MultiTensor(4)
    # raised rows for fast B-sums: rows[(I,K)] = [(B, Gamma_{IK}^B), ...]
    rows = {}
    for (i, k2, b), v in gm.nonzero():
        rows.setdefault((i, k2), []).append((b, v))

    for i in INDICES:
        for hh in range(i + 1, DIM):
            crow = alg.bracket_row(i, hh)
            for k in INDICES:
                row_hk = rows.get((hh, k), ())
                row_ik = rows.get((i, k), ())
                for l in INDICES:
                    acc = ZERO
                    for b, v in row_ik:
                        w = low[hh, b, l]
                        if not w.is_zero():
                            acc = acc + v * w
                    for b, v in row_hk:
                        w = low[i, b, l]
                        if not w.is_zero():
                            acc = acc - v * w
                    for b, v in crow:
                        w = low[b, k, l]
                        if not w.is_zero():
                            acc = acc + v * w
                    if not acc.is_zero():
                        r[i, hh, k, l] = acc
                        r[hh, i, k, l] = -acc
    return CurvatureTensor(gamma.spec, r)


def curvature_of(spec: ConnectionSpec, h: HermitianData, alg: LieAlgebraCx) -> CurvatureTensor:
    return curvature(christoffel(spec, h, alg), h, alg)


@dataclass(frozen=True)
class RicciData:
    """First and second Ricci, the Riemannian Ricci trace, and the scalar curvature.

    ric1 and ric2 are the holomorphic traces of the stored tensor,
    ric1_{IH} = R_{IH k lb} g^{lb k} and ric2_{KL} = R_{i jb K L} g^{jb i},
    with scal the common double trace.  ric_lc is the standard Riemannian
    Ricci tr(x -> R(x, y) z) of the curvature operator, which in the stored
    orientation is ric_lc_{HK} = -g^{AL} R_{AHKL}.
    """

    ric1: MultiTensor
    ric2: MultiTensor
    ric_lc: MultiTensor
    scal: GaussianRational


def ricci_and_scalar(curv: CurvatureTensor, h: HermitianData) -> RicciData:
    r = curv.tensor
    g_inv = h.g_inv

    # holomorphic trace pairs (k, lbar) weighted by g^{lbar k}
    pairs = [(k, l + 3, g_inv[l + 3, k]) for k in UNBARRED for l in range(3)
             if not g_inv[l + 3, k].is_zero()]

    ric1 = MultiTensor(2)
    for i in INDICES:
        for hh in INDICES:
            acc = ZERO
            for k, lb, w in pairs:
                v = r[i, hh, k, lb]
                if not v.is_zero():
                    acc = acc + v * w
            if not acc.is_zero():
                ric1[i, hh] = acc

    ric2 = MultiTensor(2)
    for k in INDICES:
        for l in INDICES:
            acc = ZERO
            for i, jb, w in pairs:
                v = r[i, jb, k, l]
                if not v.is_zero():
                    acc = acc + v * w
            if not acc.is_zero():
                ric2[k, l] = acc

    ric_lc = MultiTensor(2)
    for hh in INDICES:
        for k in INDICES:
            acc = ZERO
            for (a, l), w in g_inv.nonzero():
                v = r[a, hh, k, l]
                if not v.is_zero():
                    acc = acc - v * w
            if not acc.is_zero():
                ric_lc[hh, k] = acc

    scal = ZERO
    for i, jb, w in pairs:
        v = ric1[i, jb]
        if not v.is_zero():
            scal = scal + v * w
    return RicciData(ric1, ric2, ric_lc, scal)


def torsion_and_bianchi_defect(spec: ConnectionSpec, h: HermitianData, alg: LieAlgebraCx):
    """Connection torsion T(x,y) = nabla_x y - nabla_y x - [x,y] and the Bianchi defect.

    The defect is (cyclic sum of R(x,y)z) - (d^nabla T)(x,y,z), a vector-valued
    3-tensor that must vanish identically for every metric connection.  It is
    the structural oracle for the whole Christoffel/curvature pipeline.
    """
    table = christoffel(spec, h, alg)
    gm = table.gamma
    c = alg.c

    torsion = MultiTensor(3)
    for idx in all_indices(3):
        i, hh, k = idx
        v = gm[i, hh, k] - gm[hh, i, k] - c[i, hh, k]
        if not v.is_zero():
            torsion[idx] = v

    # curvature operator R_{IHK}^A (indices raised, no metric lowering)
    rop = MultiTensor(4)
    rows = {}
    for (i, k2, b), v in gm.nonzero():
        rows.setdefault((i, k2), []).append((b, v))
    for i in INDICES:
        for hh in range(i + 1, DIM):
            crow = alg.bracket_row(i, hh)
            for k in INDICES:
                for a in INDICES:
                    acc = ZERO
                    for b, v in rows.get((hh, k), ()):
                        w = gm[i, b, a]
                        if not w.is_zero():
                            acc = acc + v * w
                    for b, v in rows.get((i, k), ()):
                        w = gm[hh, b, a]
                        if not w.is_zero():
                            acc = acc - v * w
                    for b, v in crow:
                        w = gm[b, k, a]
                        if not w.is_zero():
                            acc = acc - v * w
                    if not acc.is_zero():
                        rop[i, hh, k, a] = acc
                        rop[hh, i, k, a] = -acc

    defect = MultiTensor(4)
    for i, hh, k in all_indices(3):
        for a in INDICES:
            acc = ZERO
            for (x, y, zz) in ((i, hh, k), (hh, k, i), (k, i, hh)):
                acc = acc + rop[x, y, zz, a]
                # d^nabla T cyclic part: nabla_x (T(y,z)) - T([x,y], z)
                for m in INDICES:
                    tv = torsion[y, zz, m]
                    if not tv.is_zero():
                        w = gm[x, m, a]
                        if not w.is_zero():
                            acc = acc - tv * w
                for m, cv in alg.bracket_row(x, y):
                    tv = torsion[m, zz, a]
                    if not tv.is_zero():
                        acc = acc + cv * tv
            if not acc.is_zero():
                defect[i, hh, k, a] = acc

    return torsion, defect


# -- structural invariants ---------------------------------------------------

def curvature_symmetry_failures(curv: CurvatureTensor, check_symm: bool = False):
    """Violations of skewness in (I,H) and (K,L), reality, and optionally (Symm)."""
    r = curv.tensor
    bad = []
    for idx, v in r.nonzero():
        i, hh, k, l = idx
        if r[hh, i, k, l] != -v:
            bad.append(("skew12", idx))
        if r[i, hh, l, k] != -v:
            bad.append(("skew34", idx))
        if r[bar(i), bar(hh), bar(k), bar(l)] != v.conjugate():
            bad.append(("reality", idx))
        if check_symm and r[k, l, i, hh] != v:
            bad.append(("symm", idx))
    return bad


def nabla_g_failures(table: ChristoffelTable):
    """Metric compatibility: the lowered symbols must be skew in the last two slots."""
    low = table.lowered
    return [idx for idx, v in low.nonzero()
            if low[idx[0], idx[2], idx[1]] != -v]


def nabla_j_failures(table: ChristoffelTable):
    """Type preservation: Gamma_{IH}^K with mixed types in (H, K) must vanish."""
    return [idx for idx, v in table.gamma.nonzero()
            if is_barred(idx[1]) != is_barred(idx[2])]


# -- JSON wire format --------------------------------------------------------

def curvature_to_json(curv: CurvatureTensor) -> str:
    components = [
        {"i": index_name(i), "h": index_name(hh), "k": index_name(k),
         "l": index_name(l), "value": str(v)}
        for (i, hh, k, l), v in curv.tensor.nonzero()
    ]
    doc = {"spec": curv.spec.as_dict(), "components": components}
    return json.dumps(doc, separators=(",", ":"))


def curvature_from_json(text: str) -> CurvatureTensor:
    doc = json.loads(text)
    sp = doc["spec"]
    spec = ConnectionSpec(rat_from_str(sp["eps"]), rat_from_str(sp["rho"]), sp.get("name"))
    t = MultiTensor(4)
    for rec in doc["components"]:
        idx = tuple(parse_index(rec[key]) for key in ("i", "h", "k", "l"))
        t[idx] = gr(rec["value"])
    return CurvatureTensor(spec, t)
