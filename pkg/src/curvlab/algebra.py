"""Complexified Lie algebra data and the invariant exterior differential.

Structure constants are stored for the frame (phi_1, phi_2, phi_3,
phi_1b, phi_2b, phi_3b) as c[I][H][K] with [phi_I, phi_H] = c_{IH}^K phi_K.
Invariant k-forms are fully skew rank-k tensors whose entries are the
honest multilinear evaluations on frame vectors; wedges use the
determinant convention, e.g. (a ^ b)(x, y) = a(x) b(y) - a(y) b(x).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .scalars import ZERO, GaussianRational, gr
from .tensors import (
    INDICES,
    MultiTensor,
    all_indices,
    bar,
    barred_count,
    index_name,
    parse_index,
)

__all__ = [
    "LieAlgebraCx",
    "ValidationCheck",
    "ValidationReport",
    "validate_lie_algebra",
    "exterior_d",
    "d_component",
    "d_is_zero",
    "wedge",
    "wedge_component",
    "form_type_project",
    "lie_algebra_to_json",
    "lie_algebra_from_json",
]


class LieAlgebraCx:
    """Structure constants of a six-dimensional complexified Lie algebra.

    The bracket rows are cached as sparse lists so that the differential and
    the Christoffel assembly can skip zero terms.
    """

    __slots__ = ("c", "rows")

    def __init__(self, c: MultiTensor):
        if c.rank != 3:
            raise ValueError("structure constants must form a rank-3 tensor")
        self.c = c
        # rows[I][H] = [(K, c_{IH}^K), ...] restricted to nonzero values
        self.rows = [[[] for _ in INDICES] for _ in INDICES]
        for (i, h, k), v in c.nonzero():
            self.rows[i][h].append((k, v))

    @classmethod
    def from_structure_constants(cls, entries: dict) -> "LieAlgebraCx":
        """Build from {(I, H, K): value}; the skew and conjugate entries are filled in."""
        c = MultiTensor(3)
        for (i, h, k), raw in entries.items():
            v = gr(raw)
            if v.is_zero():
                continue
            for (a, b, k2, w) in ((i, h, k, v), (bar(i), bar(h), bar(k), v.conjugate())):
                c[a, b, k2] = w
                c[b, a, k2] = -w
        return cls(c)

    @classmethod
    def from_dphi(cls, dphi: dict) -> "LieAlgebraCx":
        """Build from structure equations d(phi^K) = sum of coefficients on phi^I ^ phi^J.

        ``dphi`` maps an unbarred coframe index K in {0, 1, 2} to
        {(I, J): coefficient} with I < J.  Uses d(alpha)(x, y) = -alpha([x, y]),
        so c_{IJ}^K = -coefficient; barred equations follow by conjugation.
        """
        entries = {}
        for k, terms in dphi.items():
            for (i, j), raw in terms.items():
                if not i < j:
                    raise ValueError(f"coframe wedge indices must be ordered, got {(i, j)}")
                v = gr(raw)
                if not v.is_zero():
                    entries[(i, j, k)] = -v
        return cls.from_structure_constants(entries)

    def bracket_row(self, i: int, h: int):
        return self.rows[i][h]

    def is_abelian(self) -> bool:
        return self.c.is_zero()

    def __eq__(self, other):
        if not isinstance(other, LieAlgebraCx):
            return NotImplemented
        return self.c == other.c


@dataclass(frozen=True)
class ValidationCheck:
    name: str
    passed: bool
    witness: tuple | None = None
    residue: GaussianRational | None = None


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(ch.passed for ch in self.checks)

    def failures(self):
        return [ch for ch in self.checks if not ch.passed]


def validate_lie_algebra(alg: LieAlgebraCx) -> ValidationReport:
    """Report skewness, reality, and Jacobi, each with a witness on failure."""
    c = alg.c
    checks = []

    witness = None
    residue = None
    for (i, h, k), v in c.nonzero():
        r = c[h, i, k] + v
        if not r.is_zero():
            witness, residue = (i, h, k), r
            break
    checks.append(ValidationCheck("skew", witness is None, witness, residue))

    witness = None
    residue = None
    for idx in all_indices(3):
        i, h, k = idx
        r = c[bar(i), bar(h), bar(k)] - c[i, h, k].conjugate()
        if not r.is_zero():
            witness, residue = idx, r
            break
    checks.append(ValidationCheck("reality", witness is None, witness, residue))

    witness = None
    residue = None
    for i, h, k in all_indices(3):
        if witness is not None:
            break
        for b in INDICES:
            r = ZERO
            for (x, y, z) in ((i, h, k), (h, k, i), (k, i, h)):
                for a, v in alg.bracket_row(x, y):
                    w = c[a, z, b]
                    if not w.is_zero():
                        r = r + v * w
            if not r.is_zero():
                witness, residue = (i, h, k, b), r
                break
    checks.append(ValidationCheck("jacobi", witness is None, witness, residue))

    return ValidationReport(tuple(checks))


def exterior_d(alpha: MultiTensor, alg: LieAlgebraCx) -> MultiTensor:
    """Invariant (Chevalley-Eilenberg) differential of a skew rank-k tensor.

    d(alpha)(x_0, ..., x_k) = sum over i < j of
    (-1)^(i+j) alpha([x_i, x_j], x_0, ..., without x_i, x_j, ..., x_k).
    For 1-forms this is d(alpha)(x, y) = -alpha([x, y]).
    """
    out = MultiTensor(alpha.rank + 1)
    for idx in all_indices(alpha.rank + 1):
        v = d_component(alpha, alg, idx)
        if not v.is_zero():
            out[idx] = v
    return out


def d_component(alpha: MultiTensor, alg: LieAlgebraCx, idx: tuple) -> GaussianRational:
    """Single component of exterior_d(alpha) at the given (rank+1)-tuple."""
    k = alpha.rank
    if len(idx) != k + 1:
        raise ValueError(f"expected a {k + 1}-tuple, got {idx}")
    total = ZERO
    for p in range(k + 1):
        for q in range(p + 1, k + 1):
            row = alg.bracket_row(idx[p], idx[q])
            if not row:
                continue
            rest = idx[:p] + idx[p + 1:q] + idx[q + 1:]
            acc = ZERO
            for a, v in row:
                w = alpha[(a,) + rest]
                if not w.is_zero():
                    acc = acc + v * w
            if not acc.is_zero():
                # the bracket term carries sign (-1)^(p+q)
                total = total + acc if (p + q) % 2 == 0 else total - acc
    return total


def d_is_zero(alpha: MultiTensor, alg: LieAlgebraCx) -> bool:
    """Whether d(alpha) vanishes; checks only sorted index tuples (enough by skewness)."""
    for idx in itertools.combinations(INDICES, alpha.rank + 1):
        if not d_component(alpha, alg, idx).is_zero():
            return False
    return True


def wedge_component(a: MultiTensor, b: MultiTensor, idx: tuple) -> GaussianRational:
    """(a ^ b) evaluated at one index tuple, via the shuffle sum."""
    p, q = a.rank, b.rank
    if len(idx) != p + q:
        raise ValueError(f"expected a {p + q}-tuple, got {idx}")
    total = ZERO
    positions = range(p + q)
    for chosen in itertools.combinations(positions, p):
        rest = tuple(x for x in positions if x not in chosen)
        va = a[tuple(idx[x] for x in chosen)]
        if va.is_zero():
            continue
        vb = b[tuple(idx[x] for x in rest)]
        if vb.is_zero():
            continue
        term = va * vb
        total = total + term if _shuffle_sign(chosen, rest) > 0 else total - term
    return total


def _shuffle_sign(chosen, rest) -> int:
    perm = list(chosen) + list(rest)
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def wedge(a: MultiTensor, b: MultiTensor) -> MultiTensor:
    """Full wedge product under the determinant convention."""
    out = MultiTensor(a.rank + b.rank)
    for idx in all_indices(a.rank + b.rank):
        v = wedge_component(a, b, idx)
        if not v.is_zero():
            out[idx] = v
    return out


def form_type_project(alpha: MultiTensor, n_barred: int) -> MultiTensor:
    """Keep only components whose index tuple carries the given number of barred slots."""
    out = MultiTensor(alpha.rank)
    for idx, v in alpha.nonzero():
        if barred_count(idx) == n_barred:
            out[idx] = v
    return out


# -- JSON wire format -------------------------------------------------------

def lie_algebra_to_json(alg: LieAlgebraCx) -> str:
    """Nonzero structure constants as a list of {"i", "h", "k", "value"} records."""
    records = [
        {"i": index_name(i), "h": index_name(h), "k": index_name(k), "value": str(v)}
        for (i, h, k), v in alg.c.nonzero()
    ]
    return json.dumps(records, separators=(",", ":"))


def lie_algebra_from_json(text: str) -> LieAlgebraCx:
    c = MultiTensor(3)
    for rec in json.loads(text):
        i, h, k = (parse_index(rec[key]) for key in ("i", "h", "k"))
        c[i, h, k] = gr(rec["value"])
    return LieAlgebraCx(c)
