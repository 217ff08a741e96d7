"""Dense multi-index tensors over the six-element complexified frame.

Frame indices run over {1, 2, 3, 1b, 2b, 3b}, encoded internally as 0..5
with bar(i) = (i + 3) % 6.  Tensors of rank k are stored as flat lists of
6**k GaussianRational entries.  Values are treated as immutable once built:
the constructors hand out fresh storage and no public operation mutates its
arguments.
"""

from __future__ import annotations

import itertools

from .scalars import ZERO, GaussianRational

DIM = 6
INDICES = tuple(range(DIM))
UNBARRED = (0, 1, 2)
BARRED = (3, 4, 5)

INDEX_NAMES = ("1", "2", "3", "1b", "2b", "3b")
_NAME_TO_INDEX = {name: k for k, name in enumerate(INDEX_NAMES)}


def bar(i: int) -> int:
    """The conjugation involution on frame indices: 1 <-> 1b etc."""
    return (i + 3) % 6


def is_barred(i: int) -> bool:
    return i >= 3


def index_name(i: int) -> str:
    return INDEX_NAMES[i]


def parse_index(name: str) -> int:
    try:
        return _NAME_TO_INDEX[name.strip()]
    except KeyError:
        raise ValueError(f"unknown frame index {name!r}; expected one of {INDEX_NAMES}") from None


def barred_count(idx: tuple) -> int:
    return sum(1 for i in idx if i >= 3)


def all_indices(rank: int):
    """Iterate over all rank-tuples of frame indices in lexicographic order."""
    return itertools.product(INDICES, repeat=rank)


class MultiTensor:
    """Dense tensor of the given rank with GaussianRational entries."""

    __slots__ = ("rank", "data")

    def __init__(self, rank: int, data=None):
        self.rank = rank
        if data is None:
            self.data = [ZERO] * (DIM ** rank)
        else:
            if len(data) != DIM ** rank:
                raise ValueError(f"rank-{rank} tensor needs {DIM ** rank} entries, got {len(data)}")
            self.data = list(data)

    def _offset(self, idx) -> int:
        if len(idx) != self.rank:
            raise ValueError(f"index {idx} has wrong length for rank {self.rank}")
        off = 0
        for i in idx:
            if not 0 <= i < DIM:
                raise ValueError(f"frame index out of range in {idx}")
            off = off * DIM + i
        return off

    def __getitem__(self, idx) -> GaussianRational:
        if isinstance(idx, int):
            idx = (idx,)
        return self.data[self._offset(idx)]

    def __setitem__(self, idx, value: GaussianRational):
        if isinstance(idx, int):
            idx = (idx,)
        self.data[self._offset(idx)] = value

    def copy(self) -> "MultiTensor":
        return MultiTensor(self.rank, self.data)

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.data)

    def nonzero(self):
        """Yield (index_tuple, value) for every nonzero entry, lexicographically."""
        for idx in all_indices(self.rank):
            v = self.data[self._offset(idx)]
            if not v.is_zero():
                yield idx, v

    def __eq__(self, other):
        if not isinstance(other, MultiTensor):
            return NotImplemented
        return self.rank == other.rank and all(a == b for a, b in zip(self.data, other.data))

    def __add__(self, other: "MultiTensor") -> "MultiTensor":
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        return MultiTensor(self.rank, [a + b for a, b in zip(self.data, other.data)])

    def __sub__(self, other: "MultiTensor") -> "MultiTensor":
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        return MultiTensor(self.rank, [a - b for a, b in zip(self.data, other.data)])

    def __neg__(self) -> "MultiTensor":
        return MultiTensor(self.rank, [-a for a in self.data])

    def scale(self, s: GaussianRational) -> "MultiTensor":
        return MultiTensor(self.rank, [s * a for a in self.data])

    def __repr__(self):
        nz = sum(1 for v in self.data if not v.is_zero())
        return f"<MultiTensor rank={self.rank} nonzero={nz}>"


def identity_tensor() -> MultiTensor:
    """Kronecker delta as a rank-2 tensor."""
    t = MultiTensor(2)
    one = GaussianRational(1)
    for i in INDICES:
        t[i, i] = one
    return t


def tensor_conjugate(t: MultiTensor) -> MultiTensor:
    """Componentwise conjugation with all indices barred: out[I...] = conj(t[bar(I)...])."""
    out = MultiTensor(t.rank)
    for idx in all_indices(t.rank):
        v = t[tuple(bar(i) for i in idx)]
        if not v.is_zero():
            out[idx] = v.conjugate()
    return out


def contract(t: MultiTensor, a: MultiTensor, slot_t: int, slot_a: int) -> MultiTensor:
    """Sum over a shared frame index: Einstein contraction of slot_t of t with slot_a of a.

    Result slots are the remaining slots of t followed by the remaining
    slots of a, in their original order.
    """
    if not 0 <= slot_t < t.rank:
        raise ValueError(f"slot {slot_t} out of range for rank-{t.rank} tensor")
    if not 0 <= slot_a < a.rank:
        raise ValueError(f"slot {slot_a} out of range for rank-{a.rank} tensor")
    out = MultiTensor(t.rank + a.rank - 2)
    # bucket the entries of `a` by the value of the contracted slot
    buckets = [[] for _ in range(DIM)]
    for idx, v in a.nonzero():
        rest = idx[:slot_a] + idx[slot_a + 1:]
        buckets[idx[slot_a]].append((rest, v))
    for idx, v in t.nonzero():
        shared = idx[slot_t]
        rest_t = idx[:slot_t] + idx[slot_t + 1:]
        for rest_a, w in buckets[shared]:
            o = rest_t + rest_a
            out[o] = out[o] + v * w
    return out


def antisymmetrize(t: MultiTensor, slots: tuple) -> MultiTensor:
    """(t - t with the two slots swapped) / 2; idempotent on skew tensors."""
    p, q = slots
    if t.rank < 2 or not (0 <= p < t.rank and 0 <= q < t.rank) or p == q:
        raise ValueError(f"bad slot pair {slots} for rank-{t.rank} tensor")
    half = GaussianRational("1/2")
    out = MultiTensor(t.rank)
    for idx in all_indices(t.rank):
        swapped = list(idx)
        swapped[p], swapped[q] = swapped[q], swapped[p]
        v = t[idx] - t[tuple(swapped)]
        if not v.is_zero():
            out[idx] = half * v
    return out


def is_skew_in(t: MultiTensor, p: int, q: int) -> bool:
    """Check skewness of a tensor in the given pair of slots."""
    for idx, v in t.nonzero():
        swapped = list(idx)
        swapped[p], swapped[q] = swapped[q], swapped[p]
        if t[tuple(swapped)] != -v:
            return False
    return True


def is_fully_skew(t: MultiTensor) -> bool:
    for p in range(t.rank - 1):
        if not is_skew_in(t, p, p + 1):
            return False
    return True
