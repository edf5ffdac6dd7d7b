"""Vectorised evaluation of ``M`` and ``nu`` over the good sequences.

Only good sequences carry nonzero ``r``, and ``M`` and ``nu`` do not
depend on the hidden bit (exactly one of the two partner labels has the
opposite bit). So every quantity is a function of the milestone vector
alone and can be computed by comparing one row of the table against all
others. Sums are kept as three integer parts, to be combined with the
exact scale factors only at the end.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .family import InstanceFamily, Scalar


@dataclass(frozen=True)
class NuParts:
    """Per-vertex integer parts of ``nu(x, v)`` for one sequence ``x``.

    ``nu(x, v) = unscaled[v-1] + down[v-1] * g/n^1.5 + up[v-1] * n^1.5/g``.
    """

    M: int
    unscaled: np.ndarray
    down: np.ndarray
    up: np.ndarray
    # any partner at v classified with v in Tail(J, S_x) / not in it
    case1: np.ndarray
    case2: np.ndarray


class GoodTable:
    def __init__(self, fam: InstanceFamily):
        self.fam = fam
        n, L = fam.n, fam.L
        seqs = list(fam.good_sequences())
        self.seqs = np.array(seqs, dtype=np.int64).reshape(len(seqs), L + 1)
        self.index = {s: i for i, s in enumerate(seqs)}
        G = len(seqs)
        self.size = G
        self.fvals = np.zeros((G, n), dtype=np.int64)
        self.tails = np.zeros((G, L + 2, n), dtype=bool)
        for i, s in enumerate(seqs):
            info = fam.info(s)
            self.fvals[i] = info.f
            for j, t in enumerate(info.tails, start=1):
                for w in t:
                    self.tails[i, j, w - 1] = True
        self.last = self.seqs[:, -1] if G else np.zeros(0, dtype=np.int64)
        self.powers = np.array([n**j for j in range(L + 2)], dtype=np.int64)
        # codes[:, j] encodes the first j+1 entries, so equal codes mean equal prefixes
        self.codes = np.zeros((G, L + 1), dtype=np.int64)
        acc = np.zeros(G, dtype=np.int64)
        for j in range(L + 1):
            acc = acc * (n + 1) + self.seqs[:, j]
            self.codes[:, j] = acc
        # permutations come out in lexicographic order, so every column is sorted
        # and each shared-prefix group is a contiguous block of rows
        assert G == 0 or bool((np.diff(self.codes[:, L]) > 0).all())
        self.fvals_by_v = np.ascontiguousarray(self.fvals.T)
        # tails by query point, for column lookups: tails_by_v[v-1, j, row]
        self.tails_by_v = np.ascontiguousarray(self.tails.transpose(2, 1, 0))
        self._parts: dict[int, NuParts] = {}
        self._M_all = None

    def blocks(self, i: int) -> list[tuple[int, int]]:
        """Row range sharing the first ``j`` entries with row ``i``, for ``j = 2..L``."""
        out = []
        for j in range(1, self.fam.L):
            col = self.codes[:, j]
            out.append(
                (int(np.searchsorted(col, col[i], "left")), int(np.searchsorted(col, col[i], "right")))
            )
        return out

    def prefix_lengths(self, i: int) -> np.ndarray:
        """``J(x_i, y)`` for every row ``y``."""
        J = np.ones(self.size, dtype=np.int64)
        for lo, hi in self.blocks(i):
            J[lo:hi] += 1
        J[i] = self.fam.L + 1
        return J

    def differs(self, i: int) -> np.ndarray:
        """``(G, n)`` mask: ``g_{x,b}(v) != g_{y,1-b}(v)`` for row ``x = i``."""
        diff = self.fvals != self.fvals[i]
        rows = np.arange(self.size)
        diff[rows, self.last - 1] = True
        diff[:, self.last[i] - 1] = True
        return diff

    def parts(self, i: int) -> NuParts:
        cached = self._parts.get(i)
        if cached is not None:
            return cached
        L = self.fam.L
        J = self.prefix_lengths(i)
        partner = J <= L
        weight = np.where(partner, self.powers[J], 0)
        diff = self.differs(i) & partner[:, None]
        tx = self.tails[i][J]
        ty = self.tails[np.arange(self.size), J]
        w = weight[:, None] * diff
        res = NuParts(
            M=int(weight.sum()),
            unscaled=(w * (tx == ty)).sum(axis=0),
            down=(w * (tx & ~ty)).sum(axis=0),
            up=(w * (~tx & ty)).sum(axis=0),
            case1=(diff & tx).any(axis=0),
            case2=(diff & ~tx).any(axis=0),
        )
        self._parts[i] = res
        return res

    def M_all(self) -> np.ndarray:
        """``M`` for every row, from the sizes of the shared-prefix groups."""
        if self._M_all is None:
            L = self.fam.L
            shared = np.zeros((self.size, L + 1), dtype=np.int64)
            for j in range(L + 1):
                _, inverse, counts = np.unique(self.codes[:, j], return_inverse=True, return_counts=True)
                shared[:, j] = counts[inverse.ravel()]
            # rows with J exactly j: share j entries but not j+1
            exact_j = shared[:, :-1] - shared[:, 1:]
            self._M_all = (exact_j * self.powers[1 : L + 1]).sum(axis=1)
        return self._M_all

    def M(self, i: int) -> int:
        return int(self.M_all()[i])

    def nu(self, i: int, v: int) -> Scalar:
        """``nu(x_i, v)``; uses the full row when cached, else one column."""
        p = self._parts.get(i)
        if p is not None:
            parts = (p.unscaled[v - 1], p.down[v - 1], p.up[v - 1])
        else:
            parts = self.nu_column(i, v)
        return self.fam.combine(*(int(t) for t in parts))

    def nu_column(self, i: int, v: int) -> tuple[int, int, int]:
        """Integer parts of ``nu(x_i, v)`` without building the whole row."""
        col = v - 1
        fcol = self.fvals_by_v[col]
        by_j = self.tails_by_v[col]
        if self.last[i] == v:
            diff = np.ones(self.size, dtype=bool)
        else:
            diff = (fcol != fcol[i]) | (self.last == v)
        # J is 1 outside the nested prefix blocks and j inside block j
        w = np.full(self.size, self.powers[1], dtype=np.int64)
        ty = by_j[1].copy()
        tx = np.full(self.size, by_j[1, i])
        for j, (lo, hi) in enumerate(self.blocks(i), start=2):
            w[lo:hi] = self.powers[j]
            ty[lo:hi] = by_j[j, lo:hi]
            tx[lo:hi] = by_j[j, i]
        w[i] = 0
        w *= diff
        return int((w * (tx == ty)).sum()), int((w * (tx & ~ty)).sum()), int((w * (~tx & ty)).sum())

    def valid(self, i: int, k: int, v: int) -> bool:
        """Whether ``(x_i, x_k, v)`` is an admissible triple (``i != k``)."""
        return (
            i != k
            and (
                self.fvals[i, v - 1] != self.fvals[k, v - 1]
                or self.last[i] == v
                or self.last[k] == v
            )
        )
