"""Processor topologies, qubit partitions, and allowed two-qubit edge sets."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from pathlib import Path

import numpy as np

EDGE_MODE_INHERIT = "inherit"
EDGE_MODE_ALL_TO_ALL = "all-to-all"
# Cut used only as an execution label; the topology's edge set is kept whole,
# so a search under this mode can match uncut accuracy.  Default for
# singleton shapes, where the boundary qubit still talks through its
# topology edges.
EDGE_MODE_CROSSTALK = "crosstalk"

EDGE_MODES = (EDGE_MODE_INHERIT, EDGE_MODE_ALL_TO_ALL, EDGE_MODE_CROSSTALK)


def _as_edge(u, v):
    if u == v:
        raise ValueError(f"self-loop on qubit {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class TopologyGraph:
    n_qubits: int
    edges: frozenset
    name: str | None = None

    def __post_init__(self):
        edges = frozenset(_as_edge(*e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        for u, v in edges:
            if not (0 <= u < self.n_qubits and 0 <= v < self.n_qubits):
                raise ValueError(f"edge ({u},{v}) out of range")
        if not self._connected():
            raise ValueError(f"topology {self.name or edges} is not connected")

    def _connected(self):
        if self.n_qubits == 1:
            return True
        adj = {q: set() for q in range(self.n_qubits)}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        seen = {0}
        stack = [0]
        while stack:
            for nxt in adj[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return len(seen) == self.n_qubits

    def sorted_edges(self):
        return sorted(self.edges)


@dataclass(frozen=True)
class CutPartition:
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        blocks = tuple(sorted(blocks, key=lambda b: (len(b), b)))
        object.__setattr__(self, "blocks", blocks)
        seen = [q for b in blocks for q in b]
        if not blocks or any(not b for b in blocks):
            raise ValueError("blocks must be non-empty")
        if sorted(seen) != list(range(len(seen))):
            raise ValueError(f"blocks {blocks} do not partition the qubit range")

    @property
    def n_qubits(self):
        return sum(len(b) for b in self.blocks)

    @property
    def shape(self):
        return "+".join(str(len(b)) for b in self.blocks)

    def block_of(self, qubit):
        for i, b in enumerate(self.blocks):
            if qubit in b:
                return i
        raise ValueError(f"qubit {qubit} not in partition")

    def label(self):
        return "|".join(".".join(str(q) for q in b) for b in self.blocks)


# -- fixed 4-qubit study set ---------------------------------------------------

_CATALOG_4Q = [
    ("Linear", [(0, 1), (1, 2), (2, 3)]),
    ("Square", [(0, 1), (1, 2), (2, 3), (3, 0)]),
    ("T", [(0, 1), (1, 2), (1, 3)]),
    ("Triangle-1", [(0, 1), (0, 2), (1, 2), (2, 3)]),
    ("Triangle-2", [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]),
]


def topology_catalog(n_qubits: int = 4):
    """The five named 4-qubit graphs used throughout the experiments."""
    if n_qubits != 4:
        raise ValueError(
            "catalog is defined for 4 qubits; use enumerate_connected_topologies"
        )
    return [
        TopologyGraph(4, frozenset(edges), name) for name, edges in _CATALOG_4Q
    ]


def enumerate_connected_topologies(n_qubits: int):
    """All connected graphs on labeled vertices, one per isomorphism class."""
    if n_qubits < 2:
        raise ValueError("need at least 2 qubits")
    if n_qubits > 6:
        raise ValueError("enumeration limited to 6 qubits")
    pairs = list(combinations(range(n_qubits), 2))
    n_pairs = len(pairs)
    masks = np.arange(1, 2**n_pairs)

    # membership matrix: subset x pair
    member = ((masks[:, None] >> np.arange(n_pairs)[None, :]) & 1).astype(bool)

    # keep connected subsets
    keep = []
    for mask, row in zip(masks, member):
        edges = [pairs[i] for i in range(n_pairs) if row[i]]
        adj = {q: set() for q in range(n_qubits)}
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        seen = {0}
        stack = [0]
        while stack:
            for nxt in adj[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        if len(seen) == n_qubits:
            keep.append(mask)
    keep = np.asarray(keep)
    member = ((keep[:, None] >> np.arange(n_pairs)[None, :]) & 1).astype(bool)

    # canonical form: minimum edge-bitmask over all vertex permutations
    pair_index = {p: i for i, p in enumerate(pairs)}
    canon = np.full(keep.shape[0], np.iinfo(np.int64).max, dtype=np.int64)
    weights = (1 << np.arange(n_pairs)).astype(np.int64)
    for perm in permutations(range(n_qubits)):
        remap = np.array(
            [pair_index[_as_edge(perm[u], perm[v])] for u, v in pairs]
        )
        permuted = np.zeros_like(member)
        permuted[:, remap] = member
        canon = np.minimum(canon, permuted @ weights)

    chosen = {}
    for mask, c in zip(keep, canon):
        if c not in chosen:
            chosen[int(c)] = int(mask)
    graphs = []
    for c in sorted(chosen):
        edges = frozenset(pairs[i] for i in range(n_pairs) if (c >> i) & 1)
        graphs.append(TopologyGraph(n_qubits, edges))
    graphs.sort(key=lambda g: (len(g.edges), g.sorted_edges()))
    return graphs


def enumerate_cuts(n_qubits: int, shape=None):
    """Labeled set partitions of the qubit range.

    `shape` is an iterable of block sizes (must sum to n_qubits); omitted, all
    two-block partitions are produced.  Blocks are unordered, so partitions
    that differ only by block order appear once.
    """
    if shape is None:
        out = set()
        qubits = tuple(range(n_qubits))
        for r in range(1, n_qubits // 2 + 1):
            for block in combinations(qubits, r):
                rest = tuple(q for q in qubits if q not in block)
                out.add(CutPartition((block, rest)))
        return sorted(out, key=lambda c: c.blocks)
    sizes = sorted(int(s) for s in shape)
    if any(s < 1 for s in sizes):
        raise ValueError(f"invalid shape {shape}")
    if sum(sizes) != n_qubits:
        raise ValueError(f"shape {shape} does not sum to {n_qubits}")

    def rec(remaining, sizes_left):
        if not sizes_left:
            yield ()
            return
        for block in combinations(remaining, sizes_left[0]):
            left = tuple(q for q in remaining if q not in block)
            for tail in rec(left, sizes_left[1:]):
                yield (block,) + tail

    # CutPartition canonicalizes block order, so the set removes duplicates
    # arising from equal-sized blocks in either order
    out = {CutPartition(blocks) for blocks in rec(tuple(range(n_qubits)), tuple(sizes))}
    return sorted(out, key=lambda c: c.blocks)


def parse_shape(text: str):
    return [int(s) for s in text.split("+")]


def allowed_edges(topology: TopologyGraph, cut=None, mode=None):
    """Edge set generating the CX actions.

    No cut: the topology's edges.  With a cut, `mode` selects how block
    membership constrains couplings:

    * ``inherit``     - topology edges whose endpoints share a block,
    * ``all-to-all``  - every intra-block pair, topology ignored,
    * ``crosstalk``   - topology edges unchanged (cut is a label only).
    """
    if cut is None:
        return frozenset(topology.edges)
    if mode is None:
        raise ValueError("mode is required when a cut is given")
    if mode not in EDGE_MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {EDGE_MODES}")
    if cut.n_qubits != topology.n_qubits:
        raise ValueError(
            f"cut covers {cut.n_qubits} qubits, topology has {topology.n_qubits}"
        )
    if mode == EDGE_MODE_CROSSTALK:
        return frozenset(topology.edges)
    if mode == EDGE_MODE_INHERIT:
        return frozenset(
            e for e in topology.edges if cut.block_of(e[0]) == cut.block_of(e[1])
        )
    return frozenset(
        _as_edge(u, v) for block in cut.blocks for u, v in combinations(block, 2)
    )


def load_topology(path) -> TopologyGraph:
    """Text format: first line `n=<int>`, then one `u v` pair per line."""
    lines = [
        ln.strip()
        for ln in Path(path).read_text().splitlines()
        if ln.strip() and not ln.strip().startswith("#")
    ]
    if not lines or not lines[0].startswith("n="):
        raise ValueError(f"{path}: first line must be n=<int>")
    n = int(lines[0][2:])
    edges = []
    for ln in lines[1:]:
        u, v = ln.split()
        edges.append(_as_edge(int(u), int(v)))
    return TopologyGraph(n, frozenset(edges), name=Path(path).stem)
