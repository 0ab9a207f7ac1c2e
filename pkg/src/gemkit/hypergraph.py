"""Directed multihypergraphs with multiset incidence.

A hypergraph is a list of nodes plus a list of hyperarcs; every hyperarc
carries a source multiset, a target multiset (node -> positive multiplicity)
and a positive synergy coefficient ``kappa``.  All objects are immutable
after construction and safe to share across threads.  Node and arc order is
fixed by the input and drives every derived matrix, model file and report.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

MAX_MULTIPLICITY = 2**31 - 1


class HypergraphError(ValueError):
    """Raised for structurally invalid hypergraph data."""


# =============================================================================
@dataclass(frozen=True)
class Hyperarc:
    """One directed hyperarc: ``source`` is consumed, ``target`` is produced.

    Parameters
    ----------
    id : str
        Unique identifier.
    source, target : dict
        Map node id -> multiplicity (integer >= 1).  Both maps must be
        non-empty.
    kappa : float
        Positive, dimensionless synergy coefficient used by the flow law.
    """

    id: str
    source: dict
    target: dict
    kappa: float = 1.0

    def __post_init__(self):
        for side_name, side in (("source", self.source), ("target", self.target)):
            if not side:
                raise HypergraphError(f"arc {self.id!r}: empty {side_name} multiset")
            for node, mult in side.items():
                if not isinstance(mult, int) or isinstance(mult, bool):
                    raise HypergraphError(
                        f"arc {self.id!r}: multiplicity of {node!r} must be an integer"
                    )
                if not 1 <= mult <= MAX_MULTIPLICITY:
                    raise HypergraphError(
                        f"arc {self.id!r}: multiplicity of {node!r} out of range: {mult}"
                    )
        if not (float(self.kappa) > 0.0):
            raise HypergraphError(f"arc {self.id!r}: kappa must be positive")


# =============================================================================
@dataclass(frozen=True)
class Hypergraph:
    """Immutable directed multihypergraph.

    ``nodes`` fixes the row order of all incidence matrices; ``arcs`` fixes
    the column order.  Construction validates uniqueness and referential
    integrity once, so operations never re-check.
    """

    nodes: tuple
    arcs: tuple

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "arcs", tuple(self.arcs))
        if len(set(self.nodes)) != len(self.nodes):
            raise HypergraphError("duplicate node identifiers")
        if len({a.id for a in self.arcs}) != len(self.arcs):
            raise HypergraphError("duplicate arc identifiers")
        known = set(self.nodes)
        for arc in self.arcs:
            for node in (*arc.source, *arc.target):
                if node not in known:
                    raise HypergraphError(
                        f"arc {arc.id!r} references unknown node {node!r}"
                    )

    # -- set-like accessors ---------------------------------------------------
    @property
    def node_index(self):
        return {v: i for i, v in enumerate(self.nodes)}

    @property
    def arc_index(self):
        return {a.id: j for j, a in enumerate(self.arcs)}

    def arc(self, arc_id):
        for a in self.arcs:
            if a.id == arc_id:
                return a
        raise KeyError(arc_id)


# =============================================================================
@dataclass(frozen=True)
class IncidenceView:
    """Integer incidence matrices of a hypergraph.

    ``S[v, a]`` is the source multiplicity, ``T[v, a]`` the target
    multiplicity and ``Q = T - S`` the net contribution, all ordered by the
    node/arc order of the originating hypergraph.
    """

    S: np.ndarray
    T: np.ndarray
    Q: np.ndarray


@dataclass(frozen=True)
class ReversiblePairing:
    """Pairs of arcs with exchanged source/target multisets.

    ``pairs`` holds unordered id pairs; ``canonical`` assigns each arc a
    role: ``"forward"`` (lexicographically smaller id of its pair),
    ``"reverse"`` or ``"irreversible"``.
    """

    pairs: frozenset
    canonical: dict = field(default_factory=dict)


# =============================================================================
def build_incidence(h: Hypergraph) -> IncidenceView:
    """Build the source/target/net incidence matrices of ``h``.

    Returns
    -------
    IncidenceView
        Matrices of shape (num nodes, num arcs), dtype int64, with
        ``Q == T - S`` exactly.
    """
    idx = h.node_index
    n, m = len(h.nodes), len(h.arcs)
    S = np.zeros((n, m), dtype=np.int64)
    T = np.zeros((n, m), dtype=np.int64)
    for j, arc in enumerate(h.arcs):
        for node, mult in arc.source.items():
            S[idx[node], j] = mult
        for node, mult in arc.target.items():
            T[idx[node], j] = mult
    return IncidenceView(S=S, T=T, Q=T - S)


def net_balance(h: Hypergraph, f) -> np.ndarray:
    """Net production ``Q f`` of a flow vector, one entry per node.

    ``f`` must have exactly one entry per arc, in arc order.  Negative
    entries of the result mean depletion, positive entries amplification.
    """
    f = np.asarray(f, dtype=float)
    if f.shape != (len(h.arcs),):
        raise ValueError(
            f"flow vector has length {f.shape}, expected ({len(h.arcs)},)"
        )
    return build_incidence(h).Q @ f


def restrict(h: Hypergraph, nodes) -> Hypergraph:
    """Restricted subhypergraph on a node subset.

    Keeps exactly the arcs whose source and target multisets are fully
    contained in ``nodes``; arc order is preserved.  Unknown node ids raise.
    """
    keep = set(nodes)
    unknown = keep - set(h.nodes)
    if unknown:
        raise HypergraphError(f"unknown node ids: {sorted(unknown)}")
    sub_nodes = tuple(v for v in h.nodes if v in keep)
    sub_arcs = tuple(
        a for a in h.arcs if keep.issuperset(a.source) and keep.issuperset(a.target)
    )
    return Hypergraph(nodes=sub_nodes, arcs=sub_arcs)


def detect_reversible(h: Hypergraph) -> ReversiblePairing:
    """Detect arcs that are exact reverses of each other.

    Two arcs pair when the source multiset of one equals the target multiset
    of the other, in both directions (multiplicity-sensitive).  Ties among
    duplicate arcs are resolved greedily in arc order; surplus copies stay
    irreversible.  The forward role goes to the lexicographically smaller id.
    """
    paired = {}
    for i, a in enumerate(h.arcs):
        if a.id in paired:
            continue
        for b in h.arcs[i + 1 :]:
            if b.id in paired:
                continue
            if a.source == b.target and b.source == a.target:
                paired[a.id] = b.id
                paired[b.id] = a.id
                break
    pairs = frozenset(
        frozenset((x, y)) for x, y in paired.items() if x < y
    )
    canonical = {}
    for arc in h.arcs:
        mate = paired.get(arc.id)
        if mate is None:
            canonical[arc.id] = "irreversible"
        else:
            canonical[arc.id] = "forward" if arc.id < mate else "reverse"
    return ReversiblePairing(pairs=pairs, canonical=canonical)


def reverse_partner(pairing: ReversiblePairing, arc_id: str):
    """Id of the paired arc, or None for irreversible arcs."""
    for pair in pairing.pairs:
        if arc_id in pair:
            (other,) = pair - {arc_id}
            return other
    return None


# =============================================================================
# Canonical JSON instance format.  Keys are written in the documented order
# (nodes, arcs with id/source/target/kappa) and source/target keys follow the
# node order of the hypergraph, which makes serialization byte-deterministic.
# =============================================================================
def to_json_dict(h: Hypergraph, meta=None) -> dict:
    order = h.node_index
    doc = {
        "nodes": list(h.nodes),
        "arcs": [
            {
                "id": a.id,
                "source": {v: a.source[v] for v in sorted(a.source, key=order.get)},
                "target": {v: a.target[v] for v in sorted(a.target, key=order.get)},
                "kappa": a.kappa,
            }
            for a in h.arcs
        ],
    }
    if meta is not None:
        doc["meta"] = meta
    return doc


def dumps(h: Hypergraph, meta=None) -> str:
    """Serialize to the canonical UTF-8 JSON instance format."""
    return json.dumps(to_json_dict(h, meta), indent=2) + "\n"


def save(h: Hypergraph, path, meta=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(h, meta))


def from_json_dict(doc: dict) -> Hypergraph:
    try:
        nodes = doc["nodes"]
        arcs = [
            Hyperarc(
                id=a["id"],
                source={v: int(m) for v, m in a["source"].items()},
                target={v: int(m) for v, m in a["target"].items()},
                kappa=float(a.get("kappa", 1.0)),
            )
            for a in doc["arcs"]
        ]
    except (KeyError, TypeError) as exc:
        raise HypergraphError(f"malformed instance document: {exc}") from exc
    return Hypergraph(nodes=tuple(nodes), arcs=tuple(arcs))


def loads(text: str) -> Hypergraph:
    return from_json_dict(json.loads(text))


def load(path) -> Hypergraph:
    with open(path, "r", encoding="utf-8") as fh:
        return from_json_dict(json.load(fh))


def load_meta(path) -> dict:
    """Read the optional meta block of an instance file ({} if absent)."""
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh).get("meta", {})
