"""Instance and certificate model shared by every solver.

Vertices are plain integers.  The index of a vertex *is* its position in the
linear order of its graph, so ``u < u'`` means ``u`` precedes ``u'``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Tuple

Pair = Tuple[int, int]


class OlseError(Exception):
    """Base class for errors raised by this package."""


class PreconditionError(OlseError, ValueError):
    """An algorithm was called on an instance outside its supported class."""


class MalformedCertificateError(OlseError, ValueError):
    pass


class SizeGuardError(OlseError, ValueError):
    pass


class InternalError(OlseError, RuntimeError):
    """A construction produced something it should never produce."""


class Variant(str, enum.Enum):
    OLSE = "olse"
    OLISE = "olise"
    LSE = "lse"
    LISE = "lise"

    @property
    def ordered(self) -> bool:
        return self in (Variant.OLSE, Variant.OLISE)

    @property
    def induced(self) -> bool:
        return self in (Variant.OLISE, Variant.LISE)


def _edge(a: int, b: int) -> Pair:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class Instance:
    """Two ordered graphs ``G`` and ``H`` plus a list map ``L: V(G) -> 2^V(H)``.

    The raw constructor stores exactly what it is given so that
    :func:`validate_instance` can report problems; use :meth:`build` to get a
    normalized instance (ascending edges and lists, duplicates removed).
    """

    n_g: int
    n_h: int
    edges_g: Tuple[Pair, ...]
    edges_h: Tuple[Pair, ...]
    lists: Tuple[Tuple[int, ...], ...]
    k: Optional[int] = None

    @classmethod
    def build(cls, n_g, n_h, edges_g=(), edges_h=(), lists=None, k=None) -> "Instance":
        if lists is None:
            lists = [()] * n_g
        return cls(
            n_g=int(n_g),
            n_h=int(n_h),
            edges_g=tuple(sorted({_edge(int(a), int(b)) for a, b in edges_g})),
            edges_h=tuple(sorted({_edge(int(a), int(b)) for a, b in edges_h})),
            lists=tuple(tuple(sorted({int(v) for v in lst})) for lst in lists),
            k=None if k is None else int(k),
        )

    def replace(self, **changes) -> "Instance":
        data = dict(n_g=self.n_g, n_h=self.n_h, edges_g=self.edges_g,
                    edges_h=self.edges_h, lists=self.lists, k=self.k)
        data.update(changes)
        return Instance.build(**data)

    @cached_property
    def edge_set_g(self) -> frozenset:
        return frozenset(_edge(a, b) for a, b in self.edges_g)

    @cached_property
    def edge_set_h(self) -> frozenset:
        return frozenset(_edge(a, b) for a, b in self.edges_h)

    @cached_property
    def adj_g(self) -> Tuple[frozenset, ...]:
        return _adjacency(self.n_g, self.edges_g)

    @cached_property
    def adj_h(self) -> Tuple[frozenset, ...]:
        return _adjacency(self.n_h, self.edges_h)

    @cached_property
    def list_sets(self) -> Tuple[frozenset, ...]:
        return tuple(frozenset(lst) for lst in self.lists)

    def has_edge_g(self, a: int, b: int) -> bool:
        return _edge(a, b) in self.edge_set_g

    def has_edge_h(self, a: int, b: int) -> bool:
        return _edge(a, b) in self.edge_set_h

    def without_edges(self) -> "Instance":
        return Instance(self.n_g, self.n_h, (), (), self.lists, self.k)


def _adjacency(n, edges):
    nbrs = [set() for _ in range(n)]
    for a, b in edges:
        if 0 <= a < n and 0 <= b < n:
            nbrs[a].add(b)
            nbrs[b].add(a)
    return tuple(frozenset(s) for s in nbrs)


@dataclass(frozen=True)
class Embedding:
    """Partial injective map from G-vertices to H-vertices, sorted by G-vertex."""

    pairs: Tuple[Pair, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(sorted((int(u), int(v)) for u, v in self.pairs)))

    @classmethod
    def from_mapping(cls, mapping) -> "Embedding":
        return cls(tuple(mapping.items()))

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def g_vertices(self) -> Tuple[int, ...]:
        return tuple(u for u, _ in self.pairs)

    @property
    def h_vertices(self) -> Tuple[int, ...]:
        return tuple(v for _, v in self.pairs)

    def as_dict(self) -> dict:
        return dict(self.pairs)

    def restrict(self, g_vertices: Iterable[int]) -> "Embedding":
        keep = set(g_vertices)
        return Embedding(tuple(p for p in self.pairs if p[0] in keep))


@dataclass(frozen=True)
class Solution:
    embedding: Embedding = field(default_factory=Embedding)
    algorithm: str = ""

    @property
    def size(self) -> int:
        return len(self.embedding)

    @property
    def pairs(self) -> Tuple[Pair, ...]:
        return self.embedding.pairs

    def to_json(self, inst: Optional[Instance] = None, variant: Optional[Variant] = None) -> dict:
        out = {"size": self.size, "pairs": [list(p) for p in self.pairs], "algorithm": self.algorithm}
        if inst is not None and variant is not None:
            out["valid"] = bool(check_embedding(inst, self.embedding, variant))
        return out


class EmbeddingCheck(NamedTuple):
    ok: bool
    condition: Optional[str] = None
    detail: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def validate_instance(inst: Instance) -> list:
    """Return every invariant violation of ``inst`` as a human-readable string."""
    out = []
    if not isinstance(inst.n_g, int) or inst.n_g < 0:
        out.append(f"n_g must be a non-negative integer, got {inst.n_g!r}")
    if not isinstance(inst.n_h, int) or inst.n_h < 0:
        out.append(f"n_h must be a non-negative integer, got {inst.n_h!r}")
    if out:
        return out
    for name, n, edges in (("edges_g", inst.n_g, inst.edges_g), ("edges_h", inst.n_h, inst.edges_h)):
        seen = set()
        for pos, e in enumerate(edges):
            if len(e) != 2:
                out.append(f"{name}[{pos}]: edge must have two endpoints, got {list(e)}")
                continue
            a, b = e
            if not (0 <= a < n and 0 <= b < n):
                out.append(f"{name}[{pos}]: endpoint out of range in edge ({a},{b}) (n={n})")
                continue
            if a == b:
                out.append(f"{name}[{pos}]: self-loop at vertex {a}")
                continue
            key = _edge(a, b)
            if key in seen:
                out.append(f"{name}[{pos}]: duplicate edge ({a},{b})")
            seen.add(key)
    if len(inst.lists) != inst.n_g:
        out.append(f"lists: expected {inst.n_g} lists, got {len(inst.lists)}")
    for u, lst in enumerate(inst.lists):
        for pos, v in enumerate(lst):
            if not 0 <= v < inst.n_h:
                out.append(f"lists[{u}][{pos}]: entry {v} out of range (n_h={inst.n_h})")
        if any(a == b for a, b in zip(lst, lst[1:])):
            out.append(f"lists[{u}]: duplicate entry")
        elif any(a > b for a, b in zip(lst, lst[1:])):
            out.append(f"lists[{u}]: list not ascending {list(lst)}")
    if inst.k is not None:
        if not isinstance(inst.k, int) or not 0 <= inst.k <= min(inst.n_g, inst.n_h):
            out.append(f"k={inst.k!r} outside [0, min(n_g, n_h)] = [0, {min(inst.n_g, inst.n_h)}]")
    return out


def check_embedding(inst: Instance, emb: Embedding, variant: Variant) -> EmbeddingCheck:
    """Check the list, order and edge conditions of ``variant`` for ``emb``.

    Returns a falsy :class:`EmbeddingCheck` naming the first violated
    condition (``"injective"``, ``"list"``, ``"order"``, ``"edge"`` or
    ``"induced"``).  Raises :class:`MalformedCertificateError` on indices
    outside the instance.
    """
    variant = Variant(variant)
    pairs = emb.pairs
    for u, v in pairs:
        if not 0 <= u < inst.n_g or not 0 <= v < inst.n_h:
            raise MalformedCertificateError(f"pair ({u},{v}) out of range for n_g={inst.n_g}, n_h={inst.n_h}")
    gs = [u for u, _ in pairs]
    hs = [v for _, v in pairs]
    if len(set(gs)) != len(gs):
        return EmbeddingCheck(False, "injective", "a G-vertex appears twice")
    if len(set(hs)) != len(hs):
        return EmbeddingCheck(False, "injective", "an H-vertex is used twice")
    lists = inst.list_sets
    for u, v in pairs:
        if v not in lists[u]:
            return EmbeddingCheck(False, "list", f"{v} not in L({u})")
    if variant.ordered:
        for (u1, v1), (u2, v2) in zip(pairs, pairs[1:]):
            if not v1 < v2:
                return EmbeddingCheck(False, "order", f"{u1}<{u2} but {v1}>={v2}")
    for i in range(len(pairs)):
        u1, v1 = pairs[i]
        for j in range(i + 1, len(pairs)):
            u2, v2 = pairs[j]
            eg = inst.has_edge_g(u1, u2)
            eh = inst.has_edge_h(v1, v2)
            if eg and not eh:
                return EmbeddingCheck(False, "edge", f"G-edge ({u1},{u2}) maps to non-edge ({v1},{v2})")
            if variant.induced and eh and not eg:
                return EmbeddingCheck(False, "induced", f"H-edge ({v1},{v2}) between images of non-adjacent {u1},{u2}")
    return EmbeddingCheck(True)


def degree_stats(inst: Instance) -> Tuple[int, int, int]:
    """``(max degree of G, max degree of H, max list length)``."""
    dg = max((len(s) for s in inst.adj_g), default=0)
    dh = max((len(s) for s in inst.adj_h), default=0)
    dl = max((len(lst) for lst in inst.lists), default=0)
    return dg, dh, dl


def transpose(inst: Instance) -> Instance:
    """Swap the roles of G and H, inverting the list map.

    An embedding of the result read backwards is an embedding of ``inst`` for
    the same variant, and vice versa.
    """
    inv = [[] for _ in range(inst.n_h)]
    for u, lst in enumerate(inst.lists):
        for v in lst:
            inv[v].append(u)
    return Instance.build(inst.n_h, inst.n_g, inst.edges_h, inst.edges_g, inv, inst.k)


def invert_embedding(emb: Embedding) -> Embedding:
    return Embedding(tuple((v, u) for u, v in emb.pairs))


def require_valid(inst: Instance) -> None:
    problems = validate_instance(inst)
    if problems:
        raise PreconditionError("invalid instance: " + "; ".join(problems))

