"""Reductions from source problems, random generators and the JSON format."""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .core import Instance, degree_stats, validate_instance


class InstanceFormatError(ValueError):
    """Malformed or invalid instance file.  ``path`` names the offending field."""

    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


class ParameterError(ValueError):
    pass


# ---------------------------------------------------------------------------
# k-multicoloured independent set


@dataclass(frozen=True)
class McisInstance:
    """Graph on ``n_colors * class_size`` vertices; vertex ``s`` has colour
    ``s // class_size``.  Vertices are 0-based here."""

    n_colors: int
    class_size: int
    edges: Tuple[Tuple[int, int], ...] = ()

    def color(self, s: int) -> int:
        return s // self.class_size

    def violations(self) -> list:
        out = []
        n = self.n_colors * self.class_size
        for a, b in self.edges:
            if not (0 <= a < n and 0 <= b < n) or a == b:
                out.append(f"edge ({a},{b}) out of range or a loop")
            elif self.color(a) == self.color(b):
                out.append(f"edge ({a},{b}) joins two vertices of colour {self.color(a)}")
        return out


def brute_force_mcis(m: McisInstance) -> bool:
    """Is there one vertex per colour class, pairwise non-adjacent?"""
    edges = {frozenset(e) for e in m.edges}
    classes = [range(i * m.class_size, (i + 1) * m.class_size) for i in range(m.n_colors)]
    for pick in itertools.product(*classes):
        if all(frozenset((a, b)) not in edges for a, b in itertools.combinations(pick, 2)):
            return True
    return False


def reduce_mcis_to_olse(m: McisInstance) -> Instance:
    """OLSE instance whose optimum reaches ``k^2 N`` iff ``m`` has a
    multicoloured independent set.

    G and H each consist of ``k`` blocks of ``N`` sequences of ``kN``
    vertices, laid out block-major.  Sequence ``j`` of block ``i`` in G lists
    into sequence ``N-1-j`` of block ``i`` in H, position by position, so at
    most one sequence per block can be embedded.  An edge of ``m`` between
    vertex ``a`` (class ``i``, index ``j``) and ``b`` (class ``i'``, index
    ``j'``) links position ``b`` of G-sequence ``(i, j)`` with position
    ``a`` of G-sequence ``(i', j')``.  H is edgeless.  ``k`` is set on the
    result.
    """
    bad = m.violations()
    if bad:
        raise ParameterError("not a properly coloured MCIS instance: " + "; ".join(bad))
    k, N = m.n_colors, m.class_size
    width = k * N

    def vid(i, j, s):
        return (i * N + j) * width + s

    n = k * N * width
    lists = [None] * n
    for i in range(k):
        for j in range(N):
            for s in range(width):
                lists[vid(i, j, s)] = (vid(i, N - 1 - j, s),)
    edges = []
    for a, b in m.edges:
        (i, j), (i2, j2) = divmod(a, N), divmod(b, N)
        edges.append((vid(i, j, b), vid(i2, j2, a)))
    inst = Instance.build(n, n, edges, (), lists, k * k * N)
    dg, dh, dl = degree_stats(inst)
    assert dg <= 1 and dh == 0 and dl == 1, (dg, dh, dl)
    return inst


def random_mcis(n_colors: int, class_size: int, p: float, seed) -> McisInstance:
    rng = random.Random(seed)
    n = n_colors * class_size
    edges = tuple(
        (a, b) for a in range(n) for b in range(a + 1, n)
        if a // class_size != b // class_size and rng.random() < p
    )
    return McisInstance(n_colors, class_size, edges)


# ---------------------------------------------------------------------------
# independent set


def reduce_is_to_olse(n: int, edges, k: Optional[int] = None) -> Instance:
    """H edgeless on ``n`` vertices, ``L(u_i) = {v_i}``: solutions are exactly
    the independent sets of the input graph."""
    return Instance.build(n, n, edges, (), [(i,) for i in range(n)], k)


def brute_force_max_is(n: int, edges) -> int:
    adj = [0] * n
    for a, b in edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    best = 0
    for mask in range(1 << n):
        ok = all(not (adj[u] & mask) for u in range(n) if mask >> u & 1)
        if ok:
            best = max(best, bin(mask).count("1"))
    return best


# ---------------------------------------------------------------------------
# arc-annotated sequences


@dataclass(frozen=True)
class ArcAnnotatedSequence:
    chars: str
    arcs: Tuple[Tuple[int, int], ...] = ()

    def violations(self, endpoint_disjoint: bool = True) -> list:
        out = []
        seen = set()
        for a, b in self.arcs:
            if not (0 <= a < len(self.chars) and 0 <= b < len(self.chars)) or a == b:
                out.append(f"arc ({a},{b}) out of range or a loop")
                continue
            if endpoint_disjoint and (a in seen or b in seen):
                out.append(f"arc ({a},{b}) shares an endpoint")
            seen.update((a, b))
        return out


def encode_lapcs_as_olise(s1: ArcAnnotatedSequence, s2: ArcAnnotatedSequence) -> Instance:
    """Positions of ``s2`` become G, positions of ``s1`` become H, arcs become
    edges and each G-position lists the H-positions carrying its character."""
    bad = s1.violations() + s2.violations()
    if bad:
        raise ParameterError("; ".join(bad))
    lists = [[j for j, c in enumerate(s1.chars) if c == ch] for ch in s2.chars]
    return Instance.build(len(s2.chars), len(s1.chars), s2.arcs, s1.arcs, lists)


def brute_force_lapcs(s1: ArcAnnotatedSequence, s2: ArcAnnotatedSequence) -> int:
    """Longest common subsequence of ``s1`` and ``s2`` that keeps arcs: two
    matched positions are joined by an arc in ``s1`` iff they are in ``s2``.
    Enumerates every pair of equal-length position sets."""
    a1 = {frozenset(a) for a in s1.arcs}
    a2 = {frozenset(a) for a in s2.arcs}
    n1, n2 = len(s1.chars), len(s2.chars)
    for length in range(min(n1, n2), 0, -1):
        for p1 in itertools.combinations(range(n1), length):
            w1 = [s1.chars[i] for i in p1]
            for p2 in itertools.combinations(range(n2), length):
                if any(s2.chars[j] != c for j, c in zip(p2, w1)):
                    continue
                if all((frozenset((p1[x], p1[y])) in a1) == (frozenset((p2[x], p2[y])) in a2)
                       for x, y in itertools.combinations(range(length), 2)):
                    return length
    return 0


def clique_gadget(n: int, edges) -> ArcAnnotatedSequence:
    """Graph on ``n`` vertices as ``b a^n b`` blocks; edge ``{i, j}`` (i < j)
    is an arc from the ``j``-th ``a`` of block ``i`` to the ``i``-th ``a`` of
    block ``j``."""
    width = n + 2
    arcs = []
    for a, b in edges:
        i, j = min(a, b), max(a, b)
        arcs.append((i * width + 1 + j, j * width + 1 + i))
    return ArcAnnotatedSequence("".join("b" + "a" * n + "b" for _ in range(n)), tuple(sorted(arcs)))


def clique_pattern(k: int) -> ArcAnnotatedSequence:
    """The ``k``-clique in the encoding of :func:`clique_gadget`; length ``k(k+2)``."""
    return clique_gadget(k, itertools.combinations(range(k), 2))


def random_arc_sequence(length: int, alphabet: str, n_arcs: int, rng: random.Random) -> ArcAnnotatedSequence:
    chars = "".join(rng.choice(alphabet) for _ in range(length))
    free = list(range(length))
    rng.shuffle(free)
    arcs = []
    while len(arcs) < n_arcs and len(free) >= 2:
        a, b = free.pop(), free.pop()
        arcs.append((min(a, b), max(a, b)))
    return ArcAnnotatedSequence(chars, tuple(sorted(arcs)))


# ---------------------------------------------------------------------------
# random instances


@dataclass(frozen=True)
class GeneratorParams:
    n_g: int
    n_h: int
    max_deg_g: int = 2
    max_deg_h: int = 2
    max_list: int = 2
    min_list: int = 0
    density_g: float = 0.3
    density_h: float = 0.3

    def check(self):
        for name in ("n_g", "n_h", "max_deg_g", "max_deg_h", "max_list", "min_list"):
            if getattr(self, name) < 0:
                raise ParameterError(f"{name} must be non-negative")
        for name in ("density_g", "density_h"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ParameterError(f"{name} must lie in [0, 1]")
        if self.min_list > self.max_list:
            raise ParameterError(f"min_list={self.min_list} exceeds max_list={self.max_list}")
        if self.min_list > self.n_h and self.n_g > 0:
            raise ParameterError(f"min_list={self.min_list} exceeds n_h={self.n_h}")


def _random_graph(n, max_deg, density, rng):
    deg = [0] * n
    pairs = list(itertools.combinations(range(n), 2))
    rng.shuffle(pairs)
    edges = []
    for a, b in pairs:
        if deg[a] < max_deg and deg[b] < max_deg and rng.random() < density:
            edges.append((a, b))
            deg[a] += 1
            deg[b] += 1
    return edges


def generate_random(params: GeneratorParams, seed) -> Instance:
    """Random instance within the degree and list caps of ``params``;
    identical for identical ``(params, seed)``."""
    params.check()
    rng = random.Random(seed)
    eg = _random_graph(params.n_g, params.max_deg_g, params.density_g, rng)
    eh = _random_graph(params.n_h, params.max_deg_h, params.density_h, rng)
    top = min(params.max_list, params.n_h)
    lists = []
    for _ in range(params.n_g):
        size = rng.randint(min(params.min_list, top), top)
        lists.append(sorted(rng.sample(range(params.n_h), size)))
    return Instance.build(params.n_g, params.n_h, eg, eh, lists)


# ---------------------------------------------------------------------------
# JSON


_FIELDS = ("n_g", "n_h", "edges_g", "edges_h", "lists", "k")
_REQUIRED = ("n_g", "n_h", "edges_g", "edges_h", "lists")


def instance_to_json(inst: Instance) -> dict:
    inst = Instance.build(inst.n_g, inst.n_h, inst.edges_g, inst.edges_h, inst.lists, inst.k)
    out = {
        "n_g": inst.n_g,
        "n_h": inst.n_h,
        "edges_g": [list(e) for e in inst.edges_g],
        "edges_h": [list(e) for e in inst.edges_h],
        "lists": [list(lst) for lst in inst.lists],
    }
    if inst.k is not None:
        out["k"] = inst.k
    return out


def serialize_instance(inst: Instance) -> bytes:
    """Canonical encoding: fixed key order, sorted arrays, one trailing newline."""
    return (json.dumps(instance_to_json(inst), separators=(",", ":")) + "\n").encode("utf-8")


def _int(value, path):
    if isinstance(value, bool) or not isinstance(value, int):
        raise InstanceFormatError(f"expected an integer, got {value!r}", path)
    return value


def _pairs(value, path):
    if not isinstance(value, list):
        raise InstanceFormatError("expected an array of [a, b] pairs", path)
    out = []
    for i, e in enumerate(value):
        if not isinstance(e, list) or len(e) != 2:
            raise InstanceFormatError(f"expected a 2-element array, got {e!r}", f"{path}[{i}]")
        out.append((_int(e[0], f"{path}[{i}][0]"), _int(e[1], f"{path}[{i}][1]")))
    return tuple(out)


def instance_from_json(obj, strict: bool = True) -> Instance:
    if not isinstance(obj, dict):
        raise InstanceFormatError("top level must be a JSON object")
    for name in _REQUIRED:
        if name not in obj:
            raise InstanceFormatError(f"missing required field {name!r}", name)
    if strict:
        extra = sorted(set(obj) - set(_FIELDS))
        if extra:
            raise InstanceFormatError(f"unknown field {extra[0]!r}", extra[0])
    n_g = _int(obj["n_g"], "n_g")
    n_h = _int(obj["n_h"], "n_h")
    edges_g = _pairs(obj["edges_g"], "edges_g")
    edges_h = _pairs(obj["edges_h"], "edges_h")
    if not isinstance(obj["lists"], list):
        raise InstanceFormatError("expected an array of arrays", "lists")
    lists = []
    for u, lst in enumerate(obj["lists"]):
        if not isinstance(lst, list):
            raise InstanceFormatError("expected an array", f"lists[{u}]")
        lists.append(tuple(_int(v, f"lists[{u}][{i}]") for i, v in enumerate(lst)))
    k = obj.get("k")
    if k is not None:
        k = _int(k, "k")
    raw = Instance(n_g, n_h, edges_g, edges_h, tuple(lists), k)
    # order and duplicates are normalized; everything else must already hold
    problems = [p for p in validate_instance(raw) if "not ascending" not in p
                and "duplicate" not in p]
    if problems:
        raise InstanceFormatError(problems[0].split(": ", 1)[-1], problems[0].split(":", 1)[0])
    return Instance.build(n_g, n_h, edges_g, edges_h, lists, k)


def parse_instance(data, strict: bool = True) -> Instance:
    """Parse UTF-8 JSON bytes (or text) into a normalized :class:`Instance`."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InstanceFormatError(f"not UTF-8 (byte {exc.start})") from exc
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return instance_from_json(obj, strict=strict)


def write_instance(inst: Instance, path) -> None:
    with open(path, "wb") as fh:
        fh.write(serialize_instance(inst))


def read_instance(path, strict: bool = True) -> Instance:
    with open(path, "rb") as fh:
        return parse_instance(fh.read(), strict=strict)


def mcis_from_json(obj) -> McisInstance:
    try:
        return McisInstance(int(obj["n_colors"]), int(obj["class_size"]),
                            tuple((int(a), int(b)) for a, b in obj.get("edges", [])))
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceFormatError(f"bad MCIS file: {exc}") from exc


def arc_sequence_from_json(obj, path="") -> ArcAnnotatedSequence:
    try:
        return ArcAnnotatedSequence(str(obj["chars"]), tuple((int(a), int(b)) for a, b in obj.get("arcs", [])))
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceFormatError(f"bad arc-annotated sequence: {exc}", path) from exc


def graph_from_json(obj) -> Tuple[int, Sequence[Tuple[int, int]], Optional[int]]:
    try:
        return int(obj["n"]), [(int(a), int(b)) for a, b in obj.get("edges", [])], obj.get("k")
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceFormatError(f"bad graph file: {exc}") from exc
