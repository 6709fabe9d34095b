"""Tree families: adversarial constructions and randomized corpora.

Port assignments default to seeded-random so nothing downstream can rely on a
friendly numbering.  `port_mode="sorted"` assigns child ports in insertion
order with the parent port last, which makes insertion order the DFS visiting
order; the adversarial families insert the deep child last on purpose.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .tree import PortTree

DEFAULT_SEED = 1729

# full binary trees above this depth exceed the memory budget
MAX_FULL_BINARY_DEPTH = 21

PORT_MODES = ("seeded", "sorted")


class ParameterError(ValueError):
    """Generator parameters outside their documented range."""


class TreeBuilder:
    """Accumulates parent/child structure, then assigns ports on build."""

    def __init__(self):
        self.parent: list[int | None] = [None]
        self.kids: list[list[int]] = [[]]

    def add_child(self, parent_id: int) -> int:
        v = len(self.parent)
        self.parent.append(parent_id)
        self.kids.append([])
        self.kids[parent_id].append(v)
        return v

    def build(self, seed: int = DEFAULT_SEED, port_mode: str = "seeded") -> PortTree:
        if port_mode not in PORT_MODES:
            raise ParameterError(f"unknown port mode {port_mode!r}; expected one of {PORT_MODES}")
        n = len(self.parent)
        rng = random.Random(seed)
        parent_port: list[int | None] = [None] * n
        children: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for v in range(n):
            deg = len(self.kids[v]) + (self.parent[v] is not None)
            ports = list(range(deg))
            if port_mode == "seeded":
                rng.shuffle(ports)
            # slot order: children in insertion order, then parent last
            for slot, c in enumerate(self.kids[v]):
                children[v].append((ports[slot], c))
            if self.parent[v] is not None:
                parent_port[v] = ports[-1]
        return PortTree.from_records(self.parent, parent_port, children)


def gen_star_pendant(n: int, seed: int = DEFAULT_SEED, port_mode: str = "seeded") -> PortTree:
    """Root with n children, exactly one of which (u, inserted last) carries a
    single grandchild t.  In sorted port mode DFS reaches t only after every
    other child, the worst case for any fixed-order sweep."""
    if n < 2:
        raise ParameterError(f"star_pendant needs n >= 2, got {n}")
    b = TreeBuilder()
    for _ in range(n - 1):
        b.add_child(0)
    u = b.add_child(0)
    b.add_child(u)
    return b.build(seed, port_mode)


def gen_caterpillar(l: int, seed: int = DEFAULT_SEED, port_mode: str = "seeded") -> PortTree:
    """Spine u_0..u_l; each u_i (i <= l-2) carries a pendant v_{i+1} with i+3
    leaves.  Node count (l^2+7l-4)/2, depth l.  Pendants are inserted before
    the next spine node, so sorted port mode explores every pendant subtree
    before advancing along the spine."""
    if l < 2:
        raise ParameterError(f"caterpillar needs l >= 2, got {l}")
    b = TreeBuilder()
    u = 0
    for i in range(l):
        if i <= l - 2:
            v = b.add_child(u)
            for _ in range(i + 3):
                b.add_child(v)
        u = b.add_child(u)
    return b.build(seed, port_mode)


def gen_full_binary(h: int, seed: int = DEFAULT_SEED, port_mode: str = "seeded") -> PortTree:
    """Full binary tree: every non-leaf has 2 children, all leaves at level h."""
    if h < 1:
        raise ParameterError(f"full_binary needs h >= 1, got {h}")
    if h > MAX_FULL_BINARY_DEPTH:
        raise ParameterError(
            f"full_binary depth {h} needs {2 ** (h + 1) - 1} nodes, over the budget"
        )
    b = TreeBuilder()
    frontier = [0]
    for _ in range(h):
        nxt = []
        for v in frontier:
            nxt.append(b.add_child(v))
            nxt.append(b.add_child(v))
        frontier = nxt
    return b.build(seed, port_mode)


def gen_path(l: int, seed: int = DEFAULT_SEED, port_mode: str = "seeded") -> PortTree:
    """Path of length l: one node per level."""
    if l < 1:
        raise ParameterError(f"path needs l >= 1, got {l}")
    b = TreeBuilder()
    v = 0
    for _ in range(l):
        v = b.add_child(v)
    return b.build(seed, port_mode)


def gen_even_random(depth: int, branching: int, seed: int = DEFAULT_SEED) -> PortTree:
    """Random tree in which all leaves sit at the last level: every node above
    the final level gets between 1 and `branching` children."""
    if depth < 1 or branching < 1:
        raise ParameterError(f"even_random needs depth >= 1 and branching >= 1")
    rng = random.Random(seed)
    b = TreeBuilder()
    frontier = [0]
    for _ in range(depth):
        nxt = []
        for v in frontier:
            for _ in range(rng.randint(1, branching)):
                nxt.append(b.add_child(v))
        frontier = nxt
    return b.build(rng.randrange(2**31), "seeded")


def gen_random(node_count: int, max_degree: int, seed: int = DEFAULT_SEED) -> PortTree:
    """Random attachment tree: each new node hangs off a uniformly chosen
    existing node whose degree is still below max_degree."""
    if node_count < 1 or max_degree < 1:
        raise ParameterError("random needs node_count >= 1 and max_degree >= 1")
    if node_count > 2 and max_degree < 2:
        raise ParameterError("max_degree < 2 cannot host more than 2 nodes")
    rng = random.Random(seed)
    b = TreeBuilder()

    def deg(v):
        return len(b.kids[v]) + (b.parent[v] is not None)

    open_nodes = [0]
    for _ in range(node_count - 1):
        parent = rng.choice(open_nodes)
        v = b.add_child(parent)
        if deg(v) < max_degree:
            open_nodes.append(v)
        if deg(parent) >= max_degree:
            open_nodes.remove(parent)
    return b.build(rng.randrange(2**31), "seeded")


def gen_backoff(width: int = 9, seed: int = DEFAULT_SEED, port_mode: str = "seeded") -> PortTree:
    """Level profile [1, 2, 1, width]: a root with two children, one of which
    carries a single grandchild that fans out to `width` great-grandchildren.
    The narrow middle level makes the level scheduler step back by one."""
    if width < 1:
        raise ParameterError(f"backoff needs width >= 1, got {width}")
    b = TreeBuilder()
    a = b.add_child(0)
    b.add_child(0)
    x = b.add_child(a)
    for _ in range(width):
        b.add_child(x)
    return b.build(seed, port_mode)


@dataclass(frozen=True)
class GenConfig:
    """A named family plus its parameters; `generate` is the single entry point."""

    family: str
    params: tuple[int, ...] = ()
    seed: int = DEFAULT_SEED
    port_mode: str = "seeded"


FAMILIES = {
    "star_pendant": (("n",), gen_star_pendant),
    "caterpillar": (("l",), gen_caterpillar),
    "full_binary": (("h",), gen_full_binary),
    "path": (("l",), gen_path),
    "even_random": (("depth", "branching"), gen_even_random),
    "random": (("node_count", "max_degree"), gen_random),
    "backoff": (("width",), gen_backoff),
}


def generate(spec: GenConfig) -> PortTree:
    if spec.family not in FAMILIES:
        raise ParameterError(
            f"unknown family {spec.family!r}; valid: {', '.join(sorted(FAMILIES))}"
        )
    names, fn = FAMILIES[spec.family]
    if len(spec.params) != len(names):
        raise ParameterError(
            f"family {spec.family} takes parameters {names}, got {spec.params}"
        )
    if spec.family in ("even_random", "random"):
        return fn(*spec.params, seed=spec.seed)
    return fn(*spec.params, seed=spec.seed, port_mode=spec.port_mode)
