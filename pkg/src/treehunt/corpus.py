"""The default benchmark corpus: every adversarial construction, the scheduler's
back-off family, and seeded random trees, all reproducible from one seed."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .generators import (
    DEFAULT_SEED,
    gen_backoff,
    gen_caterpillar,
    gen_even_random,
    gen_full_binary,
    gen_path,
    gen_random,
    gen_star_pendant,
)
from .tree import PortTree


@dataclass(frozen=True)
class CorpusEntry:
    family: str
    param: int
    tree: PortTree


def default_corpus(seed: int = DEFAULT_SEED) -> list[CorpusEntry]:
    """Full corpus: paths up to 64, full binaries up to depth 8, caterpillars
    up to 50, star-pendants up to 50, back-off trees, 200 random trees up to
    500 nodes and 50 even random trees."""
    rng = random.Random(seed)
    out: list[CorpusEntry] = []
    for l in range(1, 65):
        out.append(CorpusEntry("path", l, gen_path(l, rng.randrange(2**31))))
    for h in range(1, 9):
        out.append(CorpusEntry("full_binary", h, gen_full_binary(h, rng.randrange(2**31))))
    for l in range(2, 51):
        out.append(CorpusEntry("caterpillar", l, gen_caterpillar(l, rng.randrange(2**31))))
    for n in range(2, 51):
        out.append(CorpusEntry("star_pendant", n, gen_star_pendant(n, rng.randrange(2**31))))
    for width in (9, 17, 33):
        out.append(CorpusEntry("backoff", width, gen_backoff(width, rng.randrange(2**31))))
    for i in range(200):
        n = rng.randint(2, 500)
        deg = rng.randint(2, 6)
        out.append(CorpusEntry("random", n, gen_random(n, deg, rng.randrange(2**31))))
    for i in range(50):
        depth = rng.randint(2, 5)
        branching = rng.randint(1, 3)
        out.append(CorpusEntry("even_random", depth, gen_even_random(depth, branching, rng.randrange(2**31))))
    return out


def acceptance_corpus(seed: int = DEFAULT_SEED) -> list[CorpusEntry]:
    """Deterministic 200-tree subset spanning every family and every scheduler
    branch; this is what the acceptance checks run on."""
    full = default_corpus(seed)
    by_family: dict[str, list[CorpusEntry]] = {}
    for entry in full:
        by_family.setdefault(entry.family, []).append(entry)
    picks: list[CorpusEntry] = []
    picks += by_family["path"][:32]
    picks += by_family["full_binary"]          # 8
    picks += by_family["caterpillar"][:34]
    picks += by_family["star_pendant"][:34]
    picks += by_family["backoff"]              # 3
    random_small = [e for e in by_family["random"] if e.tree.n <= 300]
    picks += random_small[:60]
    picks += by_family["even_random"][: 200 - len(picks)]
    if len(picks) < 200:
        picks += random_small[60 : 60 + 200 - len(picks)]
    assert len(picks) == 200, f"acceptance corpus has {len(picks)} trees"
    return picks


def small_even_corpus(seed: int = DEFAULT_SEED, count: int = 50, max_level_width: int = 12) -> list[CorpusEntry]:
    """Even random trees small enough for the cover-walk oracle: every level
    holds at most `max_level_width` nodes."""
    rng = random.Random(seed)
    out: list[CorpusEntry] = []
    while len(out) < count:
        depth = rng.randint(2, 5)
        branching = rng.randint(1, 2)
        tree = gen_even_random(depth, branching, rng.randrange(2**31))
        widths = [0] * (tree.depth + 1)
        for lv in tree.level:
            widths[lv] += 1
        if max(widths) <= max_level_width:
            out.append(CorpusEntry("even_random", depth, tree))
    return out
