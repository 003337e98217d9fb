"""Seeded random generators shared by the test modules."""

from fractions import Fraction

from extprob.field import ZERO
from extprob.lps import LPS
from extprob.popper import PopperSpace
from extprob.spaces import NonstdMeasure, SpaceAlgebra, StdMeasure

F = Fraction


def algebra_of(n):
    return SpaceAlgebra.discrete([f"w{i}" for i in range(n)])


def random_row(rng, n, support=None):
    masses = [F(0)] * n
    support = support if support is not None else rng.sample(
        range(n), rng.randint(1, n)
    )
    for i in support:
        masses[i] = F(rng.randint(1, 6))
    s = sum(masses)
    return tuple(m / s for m in masses)


def random_lps(rng, algebra, max_len=None):
    n = algebra.n_atoms
    length = rng.randint(1, max_len or n)
    return LPS(
        algebra,
        tuple(StdMeasure(algebra, random_row(rng, n)) for _ in range(length)),
    )


def random_slps(rng, algebra):
    """Random system with pairwise disjoint supports (not covering rules ok)."""
    n = algebra.n_atoms
    atoms = list(range(n))
    rng.shuffle(atoms)
    k = rng.randint(1, n)
    cuts = sorted(rng.sample(range(1, n), k - 1)) if k > 1 else []
    rows = []
    start = 0
    for c in cuts + [n]:
        block = atoms[start:c]
        start = c
        rows.append(random_row(rng, n, support=block))
    # Optionally leave trailing blocks out so supports need not cover.
    keep = rng.randint(1, len(rows))
    return LPS(algebra, tuple(StdMeasure(algebra, r) for r in rows[:keep]))


def compose(system, schedule):
    n = system.algebra.n_atoms
    masses = tuple(
        sum(
            (schedule[i] * system.measures[i].mass[a] for i in range(len(system))),
            ZERO,
        )
        for a in range(n)
    )
    return NonstdMeasure(system.algebra, masses)


def random_forest(rng, algebra, max_depth=3):
    """Laminar conditioning family: recursive partitions of the atom set."""
    events = []

    def split(block, depth):
        ev = frozenset(block)
        events.append(ev)
        if depth >= max_depth or len(block) < 2 or rng.random() < 0.35:
            return
        k = rng.randint(2, len(block))
        items = list(block)
        rng.shuffle(items)
        cuts = sorted(rng.sample(range(1, len(items)), k - 1))
        start = 0
        for c in cuts + [len(items)]:
            split(items[start:c], depth + 1)
            start = c

    atoms = list(range(algebra.n_atoms))
    rng.shuffle(atoms)
    n_roots = rng.randint(1, min(3, len(atoms)))
    cuts = sorted(rng.sample(range(1, len(atoms)), n_roots - 1)) if n_roots > 1 else []
    start = 0
    for c in cuts + [len(atoms)]:
        split(atoms[start:c], 1)
        start = c
    return events


def random_treelike_space(rng, algebra, max_depth=3):
    """Valid treelike conditional space over a random forest.

    Conditionals are built top-down: each node draws edge weights to its
    children (zeros allowed, forcing deeper label levels) and leaves draw
    their own atom masses.
    """
    events = random_forest(rng, algebra, max_depth)
    children = {
        ev: [e for e in events if e < ev and not any(e < m < ev for m in events)]
        for ev in events
    }
    table = {}

    def fill(ev):
        kids = children[ev]
        n = algebra.n_atoms
        if not kids:
            row = [F(0)] * n
            for i in ev:
                row[i] = F(rng.randint(1, 5))
            s = sum(row)
            masses = tuple(r / s for r in row)
        else:
            weights = [F(rng.randint(0, 4)) for _ in kids]
            if sum(weights) == 0:
                weights[rng.randrange(len(kids))] = F(1)
            s = sum(weights)
            weights = [w / s for w in weights]
            masses = [F(0)] * n
            for kid, w in zip(kids, weights):
                kid_row = fill(kid)
                for a in range(n):
                    masses[a] += w * kid_row[a]
            masses = tuple(masses)
        table[ev] = StdMeasure(algebra, masses)
        return masses

    roots = [ev for ev in events if not any(ev < other for other in events)]
    for root in roots:
        fill(root)
    return PopperSpace(algebra, tuple(table), table)
