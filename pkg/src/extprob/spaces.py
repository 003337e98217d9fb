"""Finite sample spaces, events, measures, expectation, and conditioning.

A :class:`SpaceAlgebra` is given by its atom partition; every event of the
algebra is a union of atoms and is represented as a frozenset of atom
indices.  Measures assign exact masses to atoms: rationals for
:class:`StdMeasure`, field elements for :class:`NonstdMeasure`.  All values
are immutable and all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import AlgebraMismatchError, ZeroConditioningError
from .field import NonstdNumber, ONE, ZERO

Event = frozenset


@dataclass(frozen=True)
class SpaceAlgebra:
    """Worlds plus the partition into atoms that generates the algebra."""

    worlds: tuple
    atoms: tuple

    @classmethod
    def discrete(cls, labels) -> "SpaceAlgebra":
        """Algebra in which every world is its own atom."""
        labels = tuple(labels)
        return cls(labels, tuple((w,) for w in labels))

    @property
    def n_atoms(self) -> int:
        return len(self.atoms)

    def full_event(self) -> Event:
        return frozenset(range(len(self.atoms)))

    def event(self, indices) -> Event:
        ev = frozenset(indices)
        for i in ev:
            if not (0 <= i < len(self.atoms)):
                raise ValueError(f"atom index {i} out of range")
        return ev

    def events(self, include_empty: bool = False):
        """All events, in lexicographic order of their sorted index tuples."""
        n = len(self.atoms)
        out = []
        if include_empty:
            out.append(frozenset())
        masks = sorted(
            (tuple(sorted(s)) for s in _subsets(range(n)) if s),
        )
        out.extend(frozenset(m) for m in masks)
        return out

    def complement(self, ev: Event) -> Event:
        return self.full_event() - ev

    def describe_event(self, ev: Event) -> str:
        worlds = sorted(w for i in ev for w in self.atoms[i])
        return "{" + ",".join(str(w) for w in worlds) + "}"


def _subsets(items):
    items = list(items)
    for mask in range(1 << len(items)):
        yield {items[i] for i in range(len(items)) if mask >> i & 1}


@dataclass(frozen=True)
class ValidationReport:
    """Collected invariant violations; empty means valid."""

    findings: tuple

    def __bool__(self) -> bool:
        return not self.findings

    @property
    def is_valid(self) -> bool:
        return not self.findings

    def lines(self):
        return ["ok"] if self.is_valid else [f"violation: {f}" for f in self.findings]


class _MeasureBase:
    __slots__ = ()

    def event_mass(self, ev: Event):
        """Total mass of an event (zero element for the empty event).

        Cached per event; exhaustive quantifications revisit the same
        events constantly.
        """
        cache = getattr(self, "_mass_cache", None)
        if cache is None:
            cache = {}
            object.__setattr__(self, "_mass_cache", cache)
        value = cache.get(ev)
        if value is None:
            value = sum((self.mass[i] for i in ev), start=self._zero)
            cache[ev] = value
        return value

    def expectation(self, rv: "RandomVariable"):
        if rv.algebra != self.algebra:
            raise AlgebraMismatchError("random variable on a different algebra")
        return sum(
            (self.mass[i] * rv.values[i] for i in range(len(self.mass))),
            start=self._zero,
        )

    def support(self) -> Event:
        return frozenset(i for i, m in enumerate(self.mass) if m != self._zero)

    def condition(self, ev: Event):
        total = self.event_mass(ev)
        if total == self._zero:
            raise ZeroConditioningError(
                f"conditioning event has mass zero: {sorted(ev)}"
            )
        masses = tuple(
            self.mass[i] / total if i in ev else self._zero
            for i in range(len(self.mass))
        )
        return type(self)(self.algebra, masses)


@dataclass(frozen=True)
class StdMeasure(_MeasureBase):
    """Finitely additive probability with rational atom masses."""

    algebra: SpaceAlgebra
    mass: tuple

    _zero = Fraction(0)

    @classmethod
    def from_values(cls, algebra: SpaceAlgebra, values) -> "StdMeasure":
        return cls(algebra, tuple(Fraction(v) for v in values))

    @classmethod
    def uniform(cls, algebra: SpaceAlgebra) -> "StdMeasure":
        n = algebra.n_atoms
        return cls(algebra, tuple(Fraction(1, n) for _ in range(n)))

    @classmethod
    def point(cls, algebra: SpaceAlgebra, atom: int) -> "StdMeasure":
        return cls(
            algebra,
            tuple(
                Fraction(1) if i == atom else Fraction(0)
                for i in range(algebra.n_atoms)
            ),
        )

    def to_nonstd(self) -> "NonstdMeasure":
        return NonstdMeasure(
            self.algebra, tuple(NonstdNumber.from_fraction(m) for m in self.mass)
        )

    def invariant_findings(self, where: str = "measure"):
        out = []
        if len(self.mass) != self.algebra.n_atoms:
            out.append(f"{where}: {len(self.mass)} masses for {self.algebra.n_atoms} atoms")
            return out
        for i, m in enumerate(self.mass):
            if m < 0:
                out.append(f"{where}: negative mass {m} at atom {i}")
        total = sum(self.mass, start=Fraction(0))
        if total != 1:
            out.append(f"{where}: masses sum to {total}, not 1")
        return out


@dataclass(frozen=True)
class NonstdMeasure(_MeasureBase):
    """Finitely additive probability with masses in the infinitesimal field."""

    algebra: SpaceAlgebra
    mass: tuple

    _zero = ZERO

    @classmethod
    def from_values(cls, algebra: SpaceAlgebra, values) -> "NonstdMeasure":
        return cls(algebra, tuple(NonstdNumber.coerce(v) for v in values))

    def standard_part(self) -> StdMeasure:
        return StdMeasure(
            self.algebra, tuple(m.standard_part() for m in self.mass)
        )

    def invariant_findings(self, where: str = "measure"):
        out = []
        if len(self.mass) != self.algebra.n_atoms:
            out.append(f"{where}: {len(self.mass)} masses for {self.algebra.n_atoms} atoms")
            return out
        for i, m in enumerate(self.mass):
            if m.sign() < 0:
                out.append(f"{where}: negative mass {m} at atom {i}")
            elif not m.is_limited:
                out.append(f"{where}: unlimited mass {m} at atom {i}")
        total = sum(self.mass, start=ZERO)
        if total != ONE:
            out.append(f"{where}: masses sum to {total}, not 1")
        return out


@dataclass(frozen=True)
class RandomVariable:
    """Rational-valued function of the atoms (measurable by construction)."""

    algebra: SpaceAlgebra
    values: tuple

    @classmethod
    def from_values(cls, algebra: SpaceAlgebra, values) -> "RandomVariable":
        return cls(algebra, tuple(Fraction(v) for v in values))

    @classmethod
    def indicator(cls, algebra: SpaceAlgebra, ev: Event) -> "RandomVariable":
        return cls(
            algebra,
            tuple(
                Fraction(1) if i in ev else Fraction(0)
                for i in range(algebra.n_atoms)
            ),
        )

    def scale(self, k) -> "RandomVariable":
        k = Fraction(k)
        return RandomVariable(self.algebra, tuple(v * k for v in self.values))

    def __add__(self, other: "RandomVariable") -> "RandomVariable":
        if other.algebra != self.algebra:
            raise AlgebraMismatchError("random variables on different algebras")
        return RandomVariable(
            self.algebra, tuple(a + b for a, b in zip(self.values, other.values))
        )

    def __sub__(self, other: "RandomVariable") -> "RandomVariable":
        return self + other.scale(-1)

    def range_values(self):
        return sorted(set(self.values))

    def level_event(self, value) -> Event:
        """Atoms on which the variable takes the given value."""
        value = Fraction(value)
        return frozenset(i for i, v in enumerate(self.values) if v == value)

    def preimage_event(self, values) -> Event:
        wanted = {Fraction(v) for v in values}
        return frozenset(i for i, v in enumerate(self.values) if v in wanted)


def algebra_findings(algebra: SpaceAlgebra):
    out = []
    seen = {}
    covered = []
    for b, block in enumerate(algebra.atoms):
        if not block:
            out.append(f"atoms[{b}]: empty block")
        for w in block:
            if w in seen:
                out.append(f"atoms[{b}]: world {w!r} already in atoms[{seen[w]}]")
            seen[w] = b
            covered.append(w)
    missing = [w for w in algebra.worlds if w not in seen]
    if missing:
        out.append(f"worlds not covered by atoms: {missing}")
    extra = [w for w in covered if w not in set(algebra.worlds)]
    if extra:
        out.append(f"atoms mention unknown worlds: {extra}")
    return out


def validate_space(algebra: SpaceAlgebra, measures=()) -> ValidationReport:
    """Check partition and measure invariants; returns a report, never raises."""
    findings = list(algebra_findings(algebra))
    for k, m in enumerate(measures):
        if m.algebra != algebra:
            findings.append(f"measures[{k}]: built on a different algebra")
            continue
        findings.extend(m.invariant_findings(where=f"measures[{k}]"))
    return ValidationReport(tuple(findings))
