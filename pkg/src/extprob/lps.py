"""Lexicographic probability systems over a finite algebra.

An LPS is a nonempty finite sequence of standard measures on one shared
algebra; expectations of random variables are compared lexicographically,
earlier measures dominating.  Two systems are equivalent when they order
every pair of random variables identically.  That universal statement is
decided here on reduced (linearly independent) sequences: equivalence holds
exactly when each reduced sequence is a lower-triangular positive-diagonal
transform of the other, and every verdict ships with machine-checkable
evidence, either the pair of transform matrices or a separating pair of
random variables.  Each verdict is re-checked against its own evidence
before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import _linalg
from .errors import AlgebraMismatchError, ZeroConditioningError
from .spaces import Event, RandomVariable, SpaceAlgebra, StdMeasure

LT, EQ, GT = -1, 0, 1


@dataclass(frozen=True)
class LPS:
    """Nonempty sequence of standard measures sharing one algebra."""

    algebra: SpaceAlgebra
    measures: tuple

    def __post_init__(self):
        if not self.measures:
            raise ValueError("an LPS needs at least one measure")
        for m in self.measures:
            if m.algebra != self.algebra:
                raise AlgebraMismatchError("measure on a different algebra")

    @classmethod
    def from_rows(cls, algebra: SpaceAlgebra, rows) -> "LPS":
        return cls(
            algebra, tuple(StdMeasure.from_values(algebra, row) for row in rows)
        )

    def __len__(self) -> int:
        return len(self.measures)

    def event_mass_vector(self, ev: Event):
        return tuple(m.event_mass(ev) for m in self.measures)

    def gives_positive_mass(self, ev: Event) -> bool:
        return any(m.event_mass(ev) > 0 for m in self.measures)

    def condition(self, ev: Event) -> "LPS":
        """Conditional system: the positive-mass subsequence, each conditioned.

        Undefined (raises) when every level gives the event probability zero.
        """
        kept = [m.condition(ev) for m in self.measures if m.event_mass(ev) > 0]
        if not kept:
            raise ZeroConditioningError(
                f"no level gives positive probability to {sorted(ev)}"
            )
        return LPS(self.algebra, tuple(kept))

    def expectation_vector(self, rv: RandomVariable):
        return tuple(m.expectation(rv) for m in self.measures)

    def compare_expectations(self, x: RandomVariable, y: RandomVariable) -> int:
        """Lexicographic comparison of E(x) and E(y); one of LT, EQ, GT."""
        for m in self.measures:
            ex, ey = m.expectation(x), m.expectation(y)
            if ex != ey:
                return GT if ex > ey else LT
        return EQ

    def classify(self) -> "LpsClassification":
        return classify_lps(self)

    def reduce(self) -> "LPS":
        return reduce_lps(self)


@dataclass(frozen=True)
class LpsClassification:
    """Structural flags, with the atom supports as canonical witness sets.

    In a finite algebra the least event of measure one is the support, so
    the three definitions are decided with supports standing in for the
    existential witness sets.
    """

    is_slps: bool
    is_mslps: bool
    is_lcps: bool
    support_witnesses: tuple

    def label(self) -> str:
        if self.is_lcps:
            return "LCPS"
        if self.is_mslps:
            return "MSLPS"
        if self.is_slps:
            return "SLPS"
        return "LPS"


def classify_lps(lps: LPS) -> LpsClassification:
    supports = [m.support() for m in lps.measures]
    k = len(supports)
    slps = all(
        lps.measures[b].event_mass(supports[g]) == 0
        for b in range(k)
        for g in range(b + 1, k)
    )
    mslps = all(
        lps.measures[b].event_mass(supports[g]) == 0
        for b in range(k)
        for g in range(k)
        if g != b
    )
    lcps = all(
        not (supports[b] & supports[g]) for b in range(k) for g in range(b + 1, k)
    )
    return LpsClassification(slps, mslps, lcps, tuple(supports))


def reduce_lps(lps: LPS) -> LPS:
    """Drop every measure lying in the rational span of the kept ones before it.

    The result has length at most the number of atoms and is equivalent to
    the input.
    """
    kept = []
    rows = []
    for m in lps.measures:
        if not _linalg.in_span(rows, m.mass):
            kept.append(m)
            rows.append(m.mass)
    return LPS(lps.algebra, tuple(kept))


@dataclass(frozen=True)
class EquivCertificate:
    """Machine-checkable evidence for an equivalence verdict.

    For ``equivalent``, ``forward_matrix`` rebuilds the reduced second
    sequence from the reduced first one and ``backward_matrix`` does the
    converse; both are lower triangular with positive diagonal.  For
    ``inequivalent``, ``witness`` is a pair of random variables whose
    expectations the two inputs order differently (strictly opposite, or
    strict against equal).
    """

    verdict: str
    lhs: LPS
    rhs: LPS
    forward_matrix: tuple = None
    backward_matrix: tuple = None
    witness: tuple = None

    @property
    def equivalent(self) -> bool:
        return self.verdict == "equivalent"

    def verify(self) -> bool:
        """Re-derive the verdict from the attached evidence alone."""
        if self.equivalent:
            ra, rb = reduce_lps(self.lhs), reduce_lps(self.rhs)
            return _matrix_rebuilds(self.forward_matrix, ra, rb) and _matrix_rebuilds(
                self.backward_matrix, rb, ra
            )
        x, y = self.witness
        ca = self.lhs.compare_expectations(x, y)
        cb = self.rhs.compare_expectations(x, y)
        return ca != cb


def _matrix_rebuilds(matrix, src: LPS, dst: LPS) -> bool:
    if matrix is None or len(matrix) != len(dst) or len(src) != len(dst):
        return False
    n = src.algebra.n_atoms
    for i, row in enumerate(matrix):
        if len(row) != len(dst):
            return False
        if row[i] <= 0 or any(row[j] != 0 for j in range(i + 1, len(row))):
            return False
        built = tuple(
            sum((row[j] * src.measures[j].mass[a] for j in range(i + 1)), Fraction(0))
            for a in range(n)
        )
        if built != dst.measures[i].mass:
            return False
    return True


def _triangular_coeffs(src_rows, dst_rows):
    """Lower-triangular rows expressing dst over src, or None.

    Row i must be a combination of src_rows[0..i] with a positive
    coefficient on src_rows[i].
    """
    out = []
    for i, target in enumerate(dst_rows):
        coeffs = _linalg.solve_combination(src_rows[: i + 1], target)
        if coeffs is None or coeffs[i] <= 0:
            return None
        padded = tuple(coeffs) + tuple(Fraction(0) for _ in range(len(dst_rows) - i - 1))
        out.append(padded)
    return tuple(out)


def _restrict(functional, basis):
    return tuple(
        sum((functional[a] * vec[a] for a in range(len(functional))), Fraction(0))
        for vec in basis
    )


def _separating_vector(rows_a, rows_b, n):
    """Atom vector z whose first nonzero level signs differ between the
    two row families, or None when the lexicographic sign functions agree.

    Enumerates the candidate decision levels (i, j); for each it solves, on
    the subspace annihilated by the earlier rows of both families, for a
    vector that is strictly positive at level i of one family and strictly
    negative (or absent) at level j of the other.
    """
    ha, hb = len(rows_a), len(rows_b)
    for i in range(ha + 1):
        for j in range(hb + 1):
            if i == ha and j == hb:
                continue
            constraints = list(rows_a[:i]) + list(rows_b[:j])
            basis = _linalg.nullspace_basis(constraints, n)
            if not basis:
                continue
            f = _restrict(rows_a[i], basis) if i < ha else None
            g = _restrict(rows_b[j], basis) if j < hb else None
            z = _pick_signed(f, g, basis, n)
            if z is not None:
                return z
    return None


def _pick_signed(f, g, basis, n):
    """Coordinates in span(basis) with f > 0 and g < 0 (None = unconstrained)."""
    def assemble(coords):
        vec = [Fraction(0)] * n
        for c, b in zip(coords, basis):
            for a in range(n):
                vec[a] += c * b[a]
        return tuple(vec)

    m = len(basis)
    if f is not None and g is not None:
        if all(x == 0 for x in f) or all(x == 0 for x in g):
            return None
        columns = [(f[j], g[j]) for j in range(m)]
        coords = _linalg.solve_combination(columns, (Fraction(1), Fraction(-1)))
        if coords is not None:
            return assemble(coords)
        # g proportional to f; separation only if the factor is negative.
        k = next(i for i in range(m) if f[i] != 0)
        lam = g[k] / f[k]
        if lam >= 0:
            return None
        coords = _linalg.solve_combination([(x,) for x in f], (Fraction(1),))
        return assemble(coords)
    h, want = (f, Fraction(1)) if f is not None else (g, Fraction(-1))
    if all(x == 0 for x in h):
        return None
    coords = _linalg.solve_combination([(x,) for x in h], (want,))
    return assemble(coords)


def _split_witness(algebra: SpaceAlgebra, z) -> tuple:
    """Split a separating vector into a pair of nonnegative variables."""
    pos = tuple(v if v > 0 else Fraction(0) for v in z)
    neg = tuple(-v if v < 0 else Fraction(0) for v in z)
    return (
        RandomVariable(algebra, pos),
        RandomVariable(algebra, neg),
    )


def equivalence(a: LPS, b: LPS) -> EquivCertificate:
    """Decide whether two systems order all random variables identically.

    Returns a self-verified certificate: triangular transform matrices when
    equivalent, a separating pair of random variables when not.
    """
    if a.algebra != b.algebra:
        raise AlgebraMismatchError("systems live on different algebras")
    ra, rb = reduce_lps(a), reduce_lps(b)
    rows_a = [m.mass for m in ra.measures]
    rows_b = [m.mass for m in rb.measures]
    forward = backward = None
    if len(rows_a) == len(rows_b):
        forward = _triangular_coeffs(rows_a, rows_b)
        backward = _triangular_coeffs(rows_b, rows_a) if forward else None
    if forward and backward:
        cert = EquivCertificate(
            "equivalent", a, b, forward_matrix=forward, backward_matrix=backward
        )
    else:
        z = _separating_vector(rows_a, rows_b, a.algebra.n_atoms)
        if z is None:
            raise AssertionError(
                "triangular criterion failed but no separating variable exists"
            )
        cert = EquivCertificate("inequivalent", a, b, witness=_split_witness(a.algebra, z))
    if not cert.verify():
        raise AssertionError("equivalence certificate failed its self-check")
    return cert
