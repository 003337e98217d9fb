"""Worked fixtures runnable from the command line.

Each fixture recomputes a small scenario from scratch and returns
``(label, passed, shown)`` assertion triples: ``shown`` is the computed
value rendered as text, ``passed`` says whether it matches the expected
outcome.  The finite scenarios are classics of the extended-probability
literature; the fincof ones exercise the closed forms on the
finite/cofinite algebra.
"""

from __future__ import annotations

from fractions import Fraction

from .field import EPS, st_ratio
from .fincof import FinCofEvent, fincof_cond, fincof_nps_value, sampled_axiom_check
from .independence import approx_indep_set, indep_events, weak_indep
from .npsbridge import nps_equiv
from .popper import PopperSpace, validate_popper
from .spaces import NonstdMeasure, RandomVariable, SpaceAlgebra

F = Fraction


def _bool(value) -> str:
    return str(bool(value)).lower()


def mcgee_measures():
    algebra = SpaceAlgebra.discrete(["w1", "w2"])
    nu1 = NonstdMeasure.from_values(algebra, [F(1, 2) + EPS, F(1, 2) - EPS])
    nu2 = NonstdMeasure.from_values(algebra, [F(1, 2), F(1, 2)])
    return algebra, nu1, nu2


def fixture_mcgee():
    """Two worlds, one infinitesimally tipped coin."""
    algebra, nu1, nu2 = mcgee_measures()
    rows = []
    simeq = nps_equiv(nu1, nu2, "simeq")
    rows.append(("simeq(nu1, nu2)", simeq is True, _bool(simeq)))
    cert = nps_equiv(nu1, nu2, "aeq")
    ok = (not cert.equivalent) and cert.verify()
    x, y = cert.witness if cert.witness else (None, None)
    rows.append(
        (
            "aeq(nu1, nu2)",
            ok,
            f"{cert.verdict} (witness x={[str(v) for v in x.values]}, "
            f"y={[str(v) for v in y.values]})",
        )
    )
    w1 = RandomVariable.indicator(algebra, algebra.event({0}))
    w2 = RandomVariable.indicator(algebra, algebra.event({1}))
    margin = nu1.expectation(w1 - w2)
    rows.append(("E[x_w1 - x_w2] under nu1", margin == 2 * EPS, str(margin)))
    for alpha in (F(2), F(3, 2), F(101, 100)):
        value = nu1.expectation(w1 - w2.scale(alpha))
        rows.append(
            (f"E[x_w1 - {alpha}*x_w2] < 0", value.sign() < 0, str(value))
        )
    return rows


def fixture_fragile_independence():
    """Exact independence survives one choice of infinitesimal, not another."""
    algebra = SpaceAlgebra.discrete(["w1", "w2", "w3", "w4"])

    def nu(amount):
        return NonstdMeasure.from_values(
            algebra, [1 - 2 * EPS + amount, EPS - amount, EPS - amount, amount]
        )

    nu1, nu2 = nu(EPS**2), nu(EPS**3)
    u = algebra.event({1, 3})
    v = algebra.event({2, 3})
    vp = algebra.event({3})
    rows = [
        ("exact indep(U, V) under nu1", indep_events(nu1, u, v, mode="exact"), "true"),
        (
            "exact indep(U, V) under nu2",
            not indep_events(nu2, u, v, mode="exact"),
            "false",
        ),
    ]
    cert = nps_equiv(nu1, nu2, "aeq")
    rows.append(("aeq(nu1, nu2)", cert.equivalent, cert.verdict))
    rows.append(
        (
            "approx indep(U of V')",
            indep_events(nu1, u, vp, mode="approx"),
            "true",
        )
    )
    rows.append(
        (
            "approx indep(V' of U)",
            not indep_events(nu1, vp, u, mode="approx"),
            "false",
        )
    )
    return rows


def fixture_needapproximate():
    """Weak independence of two variables without set independence."""
    algebra = SpaceAlgebra.discrete([(i, j) for i in (1, 2, 3) for j in (1, 2)])
    table = {
        (1, 1): 1 - 3 * EPS - 3 * EPS**2,
        (1, 2): EPS,
        (2, 1): EPS,
        (2, 2): EPS**2,
        (3, 1): EPS,
        (3, 2): 2 * EPS**2,
    }
    nu = NonstdMeasure.from_values(algebra, [table[w] for w in algebra.worlds])
    x = RandomVariable.from_values(algebra, [w[0] for w in algebra.worlds])
    y = RandomVariable.from_values(algebra, [w[1] for w in algebra.worlds])
    weak = weak_indep(nu, x, y)
    set_indep = approx_indep_set(nu, y, [x])
    u = y.level_event(2)
    v = x.level_event(2)
    given = x.preimage_event([2, 3])
    lhs = st_ratio(nu.event_mass(v & u & given), nu.event_mass(u & given))
    rhs = st_ratio(nu.event_mass(v & given), nu.event_mass(given))
    return [
        ("weak_indep", weak, _bool(weak)),
        (
            "approx_indep_set(Y;[X])",
            (not set_indep) and (lhs, rhs) == (F(1, 3), F(1, 2)),
            f"{_bool(set_indep)} ({lhs} vs {rhs})",
        ),
    ]


def fixture_no_superset_closure():
    """Conditioning restricted to two-element evidence sets.

    The stated conditionals pin four rows; the remaining two are uniform.
    """
    algebra = SpaceAlgebra.discrete(["w1", "w2", "w3", "w4"])
    half, third = F(1, 2), F(1, 3)
    rows = {
        (0, 2): (third, 0, 1 - third, 0),
        (1, 3): (0, 1 - third, 0, third),
        (0, 1): (half, half, 0, 0),
        (2, 3): (0, 0, half, half),
        (0, 3): (half, 0, 0, half),
        (1, 2): (0, half, half, 0),
    }
    space = PopperSpace.from_rows(algebra, rows)
    cps_report = validate_popper(space, "cps")
    popper_report = validate_popper(space, "popper")
    return [
        ("axioms at level cps", cps_report.is_valid, _bool(cps_report.is_valid)),
        (
            "axioms at level popper",
            not popper_report.is_valid,
            f"{_bool(popper_report.is_valid)} "
            f"({len(popper_report.findings)} closure violations)",
        ),
    ]


def fixture_fincof_uniform():
    fin = FinCofEvent.finite
    cof = FinCofEvent.cofinite
    rows = []
    ok = all(fincof_cond("mu1", fin({0}), fin({0, n})) == F(1, 2) for n in range(1, 21))
    rows.append(("mu1({0} | {0,n}) = 1/2 for n=1..20", ok, _bool(ok)))
    triples = [
        (fin({0}), fin({0, 1}), fin({0, 1, 2})),
        (fin({2}), fin({2, 5}), fin(set(range(8)))),
        (fin({1, 2}), cof({0}), cof(set())),
        (cof({0, 1}), cof({0, 1}), cof({0})),
    ]
    report = sampled_axiom_check("mu1", triples)
    rows.append(
        ("axioms on sampled triples", report.is_valid, _bool(report.is_valid))
    )
    value = fincof_cond("mu1", fin({1, 2, 3}), cof(set()))
    rows.append(("finite given cofinite", value == 0, str(value)))
    return rows


def fixture_fincof_max():
    fin = FinCofEvent.finite
    rows = []
    value = fincof_cond("mu2", fin({1, 3}), fin({1, 2, 3}))
    rows.append(("mu2({1,3} | {1,2,3})", value == 1, str(value)))
    value = fincof_cond("mu2", fin({5, 9}), fin({5, 9}))
    rows.append(("mu2(U | U)", value == 1, str(value)))
    report = sampled_axiom_check(
        "mu2",
        [
            (fin({1}), fin({1, 2}), fin({1, 2, 3})),
            (fin({3}), fin({2, 3}), fin({0, 2, 3})),
        ],
    )
    rows.append(("axioms on sampled triples", report.is_valid, _bool(report.is_valid)))
    return rows


def fixture_fincof_counting():
    fin = FinCofEvent.finite
    rows = []
    value = fincof_nps_value("nu1", fin({3, 7}))
    rows.append(("nu1({3,7})", value == 2 * EPS, str(value)))
    samples = [
        (fin({1}), fin({1, 2, 3})),
        (fin({0, 2}), fin({0, 1, 2, 3})),
        (fin({4}), FinCofEvent.cofinite({0})),
    ]
    ok = all(
        st_ratio(fincof_nps_value("nu1", v.intersect(u)), fincof_nps_value("nu1", u))
        == fincof_cond("mu1", v, u)
        for v, u in samples
    )
    rows.append(("st of conditionals matches mu1", ok, _bool(ok)))
    return rows


def fixture_fincof_alternating():
    fin = FinCofEvent.finite
    rows = []
    value = fincof_nps_value("nu4", fin({1}))
    rows.append(("nu4({w1})", value == F(1, 2) + EPS, str(value)))
    for k in range(1, 7):
        bet = fincof_nps_value("nu4", fin({1})) - (
            2 ** (2 * k - 1)
        ) * fincof_nps_value("nu4", fin({2 * k}))
        rows.append(
            (f"E[x_w1 - {2**(2*k-1)}*x_w{2*k}]", bet == (2**k + 1) * EPS, str(bet))
        )
    return rows


FIXTURES = {
    "mcgee": fixture_mcgee,
    "fragile-independence": fixture_fragile_independence,
    "needapproximate": fixture_needapproximate,
    "no-superset-closure": fixture_no_superset_closure,
    "fincof-uniform": fixture_fincof_uniform,
    "fincof-max": fixture_fincof_max,
    "fincof-counting": fixture_fincof_counting,
    "fincof-alternating": fixture_fincof_alternating,
}


def run_fixture(name: str):
    """Execute a fixture; returns (all_passed, report lines)."""
    if name not in FIXTURES:
        raise KeyError(name)
    rows = FIXTURES[name]()
    lines = [f"{label}: {shown}" for label, _, shown in rows]
    failed = [label for label, ok, _ in rows if not ok]
    for label in failed:
        lines.append(f"FAILED: {label}")
    return (not failed, lines)
