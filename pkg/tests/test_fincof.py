"""Finite/cofinite closed forms and sampled axiom checks."""

import random
from fractions import Fraction

import pytest

from extprob.errors import ZeroConditioningError
from extprob.field import EPS, ONE
from extprob.fincof import FinCofEvent, fincof_cond, fincof_nps_value, sampled_axiom_check

F = Fraction
fin = FinCofEvent.finite
cof = FinCofEvent.cofinite


class TestEvents:
    def test_intersections(self):
        assert fin({1, 2}).intersect(fin({2, 3})) == fin({2})
        assert fin({1, 2}).intersect(cof({2})) == fin({1})
        assert cof({1}).intersect(cof({2})) == cof({1, 2})

    def test_union_difference_complement(self):
        assert fin({1}).union(cof({1, 2})) == cof({2})
        assert cof(set()).difference(fin({0})) == cof({0})
        assert fin({5}).complement() == cof({5})

    def test_subset(self):
        assert fin({1}).issubset(fin({1, 2}))
        assert fin({3}).issubset(cof({1}))
        assert not fin({1}).issubset(cof({1}))
        assert not cof({1}).issubset(fin({1, 2}))
        assert cof({1, 2}).issubset(cof({1}))


class TestCountingFamily:
    def test_two_point_half(self):
        for n in range(1, 21):
            assert fincof_cond("mu1", fin({0}), fin({0, n})) == F(1, 2)

    def test_finite_given_cofinite_is_null(self):
        assert fincof_cond("mu1", fin({1, 2, 3}), cof(set())) == 0
        assert fincof_cond("mu1", cof({7}), cof(set())) == 1

    def test_empty_conditioning_rejected(self):
        with pytest.raises(ZeroConditioningError):
            fincof_cond("mu1", fin({1}), fin(set()))


class TestMaxFamily:
    def test_max_rule(self):
        assert fincof_cond("mu2", fin({1, 3}), fin({1, 2, 3})) == 1
        assert fincof_cond("mu2", fin({1, 2}), fin({1, 2, 3})) == 0
        assert fincof_cond("mu2", fin({5, 9}), fin({5, 9})) == 1

    def test_cofinite_rule_matches_counting_family(self):
        assert fincof_cond("mu2", fin({4}), cof(set())) == 0
        assert fincof_cond("mu2", cof({0}), cof({0, 1})) == 1


class TestCountingMeasure:
    def test_finite_counts(self):
        assert fincof_nps_value("nu1", fin({3, 7})) == 2 * EPS
        assert fincof_nps_value("nu1", fin(set())).is_zero

    def test_cofinite_counts(self):
        assert fincof_nps_value("nu1", cof({2, 4, 6})) == ONE - 3 * EPS

    def test_additivity_samples(self):
        rng = random.Random(89)
        for _ in range(50):
            a = fin(rng.sample(range(12), rng.randint(0, 4)))
            rest = cof(a.support)
            assert fincof_nps_value("nu1", a) + fincof_nps_value("nu1", rest) == ONE


class TestAlternatingMeasure:
    def test_first_atoms(self):
        assert fincof_nps_value("nu4", fin({1})) == F(1, 2) + EPS
        assert fincof_nps_value("nu4", fin({2})) == F(1, 4) - EPS
        assert fincof_nps_value("nu4", fin({3})) == F(1, 8) + EPS / 2
        assert fincof_nps_value("nu4", fin({4})) == F(1, 16) - EPS / 2

    def test_pair_bet_identity(self):
        for k in range(1, 7):
            value = fincof_nps_value("nu4", fin({1})) - (
                2 ** (2 * k - 1)
            ) * fincof_nps_value("nu4", fin({2 * k}))
            assert value == (2**k + 1) * EPS

    def test_infinitesimal_layer_telescopes(self):
        # A cofinite event's layer is minus the complement's layer sum.
        for cut in range(1, 9):
            excluded = fin(set(range(1, cut + 1)))
            total = fincof_nps_value("nu4", excluded) + fincof_nps_value(
                "nu4", cof(excluded.support)
            )
            assert total == ONE

    def test_rejects_atom_zero(self):
        with pytest.raises(ValueError):
            fincof_nps_value("nu4", fin({0}))


class TestSampledAxioms:
    def test_known_chain_instance(self):
        v, x, u = fin({0}), fin({0, 1}), fin({0, 1, 2})
        assert fincof_cond("mu1", v, u) == F(1, 3)
        assert fincof_cond("mu1", v, x) * fincof_cond("mu1", x, u) == F(1, 3)
        report = sampled_axiom_check("mu1", [(v, x, u)])
        assert report.is_valid

    def test_standard_part_correspondence(self):
        v, u = fin({1}), fin({1, 2, 3})
        ratio = fincof_nps_value("nu1", v) / fincof_nps_value("nu1", u)
        assert ratio.standard_part() == F(1, 3) == fincof_cond("mu1", v, u)

    def test_bad_triples_reported_not_raised(self):
        report = sampled_axiom_check("mu1", [(fin({0}), fin(set()), fin({0}))])
        assert not report.is_valid
        report = sampled_axiom_check("mu1", [(fin({5}), fin({1}), fin({1, 2}))])
        assert any("not nested" in f for f in report.findings)

    def test_random_nested_triples_pass_both_families(self):
        rng = random.Random(97)
        triples = []
        for _ in range(150):
            u_sup = set(rng.sample(range(10), rng.randint(1, 6)))
            x_sup = set(rng.sample(sorted(u_sup), rng.randint(1, len(u_sup))))
            v_sup = set(rng.sample(sorted(x_sup), rng.randint(0, len(x_sup))))
            if rng.random() < 0.3:
                u = cof(set(range(10)) - u_sup)
                x = cof(set(range(10)) - x_sup) if rng.random() < 0.5 else fin(x_sup)
                if not x.issubset(u):
                    continue
                v = fin(v_sup) if x.is_finite or rng.random() < 0.5 else x
                if not v.issubset(x):
                    continue
            else:
                u, x, v = fin(u_sup), fin(x_sup), fin(v_sup)
            triples.append((v, x, u))
        assert sampled_axiom_check("mu1", triples).is_valid
        assert sampled_axiom_check("mu2", triples).is_valid
