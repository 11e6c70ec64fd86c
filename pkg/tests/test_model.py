import json

import numpy as np
import pytest

from kitaevgl import (
    ChainSpec,
    GainProfile,
    InvalidSiteError,
    InvalidSizeError,
    InvalidSpecError,
    alternating_profile,
    is_pt_symmetric_nonhermitian_part,
    random_balanced_profile,
    two_impurity_profile,
    zero_profile,
)


class TestAlternatingProfile:
    def test_published_n12_pattern(self):
        prof = alternating_profile(12, 0.15)
        expected = (0, 0.15, -0.15, 0.15, -0.15, 0.15, -0.15, 0.15, -0.15, 0.15, -0.15, 0)
        assert prof.strengths == pytest.approx(expected, abs=0)

    def test_zero_strength(self):
        assert alternating_profile(4, 0.0).strengths == (0.0, 0.0, 0.0, 0.0)

    def test_direct_formula_n6(self):
        prof = alternating_profile(6, 1.0)
        assert prof.strengths == (0.0, 1.0, -1.0, 1.0, -1.0, 0.0)
        assert prof.is_balanced  # even N: interior signs cancel

    def test_direct_formula_n5_unbalanced(self):
        prof = alternating_profile(5, 1.0)
        assert prof.strengths == (0.0, 1.0, -1.0, 1.0, 0.0)
        assert prof.total == pytest.approx(1.0)
        assert not prof.is_balanced

    def test_too_short(self):
        with pytest.raises(InvalidSizeError):
            alternating_profile(3, 0.1)

    @pytest.mark.parametrize("n", range(4, 34, 2))
    def test_even_chains_balanced_free_pt(self, n):
        for g0 in (0.05, 0.3, 1.7):
            prof = alternating_profile(n, g0)
            assert prof.is_balanced
            assert prof.has_free_edges
            assert is_pt_symmetric_nonhermitian_part(prof)

    @pytest.mark.parametrize("n", range(5, 33, 2))
    def test_odd_chains_flagged_unbalanced(self, n):
        prof = alternating_profile(n, 0.4)
        assert not prof.is_balanced


class TestTwoImpurityProfile:
    def test_published_fig1_profile(self):
        prof = two_impurity_profile(12, 0.3, 2, 11)
        expected = [0.0] * 12
        expected[1], expected[10] = 0.3, -0.3
        assert prof.strengths == tuple(expected)
        assert prof.is_balanced and prof.has_free_edges

    def test_zero_strength(self):
        prof = two_impurity_profile(12, 0.0, 2, 11)
        assert prof.strengths == (0.0,) * 12

    def test_small_chain(self):
        assert two_impurity_profile(5, 0.5, 2, 4).strengths == (0, 0.5, 0, -0.5, 0)

    @pytest.mark.parametrize("gain,loss", [(1, 5), (5, 9), (2, 9), (0, 3), (2, 2)])
    def test_bad_sites_rejected(self, gain, loss):
        with pytest.raises(InvalidSiteError):
            two_impurity_profile(9, 0.1, gain, loss)


class TestRandomBalancedProfile:
    def test_zero_strength_is_all_zero(self):
        assert random_balanced_profile(12, 0.0, 123).strengths == (0.0,) * 12

    def test_postconditions_seed42(self):
        prof = random_balanced_profile(12, 0.5, 42)
        assert prof.strengths[0] == 0.0 and prof.strengths[-1] == 0.0
        assert abs(prof.total) <= 1e-15 * 12 * 0.5

    def test_deterministic(self):
        a = random_balanced_profile(12, 0.5, 42)
        b = random_balanced_profile(12, 0.5, 42)
        assert a.strengths == b.strengths  # bit-identical

    def test_seeds_differ(self):
        assert random_balanced_profile(12, 0.5, 1) != random_balanced_profile(12, 0.5, 2)

    def test_balance_and_edges_over_many_draws(self):
        rng = np.random.default_rng(7)
        for _ in range(60):
            n = int(rng.integers(4, 40))
            strength = float(rng.uniform(0, 2))
            prof = random_balanced_profile(n, strength, int(rng.integers(0, 2**31)))
            assert prof.has_free_edges
            assert abs(prof.total) <= 1e-15 * n * max(strength, 1e-30)
            assert max(abs(g) for g in prof.strengths) <= 2 * strength

    def test_rejects_bad_arguments(self):
        with pytest.raises(InvalidSizeError):
            random_balanced_profile(3, 0.5, 0)
        with pytest.raises(InvalidSpecError):
            random_balanced_profile(8, -0.5, 0)


class TestPtPredicate:
    def test_explicit_reflection_odd(self):
        assert is_pt_symmetric_nonhermitian_part(GainProfile((0, 0.7, -0.7, 0)))

    def test_published_alternating_profile(self):
        assert is_pt_symmetric_nonhermitian_part(alternating_profile(12, 0.15))

    def test_reflection_even_fails(self):
        assert not is_pt_symmetric_nonhermitian_part(GainProfile((0, 0.7, 0.7, 0)))

    def test_odd_chain_needs_zero_midpoint(self):
        assert is_pt_symmetric_nonhermitian_part(GainProfile((0, 0.3, 0, -0.3, 0)))
        assert not is_pt_symmetric_nonhermitian_part(GainProfile((0, 0.3, 0.1, -0.3, 0)))

    def test_tolerance(self):
        prof = GainProfile((0, 0.5, -0.5 + 1e-9, 0))
        assert not is_pt_symmetric_nonhermitian_part(prof, tolerance=1e-12)
        assert is_pt_symmetric_nonhermitian_part(prof, tolerance=1e-6)


class TestChainSpec:
    def test_roundtrip_json(self):
        spec = ChainSpec(6, 1.0, 0.8, -0.3, alternating_profile(6, 0.2))
        again = ChainSpec.from_json(spec.to_json())
        assert again == spec

    def test_json_document_keys(self):
        doc = ChainSpec(4, 1.0, 1.0, 0.0, zero_profile(4)).to_json_dict()
        assert set(doc) == {"n_sites", "hopping", "pairing", "chemical_potential", "profile"}
        assert doc["profile"] == [0.0, 0.0, 0.0, 0.0]

    def test_validation(self):
        with pytest.raises(InvalidSizeError):
            ChainSpec(1, 1.0, 1.0, 0.0, zero_profile(2))
        with pytest.raises(InvalidSpecError):
            ChainSpec(4, 1.0, 1.0, 0.0, zero_profile(6))
        with pytest.raises(InvalidSpecError):
            ChainSpec(4, float("nan"), 1.0, 0.0, zero_profile(4))
        with pytest.raises(InvalidSpecError):
            ChainSpec(4, 1.0, -0.5, 0.0, zero_profile(4))
        with pytest.raises(InvalidSpecError):
            GainProfile((0.0, float("inf"), 0.0, 0.0))

    def test_malformed_documents_rejected(self):
        with pytest.raises(InvalidSpecError):
            ChainSpec.from_json("not json at all {")
        with pytest.raises(InvalidSpecError):
            ChainSpec.from_json(json.dumps({"n_sites": 4, "hopping": 1.0}))
        with pytest.raises(InvalidSpecError):
            ChainSpec.from_json(json.dumps([1, 2, 3]))

    def test_with_replaces_and_revalidates(self):
        spec = ChainSpec(4, 1.0, 1.0, 0.0, zero_profile(4))
        assert spec.with_(chemical_potential=2.0).chemical_potential == 2.0
        with pytest.raises(InvalidSpecError):
            spec.with_(pairing=-1.0)
