import json
import math
from pathlib import Path

import numpy as np
import pytest

from kitaevgl import (
    ChainSpec,
    InvalidSpecError,
    PersistenceError,
    ProfileSpec,
    SweepAxis,
    SweepConfig,
    alternating_profile,
    run_random_ensemble,
    run_sweep,
    zero_profile,
)
from kitaevgl.sweep import render_csv, render_spectra_csv, spectra_sidecar_path

GOLDEN = Path(__file__).parent / "golden"
CRITICAL = json.loads((GOLDEN / "critical_values.json").read_text())


def mu_sweep_config(g0=0.15, steps=121, **kwargs):
    base = ChainSpec(12, 1.0, 1.0, 0.0, alternating_profile(12, g0))
    return SweepConfig(
        base=base,
        axis=SweepAxis("mu", -3.0, 3.0, steps),
        profile=ProfileSpec(kind="alternating", g0=g0),
        **kwargs,
    )


def delta_sweep_config(g0, steps=121, **kwargs):
    base = ChainSpec(12, 1.0, 1.0, 1.0, alternating_profile(12, g0))
    return SweepConfig(
        base=base,
        axis=SweepAxis("delta", 0.0, 3.0, steps),
        profile=ProfileSpec(kind="alternating", g0=g0),
        **kwargs,
    )


class TestMuSweep:
    def test_zero_mode_region_tracks_topological_phase(self):
        # near-zero states detected exactly on |mu| < 2|T|, up to one grid step
        records = run_sweep(mu_sweep_config(0.15))
        step = 0.05
        for r in records:
            if abs(r.mu) < 2.0 - 1.5 * step:
                assert r.zero_count >= 2, f"missed zero modes at mu={r.mu}"
            if abs(r.mu) > 2.0 + 1.5 * step:
                assert r.zero_count < 2, f"spurious zero modes at mu={r.mu}"
        assert {r.zero_count for r in records} == {0, 2}

    def test_hermitian_sweep_is_real(self):
        base = ChainSpec(12, 1.0, 1.0, 0.0, zero_profile(12))
        config = SweepConfig(base=base, axis=SweepAxis("mu", -3.0, 3.0, 31))
        for r in run_sweep(config):
            assert r.reality == "Real"
            assert r.max_imag <= 1e-12
            assert not r.failed

    def test_max_imag_even_in_mu(self):
        records = run_sweep(mu_sweep_config(0.15))
        n = len(records)
        for i in range(n):
            assert records[i].max_imag == pytest.approx(
                records[n - 1 - i].max_imag, abs=1e-10
            )

    def test_complex_region_ends_at_critical_mu(self):
        records = run_sweep(mu_sweep_config(0.1))
        mu_c = CRITICAL["mu_c"]["0.1"]
        for r in records:
            if abs(r.mu) < mu_c - 0.05:
                assert r.max_imag > 1e-9
            if abs(r.mu) > mu_c + 0.05:
                assert r.max_imag <= 1e-9


class TestDeltaSweep:
    @pytest.mark.parametrize("g0", [0.1, 0.15])
    def test_main_transition(self, g0):
        records = run_sweep(delta_sweep_config(g0))
        d_c = CRITICAL["delta_c"][str(g0)]
        lo = CRITICAL["delta_bracket"][0]
        for r in records:
            if lo <= r.delta < d_c - 0.03:
                assert r.max_imag <= 1e-9, f"unexpected complex point at delta={r.delta}"
            if r.delta > d_c + 0.03:
                assert r.max_imag > 1e-9, f"unexpectedly real at delta={r.delta}"

    def test_exceptional_point_bubbles_below_transition(self):
        """Narrow complex slivers exist below the main crossing.

        At finite N the spectrum briefly breaks PT symmetry near level
        crossings; on the default grid these land at delta = 0.025 and 0.3
        for g0 = 0.1 and at delta = 0.55 for g0 = 0.15, with |Im| of order
        1e-4..1e-3.  They are physical, not solver noise (the independent
        oracle in test_eigen reproduces the same spectra), and they are why
        the critical-search range must bracket the main transition.
        """
        by_delta_01 = {round(r.delta, 4): r for r in run_sweep(delta_sweep_config(0.1))}
        for d in (0.025, 0.3):
            assert 1e-5 < by_delta_01[d].max_imag < 5e-3
        by_delta_015 = {round(r.delta, 4): r for r in run_sweep(delta_sweep_config(0.15))}
        assert 1e-5 < by_delta_015[0.55].max_imag < 5e-3

    def test_strong_strength_complex_everywhere(self):
        records = run_sweep(delta_sweep_config(0.5))
        assert all(r.max_imag > 1e-9 for r in records)


class TestSweepOutput:
    def test_csv_contract(self, tmp_path):
        out = tmp_path / "sweep.csv"
        config = mu_sweep_config(0.15, steps=11, out_path=out, store_spectra=True)
        records = run_sweep(config)
        text = out.read_text()
        lines = text.strip().split("\n")
        assert lines[0] == "mu,delta,g0,seed,max_imag,reality,zero_count,min_abs_eig"
        assert len(lines) == 12
        first = lines[1].split(",")
        assert float(first[0]) == -3.0
        assert float(first[2]) == 0.15  # 17 significant digits round-trip
        assert first[3] == ""  # no seed for deterministic profiles
        assert first[5] in ("Real", "PartiallyComplex", "FullyComplex")
        sidecar = spectra_sidecar_path(out)
        assert sidecar.name == "sweep.spectra.csv"
        spectra_lines = sidecar.read_text().strip().split("\n")
        assert spectra_lines[0] == "point_index,eig_index,re,im"
        assert len(spectra_lines) == 1 + 11 * 24

    def test_seventeen_digit_roundtrip(self):
        records = run_sweep(mu_sweep_config(0.15, steps=7))
        text = render_csv(records)
        for line, r in zip(text.strip().split("\n")[1:], records):
            cols = line.split(",")
            assert float(cols[0]) == r.mu
            assert float(cols[4]) == r.max_imag
            assert float(cols[7]) == r.min_abs_eig

    def test_rerun_is_byte_identical(self, tmp_path):
        out_a, out_b = tmp_path / "a.csv", tmp_path / "b.csv"
        run_sweep(mu_sweep_config(0.1, steps=31, out_path=out_a, store_spectra=True))
        run_sweep(mu_sweep_config(0.1, steps=31, out_path=out_b, store_spectra=True))
        assert out_a.read_bytes() == out_b.read_bytes()
        assert spectra_sidecar_path(out_a).read_bytes() == spectra_sidecar_path(out_b).read_bytes()

    def test_worker_count_does_not_change_output(self):
        config = mu_sweep_config(0.15, steps=31)
        serial = run_sweep(config, n_workers=1)
        parallel = run_sweep(config, n_workers=6)
        assert render_csv(serial) == render_csv(parallel)

    def test_records_in_grid_order(self):
        records = run_sweep(mu_sweep_config(0.15, steps=13))
        mus = [r.mu for r in records]
        assert mus == sorted(mus)

    def test_persistence_error_keeps_records(self, tmp_path):
        out = tmp_path / "missing_dir" / "sweep.csv"
        config = mu_sweep_config(0.15, steps=5, out_path=out)
        with pytest.raises(PersistenceError) as exc_info:
            run_sweep(config)
        assert len(exc_info.value.records) == 5

    def test_spectra_rows_match_eigenvalues(self):
        config = mu_sweep_config(0.15, steps=5, store_spectra=True)
        records = run_sweep(config)
        text = render_spectra_csv(records)
        rows = text.strip().split("\n")[1:]
        point, eig_i, re, im = rows[0].split(",")
        assert (int(point), int(eig_i)) == (0, 0)
        assert complex(float(re), float(im)) == records[0].eigenvalues[0]


class TestSweepConfigJson:
    def test_flat_document(self):
        doc = {
            "n": 12, "t": 1.0, "delta": 1.0, "mu": 0.0,
            "axis": "mu", "min": -3.0, "max": 3.0, "steps": 21,
            "profile": "alternating", "g0": 0.15,
            "out": "sweep.csv", "store_spectra": True,
        }
        config = SweepConfig.from_json(json.dumps(doc))
        assert config.axis.steps == 21
        assert config.profile.g0 == 0.15
        assert config.base.profile == alternating_profile(12, 0.15)
        assert config.store_spectra

    def test_spec_document(self):
        spec = ChainSpec(6, 1.0, 0.5, 0.2, zero_profile(6))
        doc = {"spec": spec.to_json_dict(), "axis": "delta", "min": 0.0, "max": 2.0, "steps": 5}
        config = SweepConfig.from_json_dict(doc)
        assert config.base == spec
        assert config.profile is None

    def test_g0_axis_requires_profile(self):
        spec = ChainSpec(6, 1.0, 0.5, 0.2, zero_profile(6))
        doc = {"spec": spec.to_json_dict(), "axis": "g0", "min": 0.0, "max": 1.0, "steps": 5}
        with pytest.raises(InvalidSpecError):
            SweepConfig.from_json_dict(doc)

    def test_g0_axis_sweep(self):
        base = ChainSpec(12, 1.0, 1.0, 0.0, alternating_profile(12, 0.0))
        config = SweepConfig(
            base=base,
            axis=SweepAxis("g0", 0.0, 1.0, 6),
            profile=ProfileSpec(kind="alternating", g0=0.0),
        )
        records = run_sweep(config)
        assert [r.g0 for r in records] == pytest.approx([0.0, 0.2, 0.4, 0.6, 0.8, 1.0])
        # the edge modes stay pinned at zero while g0 grows
        assert all(r.min_abs_eig <= 1e-12 for r in records)

    def test_random_profile_sweep_records_seed(self):
        base = ChainSpec(12, 1.0, 1.0, 0.0, zero_profile(12))
        config = SweepConfig(
            base=base,
            axis=SweepAxis("mu", 0.0, 1.0, 3),
            profile=ProfileSpec(kind="random", max_strength=0.3, seed=9),
        )
        records = run_sweep(config)
        assert all(r.seed == 9 for r in records)
        text = render_csv(records)
        assert ",9," in text.split("\n")[1]


class TestRandomEnsemble:
    def test_sweet_spot_all_trials_find_two_exact_modes(self):
        summary = run_random_ensemble(12, 0.0, 1.0, 1.0, 0.5, 20, 1)
        assert summary.fraction_two_modes == 1.0
        assert summary.max_edge_deviation <= 1e-10
        assert all(t.zero_count == 2 for t in summary.trials)
        assert all(t.min_abs_eigenvalue <= 1e-12 for t in summary.trials)

    def test_zero_strength_reduces_to_hermitian(self):
        summary = run_random_ensemble(12, 0.0, 1.0, 1.0, 0.0, 5, 1)
        assert summary.fraction_two_modes == 1.0
        assert summary.max_edge_deviation <= 1e-12

    def test_deterministic_from_master_seed(self):
        a = run_random_ensemble(12, 0.0, 1.0, 1.0, 0.5, 8, 3)
        b = run_random_ensemble(12, 0.0, 1.0, 1.0, 0.5, 8, 3)
        assert a == b

    def test_finite_mu_statistics_frozen(self):
        # mu = 0.5: the modes split by ~1.5e-7, caught by a 1e-6 window
        summary = run_random_ensemble(12, 0.5, 1.0, 1.0, 0.2, 50, 3, zero_tolerance=1e-6)
        assert summary.fraction_two_modes == 1.0
        assert summary.max_edge_deviation == pytest.approx(0.5314566126721074, rel=1e-9)
        splits = [t.min_abs_eigenvalue for t in summary.trials]
        assert 1.1e-7 < min(splits) and max(splits) < 2.0e-7

    def test_json_dict(self):
        doc = run_random_ensemble(12, 0.0, 1.0, 1.0, 0.5, 3, 1).to_json_dict()
        assert doc["n_trials"] == 3
        json.dumps(doc)
