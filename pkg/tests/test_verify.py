import json

import numpy as np
import pytest

from qent import (
    ConfigError,
    Ensemble,
    FamilyParams,
    IncompatibleInput,
    OutOfRange,
    PureState,
    RelationId,
    SuiteConfig,
    check,
    ghz,
    make_pure,
    purity,
    random_ensemble,
    random_local_unitary,
    random_mixed,
    random_pure,
    run_suite,
    slocc_family,
)


class TestRandomSources:
    def test_random_pure_deterministic(self):
        a = random_pure(3, 42)
        b = random_pure(3, 42)
        assert np.array_equal(a.amplitudes, b.amplitudes)
        assert not np.allclose(a.amplitudes, random_pure(3, 43).amplitudes)

    def test_random_mixed_valid(self):
        rho = random_mixed(3, 2, 1)
        assert np.trace(rho.entries).real == pytest.approx(1.0)
        assert np.min(np.linalg.eigvalsh(rho.entries)) >= -1e-12

    def test_ensemble_weights(self):
        ens = random_ensemble(3, 4, 5)
        assert sum(ens.weights) == pytest.approx(1.0)
        assert all(p >= 0 for p in ens.weights)
        assert purity(ens.density()) < 1.0

    def test_range_checks(self):
        with pytest.raises(OutOfRange):
            random_pure(9, 1)
        with pytest.raises(OutOfRange):
            random_ensemble(3, 9, 1)

    def test_local_unitary_is_unitary(self):
        u = random_local_unitary(7)
        assert np.allclose(u @ u.conj().T, np.eye(2), atol=1e-12)


class TestCheckDispatch:
    def test_r3_example(self):
        rows = check(RelationId.R3, (3, 0.6), 1e-9)
        assert rows[0].lhs == pytest.approx(0.5)
        assert all(r.verdict == "pass" for r in rows)
        assert len(rows) == 4  # exact value + 3 per-site negativities

    def test_r1_random_four_qubit(self):
        rows = check("R1", random_pure(4, 7), 1e-9)
        assert len(rows) == 1 and rows[0].verdict == "pass"

    def test_r7_family9(self):
        rows = check("R7", FamilyParams(9), 1e-9)
        byname = {r.state_descriptor.split(" | ")[1]: r for r in rows}
        minrow = byname["C2 = min N"]
        assert minrow.lhs == pytest.approx(0.0, abs=1e-9)
        assert minrow.rhs == pytest.approx(0.0, abs=1e-9)
        assert minrow.verdict == "pass"
        assert minrow.condition_note == "unconditional"

    def test_r7_condition_false_is_skip(self):
        rows = check("R7", FamilyParams(4, a=1.0, b=1.0))
        minrow = [r for r in rows if "C2 = min N" in r.state_descriptor][0]
        assert minrow.verdict == "skip"
        assert "condition violated" in minrow.condition_note
        others = [r for r in rows if "C2 = min N" not in r.state_descriptor]
        assert all(r.verdict == "pass" for r in others)

    def test_r2_inequality(self):
        rows = check("R2", random_ensemble(3, 2, 11))
        assert rows[0].verdict == "inequality-satisfied"

    def test_r4_r5_r6_pass(self):
        assert all(r.verdict == "pass" for r in check("R4", random_pure(3, 3)))
        assert all(r.verdict == "pass" for r in check("R5", random_pure(3, 4)))
        assert all(r.verdict == "pass" for r in check("R6", random_pure(4, 5)))

    def test_r8_payloads(self):
        rows = check("R8", ("w_kme", 4))
        assert len(rows) == 3 and all(r.verdict == "pass" for r in rows)
        coeffs = np.array([0.6, 0.8j, 0.0])
        rows = check("R8", ("w_two_tangle", coeffs))
        assert len(rows) == 3 and all(r.verdict == "pass" for r in rows)

    def test_r9_bell(self):
        bell = make_pure([1, 0, 0, 1], 2)
        rows = check("R9", (bell, (0,)))
        assert rows[0].lhs == pytest.approx(1.0)
        assert rows[0].verdict == "pass"

    def test_r9_rejects_high_rank(self):
        with pytest.raises(IncompatibleInput):
            check("R9", (random_pure(4, 1), (0, 1)))

    def test_incompatible_payloads(self):
        with pytest.raises(IncompatibleInput):
            check("R1", "not a state")
        with pytest.raises(IncompatibleInput):
            check("R4", ghz(4))
        with pytest.raises(IncompatibleInput):
            check("R7", ghz(4))
        with pytest.raises(IncompatibleInput):
            check("R8", ("bogus", 3))

    def test_tolerance_override_reports_failures(self):
        rows = check("R1", random_pure(4, 7), 1e-18)
        assert rows[0].verdict in ("pass", "fail")  # reported, not raised


class TestSuiteConfig:
    def test_default_has_all_relations(self):
        config = SuiteConfig.default()
        assert set(config.relations) == {f"R{i}" for i in range(1, 10)}

    def test_relations_list_form(self):
        config = SuiteConfig(seed=3, relations=["R3", "R9"])
        assert set(config.relations) == {"R3", "R9"}

    def test_from_json_roundtrip(self):
        text = json.dumps({"seed": 11, "relations": {"R3": {"sizes": [2, 3]}}})
        config = SuiteConfig.from_json(text)
        assert config.seed == 11
        assert config.relations["R3"]["sizes"] == [2, 3]
        assert config.relations["R3"]["t_points"] == 21  # default preserved

    def test_config_errors(self):
        with pytest.raises(ConfigError):
            SuiteConfig.from_json("{bad json")
        with pytest.raises(ConfigError):
            SuiteConfig.from_json('{"relations": {"R99": {}}}')
        with pytest.raises(ConfigError):
            SuiteConfig.from_json('{"relations": {"R1": {"bogus_key": 1}}}')
        with pytest.raises(ConfigError):
            SuiteConfig.from_json('{"seed": "seven"}')
        with pytest.raises(ConfigError):
            SuiteConfig.from_json('{"unknown_top": 1}')


class TestRunSuite:
    def test_small_suite_passes(self):
        config = SuiteConfig(
            seed=7,
            relations={
                "R1": {"sizes": [2, 3], "samples": 4},
                "R3": {"sizes": [2, 3], "t_points": 5, "random_t": 2},
                "R9": {"samples": 4, "cuts": [[1, 1], [1, 2]]},
            },
        )
        report = run_suite(config)
        assert report.exit_code == 0
        assert not report.failures
        counts = report.counts()
        assert set(counts) == {"R1", "R3", "R9"}

    def test_determinism_byte_identical(self):
        config = SuiteConfig(seed=9, relations={"R4": {"samples": 6}, "R8": {"samples": 2}})
        a = run_suite(config)
        b = run_suite(config)
        assert a.to_csv() == b.to_csv()
        assert a.to_text() == b.to_text()

    def test_parallel_matches_serial(self):
        config = SuiteConfig(seed=5, relations={"R5": {"samples": 6}, "R6": {"samples": 6}})
        serial = run_suite(config)
        threaded = run_suite(config, max_workers=4)
        assert serial.to_csv() == threaded.to_csv()

    def test_absurd_tolerance_reports_failures(self):
        config = SuiteConfig(
            seed=7, relations={"R5": {"samples": 4, "tolerance": 1e-17}}
        )
        report = run_suite(config)
        assert report.exit_code == 1
        assert report.failures
        text = report.to_text()
        assert "failures:" in text

    def test_report_sorted(self):
        config = SuiteConfig(seed=2, relations={"R1": {"sizes": [2], "samples": 3}})
        report = run_suite(config)
        keys = [(r.relation.value, r.state_descriptor) for r in report.results]
        assert keys == sorted(keys)

    def test_r7_skip_notes_present(self):
        config = SuiteConfig(seed=7, relations={"R7": {"families": [4], "random_points": 0}})
        report = run_suite(config)
        skips = [r for r in report.results if r.verdict == "skip"]
        assert skips
        assert all("condition violated" in r.condition_note for r in skips)
        assert report.exit_code == 0  # skips are not failures

    def test_r7_custom_grid(self):
        config = SuiteConfig(
            seed=7,
            relations={
                "R7": {
                    "families": [6],
                    "random_points": 0,
                    "grids": {"6": [[0.5, [0.0, 1.0], 2.0]]},
                }
            },
        )
        report = run_suite(config)
        # 3 parameter points x 8 sub-checks per point
        assert len(report.results) == 24
        assert report.exit_code == 0

    def test_r7_grid_validation(self):
        bad_shapes = [
            {"6": "nope"},
            {"6": []},
            {"6": [[]]},
            {"6": [[1.0], [1.0]]},  # family 6 has one parameter
            {"6": [[{"re": 1}]]},
        ]
        for grids in bad_shapes:
            config = SuiteConfig(
                seed=7,
                relations={"R7": {"families": [6], "random_points": 0, "grids": grids}},
            )
            with pytest.raises(ConfigError):
                run_suite(config)


class TestEnsembleType:
    def test_weight_validation(self):
        bell = make_pure([1, 0, 0, 1], 2)
        with pytest.raises(ValueError):
            Ensemble((0.5, 0.4), (bell, bell))
        with pytest.raises(ValueError):
            Ensemble((), ())

    def test_ghz_noise_ensemble_matches_density(self):
        n, t = 3, 0.6
        basis = np.eye(8, dtype=complex)
        states = [ghz(3)] + [PureState(basis[z], 3) for z in range(8)]
        weights = [t] + [(1 - t) / 8] * 8
        ens = Ensemble(tuple(weights), tuple(states))
        from qent import ghz_noise

        assert np.allclose(ens.density().entries, ghz_noise(n, t).entries)
