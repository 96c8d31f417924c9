import numpy as np
import pytest
from oracles import (
    kme_brute,
    negativity_trace_norm,
    random_state_vector,
    wootters_brute,
)

from qent import (
    DensityMatrix,
    DimensionMismatch,
    FamilyParams,
    OutOfRange,
    Partition,
    PureState,
    apply_local_unitary,
    bipartite_concurrence_pure,
    density_of,
    ghz,
    ghz_noise,
    kme_concurrence_pure,
    make_pure,
    negativity,
    negativity_profile,
    nme_lower_bound,
    one_tangle,
    random_local_unitary,
    reduced_density_pure,
    slocc_family,
    three_tangle,
    three_tangle_raw,
    two_tangle,
    w,
    wootters_concurrence,
)

BELL = make_pure([1, 0, 0, 1], 2)
PSI9 = slocc_family(FamilyParams(9))
PSI8 = slocc_family(FamilyParams(8))


class TestNegativity:
    def test_family9_profile(self):
        prof = negativity_profile(density_of(PSI9))
        assert np.allclose(prof.per_site, (0.0, 1.0, 1.0, 1.0), atol=1e-9)

    def test_bell(self):
        assert negativity(density_of(BELL), 0) == pytest.approx(1.0, abs=1e-12)

    def test_product(self):
        rho = density_of(make_pure([1, 0, 0, 0], 2))
        assert negativity(rho, 0) == 0.0

    def test_two_routes_agree(self, rng):
        for n in (2, 3, 4):
            psi = PureState(random_state_vector(n, rng), n)
            rho = density_of(psi)
            for p in range(n):
                assert abs(
                    negativity(rho, p) - negativity_trace_norm(rho.entries, p, n)
                ) <= 1e-9

    def test_general_dim_normalization(self):
        rho = density_of(BELL)
        assert negativity(rho, 0, local_dim=3) == pytest.approx(0.5)


class TestBipartiteConcurrence:
    def test_ghz3(self):
        assert bipartite_concurrence_pure(ghz(3), (0,)) == pytest.approx(1.0)

    def test_product(self):
        assert bipartite_concurrence_pure(make_pure([1, 0, 0, 0], 2), (0,)) == 0.0

    def test_w3(self):
        assert bipartite_concurrence_pure(w(3), (0,)) == pytest.approx(2 * np.sqrt(2) / 3)


class TestKmeConcurrence:
    def test_family9_values(self):
        assert kme_concurrence_pure(PSI9, 2).value == pytest.approx(0.0, abs=1e-9)
        assert kme_concurrence_pure(PSI9, 3).value == pytest.approx(np.sqrt(2 / 3))

    def test_family8_k4(self):
        assert kme_concurrence_pure(PSI8, 4).value == pytest.approx(np.sqrt(15) / 4)

    def test_ghz3_k3(self):
        assert kme_concurrence_pure(ghz(3), 3).value == pytest.approx(1.0)

    def test_matches_brute_force(self, rng):
        for n in (3, 4):
            psi = PureState(random_state_vector(n, rng), n)
            for k in range(2, n + 1):
                got = kme_concurrence_pure(psi, k).value
                assert got == pytest.approx(kme_brute(psi.amplitudes, n, k), abs=1e-10)

    def test_report_invariants(self):
        rep = kme_concurrence_pure(PSI9, 2)
        assert rep.value == min(v for _, v in rep.per_partition)
        assert len(rep.per_partition) == 7
        assert rep.optimal_partition == Partition(((0,), (1, 2, 3)))

    def test_tie_break_deterministic(self):
        reports = [kme_concurrence_pure(ghz(3), 2) for _ in range(3)]
        assert len({r.optimal_partition.blocks for r in reports}) == 1
        # all three bipartitions of GHZ tie exactly; the smallest canonical wins
        assert reports[0].optimal_partition == Partition(((0,), (1, 2)))

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            kme_concurrence_pure(BELL, 3)
        with pytest.raises(OutOfRange):
            kme_concurrence_pure(BELL, 1)


class TestNmeLowerBound:
    def test_pure_states_saturate(self, rng):
        for n in (2, 3, 4, 5):
            psi = PureState(random_state_vector(n, rng), n)
            direct = kme_concurrence_pure(psi, n).value
            assert abs(nme_lower_bound(density_of(psi)) - direct) <= 1e-9

    def test_ghz_noise_t1(self):
        assert nme_lower_bound(ghz_noise(3, 1.0)) == pytest.approx(1.0)

    def test_separable_diagonal(self):
        rho = DensityMatrix(np.diag([0.4, 0.3, 0.2, 0.1]).astype(complex), 2)
        assert nme_lower_bound(rho) == 0.0

    def test_ensemble_average_dominates(self, rng):
        # mixing can only lower the bound below the average pure-state value
        from qent import random_ensemble

        for n in (2, 3):
            for rank in (2, 3):
                ens = random_ensemble(n, rank, int(rng.integers(1 << 30)))
                avg = sum(
                    p * kme_concurrence_pure(s, n).value
                    for p, s in zip(ens.weights, ens.states)
                )
                assert avg >= nme_lower_bound(ens.density()) - 1e-9


class TestOneTangle:
    def test_bell(self):
        assert one_tangle(BELL, 0) == pytest.approx(1.0)

    def test_product(self):
        assert one_tangle(make_pure([1, 0, 0, 0], 2), 0) == pytest.approx(0.0)

    def test_weighted(self):
        psi = make_pure([np.sqrt(0.8), 0, 0, np.sqrt(0.2)], 2)
        assert one_tangle(psi, 0) == pytest.approx(0.64)

    def test_equals_squared_concurrence(self, rng):
        for n in (2, 3, 4):
            psi = PureState(random_state_vector(n, rng), n)
            for p in range(n):
                c = bipartite_concurrence_pure(psi, (p,))
                assert abs(one_tangle(psi, p) - c * c) <= 1e-10


class TestWootters:
    def test_bell(self):
        assert wootters_concurrence(density_of(BELL)) == pytest.approx(1.0)

    def test_ghz3_pair_is_zero(self):
        red = DensityMatrix(reduced_density_pure(ghz(3), (0, 1)), 2)
        assert wootters_concurrence(red) == pytest.approx(0.0, abs=1e-12)

    def test_w3_pair(self):
        red = DensityMatrix(reduced_density_pure(w(3), (0, 1)), 2)
        assert wootters_concurrence(red) == pytest.approx(2 / 3)

    def test_against_nonhermitian_route(self, rng):
        for _ in range(25):
            m = rng.normal(size=(4, 6)) + 1j * rng.normal(size=(4, 6))
            raw = m @ m.conj().T
            rho = DensityMatrix(raw / np.trace(raw).real, 2)
            assert wootters_concurrence(rho) == pytest.approx(
                wootters_brute(rho.entries), abs=1e-7
            )

    def test_dimension_check(self):
        with pytest.raises(DimensionMismatch):
            wootters_concurrence(density_of(ghz(3)))


class TestTangles:
    def test_two_tangle_values(self):
        assert two_tangle(density_of(BELL)) == pytest.approx(1.0)
        ghz_pair = DensityMatrix(reduced_density_pure(ghz(3), (0, 1)), 2)
        assert two_tangle(ghz_pair) == pytest.approx(0.0, abs=1e-12)
        w_pair = DensityMatrix(reduced_density_pure(w(3), (0, 1)), 2)
        assert two_tangle(w_pair) == pytest.approx(4 / 9)

    def test_three_tangle_anchors(self):
        assert three_tangle(ghz(3)) == pytest.approx(1.0, abs=1e-8)
        assert three_tangle(w(3)) == pytest.approx(0.0, abs=1e-8)
        assert three_tangle(make_pure([1, 0, 0, 0, 0, 0, 0, 0], 3)) == pytest.approx(0.0)

    def test_three_tangle_pivot_invariance(self, rng):
        # permuting the sites changes the pivot; the residual tangle must not move
        for _ in range(20):
            v = random_state_vector(3, rng)
            psi = PureState(v, 3)
            t = np.reshape(v, (2, 2, 2))
            psi_b = PureState(np.transpose(t, (1, 0, 2)).reshape(-1), 3)
            psi_c = PureState(np.transpose(t, (2, 1, 0)).reshape(-1), 3)
            base = three_tangle(psi)
            assert abs(base - three_tangle(psi_b)) <= 1e-8
            assert abs(base - three_tangle(psi_c)) <= 1e-8

    def test_three_tangle_clamped_range(self, rng):
        for _ in range(30):
            psi = PureState(random_state_vector(3, rng), 3)
            val = three_tangle(psi)
            assert 0.0 <= val <= 1.0
            assert abs(val - max(0.0, min(1.0, three_tangle_raw(psi)))) == 0.0

    def test_dimension_check(self):
        with pytest.raises(DimensionMismatch):
            three_tangle(BELL)


class TestThreeQubitRelations:
    def test_c2_min_negativity_and_c3_rms(self, rng):
        for _ in range(40):
            psi = PureState(random_state_vector(3, rng), 3)
            rho = density_of(psi)
            prof = [negativity(rho, p) for p in range(3)]
            assert abs(kme_concurrence_pure(psi, 2).value - min(prof)) <= 1e-9
            rms = np.sqrt(sum(v * v for v in prof) / 3)
            assert abs(kme_concurrence_pure(psi, 3).value - rms) <= 1e-9


class TestSchmidtRankTwo:
    def test_negativity_equals_concurrence(self, rng):
        for _ in range(30):
            lam = rng.uniform(0.05, 0.95)
            psi = make_pure([np.sqrt(lam), 0, 0, np.sqrt(1 - lam)], 2)
            psi = apply_local_unitary(psi, 0, random_local_unitary(int(rng.integers(1 << 30))))
            psi = apply_local_unitary(psi, 1, random_local_unitary(int(rng.integers(1 << 30))))
            n_val = negativity(density_of(psi), 0)
            c_val = bipartite_concurrence_pure(psi, (0,))
            assert abs(n_val - c_val) <= 1e-9


class TestLocalUnitaryInvariance:
    def test_all_measures_invariant(self, rng):
        psi = PureState(random_state_vector(3, rng), 3)
        base = {
            "c2": kme_concurrence_pure(psi, 2).value,
            "c3": kme_concurrence_pure(psi, 3).value,
            "neg0": negativity(density_of(psi), 0),
            "tau3": three_tangle(psi),
            "tau01": two_tangle(DensityMatrix(reduced_density_pure(psi, (0, 1)), 2)),
            "one0": one_tangle(psi, 0),
        }
        rotated = psi
        for site in range(3):
            rotated = apply_local_unitary(
                rotated, site, random_local_unitary(1000 + site)
            )
        after = {
            "c2": kme_concurrence_pure(rotated, 2).value,
            "c3": kme_concurrence_pure(rotated, 3).value,
            "neg0": negativity(density_of(rotated), 0),
            "tau3": three_tangle(rotated),
            "tau01": two_tangle(DensityMatrix(reduced_density_pure(rotated, (0, 1)), 2)),
            "one0": one_tangle(rotated, 0),
        }
        for key in base:
            assert abs(base[key] - after[key]) <= 1e-8, key

    def test_kme_invariant_on_ghz(self):
        base = kme_concurrence_pure(ghz(3), 3).value
        rotated = ghz(3)
        for site, seed in ((0, 11), (1, 12), (2, 13)):
            rotated = apply_local_unitary(rotated, site, random_local_unitary(seed))
        assert abs(kme_concurrence_pure(rotated, 3).value - base) <= 1e-9
