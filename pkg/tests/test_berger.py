import numpy as np
import pytest

import einstein4 as e4
from einstein4.berger import BergerConstraintError, HalfSpectra, from_half_spectra


class TestBergerForm:
    def test_named_spaces_valid(self, s4, cp2, s2xs2):
        for bf in (s4, cp2, s2xs2):
            assert bf.lam == 1.0

    def test_rejects_descending_a(self):
        with pytest.raises(BergerConstraintError):
            e4.BergerForm([0.5, 0.2, 0.3], [0, 0, 0], 1.0)

    def test_rejects_wrong_trace(self):
        with pytest.raises(BergerConstraintError):
            e4.BergerForm([0.1, 0.2, 0.3], [0, 0, 0], 1.0)

    def test_rejects_gap_violation(self):
        # |b2 - b1| > a2 - a1
        with pytest.raises(BergerConstraintError):
            e4.BergerForm([1 / 3, 1 / 3, 1 / 3], [-0.1, 0.1, 0.0], 1.0)

    def test_rejects_nonzero_b_sum(self):
        with pytest.raises(BergerConstraintError):
            e4.BergerForm([0.0, 0.3, 0.7], [0.1, 0.1, 0.1], 1.0)

    def test_rejects_nonpositive_lambda(self):
        with pytest.raises(BergerConstraintError):
            e4.BergerForm([-1 / 3, -1 / 3, -1 / 3], [0, 0, 0], -1.0)

    def test_normalize_and_scale(self, cp2):
        scaled = cp2.scaled(2.5)
        assert scaled.lam == pytest.approx(2.5)
        back = scaled.normalized()
        assert np.allclose(back.a, cp2.a)
        assert np.allclose(back.b, cp2.b)


class TestHalfSpectra:
    def test_cp2(self, cp2):
        hs = e4.half_spectra(cp2)
        assert np.allclose(hs.lam, [0, 0, 1], atol=1e-15)
        assert np.allclose(hs.mu, [1 / 3, 1 / 3, 1 / 3], atol=1e-15)

    def test_round_sphere(self, s4):
        hs = e4.half_spectra(s4)
        assert np.allclose(hs.lam, 1 / 3)
        assert np.allclose(hs.mu, 1 / 3)

    def test_asymmetric_b_on_product_spectrum(self):
        # a = (0,0,1), b = (-1/6,-1/6,1/3) is admissible: both halves ascend
        bf = e4.BergerForm([0, 0, 1], [-1 / 6, -1 / 6, 1 / 3], 1.0)
        hs = e4.half_spectra(bf)
        assert np.allclose(hs.lam, [-1 / 6, -1 / 6, 4 / 3])
        assert np.allclose(hs.mu, [1 / 6, 1 / 6, 2 / 3])

    def test_round_trip_through_half_spectra(self, cp2):
        back = from_half_spectra(e4.half_spectra(cp2))
        assert np.allclose(back.a, cp2.a)
        assert np.allclose(back.b, cp2.b)

    def test_trace_mismatch_rejected(self):
        with pytest.raises(BergerConstraintError):
            HalfSpectra([0, 0, 1], [0, 0, 2])


class TestExtraction:
    def test_round_sphere(self, s4_tensor):
        bf = e4.extract_from_tensor(s4_tensor)
        assert np.allclose(bf.a, 1 / 3, atol=1e-12)
        assert np.allclose(bf.b, 0.0, atol=1e-12)
        assert bf.lam == pytest.approx(1.0)

    def test_sphere_product(self, s2xs2_tensor):
        bf = e4.extract_from_tensor(s2xs2_tensor)
        assert np.allclose(bf.a, [0, 0, 1], atol=1e-12)
        assert np.allclose(bf.b, 0.0, atol=1e-12)

    def test_cp2_matches_reported_pinching(self, cp2_tensor):
        # min/max sectional 1/6 and 2/3; delta = 1/6 for the Fubini-Study plane
        bf = e4.extract_from_tensor(cp2_tensor)
        assert np.allclose(bf.a, [1 / 6, 1 / 6, 2 / 3], atol=1e-12)
        assert np.allclose(bf.b, [-1 / 6, -1 / 6, 1 / 3], atol=1e-12)

    def test_non_einstein_rejected_with_residual(self):
        h = np.diag([2.0, 1.0, 1.0, 1.0])
        op = e4.to_operator(e4.kulkarni_nomizu(np.eye(4), h))
        with pytest.raises(e4.NonEinsteinError) as err:
            e4.extract_berger(e4.duality_blocks(op))
        assert err.value.residual > 0.1

    def test_operator_reconstruction(self, cp2):
        op = e4.berger_to_operator(cp2)
        expected = np.zeros((6, 6))
        expected[:3, :3] = expected[3:, 3:] = np.diag(cp2.a)
        expected[:3, 3:] = expected[3:, :3] = np.diag(cp2.b)
        assert np.allclose(op.matrix, expected)

    def test_product_form_operator_matches_tensor(self, s2xs2, s2xs2_tensor):
        # a = (0,0,1), b = 0 reproduces the product operator up to relabeling
        op = e4.berger_to_operator(s2xs2)
        direct = e4.to_operator(s2xs2_tensor)
        assert np.allclose(np.sort(np.diag(op.matrix)), np.sort(np.diag(direct.matrix)))
        assert np.allclose(np.linalg.eigvalsh(op.matrix),
                           np.linalg.eigvalsh(direct.matrix))


class TestRoundTrip:
    def test_full_round_trip_on_sampled_forms(self, sampled_forms):
        worst = 0.0
        for bf in sampled_forms:
            op = e4.berger_to_operator(bf)
            rm = e4.operator_to_tensor(op)
            back = e4.extract_berger(e4.duality_blocks(e4.to_operator(rm)))
            worst = max(worst,
                        np.max(np.abs(back.a - bf.a)),
                        np.max(np.abs(back.b - bf.b)),
                        abs(back.lam - bf.lam))
        assert worst < 1e-10

    def test_extraction_pairing_keeps_halves_ascending(self, sampled_forms):
        for bf in sampled_forms[:200]:
            back = e4.extract_from_tensor(e4.berger_to_tensor(bf))
            hs = e4.half_spectra(back)
            assert np.all(np.diff(hs.lam) >= -1e-12)
            assert np.all(np.diff(hs.mu) >= -1e-12)

    def test_min_max_sectional_against_plane_scan(self, sampled_forms):
        forms = [e4.round_sphere(), e4.fubini_study(), e4.sphere_product()]
        forms += sampled_forms[:20]
        for bf in forms:
            rm = e4.berger_to_tensor(bf)
            lo, hi = e4.sectional_scan(rm, samples=10000, seed=42)
            assert lo == pytest.approx(bf.a[0], abs=1e-6)
            assert hi == pytest.approx(bf.a[2], abs=1e-6)

    def test_two_min_k_equals_min_half_sum(self, sampled_forms):
        # smallest sectional curvature doubles the smallest half-operator pair
        for bf in sampled_forms[:200]:
            hs = e4.half_spectra(bf)
            assert 2.0 * bf.a[0] == pytest.approx(hs.lam[0] + hs.mu[0], abs=1e-12)


class TestSampling:
    def test_deterministic(self):
        a1, b1 = e4.sample_admissible_arrays(seed=5, count=50)
        a2, b2 = e4.sample_admissible_arrays(seed=5, count=50)
        assert np.array_equal(a1, a2) and np.array_equal(b1, b2)

    def test_prefix_property(self):
        # the stream does not depend on how much of it is consumed
        a_small, b_small = e4.sample_admissible_arrays(seed=5, count=10)
        a_big, b_big = e4.sample_admissible_arrays(seed=5, count=2000)
        assert np.array_equal(a_small, a_big[:10])
        assert np.array_equal(b_small, b_big[:10])

    def test_thousand_samples_all_admissible(self, sampled_forms):
        # BergerForm construction validates every constraint
        assert len(sampled_forms) == 1000

    def test_b_trace_free_exactly(self, sampled_forms):
        for bf in sampled_forms:
            assert abs(bf.b.sum()) <= 1e-12

    def test_adjacent_gap_constraints(self, sampled_forms):
        for bf in sampled_forms:
            assert abs(bf.b[2] - bf.b[1]) <= bf.a[2] - bf.a[1] + 1e-12
            assert abs(bf.b[1] - bf.b[0]) <= bf.a[1] - bf.a[0] + 1e-12

    def test_box_covers_negative_min_sectional(self, sampled_forms):
        # sampling reaches the very-negative-a1 regime
        assert min(bf.a[0] for bf in sampled_forms) < -0.5

    def test_scaled_lambda(self):
        forms = e4.sample_admissible(seed=9, lam=2.0, count=64)
        for bf in forms:
            assert bf.lam == pytest.approx(2.0)
            assert bf.a.sum() == pytest.approx(2.0)
