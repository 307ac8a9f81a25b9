import json
import math

import numpy as np
import pytest

from regradlab.errors import ValidationError
from regradlab.quantum import (
    DensityOperator,
    Effect,
    Povm,
    QubitPureState,
    bloch_angle,
    born_probability,
    bures_angle,
    context_distribution,
    fidelity,
    fs_distance,
    povm_probability,
    validate_povm,
)

from conftest import random_density, random_povm, random_pure

Z_PLUS = QubitPureState(bloch=[0.0, 0.0, 1.0])
Z_MINUS = QubitPureState(bloch=[0.0, 0.0, -1.0])
X_PLUS = QubitPureState(bloch=[1.0, 0.0, 0.0])


class TestPureStates:
    def test_unit_norm_enforced(self):
        with pytest.raises(ValueError):
            QubitPureState(bloch=[0.0, 0.0, 0.9])
        with pytest.raises(ValueError):
            QubitPureState(bloch=[1.0, 1.0])

    def test_born_identical(self):
        assert born_probability(Z_PLUS, Z_PLUS) == pytest.approx(1.0, abs=1e-15)

    def test_born_antipodal(self):
        assert born_probability(Z_PLUS, Z_MINUS) == pytest.approx(0.0, abs=1e-15)

    def test_born_orthogonal_axes(self):
        # |<0|+>|^2 = 1/2: orthogonal Bloch vectors, not orthogonal states
        assert born_probability(Z_PLUS, X_PLUS) == pytest.approx(0.5, abs=1e-12)

    def test_fs_distance_values(self):
        assert fs_distance(Z_PLUS, Z_PLUS) == pytest.approx(0.0, abs=1e-15)
        assert fs_distance(Z_PLUS, Z_MINUS) == pytest.approx(math.pi / 2, abs=1e-12)
        assert fs_distance(Z_PLUS, X_PLUS) == pytest.approx(math.pi / 4, abs=1e-12)

    def test_born_matches_matrix_overlap(self):
        # independent oracle: |<b|a>|^2 = tr(rho_a rho_b), computed from
        # the explicit 2x2 matrices rather than the Bloch angle
        rng = np.random.default_rng(777)
        for _ in range(300):
            a, b = random_pure(rng), random_pure(rng)
            overlap = np.trace(a.to_density().matrix() @ b.to_density().matrix())
            assert abs(born_probability(a, b) - float(overlap.real)) <= 1e-12

    def test_born_fs_consistency_bulk(self):
        rng = np.random.default_rng(1234)
        for _ in range(1000):
            a, b = random_pure(rng), random_pure(rng)
            assert abs(
                math.cos(fs_distance(a, b)) ** 2 - born_probability(a, b)
            ) <= 1e-12

    def test_symmetry(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            a, b = random_pure(rng), random_pure(rng)
            assert abs(born_probability(a, b) - born_probability(b, a)) <= 1e-15

    def test_complement_pairing(self):
        rng = np.random.default_rng(6)
        for _ in range(500):
            a, b = random_pure(rng), random_pure(rng)
            total = born_probability(a, b) + born_probability(a, b.antipode())
            assert abs(total - 1.0) <= 1e-12

    def test_bloch_angle_stable_near_zero(self):
        eps = 1e-9
        v = np.array([math.sin(eps), 0.0, math.cos(eps)])
        near = QubitPureState(bloch=v / np.linalg.norm(v))
        assert bloch_angle(Z_PLUS, near) == pytest.approx(eps, rel=1e-6)

    def test_serialization_round_trip(self):
        d = X_PLUS.to_dict()
        json.dumps(d)
        restored = QubitPureState.from_dict(d)
        assert np.allclose(restored.bloch, X_PLUS.bloch)


class TestDensityOperators:
    def test_invariants_enforced(self):
        with pytest.raises(ValueError):
            DensityOperator(r0=0.9, r=[0.0, 0.0, 0.0])
        with pytest.raises(ValueError):
            DensityOperator.from_bloch([0.0, 0.0, 1.5])

    def test_matrix_form(self):
        rho = Z_PLUS.to_density()
        assert np.allclose(rho.matrix(), [[1.0, 0.0], [0.0, 0.0]])
        mixed = DensityOperator.maximally_mixed()
        assert np.allclose(mixed.matrix(), np.eye(2) / 2.0)

    def test_bures_equal_states(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            rho = random_density(rng)
            assert bures_angle(rho, rho) <= 1e-7  # acos flattens near F = 1
            assert abs(fidelity(rho, rho) - 1.0) <= 1e-14

    def test_bures_orthogonal_pure(self):
        b = bures_angle(Z_PLUS.to_density(), Z_MINUS.to_density())
        assert b == pytest.approx(math.pi / 2, abs=1e-12)

    def test_bures_mixed_vs_pure(self):
        b = bures_angle(DensityOperator.maximally_mixed(), Z_PLUS.to_density())
        assert b == pytest.approx(math.pi / 4, abs=1e-12)

    def test_bures_reduces_to_fs_on_pure_inputs(self):
        rng = np.random.default_rng(99)
        for _ in range(1000):
            a, b = random_pure(rng), random_pure(rng)
            fs = fs_distance(a, b)
            bures = bures_angle(a.to_density(), b.to_density())
            assert abs(bures - fs) <= 1e-10

    def test_bures_symmetry(self):
        rng = np.random.default_rng(13)
        for _ in range(200):
            rho, sigma = random_density(rng), random_density(rng)
            assert abs(bures_angle(rho, sigma) - bures_angle(sigma, rho)) <= 1e-15

    def test_out_of_range_mode_guard(self):
        rho = DensityOperator.maximally_mixed()
        with pytest.raises(ValueError):
            bures_angle(rho, rho, out_of_range="ignore")

    def test_serialization_round_trip(self):
        rho = DensityOperator.from_bloch([0.1, -0.2, 0.3])
        restored = DensityOperator.from_dict(rho.to_dict())
        assert np.allclose(restored.r, rho.r)


class TestPovm:
    def test_projective_is_valid(self):
        ok, diagnostics = validate_povm(Povm.projective(Z_PLUS))
        assert ok and not diagnostics

    def test_trivial_halves_valid(self):
        half = Effect(r0=1.0, r=[0.0, 0.0, 0.0])  # I/2
        ok, _ = validate_povm(Povm(effects=(half, half)))
        assert ok

    def test_duplicate_projector_invalid(self):
        p0 = Effect.projector([0.0, 0.0, 1.0])
        ok, diagnostics = validate_povm(Povm(effects=(p0, p0)))
        assert not ok
        assert any("sum to identity" in d for d in diagnostics)

    def test_negative_effect_detected(self):
        bad = Effect(r0=0.5, r=[1.0, 0.0, 0.0])
        closer = Effect(r0=1.5, r=[-1.0, 0.0, 0.0])
        ok, diagnostics = validate_povm(Povm(effects=(bad, closer)))
        assert not ok
        assert any("positive semidefinite" in d for d in diagnostics)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            Povm(effects=())

    def test_identity_effect_probability(self):
        povm = Povm(effects=(Effect.identity(),))
        rng = np.random.default_rng(3)
        for _ in range(20):
            assert povm_probability(random_density(rng), povm, 0) == pytest.approx(
                1.0, abs=1e-15
            )

    def test_orthogonal_projector_probability(self):
        povm = Povm.projective(Z_PLUS)
        assert povm_probability(Z_PLUS.to_density(), povm, 1) == pytest.approx(
            0.0, abs=1e-15
        )

    def test_mixed_state_rank1_probability(self):
        povm = Povm.projective(X_PLUS)
        p = povm_probability(DensityOperator.maximally_mixed(), povm, 0)
        assert p == pytest.approx(0.5, abs=1e-15)

    def test_invalid_context_refuses_probabilities(self):
        p0 = Effect.projector([0.0, 0.0, 1.0])
        povm = Povm(effects=(p0, p0))
        with pytest.raises(ValidationError):
            povm_probability(DensityOperator.maximally_mixed(), povm, 0)

    def test_context_normalization_bulk(self):
        rng = np.random.default_rng(2024)
        for _ in range(100):
            rho, povm = random_density(rng), random_povm(rng)
            assert povm.is_valid, povm.validation[1]
            assert abs(sum(context_distribution(rho, povm)) - 1.0) <= 1e-12

    def test_serialization_round_trip(self):
        povm = Povm.projective(X_PLUS)
        restored = Povm.from_dict(json.loads(json.dumps(povm.to_dict())))
        assert restored.is_valid
        assert len(restored.effects) == 2
