import numpy as np
import pytest

from viscosplit.hilbert import Ball
from viscosplit.problems import (catalog, default_schedule_for,
                                 demicontractivity_bound, grid_points,
                                 load_instance, make_ball_instance,
                                 make_box_instance, make_example1,
                                 make_example2, make_example3,
                                 make_inclusion_instance,
                                 make_oscillation_instance,
                                 make_trivial_instance, scaling_map)
from viscosplit.schedules import validate
from viscosplit.setvalued import SelectionRule, Singleton, distance_to_set


class TestExampleMaps:
    def test_halving_1d(self):
        img = make_example1()(np.array([2.0]))
        assert isinstance(img, Singleton)
        assert img.point[0] == 1.0

    def test_halving_2d(self):
        img = make_example2()(np.array([2.0, -4.0]))
        assert np.array_equal(img.point, np.array([1.0, -2.0]))

    def test_oscillation_values(self):
        T = make_example3()
        x = 2.0 / np.pi           # sin(1/x) = 1
        y = 2.0 / (3.0 * np.pi)   # sin(1/y) = -1
        assert T(np.array([x])).point[0] == pytest.approx(4.0 / (3.0 * np.pi),
                                                          abs=1e-15)
        assert T(np.array([y])).point[0] == pytest.approx(-4.0 / (9.0 * np.pi),
                                                          abs=1e-15)

    def test_oscillation_fixes_origin_only(self):
        T = make_example3()
        assert T(np.zeros(1)).point[0] == 0.0
        # |(2/3) sin| <= 2/3 < 1, so no other fixed point exists.
        for v in np.linspace(-2, 2, 37):
            if v != 0:
                assert abs(T(np.array([v])).point[0]) <= (2.0 / 3.0) * abs(v)

    def test_scaling_map_requires_contraction(self):
        with pytest.raises(ValueError):
            scaling_map(1.0, 1)


class TestCatalog:
    def test_ids(self):
        assert sorted(catalog()) == ["inclusion_ball", "inclusion_box",
                                     "sine_oscillation", "trivial_collapse"]

    def test_load_unknown_raises(self):
        with pytest.raises(KeyError):
            load_instance("nonsense")

    def test_load_with_overrides(self):
        inst = load_instance("inclusion_box", dim=3, scale=0.25)
        assert inst.dim == 3
        img = inst.t1(np.ones(3))
        assert np.allclose(img.point, 0.25 * np.ones(3))

    @pytest.mark.parametrize("instance_id", sorted(catalog()))
    def test_every_instance_validates(self, instance_id):
        inst = load_instance(instance_id)
        report = validate(default_schedule_for(inst), inst.params)
        assert report.ok, report.summary()
        for q in inst.known_common_points:
            assert inst.certify_common_point(q)


class TestInstanceGeometry:
    def test_box_solution_at_origin(self):
        inst = make_box_instance(dim=2)
        assert np.array_equal(inst.known_solution, np.zeros(2))
        assert inst.known_common_points

    def test_ball_solution_on_boundary(self):
        inst = make_ball_instance(dim=2)
        assert isinstance(inst.feasible, Ball)
        assert np.array_equal(inst.known_solution, np.zeros(2))
        # The origin lies exactly on the sphere around (1, 1).
        assert inst.feasible.contains(np.zeros(2))

    def test_trivial_has_three_audit_points(self):
        inst = make_trivial_instance()
        assert len(inst.known_common_points) == 3

    def test_oscillation_instance(self):
        inst = make_oscillation_instance()
        assert inst.dim == 1
        assert inst.t1 is inst.t2 is inst.t3

    def test_anchor_off_fixed_point_drops_common_points(self):
        inst = make_inclusion_instance(dim=1, anchor=np.array([5.0]))
        # Solution is P_[-1,1](5) = 1, which the halving maps do not fix.
        assert inst.known_solution[0] == 1.0
        assert inst.known_common_points == ()

    def test_selection_rule_override(self):
        inst = make_box_instance(dim=1, selection=SelectionRule.FIRST_ENUMERATED)
        assert inst.selection is SelectionRule.FIRST_ENUMERATED

    def test_demicontractivity_bound(self):
        inst = make_box_instance(dim=1, beta=0.7)
        assert demicontractivity_bound(inst) == 0.7
        assert demicontractivity_bound(make_trivial_instance()) == 0.0


class TestSchedulesForInstances:
    def test_nonzero_contraction_shrinks_mu(self):
        plain = make_box_instance(dim=1)
        pushed = make_box_instance(dim=1, phi_coef=0.3,
                                   phi_offset=np.array([0.1]))
        assert pushed.params.b == 0.3
        mu_plain = default_schedule_for(plain).mu_bar
        mu_pushed = default_schedule_for(pushed).mu_bar
        assert mu_pushed < mu_plain

    def test_strict_paper_passthrough(self):
        inst = make_box_instance(dim=1)
        sched = default_schedule_for(inst, strict_paper=True)
        assert sched.strict_paper
        assert sched.alpha.divergent_sum is False


class TestGridPoints:
    def test_one_dimensional_grid(self):
        g = grid_points(-10, 10, 1000, 1)
        assert g.shape == (1000, 1)
        assert g[0, 0] == -10.0
        assert g[-1, 0] == 10.0
        assert not np.any(g == 0.0)  # even count straddles zero

    def test_two_dimensional_grid(self):
        g = grid_points(-10, 10, 1000, 2)
        assert g.shape == (1000, 2)
        assert np.all(g >= -10) and np.all(g <= 10)
        # Rows are distinct lattice points.
        assert len({tuple(row) for row in g}) == 1000

    def test_count_validation(self):
        with pytest.raises(ValueError):
            grid_points(0, 1, 0, 1)


class TestZeroContraction:
    def test_zero_map_declares_tiny_lipschitz(self):
        inst = make_box_instance(dim=1)
        assert inst.params.b == 1e-6
        assert np.array_equal(inst.contraction(np.array([3.0])),
                              np.zeros(1))

    def test_distance_to_image_zero_at_fixed_point(self):
        inst = make_box_instance(dim=1)
        assert distance_to_set(np.zeros(1), inst.t1(np.zeros(1))) == 0.0
