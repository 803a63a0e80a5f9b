import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from scatternet.core import (
    Annulus,
    ConfigError,
    Deployment,
    Disk,
    LayerSet,
    NetworkConfig,
    Rect,
    Sector,
    annulus_area,
    sector_area,
    sector_density,
    validate_config,
)


class TestAnnulusArea:
    def test_unit_disk(self):
        assert annulus_area(0, 1) == pytest.approx(math.pi, rel=1e-15)

    def test_difference_of_disks(self):
        assert annulus_area(1, 2) == pytest.approx(3 * math.pi, rel=1e-15)

    def test_thin_ring(self):
        assert annulus_area(0.5, 0.7) == pytest.approx(math.pi * 0.24, rel=1e-12)
        assert annulus_area(0.5, 0.7) == pytest.approx(0.75398, abs=1e-5)

    @pytest.mark.parametrize("inner,outer", [(1.0, 1.0), (2.0, 1.0), (-0.5, 1.0)])
    def test_domain_errors(self, inner, outer):
        with pytest.raises(ValueError):
            annulus_area(inner, outer)

    @given(
        st.floats(min_value=1e-6, max_value=1e6),
        st.floats(min_value=1e-6, max_value=1e6),
    )
    def test_additivity(self, a, b):
        r, big = sorted([a, b])
        if r == big:
            big = r * 2
        total = annulus_area(0, big)
        split = annulus_area(0, r) + annulus_area(r, big)
        assert abs(split - total) <= 4 * math.ulp(total)


class TestSectorOps:
    def test_area_by_shape(self):
        assert sector_area(Sector(Disk(1.0), 1)) == pytest.approx(math.pi, rel=1e-15)
        assert sector_area(Sector(Rect(0, 0, 2, 3), 1)) == pytest.approx(6.0, rel=1e-15)
        assert sector_area(Sector(Annulus(1, 2), 1)) == pytest.approx(3 * math.pi, rel=1e-15)

    def test_density_examples(self):
        assert sector_density(Sector(Disk(1.0), 10)) == pytest.approx(10 / math.pi, rel=1e-15)
        assert sector_density(Sector(Rect(0, 0, 1, 1), 5)) == pytest.approx(5.0, rel=1e-15)
        assert sector_density(Sector(Annulus(1, 2), 9)) == pytest.approx(3 / math.pi, rel=1e-15)

    @given(
        st.integers(min_value=1, max_value=10**6),
        st.floats(min_value=1e-3, max_value=1e3),
        st.floats(min_value=1e-3, max_value=1e3),
    )
    def test_density_times_area_recovers_count(self, n, inner_frac, width):
        sec = Sector(Annulus(inner_frac, inner_frac + width), n)
        recovered = sector_density(sec) * sector_area(sec)
        assert abs(recovered - n) <= 4 * math.ulp(float(n))

    def test_invalid_shapes(self):
        with pytest.raises(ValueError):
            Disk(0.0)
        with pytest.raises(ValueError):
            Rect(0, 0, 0, 1)
        with pytest.raises(ValueError):
            Annulus(0.5, 0.5)
        with pytest.raises(ValueError):
            Sector(Disk(1.0), 0)

    def test_contains(self):
        assert Annulus(0.5, 1.0).contains(0.75, 0.0)
        assert not Annulus(0.5, 1.0).contains(0.1, 0.1)
        assert Disk(1.0).contains(0.0, 1.0)  # boundary inclusive
        assert Rect(0, 0, 1, 2).contains(0.5, 1.5)
        assert not Rect(0, 0, 1, 2).contains(1.5, 1.5)


class TestValidateConfig:
    def test_small_scale_reference_accepted(self):
        cfg = NetworkConfig(radius=1.0, max_layers=5, nodes=100, seed=42)
        assert validate_config(cfg) is cfg

    def test_zero_radius_rejected(self):
        with pytest.raises(ConfigError, match="radius"):
            validate_config(NetworkConfig(radius=0.0, max_layers=5, nodes=100))

    def test_single_layer_bound_rejected(self):
        with pytest.raises(ConfigError, match="max_layers"):
            validate_config(NetworkConfig(radius=1.0, max_layers=1, nodes=100))

    def test_all_violations_reported(self):
        with pytest.raises(ConfigError) as excinfo:
            validate_config(NetworkConfig(radius=-1.0, max_layers=1, nodes=0, seed=-3))
        assert len(excinfo.value.violations) == 4

    def test_nodes_below_layer_bound_rejected(self):
        with pytest.raises(ConfigError, match="nodes"):
            validate_config(NetworkConfig(radius=1.0, max_layers=10, nodes=9))

    def test_acceptance_set_matches_invariants_exhaustively(self):
        for radius in (-1.0, 0.0, 0.5, 2.0):
            for max_layers in range(0, 7):
                for nodes in range(0, 13):
                    cfg = NetworkConfig(radius=radius, max_layers=max_layers, nodes=nodes, seed=1)
                    should_pass = radius > 0 and max_layers >= 2 and nodes >= max_layers
                    if should_pass:
                        assert validate_config(cfg) is cfg
                    else:
                        with pytest.raises(ConfigError):
                            validate_config(cfg)


class TestLayerSet:
    def test_bounds_and_widths(self):
        ls = LayerSet(radius=1.0, boundaries=(0.2, 0.5, 0.7))
        assert ls.layer_count == 4
        assert ls.bounds(1) == (0.0, 0.2)
        assert ls.bounds(2) == (0.2, 0.5)
        assert ls.bounds(4) == (0.7, 1.0)
        assert ls.widths == pytest.approx((0.2, 0.3, 0.2, 0.3))

    def test_bounds_index_errors(self):
        ls = LayerSet(radius=1.0, boundaries=(0.5,))
        with pytest.raises(IndexError):
            ls.bounds(0)
        with pytest.raises(IndexError):
            ls.bounds(3)

    def test_layer_of_half_open_convention(self):
        ls = LayerSet(radius=1.0, boundaries=(0.2, 0.5))
        assert ls.layer_of(0.0) == 1
        assert ls.layer_of(0.2) == 2  # boundary belongs to the outer side
        assert ls.layer_of(0.49999) == 2
        assert ls.layer_of(0.5) == 3
        assert ls.layer_of(1.0) == 3  # outermost interval closed at the rim
        np.testing.assert_array_equal(ls.layer_of(np.array([0.1, 0.3, 0.9])), [1, 2, 3])

    def test_rejects_bad_boundaries(self):
        with pytest.raises(ValueError):
            LayerSet(radius=1.0, boundaries=(0.5, 0.2))
        with pytest.raises(ValueError):
            LayerSet(radius=1.0, boundaries=(1.0,))
        with pytest.raises(ValueError):
            LayerSet(radius=1.0, boundaries=(-0.1,))
        with pytest.raises(ValueError):
            LayerSet(radius=1.0, boundaries=())

    def test_duplicate_boundary_tolerated(self):
        # a floating collision between draws produces a zero-width layer
        ls = LayerSet(radius=1.0, boundaries=(0.5, 0.5))
        assert ls.bounds(2) == (0.5, 0.5)
        assert ls.widths[1] == 0.0


class TestDeployment:
    def test_mismatched_coordinates_rejected(self):
        with pytest.raises(ValueError):
            Deployment(x=np.zeros(3), y=np.zeros(2), sector=np.ones(3, dtype=int))

    def test_len(self):
        d = Deployment(x=np.zeros(5), y=np.zeros(5), sector=np.ones(5, dtype=int))
        assert len(d) == 5
