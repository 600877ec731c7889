import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vckb import BBox, overlap_ratio


def rasterized_ratio(region: BBox, obj: BBox) -> float:
    """Pixel-counting oracle: paint both boxes on a grid and count."""
    size = max(region.x + region.w, obj.x + obj.w, region.y + region.h, obj.y + obj.h)
    grid_r = np.zeros((size, size), dtype=bool)
    grid_o = np.zeros((size, size), dtype=bool)
    grid_r[region.y : region.y + region.h, region.x : region.x + region.w] = True
    grid_o[obj.y : obj.y + obj.h, obj.x : obj.x + obj.w] = True
    inter = int(np.count_nonzero(grid_r & grid_o))
    return inter / int(np.count_nonzero(grid_o))


boxes = st.builds(
    BBox,
    x=st.integers(0, 60),
    y=st.integers(0, 60),
    w=st.integers(1, 40),
    h=st.integers(1, 40),
)


def test_identical_boxes():
    box = BBox(3, 4, 10, 20)
    assert overlap_ratio(box, box) == 1.0


def test_disjoint_boxes():
    assert overlap_ratio(BBox(0, 0, 10, 10), BBox(50, 50, 10, 10)) == 0.0


def test_quarter_overlap_matches_oracle():
    region = BBox(0, 0, 10, 10)
    obj = BBox(5, 5, 10, 10)
    assert rasterized_ratio(region, obj) == 0.25
    assert overlap_ratio(region, obj) == 0.25


def test_rejects_degenerate_boxes():
    with pytest.raises(ValueError):
        BBox(0, 0, 0, 10)
    with pytest.raises(ValueError):
        BBox(-1, 0, 5, 5)


@given(region=boxes, obj=boxes)
@settings(max_examples=200)
def test_matches_rasterized_oracle(region, obj):
    assert overlap_ratio(region, obj) == rasterized_ratio(region, obj)


@given(region=boxes, obj=boxes, scale=st.integers(1, 7))
@settings(max_examples=200)
def test_scale_invariant(region, obj, scale):
    scaled_region = BBox(region.x * scale, region.y * scale, region.w * scale, region.h * scale)
    scaled_obj = BBox(obj.x * scale, obj.y * scale, obj.w * scale, obj.h * scale)
    assert overlap_ratio(scaled_region, scaled_obj) == overlap_ratio(region, obj)


@given(region=boxes, obj=boxes)
@settings(max_examples=200)
def test_ratio_in_unit_interval(region, obj):
    ratio = overlap_ratio(region, obj)
    assert 0.0 <= ratio <= 1.0
