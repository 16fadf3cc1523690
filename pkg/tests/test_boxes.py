from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from diagdisp.boxes import Box, BoxKind, avoids, check_certificate, classify, classify_empty_box, volume
from diagdisp.configuration import build_config
from diagdisp.errors import DimensionMismatch, DomainError, PreconditionError
from diagdisp.suites import random_avoiding_box, random_typed_box

THIRD = build_config(F(1, 3), 2)
R_VALUES = [F(1, 3), F(3, 10), F(9, 20)]


class TestBox:
    def test_volume(self):
        assert volume(Box(((0, F(1, 2)), (0, F(1, 2))))) == F(1, 4)
        assert Box.unit(4).volume() == 1
        assert Box(((F(1, 4), F(3, 4)), (0, F(1, 3)))).volume() == F(1, 6)

    def test_half_open(self):
        b = Box(((0, F(1, 2)), (0, F(1, 2))))
        assert avoids(b, [(F(1, 2), F(1, 2))])
        assert not avoids(Box.unit(2), [(F(1, 2), F(1, 2))])
        assert b.contains((0, 0))

    def test_witness_beside_diagonal(self):
        assert not avoids(Box(((0, F(2, 3)), (F(17, 50), 1))), THIRD.points())
        assert avoids(Box(((0, F(1, 2)), (F(51, 100), 1))), THIRD.points())

    @pytest.mark.parametrize("ivs", [((F(1, 2), F(1, 2)),), ((0, F(3, 2)),), ((F(-1, 2), 0),)])
    def test_invalid(self, ivs):
        with pytest.raises(DomainError):
            Box(ivs)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            Box.unit(2).contains((0,))

    def test_json_round_trip(self):
        b = Box(((F(1, 3), F(1, 2)), (0.25, 1)))
        assert Box.from_json(b.to_json()) == b


class TestClassify:
    def test_type1_small_side(self):
        c = classify(Box(((0, 0.3), (0, 1))), F(1, 3))
        assert c.kind is BoxKind.TYPE1 and c.axis == 0 and c.cover == (0, F(1, 3))

    def test_type2(self):
        c = classify(Box(((0.51, 1), (0, 0.66))), F(1, 3))
        assert (c.kind, c.axis, c.partner, c.k) == (BoxKind.TYPE2, 0, 1, 1)

    def test_type1_gap(self):
        c = classify(Box(((0.35, 0.49), (0.35, 0.49))), F(1, 3))
        assert c.kind is BoxKind.TYPE1 and c.cover == (F(1, 3), F(1, 2))

    def test_neither(self):
        assert classify(Box.unit(2), F(1, 3)).kind is BoxKind.NEITHER

    def test_empty_box_type2(self):
        c = classify_empty_box(Box(((0, 0.66), (0.51, 1))), THIRD)
        assert c.kind is BoxKind.TYPE2 and check_certificate(Box(((0, 0.66), (0.51, 1))), c, THIRD.values)

    def test_empty_box_top_corner(self):
        c = classify_empty_box(Box(((0.7, 1), (0.7, 1))), THIRD)
        assert c.kind is BoxKind.TYPE1 and c.cover == (F(2, 3), 1)

    def test_precondition(self):
        with pytest.raises(PreconditionError):
            classify_empty_box(Box.unit(2), THIRD)


@st.composite
def boxes(draw, d):
    ivs = []
    for _ in range(d):
        a, b = sorted(draw(st.lists(st.fractions(0, 1, max_denominator=60), min_size=2, max_size=2, unique=True)))
        ivs.append((a, b))
    return Box(tuple(ivs))


@given(st.sampled_from(R_VALUES), st.integers(2, 3), st.data())
@settings(max_examples=300)
def test_avoided_boxes_are_typed_and_small(r, d, data):
    cfg = build_config(r, d)
    box = data.draw(boxes(d))
    if not avoids(box, cfg.points()):
        return
    if all(iv == (0, 1) for iv in box.intervals):
        return
    walked = classify_empty_box(box, cfg)
    assert walked.kind is not BoxKind.NEITHER
    assert classify(box, cfg).kind is not BoxKind.NEITHER
    assert box.volume() <= r


@given(st.sampled_from(R_VALUES), st.integers(2, 3), st.data())
@settings(max_examples=300)
def test_typed_boxes_have_volume_at_most_r(r, d, data):
    cfg = build_config(r, d)
    box = data.draw(boxes(d))
    c = classify(box, cfg)
    if c.kind is BoxKind.NEITHER:
        return
    assert check_certificate(box, c, cfg.values)
    assert box.volume() <= r


def test_samplers_produce_what_they_promise():
    rng = np.random.default_rng(0)
    for r in R_VALUES:
        cfg = build_config(r, 3)
        for _ in range(200):
            assert classify(random_typed_box(rng, cfg.values, 3), cfg).kind is not BoxKind.NEITHER
            assert avoids(random_avoiding_box(rng, cfg), cfg.points())
