import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qphom.masks import (
    enumerate_masks,
    faces_of,
    mask_from_vertices,
    simplex_dim,
    vertices_of,
)

vertex_sets = st.sets(st.integers(0, 30), min_size=1, max_size=8)


@given(verts=vertex_sets)
@settings(max_examples=200, deadline=None)
def test_mask_roundtrip(verts):
    ordered = tuple(sorted(verts))
    mask = mask_from_vertices(ordered)
    assert vertices_of(mask) == ordered
    assert simplex_dim(mask) == len(ordered) - 1


@given(verts=vertex_sets)
@settings(max_examples=200, deadline=None)
def test_faces_drop_one_vertex_each(verts):
    ordered = tuple(sorted(verts))
    mask = mask_from_vertices(ordered)
    faces = list(faces_of(mask))
    assert [l for l, _ in faces] == list(range(len(ordered)))
    for l, face in faces:
        assert vertices_of(face) == ordered[:l] + ordered[l + 1:]


def test_negative_vertex_rejected():
    with pytest.raises(ValueError):
        mask_from_vertices([-1])


def test_enumerate_masks_smallest_cases():
    assert enumerate_masks(1, 0) == [0b1]
    assert enumerate_masks(2, 1) == [0b11]
