from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dihedral_doubles.weights import (
    WeightLabel,
    all_weight_labels,
    build_weight,
    class_key,
    decompose,
    decomposition_counts,
    hom_space,
    is_isomorphic,
    pair_module,
    pair_weight_label,
    parse_weight_label,
    tensor_dd,
    validate_double_module,
    weight_catalog,
)


def test_catalog_count_and_dimension_sum(ctx12, ctx16):
    cat12 = weight_catalog(ctx12)
    assert len(cat12) == 86
    assert sum(lab.dimension(6) ** 2 for lab in cat12.labels) == 576
    cat16 = weight_catalog(ctx16)
    assert len(cat16) == 142
    assert sum(lab.dimension(8) ** 2 for lab in cat16.labels) == 1024


def test_catalog_partition_by_central_class(ctx12):
    by_class = weight_catalog(ctx12).by_class()
    sizes = {key: len(labels) for key, labels in by_class.items()}
    assert sizes == {
        "e": 9,
        "yn": 9,
        "y1": 12,
        "y2": 12,
        "y3": 12,
        "y4": 12,
        "y5": 12,
        "x": 4,
        "xy": 4,
    }


def test_every_weight_satisfies_the_module_axioms(ctx12):
    for label in all_weight_labels(ctx12):
        validate_double_module(build_weight(ctx12, label))


def test_label_parse_round_trip(ctx12, ctx16):
    for ctx in (ctx12, ctx16):
        for label in all_weight_labels(ctx):
            assert parse_weight_label(str(label)) == label
    with pytest.raises(ValueError):
        parse_weight_label("Q:1,2")


def test_schur_orthogonality_sampled(ctx12):
    cat = weight_catalog(ctx12)
    sample = [cat.labels[i] for i in (0, 3, 10, 40, 78, 85)]
    for a in sample:
        for b in sample:
            dim = len(hom_space(cat.module(a), cat.module(b)))
            assert dim == (1 if a == b else 0)


def test_known_tensor_products(ctx12):
    def product_labels(a_text, b_text):
        a = build_weight(ctx12, parse_weight_label(a_text))
        b = build_weight(ctx12, parse_weight_label(b_text))
        return [
            (str(lab), mult) for lab, mult in decomposition_counts(ctx12, tensor_dd(a, b))
        ]

    assert product_labels("e:chi2", "Mxy:1,0") == [("Mxy:0,0", 1)]
    assert product_labels("M2,3", "Mx:0,0") == [("Mx:0,1", 1), ("Mx:1,1", 1)]
    assert product_labels("e:chi1", "e:rho3") == [("e:rho3", 1)]
    assert product_labels("M2,3", "M3,9") == [("M1,6", 1), ("M5,0", 1)]


def test_tensor_with_trivial_weight_is_identity(ctx12):
    trivial = build_weight(ctx12, WeightLabel.e_chi(1))
    for label in all_weight_labels(ctx12)[:20]:
        module = build_weight(ctx12, label)
        counts = decomposition_counts(ctx12, tensor_dd(trivial, module))
        assert counts == [(label, 1)]


@given(st.integers(min_value=0, max_value=85), st.integers(min_value=0, max_value=85))
def test_tensor_dimensions_multiply(ctx12, i, j):
    labels = all_weight_labels(ctx12)
    a, b = labels[i], labels[j]
    product = tensor_dd(build_weight(ctx12, a), build_weight(ctx12, b))
    assert product.dim == a.dimension(6) * b.dimension(6)
    counts = decomposition_counts(ctx12, product)
    assert sum(lab.dimension(6) * mult for lab, mult in counts) == product.dim


def test_decompose_returns_full_rank_embeddings(ctx12):
    product = tensor_dd(
        build_weight(ctx12, parse_weight_label("M2,3")),
        build_weight(ctx12, parse_weight_label("Mx:0,0")),
    )
    parts = decompose(ctx12, product)
    total = 0
    for label, embeddings in parts:
        for emb in embeddings:
            assert emb.ncols == label.dimension(6)
            total += emb.ncols
    assert total == product.dim


def test_pair_module_matches_catalog_labels(ctx12):
    assert str(pair_weight_label(ctx12, 2, 3)) == "M2,3"
    assert str(pair_weight_label(ctx12, 6, 3)) == "yn:rho3"
    assert str(pair_weight_label(ctx12, 6, 9)) == "yn:rho3"
    for i, k in ((2, 3), (1, 6), (6, 5)):
        module = pair_module(ctx12, i, k)
        assert is_isomorphic(
            ctx12, module, build_weight(ctx12, pair_weight_label(ctx12, i, k))
        )


def test_class_key_separates_degree_support(ctx12):
    assert class_key(ctx12, parse_weight_label("e:chi3")) == "e"
    assert class_key(ctx12, parse_weight_label("yn:rho2")) == "yn"
    assert class_key(ctx12, parse_weight_label("M2,9")) == "y2"
    assert class_key(ctx12, parse_weight_label("M5,0")) == "y5"
    assert class_key(ctx12, parse_weight_label("Mx:1,0")) == "x"
    assert class_key(ctx12, parse_weight_label("Mxy:0,1")) == "xy"


def test_sort_key_orders_families_stably(ctx12):
    labels = all_weight_labels(ctx12)
    assert labels == sorted(labels, key=lambda lab: lab.sort_key())
    assert [str(lab) for lab in labels[:4]] == ["e:chi1", "e:chi2", "e:chi3", "e:chi4"]
