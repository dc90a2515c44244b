from __future__ import annotations

import pytest

from dihedral_doubles.nichols import parse_index_set
from dihedral_doubles.qdouble import (
    GradedCharacter,
    alpha_rewrite,
    assert_relations,
    build_verma,
    check_relations,
    graded_character,
    head,
    highest_weight_vectors,
    induce_from_simple,
    phi_action,
    quotient,
    socle,
    submodule_generated,
    tensor_qd,
    theta_action,
    theta_congruence,
)
from dihedral_doubles.weights import build_weight, parse_weight_label


def _char_text(char: GradedCharacter) -> str:
    return str(char).replace("\n", " | ")


def _verma(ctx, iset_text, label_text):
    return build_verma(
        ctx, parse_index_set(ctx, iset_text), parse_weight_label(label_text)
    )


def test_standard_module_shape(ctx12):
    verma = _verma(ctx12, "(2,3)", "e:rho3")
    assert verma.dim == 8
    layers = {z: len(ix) for z, ix in verma.layer_indices().items()}
    assert layers == {0: 2, -1: 4, -2: 2}
    assert_relations(verma)
    assert theta_congruence(verma) == []


def test_lowering_rewrite_on_the_double_letter(ctx12):
    iset = parse_index_set(ctx12, "(2,3)")
    label = parse_weight_label("e:rho3")
    verma = build_verma(ctx12, iset, label)
    image = alpha_rewrite(ctx12, iset, label, 1, 0, 0b11, 0)
    named = {verma.basis_labels[ix]: coeff for ix, coeff in image.items()}
    assert set(named) == {"v-0⊗m+"}
    assert named["v-0⊗m+"] == ctx12.field.from_integer(2)


def test_grading_of_generator_matrices(ctx12):
    verma = _verma(ctx12, "(2,3)", "Mx:0,0")
    zdeg = verma.zdeg
    for mat in verma.v_mats.values():
        for col, column in enumerate(mat.sparse_columns()):
            for row, _ in column:
                assert zdeg[row] == zdeg[col] - 1
    for mat in verma.a_mats.values():
        for col, column in enumerate(mat.sparse_columns()):
            for row, _ in column:
                assert zdeg[row] == zdeg[col] + 1
    for mat in (verma.x_mat, verma.y_mat):
        for col, column in enumerate(mat.sparse_columns()):
            for row, _ in column:
                assert zdeg[row] == zdeg[col]


def test_head_and_socle_of_singletons(ctx12):
    cases = {
        ("(2,3)", "e:chi1"): ("[0] e:chi1", "[-2] e:chi2"),
        ("(2,3)", "M2,3"): ("[0] M2,3", "[-2] M2,3"),
        ("(2,3)", "Mx:0,0"): (
            "[0] Mx:0,0 | [-1] Mx:0,1",
            "[-1] Mx:1,1 | [-2] Mx:1,0",
        ),
        ("(6,1)", "Mx:0,0"): (
            "[0] Mx:0,0 | [-1] Mx:0,1",
            "[-1] Mx:1,1 | [-2] Mx:1,0",
        ),
        ("(6,1)", "Mx:0,1"): (
            "[0] Mx:0,1 | [-1] Mx:0,0",
            "[-1] Mx:1,0 | [-2] Mx:1,1",
        ),
    }
    for (iset_text, label_text), (head_text, socle_text) in cases.items():
        verma = _verma(ctx12, iset_text, label_text)
        assert _char_text(graded_character(head(verma))) == head_text
        assert _char_text(graded_character(socle(verma))) == socle_text


def test_projective_weight_keeps_the_whole_module(ctx12):
    verma = _verma(ctx12, "(2,3)", "e:rho3")
    full = _char_text(graded_character(verma))
    assert full == "[0] e:rho3 | [-1] M2,0 + M2,6 | [-2] e:rho3"
    assert _char_text(graded_character(head(verma))) == full
    assert _char_text(graded_character(socle(verma))) == full


def test_two_pair_heads(ctx12):
    verma = _verma(ctx12, "(6,1),(6,3)", "Mx:0,0")
    assert verma.dim == 96
    expected = "[0] Mx:0,0 | [-1] 2*Mx:0,1 | [-2] Mx:0,0"
    assert _char_text(graded_character(head(verma))) == expected

    verma = _verma(ctx12, "(2,3),(6,3)", "Mxy:1,0")
    assert _char_text(graded_character(head(verma))) == (
        "[0] Mxy:1,0 | [-1] 2*Mxy:1,1 | [-2] Mxy:1,0"
    )


def test_highest_weight_vector_layout(ctx12):
    verma = _verma(ctx12, "(2,3)", "Mx:0,0")
    by_degree = {z: len(v) for z, v in highest_weight_vectors(verma).items() if v}
    # one six-dimensional weight on top, one in the middle
    assert by_degree == {0: 6, -1: 6}


def test_submodule_and_quotient_dimensions(ctx12):
    verma = _verma(ctx12, "(2,3)", "Mx:0,0")
    hw = highest_weight_vectors(verma)
    space = submodule_generated(verma, hw[-1])
    assert space.dim() == 12
    quotient_module = quotient(verma, space)
    assert quotient_module.dim == 12
    assert check_relations(quotient_module) == []
    assert _char_text(graded_character(quotient_module)) == "[0] Mx:0,0 | [-1] Mx:0,1"


def test_cross_term_operators_detect_weight_class(ctx12):
    rigid = build_weight(ctx12, parse_weight_label("e:chi1"))
    for eps in (1, -1):
        for mu in (1, -1):
            assert phi_action(ctx12, (2, 3), eps, mu, rigid).is_zero()
    projective = build_weight(ctx12, parse_weight_label("e:rho3"))
    assert not theta_action(ctx12, (2, 3), projective).is_zero()
    reflection = build_weight(ctx12, parse_weight_label("Mx:0,0"))
    assert not phi_action(ctx12, (2, 3), 1, -1, reflection).is_zero()


def test_induction_multiplies_dimension_by_four(ctx12):
    base = head(_verma(ctx12, "(3,6)", "Mx:0,0"))
    assert base.dim == 12
    induced = induce_from_simple(ctx12, base, (1, 6))
    assert induced.dim == 48
    assert check_relations(induced) == []
    assert _char_text(graded_character(head(induced))) == (
        "[0] Mx:0,0 | [-1] 2*Mxy:0,0 | [-2] Mx:0,0"
    )


def test_tensor_of_simples_passes_relations(ctx12):
    iset = parse_index_set(ctx12, "(2,3)")
    left = head(build_verma(ctx12, iset, parse_weight_label("e:chi2")))
    right = head(build_verma(ctx12, iset, parse_weight_label("M2,3")))
    product = tensor_qd(ctx12, left, right)
    assert product.dim == left.dim * right.dim
    assert check_relations(product) == []
    assert _char_text(graded_character(product)) == "[0] M2,3"


def test_character_json_round_trip(ctx12):
    verma = _verma(ctx12, "(2,3)", "e:rho3")
    char = graded_character(verma)
    assert GradedCharacter.from_json_obj(char.to_json_obj()) == char
    assert char.dimension(ctx12.n) == verma.dim
    shifted = char.shifted(-2)
    assert shifted.degrees() == [-2, -3, -4]
    assert (char + char).dimension(ctx12.n) == 2 * verma.dim


def test_socle_refuses_modules_without_kernel_vectors(ctx12):
    verma = _verma(ctx12, "(2,3)", "M2,3")
    soc = socle(verma)
    assert soc.kind == "socle"
    assert min(soc.zdeg) == -2
