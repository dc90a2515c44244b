"""Classification of weights and mechanical verification of the simple modules.

Every weight of the double falls, relative to one index pair, into one of
three classes: rigid (every cross term vanishes on it), projective (the
standard module it induces is already simple), or reflection type (the mixed
cross terms act nontrivially).  The class is implemented twice on purpose:
once as a closed-form table in the arithmetic of the pair, once by evaluating
the cross-term operators themselves; tests insist the two agree everywhere.

On top of the classification sit the predicted graded characters of the
simple quotients, the tensor splitting rule for reflection weights, the
spherical/pivot structure, and :func:`verify_simple`, which replays every
claim about one simple module against from-scratch linear algebra and
reports the outcome.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclotomic import CycMatrix, CycNum, mat_solve
from .dihedral import DihedralContext
from .nichols import IndexSet, exterior_power_module
from .qdouble import (
    GradedCharacter,
    QDModule,
    build_verma,
    check_relations,
    graded_character,
    head,
    highest_weight_vectors,
    induce_from_simple,
    phi_action,
    socle,
    tensor_qd,
    theta_action,
    theta_congruence,
    y_power_columns,
)
from .weights import (
    WeightLabel,
    build_weight,
    decompose,
    decomposition_counts,
    pair_module,
    tensor_dd,
)

RIGID = "R"
PROJECTIVE = "P"
REFLECTION = "O"

_CLASS_NAMES = {RIGID: "rigid", PROJECTIVE: "projective", REFLECTION: "reflection"}


# ---------------------------------------------------------------------------
# classification of a weight relative to one index pair
# ---------------------------------------------------------------------------


def classify_weight(ctx: DihedralContext, label: WeightLabel, pair: tuple[int, int]) -> str:
    """Class of ``label`` relative to ``pair``, by the closed-form rules.

    Returns one of ``"R"`` (rigid), ``"P"`` (projective), ``"O"``
    (reflection type).  The rules depend only on parities and residues of
    the pair ``(i, k)`` against the weight parameters.
    """
    m, n = ctx.m, ctx.n
    i, k = pair
    fam = label.family
    if fam in ("Mx", "Mxy"):
        return REFLECTION
    if fam == "e:chi":
        (j,) = label.params
        if j in (1, 2):
            return RIGID
        return RIGID if i % 2 == 0 else PROJECTIVE
    if fam == "yn:chi":
        (j,) = label.params
        if j in (1, 2):
            return RIGID if k % 2 == 0 else PROJECTIVE
        return RIGID if (i + k) % 2 == 0 else PROJECTIVE
    if fam == "e:rho":
        (ell,) = label.params
        return RIGID if (i * ell) % m == 0 else PROJECTIVE
    if fam == "yn:rho":
        # two-dimensional weight concentrated on y^n, same rule as M(n, ell)
        (ell,) = label.params
        return RIGID if (i * ell + n * k) % m == 0 else PROJECTIVE
    if fam == "M":
        p, q = label.params
        return RIGID if (i * q + p * k) % m == 0 else PROJECTIVE
    raise ValueError(f"unknown weight family {fam!r}")


def classify_weight_by_action(
    ctx: DihedralContext, label: WeightLabel, pair: tuple[int, int]
) -> str:
    """Class of ``label`` relative to ``pair``, read off the cross terms.

    Independent of :func:`classify_weight`: builds the weight as explicit
    matrices and evaluates the four cross-term operators on it.  Nonzero
    mixed terms mean reflection type; all four vanishing means rigid; a
    nonvanishing quadratic combination with zero mixed terms means
    projective.
    """
    module = build_weight(ctx, label)
    ops = {
        (eps, mu): phi_action(ctx, pair, eps, mu, module)
        for eps in (+1, -1)
        for mu in (+1, -1)
    }
    mixed_nonzero = not ops[(+1, -1)].is_zero() or not ops[(-1, +1)].is_zero()
    if mixed_nonzero:
        return REFLECTION
    if all(op.is_zero() for op in ops.values()):
        return RIGID
    theta = theta_action(ctx, pair, module)
    if not theta.is_zero():
        return PROJECTIVE
    raise ArithmeticError(
        f"degenerate cross terms for {label} at pair {pair}: "
        "diagonal terms nonzero but their product vanishes"
    )


@dataclass(frozen=True)
class IndexSplit:
    """Positions of an index set split by the class of a rotation weight."""

    rigid: tuple[int, ...]
    projective: tuple[int, ...]


def split_index(ctx: DihedralContext, index_set: IndexSet, label: WeightLabel) -> IndexSplit:
    """Split positions of ``index_set`` into rigid and projective for ``label``.

    Only meaningful for weights that are not reflection type; raises
    ``ValueError`` on ``Mx``/``Mxy`` weights, whose standard modules follow
    the subset rule instead of a split.
    """
    if label.is_reflection_type:
        raise ValueError(f"{label} is reflection type; no rigid/projective split exists")
    rigid: list[int] = []
    projective: list[int] = []
    for pos, pair in enumerate(index_set.pairs):
        cls = classify_weight(ctx, label, pair)
        if cls == RIGID:
            rigid.append(pos)
        else:
            projective.append(pos)
    return IndexSplit(rigid=tuple(rigid), projective=tuple(projective))


# ---------------------------------------------------------------------------
# predicted graded characters of the simple quotients
# ---------------------------------------------------------------------------


def predicted_character(
    ctx: DihedralContext, index_set: IndexSet, label: WeightLabel
) -> GradedCharacter:
    """Graded character the simple head of the standard module should have.

    For a rotation weight the simple restricts to the exterior algebra on
    the projective positions tensored with the weight, graded by letter
    count.  For a reflection weight it is a sum of two-dimensional weights
    indexed by subsets of the positions, a subset of size d sitting in
    degree ``-d`` with its parameters shifted by the subset sums of the pair
    indices.
    """
    if label.is_reflection_type:
        return _predicted_reflection_character(ctx, index_set, label)
    split = split_index(ctx, index_set, label)
    proj_pairs = tuple(index_set.pairs[pos] for pos in split.projective)
    lam = build_weight(ctx, label)
    counts: dict[int, list[tuple[WeightLabel, int]]] = {}
    sub = IndexSet(ctx.m, proj_pairs)
    for d in range(2 * len(proj_pairs) + 1):
        layer = exterior_power_module(ctx, sub, d)
        if layer.dim == 0:
            continue
        counts[-d] = decomposition_counts(ctx, tensor_dd(layer, lam))
    return GradedCharacter.from_counts(counts)


def _reflection_label(fam: int, s: int, t: int) -> WeightLabel:
    if fam % 2 == 0:
        return WeightLabel.even_reflection(s % 2, t % 2)
    return WeightLabel.odd_reflection(s % 2, t % 2)


def _predicted_reflection_character(
    ctx: DihedralContext, index_set: IndexSet, label: WeightLabel
) -> GradedCharacter:
    fam = 0 if label.family == "Mx" else 1
    s, t = label.params
    pairs = index_set.pairs
    counts: dict[int, dict[WeightLabel, int]] = {}
    for bits in range(1 << len(pairs)):
        i_sum = sum(pairs[pos][0] for pos in range(len(pairs)) if bits >> pos & 1)
        k_sum = sum(pairs[pos][1] for pos in range(len(pairs)) if bits >> pos & 1)
        deg = -bin(bits).count("1")
        shifted = _reflection_label(fam + i_sum, s, t + k_sum)
        layer = counts.setdefault(deg, {})
        layer[shifted] = layer.get(shifted, 0) + 1
    return GradedCharacter.from_counts(
        {deg: list(layer.items()) for deg, layer in counts.items()}
    )


def predicted_simple_dimension(
    ctx: DihedralContext, index_set: IndexSet, label: WeightLabel
) -> int:
    """Dimension of the simple head, from the classification alone."""
    if label.is_reflection_type:
        return (1 << index_set.size) * ctx.n
    split = split_index(ctx, index_set, label)
    return 4 ** len(split.projective) * label.dimension(ctx.n)


# ---------------------------------------------------------------------------
# tensor splitting at a reflection weight
# ---------------------------------------------------------------------------


def predicted_reflection_split(
    ctx: DihedralContext, pair: tuple[int, int], label: WeightLabel
) -> tuple[WeightLabel, WeightLabel]:
    """The two summands of (pair weight) tensor (reflection weight).

    Returns ``(plus, minus)``: the tensor square of a pair weight with
    ``M(fam, s, t)`` splits as ``plus + minus`` where the first parameter
    moves by the pair index i, the last by k, and the middle parameter of
    the plus summand picks up an extra flip (plus a ``t``-dependent one when
    i is the half-turn exponent).  The distinguished vectors of
    :func:`reflection_split_vectors` lie in the plus and minus summand
    respectively.
    """
    if not label.is_reflection_type:
        raise ValueError(f"{label} is not a reflection-type weight")
    i, k = pair
    fam = 0 if label.family == "Mx" else 1
    s, t = label.params
    delta = t if i == ctx.n else 0
    plus = _reflection_label(fam + i, s + 1 + delta, t + k)
    minus = _reflection_label(fam + i, s + delta, t + k)
    return plus, minus


def reflection_split_vectors(
    ctx: DihedralContext, pair: tuple[int, int], label: WeightLabel
) -> tuple[dict[int, CycNum], dict[int, CycNum]]:
    """Distinguished vectors inside (pair weight) tensor (reflection weight).

    In the product basis ``e[a*n + b]`` (a indexing the pair weight, b the
    reflection weight) the vectors are ``w^(fam*k) * e[n + 0] +/- e[i mod n]``.
    The plus vector generates the plus summand of
    :func:`predicted_reflection_split`, the minus vector the minus summand.
    """
    i, k = pair
    n = ctx.n
    fam = 0 if label.family == "Mx" else 1
    coeff = ctx.field.zeta((fam * k) % ctx.m)
    one = ctx.field.one
    plus = {n + 0: coeff, (i % n): one}
    minus = {n + 0: coeff, (i % n): -one}
    return plus, minus


def verify_reflection_split(
    ctx: DihedralContext, pair: tuple[int, int], label: WeightLabel
) -> None:
    """Check the splitting rule for one pair and one reflection weight.

    Decomposes the tensor product by brute force, compares the summand
    labels with :func:`predicted_reflection_split`, and verifies that each
    distinguished vector lies in the image of the homomorphisms from its
    predicted summand.  Raises ``AssertionError`` on any mismatch.
    """
    plus_label, minus_label = predicted_reflection_split(ctx, pair, label)
    product = tensor_dd(pair_module(ctx, *pair), build_weight(ctx, label))
    parts = decompose(ctx, product)
    found = {part_label: embeddings for part_label, embeddings in parts}
    expected = {plus_label, minus_label}
    if set(found) != expected:
        raise AssertionError(
            f"tensor at pair {pair} with {label}: found {sorted(map(str, found))}, "
            f"expected {sorted(map(str, expected))}"
        )
    plus_vec, minus_vec = reflection_split_vectors(ctx, pair, label)
    zero = ctx.field.zero
    for vec, part_label in ((plus_vec, plus_label), (minus_vec, minus_label)):
        embeddings = found[part_label]
        image = CycMatrix.from_columns(
            ctx.field,
            [emb.column(j) for emb in embeddings for j in range(emb.ncols)],
            product.dim,
        )
        rhs = tuple(vec.get(r, zero) for r in range(product.dim))
        if mat_solve(image, rhs) is None:
            raise AssertionError(
                f"distinguished vector for {part_label} at pair {pair}, weight {label} "
                "does not lie in its summand"
            )


# ---------------------------------------------------------------------------
# closed-form head and socle for a single pair
# ---------------------------------------------------------------------------


def singleton_head_character(
    ctx: DihedralContext, pair: tuple[int, int], label: WeightLabel
) -> GradedCharacter:
    """Graded character of the simple head over a single-pair index set."""
    return predicted_character(ctx, IndexSet(ctx.m, (pair,)), label)


def singleton_socle_character(
    ctx: DihedralContext, pair: tuple[int, int], label: WeightLabel
) -> GradedCharacter:
    """Graded character of the socle of the standard module of one pair.

    Rigid weight: the socle is the top-degree twist of the weight by the
    volume character, in degree -2.  Projective weight: the standard module
    is simple, so the socle is everything.  Reflection weight: two
    two-dimensional layers mirroring the head's lower layer.
    """
    cls = classify_weight(ctx, label, pair)
    iset = IndexSet(ctx.m, (pair,))
    if cls == PROJECTIVE:
        return predicted_character(ctx, iset, label)
    if cls == RIGID:
        vol = exterior_power_module(ctx, iset, 2)
        twisted = decompose(ctx, tensor_dd(vol, build_weight(ctx, label)))
        if len(twisted) != 1 or len(twisted[0][1]) != 1:
            raise ArithmeticError(f"volume twist of {label} is not a single weight")
        return GradedCharacter.single(twisted[0][0], -2)
    plus_label, _ = predicted_reflection_split(ctx, pair, label)
    fam = 0 if label.family == "Mx" else 1
    s, t = label.params
    bottom = _reflection_label(fam, s + 1, t)
    return GradedCharacter.from_counts({-1: [(plus_label, 1)], -2: [(bottom, 1)]})


# ---------------------------------------------------------------------------
# tensor products of simples with a rigid factor
# ---------------------------------------------------------------------------


def verify_rigid_tensor(
    ctx: DihedralContext, index_set: IndexSet, mu: WeightLabel, lam: WeightLabel
) -> None:
    """Check semisimplicity of (rigid simple) tensor (any simple).

    Requires ``mu`` to be rigid for every pair of the index set.  Builds
    both simples, forms their tensor product over the double, and checks
    that every joint kernel vector sits in degree zero and that the graded
    character equals the sum of predicted simple characters over the
    decomposition of the weight product.  Raises ``AssertionError`` on any
    failure.
    """
    for pair in index_set.pairs:
        if classify_weight(ctx, mu, pair) != RIGID:
            raise ValueError(f"{mu} is not rigid at pair {pair}")
    left = head(build_verma(ctx, index_set, mu))
    right = head(build_verma(ctx, index_set, lam))
    product = tensor_qd(ctx, left, right)
    for z, vecs in highest_weight_vectors(product).items():
        if z != 0 and vecs:
            raise AssertionError(
                f"L({mu}) x L({lam}): joint kernel vectors in degree {z}"
            )
    expected = GradedCharacter.from_counts({})
    weight_product = tensor_dd(build_weight(ctx, mu), build_weight(ctx, lam))
    for part_label, mult in decomposition_counts(ctx, weight_product):
        part = predicted_character(ctx, index_set, part_label)
        for _ in range(mult):
            expected = expected + part
    actual = graded_character(product)
    if actual != expected:
        raise AssertionError(
            f"L({mu}) x L({lam}): character {actual} differs from predicted {expected}"
        )


# ---------------------------------------------------------------------------
# spherical structure, pivots, quantum dimensions
# ---------------------------------------------------------------------------

_PIVOT_SIGNS = {1: (1, 1), 2: (-1, 1), 3: (1, -1), 4: (-1, -1)}


def is_spherical(ctx: DihedralContext, index_set: IndexSet) -> bool:
    """Whether the double of this index set admits a spherical pivot.

    Fails exactly when some pair has both entries even.
    """
    return all(i % 2 != 0 or k % 2 != 0 for i, k in index_set.pairs)


def pivot_candidate(ctx: DihedralContext, module: QDModule, character: int) -> CycMatrix:
    """Candidate pivot on ``module``: y^n times the given sign character.

    ``character`` indexes the four sign characters of the group (1 trivial,
    2 negating the reflection, 3 negating the rotation, 4 negating both).
    """
    sx, sy = _PIVOT_SIGNS[character]
    cols = y_power_columns(module, ctx.n)
    signed = []
    for b in range(module.dim):
        g = module.gdeg[b]
        sign = (sx ** g.refl) * (sy ** g.rot)
        if sign == 1:
            signed.append(dict(cols[b]))
        else:
            signed.append({r: -c for r, c in cols[b].items()})
    return CycMatrix.from_column_dicts(ctx.field, signed, module.dim)


def pivot_check(ctx: DihedralContext, module: QDModule, character: int) -> bool:
    """Whether the candidate pivot squares to one and negates every letter.

    The pivot must be an involution and must conjugate each raising and
    lowering generator to its negative.
    """
    pivot = pivot_candidate(ctx, module, character)
    ident = CycMatrix.identity(ctx.field, module.dim)
    if pivot * pivot != ident:
        return False
    for mats in (module.v_mats, module.a_mats):
        for mat in mats.values():
            if pivot * mat * pivot != -mat:
                return False
    return True


def spherical_report(ctx: DihedralContext, index_set: IndexSet) -> dict[int, bool]:
    """Outcome of :func:`pivot_check` for all four candidate characters.

    Runs on the standard module of the top weight, whose letter matrices
    exercise every generator.
    """
    probe = build_verma(ctx, index_set, WeightLabel.e_chi(1))
    return {j: pivot_check(ctx, probe, j) for j in (1, 2, 3, 4)}


def quantum_dimension(ctx: DihedralContext, module: QDModule) -> CycNum:
    """Quantum dimension of ``module`` for the spherical pivot.

    Trace of y^n weighted by the rotation-negating sign character.  Only
    meaningful when the index set is spherical; raises otherwise.
    """
    if not is_spherical(ctx, module.index_set):
        raise ValueError(f"index set {module.index_set} is not spherical")
    sx, sy = _PIVOT_SIGNS[3]
    cols = y_power_columns(module, ctx.n)
    total = ctx.field.zero
    for b in range(module.dim):
        diag = cols[b].get(b)
        if diag is None:
            continue
        g = module.gdeg[b]
        sign = (sx ** g.refl) * (sy ** g.rot)
        total = total + (diag if sign == 1 else -diag)
    return total


# ---------------------------------------------------------------------------
# full verification of one simple module
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RecursionCheck:
    """One-pair recursion: heads and socles rebuilt through induction.

    Removing the pair, the head of the standard module is reproduced as the
    head of the module induced from the smaller head, and the socle as the
    socle of the module induced from the smaller socle.  Inducing the head
    does not reproduce the socle: the induced module is a proper quotient of
    the standard module and its socle is a different simple in general.
    """

    pair: tuple[int, int]
    relations_ok: bool
    head_matches: bool
    socle_matches: bool

    @property
    def ok(self) -> bool:
        return self.relations_ok and self.head_matches and self.socle_matches


@dataclass(frozen=True)
class SimpleReport:
    """Everything verified about one simple module, with pass/fail flags."""

    m: int
    index_set: IndexSet
    weight: WeightLabel
    pair_classes: tuple[str, ...]
    verma_dimension: int
    simple_dimension: int
    predicted_dimension: int
    relations_ok: bool
    theta_ok: bool
    head_character: GradedCharacter
    predicted_head: GradedCharacter
    head_matches: bool
    socle_character: GradedCharacter
    expected_socle: GradedCharacter | None
    socle_matches: bool | None
    socle_simple: bool
    recursion: tuple[RecursionCheck, ...]
    qdim: CycNum | None
    qdim_expected_nonzero: bool | None
    qdim_ok: bool | None

    @property
    def ok(self) -> bool:
        checks = [
            self.relations_ok,
            self.theta_ok,
            self.head_matches,
            self.simple_dimension == self.predicted_dimension,
            self.socle_simple,
        ]
        if self.socle_matches is not None:
            checks.append(self.socle_matches)
        if self.qdim_ok is not None:
            checks.append(self.qdim_ok)
        checks.extend(rec.ok for rec in self.recursion)
        return all(checks)

    def to_json_obj(self) -> dict:
        return {
            "m": self.m,
            "index_set": [list(pair) for pair in self.index_set.pairs],
            "weight": str(self.weight),
            "pair_classes": list(self.pair_classes),
            "verma_dimension": self.verma_dimension,
            "simple_dimension": self.simple_dimension,
            "head": self.head_character.to_json_obj(),
            "socle": self.socle_character.to_json_obj(),
            "checks": {
                "relations": self.relations_ok,
                "theta": self.theta_ok,
                "head_formula": self.head_matches,
                "dimension_formula": self.simple_dimension == self.predicted_dimension,
                "socle_simple": self.socle_simple,
                "socle_formula": self.socle_matches,
                "recursion": [
                    {"pair": list(rec.pair), "ok": rec.ok} for rec in self.recursion
                ],
                "qdim_pattern": self.qdim_ok,
            },
            "qdim": str(self.qdim) if self.qdim is not None else None,
            "ok": self.ok,
        }


def _socle_is_simple(ctx: DihedralContext, soc: QDModule) -> bool:
    """Whether the socle has a simple bottom: one weight, multiplicity one.

    The socle construction already certifies this internally; this recheck
    decomposes the bottom layer independently.
    """
    bottom = min(soc.zdeg)
    counts = decomposition_counts(ctx, soc.layer_module(bottom))
    return sum(mult for _, mult in counts) == 1


def verify_simple(
    ctx: DihedralContext,
    index_set: IndexSet,
    label: WeightLabel,
    *,
    check_recursion: bool = True,
    check_qdim: bool = True,
) -> SimpleReport:
    """Build the standard module of ``label``, verify every claim about it.

    Checks performed:

    * generator relations and the quadratic congruence on the standard module;
    * the graded character of the simple head against
      :func:`predicted_character` and the dimension formula;
    * simplicity of the socle (single weight, multiplicity one), and for a
      single pair the closed-form socle character;
    * when ``check_recursion`` and the index set has more than one pair:
      for each distinct removable pair, the modules induced from the head
      and from the socle of the smaller standard module satisfy the
      relations and reproduce the head and socle respectively;
    * when ``check_qdim`` and the index set is spherical: the quantum
      dimension of the simple is nonzero exactly when every pair is rigid
      for the weight.
    """
    pairs = index_set.pairs
    classes = tuple(classify_weight(ctx, label, pair) for pair in pairs)

    verma = build_verma(ctx, index_set, label)
    relations_ok = not check_relations(verma)
    theta_ok = not theta_congruence(verma)

    simple = head(verma)
    head_char = graded_character(simple)
    predicted = predicted_character(ctx, index_set, label)
    predicted_dim = predicted_simple_dimension(ctx, index_set, label)

    soc = socle(verma)
    socle_char = graded_character(soc)
    socle_simple = _socle_is_simple(ctx, soc)
    if index_set.size == 1:
        expected_socle = singleton_socle_character(ctx, pairs[0], label)
        socle_matches = socle_char == expected_socle
    else:
        expected_socle = None
        socle_matches = None

    recursion: list[RecursionCheck] = []
    if check_recursion and index_set.size > 1:
        for pair in sorted(set(pairs)):
            pos = pairs.index(pair)
            sub_verma = build_verma(ctx, index_set.without(pos), label)
            from_head = induce_from_simple(ctx, head(sub_verma), pair)
            from_socle = induce_from_simple(ctx, socle(sub_verma), pair)
            rec_relations = not check_relations(from_head) and not check_relations(from_socle)
            rec_head = graded_character(head(from_head)) == head_char
            rec_socle = graded_character(socle(from_socle)) == socle_char
            recursion.append(
                RecursionCheck(
                    pair=pair,
                    relations_ok=rec_relations,
                    head_matches=rec_head,
                    socle_matches=rec_socle,
                )
            )

    qdim: CycNum | None = None
    qdim_expected: bool | None = None
    qdim_ok: bool | None = None
    if check_qdim and is_spherical(ctx, index_set):
        qdim = quantum_dimension(ctx, simple)
        qdim_expected = all(cls == RIGID for cls in classes)
        qdim_ok = bool(qdim) == qdim_expected

    return SimpleReport(
        m=ctx.m,
        index_set=index_set,
        weight=label,
        pair_classes=classes,
        verma_dimension=verma.dim,
        simple_dimension=simple.dim,
        predicted_dimension=predicted_dim,
        relations_ok=relations_ok,
        theta_ok=theta_ok,
        head_character=head_char,
        predicted_head=predicted,
        head_matches=head_char == predicted,
        socle_character=socle_char,
        expected_socle=expected_socle,
        socle_matches=socle_matches,
        socle_simple=socle_simple,
        recursion=tuple(recursion),
        qdim=qdim,
        qdim_expected_nonzero=qdim_expected,
        qdim_ok=qdim_ok,
    )
