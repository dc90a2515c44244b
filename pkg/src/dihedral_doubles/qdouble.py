"""Modules over the Drinfeld double of the bosonized Nichols algebra.

The double is generated by the group part (x, y and the dual group-likes,
realized here as the group grading), a raising letter pair v+, v- for every
index pair, and a lowering pair a+, a- dual to it.  A :class:`QDModule`
stores the action of every generator as an explicit exact matrix, together
with an integer grading (the letter count, nonpositive) and the group
grading.

Standard (Verma-type) modules are built by letting the exterior algebra of
the letters act freely on a chosen weight and rewriting each lowering
generator past the letters; the cross terms produced by the defining
relations act through the group degree of the vector alone.  Socles and
heads are computed from scratch by exact linear algebra, with no appeal to
any closed-form answer, so they can serve as independent evidence for one.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .cyclotomic import CycMatrix, CycNum, mat_kernel
from .dihedral import DihedralContext, GroupElement
from .nichols import (
    ExtMonomial,
    IndexSet,
    letter_insert,
    letter_pair,
    letter_sign,
    nichols_basis,
    rotation_exponents,
    swap_letters,
    validate_index_set,
)
from .weights import (
    DoubleModule,
    WeightLabel,
    build_weight,
    decomposition_counts,
    parse_weight_label,
)

Cell = tuple[int, GroupElement]
VecDict = dict[int, CycNum]


class QDModule:
    """A doubly graded module over the double, with one matrix per generator.

    Attributes:
        ctx: shared dihedral context.
        index_set: the index pairs the double is built on.
        zdeg: integer degree of each basis vector (0 on the inducing weight).
        gdeg: group degree of each basis vector.
        x_mat, y_mat: group generator matrices.
        v_mats: raising matrices, keyed by (pair position, sign).
        a_mats: lowering matrices, keyed by (pair position, sign).
        weight: label of the inducing weight, when one applies.
        kind: how the module was produced (verma, induced, quotient, ...).
    """

    def __init__(
        self,
        ctx: DihedralContext,
        index_set: IndexSet,
        basis_labels: Sequence[str],
        zdeg: Sequence[int],
        gdeg: Sequence[GroupElement],
        x_mat: CycMatrix,
        y_mat: CycMatrix,
        v_mats: dict[tuple[int, int], CycMatrix],
        a_mats: dict[tuple[int, int], CycMatrix],
        weight: WeightLabel | None = None,
        kind: str = "module",
    ) -> None:
        self.ctx = ctx
        self.index_set = index_set
        self.basis_labels = tuple(basis_labels)
        self.zdeg = tuple(zdeg)
        self.gdeg = tuple(gdeg)
        self.dim = len(self.basis_labels)
        self.x_mat = x_mat
        self.y_mat = y_mat
        self.v_mats = v_mats
        self.a_mats = a_mats
        self.weight = weight
        self.kind = kind

    def layer_indices(self) -> dict[int, list[int]]:
        cached = self.__dict__.get("_layers")
        if cached is None:
            cached = {}
            for idx, z in enumerate(self.zdeg):
                cached.setdefault(z, []).append(idx)
            self.__dict__["_layers"] = cached
        return cached

    def cells(self) -> dict[Cell, list[int]]:
        cached = self.__dict__.get("_cells")
        if cached is None:
            cached = {}
            for idx, (z, g) in enumerate(zip(self.zdeg, self.gdeg)):
                cached.setdefault((z, g), []).append(idx)
            self.__dict__["_cells"] = cached
        return cached

    def generator_matrices(self) -> list[tuple[str, CycMatrix]]:
        """Every generator with a display name, in a deterministic order."""
        out = [("x", self.x_mat), ("y", self.y_mat)]
        for (pos, sign), mat in sorted(self.v_mats.items(), key=lambda kv: (kv[0][0], -kv[0][1])):
            out.append((f"v{'+' if sign > 0 else '-'}{pos}", mat))
        for (pos, sign), mat in sorted(self.a_mats.items(), key=lambda kv: (kv[0][0], -kv[0][1])):
            out.append((f"a{'+' if sign > 0 else '-'}{pos}", mat))
        return out

    def layer_module(self, z: int) -> DoubleModule:
        """The degree-z layer as a module over the double of the group alone."""
        idxs = self.layer_indices().get(z, [])
        return DoubleModule(
            self.ctx,
            [self.gdeg[i] for i in idxs],
            self.x_mat.submatrix(idxs, idxs),
            self.y_mat.submatrix(idxs, idxs),
            [self.basis_labels[i] for i in idxs],
        )

    def __repr__(self) -> str:
        name = str(self.weight) if self.weight else None
        return f"QDModule(kind={self.kind!r}, dim={self.dim}, index_set={str(self.index_set)!r}, weight={name!r})"


def _sparse_col_dicts(mat: CycMatrix) -> list[VecDict]:
    return [dict(col) for col in mat.sparse_columns()]


def _add_into(target: VecDict, key: int, value: CycNum) -> None:
    acc = target.get(key)
    acc = value if acc is None else acc + value
    if acc:
        target[key] = acc
    elif key in target:
        del target[key]


def _apply_cols(cols: list[VecDict], vec: VecDict) -> VecDict:
    out: VecDict = {}
    for j, val in vec.items():
        for i, a in cols[j].items():
            _add_into(out, i, a * val)
    return out


def y_power_columns(module: QDModule | DoubleModule, power: int) -> list[VecDict]:
    """Columns of the matrix of y^power, cached on the module object."""
    power %= module.ctx.m
    cache = module.__dict__.setdefault("_ypow_cols", {})
    if power not in cache:
        if power == 0:
            one = module.ctx.field.one
            cache[0] = [{j: one} for j in range(module.dim)]
        else:
            prev = y_power_columns(module, power - 1)
            ycols = _sparse_col_dicts(module.y_mat)
            cache[power] = [_apply_cols(ycols, prev[j]) for j in range(module.dim)]
    return cache[power]


def _module_gdeg(module: QDModule | DoubleModule) -> tuple[GroupElement, ...]:
    return module.gdeg if isinstance(module, QDModule) else module.degrees


def phi_action(
    ctx: DihedralContext,
    pair: tuple[int, int],
    eps: int,
    mu: int,
    module: QDModule | DoubleModule,
) -> CycMatrix:
    """Matrix of the rank-lowering cross term for one choice of signs.

    The operator produced by commuting the lowering generator of sign eps
    past the raising generator of sign mu acts through group degrees alone:
    on a rotation-degree vector the equal-sign choices give
    ``1 - w^(+-a*k) y^(+-i)`` and the mixed ones vanish, while on a
    reflection-degree vector the equal-sign choices act as the identity and
    the mixed ones as a root-of-unity multiple of ``y^(-+i)``.
    """
    i, k = pair
    field = ctx.field
    gdeg = _module_gdeg(module)
    cols: list[VecDict] = []
    for b in range(module.dim):
        g = gdeg[b]
        a = g.rot
        col: VecDict = {}
        if g.refl == 0:
            if eps == mu:
                scale = -ctx.omega(a * k if eps > 0 else -a * k)
                for idx, val in y_power_columns(module, i if eps > 0 else -i)[b].items():
                    _add_into(col, idx, scale * val)
                _add_into(col, b, field.one)
        else:
            if eps == mu:
                col[b] = field.one
            elif eps > 0:
                scale = -ctx.omega(-(a + 2 * i) * k)
                for idx, val in y_power_columns(module, -i)[b].items():
                    _add_into(col, idx, scale * val)
            else:
                scale = -ctx.omega((a - 2 * i) * k)
                for idx, val in y_power_columns(module, i)[b].items():
                    _add_into(col, idx, scale * val)
        cols.append(col)
    return CycMatrix.from_column_dicts(field, cols, module.dim)


def theta_action(ctx: DihedralContext, pair: tuple[int, int], module: QDModule | DoubleModule) -> CycMatrix:
    """The degree-preserving combination of the four cross terms of one pair."""
    pp = phi_action(ctx, pair, 1, 1, module)
    mm = phi_action(ctx, pair, -1, -1, module)
    pm = phi_action(ctx, pair, 1, -1, module)
    mp = phi_action(ctx, pair, -1, 1, module)
    return pm * mp - pp * mm


class _InductionBase:
    """Uniform view of the module a standard or induced module is built on."""

    def __init__(
        self,
        ctx: DihedralContext,
        dim: int,
        gdeg: Sequence[GroupElement],
        zdeg: Sequence[int],
        labels: Sequence[str],
        x_cols: list[VecDict],
        y_source: QDModule | DoubleModule,
        gen_cols: dict[tuple[str, int, int], list[VecDict]],
    ) -> None:
        self.ctx = ctx
        self.dim = dim
        self.gdeg = tuple(gdeg)
        self.zdeg = tuple(zdeg)
        self.labels = tuple(labels)
        self.x_cols = x_cols
        self.y_source = y_source
        self.gen_cols = gen_cols

    @classmethod
    def from_weight(cls, ctx: DihedralContext, module: DoubleModule) -> _InductionBase:
        return cls(
            ctx,
            module.dim,
            module.degrees,
            (0,) * module.dim,
            module.basis_labels,
            _sparse_col_dicts(module.x_mat),
            module,
            {},
        )

    @classmethod
    def from_module(cls, ctx: DihedralContext, module: QDModule) -> _InductionBase:
        gens: dict[tuple[str, int, int], list[VecDict]] = {}
        for (pos, sign), mat in module.v_mats.items():
            gens[("v", pos, sign)] = _sparse_col_dicts(mat)
        for (pos, sign), mat in module.a_mats.items():
            gens[("a", pos, sign)] = _sparse_col_dicts(mat)
        return cls(
            ctx,
            module.dim,
            module.gdeg,
            module.zdeg,
            module.basis_labels,
            _sparse_col_dicts(module.x_mat),
            module,
            gens,
        )

    def y_power(self, power: int) -> list[VecDict]:
        return y_power_columns(self.y_source, power)


def _induce(
    ctx: DihedralContext,
    base: _InductionBase,
    new_pairs: tuple[tuple[int, int], ...],
    insert_pos: int,
    merged: IndexSet,
    weight: WeightLabel | None,
    kind: str,
) -> QDModule:
    """Let the exterior algebra on fresh letters act freely on the base module.

    The base generators (when any) pass the new letters with one sign flip
    per letter; the fresh lowering letters are rewritten recursively past the
    leading letter, picking up a cross term whenever they meet their own
    partner.
    """
    field = ctx.field
    sub = IndexSet(ctx.m, new_pairs)
    nu = len(new_pairs)
    masks: list[int] = []
    for deg in range(2 * nu + 1):
        masks.extend(nichols_basis(sub, deg))
    mask_exponents = {mask: rotation_exponents(sub, mask) for mask in masks}
    entries = [(mask, b) for mask in masks for b in range(base.dim)]
    entries.sort(
        key=lambda mb: (
            -(base.zdeg[mb[1]] - mb[0].bit_count()),
            mb[0].bit_count(),
            tuple(ExtMonomial(mb[0]).letters()),
            mb[1],
        )
    )
    position = {mb: idx for idx, mb in enumerate(entries)}
    dim = len(entries)
    zdeg = [base.zdeg[b] - mask.bit_count() for mask, b in entries]
    gdeg = [ctx.group.rotation(mask_exponents[mask][0]) * base.gdeg[b] for mask, b in entries]
    labels = [f"{ExtMonomial(mask)}⊗{base.labels[b]}" for mask, b in entries]

    def scatter(base_col: VecDict, target: VecDict, mask: int, scale: CycNum) -> None:
        for b2, val in base_col.items():
            _add_into(target, position[(mask, b2)], val * scale)

    x_cols: list[VecDict] = [dict() for _ in range(dim)]
    y_cols: list[VecDict] = [dict() for _ in range(dim)]
    base_y = base.y_power(1)
    for mask, b in entries:
        j = position[(mask, b)]
        xsign, swapped = swap_letters(sub, mask)
        scatter(base.x_cols[b], x_cols[j], swapped, field.from_integer(xsign))
        scatter(base_y[b], y_cols[j], mask, ctx.omega(mask_exponents[mask][1]))

    v_cols: dict[tuple[int, int], list[VecDict]] = {}
    for q in range(nu):
        for sign in (1, -1):
            letter = 2 * q + (0 if sign > 0 else 1)
            cols: list[VecDict] = [dict() for _ in range(dim)]
            for mask, b in entries:
                lsign, bigger = letter_insert(letter, mask)
                if lsign:
                    cols[position[(mask, b)]][position[(bigger, b)]] = field.from_integer(lsign)
            v_cols[(q, sign)] = cols

    omega = ctx.omega
    alpha_memo: dict[tuple[int, int, int, int], dict[tuple[int, int], CycNum]] = {}

    def phi_on(q: int, eps: int, mu: int, mask: int, b: int) -> dict[tuple[int, int], CycNum]:
        i, k = new_pairs[q]
        isum, ksum = mask_exponents[mask]
        g = ctx.group.rotation(isum) * base.gdeg[b]
        a = g.rot
        out: dict[tuple[int, int], CycNum] = {}

        def add_y_power(power: int, scale: CycNum) -> None:
            # y^power on (mask, b): the letters only contribute a root of unity
            total = scale * omega(power * ksum)
            for b2, val in base.y_power(power)[b].items():
                key = (mask, b2)
                acc = out.get(key)
                acc = total * val if acc is None else acc + total * val
                if acc:
                    out[key] = acc
                elif key in out:
                    del out[key]

        if g.refl == 0:
            if eps == mu:
                out[(mask, b)] = field.one
                add_y_power(i if eps > 0 else -i, -omega(a * k if eps > 0 else -a * k))
        else:
            if eps == mu:
                out[(mask, b)] = field.one
            elif eps > 0:
                add_y_power(-i, -omega(-(a + 2 * i) * k))
            else:
                add_y_power(i, -omega((a - 2 * i) * k))
        return out

    def alpha_on(q: int, eps: int, mask: int, b: int) -> dict[tuple[int, int], CycNum]:
        if mask == 0:
            return {}
        key = (q, eps, mask, b)
        cached = alpha_memo.get(key)
        if cached is not None:
            return cached
        low = mask & -mask
        letter = low.bit_length() - 1
        rest = mask ^ low
        out: dict[tuple[int, int], CycNum] = {}
        for (mk, b2), val in alpha_on(q, eps, rest, b).items():
            # the leading letter is smaller than every letter left in the
            # tail, so re-inserting it in front costs no crossing sign
            out[(mk | low, b2)] = -val
        if letter_pair(letter) == q:
            for key2, val in phi_on(q, eps, letter_sign(letter), rest, b).items():
                acc = out.get(key2)
                acc = val if acc is None else acc + val
                if acc:
                    out[key2] = acc
                elif key2 in out:
                    del out[key2]
        alpha_memo[key] = out
        return out

    a_cols: dict[tuple[int, int], list[VecDict]] = {}
    for q in range(nu):
        for sign in (1, -1):
            cols = []
            for mask, b in entries:
                cols.append(
                    {position[mb]: val for mb, val in alpha_on(q, sign, mask, b).items()}
                )
            a_cols[(q, sign)] = cols

    old_mats: dict[tuple[str, int, int], CycMatrix] = {}
    for (gen_kind, pos, sign), cols in base.gen_cols.items():
        new_cols: list[VecDict] = [dict() for _ in range(dim)]
        for mask, b in entries:
            flip = field.from_integer(-1 if mask.bit_count() % 2 else 1)
            scatter(cols[b], new_cols[position[(mask, b)]], mask, flip)
        old_mats[(gen_kind, pos, sign)] = CycMatrix.from_column_dicts(field, new_cols, dim)

    v_mats = {
        (insert_pos + q, sign): CycMatrix.from_column_dicts(field, cols, dim)
        for (q, sign), cols in v_cols.items()
    }
    a_mats = {
        (insert_pos + q, sign): CycMatrix.from_column_dicts(field, cols, dim)
        for (q, sign), cols in a_cols.items()
    }
    for (gen_kind, pos, sign), mat in old_mats.items():
        shifted = pos if pos < insert_pos else pos + nu
        (v_mats if gen_kind == "v" else a_mats)[(shifted, sign)] = mat
    return QDModule(
        ctx,
        merged,
        labels,
        zdeg,
        gdeg,
        CycMatrix.from_column_dicts(field, x_cols, dim),
        CycMatrix.from_column_dicts(field, y_cols, dim),
        v_mats,
        a_mats,
        weight=weight,
        kind=kind,
    )


def build_verma(ctx: DihedralContext, index_set: IndexSet, weight: WeightLabel) -> QDModule:
    """The standard module: the exterior algebra of the letters on a weight."""
    lam = build_weight(ctx, weight)
    base = _InductionBase.from_weight(ctx, lam)
    return _induce(ctx, base, index_set.pairs, 0, index_set, weight, "verma")


def induce_from_simple(ctx: DihedralContext, simple: QDModule, pair: tuple[int, int]) -> QDModule:
    """Extend a module over a smaller double by one fresh index pair."""
    old = simple.index_set
    merged = validate_index_set(ctx, old.pairs + (pair,))
    insert_pos = bisect_left(old.pairs, pair)
    base = _InductionBase.from_module(ctx, simple)
    return _induce(ctx, base, (pair,), insert_pos, merged, simple.weight, "induced")


def alpha_rewrite(
    ctx: DihedralContext,
    index_set: IndexSet,
    weight: WeightLabel,
    eps: int,
    pair_position: int,
    mask: int,
    weight_index: int,
) -> VecDict:
    """Action of one lowering generator on one standard-module basis vector.

    Returns the image as a map from basis positions to coefficients; the
    basis ordering matches :func:`build_verma`, whose matrices are produced
    by exactly this rewriting.
    """
    verma = build_verma(ctx, index_set, weight)
    lam = build_weight(ctx, weight)
    label = f"{ExtMonomial(mask)}⊗{lam.basis_labels[weight_index]}"
    try:
        source = verma.basis_labels.index(label)
    except ValueError:
        raise ValueError(f"no basis vector {label!r} in the standard module") from None
    return dict(verma.a_mats[(pair_position, eps)].sparse_columns()[source])


def check_relations(module: QDModule) -> list[str]:
    """Verify every defining relation on explicit matrices; list the failures.

    Covers the group relations, the grading compatibility of every generator,
    the smash-product commutation of x and y with each letter, all
    anticommutators among raising letters, among lowering letters, and the
    mixed ones, where the same-pair bracket must equal the cross-term
    operator of :func:`phi_action` and distinct pairs must anticommute.
    """
    ctx = module.ctx
    field = ctx.field
    failures: list[str] = []
    pairs = module.index_set.pairs
    dim = module.dim
    group = ctx.group

    def check_grading(name: str, mat: CycMatrix, zshift: int, gmap: Callable[[GroupElement], GroupElement]) -> None:
        sparse = mat.sparse_columns()
        for j in range(dim):
            target_z = module.zdeg[j] + zshift
            target_g = gmap(module.gdeg[j])
            for i, _ in sparse[j]:
                if module.zdeg[i] != target_z or module.gdeg[i] != target_g:
                    failures.append(f"{name} breaks the grading at column {j}")
                    return

    check_grading("x", module.x_mat, 0, lambda g: g.conjugated_by(group.x))
    check_grading("y", module.y_mat, 0, lambda g: g.conjugated_by(group.y))
    for (pos, sign), mat in module.v_mats.items():
        i = pairs[pos][0]
        check_grading(
            f"v({pos},{sign:+d})", mat, -1, lambda g, i=i, s=sign: group.rotation(s * i) * g
        )
    for (pos, sign), mat in module.a_mats.items():
        i = pairs[pos][0]
        check_grading(
            f"a({pos},{sign:+d})", mat, +1, lambda g, i=i, s=sign: group.rotation(-s * i) * g
        )

    x_cols = _sparse_col_dicts(module.x_mat)
    y_cols = _sparse_col_dicts(module.y_mat)
    unit_cols: list[VecDict] = [{j: field.one} for j in range(dim)]
    zero_cols: list[VecDict] = [dict() for _ in range(dim)]

    def cols_equal(a: list[VecDict], b: list[VecDict]) -> bool:
        return all(ca == cb for ca, cb in zip(a, b))

    if not cols_equal([_apply_cols(x_cols, c) for c in x_cols], unit_cols):
        failures.append("x^2 != 1")
    ypow = unit_cols
    for _ in range(ctx.m):
        ypow = [_apply_cols(y_cols, c) for c in ypow]
    if not cols_equal(ypow, unit_cols):
        failures.append(f"y^{ctx.m} != 1")
    xy_cols = [_apply_cols(x_cols, c) for c in y_cols]
    if not cols_equal([_apply_cols(x_cols, _apply_cols(y_cols, c)) for c in xy_cols], unit_cols):
        failures.append("(x y)^2 != 1")

    letter_cols: dict[tuple[str, tuple[int, int]], list[VecDict]] = {}
    for key, mat in module.v_mats.items():
        letter_cols[("v", key)] = _sparse_col_dicts(mat)
    for key, mat in module.a_mats.items():
        letter_cols[("a", key)] = _sparse_col_dicts(mat)

    for (kind, (pos, sign)), cols in letter_cols.items():
        partner = letter_cols[(kind, (pos, -sign))]
        k = pairs[pos][1]
        lhs = [_apply_cols(x_cols, c) for c in cols]
        rhs = [_apply_cols(partner, c) for c in x_cols]
        if not cols_equal(lhs, rhs):
            failures.append(f"x does not swap the sign of {kind} at pair position {pos}")
        scale = ctx.omega(sign * k if kind == "v" else -sign * k)
        lhs = [_apply_cols(y_cols, c) for c in cols]
        rhs = [{i: val * scale for i, val in _apply_cols(cols, c).items()} for c in y_cols]
        if not cols_equal(lhs, rhs):
            failures.append(f"y does not scale {kind} at pair position {pos} as expected")

    def anticommutator(ca: list[VecDict], cb: list[VecDict]) -> list[VecDict]:
        out: list[VecDict] = []
        for j in range(dim):
            merged = _apply_cols(ca, cb[j])
            for i, val in _apply_cols(cb, ca[j]).items():
                _add_into(merged, i, val)
            out.append(merged)
        return out

    v_keys = sorted(module.v_mats, key=lambda key: (key[0], -key[1]))
    a_keys = sorted(module.a_mats, key=lambda key: (key[0], -key[1]))
    for idx, ka in enumerate(v_keys):
        for kb in v_keys[idx:]:
            if not cols_equal(anticommutator(letter_cols[("v", ka)], letter_cols[("v", kb)]), zero_cols):
                failures.append(f"raising letters {ka} and {kb} do not anticommute")
    for idx, ka in enumerate(a_keys):
        for kb in a_keys[idx:]:
            if not cols_equal(anticommutator(letter_cols[("a", ka)], letter_cols[("a", kb)]), zero_cols):
                failures.append(f"lowering letters {ka} and {kb} do not anticommute")
    for ka in a_keys:
        for kb in v_keys:
            bracket = anticommutator(letter_cols[("a", ka)], letter_cols[("v", kb)])
            if ka[0] == kb[0]:
                target = _sparse_col_dicts(phi_action(ctx, pairs[ka[0]], ka[1], kb[1], module))
            else:
                target = zero_cols
            if not cols_equal(bracket, target):
                failures.append(f"mixed bracket of a{ka} with v{kb} does not match the cross term")
    return failures


def assert_relations(module: QDModule) -> None:
    failures = check_relations(module)
    if failures:
        raise AssertionError(f"defining relations fail on {module!r}: " + "; ".join(failures))


def theta_congruence(module: QDModule) -> list[str]:
    """Check the degree-zero congruence for every pair; list the failures.

    On each degree-zero basis vector, applying the two raising letters of a
    pair and then its two lowering letters must agree with the
    degree-preserving combination computed by :func:`theta_action` from
    group data alone.
    """
    ctx = module.ctx
    failures: list[str] = []
    top = [idx for idx, z in enumerate(module.zdeg) if z == 0]
    for pos, pair in enumerate(module.index_set.pairs):
        chain = [
            _sparse_col_dicts(module.v_mats[(pos, -1)]),
            _sparse_col_dicts(module.v_mats[(pos, 1)]),
            _sparse_col_dicts(module.a_mats[(pos, -1)]),
            _sparse_col_dicts(module.a_mats[(pos, 1)]),
        ]
        theta_cols = _sparse_col_dicts(theta_action(ctx, pair, module))
        for b in top:
            vec: VecDict = {b: ctx.field.one}
            for cols in chain:
                vec = _apply_cols(cols, vec)
            if vec != theta_cols[b]:
                failures.append(f"degree-zero congruence fails for pair {pair} on {module.basis_labels[b]}")
    return failures


def highest_weight_vectors(
    module: QDModule, degree: int | None = None
) -> dict[int, list[VecDict]] | list[VecDict]:
    """Joint kernel of the lowering letters, per integer degree.

    With a degree given, returns the list of kernel vectors in that degree;
    otherwise a mapping from each populated degree to its (possibly empty)
    list, highest degree first.
    """
    if degree is None:
        return {
            z: highest_weight_vectors(module, z)
            for z in sorted(module.layer_indices(), reverse=True)
        }
    idxs = module.layer_indices().get(degree, [])
    if not idxs:
        return []
    field = module.ctx.field
    if not module.a_mats:
        return [{i: field.one} for i in idxs]
    above = module.layer_indices().get(degree + 1, [])
    stacked = CycMatrix.vstack(
        [mat.submatrix(above, idxs) for mat in module.a_mats.values()]
    )
    return [
        {idxs[t]: val for t, val in enumerate(vec) if val} for vec in mat_kernel(stacked)
    ]


class _CellBasis:
    """Echelonized basis of one (degree, group degree) cell of a subspace."""

    def __init__(self, field, coords: list[int]) -> None:
        self.field = field
        self.coords = coords
        self.rows: list[VecDict] = []
        self.pivots: list[int] = []

    def reduce(self, vec: VecDict) -> VecDict:
        vec = dict(vec)
        for pivot, row in zip(self.pivots, self.rows):
            val = vec.get(pivot)
            if val:
                for t, rv in row.items():
                    _add_into(vec, t, -(rv * val))
        return vec

    def insert(self, vec: VecDict) -> bool:
        residual = self.reduce(vec)
        if not residual:
            return False
        pivot = min(residual)
        inv = residual[pivot].inverse()
        row = {t: val * inv for t, val in residual.items()}
        for other in self.rows:
            val = other.get(pivot)
            if val:
                for t, rv in row.items():
                    _add_into(other, t, -(rv * val))
        at = bisect_left(self.pivots, pivot)
        self.pivots.insert(at, pivot)
        self.rows.insert(at, row)
        return True

    def coordinates(self, vec: VecDict) -> list[CycNum] | None:
        """Coefficients expressing the vector in this basis, or None if outside."""
        coeffs = [vec.get(pivot, self.field.zero) for pivot in self.pivots]
        if self.reduce(vec):
            return None
        return coeffs


class GradedSubspace:
    """A subspace homogeneous for both gradings, cell by cell in echelon form."""

    def __init__(self, module: QDModule) -> None:
        self.module = module
        self.field = module.ctx.field
        self.cells: dict[Cell, _CellBasis] = {}

    def _cell_of(self, vec: VecDict) -> Cell:
        idx = next(iter(vec))
        cell = (self.module.zdeg[idx], self.module.gdeg[idx])
        for i in vec:
            if (self.module.zdeg[i], self.module.gdeg[i]) != cell:
                raise ValueError("vector is not homogeneous for the two gradings")
        return cell

    def insert(self, vec: VecDict) -> bool:
        if not vec:
            return False
        cell = self._cell_of(vec)
        basis = self.cells.get(cell)
        if basis is None:
            basis = _CellBasis(self.field, self.module.cells()[cell])
            self.cells[cell] = basis
        return basis.insert(vec)

    def reduce(self, vec: VecDict) -> VecDict:
        if not vec:
            return {}
        basis = self.cells.get(self._cell_of(vec))
        return dict(vec) if basis is None else basis.reduce(vec)

    def contains(self, vec: VecDict) -> bool:
        return not self.reduce(vec)

    def dim(self) -> int:
        return sum(len(basis.rows) for basis in self.cells.values())

    def cell_dims(self) -> dict[Cell, int]:
        return {cell: len(basis.rows) for cell, basis in self.cells.items() if basis.rows}


def submodule_generated(module: QDModule, vectors: Iterable[VecDict]) -> GradedSubspace:
    """Smallest subspace containing the vectors and stable under every generator."""
    space = GradedSubspace(module)
    gen_cols = [_sparse_col_dicts(mat) for _, mat in module.generator_matrices()]
    queue: list[VecDict] = [dict(vec) for vec in vectors if space.insert(vec)]
    while queue:
        vec = queue.pop()
        for cols in gen_cols:
            image = _apply_cols(cols, vec)
            if image and space.insert(image):
                queue.append(image)
    return space


def quotient(module: QDModule, space: GradedSubspace, kind: str = "quotient") -> QDModule:
    """Quotient by a stable graded subspace, on the complementary coordinates."""
    removed: set[int] = set()
    for basis in space.cells.values():
        removed.update(basis.pivots)
    kept = [i for i in range(module.dim) if i not in removed]
    new_index = {old: new for new, old in enumerate(kept)}
    field = module.ctx.field

    def project(mat: CycMatrix) -> CycMatrix:
        sparse = mat.sparse_columns()
        cols: list[VecDict] = []
        for old in kept:
            reduced = space.reduce(dict(sparse[old]))
            cols.append({new_index[i]: val for i, val in reduced.items()})
        return CycMatrix.from_column_dicts(field, cols, len(kept))

    return QDModule(
        module.ctx,
        module.index_set,
        [module.basis_labels[i] for i in kept],
        [module.zdeg[i] for i in kept],
        [module.gdeg[i] for i in kept],
        project(module.x_mat),
        project(module.y_mat),
        {key: project(mat) for key, mat in module.v_mats.items()},
        {key: project(mat) for key, mat in module.a_mats.items()},
        weight=module.weight,
        kind=kind,
    )


def _ordered_cells(space: GradedSubspace) -> list[tuple[Cell, int]]:
    ordered: list[tuple[Cell, int]] = []
    for cell in sorted(space.cells, key=lambda c: (-c[0], c[1].refl, c[1].rot)):
        for t in range(len(space.cells[cell].rows)):
            ordered.append((cell, t))
    return ordered


def _express_in_space(
    module: QDModule,
    space: GradedSubspace,
    ordered: list[tuple[Cell, int]],
    position: dict[tuple[Cell, int], int],
    mat: CycMatrix,
) -> CycMatrix:
    field = module.ctx.field
    sparse = _sparse_col_dicts(mat)
    cols: list[VecDict] = []
    for cell, t in ordered:
        row = space.cells[cell].rows[t]
        image = _apply_cols(sparse, row)
        col: VecDict = {}
        if image:
            lead = next(iter(image))
            target_cell = (module.zdeg[lead], module.gdeg[lead])
            target = space.cells.get(target_cell)
            coeffs = target.coordinates(image) if target is not None else None
            if coeffs is None:
                raise AssertionError("subspace is not stable under a generator")
            for s, val in enumerate(coeffs):
                if val:
                    col[position[(target_cell, s)]] = val
        cols.append(col)
    return CycMatrix.from_column_dicts(field, cols, len(ordered))


def subspace_as_module(module: QDModule, space: GradedSubspace, kind: str = "submodule") -> QDModule:
    """A generator-stable subspace as a module in its own right."""
    ordered = _ordered_cells(space)
    position = {ct: idx for idx, ct in enumerate(ordered)}
    labels = [
        f"[{module.basis_labels[space.cells[cell].pivots[t]]}]" for cell, t in ordered
    ]
    return QDModule(
        module.ctx,
        module.index_set,
        labels,
        [cell[0] for cell, _ in ordered],
        [cell[1] for cell, _ in ordered],
        _express_in_space(module, space, ordered, position, module.x_mat),
        _express_in_space(module, space, ordered, position, module.y_mat),
        {key: _express_in_space(module, space, ordered, position, mat) for key, mat in module.v_mats.items()},
        {key: _express_in_space(module, space, ordered, position, mat) for key, mat in module.a_mats.items()},
        weight=module.weight,
        kind=kind,
    )


def _subspace_double_module(module: QDModule, space: GradedSubspace) -> DoubleModule:
    """The group-double module carried by an x,y-stable graded subspace."""
    ordered = _ordered_cells(space)
    position = {ct: idx for idx, ct in enumerate(ordered)}
    return DoubleModule(
        module.ctx,
        [cell[1] for cell, _ in ordered],
        _express_in_space(module, space, ordered, position, module.x_mat),
        _express_in_space(module, space, ordered, position, module.y_mat),
        [f"s{idx}" for idx in range(len(ordered))],
    )


def socle(module: QDModule) -> QDModule:
    """The submodule generated by the lowest nonvanishing joint kernel.

    Scans degrees from the bottom up for the first degree carrying vectors
    killed by every lowering letter, certifies that they span a single
    multiplicity-one weight over the double of the group, and returns the
    submodule they generate.  For standard modules the bottom layer of the
    result is additionally checked to exhaust the bottom layer of the module.
    """
    layers = module.layer_indices()
    found: list[VecDict] = []
    for z in sorted(layers):
        vecs = highest_weight_vectors(module, z)
        if vecs:
            found = vecs
            break
    if not found:
        raise AssertionError("module has no joint kernel vectors at all")
    seed = GradedSubspace(module)
    for vec in found:
        seed.insert(vec)
    for cols in (_sparse_col_dicts(module.x_mat), _sparse_col_dicts(module.y_mat)):
        for basis in list(seed.cells.values()):
            for row in list(basis.rows):
                if not seed.contains(_apply_cols(cols, row)):
                    raise AssertionError("lowest joint kernel is not stable under the group")
    counts = decomposition_counts(module.ctx, _subspace_double_module(module, seed))
    if len(counts) != 1 or counts[0][1] != 1:
        raise AssertionError(
            "lowest joint kernel is not a single multiplicity-one weight: "
            + ", ".join(f"{label} x{mult}" for label, mult in counts)
        )
    full = submodule_generated(module, found)
    if module.kind == "verma":
        zmin = min(layers)
        bottom_dim = sum(mult for (z, _), mult in full.cell_dims().items() if z == zmin)
        if bottom_dim != len(layers[zmin]):
            raise AssertionError("socle of a standard module misses part of the bottom layer")
    return subspace_as_module(module, full, kind="socle")


def head(module: QDModule) -> QDModule:
    """The maximal semisimple quotient, by repeatedly shaving negative kernels.

    Each pass quotients by the submodule generated by every joint kernel
    vector in negative degree; the loop must terminate with all joint kernel
    vectors concentrated in degree zero.
    """
    current = module
    for _ in range(2 * len(module.index_set.pairs) + 2):
        by_degree = highest_weight_vectors(current)
        negatives = [vec for z, vecs in by_degree.items() if z < 0 for vec in vecs]
        if not negatives:
            break
        space = submodule_generated(current, negatives)
        current = quotient(current, space, kind="head")
    else:
        raise AssertionError("head computation did not stabilize")
    return current


@dataclass(frozen=True)
class GradedCharacter:
    """Multiset of weights per integer degree: the invariant all claims compare."""

    layers: tuple[tuple[int, tuple[tuple[WeightLabel, int], ...]], ...]

    @classmethod
    def from_counts(cls, counts: dict[int, Sequence[tuple[WeightLabel, int]]]) -> GradedCharacter:
        layers = []
        for z in sorted(counts, reverse=True):
            entries = tuple(
                sorted(
                    ((label, mult) for label, mult in counts[z] if mult),
                    key=lambda lm: lm[0].sort_key(),
                )
            )
            if entries:
                layers.append((z, entries))
        return cls(tuple(layers))

    @classmethod
    def single(cls, label: WeightLabel, degree: int = 0) -> GradedCharacter:
        return cls(((degree, ((label, 1),)),))

    def degrees(self) -> list[int]:
        return [z for z, _ in self.layers]

    def layer(self, z: int) -> dict[WeightLabel, int]:
        for degree, entries in self.layers:
            if degree == z:
                return dict(entries)
        return {}

    def dimension(self, n: int) -> int:
        return sum(mult * label.dimension(n) for _, entries in self.layers for label, mult in entries)

    def shifted(self, offset: int) -> GradedCharacter:
        return GradedCharacter(tuple((z + offset, entries) for z, entries in self.layers))

    def __add__(self, other: GradedCharacter) -> GradedCharacter:
        counts: dict[int, dict[WeightLabel, int]] = {}
        for source in (self, other):
            for z, entries in source.layers:
                bucket = counts.setdefault(z, {})
                for label, mult in entries:
                    bucket[label] = bucket.get(label, 0) + mult
        return GradedCharacter.from_counts({z: list(b.items()) for z, b in counts.items()})

    def to_json_obj(self) -> list[dict]:
        return [
            {
                "degree": z,
                "summands": [{"label": str(label), "mult": mult} for label, mult in entries],
            }
            for z, entries in self.layers
        ]

    @classmethod
    def from_json_obj(cls, obj: Sequence[dict]) -> GradedCharacter:
        counts = {
            entry["degree"]: [
                (parse_weight_label(s["label"]), int(s["mult"])) for s in entry["summands"]
            ]
            for entry in obj
        }
        return cls.from_counts(counts)

    def __str__(self) -> str:
        if not self.layers:
            return "0"
        lines = []
        for z, entries in self.layers:
            body = " + ".join(
                (f"{mult}*{label}" if mult > 1 else str(label)) for label, mult in entries
            )
            lines.append(f"[{z}] {body}")
        return "\n".join(lines)


def graded_character(module: QDModule) -> GradedCharacter:
    """Decompose every integer-degree layer over the double of the group."""
    counts = {
        z: decomposition_counts(module.ctx, module.layer_module(z))
        for z in module.layer_indices()
    }
    return GradedCharacter.from_counts(counts)


def tensor_qd(ctx: DihedralContext, left: QDModule, right: QDModule) -> QDModule:
    """Tensor product of modules over the same double.

    The group part acts diagonally; a raising letter acts on the right
    factor through the group degree of the left one, and a lowering letter
    likewise, swapping its sign on reflection-degree vectors.  The
    construction is guarded: the defining relations are re-checked on the
    result and any failure raises instead of being patched over.
    """
    if left.index_set != right.index_set:
        raise ValueError("tensor factors must share one index set")
    field = ctx.field
    dim_r = right.dim
    dim = left.dim * dim_r

    def fuse(a: int, b: int) -> int:
        return a * dim_r + b

    zdeg = [za + zb for za in left.zdeg for zb in right.zdeg]
    gdeg = [ga * gb for ga in left.gdeg for gb in right.gdeg]
    labels = [f"{la}⊗{lb}" for la in left.basis_labels for lb in right.basis_labels]

    def kron_cols(a_cols: list[VecDict], b_cols: list[VecDict]) -> list[VecDict]:
        cols = []
        for ja in range(left.dim):
            for jb in range(dim_r):
                cols.append(
                    {
                        fuse(ia, ib): va * vb
                        for ia, va in a_cols[ja].items()
                        for ib, vb in b_cols[jb].items()
                    }
                )
        return cols

    x_cols = kron_cols(_sparse_col_dicts(left.x_mat), _sparse_col_dicts(right.x_mat))
    y_cols = kron_cols(_sparse_col_dicts(left.y_mat), _sparse_col_dicts(right.y_mat))
    v_mats: dict[tuple[int, int], CycMatrix] = {}
    a_mats: dict[tuple[int, int], CycMatrix] = {}
    for (pos, sign), mat in left.v_mats.items():
        i, _ = left.index_set.pairs[pos]
        va = _sparse_col_dicts(mat)
        vb = _sparse_col_dicts(right.v_mats[(pos, sign)])
        ya = y_power_columns(left, sign * i)
        cols = []
        for ja in range(left.dim):
            for jb in range(dim_r):
                col: VecDict = {}
                for ia, val in va[ja].items():
                    _add_into(col, fuse(ia, jb), val)
                for ia, val in ya[ja].items():
                    for ib, bval in vb[jb].items():
                        _add_into(col, fuse(ia, ib), val * bval)
                cols.append(col)
        v_mats[(pos, sign)] = CycMatrix.from_column_dicts(field, cols, dim)
    for (pos, sign), mat in left.a_mats.items():
        _, k = left.index_set.pairs[pos]
        aa = _sparse_col_dicts(mat)
        ab_same = _sparse_col_dicts(right.a_mats[(pos, sign)])
        ab_opp = _sparse_col_dicts(right.a_mats[(pos, -sign)])
        cols = []
        for ja in range(left.dim):
            g = left.gdeg[ja]
            if g.refl == 0:
                scale, partner = ctx.omega(sign * g.rot * k), ab_same
            else:
                scale, partner = ctx.omega(-sign * g.rot * k), ab_opp
            for jb in range(dim_r):
                col = {}
                for ia, val in aa[ja].items():
                    _add_into(col, fuse(ia, jb), val)
                for ib, val in partner[jb].items():
                    _add_into(col, fuse(ja, ib), scale * val)
                cols.append(col)
        a_mats[(pos, sign)] = CycMatrix.from_column_dicts(field, cols, dim)
    result = QDModule(
        ctx,
        left.index_set,
        labels,
        zdeg,
        gdeg,
        CycMatrix.from_column_dicts(field, x_cols, dim),
        CycMatrix.from_column_dicts(field, y_cols, dim),
        v_mats,
        a_mats,
        weight=None,
        kind="tensor",
    )
    failures = check_relations(result)
    if failures:
        raise AssertionError(
            "tensor product violates the defining relations: " + "; ".join(failures)
        )
    return result
