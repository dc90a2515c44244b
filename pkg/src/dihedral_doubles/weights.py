"""Simple modules over the Drinfeld double of the dihedral group.

A module here is a group-graded vector space with a compatible group action:
the grading records the coaction by group-likes, and compatibility means the
action of g maps the degree-h component into the degree-``g h g^-1`` one.
Simple modules fall into seven families, labelled by a conjugacy class and an
irreducible character of its centralizer:

* ``e:chi1`` .. ``e:chi4``    - dimension 1, degree e;
* ``e:rho<l>``                - dimension 2, degree e, rotation eigenvalues w^(+-l);
* ``yn:chi1`` .. ``yn:chi4``  - dimension 1, degree y^n (n = m/2);
* ``yn:rho<l>``               - dimension 2, degree y^n;
* ``M<i>,<k>``                - dimension 2, degrees y^(+-i), 1 <= i <= n-1;
* ``Mx:<s>,<t>``              - dimension n, degrees on the even reflections;
* ``Mxy:<s>,<t>``             - dimension n, degrees on the odd reflections.

The catalog of all of them is complete: the sum of squared dimensions equals
the dimension (2m)^2 of the double, every member has a one-dimensional
endomorphism algebra, and distinct members admit no nonzero homomorphism.
All three facts are checked when the catalog is built.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .cyclotomic import CycMatrix, CycNum, mat_kernel, mat_rank
from .dihedral import DihedralContext, GroupElement

_CHI_SIGNS = {1: (1, 1), 2: (-1, 1), 3: (1, -1), 4: (-1, -1)}
_FAMILY_RANK = {"e:chi": 0, "e:rho": 1, "yn:chi": 2, "yn:rho": 3, "M": 4, "Mx": 5, "Mxy": 6}

_LABEL_PATTERNS = (
    ("e:chi", re.compile(r"e:chi([1-4])\Z")),
    ("e:rho", re.compile(r"e:rho(\d+)\Z")),
    ("yn:chi", re.compile(r"yn:chi([1-4])\Z")),
    ("yn:rho", re.compile(r"yn:rho(\d+)\Z")),
    ("Mx", re.compile(r"Mx:([01]),([01])\Z")),
    ("Mxy", re.compile(r"Mxy:([01]),([01])\Z")),
    ("M", re.compile(r"M(\d+),(\d+)\Z")),
)


@dataclass(frozen=True)
class WeightLabel:
    """Symbolic name of one simple module over the double of the group."""

    family: str
    params: tuple[int, ...]

    @classmethod
    def e_chi(cls, j: int) -> WeightLabel:
        return cls("e:chi", (j,))

    @classmethod
    def e_rho(cls, l: int) -> WeightLabel:
        return cls("e:rho", (l,))

    @classmethod
    def yn_chi(cls, j: int) -> WeightLabel:
        return cls("yn:chi", (j,))

    @classmethod
    def yn_rho(cls, l: int) -> WeightLabel:
        return cls("yn:rho", (l,))

    @classmethod
    def rotation_pair(cls, i: int, k: int) -> WeightLabel:
        return cls("M", (i, k))

    @classmethod
    def even_reflection(cls, s: int, t: int) -> WeightLabel:
        return cls("Mx", (s % 2, t % 2))

    @classmethod
    def odd_reflection(cls, s: int, t: int) -> WeightLabel:
        return cls("Mxy", (s % 2, t % 2))

    @property
    def is_reflection_type(self) -> bool:
        return self.family in ("Mx", "Mxy")

    def dimension(self, n: int) -> int:
        if self.family in ("e:chi", "yn:chi"):
            return 1
        if self.family in ("e:rho", "yn:rho", "M"):
            return 2
        return n

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (_FAMILY_RANK[self.family], self.params)

    def __str__(self) -> str:
        if self.family in ("e:chi", "e:rho", "yn:chi", "yn:rho"):
            return f"{self.family}{self.params[0]}"
        if self.family == "M":
            return f"M{self.params[0]},{self.params[1]}"
        return f"{self.family}:{self.params[0]},{self.params[1]}"

    def __repr__(self) -> str:
        return f"WeightLabel({str(self)!r})"


def parse_weight_label(text: str) -> WeightLabel:
    """Inverse of ``str`` on weight labels."""
    raw = text.replace(" ", "")
    for family, pattern in _LABEL_PATTERNS:
        match = pattern.match(raw)
        if match:
            return WeightLabel(family, tuple(int(g) for g in match.groups()))
    raise ValueError(f"malformed weight label: {text!r}")


class DoubleModule:
    """A module over the double of the dihedral group, as explicit matrices.

    Attributes:
        ctx: the shared dihedral context.
        dim: vector space dimension.
        degrees: group degree of each basis vector.
        x_mat, y_mat: matrices of the two group generators.
        basis_labels: display names of the basis vectors.
    """

    def __init__(
        self,
        ctx: DihedralContext,
        degrees: Sequence[GroupElement],
        x_mat: CycMatrix,
        y_mat: CycMatrix,
        basis_labels: Sequence[str],
    ) -> None:
        self.ctx = ctx
        self.degrees = tuple(degrees)
        self.dim = len(self.degrees)
        self.x_mat = x_mat
        self.y_mat = y_mat
        self.basis_labels = tuple(basis_labels)
        if x_mat.nrows != self.dim or y_mat.nrows != self.dim:
            raise ValueError("matrix sizes do not match the basis")

    def degree_support(self) -> frozenset[GroupElement]:
        return frozenset(self.degrees)

    def __repr__(self) -> str:
        return f"DoubleModule(dim={self.dim}, m={self.ctx.m})"


def validate_double_module(module: DoubleModule) -> None:
    """Check the group relations and the grading compatibility; raise on failure."""
    ctx = module.ctx
    x, y = module.x_mat, module.y_mat
    ident = CycMatrix.identity(ctx.field, module.dim)
    if x * x != ident:
        raise ValueError("x does not square to the identity")
    ypow = ident
    for _ in range(ctx.m):
        ypow = y * ypow
    if ypow != ident:
        raise ValueError(f"y does not have order dividing {ctx.m}")
    xy = x * y
    if xy * xy != ident:
        raise ValueError("(x y) is not an involution")
    for gen, mat in (("x", x), ("y", y)):
        t = ctx.group.x if gen == "x" else ctx.group.y
        cols = mat.sparse_columns()
        for j in range(module.dim):
            target = module.degrees[j].conjugated_by(t)
            for i, _ in cols[j]:
                if module.degrees[i] != target:
                    raise ValueError(
                        f"{gen} breaks the grading at basis vector {module.basis_labels[j]}"
                    )


def build_weight(ctx: DihedralContext, label: WeightLabel) -> DoubleModule:
    """Construct the simple module named by the label, with validated ranges."""
    field, group, m, n = ctx.field, ctx.group, ctx.m, ctx.n
    family, params = label.family, label.params
    if family in ("e:chi", "yn:chi"):
        (j,) = params
        sx, sy = _CHI_SIGNS[j]
        deg = group.identity if family == "e:chi" else group.rotation(n)
        one = field.from_integer
        return DoubleModule(
            ctx, [deg], CycMatrix.from_rows(field, [[one(sx)]]), CycMatrix.from_rows(field, [[one(sy)]]), ["m"]
        )
    if family in ("e:rho", "yn:rho"):
        (l,) = params
        if not 1 <= l <= n - 1:
            raise ValueError(f"rotation character index out of range: {label}")
        deg = group.identity if family == "e:rho" else group.rotation(n)
        return DoubleModule(
            ctx,
            [deg, deg],
            _swap_matrix(field),
            CycMatrix.diagonal(field, [ctx.omega(l), ctx.omega(-l)]),
            ["m+", "m-"],
        )
    if family == "M":
        i, k = params
        if not 1 <= i <= n - 1:
            raise ValueError(f"rotation degree out of range: {label}")
        if not 0 <= k <= m - 1:
            raise ValueError(f"rotation eigenvalue exponent out of range: {label}")
        return DoubleModule(
            ctx,
            [group.rotation(i), group.rotation(-i)],
            _swap_matrix(field),
            CycMatrix.diagonal(field, [ctx.omega(k), ctx.omega(-k)]),
            ["m+", "m-"],
        )
    if family in ("Mx", "Mxy"):
        s, t = params
        odd = family == "Mxy"
        degrees = [group.reflection(2 * j + (1 if odd else 0)) for j in range(n)]
        labels = [f"m{j}" for j in range(n)]
        zero, one = field.zero, field.one
        xcols: list[dict[int, CycNum]] = []
        for j in range(n):
            if odd:
                xcols.append({n - 1 - j: field.from_integer((-1) ** (s + t))})
            elif j == 0:
                xcols.append({0: field.from_integer((-1) ** s)})
            else:
                xcols.append({n - j: field.from_integer((-1) ** (s + t))})
        ycols: list[dict[int, CycNum]] = []
        for j in range(n):
            if j == 0:
                ycols.append({n - 1: field.from_integer((-1) ** t)})
            else:
                ycols.append({j - 1: one})
        return DoubleModule(
            ctx,
            degrees,
            CycMatrix.from_column_dicts(field, xcols, n),
            CycMatrix.from_column_dicts(field, ycols, n),
            labels,
        )
    raise ValueError(f"unknown weight family: {family!r}")


def _swap_matrix(field) -> CycMatrix:
    return CycMatrix.from_rows(field, [[0, 1], [1, 0]])


def pair_module(ctx: DihedralContext, i: int, k: int) -> DoubleModule:
    """The two-dimensional module with degrees y^(+-i) and rotation exponents +-k.

    For 1 <= i <= n-1 this is the catalog member ``M<i>,<k>``; for i = n both
    basis vectors sit in degree y^n and the module is isomorphic to a
    ``yn:rho`` member (see :func:`pair_weight_label`).
    """
    if not 1 <= i <= ctx.n:
        raise ValueError(f"rotation degree out of range: {i}")
    if i < ctx.n:
        return build_weight(ctx, WeightLabel.rotation_pair(i, k % ctx.m))
    field, group = ctx.field, ctx.group
    deg = group.rotation(ctx.n)
    return DoubleModule(
        ctx,
        [deg, deg],
        _swap_matrix(field),
        CycMatrix.diagonal(field, [ctx.omega(k), ctx.omega(-k)]),
        ["m+", "m-"],
    )


def pair_weight_label(ctx: DihedralContext, i: int, k: int) -> WeightLabel:
    """Catalog label of :func:`pair_module`; for i = n the exponent is folded."""
    k %= ctx.m
    if i < ctx.n:
        return WeightLabel.rotation_pair(i, k)
    return WeightLabel.yn_rho(min(k, ctx.m - k))


def class_key(ctx: DihedralContext, label: WeightLabel) -> str:
    """Conjugacy class name supporting the label: e, yn, y<i>, x or xy."""
    if label.family in ("e:chi", "e:rho"):
        return "e"
    if label.family in ("yn:chi", "yn:rho"):
        return "yn"
    if label.family == "M":
        return f"y{label.params[0]}"
    return "x" if label.family == "Mx" else "xy"


def tensor_dd(left: DoubleModule, right: DoubleModule) -> DoubleModule:
    """Tensor product of two modules; degrees multiply, generators act diagonally."""
    ctx = left.ctx
    if right.ctx.m != ctx.m:
        raise ValueError("tensor factors live over different group orders")
    degrees = [ga * gb for ga in left.degrees for gb in right.degrees]
    labels = [f"{la}⊗{lb}" for la in left.basis_labels for lb in right.basis_labels]
    return DoubleModule(
        ctx,
        degrees,
        _kronecker(left.x_mat, right.x_mat),
        _kronecker(left.y_mat, right.y_mat),
        labels,
    )


def _kronecker(a: CycMatrix, b: CycMatrix) -> CycMatrix:
    field = a.field
    nrows, ncols = a.nrows * b.nrows, a.ncols * b.ncols
    cols: list[dict[int, CycNum]] = []
    a_cols, b_cols = a.sparse_columns(), b.sparse_columns()
    for ja in range(a.ncols):
        for jb in range(b.ncols):
            col: dict[int, CycNum] = {}
            for ia, va in a_cols[ja]:
                for ib, vb in b_cols[jb]:
                    col[ia * b.nrows + ib] = va * vb
            cols.append(col)
    return CycMatrix.from_column_dicts(field, cols, nrows)


def hom_space(source: DoubleModule, target: DoubleModule) -> list[CycMatrix]:
    """Basis of the space of module homomorphisms from source to target.

    A homomorphism must preserve the group grading and commute with both
    group generators; the result is the exact kernel of the corresponding
    linear system, one ``target.dim x source.dim`` matrix per basis vector.
    """
    ctx = source.ctx
    field = ctx.field
    variables = [
        (r, c)
        for c in range(source.dim)
        for r in range(target.dim)
        if target.degrees[r] == source.degrees[c]
    ]
    if not variables:
        return []
    var_index = {rc: idx for idx, rc in enumerate(variables)}
    equations: dict[tuple[int, int, int], dict[int, CycNum]] = {}

    def scatter(key: tuple[int, int, int], var: int, coeff: CycNum) -> None:
        row = equations.setdefault(key, {})
        row[var] = row.get(var, field.zero) + coeff

    for gen_id, (g_target, g_source) in enumerate(
        ((target.x_mat, source.x_mat), (target.y_mat, source.y_mat))
    ):
        t_cols = g_target.sparse_columns()
        for var, (r, c) in enumerate(variables):
            for i, val in t_cols[r]:
                scatter((gen_id, i, c), var, val)
            for j, val in enumerate(g_source.rows[c]):
                if val:
                    scatter((gen_id, r, j), var, -val)
    rows = []
    for row in equations.values():
        dense = [field.zero] * len(variables)
        for var, coeff in row.items():
            dense[var] = coeff
        if any(dense):
            rows.append(dense)
    if not rows:
        kernel = [tuple(field.one if i == j else field.zero for j in range(len(variables))) for i in range(len(variables))]
    else:
        kernel = mat_kernel(CycMatrix(field, tuple(tuple(r) for r in rows), len(variables)))
    homs = []
    for vec in kernel:
        cols: list[dict[int, CycNum]] = [dict() for _ in range(source.dim)]
        for idx, value in enumerate(vec):
            if value:
                r, c = variables[idx]
                cols[c][r] = value
        homs.append(CycMatrix.from_column_dicts(field, cols, target.dim))
    return homs


class WeightCatalog:
    """All simple modules over the double for one group order, verified complete."""

    def __init__(self, ctx: DihedralContext, labels: Sequence[WeightLabel], modules: dict[WeightLabel, DoubleModule]):
        self.ctx = ctx
        self.labels = tuple(labels)
        self._modules = modules

    def module(self, label: WeightLabel) -> DoubleModule:
        try:
            return self._modules[label]
        except KeyError:
            raise KeyError(f"label {label} is not in the catalog for m={self.ctx.m}") from None

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label: WeightLabel) -> bool:
        return label in self._modules

    def by_class(self) -> dict[str, list[WeightLabel]]:
        grouped: dict[str, list[WeightLabel]] = {}
        for label in self.labels:
            grouped.setdefault(class_key(self.ctx, label), []).append(label)
        return grouped


def all_weight_labels(ctx: DihedralContext) -> list[WeightLabel]:
    """Every catalog label in canonical order."""
    n, m = ctx.n, ctx.m
    labels: list[WeightLabel] = []
    labels += [WeightLabel.e_chi(j) for j in range(1, 5)]
    labels += [WeightLabel.e_rho(l) for l in range(1, n)]
    labels += [WeightLabel.yn_chi(j) for j in range(1, 5)]
    labels += [WeightLabel.yn_rho(l) for l in range(1, n)]
    labels += [WeightLabel.rotation_pair(i, k) for i in range(1, n) for k in range(m)]
    labels += [WeightLabel.even_reflection(s, t) for s in (0, 1) for t in (0, 1)]
    labels += [WeightLabel.odd_reflection(s, t) for s in (0, 1) for t in (0, 1)]
    return labels


def weight_catalog(ctx: DihedralContext) -> WeightCatalog:
    """The verified catalog for this context, built once and cached on it."""
    cached = ctx._weight_cache.get("catalog")
    if cached is not None:
        return cached
    labels = all_weight_labels(ctx)
    modules: dict[WeightLabel, DoubleModule] = {}
    for label in labels:
        module = build_weight(ctx, label)
        validate_double_module(module)
        modules[label] = module
    total = sum(mod.dim * mod.dim for mod in modules.values())
    if total != (2 * ctx.m) ** 2:
        raise AssertionError(
            f"catalog incomplete: squared dimensions sum to {total}, expected {(2 * ctx.m) ** 2}"
        )
    classes = {class_key(ctx, label) for label in labels}
    if len(classes) != ctx.n + 3:
        raise AssertionError(f"expected {ctx.n + 3} conjugacy classes, found {len(classes)}")
    _verify_pairwise_distinct(ctx, labels, modules)
    catalog = WeightCatalog(ctx, labels, modules)
    ctx._weight_cache["catalog"] = catalog
    return catalog


def _verify_pairwise_distinct(
    ctx: DihedralContext, labels: Sequence[WeightLabel], modules: dict[WeightLabel, DoubleModule]
) -> None:
    """Schur check per member plus vanishing homs across distinct members."""
    supports = {label: modules[label].degree_support() for label in labels}
    for a_idx, la in enumerate(labels):
        if len(hom_space(modules[la], modules[la])) != 1:
            raise AssertionError(f"endomorphism algebra of {la} is not one-dimensional")
        for lb in labels[a_idx + 1 :]:
            if supports[la] & supports[lb]:
                if hom_space(modules[la], modules[lb]):
                    raise AssertionError(f"distinct catalog members {la} and {lb} admit a nonzero hom")


def decompose(ctx: DihedralContext, module: DoubleModule) -> list[tuple[WeightLabel, list[CycMatrix]]]:
    """Split a module into catalog members with explicit embeddings.

    Returns (label, embeddings) pairs in catalog order; the number of
    embeddings is the multiplicity.  The stacked embedding images are checked
    to have full rank, so the decomposition is certified exhaustive.

    Raises:
        AssertionError: if the catalog members found do not fill the module.
    """
    catalog = weight_catalog(ctx)
    support = set(module.degrees)
    found: list[tuple[WeightLabel, list[CycMatrix]]] = []
    remaining = module.dim
    for label in catalog.labels:
        if remaining == 0:
            break
        candidate = catalog.module(label)
        if candidate.dim > remaining or not candidate.degree_support() <= support:
            continue
        homs = hom_space(candidate, module)
        if homs:
            found.append((label, homs))
            remaining -= candidate.dim * len(homs)
    columns: list[tuple[CycNum, ...]] = []
    for _, homs in found:
        for emb in homs:
            columns.extend(emb.column(j) for j in range(emb.ncols))
    if remaining != 0 or len(columns) != module.dim:
        raise AssertionError(
            f"decomposition of a dimension-{module.dim} module found only {module.dim - remaining}"
        )
    stacked = CycMatrix.from_columns(ctx.field, columns, module.dim)
    if mat_rank(stacked) != module.dim:
        raise AssertionError("decomposition embeddings do not span the module")
    return found


def decomposition_counts(ctx: DihedralContext, module: DoubleModule) -> list[tuple[WeightLabel, int]]:
    """Multiplicity of each catalog member in the module, in catalog order."""
    return [(label, len(homs)) for label, homs in decompose(ctx, module)]


def is_isomorphic(ctx: DihedralContext, left: DoubleModule, right: DoubleModule) -> bool:
    """Isomorphism test via matching multiplicity vectors (deterministic)."""
    if left.dim != right.dim:
        return False
    return decomposition_counts(ctx, left) == decomposition_counts(ctx, right)
