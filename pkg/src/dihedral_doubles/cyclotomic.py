"""Exact arithmetic in cyclotomic fields and dense linear algebra over them.

Scalars live in Q(w) for a fixed primitive m-th root of unity w, written in
canonical coordinates over the power basis ``1, w, ..., w^(phi(m)-1)`` modulo
the m-th cyclotomic polynomial.  A value keeps integer numerator coordinates
over one positive denominator in lowest terms, so equality is literal tuple
equality and nothing is ever rounded.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence


def _poly_divide_exact(num: list[int], den: Sequence[int]) -> list[int]:
    """Quotient of an exact division in Z[x]; ``den`` must be monic."""
    num = list(num)
    dn = len(den) - 1
    quot = [0] * (len(num) - dn)
    for top in range(len(num) - 1, dn - 1, -1):
        c = num[top]
        if c:
            quot[top - dn] = c
            for t in range(dn + 1):
                num[top - dn + t] -= c * den[t]
    if any(num):
        raise ArithmeticError("polynomial division left a nonzero remainder")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients, low degree first, of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    if m == 1:
        return (-1, 1)
    poly = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divide_exact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _fp_trim(p: list[Fraction]) -> list[Fraction]:
    while p and not p[-1]:
        p.pop()
    return p


def _fp_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    rem = list(a)
    quot = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    for top in range(len(rem) - 1, len(b) - 2, -1):
        c = rem[top] * inv_lead
        if c:
            quot[top - (len(b) - 1)] = c
            for t, bc in enumerate(b):
                rem[top - (len(b) - 1) + t] -= c * bc
    return _fp_trim(quot), _fp_trim(rem)


def _fp_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _fp_trim(out)


def _fp_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, ai in enumerate(a):
        out[i] += ai
    for i, bi in enumerate(b):
        out[i] -= bi
    return _fp_trim(out)


class CyclotomicField:
    """The field Q(w) for a primitive m-th root of unity w.

    Instances are shared per m (see :func:`get_field`); numbers carry a
    reference to their field and arithmetic requires matching fields.
    """

    __slots__ = ("m", "minpoly", "degree", "_reduction", "zero", "one", "_zeta_pows")

    def __init__(self, m: int) -> None:
        self.m = m
        self.minpoly = cyclotomic_polynomial(m)
        self.degree = len(self.minpoly) - 1
        self._reduction = self._reduction_rows()
        self.zero = CycNum(self, (0,) * self.degree, 1)
        one = [0] * self.degree
        one[0] = 1
        self.one = CycNum(self, tuple(one), 1)
        self._zeta_pows = self._power_table()

    def _reduction_rows(self) -> tuple[tuple[int, ...], ...]:
        # row j holds the canonical coordinates of w^(degree + j), as integers
        # (the minimal polynomial is monic), enough for degree-2*degree-2 products.
        d = self.degree
        rows: list[tuple[int, ...]] = []
        row = [-c for c in self.minpoly[:d]]
        rows.append(tuple(row))
        for _ in range(1, max(1, d - 1)):
            top = row[d - 1]
            row = [0] + row[: d - 1]
            if top:
                base = rows[0]
                for t in range(d):
                    row[t] += top * base[t]
            rows.append(tuple(row))
        return tuple(rows)

    def _power_table(self) -> tuple[CycNum, ...]:
        pows = [self.one]
        if self.degree >= 2:
            coords = [0] * self.degree
            coords[1] = 1
            zeta = CycNum(self, tuple(coords), 1)
        else:
            zeta = CycNum(self, tuple(self._reduction[0][:1]) or (1,), 1)
        for _ in range(1, self.m):
            pows.append(pows[-1] * zeta)
        return tuple(pows)

    def reduce(self, coords: list[int]) -> tuple[int, ...]:
        """Reduce raw power-basis coordinates (any length) to canonical ones."""
        d = self.degree
        for j in range(len(coords) - 1, d - 1, -1):
            c = coords[j]
            if c:
                row = self._reduction[j - d]
                for t in range(d):
                    coords[t] += c * row[t]
        return tuple(coords[:d])

    def zeta(self, exponent: int = 1) -> CycNum:
        """The root of unity w raised to the given exponent."""
        return self._zeta_pows[exponent % self.m]

    def from_integer(self, value: int) -> CycNum:
        coords = [0] * self.degree
        coords[0] = value
        return CycNum(self, tuple(coords), 1)

    def from_fraction(self, value: Fraction | int) -> CycNum:
        value = Fraction(value)
        coords = [0] * self.degree
        coords[0] = value.numerator
        return CycNum._normalized(self, coords, value.denominator)

    def num(self, value: CycNum | Fraction | int) -> CycNum:
        """Coerce an int, Fraction or CycNum into this field."""
        if isinstance(value, CycNum):
            if value.field.m != self.m:
                raise ValueError(f"cannot mix Q(zeta_{value.field.m}) with Q(zeta_{self.m})")
            return value
        return self.from_fraction(value)

    def parse(self, text: str) -> CycNum:
        """Inverse of ``str`` on field elements; accepts e.g. ``1/2 - 3*w^2``."""
        stripped = text.replace(" ", "")
        if not stripped:
            raise ValueError("empty field element")
        terms: list[tuple[int, str]] = []
        sign, start = 1, 0
        if stripped[0] in "+-":
            sign = -1 if stripped[0] == "-" else 1
            start = 1
        cur = start
        for pos in range(start, len(stripped) + 1):
            if pos == len(stripped) or stripped[pos] in "+-":
                if pos > cur and stripped[pos - 1] in "*/^":
                    continue  # sign inside an exponent/coefficient is not supported anyway
                terms.append((sign, stripped[cur:pos]))
                if pos < len(stripped):
                    sign = -1 if stripped[pos] == "-" else 1
                    cur = pos + 1
        total = self.zero
        for tsign, term in terms:
            if not term:
                raise ValueError(f"malformed field element: {text!r}")
            if "w" in term:
                coeff_part, _, tail = term.partition("w")
                coeff = Fraction(coeff_part.rstrip("*")) if coeff_part.rstrip("*") else Fraction(1)
                exponent = int(tail[1:]) if tail.startswith("^") else (1 if not tail else None)
                if exponent is None:
                    raise ValueError(f"malformed field element: {text!r}")
                total = total + self.zeta(exponent) * (tsign * coeff)
            else:
                total = total + self.from_fraction(tsign * Fraction(term))
        return total

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CyclotomicField) and other.m == self.m

    def __hash__(self) -> int:
        return hash(("CyclotomicField", self.m))

    def __repr__(self) -> str:
        return f"CyclotomicField({self.m})"


@lru_cache(maxsize=None)
def get_field(m: int) -> CyclotomicField:
    return CyclotomicField(m)


class CycNum:
    """An element of Q(w): integer coordinates over one positive denominator."""

    __slots__ = ("field", "coords", "den")

    def __init__(self, field: CyclotomicField, coords: tuple[int, ...], den: int) -> None:
        self.field = field
        self.coords = coords
        self.den = den

    @staticmethod
    def _normalized(field: CyclotomicField, coords: Iterable[int], den: int) -> CycNum:
        coords = list(coords)
        if den < 0:
            den = -den
            coords = [-c for c in coords]
        g = den
        for c in coords:
            if c:
                g = gcd(g, c)
                if g == 1:
                    break
        if g > 1:
            den //= g
            coords = [c // g for c in coords]
        if not any(coords):
            den = 1
        return CycNum(field, tuple(coords), den)

    def _coerce(self, other: CycNum | Fraction | int) -> CycNum | None:
        if isinstance(other, CycNum):
            if other.field.m != self.field.m:
                raise ValueError("field elements belong to different cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_fraction(other)
        return None

    def __add__(self, other: CycNum | Fraction | int) -> CycNum:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        g = gcd(self.den, o.den)
        fa, fb = o.den // g, self.den // g
        coords = [a * fa + b * fb for a, b in zip(self.coords, o.coords)]
        return CycNum._normalized(self.field, coords, self.den * fa)

    __radd__ = __add__

    def __neg__(self) -> CycNum:
        return CycNum(self.field, tuple(-c for c in self.coords), self.den)

    def __sub__(self, other: CycNum | Fraction | int) -> CycNum:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Fraction | int) -> CycNum:
        return (-self) + other

    def __mul__(self, other: CycNum | Fraction | int) -> CycNum:
        if isinstance(other, int):
            if not other:
                return self.field.zero
            return CycNum._normalized(self.field, (c * other for c in self.coords), self.den)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coords, o.coords
        conv = [0] * (2 * len(a) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        coords = self.field.reduce(conv)
        return CycNum._normalized(self.field, coords, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> CycNum:
        """Multiplicative inverse, via the extended Euclidean algorithm."""
        if not self:
            raise ZeroDivisionError("inverse of zero field element")
        minpoly = [Fraction(c) for c in self.field.minpoly]
        r0, s0 = minpoly, [Fraction(0)]
        r1 = _fp_trim([Fraction(c, self.den) for c in self.coords])
        s1 = [Fraction(1)]
        while r1:
            q, rem = _fp_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _fp_sub(s0, _fp_mul(q, s1))
        # r0 is a nonzero constant: the minimal polynomial is irreducible over Q.
        scale = 1 / r0[0]
        inv = [c * scale for c in s0]
        inv += [Fraction(0)] * (self.field.degree - len(inv))
        den = 1
        for c in inv:
            den = den * c.denominator // gcd(den, c.denominator)
        coords = [int(c * den) for c in inv[: self.field.degree]]
        return CycNum._normalized(self.field, coords, den)

    def __truediv__(self, other: CycNum | Fraction | int) -> CycNum:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Fraction | int) -> CycNum:
        return self.inverse() * other

    def __pow__(self, exponent: int) -> CycNum:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = self.field.one, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __bool__(self) -> bool:
        return any(self.coords)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.field.from_fraction(other)
        if not isinstance(other, CycNum):
            return NotImplemented
        return self.field.m == other.field.m and self.coords == other.coords and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.field.m, self.coords, self.den))

    def rational_value(self) -> Fraction:
        """The value as a rational number; raises if the element is irrational."""
        if any(self.coords[1:]):
            raise ValueError(f"{self} is not rational")
        return Fraction(self.coords[0], self.den)

    def __str__(self) -> str:
        parts: list[str] = []
        for j, c in enumerate(self.coords):
            if not c:
                continue
            mag = Fraction(abs(c), self.den)
            if j == 0:
                body = str(mag)
            elif j == 1:
                body = f"{mag}*w"
            else:
                body = f"{mag}*w^{j}"
            parts.append(("-" if c < 0 else "+") + " " + body)
        if not parts:
            return "0"
        first = parts[0]
        text = ("-" + first[2:]) if first[0] == "-" else first[2:]
        return " ".join([text] + parts[1:])

    def __repr__(self) -> str:
        return f"CycNum({self.field.m}, {str(self)!r})"


def cyc_power(field: CyclotomicField, exponent: int) -> CycNum:
    """Canonical power of the fixed primitive root of unity."""
    return field.zeta(exponent)


def cyc_add(a: CycNum, b: CycNum) -> CycNum:
    return a + b


def cyc_mul(a: CycNum, b: CycNum) -> CycNum:
    return a * b


def cyc_neg(a: CycNum) -> CycNum:
    return -a


def cyc_inv(a: CycNum) -> CycNum:
    return a.inverse()


Vector = tuple[CycNum, ...]


class CycMatrix:
    """A dense matrix over a fixed cyclotomic field, stored row-major."""

    __slots__ = ("field", "nrows", "ncols", "rows", "_cols")

    def __init__(self, field: CyclotomicField, rows: tuple[tuple[CycNum, ...], ...], ncols: int) -> None:
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols
        self._cols: list[list[tuple[int, CycNum]]] | None = None

    @classmethod
    def from_rows(cls, field: CyclotomicField, rows: Sequence[Sequence[CycNum | Fraction | int]]) -> CycMatrix:
        ncols = len(rows[0]) if rows else 0
        frozen = []
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged rows")
            frozen.append(tuple(field.num(x) for x in row))
        return cls(field, tuple(frozen), ncols)

    @classmethod
    def from_columns(cls, field: CyclotomicField, cols: Sequence[Sequence[CycNum]], nrows: int) -> CycMatrix:
        rows = [[field.zero] * len(cols) for _ in range(nrows)]
        for j, col in enumerate(cols):
            for i, x in enumerate(col):
                rows[i][j] = x
        return cls(field, tuple(tuple(r) for r in rows), len(cols))

    @classmethod
    def from_column_dicts(cls, field: CyclotomicField, cols: Sequence[dict[int, CycNum]], nrows: int) -> CycMatrix:
        rows = [[field.zero] * len(cols) for _ in range(nrows)]
        for j, col in enumerate(cols):
            for i, x in col.items():
                rows[i][j] = x
        return cls(field, tuple(tuple(r) for r in rows), len(cols))

    @classmethod
    def zeros(cls, field: CyclotomicField, nrows: int, ncols: int) -> CycMatrix:
        row = (field.zero,) * ncols
        return cls(field, tuple(row for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, field: CyclotomicField, n: int) -> CycMatrix:
        rows = []
        for i in range(n):
            row = [field.zero] * n
            row[i] = field.one
            rows.append(tuple(row))
        return cls(field, tuple(rows), n)

    @classmethod
    def diagonal(cls, field: CyclotomicField, entries: Sequence[CycNum]) -> CycMatrix:
        rows = []
        for i, e in enumerate(entries):
            row = [field.zero] * len(entries)
            row[i] = e
            rows.append(tuple(row))
        return cls(field, tuple(rows), len(entries))

    def entry(self, i: int, j: int) -> CycNum:
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    def sparse_columns(self) -> list[list[tuple[int, CycNum]]]:
        """Nonzero entries per column, cached; handy for repeated applies."""
        if self._cols is None:
            cols: list[list[tuple[int, CycNum]]] = [[] for _ in range(self.ncols)]
            for i, row in enumerate(self.rows):
                for j, x in enumerate(row):
                    if x:
                        cols[j].append((i, x))
            self._cols = cols
        return self._cols

    def apply(self, vec: Sequence[CycNum]) -> Vector:
        zero = self.field.zero
        out = [zero] * self.nrows
        cols = self.sparse_columns()
        for j, x in enumerate(vec):
            if x:
                for i, a in cols[j]:
                    out[i] = out[i] + a * x
        return tuple(out)

    def apply_dict(self, vec: dict[int, CycNum]) -> dict[int, CycNum]:
        out: dict[int, CycNum] = {}
        cols = self.sparse_columns()
        for j, x in vec.items():
            if x:
                for i, a in cols[j]:
                    cur = out.get(i)
                    val = a * x if cur is None else cur + a * x
                    if val:
                        out[i] = val
                    elif cur is not None:
                        del out[i]
        return out

    def __mul__(self, other: CycMatrix) -> CycMatrix:
        if not isinstance(other, CycMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch: {self.nrows}x{self.ncols} times {other.nrows}x{other.ncols}")
        zero = self.field.zero
        out = [[zero] * other.ncols for _ in range(self.nrows)]
        for i, row in enumerate(self.rows):
            out_i = out[i]
            for k, a in enumerate(row):
                if a:
                    other_row = other.rows[k]
                    for j, b in enumerate(other_row):
                        if b:
                            out_i[j] = out_i[j] + a * b
        return CycMatrix(self.field, tuple(tuple(r) for r in out), other.ncols)

    def __add__(self, other: CycMatrix) -> CycMatrix:
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("shape mismatch in matrix addition")
        rows = tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows))
        return CycMatrix(self.field, rows, self.ncols)

    def __neg__(self) -> CycMatrix:
        return CycMatrix(self.field, tuple(tuple(-x for x in row) for row in self.rows), self.ncols)

    def __sub__(self, other: CycMatrix) -> CycMatrix:
        return self + (-other)

    def scaled(self, c: CycNum | Fraction | int) -> CycMatrix:
        c = self.field.num(c)
        return CycMatrix(self.field, tuple(tuple(x * c for x in row) for row in self.rows), self.ncols)

    def transpose(self) -> CycMatrix:
        return CycMatrix(self.field, tuple(zip(*self.rows)) if self.rows else (), self.nrows)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> CycMatrix:
        rows = tuple(tuple(self.rows[i][j] for j in col_idx) for i in row_idx)
        return CycMatrix(self.field, rows, len(col_idx))

    @classmethod
    def vstack(cls, mats: Sequence[CycMatrix]) -> CycMatrix:
        field = mats[0].field
        ncols = mats[0].ncols
        rows: list[tuple[CycNum, ...]] = []
        for mat in mats:
            if mat.ncols != ncols:
                raise ValueError("column count mismatch in vstack")
            rows.extend(mat.rows)
        return cls(field, tuple(rows), ncols)

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.rows)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, CycMatrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.field.m, self.rows))

    def __repr__(self) -> str:
        return f"CycMatrix({self.nrows}x{self.ncols} over Q(zeta_{self.field.m}))"

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.rows)


def _rref(field: CyclotomicField, rows: list[list[CycNum]], ncols: int) -> tuple[list[list[CycNum]], list[int]]:
    """In-place reduced row echelon form; pivots are the first nonzero entries."""
    pivots: list[int] = []
    pr = 0
    nrows = len(rows)
    one = field.one
    for pc in range(ncols):
        pivot_row = -1
        for ir in range(pr, nrows):
            if rows[ir][pc]:
                pivot_row = ir
                break
        if pivot_row < 0:
            continue
        rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
        head = rows[pr][pc]
        if head != one:
            inv = head.inverse()
            rows[pr] = [x * inv if x else x for x in rows[pr]]
        prow = rows[pr]
        for ir in range(nrows):
            if ir != pr and rows[ir][pc]:
                f = rows[ir][pc]
                rows[ir] = [a - f * b if b else a for a, b in zip(rows[ir], prow)]
        pivots.append(pc)
        pr += 1
        if pr == nrows:
            break
    return rows, pivots


def mat_rank(mat: CycMatrix) -> int:
    rows = [list(row) for row in mat.rows]
    _, pivots = _rref(mat.field, rows, mat.ncols)
    return len(pivots)


def mat_kernel(mat: CycMatrix) -> list[Vector]:
    """Basis of the right kernel, one vector per free column."""
    field = mat.field
    rows = [list(row) for row in mat.rows]
    rref, pivots = _rref(field, rows, mat.ncols)
    pivot_set = set(pivots)
    basis: list[Vector] = []
    for free in range(mat.ncols):
        if free in pivot_set:
            continue
        vec = [field.zero] * mat.ncols
        vec[free] = field.one
        for r, pc in enumerate(pivots):
            entry = rref[r][free]
            if entry:
                vec[pc] = -entry
        basis.append(tuple(vec))
    return basis


def mat_solve(mat: CycMatrix, rhs: Sequence[CycNum]) -> Vector | None:
    """One solution of ``mat * x = rhs``, or None when the system is inconsistent."""
    field = mat.field
    if len(rhs) != mat.nrows:
        raise ValueError("right-hand side length does not match row count")
    rows = [list(row) + [b] for row, b in zip(mat.rows, rhs)]
    rref, pivots = _rref(field, rows, mat.ncols + 1)
    if pivots and pivots[-1] == mat.ncols:
        return None
    sol = [field.zero] * mat.ncols
    for r, pc in enumerate(pivots):
        sol[pc] = rref[r][mat.ncols]
    return tuple(sol)


def mat_image(mat: CycMatrix) -> list[Vector]:
    """Basis of the column space: the original columns in pivot positions."""
    rows = [list(row) for row in mat.rows]
    _, pivots = _rref(mat.field, rows, mat.ncols)
    return [mat.column(pc) for pc in pivots]
