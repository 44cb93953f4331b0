"""Graded traces on bounded matrix complexes.

Complexes are finite towers of finite-dimensional rational vector spaces
with exact integer/rational differentials.  Morphism data lives in Hom
cochains; the module provides the Hom differential, composition, the
supertrace (chain-trace convention: only degree-zero endomorphism
cochains have diagonal content, every other degree traces to zero), the
induced pairing, and cohomology of the Hom complex computed by exact
row reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .errors import DimensionMismatch, PreconditionError


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Mat:
    """Dense exact matrix; zero-sized shapes are legal."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data):
        if rows < 0 or cols < 0:
            raise DimensionMismatch("negative matrix shape")
        data = tuple(tuple(_frac(x) for x in row) for row in data)
        if len(data) != rows or any(len(r) != cols for r in data):
            raise DimensionMismatch("matrix data does not match its shape")
        self.rows = rows
        self.cols = cols
        self.data = data

    @staticmethod
    def make(rows_list) -> "Mat":
        rows_list = list(rows_list)
        r = len(rows_list)
        c = len(rows_list[0]) if r else 0
        return Mat(r, c, rows_list)

    @staticmethod
    def zero(rows: int, cols: int) -> "Mat":
        return Mat(rows, cols, [[Fraction(0)] * cols for _ in range(rows)])

    @staticmethod
    def identity(n: int) -> "Mat":
        return Mat(
            n, n, [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
        )

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.shape == other.shape
            and self.data == other.data
        )

    __hash__ = None

    def __repr__(self):
        return f"Mat({self.rows}x{self.cols})"

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def __add__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise DimensionMismatch("matrix addition shape mismatch")
        return Mat(
            self.rows,
            self.cols,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ],
        )

    def __sub__(self, other: "Mat") -> "Mat":
        return self + other.scale(-1)

    def __neg__(self) -> "Mat":
        return self.scale(-1)

    def scale(self, c) -> "Mat":
        c = _frac(c)
        return Mat(self.rows, self.cols, [[c * x for x in row] for row in self.data])

    def __mul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise DimensionMismatch("matrix product shape mismatch")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = Fraction(0)
                for k in range(self.cols):
                    a = self.data[i][k]
                    if a:
                        acc += a * other.data[k][j]
                row.append(acc)
            out.append(row)
        return Mat(self.rows, other.cols, out)

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise DimensionMismatch("trace of a non-square matrix")
        return sum((self.data[i][i] for i in range(self.rows)), Fraction(0))

    def to_json(self) -> list:
        return [[str(x) for x in row] for row in self.data]


# ---------------------------------------------------------------------------
# complexes and cochains
# ---------------------------------------------------------------------------


class MatrixComplex:
    """Terms in degrees 0..n-1 with differentials raising degree by one."""

    __slots__ = ("dims", "diffs")

    def __init__(self, dims, diffs):
        dims = tuple(int(d) for d in dims)
        if not dims or any(d < 0 for d in dims):
            raise DimensionMismatch("complex needs nonnegative term dimensions")
        diffs = tuple(diffs)
        if len(diffs) != len(dims) - 1:
            raise DimensionMismatch("complex needs one differential per adjacent pair")
        for i, d in enumerate(diffs):
            if d.shape != (dims[i + 1], dims[i]):
                raise DimensionMismatch(
                    f"differential {i} has shape {d.shape}, wanted"
                    f" {(dims[i + 1], dims[i])}"
                )
        for i in range(len(diffs) - 1):
            if not (diffs[i + 1] * diffs[i]).is_zero:
                raise PreconditionError("differentials do not square to zero")
        self.dims = dims
        self.diffs = diffs

    def __len__(self):
        return len(self.dims)

    def __eq__(self, other):
        return (
            isinstance(other, MatrixComplex)
            and self.dims == other.dims
            and self.diffs == other.diffs
        )

    __hash__ = None

    def diff(self, i: int) -> Optional[Mat]:
        if 0 <= i < len(self.diffs):
            return self.diffs[i]
        return None

    def identity_endo(self) -> "HomCochain":
        comps = {i: Mat.identity(d) for i, d in enumerate(self.dims)}
        return HomCochain(self, self, 0, comps)

    def to_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "diffs": [d.to_json() for d in self.diffs],
        }


class HomCochain:
    """Degree-k collection of maps source^i -> target^(i+k)."""

    __slots__ = ("source", "target", "degree", "comps")

    def __init__(self, source: MatrixComplex, target: MatrixComplex, degree: int, comps):
        self.source = source
        self.target = target
        self.degree = int(degree)
        filled: Dict[int, Mat] = {}
        for i in self._support(source, target, self.degree):
            want = (target.dims[i + self.degree], source.dims[i])
            got = comps.get(i)
            if got is None:
                got = Mat.zero(*want)
            elif got.shape != want:
                raise DimensionMismatch(
                    f"component {i} has shape {got.shape}, wanted {want}"
                )
            filled[i] = got
        for i in comps:
            if i not in filled and not comps[i].is_zero:
                raise DimensionMismatch(f"component {i} outside the cochain support")
        self.comps = filled

    @staticmethod
    def _support(source, target, degree):
        return [
            i
            for i in range(len(source.dims))
            if 0 <= i + degree < len(target.dims)
        ]

    def component(self, i: int) -> Optional[Mat]:
        return self.comps.get(i)

    @property
    def is_zero(self) -> bool:
        return all(m.is_zero for m in self.comps.values())

    def __eq__(self, other):
        return (
            isinstance(other, HomCochain)
            and self.source == other.source
            and self.target == other.target
            and self.degree == other.degree
            and self.comps == other.comps
        )

    __hash__ = None

    def __add__(self, other: "HomCochain") -> "HomCochain":
        if (
            self.source != other.source
            or self.target != other.target
            or self.degree != other.degree
        ):
            raise DimensionMismatch("cochain addition needs matching type")
        return HomCochain(
            self.source,
            self.target,
            self.degree,
            {i: self.comps[i] + other.comps[i] for i in self.comps},
        )

    def __sub__(self, other: "HomCochain") -> "HomCochain":
        return self + other.scale(-1)

    def scale(self, c) -> "HomCochain":
        return HomCochain(
            self.source,
            self.target,
            self.degree,
            {i: m.scale(c) for i, m in self.comps.items()},
        )

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "components": {str(i): self.comps[i].to_json() for i in sorted(self.comps)},
        }


def hom_differential(f: HomCochain) -> HomCochain:
    """D(f)^i = d_target^(i+k) f^i - (-1)^k f^(i+1) d_source^i."""
    k = f.degree
    sign = -1 if k % 2 else 1
    out: Dict[int, Mat] = {}
    for i in HomCochain._support(f.source, f.target, k + 1):
        acc = Mat.zero(f.target.dims[i + k + 1], f.source.dims[i])
        d_t = f.target.diff(i + k)
        fi = f.component(i)
        if d_t is not None and fi is not None:
            acc = acc + d_t * fi
        d_s = f.source.diff(i)
        fi1 = f.component(i + 1)
        if d_s is not None and fi1 is not None:
            acc = acc - (fi1 * d_s).scale(sign)
        out[i] = acc
    return HomCochain(f.source, f.target, k + 1, out)


def compose(a: HomCochain, b: HomCochain) -> HomCochain:
    """(a o b)^i = a^(i + deg b) b^i; b is applied first."""
    if b.target != a.source:
        raise DimensionMismatch("composition needs matching middle complex")
    k = a.degree + b.degree
    out: Dict[int, Mat] = {}
    for i in HomCochain._support(b.source, a.target, k):
        bi = b.component(i)
        ai = a.component(i + b.degree)
        if bi is not None and ai is not None:
            out[i] = ai * bi
    return HomCochain(b.source, a.target, k, out)


def supertrace(f: HomCochain) -> Fraction:
    """Alternating trace; chain-trace rule kills nonzero degrees."""
    if f.source != f.target:
        raise PreconditionError("supertrace needs an endomorphism cochain")
    if f.degree != 0:
        return Fraction(0)
    total = Fraction(0)
    for i, m in f.comps.items():
        t = m.trace()
        total += t if i % 2 == 0 else -t
    return total


def theta_pairing(a: HomCochain, b: HomCochain) -> Fraction:
    """Supertrace of the composite of two endomorphism cochains."""
    if a.source != a.target or b.source != b.target or a.source != b.source:
        raise PreconditionError("pairing needs endomorphism cochains of one complex")
    return supertrace(compose(a, b))


# ---------------------------------------------------------------------------
# cohomology of the Hom complex
# ---------------------------------------------------------------------------


def _basis_layout(source, target, degree):
    """Coordinates (component, row, col) of Hom^degree, with offsets."""
    layout = []
    for i in HomCochain._support(source, target, degree):
        r = target.dims[i + degree]
        c = source.dims[i]
        layout.append((i, r, c))
    return layout


def _flatten(f: HomCochain, layout) -> List[Fraction]:
    vec: List[Fraction] = []
    for i, r, c in layout:
        m = f.comps[i]
        for a in range(r):
            vec.extend(m.data[a])
    return vec


def _unflatten(source, target, degree, layout, vec) -> HomCochain:
    comps = {}
    pos = 0
    for i, r, c in layout:
        rows = []
        for a in range(r):
            rows.append(vec[pos : pos + c])
            pos += c
        comps[i] = Mat(r, c, rows)
    return HomCochain(source, target, degree, comps)


def _rref(rows: List[List[Fraction]]):
    """In-place reduced row echelon form; returns pivot column list."""
    pivots = []
    lead = 0
    n_rows = len(rows)
    n_cols = len(rows[0]) if n_rows else 0
    for col in range(n_cols):
        pivot_row = None
        for r in range(lead, n_rows):
            if rows[r][col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        rows[lead], rows[pivot_row] = rows[pivot_row], rows[lead]
        inv = 1 / rows[lead][col]
        rows[lead] = [x * inv for x in rows[lead]]
        for r in range(n_rows):
            if r != lead and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[lead])]
        pivots.append(col)
        lead += 1
        if lead == n_rows:
            break
    return pivots


def _kernel_basis(mat_cols: List[List[Fraction]], n_cols: int) -> List[List[Fraction]]:
    """Kernel of the matrix whose columns are mat_cols[j] (length m each)."""
    if n_cols == 0:
        return []
    m = len(mat_cols[0]) if mat_cols else 0
    rows = [[mat_cols[j][i] for j in range(n_cols)] for i in range(m)]
    if not rows:
        return [
            [Fraction(1 if j == t else 0) for j in range(n_cols)]
            for t in range(n_cols)
        ]
    pivots = _rref(rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * n_cols
        vec[free] = Fraction(1)
        for r, p in enumerate(pivots):
            if r < len(rows):
                vec[p] = -rows[r][free]
        basis.append(vec)
    return basis


@dataclass
class CohomologyGroup:
    """Ext group of the Hom complex in one degree, with witnesses."""

    degree: int
    dim: int
    ker_dim: int
    im_dim: int
    reps: list
    cocycles: list = None
    coboundaries: list = None

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "dim": self.dim,
            "ker_dim": self.ker_dim,
            "im_dim": self.im_dim,
            "reps": [f.to_dict() for f in self.reps],
        }


def cohomology(source: MatrixComplex, target: MatrixComplex, degree: int) -> CohomologyGroup:
    """ker D^degree / im D^(degree-1), exactly, with cocycle witnesses."""
    degree = int(degree)
    layout = _basis_layout(source, target, degree)
    n = sum(r * c for _, r, c in layout)
    if n == 0:
        return CohomologyGroup(degree, 0, 0, 0, [], [], [])

    def _d_columns(from_degree):
        """Images of the standard basis of Hom^from_degree under D."""
        lay = _basis_layout(source, target, from_degree)
        out_lay = _basis_layout(source, target, from_degree + 1)
        cols = []
        for i, r, c in lay:
            for a in range(r):
                for b in range(c):
                    comps = {i: Mat.zero(r, c)}
                    rows = [[Fraction(0)] * c for _ in range(r)]
                    rows[a][b] = Fraction(1)
                    comps[i] = Mat(r, c, rows)
                    f = HomCochain(source, target, from_degree, comps)
                    cols.append(_flatten(hom_differential(f), out_lay))
        return cols

    d_cols = _d_columns(degree)
    kernel = _kernel_basis(d_cols, n)
    ker_dim = len(kernel)

    prev_cols = _d_columns(degree - 1)
    # row space of the image inside ker, tracked by rref over image rows
    rows = [list(col) for col in prev_cols if any(x != 0 for x in col)]
    if rows:
        _rref(rows)
        rows = [r for r in rows if any(x != 0 for x in r)]
    im_dim = len(rows)
    cocycle_basis = [_unflatten(source, target, degree, layout, vec) for vec in kernel]
    coboundary_basis = [
        _unflatten(source, target, degree, layout, vec) for vec in rows
    ]

    reps = []
    for vec in kernel:
        trial = rows + [list(vec)]
        _rref(trial)
        trial = [r for r in trial if any(x != 0 for x in r)]
        if len(trial) > len(rows):
            rows = trial
            reps.append(_unflatten(source, target, degree, layout, vec))
    group_dim = ker_dim - im_dim
    assert len(reps) == group_dim
    return CohomologyGroup(
        degree, group_dim, ker_dim, im_dim, reps, cocycle_basis, coboundary_basis
    )


# ---------------------------------------------------------------------------
# seeded generators (shared by the fuzz tests and the CLI fuzz command)
# ---------------------------------------------------------------------------


def random_complex(rng, max_len: int = 5, max_dim: int = 4, entry_bound: int = 3) -> MatrixComplex:
    """Random exact complex: d = embed o project through coordinate zones.

    Each differential factors through a rank-r coordinate zone reserved at
    the bottom of the next term, and the following projection kills that
    zone, so consecutive products vanish identically.
    """
    n = rng.randint(2, max_len)
    dims = [rng.randint(0, max_dim) for _ in range(n)]
    if not any(dims):
        dims[rng.randrange(n)] = 1
    diffs = []
    prev_rank = 0
    for i in range(n - 1):
        cap = min(dims[i] - prev_rank, dims[i + 1])
        rank = rng.randint(0, cap) if cap > 0 else 0
        proj = [
            [
                Fraction(0)
                if b < prev_rank
                else Fraction(rng.randint(-entry_bound, entry_bound))
                for b in range(dims[i])
            ]
            for _ in range(rank)
        ]
        embed = [
            [
                Fraction(rng.randint(-entry_bound, entry_bound)) if a < rank else Fraction(0)
                for _ in range(rank)
            ]
            for a in range(dims[i + 1])
        ]
        diffs.append(Mat(dims[i + 1], rank, embed) * Mat(rank, dims[i], proj))
        prev_rank = rank
    return MatrixComplex(dims, diffs)


def random_cochain(
    rng, source: MatrixComplex, target: MatrixComplex, degree: int, entry_bound: int = 3
) -> HomCochain:
    comps = {}
    for i in HomCochain._support(source, target, degree):
        r = target.dims[i + degree]
        c = source.dims[i]
        comps[i] = Mat(
            r,
            c,
            [
                [Fraction(rng.randint(-entry_bound, entry_bound)) for _ in range(c)]
                for _ in range(r)
            ],
        )
    return HomCochain(source, target, degree, comps)


def random_coboundary(
    rng, cplx: MatrixComplex, degree: int, entry_bound: int = 3
) -> HomCochain:
    """Cheap exact cocycle of the given degree: D of a random cochain."""
    return hom_differential(
        random_cochain(rng, cplx, cplx, degree - 1, entry_bound)
    )
