"""
Exact Linear Algebra Module

Linear algebra over the rationals, the integers and the two-element field.
The matrices here are tiny (one row per prime occurring in the inputs), so
everything is plain Python: Fraction for the rationals, unimodular integer row
operations for lattices, and int bitmasks for the two-element field. Nothing
is ever rounded.

Version: 1.0.0
"""
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..core.exceptions import DimensionError
from ..core.logger import get_logger

logger = get_logger(__name__)

Number = int | Fraction


class RationalMatrix:
    """Dense matrix of Fractions (always in lowest terms, denominator > 0)"""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[Number]], cols: Optional[int] = None):
        self.entries: List[List[Fraction]] = [[Fraction(x) for x in row] for row in entries]
        self.rows = len(self.entries)
        if cols is None:
            cols = len(self.entries[0]) if self.entries else 0
        self.cols = cols
        for row in self.entries:
            if len(row) != cols:
                raise DimensionError(f"ragged matrix: expected {cols} columns, got a row of {len(row)}")

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Number]], rows: int) -> "RationalMatrix":
        return cls([[col[i] for col in columns] for i in range(rows)], cols=len(columns))

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMatrix) and (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __repr__(self) -> str:
        return f"RationalMatrix({[[str(x) for x in row] for row in self.entries]})"


def _as_matrix(A) -> RationalMatrix:
    return A if isinstance(A, RationalMatrix) else RationalMatrix(A)


def _echelon(aug: List[List[Fraction]], ncols: int) -> List[int]:
    """Gauss-Jordan in place on the first ncols columns; returns pivot columns"""
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(aug)) if aug[i][c] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        lead = aug[r][c]
        aug[r] = [x / lead for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    return pivots


def rational_rank(A) -> int:
    A = _as_matrix(A)
    rows = [list(row) for row in A.entries]
    return len(_echelon(rows, A.cols))


def solve_rational(A, b: Sequence[Number]) -> Optional[List[Fraction]]:
    """
    Some x with A·x = b exactly, or None when the system is inconsistent.

    Free variables are set to zero, so with full column rank the answer is the
    unique solution.

    Raises:
        DimensionError: len(b) != rows of A
    """
    A = _as_matrix(A)
    if len(b) != A.rows:
        raise DimensionError(f"right-hand side of length {len(b)} for a matrix with {A.rows} rows")
    aug = [list(row) + [Fraction(bi)] for row, bi in zip(A.entries, b)]
    pivots = _echelon(aug, A.cols)
    for row in aug[len(pivots):]:
        if row[-1] != 0:
            return None
    x = [Fraction(0)] * A.cols
    for r, c in enumerate(pivots):
        x[c] = aug[r][-1]
    return x


def _reduce_column(rows: List[List[int]], start: int, col: int) -> bool:
    """
    Unimodular row operations on rows[start:] until at most one of them is
    nonzero in column col; that row is moved to position start. Returns True
    if a pivot was found.
    """
    while True:
        live = [i for i in range(start, len(rows)) if rows[i][col] != 0]
        if not live:
            return False
        best = min(live, key=lambda i: (abs(rows[i][col]), i))
        pivot_row = rows[best]
        for i in live:
            if i == best:
                continue
            q = rows[i][col] // pivot_row[col]
            rows[i] = [x - q * y for x, y in zip(rows[i], pivot_row)]
        if len(live) == 1 or all(rows[i][col] == 0 for i in live if i != best):
            rows[start], rows[best] = rows[best], rows[start]
            return True


def _normalize_sign(v: List[int]) -> List[int]:
    lead = next((x for x in v if x != 0), 0)
    return [-x for x in v] if lead < 0 else v


def integer_kernel(A: Sequence[Sequence[int]], cols: Optional[int] = None) -> List[List[int]]:
    """
    Basis of the lattice {x in Z^cols : A·x = 0}.

    Works on the transposed matrix augmented with an identity block: integer
    row reduction of [A^T | I] is unimodular, so the identity parts of the rows
    whose A^T part vanishes form a lattice basis of the kernel. Each basis
    vector is returned with its first nonzero entry positive.

    Examples:
        >>> integer_kernel([[3, -1]])
        [[1, 3]]
    """
    nrows = len(A)
    if cols is None:
        if nrows == 0:
            raise DimensionError("cols is required for a matrix without rows")
        cols = len(A[0])
    for row in A:
        if len(row) != cols:
            raise DimensionError(f"ragged matrix: expected {cols} columns, got a row of {len(row)}")

    work = [[int(A[i][j]) for i in range(nrows)] + [int(j == k) for k in range(cols)] for j in range(cols)]
    rank = 0
    for c in range(nrows):
        if rank == cols:
            break
        if _reduce_column(work, rank, c):
            rank += 1
    return [_normalize_sign(row[nrows:]) for row in work[rank:]]


def integer_row_basis(vectors: Sequence[Sequence[int]], dim: int) -> List[List[int]]:
    """Echelon basis of the lattice spanned by the given integer vectors"""
    work = [list(map(int, v)) for v in vectors]
    for v in work:
        if len(v) != dim:
            raise DimensionError(f"vector of length {len(v)} in dimension {dim}")
    rank = 0
    for c in range(dim):
        if rank == len(work):
            break
        if _reduce_column(work, rank, c):
            rank += 1
    return [_normalize_sign(v) for v in work[:rank]]


# ============================================================================
# TWO-ELEMENT FIELD
# ============================================================================

def _to_mask(bits: Iterable[int]) -> int:
    mask = 0
    for j, bit in enumerate(bits):
        if bit & 1:
            mask |= 1 << j
    return mask


class F2Echelon:
    """Incremental elimination over the two-element field on int bitmasks"""

    def __init__(self):
        self._rows: Dict[int, Tuple[int, int]] = {}

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, mask: int, rhs: int = 0) -> Tuple[int, int]:
        while mask:
            top = mask.bit_length() - 1
            if top not in self._rows:
                break
            row_mask, row_rhs = self._rows[top]
            mask ^= row_mask
            rhs ^= row_rhs
        return mask, rhs

    def add(self, mask: int, rhs: int = 0) -> Optional[bool]:
        """
        Add the equation mask·x = rhs. Returns True if it was independent,
        False if implied by the current rows, None if it contradicts them
        (the echelon is left unchanged in the last two cases).
        """
        mask, rhs = self.reduce(mask, rhs & 1)
        if mask == 0:
            return None if rhs else False
        self._rows[mask.bit_length() - 1] = (mask, rhs)
        return True


def f2_select_independent(vectors: Sequence[Sequence[int]]) -> List[int]:
    """
    Indices, in input order, of a maximal subset linearly independent over the
    two-element field; a vector is kept iff it is independent of those kept before.

    Examples:
        >>> f2_select_independent([(1, 0), (0, 1), (1, 1)])
        [0, 1]
    """
    if vectors:
        width = len(vectors[0])
        if any(len(v) != width for v in vectors):
            raise DimensionError("bit vectors must all have the same length")
    echelon = F2Echelon()
    return [i for i, v in enumerate(vectors) if echelon.add(_to_mask(v))]


def f2_solve(rows: Sequence[Sequence[int]], rhs: Sequence[int], n: int) -> Optional[List[int]]:
    """
    Lexicographically least x in {0,1}^n with rows·x = rhs over the two-element
    field (x[0] most significant), or None if the system is inconsistent.
    """
    if len(rows) != len(rhs):
        raise DimensionError(f"{len(rows)} rows but {len(rhs)} right-hand sides")
    echelon = F2Echelon()
    for row, value in zip(rows, rhs):
        if len(row) != n:
            raise DimensionError(f"row of length {len(row)} for {n} unknowns")
        if echelon.add(_to_mask(row), value) is None:
            return None

    x = []
    for j in range(n):
        if echelon.add(1 << j, 0) is None:
            echelon.add(1 << j, 1)
            x.append(1)
        else:
            x.append(0)
    return x
