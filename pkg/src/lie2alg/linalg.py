"""Dense exact-rational (and float) linear algebra.

Scalars are `fractions.Fraction` in exact mode or `float` in analytic
mode.  Every value carries a single scalar mode; mixing the two in one
expression raises `ModeError`.  Row reduction, kernel bases and exact
inverses are only available in exact mode, where results are exact by
construction.  All values are immutable and all operations are pure.
"""

from __future__ import annotations

import itertools
import math
import re
from fractions import Fraction

Rat = Fraction

_RAT_RE = re.compile(r"^(-?\d+)(?:/([1-9]\d*))?$")


class ModeError(TypeError):
    """Raised when exact and float values meet in one expression."""


def rat(text: str) -> Fraction:
    """Parse a rational literal: optional '-', integer, optional '/positive-integer'."""
    m = _RAT_RE.match(text.strip())
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    return Fraction(num, den)


def rat_str(q) -> str:
    """Render a scalar in the literal grammar (floats use repr)."""
    if isinstance(q, float):
        return repr(q)
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _coerce_entries(entries):
    """Normalize a flat list of scalars to one mode. ints are exact."""
    has_float = any(isinstance(e, float) for e in entries)
    if has_float:
        for e in entries:
            if not isinstance(e, (float, int)):
                raise ModeError("mixed exact and float entries")
        return tuple(float(e) for e in entries), "float"
    return tuple(e if isinstance(e, Fraction) else Fraction(e) for e in entries), "exact"


def _check_scalar(s, mode):
    if isinstance(s, int):
        return Fraction(s) if mode == "exact" else float(s)
    if isinstance(s, Fraction):
        if mode != "exact":
            raise ModeError("rational scalar applied to float value")
        return s
    if isinstance(s, float):
        if mode != "float":
            raise ModeError("float scalar applied to exact value")
        return s
    raise TypeError(f"unsupported scalar {s!r}")


def _same_mode(a, b):
    # empty values carry no scalars, so they are compatible with either mode
    if getattr(a, "data", None) == () or getattr(b, "data", None) == ():
        return
    if a.mode != b.mode:
        raise ModeError(f"mode mismatch: {a.mode} vs {b.mode}")


# ---------------------------------------------------------------------------
# vectors (plain tuples)
# ---------------------------------------------------------------------------

def vzero(n: int, mode: str = "exact") -> tuple:
    z = Fraction(0) if mode == "exact" else 0.0
    return (z,) * n


def basis_vec(n: int, i: int, mode: str = "exact") -> tuple:
    one = Fraction(1) if mode == "exact" else 1.0
    z = Fraction(0) if mode == "exact" else 0.0
    return tuple(one if j == i else z for j in range(n))


def vadd(u: tuple, v: tuple) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: tuple, v: tuple) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vneg(u: tuple) -> tuple:
    return tuple(-a for a in u)


def vscale(s, u: tuple) -> tuple:
    return tuple(s * a for a in u)


def vmax_abs(u: tuple):
    return max((abs(a) for a in u), default=Fraction(0))


def vec_is_zero(u: tuple) -> bool:
    return all(a == 0 for a in u)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

class Mat:
    """Immutable dense matrix, row-major, single scalar mode."""

    __slots__ = ("rows", "cols", "data", "mode")

    def __init__(self, rows: int, cols: int, data):
        data = list(data)
        if len(data) != rows * cols:
            raise ValueError(f"need {rows * cols} entries, got {len(data)}")
        entries, mode = _coerce_entries(data)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", entries)
        object.__setattr__(self, "mode", mode if data else "exact")

    def __setattr__(self, *args):
        raise AttributeError("Mat is immutable")

    @classmethod
    def from_rows(cls, rows) -> "Mat":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, [e for r in rows for e in r])

    @classmethod
    def zero(cls, rows: int, cols: int, mode: str = "exact") -> "Mat":
        z = Fraction(0) if mode == "exact" else 0.0
        return cls(rows, cols, [z] * (rows * cols))

    @classmethod
    def identity(cls, n: int, mode: str = "exact") -> "Mat":
        m = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            m[i][i] = Fraction(1)
        out = cls.from_rows(m)
        return out.to_float() if mode == "float" else out

    @classmethod
    def from_cols(cls, cols, nrows: int) -> "Mat":
        cols = [tuple(c) for c in cols]
        return cls(nrows, len(cols), [cols[j][i] for i in range(nrows) for j in range(len(cols))])

    def at(self, i: int, j: int):
        return self.data[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.data[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return tuple(self.data[i * self.cols + j] for i in range(self.rows))

    def __add__(self, other: "Mat") -> "Mat":
        _same_mode(self, other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Mat(self.rows, self.cols, [a + b for a, b in zip(self.data, other.data)])

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def __neg__(self) -> "Mat":
        return Mat(self.rows, self.cols, [-a for a in self.data])

    def scale(self, s) -> "Mat":
        s = _check_scalar(s, self.mode) if self.data else s
        return Mat(self.rows, self.cols, [s * a for a in self.data])

    def __matmul__(self, other: "Mat") -> "Mat":
        _same_mode(self, other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        n, k, m = self.rows, self.cols, other.cols
        a, b = self.data, other.data
        out = []
        for i in range(n):
            arow = a[i * k:(i + 1) * k]
            for j in range(m):
                out.append(sum((arow[t] * b[t * m + j] for t in range(k)),
                               Fraction(0) if self.mode == "exact" else 0.0))
        return Mat(n, m, out)

    def apply(self, vec: tuple) -> tuple:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.append(sum((r[t] * vec[t] for t in range(self.cols)),
                           Fraction(0) if self.mode == "exact" else 0.0))
        return tuple(out)

    def transpose(self) -> "Mat":
        return Mat(self.cols, self.rows,
                   [self.at(i, j) for j in range(self.cols) for i in range(self.rows)])

    def power(self, k: int) -> "Mat":
        if self.rows != self.cols:
            raise ValueError("square matrix required")
        result = Mat.identity(self.rows, self.mode)
        for _ in range(k):
            result = result @ self
        return result

    def trace(self):
        return sum((self.at(i, i) for i in range(self.rows)),
                   Fraction(0) if self.mode == "exact" else 0.0)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.data)

    def max_abs(self):
        return max((abs(a) for a in self.data), default=Fraction(0))

    def to_float(self) -> "Mat":
        if self.mode == "float":
            return self
        return Mat(self.rows, self.cols, [float(a) for a in self.data])

    def __eq__(self, other) -> bool:
        return (isinstance(other, Mat) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self) -> str:
        rows = [" ".join(rat_str(self.at(i, j)) for j in range(self.cols)) for i in range(self.rows)]
        return "Mat[" + "; ".join(rows) + "]"


def rref(m: Mat):
    """Reduced row-echelon form of an exact matrix.

    Pivot rule: first nonzero column, topmost nonzero entry, scaled to a
    leading 1, with elimination above and below.  Returns the reduced
    matrix and the strictly increasing list of pivot columns.
    """
    if m.mode != "exact":
        raise ModeError("rref requires exact scalars")
    rows = [list(m.row(i)) for i in range(m.rows)]
    pivots = []
    r = 0
    for c in range(m.cols):
        pr = next((i for i in range(r, m.rows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(m.rows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return Mat.from_rows(rows) if rows else Mat.zero(0, m.cols), pivots


def kernel_basis(m: Mat) -> list:
    """Basis of the exact null space, one vector per free column."""
    red, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red.at(r, f)
        basis.append(tuple(v))
    return basis


def mat_inverse(m: Mat):
    """Inverse of a square matrix, or None when singular.

    Exact mode inverts by row reduction of the augmented matrix; float
    mode uses Gauss-Jordan with partial pivoting.
    """
    if m.rows != m.cols:
        raise ValueError("square matrix required")
    n = m.rows
    if m.mode == "exact":
        aug = Mat.from_rows([list(m.row(i)) + [Fraction(1) if j == i else Fraction(0) for j in range(n)]
                             for i in range(n)]) if n else Mat.zero(0, 0)
        red, pivots = rref(aug)
        if pivots != list(range(n)):
            return None
        return Mat.from_rows([red.row(i)[n:] for i in range(n)]) if n else Mat.zero(0, 0)
    rows = [list(m.row(i)) + [1.0 if j == i else 0.0 for j in range(n)] for i in range(n)]
    for c in range(n):
        pr = max(range(c, n), key=lambda i: abs(rows[i][c]))
        if rows[pr][c] == 0.0:
            return None
        rows[c], rows[pr] = rows[pr], rows[c]
        pv = rows[c][c]
        rows[c] = [x / pv for x in rows[c]]
        for i in range(n):
            if i != c and rows[i][c] != 0.0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return Mat.from_rows([r[n:] for r in rows]) if n else Mat.zero(0, 0)


def solve(m: Mat, b: tuple):
    """One exact solution of m x = b (free variables set to 0), or None."""
    if m.mode != "exact":
        raise ModeError("solve requires exact scalars")
    aug = Mat.from_rows([list(m.row(i)) + [b[i]] for i in range(m.rows)]) if m.rows else Mat.zero(0, m.cols + 1)
    red, pivots = rref(aug)
    if m.cols in pivots:
        return None
    x = [Fraction(0)] * m.cols
    for r, p in enumerate(pivots):
        x[p] = red.at(r, m.cols)
    return tuple(x)


def rank(m: Mat) -> int:
    return len(rref(m)[1])


def nilpotency_index(m: Mat):
    """Smallest k <= dim with m^k = 0, or None if m is not nilpotent."""
    if m.rows != m.cols:
        raise ValueError("square matrix required")
    p = m
    for k in range(1, m.rows + 1):
        if p.is_zero():
            return k
        p = p @ m
    return 1 if m.rows == 0 else None


def truncated_exp(m: Mat, t=1, order: int = 24, mode: str = "exact-if-nilpotent") -> Mat:
    """Truncated exponential series sum_{n=0..N} t^n m^n / n!.

    In "exact-if-nilpotent" mode a nilpotent exact input makes the series
    terminate, so the result is the true exponential, exactly.  In
    "float" mode everything is converted to float and summed to `order`.
    Callers own the truncation-error budget for non-terminating input.
    """
    if m.rows != m.cols:
        raise ValueError("square matrix required")
    if order < 1:
        raise ValueError("order must be >= 1")
    if mode == "float":
        mf = m.to_float()
        tf = float(t)
        result = Mat.identity(m.rows, "float")
        term = result
        for n in range(1, order + 1):
            term = (term @ mf).scale(tf / n)
            result = result + term
        return result
    if mode != "exact-if-nilpotent":
        raise ValueError(f"unknown mode {mode!r}")
    if m.mode != "exact":
        raise ModeError("exact-if-nilpotent mode requires exact input")
    k = nilpotency_index(m)
    top = (k - 1) if k is not None else order
    t = Fraction(t)
    result = Mat.identity(m.rows)
    term = result
    for n in range(1, top + 1):
        term = (term @ m).scale(t / n)
        result = result + term
    return result


# ---------------------------------------------------------------------------
# alternating tensors
# ---------------------------------------------------------------------------

def _perm_sign(perm) -> int:
    inv = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inv += 1
    return -1 if inv % 2 else 1


_PERMS_CACHE: dict = {}


def _signed_perms(k: int):
    if k not in _PERMS_CACHE:
        _PERMS_CACHE[k] = [(p, _perm_sign(p)) for p in itertools.permutations(range(k))]
    return _PERMS_CACHE[k]


class AltTensor:
    """Alternating k-linear map (R^dim)^k -> R^codim.

    Only strictly increasing index tuples are stored (zero values are
    dropped); evaluation on arbitrary index tuples applies the
    permutation sign, and repeated indices give zero.  Evaluation on
    vectors is the multilinear alternating extension.
    """

    __slots__ = ("arity", "dim", "codim", "entries", "mode")

    def __init__(self, arity: int, dim: int, codim: int, entries=None, mode: str = "exact"):
        clean = {}
        emode = None
        for key, vec in (entries or {}).items():
            key = tuple(key)
            if len(key) != arity or any(not (0 <= i < dim) for i in key):
                raise ValueError(f"bad index tuple {key}")
            if any(key[i] >= key[i + 1] for i in range(arity - 1)):
                raise ValueError(f"index tuple not strictly increasing: {key}")
            if len(vec) != codim:
                raise ValueError("value length mismatch")
            vec, vmode = _coerce_entries(list(vec))
            if emode is None:
                emode = vmode
            elif emode != vmode:
                raise ModeError("mixed modes in tensor entries")
            if not vec_is_zero(vec):
                clean[key] = vec
        if emode is not None:
            mode = emode
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "codim", codim)
        object.__setattr__(self, "entries", dict(sorted(clean.items())))
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, *args):
        raise AttributeError("AltTensor is immutable")

    @classmethod
    def zero(cls, arity: int, dim: int, codim: int, mode: str = "exact") -> "AltTensor":
        return cls(arity, dim, codim, {}, mode)

    @classmethod
    def from_function(cls, arity: int, dim: int, codim: int, fn, mode: str = "exact") -> "AltTensor":
        """Build from a callback on strictly increasing basis tuples."""
        entries = {}
        for key in itertools.combinations(range(dim), arity):
            entries[key] = tuple(fn(key))
        return cls(arity, dim, codim, entries, mode)

    def _zero_vec(self) -> tuple:
        return vzero(self.codim, self.mode)

    def eval_basis(self, *indices) -> tuple:
        """Value on basis indices, with the sign of the sorting permutation."""
        if len(indices) != self.arity:
            raise ValueError("arity mismatch")
        if len(set(indices)) != len(indices):
            return self._zero_vec()
        order = sorted(range(len(indices)), key=lambda i: indices[i])
        sign = _perm_sign(order)
        key = tuple(sorted(indices))
        vec = self.entries.get(key)
        if vec is None:
            return self._zero_vec()
        return vec if sign == 1 else vneg(vec)

    def eval(self, *vectors) -> tuple:
        """Multilinear alternating evaluation on length-`dim` vectors."""
        if len(vectors) != self.arity:
            raise ValueError("arity mismatch")
        k = self.arity
        if k == 0:
            return self.entries.get((), self._zero_vec())
        out = list(self._zero_vec())
        perms = _signed_perms(k)
        for key, vec in self.entries.items():
            minor = sum(sign * math.prod(vectors[a][key[p[a]]] for a in range(k))
                        for p, sign in perms)
            if minor != 0:
                for c in range(self.codim):
                    out[c] += minor * vec[c]
        return tuple(out)

    def __add__(self, other: "AltTensor") -> "AltTensor":
        self._compat(other)
        keys = set(self.entries) | set(other.entries)
        entries = {k: vadd(self.entries.get(k, self._zero_vec()),
                           other.entries.get(k, other._zero_vec())) for k in keys}
        return AltTensor(self.arity, self.dim, self.codim, entries, self.mode)

    def __sub__(self, other: "AltTensor") -> "AltTensor":
        return self + (-other)

    def __neg__(self) -> "AltTensor":
        return AltTensor(self.arity, self.dim, self.codim,
                         {k: vneg(v) for k, v in self.entries.items()}, self.mode)

    def scale(self, s) -> "AltTensor":
        if self.entries:
            s = _check_scalar(s, self.mode)
        return AltTensor(self.arity, self.dim, self.codim,
                         {k: vscale(s, v) for k, v in self.entries.items()}, self.mode)

    def postcompose(self, m: Mat) -> "AltTensor":
        """Apply a matrix to the values: (m . omega)."""
        if m.cols != self.codim:
            raise ValueError("shape mismatch")
        if self.entries and m.data and self.mode != m.mode:
            raise ModeError("mode mismatch in postcompose")
        return AltTensor(self.arity, self.dim, m.rows,
                         {k: m.apply(v) for k, v in self.entries.items()},
                         self.mode if self.entries else m.mode)

    def pullback(self, b: Mat) -> "AltTensor":
        """Precompose every argument with b: omega(b ., ..., b .)."""
        if b.rows != self.dim:
            raise ValueError("shape mismatch")
        cols = [b.col(j) for j in range(b.cols)]
        entries = {}
        for key in itertools.combinations(range(b.cols), self.arity):
            entries[key] = self.eval(*(cols[j] for j in key))
        return AltTensor(self.arity, b.cols, self.codim, entries, self.mode)

    def is_zero(self) -> bool:
        return not self.entries

    def max_abs(self):
        return max((vmax_abs(v) for v in self.entries.values()), default=Fraction(0))

    def to_float(self) -> "AltTensor":
        if self.mode == "float":
            return self
        return AltTensor(self.arity, self.dim, self.codim,
                         {k: tuple(float(x) for x in v) for k, v in self.entries.items()},
                         "float")

    def _compat(self, other: "AltTensor"):
        if (self.arity, self.dim, self.codim) != (other.arity, other.dim, other.codim):
            raise ValueError("tensor shape mismatch")
        if self.entries and other.entries:
            _same_mode(self, other)

    def __eq__(self, other) -> bool:
        return (isinstance(other, AltTensor)
                and (self.arity, self.dim, self.codim) == (other.arity, other.dim, other.codim)
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.arity, self.dim, self.codim, tuple(self.entries.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{k}:({', '.join(rat_str(x) for x in v)})" for k, v in self.entries.items())
        return f"AltTensor({self.arity},{self.dim}->{self.codim}; {body})"


def tensor_distance(a: AltTensor, b: AltTensor):
    """Max abs difference over all strictly increasing tuples."""
    if (a.arity, a.dim, a.codim) != (b.arity, b.dim, b.codim):
        raise ValueError("tensor shape mismatch")
    keys = set(a.entries) | set(b.entries)
    za, zb = a._zero_vec(), b._zero_vec()
    worst = Fraction(0)
    for k in keys:
        d = vmax_abs(vsub(a.entries.get(k, za), b.entries.get(k, zb)))
        if d > worst:
            worst = d
    return worst


def mat_distance(a: Mat, b: Mat):
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise ValueError("shape mismatch")
    return max((abs(x - y) for x, y in zip(a.data, b.data)), default=Fraction(0))
