"""Exact arithmetic in F_q (q = p^k odd) and dense matrices over it.

Elements are stored as integer *codes*: the element c0 + c1*θ + ... + c_{k-1}*θ^{k-1}
has code c0 + c1*p + ... + c_{k-1}*p^{k-1}.  For k = 1 the code is the residue itself.
Scalar routines work on codes; :class:`FieldElement` wraps a code for user-facing use.
Matrices hold a read-only numpy array of codes.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, Singular, ZeroInverse

# Full add/mul tables are built for extension fields up to this order.
TABLE_LIMIT = 1024
# Square roots are found by exhaustive search up to this order, Tonelli-Shanks above.
SQRT_EXHAUSTIVE_LIMIT = 10_000


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % f for f in range(3, math.isqrt(n) + 1, 2))


def _poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a by the monic polynomial b over Z_p (low degree first)."""
    a = list(a)
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return [x % p for x in a[:db]]


def _is_irreducible(f: tuple[int, ...], p: int) -> bool:
    k = len(f) - 1
    for deg in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            if not any(_poly_rem(f, list(tail) + [1], p)):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible polynomial of degree k over Z_p.

    Coefficients are returned low degree first, including the leading 1.
    """
    for tail in itertools.product(range(p), repeat=k):
        f = tuple(tail) + (1,)
        if _is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FieldSpec:
    """The finite field F_{p^k} for an odd prime p, built on a fixed modulus.

    Use :func:`GF` to obtain instances; they are cached and immutable.
    """

    def __init__(self, p: int, k: int = 1, modulus: tuple[int, ...] | None = None):
        if not _is_prime(p) or p == 2:
            raise ValueError(f"characteristic must be an odd prime, got {p}")
        if k < 1:
            raise ValueError(f"extension degree must be >= 1, got {k}")
        self.p = p
        self.k = k
        self.q = p**k
        if modulus is None:
            modulus = smallest_irreducible(p, k)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1 or not _is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is not monic irreducible of degree {k}")
        self.modulus = modulus
        self._pows = [p**j for j in range(k)]
        self.dtype = np.int64 if p < 2**31 else object
        self.add_t = self.mul_t = None
        self._np_add = self._np_mul = self._np_neg = None
        if k > 1 and self.q <= TABLE_LIMIT:
            self._build_tables()
        self._sqrt_table = None
        self._pack_cache: dict[int, np.ndarray] = {}
        self._zeta = self._find_nonsquare()

    # -- identity / display ------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.k, self.modulus) == (
            other.p,
            other.k,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    @property
    def zeta(self) -> FieldElement:
        """The canonical non-square of the field."""
        return FieldElement(self, self._zeta)

    @property
    def zeta_code(self) -> int:
        return self._zeta

    # -- codes <-> coefficient vectors --------------------------------------

    def coeffs(self, code: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.k):
            code, r = divmod(code, p)
            out.append(r)
        return tuple(out)

    def code(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) != self.k:
            raise DimMismatch(f"expected {self.k} coefficients, got {len(coeffs)}")
        return sum((int(c) % self.p) * w for c, w in zip(coeffs, self._pows))

    def from_int(self, n: int) -> int:
        """Code of the prime-field element n mod p."""
        return int(n) % self.p

    def order_key(self, code: int) -> tuple[int, ...]:
        """Canonical element ordering: lexicographic on coefficient vectors."""
        return self.coeffs(code)

    def basis_code(self, j: int) -> int:
        """Code of the power-basis element θ^j (j < k)."""
        return self._pows[j]

    def element(self, x) -> FieldElement:
        if isinstance(x, FieldElement):
            if x.field != self:
                raise ValueError("element belongs to a different field")
            return x
        if isinstance(x, (tuple, list)):
            return FieldElement(self, self.code(x))
        return FieldElement(self, self.from_int(x))

    def elements(self):
        """All elements in canonical order."""
        for cs in itertools.product(range(self.p), repeat=self.k):
            yield FieldElement(self, self.code(cs))

    # -- scalar arithmetic on codes -----------------------------------------

    def _poly_mul(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        return self.code(_poly_rem(prod, list(self.modulus), p)) if k > 1 else prod[0] % p

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.add_t is not None:
            return self.add_t[a][b]
        return self.code(x + y for x, y in zip(self.coeffs(a), self.coeffs(b)))

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        if self._neg_t is not None:
            return self._neg_t[a]
        return self.code(-x for x in self.coeffs(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if self.mul_t is not None:
            return self.mul_t[a][b]
        return self._poly_mul(a, b)

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        result = 1
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse("inverse of zero")
        if self.k == 1:
            return pow(a, -1, self.p)
        if self._inv_t is not None:
            return self._inv_t[a]
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def is_square(self, a: int) -> bool:
        return a == 0 or self.pow(a, (self.q - 1) // 2) == 1

    def sqrt(self, a: int) -> int | None:
        """Canonical square root of a, or None when a is not a square."""
        if a == 0:
            return 0
        if not self.is_square(a):
            return None
        if self.q <= SQRT_EXHAUSTIVE_LIMIT:
            if self._sqrt_table is None:
                table: dict[int, int] = {}
                for x in range(1, self.q):
                    sq = self.mul(x, x)
                    if sq not in table or self.order_key(x) < self.order_key(table[sq]):
                        table[sq] = x
                self._sqrt_table = table
            return self._sqrt_table[a]
        x = self._tonelli_shanks(a)
        y = self.neg(x)
        return min(x, y, key=self.order_key)

    def _tonelli_shanks(self, a: int) -> int:
        q = self.q
        s, odd = 0, q - 1
        while odd % 2 == 0:
            s, odd = s + 1, odd // 2
        z = self.pow(self._zeta, odd)
        x = self.pow(a, (odd + 1) // 2)
        b = self.pow(a, odd)
        m = s
        while b != 1:
            i, t = 0, b
            while t != 1:
                t = self.mul(t, t)
                i += 1
            c = z
            for _ in range(m - i - 1):
                c = self.mul(c, c)
            x = self.mul(x, c)
            z = self.mul(c, c)
            b = self.mul(b, z)
            m = i
        return x

    def _find_nonsquare(self) -> int:
        minus_one = self.q - 1 if self.k == 1 else self.neg(1)
        e = (self.q - 1) // 2
        for cs in itertools.product(range(self.p), repeat=self.k):
            c = self.code(cs)
            if c and self.pow(c, e) == minus_one:
                return c
        raise AssertionError("odd field without non-squares")  # pragma: no cover

    def _build_tables(self):
        q, p = self.q, self.p
        digits = np.array([self.coeffs(c) for c in range(q)], dtype=np.int64)
        weights = np.array(self._pows, dtype=np.int64)
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        neg = ((-digits) % p) @ weights
        # exp/log tables from a primitive element
        exp = None
        for g in range(2, q):
            seq = [1]
            x = g
            while x != 1:
                seq.append(x)
                x = self._poly_mul(x, g)
            if len(seq) == q - 1:
                exp = seq
                break
        log = [0] * q
        for i, x in enumerate(exp):
            log[x] = i
        e2 = np.array(exp + exp, dtype=np.int64)
        lg = np.array(log, dtype=np.int64)
        mul = e2[lg[:, None] + lg[None, :]]
        mul[0, :] = 0
        mul[:, 0] = 0
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = e2[(q - 1 - lg[1:]) % (q - 1)]
        self._np_add, self._np_mul, self._np_neg = add, mul, neg
        self.add_t, self.mul_t = add.tolist(), mul.tolist()
        self._inv_t = inv.tolist()
        self._neg_t = neg.tolist()
        self._digits = digits

    _inv_t = None
    _neg_t = None
    _digits = None

    # -- vectorised arithmetic on numpy code arrays -------------------------

    def asarray(self, a) -> np.ndarray:
        return np.asarray(a, dtype=self.dtype)

    def to_planes(self, a: np.ndarray) -> np.ndarray:
        if self._digits is not None:
            return np.moveaxis(self._digits[a], -1, 0)
        p = self.p
        return np.stack([(a // w) % p for w in self._pows])

    def from_planes(self, planes: np.ndarray) -> np.ndarray:
        out = planes[0].copy()
        for j in range(1, self.k):
            out = out + planes[j] * self._pows[j]
        return out

    def _reduce_planes(self, prod: np.ndarray) -> np.ndarray:
        """Reduce a (2k-1)-plane polynomial product modulo the monic modulus."""
        p, k, m = self.p, self.k, self.modulus
        for s in range(2 * k - 2, k - 1, -1):
            top = prod[s] % p
            for j in range(k):
                if m[j]:
                    prod[s - k + j] -= m[j] * top
        return prod[:k] % p

    def vadd(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self._np_add is not None:
            return self._np_add[a, b]
        return self.from_planes((self.to_planes(a) + self.to_planes(b)) % self.p)

    def vneg(self, a):
        if self.k == 1:
            return (-a) % self.p
        if self._np_neg is not None:
            return self._np_neg[a]
        return self.from_planes((-self.to_planes(a)) % self.p)

    def vsub(self, a, b):
        if self.k == 1:
            return (a - b) % self.p
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        if self.k == 1:
            return (a * b) % self.p
        if self._np_mul is not None:
            return self._np_mul[a, b]
        pa, pb = self.to_planes(np.asarray(a)), self.to_planes(np.asarray(b))
        shape = np.broadcast_shapes(pa.shape[1:], pb.shape[1:])
        prod = np.zeros((2 * self.k - 1,) + shape, dtype=self.dtype)
        for i in range(self.k):
            for j in range(self.k):
                prod[i + j] += pa[i] * pb[j]
        return self.from_planes(self._reduce_planes(prod))

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Matrix product of code arrays (supports stacked leading dimensions)."""
        p, k = self.p, self.k
        n = a.shape[-1]
        exact = self.dtype is np.int64 and k * n * (p - 1) ** 2 < 2**62
        if k == 1:
            if exact:
                return (a @ b) % p
            return (a.astype(object) @ b.astype(object)) % p
        bound = k * n * (p - 1) ** 2
        bits = bound.bit_length()
        if exact and (2 * k - 1) * bits <= 62:
            return self._packed_matmul(a, b, bits)
        pa, pb = self.to_planes(a), self.to_planes(b)
        if not exact:
            pa, pb = pa.astype(object), pb.astype(object)
        shape = np.broadcast_shapes(pa.shape[1:-2], pb.shape[1:-2]) + (a.shape[-2], b.shape[-1])
        prod = np.zeros((2 * k - 1,) + shape, dtype=pa.dtype)
        for i in range(k):
            for j in range(k):
                prod[i + j] += pa[i] @ pb[j]
        return self.from_planes(self._reduce_planes(prod)).astype(self.dtype)

    def _packed(self, a: np.ndarray, bits: int) -> np.ndarray:
        """Coefficient vectors packed into one integer, `bits` bits per coefficient."""
        if self._digits is not None:
            table = self._pack_cache.get(bits)
            if table is None:
                shifts = np.array([j * bits for j in range(self.k)], dtype=np.int64)
                table = (self._digits << shifts).sum(axis=1)
                self._pack_cache[bits] = table
            return table[a]
        planes = self.to_planes(a)
        out = planes[0].copy()
        for j in range(1, self.k):
            out |= planes[j] << (j * bits)
        return out

    def _packed_matmul(self, a: np.ndarray, b: np.ndarray, bits: int) -> np.ndarray:
        # Kronecker substitution: one integer product carries all 2k-1 coefficient planes
        prod = self._packed(a, bits) @ self._packed(b, bits)
        mask = (1 << bits) - 1
        planes = np.stack([(prod >> (s * bits)) & mask for s in range(2 * self.k - 1)])
        return self.from_planes(self._reduce_planes(planes))

    def identity_codes(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=self.dtype)

    def matprod(self, mats, n: int) -> np.ndarray:
        """Ordered product of a sequence of n x n code arrays (pairwise, batched)."""
        if len(mats) == 0:
            return self.identity_codes(n)
        arr = np.stack(mats)
        while len(arr) > 1:
            half = len(arr) // 2
            prod = self.matmul(arr[0 : 2 * half : 2], arr[1 : 2 * half : 2])
            if len(arr) % 2:
                prod = np.concatenate([prod, arr[-1:]])
            arr = prod
        return arr[0]

    def rref(self, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form of a code array; returns (rref, pivot columns)."""
        m = np.array(a, dtype=self.dtype, copy=True)
        rows, cols = m.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.flatnonzero(m[r:, c])
            if len(nz) == 0:
                continue
            piv = r + int(nz[0])
            if piv != r:
                m[[r, piv]] = m[[piv, r]]
            pinv = self.inv(int(m[r, c]))
            if pinv != 1:
                m[r] = self.vmul(m[r], pinv)
            col = m[:, c].copy()
            col[r] = 0
            hit = np.flatnonzero(col)
            if len(hit):
                m[hit] = self.vsub(m[hit], self.vmul(col[hit][:, None], m[r][None, :]))
            pivots.append(c)
            r += 1
        return m, pivots

    def nullspace(self, a: np.ndarray) -> np.ndarray:
        """Basis of {x : a x = 0}, one vector per row."""
        cols = a.shape[1]
        red, pivots = self.rref(a)
        free = [c for c in range(cols) if c not in set(pivots)]
        basis = np.zeros((len(free), cols), dtype=self.dtype)
        for b, f in enumerate(free):
            basis[b, f] = 1
            for r, pc in enumerate(pivots):
                basis[b, pc] = self.neg(int(red[r, f]))
        return basis


@functools.lru_cache(maxsize=None)
def GF(p: int, k: int = 1) -> FieldSpec:
    """The field F_{p^k} with the canonical (smallest irreducible) modulus."""
    return FieldSpec(p, k)


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    code: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.code)

    def _other(self, x) -> int:
        if isinstance(x, FieldElement):
            if x.field != self.field:
                raise ValueError("mixed fields")
            return x.code
        if isinstance(x, int):
            return self.field.from_int(x)
        return NotImplemented

    def __add__(self, x):
        c = self._other(x)
        return self if c is NotImplemented else FieldElement(self.field, self.field.add(self.code, c))

    __radd__ = __add__

    def __sub__(self, x):
        return FieldElement(self.field, self.field.sub(self.code, self._other(x)))

    def __rsub__(self, x):
        return FieldElement(self.field, self.field.sub(self._other(x), self.code))

    def __mul__(self, x):
        if isinstance(x, Matrix):
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.code, self._other(x)))

    __rmul__ = __mul__

    def __truediv__(self, x):
        return FieldElement(self.field, self.field.div(self.code, self._other(x)))

    def __rtruediv__(self, x):
        return FieldElement(self.field, self.field.div(self._other(x), self.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow(self.code, n))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.code))

    def sqrt(self) -> FieldElement | None:
        r = self.field.sqrt(self.code)
        return None if r is None else FieldElement(self.field, r)

    def is_square(self) -> bool:
        return self.field.is_square(self.code)

    def __bool__(self):
        return self.code != 0

    def __lt__(self, other: FieldElement):
        return self.coeffs < other.coeffs

    def __str__(self):
        return ",".join(map(str, self.coeffs))

    def __repr__(self):
        return f"FieldElement({self}; {self.field!r})"


# -- spec-level scalar operations -----------------------------------------------


def ff_mul(a: FieldElement, b: FieldElement, F: FieldSpec) -> FieldElement:
    return FieldElement(F, F.mul(a.code, b.code))


def ff_inv(a: FieldElement, F: FieldSpec) -> FieldElement:
    return FieldElement(F, F.inv(a.code))


def ff_sqrt(a: FieldElement, F: FieldSpec) -> FieldElement | None:
    """Canonical square root, or None (the NotASquare signal)."""
    r = F.sqrt(a.code)
    return None if r is None else FieldElement(F, r)


def ff_nonsquare(F: FieldSpec) -> FieldElement:
    return F.zeta


# -- matrices ---------------------------------------------------------------------


class Matrix:
    """Dense immutable matrix over a finite field."""

    __slots__ = ("field", "codes")

    def __init__(self, field: FieldSpec, codes):
        arr = np.array(codes, dtype=field.dtype)
        if arr.ndim != 2 or 0 in arr.shape:
            raise DimMismatch(f"matrix needs a non-empty 2-d shape, got {arr.shape}")
        arr.flags.writeable = False
        self.field = field
        self.codes = arr

    @classmethod
    def from_rows(cls, field: FieldSpec, rows) -> Matrix:
        """Build from nested rows of ints (read mod p) or FieldElements."""
        return cls(field, [[field.element(x).code for x in row] for row in rows])

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> Matrix:
        return cls(field, np.eye(n, dtype=field.dtype))

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int | None = None) -> Matrix:
        return cls(field, np.zeros((rows, cols or rows), dtype=field.dtype))

    @classmethod
    def unit(cls, field: FieldSpec, n: int, i: int, j: int) -> Matrix:
        """The n x n matrix with 1 at position (i, j) and 0 elsewhere."""
        a = np.zeros((n, n), dtype=field.dtype)
        a[i, j] = 1
        return cls(field, a)

    @classmethod
    def diag(cls, field: FieldSpec, entries) -> Matrix:
        codes = [field.element(x).code for x in entries]
        a = np.zeros((len(codes), len(codes)), dtype=field.dtype)
        a[np.arange(len(codes)), np.arange(len(codes))] = codes
        return cls(field, a)

    @property
    def shape(self) -> tuple[int, int]:
        return self.codes.shape

    @property
    def rows(self) -> int:
        return self.codes.shape[0]

    @property
    def cols(self) -> int:
        return self.codes.shape[1]

    def __getitem__(self, ij) -> FieldElement:
        i, j = ij
        return FieldElement(self.field, int(self.codes[i, j]))

    def tolist(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.codes]

    def _check(self, other: Matrix):
        if not isinstance(other, Matrix):
            raise TypeError("Matrix expected")
        if other.field != self.field:
            raise ValueError("matrices over different fields")

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.shape == other.shape
            and np.array_equal(self.codes, other.codes)
        )

    def __hash__(self):
        return hash((self.field, self.shape, self.codes.astype(np.int64).tobytes()))

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.cols != other.rows:
            raise DimMismatch(f"cannot multiply {self.shape} by {other.shape}")
        return Matrix(self.field, self.field.matmul(self.codes, other.codes))

    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise DimMismatch(f"cannot add {self.shape} and {other.shape}")
        return Matrix(self.field, self.field.vadd(self.codes, other.codes))

    def __sub__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise DimMismatch(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix(self.field, self.field.vsub(self.codes, other.codes))

    def __neg__(self) -> Matrix:
        return Matrix(self.field, self.field.vneg(self.codes))

    def scale(self, c) -> Matrix:
        c = self.field.element(c)
        return Matrix(self.field, self.field.vmul(self.codes, c.code))

    def __mul__(self, c) -> Matrix:
        if isinstance(c, (int, FieldElement)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    @property
    def T(self) -> Matrix:
        return Matrix(self.field, self.codes.T)

    def is_square_matrix(self) -> bool:
        return self.rows == self.cols

    def inv(self) -> Matrix:
        if not self.is_square_matrix():
            raise DimMismatch(f"cannot invert a {self.shape} matrix")
        n = self.rows
        aug = np.concatenate([self.codes, self.field.identity_codes(n)], axis=1)
        red, pivots = self.field.rref(aug)
        if pivots[:n] != list(range(n)):
            raise Singular("matrix is singular")
        return Matrix(self.field, red[:, n:])

    def det(self) -> FieldElement:
        if not self.is_square_matrix():
            raise DimMismatch(f"determinant of a {self.shape} matrix")
        F = self.field
        m = np.array(self.codes, copy=True)
        n = self.rows
        det = 1
        for c in range(n):
            nz = np.flatnonzero(m[c:, c])
            if len(nz) == 0:
                return FieldElement(F, 0)
            piv = c + int(nz[0])
            if piv != c:
                m[[c, piv]] = m[[piv, c]]
                det = F.neg(det)
            pc = int(m[c, c])
            det = F.mul(det, pc)
            below = m[c + 1 :, c]
            hit = np.flatnonzero(below)
            if len(hit):
                factors = F.vmul(below[hit], F.inv(pc))
                rows = c + 1 + hit
                m[rows] = F.vsub(m[rows], F.vmul(factors[:, None], m[c][None, :]))
        return FieldElement(F, det)

    def __pow__(self, n: int) -> Matrix:
        base = self if n >= 0 else self.inv()
        n = abs(n)
        result = Matrix.identity(self.field, self.rows)
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def is_identity(self) -> bool:
        return self.is_square_matrix() and np.array_equal(
            self.codes, np.eye(self.rows, dtype=self.codes.dtype)
        )

    def scalar_value(self) -> FieldElement | None:
        """λ if this matrix equals λI, otherwise None."""
        if not self.is_square_matrix():
            return None
        lam = int(self.codes[0, 0])
        if np.array_equal(self.codes, lam * np.eye(self.rows, dtype=self.codes.dtype)):
            return FieldElement(self.field, lam)
        return None

    def __repr__(self):
        body = "; ".join(" ".join(str(FieldElement(self.field, int(x))) for x in row) for row in self.codes)
        return f"Matrix[{self.field!r}]({body})"


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    return A @ B


def mat_inv(A: Matrix) -> Matrix:
    return A.inv()


def mat_transpose(A: Matrix) -> Matrix:
    return A.T
