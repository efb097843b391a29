"""Finite fields GF(p^h), Frobenius powers and linearized polynomials.

Elements are encoded as integers ``a_0 + a_1 p + ... + a_{h-1} p^{h-1}`` where
``a_i`` is the coefficient of ``e^i`` and ``e`` is the residue of the polynomial
variable modulo the field's defining polynomial.  All arithmetic methods on
:class:`FieldSpec` accept Python ints or integer numpy arrays of any shape, so
the same tables drive scalar code and whole-codebook computations.

Text syntax for elements: ``0``, ``1``, ``e``, ``e^k`` (canonical output), or a
coefficient vector ``[a0,a1,...]`` on input.  Over a prime field plain integers
are the canonical form.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass

import numpy as np

from .errors import AdditivityFailure, FieldMismatch

DEFAULT_BOUND = 2**16

# Conway polynomials, coefficients low degree first, leading 1 included.
# GF(9) uses x^2 + 2x + 2 = x^2 - x - 1, so e^2 = e + 1.
CONWAY = {
    (2, 1): (1, 1),
    (3, 1): (1, 1),
    (5, 1): (3, 1),
    (7, 1): (4, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 2): (3, 6, 1),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = [x % p for x in a]
    inv_lead = pow(m[-1], -1, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    h = len(modulus) - 1
    for d in range(1, h // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(list(modulus), list(low) + [1], p):
                return False
    return True


class FieldSpec:
    """The field GF(p^h) with a fixed defining polynomial.

    Build instances through :func:`field_make`, which caches them so that equal
    parameters give the same object.
    """

    def __init__(self, p: int, h: int, modulus: tuple[int, ...]):
        self.p = p
        self.h = h
        self.q = p**h
        self.modulus = tuple(int(c) % p for c in modulus)
        self.weights = p ** np.arange(h, dtype=np.int64)
        self.digits = np.array(
            [[(x // p**i) % p for i in range(h)] for x in range(self.q)], dtype=np.int64
        ).reshape(self.q, h)
        self._build_log_tables()
        self.neg_table = ((-self.digits) % p) @ self.weights

    def _build_log_tables(self) -> None:
        p, h, q = self.p, self.h, self.q
        m = self.modulus
        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        cur = [1] + [0] * (h - 1)
        for k in range(q - 1):
            val = sum(c * p**i for i, c in enumerate(cur))
            if log[val] >= 0 or val == 0:
                raise ValueError(f"x is not primitive modulo {m} over GF({p})")
            exp[k] = val
            log[val] = k
            # multiply by x and reduce with x^h = -(m_0 + ... + m_{h-1} x^{h-1})
            top = cur[-1]
            cur = [0] + cur[:-1]
            cur = [(c - top * m[i]) % p for i, c in enumerate(cur)]
        if cur != [1] + [0] * (h - 1):
            raise ValueError(f"x is not primitive modulo {m} over GF({p})")
        self.exp_table = exp
        self.log_table = log

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, h={self.h}, modulus={self.modulus})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and (self.p, self.h, self.modulus) == (
            other.p,
            other.h,
            other.modulus,
        )

    def __hash__(self) -> int:
        return hash((self.p, self.h, self.modulus))

    @property
    def e(self) -> int:
        """The primitive element (residue of the polynomial variable)."""
        return int(self.exp_table[1 % (self.q - 1)]) if self.q > 2 else 1

    def elements(self) -> range:
        return range(self.q)

    # -- vectorized arithmetic ---------------------------------------------

    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            r = a ^ b
        else:
            r = ((self.digits[a] + self.digits[b]) % self.p) @ self.weights
        return _ret(r)

    def neg(self, a):
        return _ret(self.neg_table[np.asarray(a, dtype=np.int64)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la = self.log_table[a]
        lb = self.log_table[b]
        r = self.exp_table[(la + lb) % (self.q - 1)]
        return _ret(np.where((a == 0) | (b == 0), 0, r))

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("zero has no inverse")
        return _ret(self.exp_table[(-self.log_table[a]) % (self.q - 1)])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, k: int):
        a = np.asarray(a, dtype=np.int64)
        if k < 0:
            return self.power(self.inv(a), -k)
        if k == 0:
            return _ret(np.ones_like(a))
        r = self.exp_table[(self.log_table[a] * k) % (self.q - 1)]
        return _ret(np.where(a == 0, 0, r))

    def frobenius(self, a, i: int = 1):
        """``a^(p^i)``; the exponent is reduced modulo h."""
        return self.power(a, self.p ** (i % self.h))

    def scale(self, c, a):
        """Multiply by a prime-field integer ``c``."""
        a = np.asarray(a, dtype=np.int64)
        return _ret(((self.digits[a] * (c % self.p)) % self.p) @ self.weights)

    def from_digits(self, d):
        return _ret((np.asarray(d, dtype=np.int64) % self.p) @ self.weights)

    def is_prime_subfield(self, a: int) -> bool:
        return a < self.p

    # -- text syntax --------------------------------------------------------

    def format(self, a: int) -> str:
        a = int(a)
        if self.h == 1 or a in (0, 1):
            return str(a)
        k = int(self.log_table[a])
        return "e" if k == 1 else f"e^{k}"

    def parse(self, token: str) -> int:
        tok = token.strip()
        m = re.fullmatch(r"\[([^\]]*)\]", tok)
        if m:
            parts = [s for s in m.group(1).replace(",", " ").split()]
            if len(parts) != self.h:
                raise ValueError(f"expected {self.h} coefficients in {token!r}")
            coeffs = [int(s) for s in parts]
            if any(not 0 <= c < self.p for c in coeffs):
                raise ValueError(f"coefficient out of range in {token!r}")
            return int(self.from_digits(coeffs))
        if re.fullmatch(r"\d+", tok):
            v = int(tok)
            if v >= self.p:
                raise ValueError(f"integer token {token!r} is not in GF({self.p})")
            return v
        m = re.fullmatch(r"e(?:\^(-?\d+))?", tok)
        if m:
            k = int(m.group(1)) if m.group(1) is not None else 1
            return int(self.exp_table[k % (self.q - 1)])
        raise ValueError(f"bad field element token {token!r}")

    def __call__(self, x) -> "FieldElement":
        if isinstance(x, str):
            x = self.parse(x)
        x = int(x)
        if not 0 <= x < self.q:
            raise ValueError(f"{x} is not an element encoding of GF({self.q})")
        return FieldElement(self, x)


def _ret(r: np.ndarray):
    return int(r) if r.ndim == 0 else r


def _first_primitive(p: int, h: int) -> tuple[int, ...]:
    for low in itertools.product(range(p), repeat=h):
        if low[0] == 0:
            continue
        cand = tuple(low) + (1,)
        try:
            FieldSpec(p, h, cand)
        except ValueError:
            continue
        return cand
    raise ValueError(f"no primitive polynomial found for GF({p}^{h})")


@functools.lru_cache(maxsize=None)
def field_make(
    p: int, h: int = 1, modulus: tuple[int, ...] | None = None, bound: int = DEFAULT_BOUND
) -> FieldSpec:
    """Return GF(p^h).

    Without ``modulus`` the Conway polynomial is used where tabulated, otherwise
    the lexicographically first primitive polynomial (read low degree first).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if h < 1:
        raise ValueError("extension degree must be >= 1")
    if p**h > bound:
        raise ValueError(f"GF({p}^{h}) exceeds the size bound {bound}")
    if modulus is None:
        modulus = CONWAY.get((p, h)) or _first_primitive(p, h)
    modulus = tuple(int(c) % p for c in modulus)
    if len(modulus) != h + 1 or modulus[-1] != 1:
        raise ValueError(f"modulus must be monic of degree {h}")
    if not is_irreducible(modulus, p):
        raise ValueError(f"modulus {modulus} is reducible over GF({p})")
    return FieldSpec(p, h, modulus)


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.field.digits[self.value])

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch("elements belong to different fields")
            return other.value
        if isinstance(other, int):
            return self.field.scale(other, 1)
        return NotImplemented

    def _wrap(self, v) -> "FieldElement":
        return FieldElement(self.field, int(v))

    def __add__(self, other):
        return self._wrap(self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return self._wrap(self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return self._wrap(self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._wrap(self.field.div(self.value, self._other(other)))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, k: int):
        return self._wrap(self.field.power(self.value, k))

    def inverse(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.value))

    def frobenius(self, i: int = 1) -> "FieldElement":
        return self._wrap(self.field.frobenius(self.value, i))

    def __bool__(self) -> bool:
        return self.value != 0

    def __str__(self) -> str:
        return self.field.format(self.value)


def arith(a: FieldElement, b: FieldElement, kind: str) -> FieldElement:
    ops = {"add": "__add__", "sub": "__sub__", "mul": "__mul__", "div": "__truediv__"}
    if kind not in ops:
        raise ValueError(f"unknown operation {kind!r}")
    return getattr(a, ops[kind])(b)


def frobenius(x: FieldElement, i: int) -> FieldElement:
    return x.frobenius(i)


# -- linearized polynomials -----------------------------------------------


@dataclass(frozen=True)
class LinearizedMap:
    """The additive map ``x -> sum_i c_i x^(p^i)`` on GF(p^h).

    Its prime-field matrix ``M`` acts on coefficient row vectors:
    ``digits(L(x)) = digits(x) @ M (mod p)``.
    """

    field: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.field.h:
            raise ValueError(f"need {self.field.h} coefficients, got {len(self.coeffs)}")

    @classmethod
    def identity(cls, field: FieldSpec) -> "LinearizedMap":
        return cls(field, (1,) + (0,) * (field.h - 1))

    @classmethod
    def scalar(cls, field: FieldSpec, c: int, t: int = 0) -> "LinearizedMap":
        """``x -> c x^(p^t)``."""
        coeffs = [0] * field.h
        coeffs[t % field.h] = int(c)
        return cls(field, tuple(coeffs))

    def __call__(self, x):
        f = self.field
        x = np.asarray(x, dtype=np.int64)
        acc = np.zeros_like(x)
        for i, c in enumerate(self.coeffs):
            if c:
                acc = f.add(acc, f.mul(c, f.frobenius(x, i)))
                acc = np.asarray(acc)
        return _ret(acc)

    def table(self) -> np.ndarray:
        return np.asarray(self(np.arange(self.field.q)))

    def matrix(self) -> np.ndarray:
        f = self.field
        basis = [f.power(f.e, i) for i in range(f.h)]
        return f.digits[[self(b) for b in basis]].copy()

    @classmethod
    def from_matrix(cls, field: FieldSpec, m) -> "LinearizedMap":
        m = np.asarray(m, dtype=np.int64)
        if m.shape != (field.h, field.h):
            raise ValueError(f"expected a {field.h}x{field.h} matrix, got shape {m.shape}")
        table = ((field.digits @ (m % field.p)) % field.p) @ field.weights
        return linmap_from_table(field, table)

    def is_permutation(self) -> bool:
        return len(set(self.table().tolist())) == self.field.q

    def compose(self, other: "LinearizedMap") -> "LinearizedMap":
        """``self o other``."""
        return linmap_from_table(self.field, self.table()[other.table()])

    def inverse(self) -> "LinearizedMap":
        t = self.table()
        inv = np.empty_like(t)
        inv[t] = np.arange(self.field.q)
        if len(set(t.tolist())) != self.field.q:
            raise ValueError("map is not a permutation")
        return linmap_from_table(self.field, inv)


def linmap_from_table(field: FieldSpec, table) -> LinearizedMap:
    """Interpolate an additive function table by a linearized polynomial.

    Raises :class:`AdditivityFailure` carrying a pair ``(x, y)`` on which the
    table is not additive.
    """
    from .linalg import solve

    f = field
    table = np.asarray(table, dtype=np.int64)
    if table.shape != (f.q,):
        raise ValueError(f"table must list images of all {f.q} elements")
    if table[0] != 0:
        raise AdditivityFailure(0, 0)
    basis = [f.power(f.e, m) for m in range(f.h)]
    basis_digits = f.digits[table[basis]]
    predicted = ((f.digits @ basis_digits) % f.p) @ f.weights
    bad = np.nonzero(predicted != table)[0]
    if bad.size:
        # Smallest failure by digit sum splits as (good part) + (basis element).
        dsum = f.digits[bad].sum(axis=1)
        x = int(bad[np.argmin(dsum)])
        dx = f.digits[x].copy()
        m = int(np.nonzero(dx)[0][0])
        dx[m] -= 1
        raise AdditivityFailure(int(f.from_digits(dx)), int(basis[m]))
    moore = np.array([[f.frobenius(b, i) for i in range(f.h)] for b in basis], dtype=np.int64)
    coeffs = solve(f, moore, table[basis])
    lm = LinearizedMap(f, tuple(int(c) for c in coeffs))
    if not np.array_equal(lm.table(), table):
        raise AssertionError("interpolated map disagrees with its table")
    return lm


def linmap_eval(L: LinearizedMap, x: FieldElement) -> FieldElement:
    if x.field != L.field:
        raise FieldMismatch("map and element belong to different fields")
    return FieldElement(L.field, int(L(x.value)))


def linmap_matrix(L: LinearizedMap) -> np.ndarray:
    return L.matrix()


def matrix_to_linmap(field: FieldSpec, m) -> LinearizedMap:
    return LinearizedMap.from_matrix(field, m)


def all_linearized_maps(field: FieldSpec):
    """Every additive map, enumerated through its coefficient vector."""
    for coeffs in itertools.product(range(field.q), repeat=field.h):
        yield LinearizedMap(field, coeffs)


def count_additive(field: FieldSpec, brute_force_limit: int = 8) -> tuple[int, int]:
    """(number of additive maps, number of additive permutations).

    Permutations are found by trying every permutation table when
    ``q <= brute_force_limit``; larger fields count invertible linearized maps.
    """
    maps = {tuple(L.table().tolist()) for L in all_linearized_maps(field)}
    if field.q <= brute_force_limit:
        perms = 0
        for perm in itertools.permutations(range(field.q)):
            try:
                linmap_from_table(field, perm)
            except AdditivityFailure:
                continue
            perms += 1
    else:
        perms = sum(1 for t in maps if len(set(t)) == field.q)
    return len(maps), perms
