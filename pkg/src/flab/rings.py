"""Exact coefficient rings and integer polynomial helpers.

Every ring here is exact: arbitrary-precision integers, fractions.Fraction,
residues stored as small non-negative ints, and cyclotomic integers stored
as integer coefficient vectors reduced modulo the n-th cyclotomic polynomial.
No floating point anywhere.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import InputError

# ---------------------------------------------------------------------------
# integer polynomials, dense ascending coefficient lists


def poly_trim(p: Sequence[int]) -> tuple[int, ...]:
    """Drop trailing zero coefficients; the zero polynomial is ().

    >>> poly_trim([1, 2, 0])
    (1, 2)
    """
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_degree(p: Sequence[int]) -> int:
    """Degree of p, with the zero polynomial at -1."""
    return len(poly_trim(p)) - 1


def poly_add(p, q):
    n = max(len(p), len(q))
    return poly_trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def poly_neg(p):
    return tuple(-a for a in p)


def poly_mul(p, q):
    p, q = poly_trim(p), poly_trim(q)
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_trim(out)


def poly_divmod_monic(p, d):
    """Divide p by a monic divisor d over the integers, exactly."""
    d = poly_trim(d)
    if not d or d[-1] != 1:
        raise InputError("divisor must be monic")
    rem = list(poly_trim(p))
    quo = [0] * max(len(rem) - len(d) + 1, 0)
    while len(rem) >= len(d):
        c = rem[-1]
        k = len(rem) - len(d)
        quo[k] = c
        for i, b in enumerate(d):
            rem[k + i] -= c * b
        while rem and rem[-1] == 0:
            rem.pop()
    return poly_trim(quo), poly_trim(rem)


def poly_eval_mod(p, x: int, mod: int) -> int:
    """Evaluate p at x modulo mod by Horner's rule."""
    acc = 0
    for a in reversed(poly_trim(p)):
        acc = (acc * x + a) % mod
    return acc


def poly_eval_frac(p, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for a in reversed(poly_trim(p)):
        acc = acc * x + a
    return acc


def sylvester_resultant(p, q) -> int:
    """Resultant of two integer polynomials via the Sylvester determinant.

    Convention: if either polynomial is constant c (degree 0), the resultant
    is c**deg(other); the resultant involving a zero polynomial is 0 unless
    the other is a nonzero constant.
    """
    p, q = poly_trim(p), poly_trim(q)
    s, t = len(p) - 1, len(q) - 1
    if s < 0 and t < 0:
        return 0
    if s < 0:
        return 1 if t == 0 else 0
    if t < 0:
        return 1 if s == 0 else 0
    if s == 0:
        return p[0] ** t
    if t == 0:
        return q[0] ** s
    size = s + t
    rows = []
    for i in range(t):
        row = [0] * size
        for j, a in enumerate(reversed(p)):
            row[i + j] = a
        rows.append(row)
    for i in range(s):
        row = [0] * size
        for j, b in enumerate(reversed(q)):
            row[i + j] = b
        rows.append(row)
    return _det_fraction(rows)


def _det_fraction(rows: list[list[int]]) -> int:
    """Exact determinant of an integer matrix by Fraction elimination."""
    n = len(rows)
    m = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] * inv
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    assert det.denominator == 1
    return int(det)


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """n-th cyclotomic polynomial by the divisor recurrence.

    >>> cyclotomic_poly(1)
    (-1, 1)
    >>> cyclotomic_poly(4)
    (1, 0, 1)
    """
    if n < 1:
        raise InputError("n must be positive")
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    den = (1,)
    for d in range(1, n):
        if n % d == 0:
            den = poly_mul(den, cyclotomic_poly(d))
    quo, rem = poly_divmod_monic(num, den)
    assert rem == ()
    return quo


# ---------------------------------------------------------------------------
# small number theory helpers


def is_prime(n: int) -> bool:
    """Trial-division primality test, adequate for the sizes used here."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization {p: multiplicity} by trial division."""
    if n < 1:
        raise InputError("factorize expects a positive integer")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def multiplicative_order(a: int, m: int) -> int | None:
    """Order of a in (Z/m)*, or None when gcd(a, m) != 1.  m=1 gives 1."""
    if m < 1:
        raise InputError("modulus must be positive")
    if m == 1:
        return 1
    if math.gcd(a, m) != 1:
        return None
    k, x = 1, a % m
    while x != 1:
        x = (x * a) % m
        k += 1
    return k


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns (g, s, t) with s*a + t*b == g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


# ---------------------------------------------------------------------------
# coefficient rings


class Ring:
    """Base for exact coefficient rings.  Elements are hashable values."""

    kind: str = ""
    is_field = False
    # flat_degree is the Z-rank of the ring as an additive group when the
    # ring is integral over Z (used by the lattice linear algebra); fields
    # do not flatten.
    flat_degree = 1

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def canon(self, a):
        """Canonical representative of a (accepts plain ints)."""
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def is_zero(self, a) -> bool:
        return self.canon(a) == self.zero()

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def to_json(self, a):
        return a

    def from_json(self, v):
        return self.canon(v)

    def flatten(self, a) -> tuple[int, ...]:
        """Coordinates of a over Z (non-field rings only)."""
        raise NotImplementedError

    def unflatten(self, coords: Sequence[int]):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Ring) and self.describe() == other.describe()

    def __hash__(self):
        return hash(self.describe())

    def describe(self) -> tuple:
        return (self.kind,)

    def __repr__(self):
        return f"{type(self).__name__}()"


class IntegersRing(Ring):
    kind = "Integers"

    def zero(self):
        return 0

    def one(self):
        return 1

    def canon(self, a):
        if isinstance(a, Fraction):
            if a.denominator != 1:
                raise InputError("not an integer")
            return int(a)
        return int(a)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_unit(self, a):
        return a in (1, -1)

    def inv(self, a):
        if not self.is_unit(a):
            raise InputError("not a unit in Z")
        return a

    def flatten(self, a):
        return (int(a),)

    def unflatten(self, coords):
        return int(coords[0])


class RationalsRing(Ring):
    kind = "Rationals"
    is_field = True

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def canon(self, a):
        if isinstance(a, str):
            return Fraction(a)
        return Fraction(a)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise InputError("division by zero")
        return 1 / Fraction(a)

    def to_json(self, a):
        a = Fraction(a)
        return int(a) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


class IntegersModRing(Ring):
    kind = "IntegersMod"

    def __init__(self, modulus: int):
        if modulus < 2:
            raise InputError("modulus must be at least 2")
        self.modulus = modulus

    def describe(self):
        return (self.kind, self.modulus)

    def __repr__(self):
        return f"{type(self).__name__}({self.modulus})"

    def zero(self):
        return 0

    def one(self):
        return 1 % self.modulus

    def canon(self, a):
        if isinstance(a, Fraction):
            if math.gcd(a.denominator, self.modulus) != 1:
                raise InputError("denominator not invertible")
            return a.numerator * pow(a.denominator, -1, self.modulus) % self.modulus
        return int(a) % self.modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def neg(self, a):
        return (-a) % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def is_unit(self, a):
        return math.gcd(self.canon(a), self.modulus) == 1

    def inv(self, a):
        a = self.canon(a)
        if not self.is_unit(a):
            raise InputError(f"{a} is not a unit mod {self.modulus}")
        return pow(a, -1, self.modulus)

    def flatten(self, a):
        return (self.canon(a),)

    def unflatten(self, coords):
        return self.canon(coords[0])


class PrimeFieldRing(IntegersModRing):
    kind = "PrimeField"
    is_field = True

    def __init__(self, p: int):
        if not is_prime(p):
            raise InputError(f"{p} is not prime")
        super().__init__(p)

    def inv(self, a):
        a = self.canon(a)
        if a == 0:
            raise InputError("division by zero")
        return pow(a, self.modulus - 2, self.modulus)


class CyclotomicRing(Ring):
    """Z[w] with w a primitive n-th root of unity, elements as coefficient
    tuples of length deg(cyclotomic_poly(n))."""

    kind = "Cyclotomic"

    def __init__(self, n: int):
        if n < 1:
            raise InputError("n must be positive")
        self.n = n
        self.poly = cyclotomic_poly(n)
        self.degree = len(self.poly) - 1
        self.flat_degree = self.degree

    def describe(self):
        return (self.kind, self.n)

    def __repr__(self):
        return f"CyclotomicRing({self.n})"

    def zero(self):
        return (0,) * self.degree

    def one(self):
        return self.canon(1)

    def omega(self):
        """The distinguished primitive n-th root of unity."""
        return self.reduce([0, 1])

    def reduce(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        _, rem = poly_divmod_monic(poly_trim(coeffs), self.poly)
        out = list(rem) + [0] * (self.degree - len(rem))
        return tuple(out)

    def canon(self, a):
        if isinstance(a, (int, Fraction)):
            k = IntegersRing().canon(a)
            return self.reduce([k])
        return self.reduce(tuple(int(x) for x in a))

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        return self.reduce(poly_mul(a, b))

    def norm(self, a) -> int:
        """Field norm down to Z, as a resultant with the defining polynomial."""
        return sylvester_resultant(self.poly, poly_trim(a))

    def is_unit(self, a):
        return abs(self.norm(self.canon(a))) == 1

    def inv(self, a):
        a = self.canon(a)
        if not self.is_unit(a):
            raise InputError("not a unit in the cyclotomic ring")
        # w is a unit with w^n = 1; invert by solving a * x = 1 over Q and
        # checking integrality.
        from .linalg import solve_ring_one  # local import avoids a cycle

        return solve_ring_one(self, a)

    def pow_omega(self, k: int) -> tuple[int, ...]:
        """w**k reduced, any integer k."""
        k %= self.n
        vec = [0] * (k + 1)
        vec[k] = 1
        return self.reduce(vec)

    def to_json(self, a):
        return list(a)

    def flatten(self, a):
        return tuple(a)

    def unflatten(self, coords):
        return tuple(int(x) for x in coords)


RING_KINDS = {
    "Integers": lambda modulus=None: IntegersRing(),
    "Rationals": lambda modulus=None: RationalsRing(),
    "IntegersMod": lambda modulus=None: IntegersModRing(modulus),
    "PrimeField": lambda modulus=None: PrimeFieldRing(modulus),
    "Cyclotomic": lambda modulus=None: CyclotomicRing(modulus),
}


def ring_from_json(obj: dict) -> Ring:
    """Build a ring from {"kind": ..., "modulus": ...} JSON."""
    kind = obj.get("kind")
    if kind not in RING_KINDS:
        raise InputError(f"unknown ring kind {kind!r}")
    if kind in ("IntegersMod", "PrimeField", "Cyclotomic"):
        if "modulus" not in obj:
            raise InputError(f"ring kind {kind} requires a modulus")
        return RING_KINDS[kind](obj["modulus"])
    return RING_KINDS[kind]()


def ring_to_json(ring: Ring) -> dict:
    d = ring.describe()
    out = {"kind": d[0]}
    if len(d) > 1:
        out["modulus"] = d[1]
    return out


def element_order(ring: Ring, a, limit: int = 10**6) -> int | None:
    """Multiplicative order of a, or None if no power up to limit is 1."""
    one = ring.one()
    x = ring.canon(a)
    for k in range(1, limit + 1):
        if x == one:
            return k
        x = ring.mul(x, ring.canon(a))
    return None
