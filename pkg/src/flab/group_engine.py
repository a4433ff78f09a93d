"""Finite groups as explicit multiplication tables, automorphism actions
with fixed-point verification, the dimension-subgroup filtration with its
graded algebra, and a table-free Hausdorff-product group for nilpotent
coordinate modules.

Tables cap at TABLE_CAP elements.  Anything advertised as exhaustive
(subgroup lattices, associativity sweeps, coset recomputation) is limited
to EXHAUSTIVE_CAP and raises CapacityError beyond it.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass

import numpy as np

from .combinatorics import FrobeniusParams
from .errors import CapacityError, InputError
from .graded_lie import (
    GradedLieRing,
    automorphism_issues,
    lower_central_series,
    validate,
)
from .linalg import Subspace, field_kernel, mat_apply, mat_identity, mat_mul
from .reports import INAPPLICABLE, PASS, VIOLATION, VerificationReport
from .rings import (
    PrimeFieldRing,
    factorize,
    is_prime,
    poly_add,
    poly_mul,
    poly_neg,
    poly_trim,
)

TABLE_CAP = 5000
EXHAUSTIVE_CAP = 512
WELLDEF_CAP = 64  # coset-representative sweeps stay exhaustive up to here
_ASSOC_SAMPLES = 4000


# --- permutations of element ids ---


def perm_identity(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def perm_compose(a, b) -> tuple[int, ...]:
    """a after b: x -> a[b[x]]."""
    return tuple(a[x] for x in b)


def perm_inverse(a) -> tuple[int, ...]:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def perm_power(a, k: int) -> tuple[int, ...]:
    if k < 0:
        a, k = perm_inverse(a), -k
    acc, base = perm_identity(len(a)), tuple(a)
    while k:
        if k & 1:
            acc = perm_compose(base, acc)
        base = perm_compose(base, base)
        k >>= 1
    return acc


def perm_order(a) -> int:
    seen = [False] * len(a)
    out = 1
    for i in range(len(a)):
        if seen[i]:
            continue
        length, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = a[j]
            length += 1
        out = math.lcm(out, length)
    return out


# --- table-backed groups ---


def _check_associativity(table) -> None:
    n = len(table)
    if n <= EXHAUSTIVE_CAP:
        t = np.asarray(table, dtype=np.int64)
        for i in range(n):
            if not np.array_equal(t[t[i]], t[i][t]):
                raise InputError("table is not associative")
    else:
        rng = random.Random(0x5EED ^ n)
        for _ in range(_ASSOC_SAMPLES):
            a, b, c = (rng.randrange(n) for _ in range(3))
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise InputError("table is not associative")


class FiniteGroup:
    """Immutable group on element ids 0..order-1 backed by a full table.

    Identity, inverse, and Latin-square laws are checked exactly;
    associativity is exhaustive up to EXHAUSTIVE_CAP and sampled above.
    BCHGroup exposes the same element-id interface without a table.
    """

    def __init__(self, table, names=None):
        n = len(table)
        if n == 0:
            raise InputError("empty multiplication table")
        if n > TABLE_CAP:
            raise CapacityError(f"order {n} exceeds the table cap {TABLE_CAP}")
        rows = [tuple(row) for row in table]
        full = set(range(n))
        for row in rows:
            if len(row) != n or set(row) != full:
                raise InputError("each table row must permute the element ids")
        for j in range(n):
            if {row[j] for row in rows} != full:
                raise InputError("each table column must permute the element ids")
        ident = next(
            (e for e in range(n)
             if all(rows[e][x] == x and rows[x][e] == x for x in range(n))),
            None,
        )
        if ident is None:
            raise InputError("table has no two-sided identity")
        _check_associativity(rows)
        inv = [0] * n
        for x in range(n):
            y = rows[x].index(ident)
            if rows[y][x] != ident:
                raise InputError("inverse law fails")
            inv[x] = y
        self._table = tuple(rows)
        self._inv = tuple(inv)
        self.identity = ident
        if names is not None and len(names) != n:
            raise InputError("names must cover every element")
        self.names = None if names is None else tuple(names)

    @property
    def order(self) -> int:
        return len(self._table)

    def mul(self, a: int, b: int) -> int:
        return self._table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def conjugate(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self._table[self._table[g][x]][self._inv[g]]

    def commutator(self, x: int, y: int) -> int:
        """x^-1 y^-1 x y."""
        t = self._table
        return t[t[t[self._inv[x]][self._inv[y]]][x]][y]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self._inv[a], -k
        acc, base = self.identity, a
        while k:
            if k & 1:
                acc = self._table[acc][base]
            base = self._table[base][base]
            k >>= 1
        return acc

    def element_order(self, a: int) -> int:
        o, x = 1, a
        while x != self.identity:
            x = self._table[x][a]
            o += 1
        return o

    def exponent(self) -> int:
        out = 1
        for x in range(self.order):
            out = math.lcm(out, self.element_order(x))
        return out

    def is_abelian(self) -> bool:
        t = self._table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def to_json(self) -> dict:
        return {"table": [list(row) for row in self._table]}


# --- builders ---


def _require_table_cap(n: int) -> None:
    # fail before table construction, not after
    if n > TABLE_CAP:
        raise CapacityError(f"order {n} exceeds the table cap {TABLE_CAP}")


def cyclic_group(n: int) -> FiniteGroup:
    """Z/n with ids as residues."""
    if n < 1:
        raise InputError("order must be positive")
    _require_table_cap(n)
    return FiniteGroup([[(i + j) % n for j in range(n)] for i in range(n)])


def elementary_abelian_group(p: int, k: int) -> FiniteGroup:
    """(Z/p)^k with ids in mixed radix base p."""
    if not is_prime(p):
        raise InputError("p must be prime")
    if k < 0:
        raise InputError("k must be nonnegative")
    n = p**k
    _require_table_cap(n)

    def add(a, b):
        out, mult = 0, 1
        for _ in range(k):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    return FiniteGroup([[add(a, b) for b in range(n)] for a in range(n)])


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n; id of r^i s^e is i + n*e."""
    if n < 1:
        raise InputError("n must be positive")
    _require_table_cap(2 * n)

    def mul(a, b):
        i1, e1 = a % n, a // n
        i2, e2 = b % n, b // n
        i = (i1 + (i2 if e1 == 0 else -i2)) % n
        return i + n * (e1 ^ e2)

    return FiniteGroup([[mul(a, b) for b in range(2 * n)] for a in range(2 * n)])


_QUATERNION_UNITS = {
    (0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
    (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
    (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
    (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
}


def quaternion_group() -> FiniteGroup:
    """Q_8 on {1, i, j, k} x {+, -}; id of (sign s, unit u) is 4s + u."""

    def mul(a, b):
        s1, u1 = divmod(a, 4)
        s2, u2 = divmod(b, 4)
        s3, u3 = _QUATERNION_UNITS[(u1, u2)]
        return 4 * ((s1 + s2 + s3) % 2) + u3

    names = ("1", "i", "j", "k", "-1", "-i", "-j", "-k")
    return FiniteGroup([[mul(a, b) for b in range(8)] for a in range(8)], names)


def heisenberg_group(p: int) -> FiniteGroup:
    """Unitriangular 3x3 matrices over F_p, order p^3; ids encode (a, b, c)
    for rows [[1,a,c],[0,1,b],[0,0,1]]."""
    if not is_prime(p):
        raise InputError("p must be prime")
    n = p**3
    _require_table_cap(n)

    def mul(x, y):
        a1, b1, c1 = x % p, x // p % p, x // (p * p)
        a2, b2, c2 = y % p, y // p % p, y // (p * p)
        return (a1 + a2) % p + p * ((b1 + b2) % p) + p * p * ((c1 + c2 + a1 * b2) % p)

    return FiniteGroup([[mul(a, b) for b in range(n)] for a in range(n)])


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """Componentwise product; id of (g, h) is g*|H| + h."""
    n = G.order * H.order
    _require_table_cap(n)

    def mul(a, b):
        g1, h1 = divmod(a, H.order)
        g2, h2 = divmod(b, H.order)
        return G.mul(g1, g2) * H.order + H.mul(h1, h2)

    return FiniteGroup([[mul(a, b) for b in range(n)] for a in range(n)])


def group_from_permutations(degree: int, generators) -> FiniteGroup:
    """Closure of the generators under composition; ids in discovery order
    with the identity first."""
    ident = perm_identity(degree)
    gens = []
    for g in generators:
        g = tuple(g)
        if len(g) != degree or set(g) != set(range(degree)):
            raise InputError("generators must be permutations of the degree")
        gens.append(g)
    elements = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = perm_compose(x, g)
                if y not in index:
                    if len(elements) >= TABLE_CAP:
                        raise CapacityError(
                            f"permutation closure exceeds the table cap {TABLE_CAP}"
                        )
                    index[y] = len(elements)
                    elements.append(y)
                    nxt.append(y)
        frontier = nxt
    table = [
        [index[perm_compose(a, b)] for b in elements] for a in elements
    ]
    return FiniteGroup(table, names=tuple(repr(list(e)) for e in elements))


def build_group(data) -> FiniteGroup:
    """JSON group formats: {"table": [[...]]} or
    {"permutations": {"degree": d, "generators": [[...], ...]}}."""
    if "table" in data:
        return FiniteGroup(data["table"])
    if "permutations" in data:
        block = data["permutations"]
        return group_from_permutations(
            int(block["degree"]), [tuple(g) for g in block["generators"]]
        )
    raise InputError("unknown group format; expected 'table' or 'permutations'")


NAMED_GROUPS = {
    "C2": lambda: cyclic_group(2),
    "C3": lambda: cyclic_group(3),
    "C4": lambda: cyclic_group(4),
    "C8": lambda: cyclic_group(8),
    "V4": lambda: elementary_abelian_group(2, 2),
    "D8": lambda: dihedral_group(4),
    "Q8": quaternion_group,
    "Heis3": lambda: heisenberg_group(3),
}

# name, prime pairs for the bundled p-group checks
P_GROUP_CORPUS = (("C4", 2), ("C8", 2), ("D8", 2), ("Q8", 2), ("Heis3", 3))


def named_group(name: str) -> FiniteGroup:
    if name not in NAMED_GROUPS:
        raise InputError(f"unknown group name {name!r}; choices: {sorted(NAMED_GROUPS)}")
    return NAMED_GROUPS[name]()


# --- subgroup toolkit; subgroups are frozensets of element ids ---


def subgroup_closure(G, gens) -> frozenset:
    members = {G.identity}
    gens = [g for g in set(gens)]
    frontier = [G.identity]
    for g in gens:
        if g not in members:
            members.add(g)
            frontier.append(g)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.mul(x, g)
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(members)


def is_subgroup(G, S) -> bool:
    return G.identity in S and all(G.mul(a, b) in S for a in S for b in S)


def normal_closure(G, gens) -> frozenset:
    conj = {G.conjugate(g, x) for x in gens for g in range(G.order)}
    return subgroup_closure(G, conj)


def is_normal(G, S) -> bool:
    return all(G.conjugate(g, x) in S for x in S for g in range(G.order))


def commutator_subgroup(G, A, B) -> frozenset:
    return subgroup_closure(G, {G.commutator(a, b) for a in A for b in B})


def power_subgroup(G, S, k: int) -> frozenset:
    return subgroup_closure(G, {G.power(x, k) for x in S})


def center(G) -> frozenset:
    n = G.order
    return frozenset(
        x for x in range(n) if all(G.mul(x, y) == G.mul(y, x) for y in range(n))
    )


def lower_central_series_sets(G) -> list[frozenset]:
    full = frozenset(range(G.order))
    terms = [full]
    while len(terms[-1]) > 1:
        nxt = commutator_subgroup(G, terms[-1], full)
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    return terms


def nilpotency_class(G) -> int | None:
    terms = lower_central_series_sets(G)
    return len(terms) - 1 if len(terms[-1]) == 1 else None


def derived_series_sets(G) -> list[frozenset]:
    terms = [frozenset(range(G.order))]
    while len(terms[-1]) > 1:
        nxt = commutator_subgroup(G, terms[-1], terms[-1])
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    return terms


def derived_length(G) -> int | None:
    terms = derived_series_sets(G)
    return len(terms) - 1 if len(terms[-1]) == 1 else None


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def sylow_subgroup(G, p: int) -> frozenset:
    """One Sylow p-subgroup, grown by closure extensions."""
    if not is_prime(p):
        raise InputError("p must be prime")
    part = p ** factorize(G.order).get(p, 0)
    P = frozenset({G.identity})
    while len(P) < part:
        for x in range(G.order):
            if x in P or not _is_power_of(G.element_order(x), p):
                continue
            K = subgroup_closure(G, set(P) | {x})
            if len(K) > len(P) and _is_power_of(len(K), p):
                P = K
                break
        else:
            raise RuntimeError("sylow extension failed")
    return P


def all_sylow_subgroups(G, p: int) -> list[frozenset]:
    """Every Sylow p-subgroup, as the conjugates of one of them."""
    P = sylow_subgroup(G, p)
    out = {frozenset(G.conjugate(g, x) for x in P) for g in range(G.order)}
    return sorted(out, key=sorted)


def all_subgroups(G) -> list[frozenset]:
    """The full subgroup lattice, by closure over one-element extensions."""
    if G.order > EXHAUSTIVE_CAP:
        raise CapacityError(f"subgroup enumeration capped at order {EXHAUSTIVE_CAP}")
    trivial = frozenset({G.identity})
    known = {trivial}
    queue = [trivial]
    while queue:
        H = queue.pop()
        for x in range(G.order):
            if x in H:
                continue
            K = subgroup_closure(G, set(H) | {x})
            if K not in known:
                known.add(K)
                queue.append(K)
    return sorted(known, key=lambda s: (len(s), sorted(s)))


def invariant_subgroups(G, automorphisms) -> list[frozenset]:
    autos = [tuple(a) for a in automorphisms]
    return [
        S for S in all_subgroups(G)
        if all(frozenset(a[x] for x in S) == S for a in autos)
    ]


def invariant_normal_subgroups(G, automorphisms) -> list[frozenset]:
    return [S for S in invariant_subgroups(G, automorphisms) if is_normal(G, S)]


def minimal_generator_count(G, S) -> int:
    if len(S) == 1:
        return 0
    elems = sorted(set(S) - {G.identity})
    for k in range(1, len(elems) + 1):
        for combo in itertools.combinations(elems, k):
            if len(subgroup_closure(G, combo)) == len(S):
                return k
    raise RuntimeError("generator search failed")


def group_rank(G) -> int:
    """Max over subgroups of the minimal generator count; exhaustive."""
    return max(minimal_generator_count(G, S) for S in all_subgroups(G))


def exponent_of_subset(G, S) -> int:
    out = 1
    for x in S:
        out = math.lcm(out, G.element_order(x))
    return out


# --- quotients and restrictions ---


def quotient_group(G, N) -> tuple[FiniteGroup, tuple[int, ...], tuple[int, ...]]:
    """(G/N, coset id per element, representative per coset)."""
    N = frozenset(N)
    if not is_subgroup(G, N):
        raise InputError("N is not a subgroup")
    if not is_normal(G, N):
        raise InputError("N is not normal")
    coset_of = [-1] * G.order
    reps = []
    for x in range(G.order):
        if coset_of[x] >= 0:
            continue
        idx = len(reps)
        reps.append(x)
        for t in N:
            coset_of[G.mul(x, t)] = idx
    q = len(reps)
    table = [
        [coset_of[G.mul(reps[a], reps[b])] for b in range(q)] for a in range(q)
    ]
    return FiniteGroup(table), tuple(coset_of), tuple(reps)


def induced_automorphism(G, N, coset_of, reps, sigma) -> tuple[int, ...]:
    """Push sigma through the projection onto G/N."""
    if frozenset(sigma[x] for x in N) != frozenset(N):
        raise InputError("the kernel is not invariant under sigma")
    return tuple(coset_of[sigma[r]] for r in reps)


def subgroup_as_group(G, S) -> tuple[FiniteGroup, tuple[int, ...]]:
    """Reindex a subgroup as its own FiniteGroup; returns (H, element ids)."""
    elems = sorted(S)
    index = {x: i for i, x in enumerate(elems)}
    for a in elems:
        for b in elems:
            if G.mul(a, b) not in index:
                raise InputError("the set is not closed under multiplication")
    table = [[index[G.mul(a, b)] for b in elems] for a in elems]
    return FiniteGroup(table), tuple(elems)


def restrict_automorphism(sigma, elems) -> tuple[int, ...]:
    index = {x: i for i, x in enumerate(elems)}
    out = []
    for x in elems:
        if sigma[x] not in index:
            raise InputError("the set is not invariant under sigma")
        out.append(index[sigma[x]])
    return tuple(out)


# --- automorphism actions ---


def is_automorphism(G, perm) -> bool:
    n = G.order
    if len(perm) != n or set(perm) != set(range(n)):
        return False
    p = np.asarray(perm, dtype=np.int64)
    t = np.asarray(G._table, dtype=np.int64)
    return bool(np.array_equal(p[t], t[np.ix_(p, p)]))


@dataclass(frozen=True)
class FrobeniusAction:
    """An order-n automorphism f twisted by an order-q automorphism h with
    h f h^-1 = f^r; construct through make_frobenius_action to enforce the
    invariants (build_field_action may return flagged non-conforming ones)."""

    f: tuple[int, ...]
    h: tuple[int, ...]
    params: FrobeniusParams


def frobenius_condition_holds(f, h, n: int, q: int) -> bool:
    """No nontrivial power of h centralizes a nontrivial power of f."""
    ident = perm_identity(len(f))
    f_pows = [ident]
    for _ in range(n - 1):
        f_pows.append(perm_compose(f, f_pows[-1]))
    hi = ident
    for _ in range(1, q):
        hi = perm_compose(h, hi)
        conj = perm_compose(hi, perm_compose(f, perm_inverse(hi)))
        acc = ident
        for j in range(1, n):
            acc = perm_compose(conj, acc)
            if acc == f_pows[j]:
                return False
    return True


def action_issues(G, f, h, params: FrobeniusParams) -> list[str]:
    """Invariant failures of a would-be action, empty when it conforms."""
    f, h = tuple(f), tuple(h)
    issues = []
    if not is_automorphism(G, f):
        issues.append("f is not an automorphism")
    if not is_automorphism(G, h):
        issues.append("h is not an automorphism")
    if issues:
        return issues
    of, oh = perm_order(f), perm_order(h)
    if of != params.n:
        issues.append(f"f has order {of}, params expect {params.n}")
    if oh != params.q:
        issues.append(f"h has order {oh}, params expect {params.q}")
    if perm_compose(h, perm_compose(f, perm_inverse(h))) != perm_power(f, params.r):
        issues.append("h f h^-1 differs from f^r")
    if not frobenius_condition_holds(f, h, params.n, params.q):
        issues.append("a nontrivial power of h centralizes a nontrivial power of f")
    return issues


def make_frobenius_action(G, f, h, params: FrobeniusParams) -> FrobeniusAction:
    issues = action_issues(G, f, h, params)
    if issues:
        raise InputError("; ".join(issues))
    return FrobeniusAction(tuple(f), tuple(h), params)


def action_from_json(G, data) -> FrobeniusAction:
    params = FrobeniusParams(int(data["n"]), int(data["q"]), int(data["r"]))
    return make_frobenius_action(G, tuple(data["f"]), tuple(data["h"]), params)


def fixed_points(G, automorphisms) -> frozenset:
    """Element ids fixed by every listed automorphism."""
    autos = [tuple(a) for a in automorphisms]
    return frozenset(
        x for x in range(G.order) if all(a[x] == x for a in autos)
    )


# --- the field-based action family ---


def _fpp(poly, p: int) -> tuple[int, ...]:
    return poly_trim([c % p for c in poly])


def _fpp_divmod(a, b, p: int):
    b = _fpp(b, p)
    if not b:
        raise InputError("polynomial division by zero")
    inv_lc = pow(b[-1], -1, p)
    rem = list(_fpp(a, p))
    quo = [0] * max(len(rem) - len(b) + 1, 0)
    while len(rem) >= len(b):
        c = rem[-1] * inv_lc % p
        k = len(rem) - len(b)
        quo[k] = c
        for i, z in enumerate(b):
            rem[k + i] = (rem[k + i] - c * z) % p
        while rem and rem[-1] == 0:
            rem.pop()
    return poly_trim(quo), tuple(rem)


def _fpp_mulmod(a, b, g, p: int):
    return _fpp_divmod(poly_mul(a, b), g, p)[1]


def _fpp_powmod(base, e: int, g, p: int):
    acc = _fpp((1,), p)
    base = _fpp_divmod(base, g, p)[1]
    while e:
        if e & 1:
            acc = _fpp_mulmod(acc, base, g, p)
        base = _fpp_mulmod(base, base, g, p)
        e >>= 1
    return acc


def _fpp_gcd(a, b, p: int):
    a, b = _fpp(a, p), _fpp(b, p)
    while b:
        a, b = b, _fpp_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = tuple(c * inv % p for c in a)
    return a


def _irreducible_poly(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible of prime degree k over F_p, counter order."""
    x = (0, 1)
    for counter in range(p**k):
        digits, c = [], counter
        for _ in range(k):
            digits.append(c % p)
            c //= p
        g = tuple(digits) + (1,)
        if _fpp_powmod(x, p**k, g, p) != x:
            continue
        diff = _fpp(poly_add(_fpp_powmod(x, p, g, p), poly_neg(x)), p)
        if len(_fpp_gcd(diff, g, p)) == 1:
            return g
    raise RuntimeError("no irreducible polynomial found")


@dataclass(frozen=True)
class FieldActionResult:
    """Additive group of GF(p^k) with multiplication-by-generator f and
    the p-power map h; flags record which hypotheses the triple meets."""

    group: FiniteGroup
    action: FrobeniusAction
    prim_ok: bool
    frobenius_ok: bool
    poly: tuple[int, ...]
    generator: int


def build_field_action(p: int, k: int) -> FieldActionResult:
    if not is_prime(p):
        raise InputError("p must be prime")
    if not is_prime(k):
        raise InputError("k must be prime")
    size = p**k
    if size > TABLE_CAP:
        raise CapacityError(f"field size {size} exceeds the table cap {TABLE_CAP}")
    g = _irreducible_poly(p, k)

    def decode(a):
        digits = []
        for _ in range(k):
            digits.append(a % p)
            a //= p
        return tuple(digits)

    def encode(digits):
        out = 0
        for d in reversed(digits):
            out = out * p + d
        return out

    def from_poly(poly):
        poly = tuple(poly) + (0,) * (k - len(poly))
        return encode(poly[:k])

    table = [
        [encode(tuple((x + y) % p for x, y in zip(decode(a), decode(b))))
         for b in range(size)]
        for a in range(size)
    ]
    group = FiniteGroup(table)

    def fmul(a, b):
        return from_poly(_fpp_mulmod(decode(a), decode(b), g, p))

    def fpow(a, e):
        return from_poly(_fpp_powmod(decode(a), e, g, p))

    n = size - 1
    one = from_poly((1,))
    gen = next(
        cand for cand in range(1, size)
        if all(fpow(cand, n // ell) != one for ell in sorted(factorize(n)))
    )
    f = tuple(fmul(gen, x) for x in range(size))
    h = tuple(fpow(x, p) for x in range(size))
    params = FrobeniusParams(n, k, p)
    # multiplication and the p-power map are additive; orders and the
    # twist relation hold by field arithmetic
    assert is_automorphism(group, f) and is_automorphism(group, h)
    assert perm_order(f) == n and perm_order(h) == k
    assert perm_compose(h, perm_compose(f, perm_inverse(h))) == perm_power(f, p)
    return FieldActionResult(
        group=group,
        action=FrobeniusAction(f, h, params),
        prim_ok=params.passes_prim(),
        frobenius_ok=frobenius_condition_holds(f, h, n, k),
        poly=g,
        generator=gen,
    )


# --- fixed-point verification ---


def _report(name, t0, status, witness=None, reason=None) -> VerificationReport:
    return VerificationReport(name, status, witness, reason, time.perf_counter() - t0)


def _fixed_free(G, action) -> tuple[bool, int]:
    fixed = fixed_points(G, (action.f,))
    return fixed == frozenset({G.identity}), len(fixed)


def verify_order_formula(G, action) -> VerificationReport:
    """|G| must equal |C_G(H)|^q when C_G(F) is trivial."""
    t0 = time.perf_counter()
    ok, cf = _fixed_free(G, action)
    if not ok:
        return _report("order-formula", t0, INAPPLICABLE,
                       {"fixed_by_f": cf}, "C_G(F) is not trivial")
    ch = fixed_points(G, (action.h,))
    witness = {"order": G.order, "fixed_by_h": len(ch), "q": action.params.q}
    if G.order == len(ch) ** action.params.q:
        return _report("order-formula", t0, PASS, witness)
    return _report("order-formula", t0, VIOLATION, witness,
                   "group order is not the q-th power of the fixed-subgroup order")


def verify_coverage(G, action) -> VerificationReport:
    """Fixed points of every qualifying quotient equal the projected fixed
    points; quantifies over all invariant normal N with trivial C_N(F)."""
    t0 = time.perf_counter()
    f, h = action.f, action.h
    ch = fixed_points(G, (h,))
    checked = 0
    for N in invariant_normal_subgroups(G, (f, h)):
        if any(f[x] == x for x in N if x != G.identity):
            continue
        Q, coset_of, reps = quotient_group(G, N)
        hbar = induced_automorphism(G, N, coset_of, reps, h)
        quotient_fixed = fixed_points(Q, (hbar,))
        projected = frozenset(coset_of[x] for x in ch)
        if quotient_fixed != projected:
            return _report(
                "coverage", t0, VIOLATION,
                {"subgroup": sorted(N),
                 "quotient_fixed": sorted(quotient_fixed),
                 "projected_fixed": sorted(projected)},
                "quotient fixed points differ from the projected fixed points")
        checked += 1
    return _report("coverage", t0, PASS, {"quotients_checked": checked})


def verify_generation(G, action) -> VerificationReport:
    """The f-translates of C_G(H) must generate G."""
    t0 = time.perf_counter()
    ok, cf = _fixed_free(G, action)
    if not ok:
        return _report("generation", t0, INAPPLICABLE,
                       {"fixed_by_f": cf}, "C_G(F) is not trivial")
    ch = fixed_points(G, (action.h,))
    gens = set()
    translate = perm_identity(G.order)
    for _ in range(action.params.n):
        gens.update(translate[x] for x in ch)
        translate = perm_compose(action.f, translate)
    generated = subgroup_closure(G, gens)
    witness = {"generated_order": len(generated), "order": G.order}
    if len(generated) == G.order:
        return _report("generation", t0, PASS, witness)
    return _report("generation", t0, VIOLATION, witness,
                   "translates of the fixed subgroup do not generate the group")


def verify_invariant_sylow(G, action) -> VerificationReport:
    """Exactly one Sylow p-subgroup per prime is invariant under f and h."""
    t0 = time.perf_counter()
    ok, cf = _fixed_free(G, action)
    if not ok:
        return _report("invariant-sylow", t0, INAPPLICABLE,
                       {"fixed_by_f": cf}, "C_G(F) is not trivial")
    f, h = action.f, action.h
    counts = {}
    for p in sorted(factorize(G.order)):
        sylows = all_sylow_subgroups(G, p)
        invariant = [
            S for S in sylows
            if frozenset(f[x] for x in S) == S and frozenset(h[x] for x in S) == S
        ]
        counts[str(p)] = len(invariant)
        if len(invariant) != 1:
            return _report(
                "invariant-sylow", t0, VIOLATION,
                {"prime": p, "invariant_count": len(invariant),
                 "sylow_count": len(sylows)},
                "the invariant Sylow subgroup is not unique")
    return _report("invariant-sylow", t0, PASS, {"invariant_counts": counts})


def verify_nilpotency_transfer(G, action) -> VerificationReport:
    """Nilpotency of C_G(H) must force nilpotency of G."""
    t0 = time.perf_counter()
    ok, cf = _fixed_free(G, action)
    if not ok:
        return _report("nilpotency-transfer", t0, INAPPLICABLE,
                       {"fixed_by_f": cf}, "C_G(F) is not trivial")
    ch = fixed_points(G, (action.h,))
    H, _ = subgroup_as_group(G, ch)
    fixed_class = nilpotency_class(H)
    if fixed_class is None:
        return _report("nilpotency-transfer", t0, PASS,
                       {"fixed_nilpotent": False})
    group_class = nilpotency_class(G)
    witness = {"fixed_class": fixed_class, "group_class": group_class}
    if group_class is None:
        return _report("nilpotency-transfer", t0, VIOLATION, witness,
                       "the fixed subgroup is nilpotent but the group is not")
    return _report("nilpotency-transfer", t0, PASS, witness)


def exponent_relation_report(G, action) -> VerificationReport:
    """Empirical record: exponents of C_G(H) and of G side by side."""
    t0 = time.perf_counter()
    ok, cf = _fixed_free(G, action)
    if not ok:
        return _report("exponent-relation", t0, INAPPLICABLE,
                       {"fixed_by_f": cf}, "C_G(F) is not trivial")
    ch = fixed_points(G, (action.h,))
    return _report("exponent-relation", t0, PASS,
                   {"fixed_exponent": exponent_of_subset(G, ch),
                    "group_exponent": G.exponent()})


# --- free-module criterion over F_p[x] ---


def _ea_coordinates(G, p: int):
    """Greedy basis and elementwise coordinates of an elementary abelian
    group; coordinates are tuples over range(p)."""
    basis = []
    span = frozenset({G.identity})
    for x in range(G.order):
        if x not in span:
            basis.append(x)
            span = subgroup_closure(G, basis)
    assert p ** len(basis) == G.order
    coords_of = {}
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        e = G.identity
        for b, c in zip(basis, coeffs):
            e = G.mul(e, G.power(b, c))
        assert e not in coords_of
        coords_of[e] = coeffs
    return tuple(basis), coords_of


def _poly_invariant_factors(mat, p: int) -> list[tuple[int, ...]]:
    """Nonunit diagonal of the Smith form over F_p[x], monic and in
    divisibility order."""
    size = len(mat)
    m = [[_fpp(entry, p) for entry in row] for row in mat]
    out = []
    k = 0
    while k < size:
        pivot = None
        for i in range(k, size):
            for j in range(k, size):
                if m[i][j] and (pivot is None or len(m[i][j]) < len(m[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        m[k], m[pi] = m[pi], m[k]
        for row in m:
            row[k], row[pj] = row[pj], row[k]
        inv_lc = pow(m[k][k][-1], -1, p)
        m[k] = [tuple(c * inv_lc % p for c in f) for f in m[k]]
        for i in range(k + 1, size):
            if m[i][k]:
                q, _ = _fpp_divmod(m[i][k], m[k][k], p)
                m[i] = [
                    _fpp(poly_add(m[i][j], poly_neg(poly_mul(q, m[k][j]))), p)
                    for j in range(size)
                ]
        for j in range(k + 1, size):
            if m[k][j]:
                q, _ = _fpp_divmod(m[k][j], m[k][k], p)
                for i in range(k, size):
                    m[i][j] = _fpp(
                        poly_add(m[i][j], poly_neg(poly_mul(q, m[i][k]))), p
                    )
        if any(m[i][k] for i in range(k + 1, size)) or any(
            m[k][j] for j in range(k + 1, size)
        ):
            continue
        offender = None
        for i in range(k + 1, size):
            if any(
                m[i][j] and _fpp_divmod(m[i][j], m[k][k], p)[1]
                for j in range(k + 1, size)
            ):
                offender = i
                break
        if offender is not None:
            m[k] = [_fpp(poly_add(m[k][j], m[offender][j]), p) for j in range(size)]
            continue
        out.append(m[k][k])
        k += 1
    assert k == size, "characteristic matrices have full rank"
    return [f for f in out if len(f) > 1]


def free_module_check(group, h, q: int) -> VerificationReport:
    """Invariant-factor test: the module is free for a cyclic order-q
    action iff every nonunit invariant factor of h equals x^q - 1."""
    t0 = time.perf_counter()
    if q < 1:
        raise InputError("q must be positive")
    if group.order == 1:
        return _report("free-module", t0, PASS,
                       {"dim": 0, "free": True, "rank": 0, "invariant_factors": []})
    fac = factorize(group.order)
    if len(fac) != 1:
        raise InputError("the module must be an elementary abelian p-group")
    p = next(iter(fac))
    if not group.is_abelian() or any(
        group.element_order(x) != p
        for x in range(group.order) if x != group.identity
    ):
        raise InputError("the module must be elementary abelian")
    h = tuple(h)
    if not is_automorphism(group, h):
        raise InputError("h is not an automorphism")
    if perm_power(h, q) != perm_identity(group.order):
        raise InputError("h^q is not the identity")
    basis, coords_of = _ea_coordinates(group, p)
    dim = len(basis)
    matrix = [[coords_of[h[b]][i] for b in basis] for i in range(dim)]
    char = [
        [
            _fpp(((-matrix[i][j]) % p, 1) if i == j else ((-matrix[i][j]) % p,), p)
            for j in range(dim)
        ]
        for i in range(dim)
    ]
    factors = _poly_invariant_factors(char, p)
    target = _fpp((-1,) + (0,) * (q - 1) + (1,), p)
    free = all(f == target for f in factors)
    witness = {
        "dim": dim,
        "free": free,
        "rank": dim // q if free else None,
        "invariant_factors": [list(f) for f in factors],
    }
    if free:
        ring = PrimeFieldRing(p)
        shifted = [
            [(matrix[i][j] - (1 if i == j else 0)) % p for j in range(dim)]
            for i in range(dim)
        ]
        fixed_dim = len(field_kernel(ring, shifted, dim))
        witness["fixed_dim"] = fixed_dim
        if fixed_dim * q != dim:
            return _report("free-module", t0, VIOLATION, witness,
                           "free module with the wrong fixed-space dimension")
    return _report("free-module", t0, PASS, witness)


# --- dimension-subgroup filtration ---


@dataclass(frozen=True)
class Filtration:
    """Descending chain D_1 over D_2 over ... ending at the trivial
    subgroup; the trivial group owns the empty chain."""

    prime: int
    terms: tuple[frozenset, ...]

    def dims(self) -> tuple[int, ...]:
        out = []
        for a, b in zip(self.terms, self.terms[1:]):
            ratio = len(a) // len(b)
            d = 0
            while ratio > 1:
                assert ratio % self.prime == 0
                ratio //= self.prime
                d += 1
            out.append(d)
        return tuple(out)


def _check_filtration_laws(G, filt: Filtration) -> None:
    terms, p = filt.terms, filt.prime
    m = len(terms)
    trivial = frozenset({G.identity})

    def term(i):
        return terms[i - 1] if i <= m else trivial

    for i in range(1, m):
        if not term(i) >= term(i + 1):
            raise RuntimeError("filtration is not descending")
    for i in range(1, m + 1):
        for j in range(i, m + 1):
            if not commutator_subgroup(G, term(i), term(j)) <= term(i + j):
                raise RuntimeError(f"[D_{i}, D_{j}] escapes D_{i + j}")
        if not power_subgroup(G, term(i), p) <= term(p * i):
            raise RuntimeError(f"D_{i}^{p} escapes D_{p * i}")


def jz_filtration(G, p: int) -> Filtration:
    """D_i generated by the gamma_j(G)^(p^k) with j*p^k >= i."""
    if not is_prime(p):
        raise InputError("p must be prime")
    if G.order > 1 and set(factorize(G.order)) != {p}:
        raise InputError(f"the group is not a {p}-group")
    if G.order == 1:
        return Filtration(p, ())
    full = frozenset(range(G.order))
    gammas = [full]
    while len(gammas[-1]) > 1:
        nxt = commutator_subgroup(G, gammas[-1], full)
        if nxt == gammas[-1]:
            raise RuntimeError("a p-group must have a terminating central series")
        gammas.append(nxt)
    exponent = G.exponent()
    terms = []
    i = 1
    while True:
        gens: set[int] = set()
        for j, gamma in enumerate(gammas, start=1):
            if len(gamma) == 1:
                continue
            pk = 1
            while pk <= exponent:
                if j * pk >= i:
                    gens.update(G.power(x, pk) for x in gamma)
                    break  # larger powers land inside this piece
                pk *= p
        D = subgroup_closure(G, gens)
        terms.append(D)
        if len(D) == 1:
            break
        i += 1
        if i > len(gammas) * exponent + 2:
            raise RuntimeError("filtration failed to terminate")
    filt = Filtration(p, tuple(terms))
    _check_filtration_laws(G, filt)
    return filt


# --- the graded algebra of the filtration ---


@dataclass(frozen=True)
class _Component:
    degree: int
    basis: tuple[int, ...]
    coords_of: dict  # element id -> coordinate tuple over range(p)


def _build_component(G, degree: int, D, Dn, p: int) -> _Component:
    coset_of = {}
    reps = []
    for x in sorted(D):
        if x in coset_of:
            continue
        idx = len(reps)
        reps.append(x)
        for t in Dn:
            coset_of[G.mul(x, t)] = idx
    basis = []
    span = frozenset(Dn)
    for x in sorted(D):
        if x not in span:
            basis.append(x)
            span = subgroup_closure(G, set(basis) | set(Dn))
    assert p ** len(basis) == len(reps)
    coset_coords = {}
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        e = G.identity
        for b, c in zip(basis, coeffs):
            e = G.mul(e, G.power(b, c))
        idx = coset_of[e]
        if idx in coset_coords:
            raise RuntimeError("filtration quotient is not elementary abelian")
        coset_coords[idx] = coeffs
    coords_of = {x: coset_coords[coset_of[x]] for x in D}
    return _Component(degree, tuple(basis), coords_of)


class DLAlgebra:
    """Graded algebra over F_p on the filtration quotients, with the
    bracket induced by group commutators; lp is the subalgebra generated
    by the degree-1 block."""

    def __init__(self, group, filtration, lie, degrees, components, block_start, lp):
        self.group = group
        self.filtration = filtration
        self.lie = lie
        self.degrees = degrees
        self.lp = lp
        self._components = components
        self._block_start = block_start

    def depth(self, x: int) -> int | None:
        """Largest i with x in D_i; None for the identity."""
        if x == self.group.identity:
            return None
        d = 0
        for i, D in enumerate(self.filtration.terms, start=1):
            if x not in D:
                break
            d = i
        return d

    def image(self, x: int) -> tuple[int | None, list]:
        """(depth, leading-coset coordinates); the identity maps to zero."""
        d = self.depth(x)
        vec = self.lie.zero_vector()
        if d is None:
            return None, vec
        comp = self._components[d]
        start = self._block_start[d]
        for t, c in enumerate(comp.coords_of[x]):
            vec[start + t] = self.lie.ring.canon(c)
        return d, vec


def _generated_subalgebra(L: GradedLieRing, seeds) -> Subspace:
    S = L.span(list(seeds))
    while True:
        gens = S.gens()
        nxt = S
        for u in gens:
            for v in gens:
                w = L.bracket(u, v)
                if not nxt.contains(w):
                    nxt = nxt.sum(L.span([w]))
        if nxt == S:
            return S
        S = nxt


def _check_bracket_welldefined(G, filt, components, block_start, info, lie) -> None:
    terms = filt.terms
    top = len(terms) - 1
    rank = lie.rank
    for a in range(rank):
        da, ea = info[a]
        members_a = [G.mul(ea, t) for t in terms[da]]
        for b in range(a + 1, rank):
            db, eb = info[b]
            expected = lie.structure_constant(a, b)
            target = da + db
            for x in members_a:
                for y in (G.mul(eb, t) for t in terms[db]):
                    c = G.commutator(x, y)
                    vec = [0] * rank
                    if target <= top:
                        start = block_start[target]
                        for t, cf in enumerate(components[target].coords_of[c]):
                            vec[start + t] = cf
                    if tuple(vec) != tuple(expected):
                        raise RuntimeError("bracket is not well defined on cosets")


def lazard_algebra(G, p: int) -> DLAlgebra:
    """Graded algebra on the filtration quotients; bracket well-definedness
    is recomputed across all coset representatives for small groups."""
    filt = jz_filtration(G, p)
    if not filt.terms:
        raise InputError("the trivial group has no graded pieces")
    terms = filt.terms
    top = len(terms) - 1
    ring = PrimeFieldRing(p)
    components = {}
    block_start = {}
    degrees: list[int] = []
    info = []
    for deg in range(1, top + 1):
        comp = _build_component(G, deg, terms[deg - 1], terms[deg], p)
        block_start[deg] = len(degrees)
        degrees.extend([deg] * len(comp.basis))
        info.extend((deg, b) for b in comp.basis)
        components[deg] = comp
    rank = len(degrees)
    brackets = {}
    for a in range(rank):
        da, ea = info[a]
        for b in range(a + 1, rank):
            db, eb = info[b]
            target = da + db
            if target > top:
                continue
            c = G.commutator(ea, eb)
            entry = {
                block_start[target] + t: cf
                for t, cf in enumerate(components[target].coords_of[c])
                if cf
            }
            if entry:
                brackets[(a, b)] = entry
    lie = GradedLieRing(ring, rank, brackets)
    report = validate(lie)
    assert report.valid, "commutator brackets must satisfy the Lie laws"
    if G.order <= WELLDEF_CAP:
        _check_bracket_welldefined(G, filt, components, block_start, info, lie)
    first_block = [
        lie.basis_vector(i) for i in range(rank) if degrees[i] == 1
    ]
    lp = _generated_subalgebra(lie, first_block)
    return DLAlgebra(G, filt, lie, tuple(degrees), components, block_start, lp)


def _mat_power(ring, mat, k: int):
    acc = mat_identity(ring, len(mat))
    base = [list(row) for row in mat]
    while k:
        if k & 1:
            acc = mat_mul(ring, acc, base)
        base = mat_mul(ring, base, base)
        k >>= 1
    return acc


def lazard_lemma_check(G, p: int) -> VerificationReport:
    """(ad x)^p = ad(x^p) on the graded algebra, for every group element,
    plus ad-nilpotency within each element's order."""
    t0 = time.perf_counter()
    dl = lazard_algebra(G, p)
    L = dl.lie
    ring = L.ring
    zero = [[ring.zero()] * L.rank for _ in range(L.rank)]
    for x in range(G.order):
        d, vec = dl.image(x)
        ad = L.ad_matrix(vec)
        ad_p = _mat_power(ring, ad, p)
        xp = G.power(x, p)
        dp, vec_p = dl.image(xp)
        if d is None or dp is None:
            expected = zero
        else:
            assert dp >= p * d, "power depths must respect the filtration"
            expected = L.ad_matrix(vec_p) if dp == p * d else zero
        if ad_p != expected:
            return _report("lazard-lemma", t0, VIOLATION, {"element": x},
                           "(ad x)^p differs from ad(x^p)")
        if _mat_power(ring, ad, G.element_order(x)) != zero:
            return _report("lazard-lemma", t0, VIOLATION,
                           {"element": x, "order": G.element_order(x)},
                           "ad-nilpotency index exceeds the element order")
    return _report("lazard-lemma", t0, PASS, {"elements": G.order})


def is_powerful(G, p: int) -> bool:
    """[G,G] inside G^p, with G^4 in place of G^p at p = 2."""
    if not is_prime(p):
        raise InputError("p must be prime")
    if G.order > 1 and set(factorize(G.order)) != {p}:
        raise InputError(f"the group is not a {p}-group")
    full = frozenset(range(G.order))
    derived = commutator_subgroup(G, full, full)
    return derived <= power_subgroup(G, full, 4 if p == 2 else p)


# --- Hausdorff-product groups ---


class BCHGroup:
    """Group law x*y = x + y + [x,y]/2 + [x,[x,y]]/12 - [y,[x,y]]/12 on the
    coordinate vectors of a nilpotent Lie ring of class at most 3 over
    Z/p^m with p at least 5; elements are mixed-radix ids, no table."""

    def __init__(self, lie: GradedLieRing):
        if lie.ring.kind not in ("IntegersMod", "PrimeField"):
            raise InputError("coefficients must come from Z/p^m")
        modulus = lie.ring.modulus
        fac = factorize(modulus)
        if len(fac) != 1:
            raise InputError("the modulus must be a prime power")
        p = next(iter(fac))
        if p < 5:
            raise InputError("p must be at least 5 so 2 and 3 are invertible")
        cls = lower_central_series(lie).nilpotency_class()
        if cls is None or cls > 3:
            raise InputError("the Lie ring must be nilpotent of class at most 3")
        self.lie = lie
        self.prime = p
        self.modulus = modulus
        self.rank = lie.rank
        self.order = modulus**lie.rank
        self.identity = 0
        self.lie_class = cls
        self._half = pow(2, -1, modulus)
        self._twelfth = pow(12, -1, modulus)
        self._sc = {}
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                vec = tuple(int(c) for c in lie.structure_constant(i, j))
                if any(vec):
                    self._sc[(i, j)] = vec
        if self.order <= EXHAUSTIVE_CAP:
            self.to_finite_group()  # full table validation, associativity included
        else:
            rng = random.Random(0xBC4)
            for _ in range(2000):
                a, b, c = (rng.randrange(self.order) for _ in range(3))
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                    raise RuntimeError("Hausdorff product is not associative")

    def decode(self, a: int) -> tuple[int, ...]:
        digits = []
        for _ in range(self.rank):
            digits.append(a % self.modulus)
            a //= self.modulus
        return tuple(digits)

    def encode(self, vec) -> int:
        out = 0
        for c in reversed(vec):
            out = out * self.modulus + c % self.modulus
        return out

    def _bracket(self, x, y) -> list[int]:
        m = self.modulus
        out = [0] * self.rank
        for (i, j), vec in self._sc.items():
            c = (x[i] * y[j] - x[j] * y[i]) % m
            if c:
                for t, s in enumerate(vec):
                    if s:
                        out[t] = (out[t] + c * s) % m
        return out

    def mul(self, a: int, b: int) -> int:
        x, y = self.decode(a), self.decode(b)
        z = self._bracket(x, y)
        xz = self._bracket(x, z)
        yz = self._bracket(y, z)
        m, half, tw = self.modulus, self._half, self._twelfth
        return self.encode(tuple(
            (x[t] + y[t] + half * z[t] + tw * xz[t] - tw * yz[t]) % m
            for t in range(self.rank)
        ))

    def inv(self, a: int) -> int:
        return self.encode(tuple(-c % self.modulus for c in self.decode(a)))

    def conjugate(self, g: int, x: int) -> int:
        return self.mul(self.mul(g, x), self.inv(g))

    def commutator(self, x: int, y: int) -> int:
        return self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        acc, base = self.identity, a
        while k:
            if k & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            k >>= 1
        return acc

    def element_order(self, a: int) -> int:
        o, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            o += 1
        return o

    def transport(self, matrix) -> tuple[int, ...]:
        """Pointwise image of a Lie automorphism as a permutation of ids."""
        issues = automorphism_issues(self.lie, matrix)
        if issues:
            raise InputError("; ".join(issues))
        R = self.lie.ring
        perm = []
        for a in range(self.order):
            img = mat_apply(R, matrix, [R.canon(c) for c in self.decode(a)])
            perm.append(self.encode(tuple(int(c) for c in img)))
        return tuple(perm)

    def to_finite_group(self) -> FiniteGroup:
        if self.order > TABLE_CAP:
            raise CapacityError(f"order {self.order} exceeds the table cap")
        return FiniteGroup(
            [[self.mul(a, b) for b in range(self.order)] for a in range(self.order)]
        )


def bch_generators(G: BCHGroup) -> tuple[int, ...]:
    """Ids of the coordinate basis vectors; they generate the group."""
    return tuple(G.modulus**i for i in range(G.rank))


def _normal_closure_by_generators(G, seed, gens) -> frozenset:
    conj_gens = list(gens) + [G.inv(g) for g in gens]
    current = subgroup_closure(G, seed)
    while True:
        extra = {
            G.conjugate(g, x) for g in conj_gens for x in current
        }
        if extra <= current:
            return current
        current = subgroup_closure(G, set(current) | extra)


def bch_nilpotency_class(G: BCHGroup, cap: int = 10) -> int:
    """Nilpotency class from the generator-seeded central series."""
    gens = bch_generators(G)
    seed = {G.commutator(a, b) for a in gens for b in gens}
    gamma = _normal_closure_by_generators(G, seed, gens)
    cls = 1
    while len(gamma) > 1:
        cls += 1
        if cls > cap:
            raise CapacityError("central series did not terminate within the cap")
        seed = {G.commutator(x, g) for x in gamma for g in gens}
        gamma = _normal_closure_by_generators(G, seed, gens)
    return cls


@dataclass(frozen=True)
class LazardGroup:
    group: BCHGroup
    transported: tuple[tuple[int, ...], ...]
    lie_class: int


def lazard_group_from_lie(L: GradedLieRing, automorphisms=()) -> LazardGroup:
    """Hausdorff-product group on L plus the pointwise transports of the
    given Lie automorphisms; transports are rechecked as homomorphisms,
    exhaustively for small orders and on seeded samples above."""
    G = BCHGroup(L)
    perms = []
    for matrix in automorphisms:
        perm = G.transport(matrix)
        if G.order <= EXHAUSTIVE_CAP:
            pairs = itertools.product(range(G.order), repeat=2)
        else:
            rng = random.Random(0x7A21)
            pairs = (
                (rng.randrange(G.order), rng.randrange(G.order))
                for _ in range(1000)
            )
        for a, b in pairs:
            if perm[G.mul(a, b)] != G.mul(perm[a], perm[b]):
                raise RuntimeError("transported map is not a homomorphism")
        perms.append(perm)
    return LazardGroup(G, tuple(perms), G.lie_class)
