"""
Reconnaissance de petits groupes finis.

Un groupe est donné par ses éléments et une multiplication. Ce module:
1. Calcule une empreinte: ordre, multiensemble des ordres d'éléments,
   abélianisé (ordre et ordres d'éléments), ordre du centre
2. La compare aux empreintes d'un catalogue de groupes concrets (cycliques,
   ℤ₂ᵏ, diédraux, A₄, S₄, A₅, produits directs, D₆≀ℤ₂)
3. Retourne un FiniteGroupId, ou RawInvariants si rien ne correspond
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from src.config import KERNEL_CONFIG
from src.exceptions import NotClosedError

Table = List[List[int]]
Fingerprint = Tuple


@dataclass(frozen=True)
class FiniteGroupId:
    """
    Type d'isomorphisme reconnu.

    kind: cyclic (n), elem_abelian2 (n = k), dihedral (n = ordre), tetra,
    oct, icosa, d6_wreath_z2, product (factors), raw (invariants).
    """
    kind: str
    n: int = 0
    factors: Tuple["FiniteGroupId", ...] = ()
    invariants: Optional[Tuple] = None

    @property
    def order(self) -> int:
        if self.kind == "cyclic":
            return self.n
        if self.kind == "elem_abelian2":
            return 2 ** self.n
        if self.kind == "dihedral":
            return self.n
        if self.kind == "product":
            result = 1
            for f in self.factors:
                result *= f.order
            return result
        if self.kind == "raw":
            return self.invariants[0]
        return {"tetra": 12, "oct": 24, "icosa": 60, "d6_wreath_z2": 72}[self.kind]

    @property
    def label(self) -> str:
        if self.kind == "cyclic":
            return "1" if self.n == 1 else f"Z{self.n}"
        if self.kind == "elem_abelian2":
            return f"Z2^{self.n}"
        if self.kind == "dihedral":
            return f"D{self.n}"
        if self.kind == "product":
            return "x".join(f.label for f in self.factors)
        if self.kind == "raw":
            return f"raw(order={self.invariants[0]})"
        return {"tetra": "T", "oct": "O", "icosa": "I", "d6_wreath_z2": "D6wrZ2"}[self.kind]

    def to_json(self) -> Dict:
        if self.kind == "cyclic":
            return {"type": "cyclic", "n": self.n}
        if self.kind == "elem_abelian2":
            return {"type": "elem_abelian2", "k": self.n}
        if self.kind == "dihedral":
            return {"type": "dihedral", "order": self.n}
        if self.kind == "product":
            return {"type": "product", "factors": [f.to_json() for f in self.factors]}
        if self.kind == "raw":
            order, orders, ab_order, ab_orders, center = self.invariants
            return {
                "type": "raw",
                "order": order,
                "element_orders": [list(x) for x in orders],
                "abelianization": {"order": ab_order, "element_orders": [list(x) for x in ab_orders]},
                "center": center,
            }
        return {"type": self.kind}

    def __str__(self) -> str:
        return self.label


def Cyclic(n: int) -> FiniteGroupId:
    return FiniteGroupId("cyclic", n)


def ElemAbelian2(k: int) -> FiniteGroupId:
    return FiniteGroupId("elem_abelian2", k)


def Dihedral(order: int) -> FiniteGroupId:
    return FiniteGroupId("dihedral", order)


TRIVIAL = Cyclic(1)
TETRA = FiniteGroupId("tetra")
OCT = FiniteGroupId("oct")
ICOSA = FiniteGroupId("icosa")
D6_WREATH_Z2 = FiniteGroupId("d6_wreath_z2")


def Product(*factors: FiniteGroupId) -> FiniteGroupId:
    flat: List[FiniteGroupId] = []
    for f in factors:
        flat.extend(f.factors if f.kind == "product" else [f])
    flat = [f for f in flat if f != TRIVIAL]
    if not flat:
        return TRIVIAL
    if len(flat) == 1:
        return flat[0]
    return FiniteGroupId("product", factors=tuple(flat))


# ============================================================================
# Tables de Cayley
# ============================================================================

def cayley_table(elements: Sequence[Hashable], mul: Callable) -> Table:
    """
    Table de multiplication sur les indices de `elements`.

    Raises:
        NotClosedError: si un produit sort de l'ensemble
    """
    index = {x: k for k, x in enumerate(elements)}
    table = []
    for a in elements:
        row = []
        for b in elements:
            c = mul(a, b)
            if c not in index:
                raise NotClosedError("product leaves the element set")
            row.append(index[c])
        table.append(row)
    return table


def _identity(table: Table) -> int:
    return next(k for k in range(len(table)) if table[k][k] == k)


def _orders(table: Table, one: int) -> List[int]:
    orders = []
    for x in range(len(table)):
        y, k = x, 1
        while y != one:
            y = table[y][x]
            k += 1
        orders.append(k)
    return orders


def _closure(table: Table, one: int, gens: Sequence[int]) -> List[int]:
    seen = {one}
    frontier = [one]
    gens = list(set(gens))
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = table[x][g]
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    return sorted(seen)


def fingerprint(table: Table) -> Fingerprint:
    """(ordre, ordres d'éléments, |G^ab|, ordres dans G^ab, |Z(G)|)."""
    n = len(table)
    one = _identity(table)
    orders = _orders(table, one)
    inverse = [next(y for y in range(n) if table[x][y] == one) for x in range(n)]

    commutators = {table[table[table[a][b]][inverse[a]]][inverse[b]] for a in range(n) for b in range(n)}
    derived = set(_closure(table, one, commutators))

    quotient_orders: Counter = Counter()
    for x in range(n):
        y, k = x, 1
        while y not in derived:
            y = table[y][x]
            k += 1
        quotient_orders[k] += 1
    ab_orders = tuple(sorted((k, c // len(derived)) for k, c in quotient_orders.items()))

    center = sum(1 for a in range(n) if all(table[a][b] == table[b][a] for b in range(n)))
    return (
        n,
        tuple(sorted(Counter(orders).items())),
        n // len(derived),
        ab_orders,
        center,
    )


# ============================================================================
# Catalogue de groupes concrets
# ============================================================================

def _perm_mul(a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
    # a∘b
    return tuple(a[i] for i in b)


def _perm_group(gens: List[Tuple[int, ...]]) -> List[Tuple[int, ...]]:
    one = tuple(range(len(gens[0])))
    seen = {one}
    frontier = [one]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = _perm_mul(x, g)
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    return sorted(seen)


def concrete(gid: FiniteGroupId) -> Tuple[List[Hashable], Callable]:
    """Réalisation concrète (éléments, multiplication) d'un type catalogué."""
    if gid.kind == "cyclic":
        n = gid.n
        return list(range(n)), lambda a, b: (a + b) % n
    if gid.kind == "elem_abelian2":
        return list(range(2 ** gid.n)), lambda a, b: a ^ b
    if gid.kind == "dihedral":
        k = gid.n // 2
        elems = [(r, s) for s in (0, 1) for r in range(k)]
        return elems, lambda a, b: ((a[0] + (b[0] if a[1] == 0 else -b[0])) % k, (a[1] + b[1]) % 2)
    if gid.kind == "tetra":
        return _perm_group([(1, 2, 0, 3), (0, 2, 3, 1)]), _perm_mul
    if gid.kind == "oct":
        return _perm_group([(1, 0, 2, 3), (1, 2, 3, 0)]), _perm_mul
    if gid.kind == "icosa":
        return _perm_group([(1, 2, 3, 4, 0), (1, 2, 0, 3, 4)]), _perm_mul
    if gid.kind == "d6_wreath_z2":
        base, mul = concrete(Dihedral(6))
        elems = [(a, b, t) for a in base for b in base for t in (0, 1)]

        def wreath_mul(x, y):
            a, b, t = x
            c, d, u = y
            if t == 0:
                return (mul(a, c), mul(b, d), u)
            return (mul(a, d), mul(b, c), 1 - u)
        return elems, wreath_mul
    if gid.kind == "product":
        parts = [concrete(f) for f in gid.factors]
        elems: List[Tuple] = [()]
        for part_elems, _ in parts:
            elems = [e + (x,) for e in elems for x in part_elems]
        muls = [m for _, m in parts]
        return elems, lambda a, b: tuple(m(x, y) for m, x, y in zip(muls, a, b))
    raise ValueError(f"no concrete model for {gid.kind}")


@lru_cache(maxsize=None)
def catalog_fingerprint(gid: FiniteGroupId) -> Fingerprint:
    elems, mul = concrete(gid)
    return fingerprint(cayley_table(elems, mul))


def _base_candidates(order: int) -> List[FiniteGroupId]:
    result: List[FiniteGroupId] = []
    if order >= 2:
        result.append(Cyclic(order))
    k = order.bit_length() - 1
    if order == 2 ** k and k >= 2:
        result.append(ElemAbelian2(k))
    if order % 2 == 0 and order >= 6:
        result.append(Dihedral(order))
    result += [g for g in (TETRA, OCT, ICOSA, D6_WREATH_Z2) if g.order == order]
    return result


def _products(order: int, max_factors: int, min_key: Tuple = ()) -> List[List[FiniteGroupId]]:
    """Factorisations ordonnées (clé croissante) en au plus max_factors facteurs."""
    if order == 1:
        return [[]]
    if max_factors == 0:
        return []
    out = []
    for d in range(2, order + 1):
        if order % d:
            continue
        for base in _base_candidates(d):
            key = (base.order, base.label)
            if key < min_key:
                continue
            for rest in _products(order // d, max_factors - 1, key):
                out.append([base] + rest)
    return out


@lru_cache(maxsize=None)
def candidates(order: int, max_factors: Optional[int] = None) -> Tuple[FiniteGroupId, ...]:
    """Types candidats d'un ordre donné, les plus simples d'abord."""
    if max_factors is None:
        max_factors = KERNEL_CONFIG["recognize_max_factors"]
    if order == 1:
        return (TRIVIAL,)
    result = list(_base_candidates(order))
    for factors in _products(order, max_factors):
        if len(factors) >= 2:
            gid = Product(*factors)
            if gid not in result:
                result.append(gid)
    return tuple(result)


# ============================================================================
# Reconnaissance
# ============================================================================

def recognize_table(table: Table) -> FiniteGroupId:
    """Premier candidat du catalogue ayant la même empreinte, sinon RawInvariants."""
    fp = fingerprint(table)
    for gid in candidates(fp[0]):
        if catalog_fingerprint(gid) == fp:
            return gid
    return FiniteGroupId("raw", invariants=fp)


def recognize(elements: Sequence[Hashable], mul: Callable) -> FiniteGroupId:
    """
    Type d'isomorphisme d'un groupe fini donné par ses éléments.

    Args:
        elements: Ensemble fini fermé
        mul: Multiplication (a, b) ↦ ab
    """
    return recognize_table(cayley_table(list(elements), mul))


def RawInvariants(elements: Sequence[Hashable], mul: Callable) -> FiniteGroupId:
    return FiniteGroupId("raw", invariants=fingerprint(cayley_table(list(elements), mul)))


def group_fingerprint(gid: FiniteGroupId) -> Fingerprint:
    if gid.kind == "raw":
        return gid.invariants
    return catalog_fingerprint(gid)


def same_group(a: FiniteGroupId, b: FiniteGroupId) -> bool:
    """Égalité à isomorphisme près (par empreinte)."""
    if a == b:
        return True
    if a.order != b.order:
        return False
    return group_fingerprint(a) == group_fingerprint(b)


# ============================================================================
# Étiquettes textuelles
# ============================================================================

def group_from_label(label: str) -> FiniteGroupId:
    """
    Analyse une étiquette de table: "1", "Z3", "Z2^2", "D6", "O", "T", "I",
    "D6wrZ2", produits "Z2xD6", "Z2^2xD6".
    """
    label = label.strip()
    if "x" in label and label != "D6wrZ2":
        return Product(*(group_from_label(part) for part in label.split("x")))
    if label in ("1", "{1}", ""):
        return TRIVIAL
    if label == "O":
        return OCT
    if label == "T":
        return TETRA
    if label == "I":
        return ICOSA
    if label == "D6wrZ2":
        return D6_WREATH_Z2
    if label.startswith("Z2^"):
        return ElemAbelian2(int(label[3:]))
    if label.startswith("Z"):
        return Cyclic(int(label[1:]))
    if label.startswith("D"):
        return Dihedral(int(label[1:]))
    raise ValueError(f"unknown group label {label!r}")


def symmetric_group(n: int) -> Tuple[List[Tuple[int, ...]], Callable]:
    """Sₙ comme permutations (utilisé par les tests de reconnaissance)."""
    return sorted(permutations(range(n))), _perm_mul
