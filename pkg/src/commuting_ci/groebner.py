"""Buchberger Groebner bases, normal forms, membership, and Krull dimension.

The engine is a plain Buchberger loop with the normal selection strategy
(smallest lcm degree first) and the Gebauer-Moeller pair update, which
implements both the product and the chain criterion.  Bases are returned
reduced and monic, sorted by leading monomial ascending.

Resource limits (total-degree cap, wall-clock timeout) never turn into
answers: hitting one marks the basis ``incomplete`` and every consumer of an
incomplete basis refuses to certify anything from it.

Dimension of the quotient is read off the leading-term ideal: the maximal
number of variables avoiding the support of every leading monomial.  The
complement is a minimum hitting set, found by branch and bound; tests check
it against exhaustive subset enumeration.
"""

from __future__ import annotations

import heapq
import json
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .ordering import MonomialOrder
from .polyring import (
    Coeff,
    Exponent,
    Polynomial,
    PrimeField,
    RingDescriptor,
    format_poly,
)


class IncompleteComputation(RuntimeError):
    """A resource limit stopped a computation before a certified answer."""


@dataclass
class BuchbergerStats:
    """Counters for one basis computation."""

    pairs: int = 0
    zero_reductions: int = 0
    max_degree: int = 0
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {
            "pairs": self.pairs,
            "zero_reductions": self.zero_reductions,
            "max_degree": self.max_degree,
            "seconds": round(self.seconds, 3),
        }


@dataclass(frozen=True)
class IdealStats:
    """Variable count, quotient Krull dimension, and codimension."""

    nvars: int
    dimension: int
    codimension: int


@dataclass
class GroebnerBasis:
    ring: RingDescriptor
    order: MonomialOrder
    basis: Tuple[Polynomial, ...]
    stats: BuchbergerStats
    status: str  # "complete" | "incomplete"

    @property
    def is_complete(self) -> bool:
        return self.status == "complete"

    def leading_exponents(self) -> List[Exponent]:
        lead = self.order.leading_exponent
        return [lead(g.terms) for g in self.basis]

    def dump(self) -> str:
        """One polynomial per line, leading monomials ascending; stats as JSON."""
        lines = [format_poly(g, self.order) for g in self.basis]
        lines.append(json.dumps(self.stats.to_json()))
        return "\n".join(lines)


# -- low-level monomial helpers (dense exponent tuples) --------------------


def _divides(a: Exponent, b: Exponent) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _mul_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(map(int.__add__, a, b))


def _sub_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(map(int.__sub__, a, b))


def _mask(exp: Exponent) -> int:
    m = 0
    for i, e in enumerate(exp):
        if e:
            m |= 1 << i
    return m


class _Elem:
    """Preprocessed basis element: monic, with cached leading-term data."""

    __slots__ = ("lm", "key", "deg", "mask", "tail", "poly")

    def __init__(self, terms: Dict[Exponent, Coeff], keyf, prime: Optional[int]) -> None:
        lm = max(terms, key=keyf)
        lc = terms[lm]
        if prime is not None:
            inv = pow(lc, prime - 2, prime)
            monic = {e: c * inv % prime for e, c in terms.items()}
        elif lc == 1:
            monic = dict(terms)
        else:
            monic = {e: Fraction(c, 1) / lc for e, c in terms.items()}
            monic = {e: int(c) if c.denominator == 1 else c for e, c in monic.items()}
        self.lm = lm
        self.key = keyf(lm)
        self.deg = sum(lm)
        self.mask = _mask(lm)
        tail = dict(monic)
        del tail[lm]
        self.tail = list(tail.items())
        self.poly = monic


def _reduce_terms(
    terms: Dict[Exponent, Coeff],
    elems: Sequence[_Elem],
    keyf: Callable[[Exponent], int],
    prime: Optional[int],
) -> Dict[Exponent, Coeff]:
    """Full normal form of a term dict against monic divisors, tried in order."""
    h = dict(terms)
    if not h:
        return h
    heap = [(-keyf(e), e) for e in h]
    heapq.heapify(heap)
    remainder: Dict[Exponent, Coeff] = {}
    push = heapq.heappush
    pop = heapq.heappop
    while heap:
        _, m = pop(heap)
        c = h.pop(m, 0)
        if not c:
            continue
        mdeg = sum(m)
        mmask = _mask(m)
        hit = None
        for g in elems:
            if g.deg <= mdeg and not (g.mask & ~mmask) and _divides(g.lm, m):
                hit = g
                break
        if hit is None:
            remainder[m] = c
            continue
        q = _sub_exp(m, hit.lm)
        if prime is not None:
            for et, ct in hit.tail:
                e = _mul_exp(q, et)
                old = h.get(e)
                v = ((old or 0) - c * ct) % prime
                if v:
                    h[e] = v
                    if old is None:
                        push(heap, (-keyf(e), e))
                else:
                    h.pop(e, None)
        else:
            for et, ct in hit.tail:
                e = _mul_exp(q, et)
                old = h.get(e)
                v = (old or 0) - c * ct
                if v:
                    h[e] = v
                    if old is None:
                        push(heap, (-keyf(e), e))
                else:
                    h.pop(e, None)
    return remainder


def normal_form(
    p: Polynomial,
    divisors: Sequence[Polynomial],
    order: Optional[MonomialOrder] = None,
) -> Polynomial:
    """Remainder of multivariate division of p by `divisors`, in list order.

    No remainder term is divisible by any divisor's leading monomial.  The
    result is deterministic for a fixed order and divisor list.
    """
    ring = p.ring
    if order is None:
        order = MonomialOrder.identity(ring.nvars)
    keyf = order.key_func()
    prime = ring.field.p if isinstance(ring.field, PrimeField) else None
    elems = [_Elem(g.terms, keyf, prime) for g in divisors if not g.is_zero]
    rem = _reduce_terms(p.terms, elems, keyf, prime)
    return Polynomial._raw(ring, rem)


def normal_form_against(p: Polynomial, gb: "GroebnerBasis") -> Polynomial:
    if not gb.is_complete:
        raise IncompleteComputation("normal form against an incomplete basis proves nothing")
    return normal_form(p, gb.basis, gb.order)


def spolynomial(f: Polynomial, g: Polynomial, order: Optional[MonomialOrder] = None) -> Polynomial:
    """S-polynomial of f and g (used directly by the postcondition tests)."""
    ring = f.ring
    if order is None:
        order = MonomialOrder.identity(ring.nvars)
    keyf = order.key_func()
    lmf = max(f.terms, key=keyf)
    lmg = max(g.terms, key=keyf)
    lcm = _lcm(lmf, lmg)
    cf = f.terms[lmf]
    cg = g.terms[lmg]
    mf = Polynomial._raw(ring, {_sub_exp(lcm, lmf): _one_over(ring, cf)})
    mg = Polynomial._raw(ring, {_sub_exp(lcm, lmg): _one_over(ring, cg)})
    return f * mf - g * mg


def _one_over(ring: RingDescriptor, c: Coeff) -> Coeff:
    if isinstance(ring.field, PrimeField):
        return pow(c, ring.field.p - 2, ring.field.p)
    inv = Fraction(1, 1) / c
    return int(inv) if inv.denominator == 1 else inv


# -- Buchberger -------------------------------------------------------------


def buchberger(
    gens: Sequence[Polynomial],
    order: Optional[MonomialOrder] = None,
    *,
    ring: Optional[RingDescriptor] = None,
    degree_cap: int = 30,
    timeout: float = 3600.0,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by `gens`.

    Zero generators are dropped.  When the degree cap or the timeout is hit,
    the partial basis is returned with status "incomplete"; callers must not
    derive verdicts from it.
    """
    t0 = time.monotonic()
    gens = [g for g in gens if not g.is_zero]
    if ring is None:
        if not gens:
            raise ValueError("need a ring to build the basis of the zero ideal")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators live in different rings")
    if order is None:
        order = MonomialOrder.identity(ring.nvars)
    keyf = order.key_func()
    prime = ring.field.p if isinstance(ring.field, PrimeField) else None
    stats = BuchbergerStats()

    if not gens:
        stats.seconds = time.monotonic() - t0
        return GroebnerBasis(ring, order, (), stats, "complete")

    polys: List[_Elem] = []  # all elements ever admitted, never removed
    G: Set[int] = set()  # indices of the current (pruned) basis
    P: Set[Tuple[int, int]] = set()
    heap: List[Tuple[int, int, int, int]] = []  # (lcm degree, lcm key, i, j)
    deadline = t0 + timeout
    status = "complete"

    def lcm_of(i: int, j: int) -> Exponent:
        return _lcm(polys[i].lm, polys[j].lm)

    def update(ih: int) -> None:
        """Gebauer-Moeller pair update after admitting element `ih`."""
        nonlocal G, P
        h = polys[ih]
        mh = h.lm
        # candidate new pairs, filtered by the chain criterion among themselves
        C = sorted(G)
        D: List[int] = []
        lcms = {ig: _lcm(mh, polys[ig].lm) for ig in C}
        while C:
            ig = C.pop()
            lhg = lcms[ig]
            if _mul_exp(mh, polys[ig].lm) == lhg:
                D.append(ig)  # product criterion pairs are kept only to prune others
                continue
            if not any(_divides(lcms[ix], lhg) for ix in C) and not any(
                _divides(lcms[ix], lhg) for ix in D
            ):
                D.append(ig)
        E = [ig for ig in D if _mul_exp(mh, polys[ig].lm) != lcms[ig]]
        # prune old pairs whose lcm the new leading monomial strictly improves
        newP: Set[Tuple[int, int]] = set()
        for (i, j) in P:
            lij = lcm_of(i, j)
            if (
                not _divides(mh, lij)
                or _lcm(polys[i].lm, mh) == lij
                or _lcm(polys[j].lm, mh) == lij
            ):
                newP.add((i, j))
        for ig in E:
            pair = (ig, ih) if ig < ih else (ih, ig)
            newP.add(pair)
            l = lcms[ig]
            heapq.heappush(heap, (sum(l), keyf(l), pair[0], pair[1]))
        P = newP
        G = {ig for ig in G if not _divides(mh, polys[ig].lm)}
        G.add(ih)

    def admit(terms: Dict[Exponent, Coeff]) -> None:
        elem = _Elem(terms, keyf, prime)
        polys.append(elem)
        stats.max_degree = max(stats.max_degree, elem.deg)
        update(len(polys) - 1)

    # admit the input, reducing each generator against what is already there
    for g in sorted(gens, key=lambda q: keyf(max(q.terms, key=keyf))):
        rem = _reduce_terms(g.terms, [polys[i] for i in sorted(G)], keyf, prime)
        if rem:
            admit(rem)

    while heap:
        if time.monotonic() > deadline:
            status = "incomplete"
            break
        deg, _, i, j = heapq.heappop(heap)
        if (i, j) not in P:
            continue
        P.discard((i, j))
        if deg > degree_cap:
            status = "incomplete"
            break
        stats.pairs += 1
        fi, fj = polys[i], polys[j]
        lcm = _lcm(fi.lm, fj.lm)
        qi = _sub_exp(lcm, fi.lm)
        qj = _sub_exp(lcm, fj.lm)
        s: Dict[Exponent, Coeff] = {}
        for e, c in fi.poly.items():
            s[_mul_exp(qi, e)] = c
        if prime is not None:
            for e, c in fj.poly.items():
                ee = _mul_exp(qj, e)
                v = (s.get(ee, 0) - c) % prime
                if v:
                    s[ee] = v
                else:
                    s.pop(ee, None)
        else:
            for e, c in fj.poly.items():
                ee = _mul_exp(qj, e)
                v = s.get(ee, 0) - c
                if v:
                    s[ee] = v
                else:
                    s.pop(ee, None)
        active = [polys[k] for k in sorted(G)]
        rem = _reduce_terms(s, active, keyf, prime)
        if not rem:
            stats.zero_reductions += 1
            continue
        admit(rem)

    # inter-reduce the surviving elements into the reduced basis
    order_idx = sorted(G, key=lambda k: polys[k].key)
    minimal: List[int] = []
    for k in order_idx:
        lm = polys[k].lm
        if not any(_divides(polys[m].lm, lm) for m in minimal):
            minimal.append(k)
    reduced: List[Polynomial] = []
    elems = [polys[k] for k in minimal]
    for pos, k in enumerate(minimal):
        others = elems[:pos] + elems[pos + 1 :]
        rem = _reduce_terms(polys[k].poly, others, keyf, prime)
        if rem:
            reduced.append(Polynomial._raw(ring, rem))
    reduced.sort(key=lambda q: keyf(max(q.terms, key=keyf)))
    stats.seconds = time.monotonic() - t0
    return GroebnerBasis(ring, order, tuple(reduced), stats, status)


def ideal_membership(
    p: Polynomial,
    gens: Sequence[Polynomial],
    order: Optional[MonomialOrder] = None,
    **limits,
) -> bool:
    """True iff p lies in the ideal generated by `gens`."""
    if p.is_zero:
        return True
    gb = buchberger(gens, order, ring=p.ring, **limits)
    if not gb.is_complete:
        raise IncompleteComputation("basis incomplete; membership undecided")
    return normal_form(p, gb.basis, gb.order).is_zero


# -- dimension of the leading-term ideal ------------------------------------


def _minimal_supports(exps: Sequence[Exponent]) -> List[FrozenSet[int]]:
    sups = {frozenset(i for i, e in enumerate(exp) if e) for exp in exps}
    out: List[FrozenSet[int]] = []
    for s in sorted(sups, key=len):
        if not any(t <= s for t in out):
            out.append(s)
    return out


def _min_hitting_set(supports: List[FrozenSet[int]]) -> int:
    """Size of a smallest set of variables meeting every support."""
    supports = sorted(supports, key=len)
    best = len(supports)  # picking one variable per support always works

    def rec(remaining: List[FrozenSet[int]], chosen: int) -> None:
        nonlocal best
        if chosen >= best:
            return
        if not remaining:
            best = chosen
            return
        # lower bound: pairwise-disjoint supports need one pick each
        bound = chosen
        seen: Set[int] = set()
        for s in remaining:
            if not (s & seen):
                bound += 1
                seen |= s
        if bound >= best:
            return
        s0 = remaining[0]
        for v in sorted(s0):
            rest = [s for s in remaining if v not in s]
            rec(rest, chosen + 1)

    rec(supports, 0)
    return best


def krull_dimension(gb: GroebnerBasis) -> IdealStats:
    """Dimension of the quotient by the ideal, from its leading-term ideal.

    Returns the largest cardinality of a variable set S such that no leading
    monomial has support inside S, together with the codimension N - dim.
    """
    if not gb.is_complete:
        raise IncompleteComputation("dimension of an incomplete basis is meaningless")
    n = gb.ring.nvars
    if not gb.basis:
        return IdealStats(n, n, 0)
    lts = gb.leading_exponents()
    supports = _minimal_supports(lts)
    if any(not s for s in supports):
        raise ValueError("unit ideal has no Krull dimension in this setting")
    codim = _min_hitting_set(supports)
    return IdealStats(n, n - codim, codim)


def dimension_by_enumeration(gb: GroebnerBasis) -> int:
    """Exponential-time oracle: try all variable subsets (tests only)."""
    from itertools import combinations

    if not gb.is_complete:
        raise IncompleteComputation("dimension of an incomplete basis is meaningless")
    n = gb.ring.nvars
    supports = [frozenset(i for i, e in enumerate(exp) if e) for exp in gb.leading_exponents()]
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            sset = frozenset(subset)
            if not any(s <= sset for s in supports):
                return size
    return 0


def standard_monomial_dimension(gb: GroebnerBasis, weight: int) -> int:
    """Number of weight-`weight` monomials outside the leading-term ideal."""
    if not gb.is_complete:
        raise IncompleteComputation("standard monomials need a complete basis")
    lts = gb.leading_exponents()
    count = 0
    for exp in gb.ring.monomials_of_weight(weight):
        if not any(_divides(l, exp) for l in lts):
            count += 1
    return count
