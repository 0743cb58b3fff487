"""Shared cached fixtures: commutator systems and Groebner bases are pure
functions of their parameters, so build each once per test session."""

from __future__ import annotations

import functools

from commuting_ci.groebner import buchberger
from commuting_ci.groupmat import commutator_word
from commuting_ci.polyring import PrimeField, QQ


@functools.lru_cache(maxsize=None)
def system(kind: str, n: int, genus: int = 1, prime: int | None = None):
    field = PrimeField(prime) if prime else QQ
    return commutator_word(kind, n, genus, field)


@functools.lru_cache(maxsize=None)
def system_basis(kind: str, n: int, genus: int = 1, prime: int | None = None):
    sys_ = system(kind, n, genus, prime)
    gens = [f for _, f in sys_.generators] + list(sys_.unit_relations)
    return buchberger(gens, ring=sys_.ring)
