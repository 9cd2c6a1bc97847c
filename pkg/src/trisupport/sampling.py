"""Seeded sampling of supports and generic tensors.

Generic tensors are realized as integer coefficients drawn uniformly from
[-100, 100] \\ {0}; a single verified instance then bounds the generic value
by semicontinuity, with structural elements supplying the other bound.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .core import Shape, Support, Tensor, is_concise_support
from .symmetry import is_concise_tensor


def random_support(rng: random.Random, shape: Shape, density: float = 0.5) -> Support:
    """Nonempty support with each cell kept independently with the given density."""
    while True:
        triples = [
            (i, j, k)
            for i in range(shape.a)
            for j in range(shape.b)
            for k in range(shape.c)
            if rng.random() < density
        ]
        if triples:
            return Support(shape, tuple(triples))


def random_concise_support(rng: random.Random, shape: Shape, density: float = 0.5) -> Support:
    while True:
        s = random_support(rng, shape, density)
        if is_concise_support(s):
            return s


def generic_tensor_on(s: Support, rng: random.Random) -> Tensor:
    entries = {}
    for t in s.triples:
        v = 0
        while v == 0:
            v = rng.randint(-100, 100)
        entries[t] = Fraction(v)
    return Tensor(s.shape, entries)


def random_concise_tensor(rng: random.Random, shape: Shape, density: float = 0.6) -> Tensor:
    """Generic tensor on a random concise support, re-drawn until the tensor
    itself is concise (flattening ranks checked exactly)."""
    while True:
        t = generic_tensor_on(random_concise_support(rng, shape, density), rng)
        if is_concise_tensor(t):
            return t
